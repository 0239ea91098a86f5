//! Reference computations that share no code with the library paths they
//! check.

use dashu_float::round::mode::HalfEven;
use dashu_float::FBig;

use crn_core::{Complex, ReactionNetwork};

type Big = FBig<HalfEven>;

const PRECISION: usize = 256;

fn big(v: u64) -> Big {
    Big::from(v).with_precision(PRECISION).value()
}

/// `v(x) = x(ln x - 1) + 1`, and `1` off the orthant, at 256 bits.
fn entropy_big(x: i64) -> Big {
    if x <= 0 {
        return big(1);
    }
    let b = big(x as u64);
    let ln = b.ln();
    b * (ln - big(1)) + big(1)
}

/// Product of falling factorials, exactly.
pub fn intensity_exact(y: &Complex, x: &[u64]) -> u128 {
    let mut acc = 1u128;
    for (s, k) in y.terms() {
        let xi = x[s.0] as u128;
        for j in 0..k as u128 {
            if xi < j + 1 {
                return 0;
            }
            acc *= xi - j;
        }
    }
    acc
}

/// Generator of the entropy function, each `V(x')` and `V(x)` evaluated
/// separately at 256 bits and subtracted there.
pub fn entropy_drift(net: &ReactionNetwork, x: &[u64]) -> f64 {
    let d = net.num_species();
    let v_of = |z: &[i64]| z.iter().fold(big(0), |acc, &zi| acc + entropy_big(zi));
    let xi: Vec<i64> = x.iter().map(|&v| v as i64).collect();
    let base = v_of(&xi);
    let mut total = big(0);
    for r in net.reactions() {
        let lambda = intensity_exact(&r.source, x);
        if lambda == 0 {
            continue;
        }
        let mut after = xi.clone();
        for (i, a) in after.iter_mut().enumerate().take(d) {
            let s = crn_core::SpeciesId(i);
            *a += r.product.coefficient(s) as i64 - r.source.coefficient(s) as i64;
        }
        let rate = Big::try_from(r.rate).expect("finite rate");
        let l = Big::from(lambda).with_precision(PRECISION).value();
        total += rate * l * (v_of(&after) - &base);
    }
    total.to_f64().value()
}

/// `Σ κ_{0->S} - Σ κ_{S->0} x_S`: the linear generator when every other
/// reaction conserves total count.
pub fn linear_drift_closed_form(net: &ReactionNetwork, x: &[u64]) -> f64 {
    let mut acc = 0.0;
    for r in net.reactions() {
        if r.source.is_zero() && r.product.order() == 1 {
            acc += r.rate;
        } else if r.product.is_zero() && r.source.order() == 1 {
            let s = r.source.as_unary().expect("unary");
            acc -= r.rate * x[s.0] as f64;
        }
    }
    acc
}

/// `∏ x_i (x_i - 1) … (x_i - y_i + 1)` on real coordinates, `0` when a
/// coordinate is below its coefficient.
pub fn falling_power(y: &Complex, x: &[f64]) -> f64 {
    let mut acc = 1.0;
    for (s, k) in y.terms() {
        let xi = x[s.0];
        for j in 0..k {
            let f = xi - j as f64;
            if f < 1.0 {
                return 0.0;
            }
            acc *= f;
        }
    }
    acc
}

/// `(x ∨ 1)^y` on real coordinates.
pub fn monomial(y: &Complex, x: &[f64]) -> f64 {
    y.terms().map(|(s, k)| x[s.0].max(1.0).powi(k as i32)).product()
}

pub fn poisson_pmf(mean: f64, k: u64) -> f64 {
    let mut p = (-mean).exp();
    for i in 1..=k {
        p *= mean / i as f64;
    }
    p
}

/// Total-variation distance between an empirical pmf on `0..` and Poisson.
pub fn tv_to_poisson(empirical: &[(u64, f64)], mean: f64) -> f64 {
    let top = empirical.iter().map(|&(k, _)| k).max().unwrap_or(0).max(60);
    let mut dist = 0.0;
    let mut covered = 0.0;
    for k in 0..=top {
        let p = poisson_pmf(mean, k);
        covered += p;
        let q: f64 = empirical.iter().filter(|&&(j, _)| j == k).map(|&(_, m)| m).sum();
        dist += (p - q).abs();
    }
    0.5 * (dist + (1.0 - covered).max(0.0))
}

/// Solves `a x = b` by Gaussian elimination with partial pivoting.
#[allow(clippy::needless_range_loop)]
pub fn solve_dense(mut a: Vec<Vec<f64>>, mut b: Vec<f64>) -> Vec<f64> {
    let n = b.len();
    for col in 0..n {
        let pivot = (col..n)
            .max_by(|&i, &j| a[i][col].abs().total_cmp(&a[j][col].abs()))
            .unwrap();
        assert!(a[pivot][col].abs() > 1e-300, "singular system");
        a.swap(col, pivot);
        b.swap(col, pivot);
        for row in col + 1..n {
            let f = a[row][col] / a[col][col];
            if f == 0.0 {
                continue;
            }
            for k in col..n {
                a[row][k] -= f * a[col][k];
            }
            b[row] -= f * b[col];
        }
    }
    let mut x = vec![0.0; n];
    for row in (0..n).rev() {
        let s: f64 = (row + 1..n).map(|k| a[row][k] * x[k]).sum();
        x[row] = (b[row] - s) / a[row][row];
    }
    x
}

/// Expected hitting time of `target` from `start` for the chain restricted
/// to the box `0 ≤ x ≤ bounds`, by first-step analysis. Jumps out of the box
/// are dropped from the generator.
pub fn hitting_time(net: &ReactionNetwork, bounds: &[u64], start: &[u64], target: &[u64]) -> f64 {
    let d = bounds.len();
    let mut states: Vec<Vec<u64>> = vec![vec![]];
    for &b in bounds {
        states = states
            .into_iter()
            .flat_map(|s| {
                (0..=b).map(move |v| {
                    let mut t = s.clone();
                    t.push(v);
                    t
                })
            })
            .collect();
    }
    let unknowns: Vec<Vec<u64>> = states.into_iter().filter(|s| s != target).collect();
    let index = |s: &[u64]| unknowns.iter().position(|u| u == s);
    let n = unknowns.len();
    let mut a = vec![vec![0.0; n]; n];
    let b = vec![1.0; n];
    for (i, s) in unknowns.iter().enumerate() {
        for r in net.reactions() {
            let rate = r.rate * intensity_exact(&r.source, s) as f64;
            if rate == 0.0 {
                continue;
            }
            let next: Vec<i64> = (0..d)
                .map(|k| {
                    let id = crn_core::SpeciesId(k);
                    s[k] as i64 + r.product.coefficient(id) as i64 - r.source.coefficient(id) as i64
                })
                .collect();
            if next.iter().zip(bounds).any(|(&v, &bd)| v < 0 || v as u64 > bd) {
                continue;
            }
            let next: Vec<u64> = next.into_iter().map(|v| v as u64).collect();
            a[i][i] += rate;
            if let Some(j) = index(&next) {
                a[i][j] -= rate;
            }
        }
    }
    let m = solve_dense(a, b);
    m[index(start).expect("start is not the target")]
}

/// `E[max of k iid Gamma(2, 1)]` by quadrature of the survival function.
pub fn expected_max_gamma2(k: i32) -> f64 {
    let h = 1e-4;
    let survival = |t: f64| 1.0 - (1.0 - (-t).exp() * (1.0 + t)).powi(k);
    let steps = (80.0 / h) as usize;
    let mut acc = 0.5 * (survival(0.0) + survival(80.0));
    for i in 1..steps {
        acc += survival(i as f64 * h);
    }
    acc * h
}

pub fn mean_var(xs: &[f64]) -> (f64, f64) {
    let n = xs.len() as f64;
    let m = xs.iter().sum::<f64>() / n;
    let v = xs.iter().map(|x| (x - m).powi(2)).sum::<f64>() / (n - 1.0);
    (m, v)
}

/// Two-sample z statistics for equal means and equal variances; the
/// variance test uses the fourth-moment standard error of `s²`.
pub fn two_sample_z(a: &[f64], b: &[f64]) -> (f64, f64) {
    let (ma, va) = mean_var(a);
    let (mb, vb) = mean_var(b);
    let (na, nb) = (a.len() as f64, b.len() as f64);
    let z_mean = (ma - mb) / (va / na + vb / nb).sqrt();
    let m4 = |xs: &[f64], m: f64| xs.iter().map(|x| (x - m).powi(4)).sum::<f64>() / xs.len() as f64;
    let se_a = (m4(a, ma) - va * va) / na;
    let se_b = (m4(b, mb) - vb * vb) / nb;
    let z_var = (va - vb) / (se_a + se_b).sqrt();
    (z_mean, z_var)
}
