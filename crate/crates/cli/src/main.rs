//! `crn`: structural positive-recurrence analysis of stochastic reaction
//! networks from the command line.
//!
//! Exit codes: 0 success (for `analyze`: some criterion holds), 1 input
//! error, 2 `analyze` found no applicable criterion, 3 budget exceeded.
//! `CRN_BUDGET` overrides every enumeration budget (shell points, box
//! states, sequence-family size).

mod report;

use std::fmt;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use crn_core::drift::{drift_scan, LyapunovKind, DEFAULT_DELTA, DEFAULT_SHELL_BUDGET};
use crn_core::parse::parse_state;
use crn_core::sim::{
    communicating_classes, estimate_entry_time, estimate_return_time, simulate, Method, SimError,
    DEFAULT_BOX_BUDGET, RNG_ALGORITHM,
};
use crn_core::theorems::{best_verdict, CheckError, Conclusion};
use crn_core::tiers::{
    parse_sequence_spec, search_counterexample, tier_partitions, SequenceFamily, TierError,
};
use crn_core::{parse_network, ReactionNetwork, State};

use report::{AnalysisReport, ClassesEntry, DriftEntry, SimulationEntry, TierEntry, TierSearchEntry};

// a closed stdout (e.g. piped into `head`) is not an error worth a panic
macro_rules! out {
    ($($arg:tt)*) => {{
        use std::io::Write as _;
        let _ = write!(std::io::stdout(), $($arg)*);
    }};
}

macro_rules! outln {
    ($($arg:tt)*) => {{
        use std::io::Write as _;
        let _ = writeln!(std::io::stdout(), $($arg)*);
    }};
}

#[derive(Parser)]
#[command(name = "crn", version, about = "Positive-recurrence analysis for stochastic reaction networks")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Lyapunov {
    Entropy,
    Linear,
    Power,
    Sum,
}

#[derive(Clone, Copy, ValueEnum)]
enum MethodArg {
    Direct,
    Next,
}

impl From<MethodArg> for Method {
    fn from(m: MethodArg) -> Self {
        match m {
            MethodArg::Direct => Method::Direct,
            MethodArg::Next => Method::NextReaction,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Check every structural criterion and print a report.
    Analyze {
        path: PathBuf,
        /// Search the default monomial sequence family for a tier counterexample.
        #[arg(long)]
        tiers: bool,
        /// Scan the drift condition on shells up to this radius.
        #[arg(long, value_name = "R")]
        drift: Option<u64>,
        #[arg(long, value_enum, default_value = "entropy")]
        lyapunov: Lyapunov,
        #[arg(long, default_value_t = DEFAULT_DELTA)]
        delta: f64,
        /// Add simulation diagnostics (trajectory, classes, entry and return times).
        #[arg(long)]
        simulate: bool,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Initial state for `--simulate`; defaults to all zeros.
        #[arg(long)]
        x0: Option<String>,
        /// Per-species box bound for class decomposition.
        #[arg(long = "box", default_value_t = 8)]
        box_bound: u64,
        /// Print the JSON report instead of the text summary.
        #[arg(long)]
        json: bool,
        /// Also write the JSON report to this file.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Tier partitions along one monomial sequence, e.g. "A=n^2, B=0, C=n".
    Tiers {
        path: PathBuf,
        spec: String,
        #[arg(long)]
        json: bool,
    },
    /// Exhaustive drift scan; writes `R,shell_max,argmax` CSV.
    Drift {
        path: PathBuf,
        #[arg(long, value_enum, default_value = "entropy")]
        lyapunov: Lyapunov,
        #[arg(long, default_value_t = DEFAULT_DELTA)]
        delta: f64,
        #[arg(long)]
        rmax: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Simulate one trajectory; writes `t,reaction,<species>` CSV.
    Simulate {
        path: PathBuf,
        #[arg(long)]
        x0: String,
        #[arg(long = "t")]
        t_end: f64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, value_enum, default_value = "direct")]
        method: MethodArg,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Communicating classes of the chain truncated to a box.
    Classes {
        path: PathBuf,
        /// One bound for every species, or one per species ("4" or "4,4,2").
        #[arg(long = "box")]
        bounds: String,
        #[arg(long)]
        json: bool,
    },
}

enum Failure {
    Input(String),
    Budget(String),
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Input(_) => 1,
            Failure::Budget(_) => 3,
        }
    }
}

impl fmt::Display for Failure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Failure::Input(m) | Failure::Budget(m) => f.write_str(m),
        }
    }
}

impl From<TierError> for Failure {
    fn from(e: TierError) -> Self {
        match e {
            TierError::FamilyTooLarge { .. } => Failure::Budget(e.to_string()),
            _ => Failure::Input(e.to_string()),
        }
    }
}

impl From<SimError> for Failure {
    fn from(e: SimError) -> Self {
        match e {
            SimError::BoxBudget { .. } => Failure::Budget(e.to_string()),
            _ => Failure::Input(e.to_string()),
        }
    }
}

impl From<CheckError> for Failure {
    fn from(e: CheckError) -> Self {
        Failure::Budget(e.to_string())
    }
}

impl From<crn_core::drift::DriftError> for Failure {
    fn from(e: crn_core::drift::DriftError) -> Self {
        match e {
            crn_core::drift::DriftError::ShellBudget { .. } => Failure::Budget(e.to_string()),
            _ => Failure::Input(e.to_string()),
        }
    }
}

fn budget_override() -> Result<Option<u128>, Failure> {
    match std::env::var("CRN_BUDGET") {
        Ok(v) => v
            .trim()
            .parse::<u128>()
            .map(Some)
            .map_err(|_| Failure::Input(format!("CRN_BUDGET must be a non-negative integer, got {v:?}"))),
        Err(_) => Ok(None),
    }
}

fn load(path: &Path) -> Result<(Vec<u8>, ReactionNetwork), Failure> {
    let bytes = std::fs::read(path).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))?;
    let text = std::str::from_utf8(&bytes)
        .map_err(|e| Failure::Input(format!("{}: not UTF-8: {e}", path.display())))?;
    let net = parse_network(text).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))?;
    Ok((bytes, net))
}

fn lyapunov_kind(l: Lyapunov, delta: f64) -> Result<LyapunovKind, Failure> {
    let kind = match l {
        Lyapunov::Entropy => LyapunovKind::EntropyV,
        Lyapunov::Linear => LyapunovKind::LinearW,
        Lyapunov::Power => LyapunovKind::PowerT(delta),
        Lyapunov::Sum => LyapunovKind::SumVT(delta),
    };
    kind.validate().map_err(Failure::from)
}

fn state_arg(text: &str, net: &ReactionNetwork) -> Result<State, Failure> {
    parse_state(text, net.num_species()).map_err(|e| Failure::Input(format!("state {text:?}: {e}")))
}

fn write_or_print(out: Option<&Path>, content: &str) -> Result<(), Failure> {
    match out {
        Some(p) => std::fs::write(p, content).map_err(|e| Failure::Input(format!("{}: {e}", p.display()))),
        None => {
            out!("{content}");
            Ok(())
        }
    }
}

fn to_json<T: serde::Serialize>(v: &T) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("report serializes");
    s.push('\n');
    s
}

fn family_labels(family: &SequenceFamily) -> Vec<String> {
    family.palette.iter().map(|l| l.to_string()).collect()
}

fn run(cli: Cli) -> Result<u8, Failure> {
    let budget = budget_override()?;
    match cli.command {
        Command::Analyze {
            path,
            tiers,
            drift,
            lyapunov,
            delta,
            simulate: with_sim,
            seed,
            x0,
            box_bound,
            json,
            out,
        } => {
            let (bytes, net) = load(&path)?;
            let verdict = best_verdict(&net)?;
            let mut report = AnalysisReport::new(&bytes, &net, &verdict);
            if tiers {
                let mut family = SequenceFamily::default();
                if let Some(b) = budget {
                    family.budget = b;
                }
                let found = search_counterexample(&net, &family)?;
                report.tier_search = Some(TierSearchEntry::new(&net, family_labels(&family), &found));
            }
            if let Some(r_max) = drift {
                let kind = lyapunov_kind(lyapunov, delta)?;
                let rep = drift_scan(&net, kind, r_max, budget.unwrap_or(DEFAULT_SHELL_BUDGET))?;
                report.drift = Some(DriftEntry::from(&rep));
            }
            if with_sim {
                let x0 = match &x0 {
                    Some(t) => state_arg(t, &net)?,
                    None => State::zeros(net.num_species()),
                };
                let t_end = 100.0;
                let traj = simulate(&net, &x0, t_end, seed, Method::Direct)?;
                let bounds = vec![box_bound; net.num_species()];
                let decomp = communicating_classes(&net, &bounds, budget.unwrap_or(DEFAULT_BOX_BUDGET))?;
                let entry = estimate_entry_time(&net, &x0, &decomp, 200, 1e3, seed)?;
                let ret = estimate_return_time(&net, &x0, 200, 1e3, seed)?;
                report.simulation = Some(SimulationEntry {
                    rng: RNG_ALGORITHM,
                    seed,
                    x0: x0.clone(),
                    t_end,
                    jumps: traj.jumps.len(),
                    final_state: traj.final_state().clone(),
                    absorbed: traj.absorbed,
                    classes: ClassesEntry::from(&decomp),
                    entry_time: entry,
                    return_time: ret,
                });
            }
            let text = to_json(&report);
            if let Some(p) = &out {
                write_or_print(Some(p), &text)?;
            }
            if json {
                out!("{text}");
            } else {
                print_summary(&report, &verdict.conclusion);
            }
            Ok(if verdict.any_holds() { 0 } else { 2 })
        }
        Command::Tiers { path, spec, json } => {
            let (_, net) = load(&path)?;
            let seq = parse_sequence_spec(&spec, &net)?;
            let rep = tier_partitions(&net, &seq)?;
            let entry = TierEntry::new(&net, &seq, &rep);
            if json {
                out!("{}", to_json(&entry));
            } else {
                print_tiers(&entry);
            }
            Ok(0)
        }
        Command::Drift {
            path,
            lyapunov,
            delta,
            rmax,
            out,
        } => {
            let (_, net) = load(&path)?;
            let kind = lyapunov_kind(lyapunov, delta)?;
            let rep = drift_scan(&net, kind, rmax, budget.unwrap_or(DEFAULT_SHELL_BUDGET))?;
            write_or_print(out.as_deref(), &rep.to_csv())?;
            match rep.exception_set_bound {
                Some(n) if rep.confirmed() => {
                    eprintln!("{kind}: drift <= -1 on every scanned shell beyond R = {n} (up to R = {rmax})")
                }
                _ => eprintln!("{kind}: drift condition violated on the outermost shell R = {rmax}"),
            }
            Ok(0)
        }
        Command::Simulate {
            path,
            x0,
            t_end,
            seed,
            method,
            out,
        } => {
            let (_, net) = load(&path)?;
            let x0 = state_arg(&x0, &net)?;
            match simulate(&net, &x0, t_end, seed, method.into()) {
                Ok(traj) => {
                    write_or_print(out.as_deref(), &traj.to_csv(&net))?;
                    Ok(0)
                }
                Err(SimError::IntensityOverflow { time, partial }) => {
                    write_or_print(out.as_deref(), &partial.to_csv(&net))?;
                    Err(Failure::Input(format!("intensity overflow at t = {time}; trajectory truncated")))
                }
                Err(e) => Err(e.into()),
            }
        }
        Command::Classes { path, bounds, json } => {
            let (_, net) = load(&path)?;
            let bounds = state_arg(&bounds, &net)?.0;
            let decomp = communicating_classes(&net, &bounds, budget.unwrap_or(DEFAULT_BOX_BUDGET))?;
            let entry = ClassesEntry::from(&decomp);
            if json {
                out!("{}", to_json(&entry));
            } else {
                outln!(
                    "{} classes in box {:?}; {} closed ({} without boundary transitions)",
                    entry.classes, entry.bounds, entry.closed, entry.closed_without_caveat
                );
                for (i, c) in entry.detail.iter().enumerate() {
                    if c.closed {
                        let note = if c.boundary_caveat { " (boundary caveat)" } else { "" };
                        outln!("  class {}: {} states from {}, closed{note}", i + 1, c.size, c.first_state);
                    }
                }
            }
            Ok(0)
        }
    }
}

fn print_summary(report: &AnalysisReport, conclusion: &Conclusion) {
    let n = &report.network;
    outln!(
        "{} species, {} complexes, {} reactions, {} linkage classes",
        n.species.len(),
        n.complexes.len(),
        n.reactions.len(),
        n.linkage_classes.len()
    );
    outln!(
        "binary: {}, double-full: {}, weakly reversible: {}, all flows: {}",
        n.binary, n.double_full, n.weakly_reversible, n.all_flows
    );
    for c in &report.certificates {
        outln!("  {}", c.description);
    }
    outln!("{conclusion:?}: {}", report.verdict.summary);
    if let Some(note) = &report.verdict.conjecture_note {
        outln!("note: {note}");
    }
    if let Some(t) = &report.tier_search {
        match &t.counterexample {
            Some(c) => outln!("tier counterexample along {}", c.sequence),
            None => outln!(
                "tier condition held on all {} tested sequences ({} distinct partitions)",
                t.sequences_tested, t.distinct_partitions
            ),
        }
    }
    if let Some(d) = &report.drift {
        match &d.violated_at {
            Some(x) => outln!("{}: drift violated at {x} (R = {})", d.lyapunov, d.r_max),
            None => outln!(
                "{}: drift confirmed up to R = {}, exceptions within R <= {}",
                d.lyapunov,
                d.r_max,
                d.exception_set_bound.unwrap_or(0)
            ),
        }
    }
    if let Some(s) = &report.simulation {
        outln!(
            "simulation: {} jumps to {}, final state {}",
            s.jumps, s.t_end, s.final_state
        );
    }
}

fn print_tiers(t: &TierEntry) {
    outln!("sequence: {}", t.sequence);
    for (i, (tier, deg)) in t.d_tiers.iter().zip(&t.d_degrees).enumerate() {
        outln!("T^D,{}: {{{}}} (degree {deg})", i + 1, tier.join(", "));
    }
    for (i, tier) in t.s_tiers.iter().enumerate() {
        outln!("T^S,{}: {{{}}}", i + 1, tier.join(", "));
    }
    outln!("T^S,inf: {{{}}}", t.s_infinity.join(", "));
    outln!("descending: {{{}}}", t.descending_reactions.join(", "));
    outln!("thm32: {}, cor33: {}", t.thm32_holds, t.cor33_holds);
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("error: {f}");
            ExitCode::from(f.code())
        }
    }
}
