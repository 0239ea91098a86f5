mod common;

use common::{complex_names, fixture};
use crn_core::graph::{is_binary, is_double_full, linkage_classes};
use crn_core::theorems::{
    best_verdict, check_corollary_wr, check_theorem1, check_theorem2, check_theorem53, check_theorem61,
    Conclusion, DoubleCover, TheoremId, Witness,
};
use crn_core::SpeciesId;

fn wr_flags(name: &str) -> Vec<bool> {
    linkage_classes(&fixture(name)).iter().map(|c| c.weakly_reversible).collect()
}

#[test]
fn linkage_structure_of_fixtures() {
    assert_eq!(wr_flags("enzyme.crn"), [false]);
    let three = fixture("three_classes.crn");
    let classes = linkage_classes(&three);
    assert_eq!(classes.len(), 3);
    let wr: Vec<Vec<String>> = classes
        .iter()
        .filter(|c| c.weakly_reversible)
        .map(|c| complex_names(&three, &c.complexes))
        .collect();
    assert_eq!(wr, [["A + B", "2C", "D"]]);
    assert_eq!(wr_flags("enzyme_open.crn"), [true]);
    assert_eq!(wr_flags("four_classes.crn"), [true, true, false, false]);
    assert_eq!(wr_flags("outflow_classes.crn"), [true, true, true, false, false]);
    assert_eq!(wr_flags("pair_class.crn"), [true, true, false]);
}

#[test]
fn flows_on_open_enzyme() {
    let c = check_theorem1(&fixture("enzyme_open.crn"));
    assert!(c.holds, "{c:?}");
    assert!(c.verify(&fixture("enzyme_open.crn")));
    let v = best_verdict(&fixture("enzyme_open.crn")).unwrap();
    assert_eq!(v.conclusion, Conclusion::EveryStatePositiveRecurrent);
    assert!(v.summary.starts_with("Thm1"));
}

#[test]
fn doubles_paths_fixture() {
    let net = fixture("doubles_paths.crn");
    assert_eq!(net.num_species(), 5);
    assert_eq!(net.complexes().len(), 14);
    assert!(is_binary(&net) && is_double_full(&net));
    let c = check_theorem2(&net);
    assert!(c.holds);
    assert!(c.verify(&net));
    let Some(Witness::Thm2 { paths }) = &c.witness else { panic!() };
    assert_eq!(paths.len(), 5);
    // 2C reaches A in one step
    let c_id = net.species_id("C").unwrap();
    let p = paths.iter().find(|p| p.species == c_id).unwrap();
    assert_eq!(p.path.reactions.len(), 1);
    assert_eq!(net.display_reaction(p.path.reactions[0]), "2C -> A");

    let t53 = check_theorem53(&net).unwrap();
    assert!(t53.holds);
    let Some(Witness::Thm53 { m, doubles, .. }) = &t53.witness else { panic!() };
    assert_eq!(*m, 0);
    assert!(doubles.iter().all(|d| matches!(d.cover, DoubleCover::Path(_))));

    let t61 = check_theorem61(&net);
    assert!(!t61.holds);
    assert!(t61.failure_reason.unwrap().contains("mixes binary and non-binary"));
}

#[test]
fn four_class_fixture() {
    let net = fixture("four_classes.crn");
    let t2 = check_theorem2(&net);
    assert!(!t2.holds);
    assert!(t2.failure_reason.unwrap().contains("no path from 2B"));

    let t53 = check_theorem53(&net).unwrap();
    assert!(t53.holds, "{t53:?}");
    assert!(t53.verify(&net));
    let Some(Witness::Thm53 { m, classes, pairs, doubles }) = &t53.witness else { panic!() };
    assert_eq!(*m, 2);
    assert_eq!(classes, &[0, 1]);
    let lc = linkage_classes(&net);
    assert_eq!(complex_names(&net, &lc[0].complexes), ["A + B", "2B"]);
    assert_eq!(complex_names(&net, &lc[1].complexes), ["2D", "2C", "A + D"]);
    let named: Vec<(String, String, usize)> = pairs
        .iter()
        .map(|p| {
            (
                net.species_name(p.s).to_string(),
                net.species_name(p.s_tilde).to_string(),
                p.path.reactions.len(),
            )
        })
        .collect();
    assert_eq!(
        named,
        [("A".into(), "A".into(), 2), ("D".into(), "C".into(), 1)]
    );
    // 2A reaches A through B + C
    let a_pair = &pairs[0].path.reactions;
    assert_eq!(net.display_reaction(a_pair[0]), "2A -> B + C");
    assert_eq!(net.display_reaction(a_pair[1]), "B + C -> A");
    assert_eq!(net.display_reaction(pairs[1].path.reactions[0]), "D + C -> 0");
    let a = net.species_id("A").unwrap();
    for d in doubles {
        let expect_path = d.species == a;
        assert_eq!(matches!(d.cover, DoubleCover::Path(_)), expect_path);
    }

    let cor = check_corollary_wr(&net);
    assert!(cor.failure_reason.unwrap().contains("not weakly reversible"));

    let v = best_verdict(&net).unwrap();
    assert_eq!(v.conclusion, Conclusion::ClosedComponentsPositiveRecurrent);
    assert!(!v.certificate(TheoremId::Thm2).holds);
    assert!(v.certificate(TheoremId::Thm53).holds);
}

#[test]
fn reversible_four_class_variant() {
    let net = fixture("four_classes_reversible.crn");
    let cor = check_corollary_wr(&net);
    assert!(cor.holds, "{cor:?}");
    assert!(cor.verify(&net));
    let Some(Witness::CorWR { m, .. }) = cor.witness else { panic!() };
    assert_eq!(m, 2);
    let v = best_verdict(&net).unwrap();
    assert_eq!(v.conclusion, Conclusion::EveryStatePositiveRecurrent);
}

#[test]
fn outflow_fixture() {
    let net = fixture("outflow_classes.crn");
    assert_eq!(net.reactions().len(), 16);
    let c = check_theorem61(&net);
    assert!(c.holds, "{c:?}");
    assert!(c.verify(&net));
    let Some(Witness::Thm61 { m, out_flows, .. }) = &c.witness else { panic!() };
    assert_eq!(*m, 3);
    let names: Vec<&str> = out_flows.iter().map(|o| net.species_name(o.species)).collect();
    assert_eq!(names, ["B", "B", "C"]);
}

#[test]
fn pair_class_fixture() {
    let net = fixture("pair_class.crn");
    assert!(is_double_full(&net));
    // the doubles of the first class only reach each other
    let t2 = check_theorem2(&net);
    assert!(t2.failure_reason.unwrap().contains("no path from 2A"));
    let t53 = check_theorem53(&net).unwrap();
    assert!(!t53.holds);
    assert!(t53.failure_reason.unwrap().starts_with("2E has no path"));
}

#[test]
fn no_theorem_weakly_reversible_gets_note() {
    // single weakly reversible class, not double-full, no flows
    let net = crn_core::parse_network("A + B <-> C @ 1, 1").unwrap();
    let v = best_verdict(&net).unwrap();
    assert_eq!(v.conclusion, Conclusion::Inconclusive);
    assert!(v.conjecture_note.is_some());
    let v = best_verdict(&fixture("enzyme.crn")).unwrap();
    assert!(v.conjecture_note.is_none());
}

#[test]
fn all_certificates_reverify() {
    for name in [
        "enzyme.crn",
        "three_classes.crn",
        "assoc_decay.crn",
        "enzyme_open.crn",
        "doubles_paths.crn",
        "four_classes.crn",
        "four_classes_reversible.crn",
        "outflow_classes.crn",
        "pair_class.crn",
    ] {
        let net = fixture(name);
        for c in best_verdict(&net).unwrap().certificates {
            assert!(c.verify(&net), "{name}: {c:?}");
            assert_eq!(c.holds, c.witness.is_some());
        }
    }
}

#[test]
fn thm2_failure_on_assoc_decay() {
    let c = check_theorem2(&fixture("assoc_decay.crn"));
    assert!(c.failure_reason.unwrap().contains("not double-full"));
    let _ = SpeciesId(0);
}
