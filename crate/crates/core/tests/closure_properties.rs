mod common;

use common::{classical, gamma_over, subsets_up_to};
use disbelief_core::closure::{
    all_information_sets, build_universe, close, defining_rules, readings_agree, rule_set, ClosureUniverse, Route,
    RuleId, RuleReading, SentenceMask,
};
use disbelief_core::decision::consequence_mask;
use disbelief_core::{Formula, InformationSet, LogicId, Sentence, SentenceKind};
use proptest::prelude::*;
use RuleId::*;

/// One literal application of the WBD rules, written out by hand over
/// formulas: this is the reference the bitmask engine is checked against.
fn wbd_reference(gamma: &InformationSet, cu: &ClosureUniverse) -> SentenceMask {
    let atoms: Vec<&str> = cu.universe().atoms().iter().map(String::as_str).collect();
    let beliefs: Vec<Formula> = gamma.beliefs().cloned().collect();
    let mut out = SentenceMask::default();
    for s in cu.sentences() {
        let class = cu.class_of(&s).unwrap();
        let derived = match s.kind {
            SentenceKind::Belief => classical(&beliefs, &s.body, &atoms),
            SentenceKind::Disbelief => {
                classical(std::slice::from_ref(&s.body), &Formula::Bottom, &atoms)
                    || gamma.disbeliefs().any(|psi| classical(std::slice::from_ref(&s.body), psi, &atoms))
            }
        };
        if derived {
            out.insert(s.kind, class);
        }
    }
    out
}

#[test]
fn wbd_closure_matches_hand_written_rules() {
    let cu = build_universe(2).unwrap();
    let pool: Vec<Sentence> = cu.sentences().collect();
    for g in subsets_up_to(&pool, 2) {
        let c = close(&defining_rules(LogicId::Wbd), RuleReading::Membership, &g, &cu).unwrap();
        assert_eq!(c.derived, wbd_reference(&g, &cu), "{g}");
    }
}

#[test]
fn spec_close_examples() {
    let cu2 = build_universe(2).unwrap();
    let g: InformationSet = "D: q".parse().unwrap();
    let expected: Vec<Sentence> = ["D: q", "D: p & q", "D: !p & q", "D: false"].iter().map(|s| s.parse().unwrap()).collect();
    for reading in [RuleReading::Membership, RuleReading::Derivability] {
        let c = close(&rule_set(&[B, DBot, WD]), reading, &g, &cu2).unwrap();
        let classes: Vec<usize> = expected.iter().map(|s| cu2.class_of(s).unwrap()).collect();
        let mut derived: Vec<usize> =
            c.derived.iter().filter(|(k, _)| *k == SentenceKind::Disbelief).map(|(_, c)| c).collect();
        derived.sort();
        let mut want = classes.clone();
        want.sort();
        assert_eq!(derived, want);
    }

    let cu1 = build_universe(1).unwrap();
    let negp: InformationSet = "!p".parse().unwrap();
    let literal = close(&rule_set(&[B, DBot, D]), RuleReading::Membership, &negp, &cu1).unwrap();
    let p_bar: Sentence = "D: p".parse().unwrap();
    assert!(!literal.sentences(&cu1).contains(&p_bar));
    let primed = close(&rule_set(&[B, DBot, DPrime]), RuleReading::Derivability, &negp, &cu1).unwrap();
    assert!(primed.sentences(&cu1).contains(&p_bar));
}

#[test]
fn readings_agree_spec_examples() {
    let cu = build_universe(1).unwrap();
    let sample = all_information_sets(&cu, 3);
    let a = Route::closure(&[B, DBot, D], RuleReading::Membership);
    let b = Route::closure(&[B, DBot, DPrime], RuleReading::Derivability);
    let diffs = readings_agree(&a, &b, &sample, &cu).unwrap();
    let negp: InformationSet = "!p".parse().unwrap();
    let p_bar: Sentence = "D: p".parse().unwrap();
    assert!(diffs.iter().any(|d| d.gamma == negp && d.sentence == p_bar));
    assert!(readings_agree(&b, &b, &sample, &cu).unwrap().is_empty());
    let full = all_information_sets(&cu, 8);
    let wbd = Route::closure(&[B, DBot, WD], RuleReading::Membership);
    assert!(readings_agree(&wbd, &Route::Decision(LogicId::Wbd), &full, &cu).unwrap().is_empty());
}

#[test]
fn bn_literal_closure_gap_and_repair() {
    let cu = build_universe(1).unwrap();
    let all = all_information_sets(&cu, 8);
    let literal = Route::Closure { rules: defining_rules(LogicId::Bn), reading: RuleReading::Derivability };
    let diffs = readings_agree(&literal, &Route::Decision(LogicId::Bn), &all, &cu).unwrap();
    assert!(diffs.iter().all(|d| !d.in_first), "literal closure must stay within BN");
    let negp: InformationSet = "!p".parse().unwrap();
    assert!(diffs.iter().any(|d| d.gamma == negp && d.sentence == "D: p".parse().unwrap()));
    let mut rules = defining_rules(LogicId::Bn);
    rules.insert(DPrime);
    let repaired = Route::Closure { rules, reading: RuleReading::Derivability };
    assert!(readings_agree(&repaired, &Route::Decision(LogicId::Bn), &all, &cu).unwrap().is_empty());
}

#[test]
fn bprime_counterexample_fixture() {
    let cu = build_universe(2).unwrap();
    let g: InformationSet = "q\nD: q".parse().unwrap();
    let bd = rule_set(&[B, DBot, D]);
    let mut with_b = bd.clone();
    with_b.insert(BPrime);
    let plain = close(&bd, RuleReading::Derivability, &g, &cu).unwrap();
    let primed = close(&with_b, RuleReading::Derivability, &g, &cu).unwrap();
    assert!(!plain.sentences(&cu).contains(&"p".parse().unwrap()));
    assert!(primed.sentences(&cu).contains(&"p".parse().unwrap()));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn closures_are_monotone_in_gamma(g in gamma_over(&["p", "q"], 3), extra in gamma_over(&["p", "q"], 2)) {
        let cu = build_universe(2).unwrap();
        let bigger = g.union(&extra);
        for logic in LogicId::ALL {
            for reading in [RuleReading::Membership, RuleReading::Derivability] {
                let rules = defining_rules(logic);
                let small = close(&rules, reading, &g, &cu).unwrap();
                let large = close(&rules, reading, &bigger, &cu).unwrap();
                prop_assert!(small.derived.is_subset(&large.derived), "{} {}", logic, reading);
                prop_assert!(small.is_monotone());
                prop_assert!(small.rounds <= cu.sentence_count());
            }
        }
    }

    #[test]
    fn derivability_closures_match_decisions(g in gamma_over(&["p", "q"], 4)) {
        let cu = build_universe(2).unwrap();
        let d = RuleReading::Derivability;
        let u = cu.universe();
        prop_assert_eq!(close(&defining_rules(LogicId::Wbd), d, &g, &cu).unwrap().derived, consequence_mask(LogicId::Wbd, &g, u).unwrap());
        prop_assert_eq!(close(&defining_rules(LogicId::Gbd), d, &g, &cu).unwrap().derived, consequence_mask(LogicId::Gbd, &g, u).unwrap());
        prop_assert_eq!(close(&defining_rules(LogicId::Bd), d, &g, &cu).unwrap().derived, consequence_mask(LogicId::Bd, &g, u).unwrap());
        prop_assert_eq!(close(&rule_set(&[B, DBot, DPrime]), d, &g, &cu).unwrap().derived, consequence_mask(LogicId::Bd, &g, u).unwrap());
        let literal = close(&rule_set(&[B, DBot, D]), RuleReading::Membership, &g, &cu).unwrap().derived;
        prop_assert!(literal.is_subset(&consequence_mask(LogicId::Bd, &g, u).unwrap()));
    }
}
