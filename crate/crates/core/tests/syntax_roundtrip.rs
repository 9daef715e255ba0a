mod common;

use common::{atom_name, formula, gamma_over, sentence_over};
use disbelief_core::{parse_formula, parse_information_set, parse_sentence, render, Formula, InformationSet, Sentence};
use proptest::prelude::*;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(2000))]

    #[test]
    fn formulas_round_trip(f in formula()) {
        prop_assert_eq!(parse_formula(&f.to_string()).unwrap(), f);
    }

    #[test]
    fn sentences_round_trip(s in proptest::collection::vec(atom_name(), 1..4).prop_flat_map(sentence_over)) {
        let text = render(&s);
        prop_assert_eq!(parse_sentence(&text).unwrap(), s.clone());
        prop_assert_eq!(render(&parse_sentence(&text).unwrap()), text);
    }

    #[test]
    fn documents_round_trip(g in gamma_over(&["p", "q", "r"], 6)) {
        prop_assert_eq!(parse_information_set(&g.to_bdl()).unwrap(), g.clone());
        let json = serde_json::to_string(&g).unwrap();
        prop_assert_eq!(serde_json::from_str::<InformationSet>(&json).unwrap(), g);
    }

    #[test]
    fn rendering_is_minimal_in_parentheses(f in formula()) {
        // dropping any pair of parentheses either fails to parse or changes the tree
        let text = f.to_string();
        let opens: Vec<usize> = text.match_indices('(').map(|(i, _)| i).collect();
        for open in opens {
            let mut depth = 0;
            let close = text[open..].char_indices().find_map(|(i, c)| {
                match c {
                    '(' => depth += 1,
                    ')' => { depth -= 1; if depth == 0 { return Some(open + i); } }
                    _ => {}
                }
                None
            }).unwrap();
            let stripped = format!("{}{}{}", &text[..open], &text[open + 1..close], &text[close + 1..]);
            prop_assert_ne!(parse_formula(&stripped).ok(), Some(f.clone()), "redundant parentheses in {}", text);
        }
    }

    #[test]
    fn junk_is_rejected_with_a_position(text in "[a-z&|!()<>-]{1,12}") {
        if let Err(e) = parse_formula(&text) {
            prop_assert!(e.column >= 1 && e.column <= text.chars().count() + 1);
            prop_assert!(!e.expected.is_empty());
        }
    }
}

#[test]
fn spec_parse_examples() {
    let p = Formula::atom("p");
    let q = Formula::atom("q");
    let r = Formula::atom("r");
    assert_eq!(parse_formula("p -> q").unwrap(), p.clone().implies(q.clone()));
    assert_eq!(parse_formula("!p & q | r").unwrap(), p.clone().not().and(q.clone()).or(r.clone()));
    let (a, b, c) = (Formula::atom("a"), Formula::atom("b"), Formula::atom("c"));
    assert_eq!(parse_formula("a -> b -> c").unwrap(), a.implies(b.implies(c)));
    let g = parse_information_set("B: p -> q\nD: q\n\n# note\nr").unwrap();
    assert_eq!(g.len(), 3);
    assert!(g.contains(&Sentence::disbelief(q)));
    assert!(g.contains(&Sentence::belief(r)));
}
