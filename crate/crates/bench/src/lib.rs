//! Shared inputs for the reasoning benchmarks.

use disbelief_core::closure::{all_information_sets, build_universe};
use disbelief_core::{fixtures, parse_information_set, InformationSet};

/// Named information sets of increasing size.
pub fn workloads() -> Vec<(&'static str, InformationSet)> {
    vec![
        ("murder", fixtures::murder().gamma),
        ("lottery-4", fixtures::lottery(4).expect("valid").gamma),
        ("lottery-8", fixtures::lottery(8).expect("valid").gamma),
        (
            "chain-6",
            parse_information_set("a -> b\nb -> c\nc -> d\nd -> e\ne -> f\nD: a & f\nD: !a & !f\na | f\n").expect("valid"),
        ),
    ]
}

/// Every information set of at most `max_size` sentences over two atoms.
pub fn two_atom_sets(max_size: usize) -> Vec<InformationSet> {
    let cu = build_universe(2).expect("two atoms");
    all_information_sets(&cu, max_size)
}
