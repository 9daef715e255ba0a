//! Reference implementations written independently of the library: a
//! recursive evaluator and naive model enumeration straight from the model
//! definitions.

#![allow(dead_code)]

use std::collections::BTreeMap;

use disbelief_core::{Formula, InformationSet, LogicId, Sentence, SentenceKind};
use proptest::prelude::*;

pub fn eval(f: &Formula, v: &BTreeMap<String, bool>) -> bool {
    match f {
        Formula::Atom(a) => v[a],
        Formula::Top => true,
        Formula::Bottom => false,
        Formula::Not(a) => !eval(a, v),
        Formula::And(a, b) => eval(a, v) && eval(b, v),
        Formula::Or(a, b) => eval(a, v) || eval(b, v),
        Formula::Implies(a, b) => !eval(a, v) || eval(b, v),
        Formula::Iff(a, b) => eval(a, v) == eval(b, v),
    }
}

/// All valuations over `atoms`, valuation `i` setting atom `k` to bit `k` of `i`.
pub fn valuations(atoms: &[&str]) -> Vec<BTreeMap<String, bool>> {
    (0..1usize << atoms.len())
        .map(|i| atoms.iter().enumerate().map(|(k, a)| (a.to_string(), (i >> k) & 1 == 1)).collect())
        .collect()
}

/// Indices of the valuations satisfying `f`.
pub fn truth_set(f: &Formula, atoms: &[&str]) -> Vec<usize> {
    valuations(atoms).iter().enumerate().filter(|(_, v)| eval(f, v)).map(|(i, _)| i).collect()
}

/// Classical consequence by truth tables.
pub fn classical(premises: &[Formula], conclusion: &Formula, atoms: &[&str]) -> bool {
    valuations(atoms).iter().all(|v| !premises.iter().all(|p| eval(p, v)) || eval(conclusion, v))
}

fn subset(a: &[usize], b: &[usize]) -> bool {
    a.iter().all(|x| b.contains(x))
}

fn disjoint(a: &[usize], b: &[usize]) -> bool {
    a.iter().all(|x| !b.contains(x))
}

/// A model as plain lists of valuation indices.
#[derive(Debug, Clone)]
pub struct NaiveModel {
    pub m: Vec<usize>,
    pub sources: Vec<Vec<usize>>,
}

pub fn holds(model: &NaiveModel, s: &Sentence, atoms: &[&str]) -> bool {
    let set = truth_set(&s.body, atoms);
    match s.kind {
        SentenceKind::Belief => subset(&model.m, &set),
        SentenceKind::Disbelief => model.sources.iter().any(|n| disjoint(n, &set)),
    }
}

fn members(code: usize, universe: &[usize]) -> Vec<usize> {
    universe.iter().enumerate().filter(|(k, _)| (code >> k) & 1 == 1).map(|(_, &w)| w).collect()
}

/// Every model of the logic over `atoms` (GBD models have one source).
pub fn models(logic: LogicId, atoms: &[&str]) -> Vec<NaiveModel> {
    let worlds: Vec<usize> = (0..1 << atoms.len()).collect();
    let sets: Vec<Vec<usize>> = (0..1usize << worlds.len()).map(|c| members(c, &worlds)).collect();
    let mut out = Vec::new();
    for m in &sets {
        match logic {
            LogicId::Gbd => {
                for n in &sets {
                    out.push(NaiveModel { m: m.clone(), sources: vec![n.clone()] });
                }
            }
            LogicId::Wbd | LogicId::Bd => {
                let allowed: Vec<&Vec<usize>> =
                    sets.iter().filter(|n| logic == LogicId::Wbd || subset(n, m)).collect();
                for fam in 1..1usize << allowed.len() {
                    let sources = (0..allowed.len()).filter(|k| (fam >> k) & 1 == 1).map(|k| allowed[k].clone()).collect();
                    out.push(NaiveModel { m: m.clone(), sources });
                }
            }
            LogicId::Bn => panic!("no models"),
        }
    }
    out
}

/// Semantic entailment by enumerating `models`.
pub fn entails(models: &[NaiveModel], gamma: &InformationSet, query: &Sentence, atoms: &[&str]) -> bool {
    models
        .iter()
        .filter(|m| gamma.iter().all(|s| holds(m, s, atoms)))
        .all(|m| holds(m, query, atoms))
}

/// Information sets of at most `max` sentences drawn from `pool`.
pub fn subsets_up_to(pool: &[Sentence], max: usize) -> Vec<InformationSet> {
    let mut out = vec![InformationSet::new()];
    let mut frontier: Vec<(usize, InformationSet)> = vec![(0, InformationSet::new())];
    for _ in 0..max {
        let mut next = Vec::new();
        for (from, g) in &frontier {
            for (i, s) in pool.iter().enumerate().skip(*from) {
                let h = g.with(s.clone());
                out.push(h.clone());
                next.push((i + 1, h));
            }
        }
        frontier = next;
    }
    out
}

pub fn atom_name() -> impl Strategy<Value = String> {
    "[a-z][a-z0-9_]{0,4}".prop_filter("keyword", |s| s != "true" && s != "false")
}

pub fn formula_over(atoms: Vec<String>) -> impl Strategy<Value = Formula> {
    let leaf = prop_oneof![
        1 => Just(Formula::Top),
        1 => Just(Formula::Bottom),
        6 => proptest::sample::select(atoms).prop_map(Formula::Atom),
    ];
    leaf.prop_recursive(5, 48, 2, |inner| {
        prop_oneof![
            inner.clone().prop_map(Formula::not),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| a.and(b)),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| a.or(b)),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| a.implies(b)),
            (inner.clone(), inner).prop_map(|(a, b)| a.iff(b)),
        ]
    })
}

pub fn formula() -> impl Strategy<Value = Formula> {
    proptest::collection::vec(atom_name(), 1..5).prop_flat_map(formula_over)
}

pub fn sentence_over(atoms: Vec<String>) -> impl Strategy<Value = Sentence> {
    (any::<bool>(), formula_over(atoms))
        .prop_map(|(b, f)| if b { Sentence::belief(f) } else { Sentence::disbelief(f) })
}

pub fn gamma_over(atoms: &[&str], max: usize) -> impl Strategy<Value = InformationSet> {
    let atoms: Vec<String> = atoms.iter().map(|s| s.to_string()).collect();
    proptest::collection::vec(sentence_over(atoms), 0..=max).prop_map(|v| v.into_iter().collect())
}
