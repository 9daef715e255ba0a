//! Least-fixed-point closure under the inference rules, over the finite
//! universe of sentences modulo classical equivalence.
//!
//! With at most two atoms there are 16 semantic classes, hence 32 sentences
//! (one belief and one disbelief per class). Derived sets are bitmasks over
//! those sentences.
//!
//! Premises come in three shapes:
//!
//! * `Γ_B ⊢_PL …`, `ψ̄ ∈ Γ_D`, `Γ̄_D ⊢_PL …` in (B), (WD), (GD), (D): under
//!   [`RuleReading::Membership`] these read the original Γ; under
//!   [`RuleReading::Derivability`] they read the current derived set.
//! * `Γ ⊢ X` in (D′), (B′), (D→B): always the current derived set.
//! * `Γ ∪ {X} ⊢ Y` in (D′), (B′): the derived set plus `X`, closed under the
//!   other (non-hypothetical) rules of the same rule set.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::decision::{consequence_mask, LogicId};
use crate::error::{Error, Result};
use crate::pl::{models_of, AtomUniverse, CanonicalForms};
use crate::semantics::brute_force_run;
use crate::syntax::{InformationSet, Sentence, SentenceKind};

/// A set of sentences over at most 32 classes: bit `c` stands for the
/// sentence whose body has truth-set bitmask `c`.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct SentenceMask {
    pub beliefs: u32,
    pub disbeliefs: u32,
}

impl SentenceMask {
    fn slot(&mut self, kind: SentenceKind) -> &mut u32 {
        match kind {
            SentenceKind::Belief => &mut self.beliefs,
            SentenceKind::Disbelief => &mut self.disbeliefs,
        }
    }

    pub fn get(&self, kind: SentenceKind) -> u32 {
        match kind {
            SentenceKind::Belief => self.beliefs,
            SentenceKind::Disbelief => self.disbeliefs,
        }
    }

    pub fn insert(&mut self, kind: SentenceKind, class: usize) {
        *self.slot(kind) |= 1 << class;
    }

    pub fn contains(&self, kind: SentenceKind, class: usize) -> bool {
        (self.get(kind) >> class) & 1 == 1
    }

    pub fn union(self, other: SentenceMask) -> SentenceMask {
        SentenceMask { beliefs: self.beliefs | other.beliefs, disbeliefs: self.disbeliefs | other.disbeliefs }
    }

    pub fn difference(self, other: SentenceMask) -> SentenceMask {
        SentenceMask { beliefs: self.beliefs & !other.beliefs, disbeliefs: self.disbeliefs & !other.disbeliefs }
    }

    pub fn is_subset(&self, other: &SentenceMask) -> bool {
        self.difference(*other).is_empty()
    }

    pub fn is_empty(&self) -> bool {
        self.beliefs == 0 && self.disbeliefs == 0
    }

    pub fn len(&self) -> usize {
        (self.beliefs.count_ones() + self.disbeliefs.count_ones()) as usize
    }

    /// `(kind, class)` pairs in class order, beliefs first.
    pub fn iter(&self) -> impl Iterator<Item = (SentenceKind, usize)> + '_ {
        [SentenceKind::Belief, SentenceKind::Disbelief].into_iter().flat_map(move |kind| {
            let bits = self.get(kind);
            (0..32).filter(move |c| (bits >> c) & 1 == 1).map(move |c| (kind, c))
        })
    }

    pub fn sentences<'a>(&'a self, forms: &'a CanonicalForms) -> impl Iterator<Item = Sentence> + 'a {
        self.iter().map(|(kind, c)| Sentence { kind, body: forms.formula(c as u64).clone() })
    }
}

/// The sentences of L over one or two atoms, one per class and kind.
#[derive(Debug, Clone)]
pub struct ClosureUniverse {
    forms: CanonicalForms,
    classes: usize,
    full: u32,
}

pub const MAX_CLOSURE_ATOMS: usize = 2;

impl ClosureUniverse {
    pub fn over(universe: &AtomUniverse) -> Result<ClosureUniverse> {
        if universe.len() > MAX_CLOSURE_ATOMS {
            return Err(Error::Scale { what: "closure universe", found: universe.len(), limit: MAX_CLOSURE_ATOMS });
        }
        let worlds = universe.valuation_count();
        Ok(ClosureUniverse {
            forms: CanonicalForms::new(universe)?,
            classes: 1 << worlds,
            full: ((1u64 << worlds) - 1) as u32,
        })
    }

    pub fn universe(&self) -> &AtomUniverse {
        self.forms.universe()
    }

    pub fn forms(&self) -> &CanonicalForms {
        &self.forms
    }

    pub fn class_count(&self) -> usize {
        self.classes
    }

    pub fn sentence_count(&self) -> usize {
        2 * self.classes
    }

    /// Every sentence of the universe.
    pub fn all(&self) -> SentenceMask {
        let bits = if self.classes == 32 { u32::MAX } else { (1u32 << self.classes) - 1 };
        SentenceMask { beliefs: bits, disbeliefs: bits }
    }

    pub fn sentence(&self, kind: SentenceKind, class: usize) -> Sentence {
        Sentence { kind, body: self.forms.formula(class as u64).clone() }
    }

    pub fn sentences(&self) -> impl Iterator<Item = Sentence> + '_ {
        let all = self.all();
        all.iter().map(|(kind, c)| self.sentence(kind, c)).collect::<Vec<_>>().into_iter()
    }

    pub fn class_of(&self, sentence: &Sentence) -> Result<usize> {
        Ok(models_of(&sentence.body, self.universe())?.bits() as usize)
    }

    pub fn mask_of(&self, gamma: &InformationSet) -> Result<SentenceMask> {
        let mut out = SentenceMask::default();
        for s in gamma {
            out.insert(s.kind, self.class_of(s)?);
        }
        Ok(out)
    }

    /// Canonical sentences of a mask, as an information set.
    pub fn information_set(&self, mask: &SentenceMask) -> InformationSet {
        mask.sentences(&self.forms).collect()
    }
}

/// The standard universe `{p}` or `{p, q}`.
pub fn build_universe(n: usize) -> Result<ClosureUniverse> {
    if !(1..=MAX_CLOSURE_ATOMS).contains(&n) {
        return Err(Error::Scale { what: "closure universe", found: n, limit: MAX_CLOSURE_ATOMS });
    }
    ClosureUniverse::over(&AtomUniverse::standard(n)?)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum RuleId {
    /// If Γ_B ⊢ φ then φ.
    B,
    /// If φ ⊢ ⊥ then φ̄.
    DBot,
    /// If ψ̄ ∈ Γ_D and φ ⊢ ψ then φ̄.
    WD,
    /// If Γ̄_D ⊢ ¬φ then φ̄.
    GD,
    /// If ψ̄ ∈ Γ_D and Γ_B ∪ {φ} ⊢ ψ then φ̄.
    D,
    /// If Γ ⊢ ψ̄ and Γ ∪ {φ} ⊢ ψ then φ̄.
    DPrime,
    /// If Γ ⊢ ψ and Γ ∪ {φ̄} ⊢ ψ̄ then φ.
    BPrime,
    /// If Γ ⊢ φ̄ then ¬φ.
    DtoB,
}

impl RuleId {
    pub const ALL: [RuleId; 8] = [
        RuleId::B,
        RuleId::DBot,
        RuleId::WD,
        RuleId::GD,
        RuleId::D,
        RuleId::DPrime,
        RuleId::BPrime,
        RuleId::DtoB,
    ];

    pub fn name(self) -> &'static str {
        match self {
            RuleId::B => "B",
            RuleId::DBot => "DBot",
            RuleId::WD => "WD",
            RuleId::GD => "GD",
            RuleId::D => "D",
            RuleId::DPrime => "DPrime",
            RuleId::BPrime => "BPrime",
            RuleId::DtoB => "DtoB",
        }
    }

    fn is_hypothetical(self) -> bool {
        matches!(self, RuleId::DPrime | RuleId::BPrime)
    }
}

impl fmt::Display for RuleId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("unknown rule `{0}`")]
pub struct UnknownRule(pub String);

impl FromStr for RuleId {
    type Err = UnknownRule;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        RuleId::ALL
            .into_iter()
            .find(|r| r.name().eq_ignore_ascii_case(s))
            .ok_or_else(|| UnknownRule(s.to_string()))
    }
}

pub type RuleSet = BTreeSet<RuleId>;

pub fn rule_set(rules: &[RuleId]) -> RuleSet {
    rules.iter().copied().collect()
}

/// The rules defining each logic's proof theory.
pub fn defining_rules(logic: LogicId) -> RuleSet {
    use RuleId::*;
    match logic {
        LogicId::Wbd => rule_set(&[B, DBot, WD]),
        LogicId::Gbd => rule_set(&[B, DBot, GD]),
        LogicId::Bd => rule_set(&[B, DBot, D]),
        LogicId::Bn => rule_set(&[B, WD, DBot, DtoB]),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum RuleReading {
    Membership,
    Derivability,
}

impl fmt::Display for RuleReading {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            RuleReading::Membership => "membership",
            RuleReading::Derivability => "derivability",
        })
    }
}

impl FromStr for RuleReading {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "membership" => Ok(RuleReading::Membership),
            "derivability" => Ok(RuleReading::Derivability),
            _ => Err(format!("unknown reading `{s}` (expected membership or derivability)")),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Closure {
    pub derived: SentenceMask,
    /// Rounds that added something.
    pub rounds: usize,
    /// Derived set after each round, starting with Γ itself.
    pub trace: Vec<SentenceMask>,
}

impl Closure {
    pub fn sentences(&self, cu: &ClosureUniverse) -> BTreeSet<Sentence> {
        self.derived.sentences(cu.forms()).collect()
    }

    pub fn is_monotone(&self) -> bool {
        self.trace.windows(2).all(|w| w[0].is_subset(&w[1]))
    }
}

fn meet(bits: u32, full: u32) -> u32 {
    (0..32).filter(|c| (bits >> c) & 1 == 1).fold(full, |acc, c| acc & c)
}

fn classes(bits: u32) -> impl Iterator<Item = u32> {
    (0..32u32).filter(move |c| (bits >> c) & 1 == 1)
}

struct Engine<'a> {
    rules: &'a RuleSet,
    reading: RuleReading,
    cu: &'a ClosureUniverse,
}

impl Engine<'_> {
    fn all_classes(&self) -> impl Iterator<Item = u32> {
        0..self.cu.classes as u32
    }

    fn round(&self, gamma: &SentenceMask, derived: &SentenceMask) -> SentenceMask {
        let full = self.cu.full;
        let base = match self.reading {
            RuleReading::Membership => gamma,
            RuleReading::Derivability => derived,
        };
        let mut out = SentenceMask::default();
        for &rule in self.rules {
            match rule {
                RuleId::B => {
                    let t = meet(base.beliefs, full);
                    for c in self.all_classes().filter(|c| t & !c == 0) {
                        out.insert(SentenceKind::Belief, c as usize);
                    }
                }
                RuleId::DBot => out.insert(SentenceKind::Disbelief, 0),
                RuleId::WD => {
                    for psi in classes(base.disbeliefs) {
                        for c in self.all_classes().filter(|c| c & !psi == 0) {
                            out.insert(SentenceKind::Disbelief, c as usize);
                        }
                    }
                }
                RuleId::GD => {
                    let dual = classes(base.disbeliefs).fold(full, |acc, psi| acc & !psi & full);
                    for c in self.all_classes().filter(|c| dual & c == 0) {
                        out.insert(SentenceKind::Disbelief, c as usize);
                    }
                }
                RuleId::D => {
                    let t = meet(base.beliefs, full);
                    for psi in classes(base.disbeliefs) {
                        for c in self.all_classes().filter(|c| t & c & !psi == 0) {
                            out.insert(SentenceKind::Disbelief, c as usize);
                        }
                    }
                }
                RuleId::DtoB => {
                    for phi in classes(derived.disbeliefs) {
                        out.insert(SentenceKind::Belief, (!phi & full) as usize);
                    }
                }
                RuleId::DPrime => {
                    for phi in self.all_classes() {
                        let mut start = *derived;
                        start.insert(SentenceKind::Belief, phi as usize);
                        let hypo = self.hypothetical(start);
                        if hypo.beliefs & derived.disbeliefs != 0 {
                            out.insert(SentenceKind::Disbelief, phi as usize);
                        }
                    }
                }
                RuleId::BPrime => {
                    for phi in self.all_classes() {
                        let mut start = *derived;
                        start.insert(SentenceKind::Disbelief, phi as usize);
                        let hypo = self.hypothetical(start);
                        if hypo.disbeliefs & derived.beliefs != 0 {
                            out.insert(SentenceKind::Belief, phi as usize);
                        }
                    }
                }
            }
        }
        out
    }

    /// Closure of `start` under the non-hypothetical rules.
    fn hypothetical(&self, start: SentenceMask) -> SentenceMask {
        let base: RuleSet = self.rules.iter().copied().filter(|r| !r.is_hypothetical()).collect();
        Engine { rules: &base, reading: self.reading, cu: self.cu }.fixpoint(start).derived
    }

    fn fixpoint(&self, gamma: SentenceMask) -> Closure {
        let mut derived = gamma;
        let mut trace = vec![derived];
        let mut rounds = 0;
        loop {
            let next = derived.union(self.round(&gamma, &derived));
            if next == derived {
                break;
            }
            derived = next;
            rounds += 1;
            trace.push(derived);
        }
        Closure { derived, rounds, trace }
    }
}

/// Least set containing Γ and closed under `rules`.
pub fn close(rules: &RuleSet, reading: RuleReading, gamma: &InformationSet, cu: &ClosureUniverse) -> Result<Closure> {
    if let Some(atom) = gamma.atoms().into_iter().find(|a| !cu.universe().contains(a)) {
        return Err(Error::UnknownAtom(atom.to_string()));
    }
    Ok(close_mask(rules, reading, cu.mask_of(gamma)?, cu))
}

pub fn close_mask(rules: &RuleSet, reading: RuleReading, gamma: SentenceMask, cu: &ClosureUniverse) -> Closure {
    Engine { rules, reading, cu }.fixpoint(gamma)
}

/// A way of computing the consequences of Γ over a closure universe.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Route {
    Closure { rules: RuleSet, reading: RuleReading },
    Decision(LogicId),
    Oracle(LogicId),
}

impl Route {
    pub fn closure(rules: &[RuleId], reading: RuleReading) -> Route {
        Route::Closure { rules: rule_set(rules), reading }
    }

    pub fn evaluate(&self, gamma: &InformationSet, cu: &ClosureUniverse) -> Result<SentenceMask> {
        match self {
            Route::Closure { rules, reading } => Ok(close(rules, *reading, gamma, cu)?.derived),
            Route::Decision(logic) => consequence_mask(*logic, gamma, cu.universe()),
            Route::Oracle(logic) => Ok(brute_force_run(*logic, gamma, cu.universe())?.mask()),
        }
    }
}

impl fmt::Display for Route {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Route::Closure { rules, reading } => {
                let names: Vec<&str> = rules.iter().map(|r| r.name()).collect();
                write!(f, "close{{{}}}/{reading}", names.join(","))
            }
            Route::Decision(logic) => write!(f, "decide-{logic}"),
            Route::Oracle(logic) => write!(f, "oracle-{logic}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Disagreement {
    pub gamma: InformationSet,
    pub sentence: Sentence,
    /// Derived by the first route only (otherwise by the second only).
    pub in_first: bool,
}

/// Every `(Γ, α)` of the sample that exactly one of the two routes derives.
pub fn readings_agree<'a, I>(first: &Route, second: &Route, sample: I, cu: &ClosureUniverse) -> Result<Vec<Disagreement>>
where
    I: IntoIterator<Item = &'a InformationSet>,
{
    let mut out = Vec::new();
    for gamma in sample {
        let a = first.evaluate(gamma, cu)?;
        let b = second.evaluate(gamma, cu)?;
        for (mask, in_first) in [(a.difference(b), true), (b.difference(a), false)] {
            for (kind, class) in mask.iter() {
                out.push(Disagreement { gamma: gamma.clone(), sentence: cu.sentence(kind, class), in_first });
            }
        }
    }
    Ok(out)
}

/// All information sets drawn from the universe's sentences with at most
/// `max_size` members, in increasing order of size.
pub fn all_information_sets(cu: &ClosureUniverse, max_size: usize) -> Vec<InformationSet> {
    let all: Vec<Sentence> = cu.sentences().collect();
    let mut out = Vec::new();
    let mut chosen = Vec::new();
    fn rec(all: &[Sentence], from: usize, left: usize, chosen: &mut Vec<usize>, out: &mut Vec<InformationSet>) {
        out.push(chosen.iter().map(|&i| all[i].clone()).collect());
        if left == 0 {
            return;
        }
        for i in from..all.len() {
            chosen.push(i);
            rec(all, i + 1, left - 1, chosen, out);
            chosen.pop();
        }
    }
    rec(&all, 0, max_size, &mut chosen, &mut out);
    out.sort_by_key(InformationSet::len);
    out
}
