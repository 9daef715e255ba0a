//! Decision procedures for the four logics.
//!
//! Each procedure reduces a query to a handful of classical entailment checks
//! (characterization lemmas), all computed over the atoms occurring in Γ and
//! the query:
//!
//! | logic | belief `φ`              | disbelief `φ̄`                                         |
//! |-------|-------------------------|--------------------------------------------------------|
//! | WBD   | Γ_B ⊢ φ                 | φ ⊢ ⊥, or φ ⊢ ψ for some ψ̄ ∈ Γ_D                      |
//! | GBD   | Γ_B ⊢ φ                 | Γ̄_D ⊢ ¬φ                                               |
//! | BD    | Γ_B ⊢ φ                 | Γ_B ⊢ ¬φ, or Γ_B ∪ {φ} ⊢ ψ for some ψ̄ ∈ Γ_D           |
//! | BN    | Γ_B ∪ Γ̄_D ⊢ φ          | Γ_B ∪ Γ̄_D ⊢ ¬φ                                        |
//!
//! The first three agree with the model theory in [`crate::semantics`]; the
//! test suites check that exhaustively against the brute-force oracle.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::closure::SentenceMask;
use crate::error::{Error, Result};
use crate::pl::{models_of, relevant_atoms, AtomUniverse, CanonicalForms, WorldSet};
use crate::semantics::{self, Countermodel};
use crate::syntax::{Formula, InformationSet, Sentence, SentenceKind};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum LogicId {
    Wbd,
    Gbd,
    Bd,
    Bn,
}

impl LogicId {
    pub const ALL: [LogicId; 4] = [LogicId::Wbd, LogicId::Gbd, LogicId::Bd, LogicId::Bn];
    /// The logics with a model theory.
    pub const SEMANTIC: [LogicId; 3] = [LogicId::Wbd, LogicId::Gbd, LogicId::Bd];

    pub fn name(self) -> &'static str {
        match self {
            LogicId::Wbd => "WBD",
            LogicId::Gbd => "GBD",
            LogicId::Bd => "BD",
            LogicId::Bn => "BN",
        }
    }

    pub fn has_semantics(self) -> bool {
        self != LogicId::Bn
    }
}

impl fmt::Display for LogicId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("unknown logic `{0}` (expected wbd, gbd, bd or bn)")]
pub struct UnknownLogic(pub String);

impl FromStr for LogicId {
    type Err = UnknownLogic;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "wbd" => Ok(LogicId::Wbd),
            "gbd" => Ok(LogicId::Gbd),
            "bd" => Ok(LogicId::Bd),
            "bn" => Ok(LogicId::Bn),
            _ => Err(UnknownLogic(s.to_string())),
        }
    }
}

/// Which part of a characterization fired.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "rule", rename_all = "kebab-case")]
pub enum Rationale {
    /// Γ_B ⊢ φ.
    Supraclassicality,
    /// φ ⊢ ⊥.
    Contradiction,
    /// φ ⊢ ψ for the disbelief ψ̄ ∈ Γ_D.
    Weakening { source: Formula },
    /// Γ̄_D ⊢ ¬φ.
    DualConsequence,
    /// Γ_B ⊢ ¬φ.
    RefutedByBeliefs,
    /// Γ_B ∪ {φ} ⊢ ψ for the disbelief ψ̄ ∈ Γ_D.
    RelativeWeakening { source: Formula },
    /// Γ_B ∪ Γ̄_D ⊢ φ, or ⊢ ¬φ for a disbelief.
    Collapse,
    /// Every model of Γ satisfies the query (oracle verdicts).
    AllModels,
    NotEntailed,
}

impl fmt::Display for Rationale {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Rationale::Supraclassicality => f.write_str("(B): the beliefs classically entail it"),
            Rationale::Contradiction => f.write_str("(D⊥): it is a contradiction"),
            Rationale::Weakening { source } => {
                write!(f, "(WD): it is classically stronger than the disbelief D: {source}")
            }
            Rationale::DualConsequence => {
                f.write_str("(GD): the negated disbeliefs classically entail its negation")
            }
            Rationale::RefutedByBeliefs => f.write_str("(D): the beliefs classically entail its negation"),
            Rationale::RelativeWeakening { source } => write!(
                f,
                "(D): together with the beliefs it classically entails the disbelieved D: {source}"
            ),
            Rationale::Collapse => f.write_str(
                "(D→B): beliefs plus negated disbeliefs classically entail it (negation, for a disbelief)",
            ),
            Rationale::AllModels => f.write_str("every model of the information set satisfies it"),
            Rationale::NotEntailed => f.write_str("no characterizing condition holds"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Verdict {
    pub logic: LogicId,
    pub query: Sentence,
    pub entailed: bool,
    pub rationale: Rationale,
    /// A model of Γ falsifying the query; only for non-entailed queries of
    /// the logics with semantics.
    pub witness: Option<Countermodel>,
}

/// Γ with its truth-sets precomputed over a universe.
#[derive(Debug, Clone)]
pub(crate) struct Frame {
    pub universe: AtomUniverse,
    /// ∩ M(Γ_B)
    pub beliefs: WorldSet,
    /// (ψ, M(ψ)) for ψ̄ ∈ Γ_D, in set order
    pub disbeliefs: Vec<(Formula, WorldSet)>,
    /// ∩ M(Γ̄_D)
    pub dual: WorldSet,
}

impl Frame {
    pub fn new(gamma: &InformationSet, universe: AtomUniverse) -> Result<Frame> {
        let worlds = universe.valuation_count();
        let mut beliefs = WorldSet::full(worlds);
        for f in gamma.beliefs() {
            beliefs = beliefs.intersection(&models_of(f, &universe)?);
        }
        let mut disbeliefs = Vec::new();
        let mut dual = WorldSet::full(worlds);
        for f in gamma.disbeliefs() {
            let m = models_of(f, &universe)?;
            dual = dual.difference(&m);
            disbeliefs.push((f.clone(), m));
        }
        Ok(Frame { universe, beliefs, disbeliefs, dual })
    }

    /// Frame over the atoms of Γ and the query.
    pub fn for_query(gamma: &InformationSet, query: &Sentence) -> Result<Frame> {
        let universe = relevant_atoms(
            gamma.iter().map(|s| &s.body).chain(std::iter::once(&query.body)),
        )?;
        Frame::new(gamma, universe)
    }

    pub fn models(&self, f: &Formula) -> Result<WorldSet> {
        models_of(f, &self.universe)
    }

    pub fn decide(&self, logic: LogicId, query: &Sentence) -> Result<(bool, Rationale)> {
        let phi = self.models(&query.body)?;
        Ok(self.decide_class(logic, query.kind, phi))
    }

    /// Decision for the sentence of the given kind whose body has truth-set `phi`.
    pub fn decide_class(&self, logic: LogicId, kind: SentenceKind, phi: WorldSet) -> (bool, Rationale) {
        let hit = |r: Rationale| (true, r);
        match (logic, kind) {
            (LogicId::Wbd | LogicId::Gbd | LogicId::Bd, SentenceKind::Belief) => {
                if self.beliefs.is_subset(&phi) {
                    return hit(Rationale::Supraclassicality);
                }
            }
            (LogicId::Wbd, SentenceKind::Disbelief) => {
                if phi.is_empty() {
                    return hit(Rationale::Contradiction);
                }
                if let Some((psi, _)) = self.disbeliefs.iter().find(|(_, m)| phi.is_subset(m)) {
                    return hit(Rationale::Weakening { source: psi.clone() });
                }
            }
            (LogicId::Gbd, SentenceKind::Disbelief) => {
                if phi.is_empty() {
                    return hit(Rationale::Contradiction);
                }
                if self.dual.is_disjoint(&phi) {
                    return hit(Rationale::DualConsequence);
                }
            }
            (LogicId::Bd, SentenceKind::Disbelief) => {
                if phi.is_empty() {
                    return hit(Rationale::Contradiction);
                }
                let relative = self.beliefs.intersection(&phi);
                if relative.is_empty() {
                    return hit(Rationale::RefutedByBeliefs);
                }
                if let Some((psi, _)) = self.disbeliefs.iter().find(|(_, m)| relative.is_subset(m)) {
                    return hit(Rationale::RelativeWeakening { source: psi.clone() });
                }
            }
            (LogicId::Bn, kind) => {
                let base = self.beliefs.intersection(&self.dual);
                let target = match kind {
                    SentenceKind::Belief => phi,
                    SentenceKind::Disbelief => phi.complement(),
                };
                if base.is_subset(&target) {
                    return hit(Rationale::Collapse);
                }
            }
        }
        (false, Rationale::NotEntailed)
    }

    pub fn verdict(&self, logic: LogicId, query: &Sentence) -> Result<Verdict> {
        let (entailed, rationale) = self.decide(logic, query)?;
        let witness = if !entailed && logic.has_semantics() {
            Some(semantics::build_countermodel(self, logic, query)?)
        } else {
            None
        };
        Ok(Verdict { logic, query: query.clone(), entailed, rationale, witness })
    }
}

/// `Γ ⊢_logic α`, with rationale and countermodel.
pub fn decide(logic: LogicId, gamma: &InformationSet, query: &Sentence) -> Result<Verdict> {
    Frame::for_query(gamma, query)?.verdict(logic, query)
}

/// Verdict only, without countermodel construction.
pub fn entails(logic: LogicId, gamma: &InformationSet, query: &Sentence) -> Result<bool> {
    Ok(Frame::for_query(gamma, query)?.decide(logic, query)?.0)
}

pub fn decide_wbd(gamma: &InformationSet, query: &Sentence) -> Result<Verdict> {
    decide(LogicId::Wbd, gamma, query)
}

pub fn decide_gbd(gamma: &InformationSet, query: &Sentence) -> Result<Verdict> {
    decide(LogicId::Gbd, gamma, query)
}

pub fn decide_bd(gamma: &InformationSet, query: &Sentence) -> Result<Verdict> {
    decide(LogicId::Bd, gamma, query)
}

pub fn decide_bn(gamma: &InformationSet, query: &Sentence) -> Result<Verdict> {
    decide(LogicId::Bn, gamma, query)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct InconsistencyReport {
    pub logic: LogicId,
    /// Γ_B ⊢ ⊥
    pub b_inconsistent: bool,
    /// Γ ⊢ ⊤̄
    pub d_inconsistent: bool,
    /// Γ_D ⊢ ⊤̄, the reading that ignores the beliefs
    pub d_inconsistent_literal: bool,
    /// Γ ⊢ φ and Γ ⊢ φ̄ for some φ
    pub combined_inconsistent: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness_formula: Option<Formula>,
}

impl InconsistencyReport {
    pub fn any(&self) -> bool {
        self.b_inconsistent || self.d_inconsistent || self.combined_inconsistent
    }
}

pub fn inconsistency_report(logic: LogicId, gamma: &InformationSet) -> Result<InconsistencyReport> {
    let top_bar = Sentence::disbelief(Formula::Top);
    let frame = Frame::for_query(gamma, &top_bar)?;
    let b_inconsistent = frame.beliefs.is_empty();
    let d_inconsistent = frame.decide(logic, &top_bar)?.0;
    let literal = Frame::new(&gamma.disbelief_part(), frame.universe.clone())?;
    let d_inconsistent_literal = literal.decide(logic, &top_bar)?.0;

    // Every candidate φ has Γ_B ⊢ φ, so the conjunction of Γ_B (the candidate
    // with the smallest truth-set) is a witness whenever any candidate is.
    let combined_inconsistent = match logic {
        LogicId::Wbd => {
            b_inconsistent || frame.disbeliefs.iter().any(|(_, m)| frame.beliefs.is_subset(m))
        }
        LogicId::Gbd | LogicId::Bn => frame.beliefs.is_disjoint(&frame.dual),
        LogicId::Bd => d_inconsistent,
    };
    let witness_formula = combined_inconsistent.then(|| match logic {
        LogicId::Bn => Formula::Bottom,
        _ => Formula::conjunction(gamma.beliefs().cloned()),
    });
    Ok(InconsistencyReport {
        logic,
        b_inconsistent,
        d_inconsistent,
        d_inconsistent_literal,
        combined_inconsistent,
        witness_formula,
    })
}

/// Largest universe for which consequence sets are enumerated.
pub const MAX_CONSEQUENCE_ATOMS: usize = 2;

fn check_slice_universe(gamma: &InformationSet, universe: &AtomUniverse) -> Result<()> {
    if universe.len() > MAX_CONSEQUENCE_ATOMS {
        return Err(Error::Scale {
            what: "consequence enumeration",
            found: universe.len(),
            limit: MAX_CONSEQUENCE_ATOMS,
        });
    }
    if let Some(atom) = gamma.atoms().into_iter().find(|a| !universe.contains(a)) {
        return Err(Error::UnknownAtom(atom.to_string()));
    }
    Ok(())
}

/// The consequences of Γ over `universe`, one bit per semantic class and kind.
pub fn consequence_mask(logic: LogicId, gamma: &InformationSet, universe: &AtomUniverse) -> Result<SentenceMask> {
    check_slice_universe(gamma, universe)?;
    let frame = Frame::new(gamma, universe.clone())?;
    let worlds = universe.valuation_count();
    let mut out = SentenceMask::default();
    for class in 0..1u64 << worlds {
        for kind in [SentenceKind::Belief, SentenceKind::Disbelief] {
            if frame.decide_class(logic, kind, WorldSet::from_bits(worlds, class)).0 {
                out.insert(kind, class as usize);
            }
        }
    }
    Ok(out)
}

/// C_logic(Γ) restricted to `universe`, one canonical sentence per class and kind.
pub fn consequences(logic: LogicId, gamma: &InformationSet, universe: &AtomUniverse) -> Result<BTreeSet<Sentence>> {
    let mask = consequence_mask(logic, gamma, universe)?;
    let forms = CanonicalForms::new(universe)?;
    Ok(mask.sentences(&forms).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::{parse_formula, parse_information_set, parse_sentence};

    fn gamma(doc: &str) -> InformationSet {
        parse_information_set(doc).unwrap()
    }

    fn q(text: &str) -> Sentence {
        parse_sentence(text).unwrap()
    }

    fn yes(logic: LogicId, doc: &str, query: &str) -> bool {
        decide(logic, &gamma(doc), &q(query)).unwrap().entailed
    }

    #[test]
    fn wbd_examples() {
        assert!(yes(LogicId::Wbd, "D: q", "D: p & q"));
        assert!(yes(LogicId::Wbd, "", "D: p & !p"));
        assert!(!yes(LogicId::Wbd, "D: p\nD: q", "D: p | q"));
        assert!(!yes(LogicId::Wbd, "D: p\nq", "B: p"));
    }

    #[test]
    fn wbd_rationale_names_the_source() {
        let v = decide_wbd(&gamma("D: q\nD: r"), &q("D: p & q")).unwrap();
        assert_eq!(v.rationale, Rationale::Weakening { source: parse_formula("q").unwrap() });
        assert!(v.witness.is_none());
    }

    #[test]
    fn gbd_examples() {
        assert!(yes(LogicId::Gbd, "D: p\nD: q", "D: p | q"));
        assert!(yes(LogicId::Gbd, "D: p\nD: !p", "D: true"));
        assert!(!yes(LogicId::Gbd, "!p", "D: p"));
    }

    #[test]
    fn bd_examples() {
        let murder = "s\nk -> m\nD: s & m";
        let v = decide_bd(&gamma(murder), &q("D: k")).unwrap();
        assert!(v.entailed);
        assert_eq!(v.rationale, Rationale::RelativeWeakening { source: parse_formula("s & m").unwrap() });
        assert!(yes(LogicId::Bd, "!p", "D: p"));
        assert!(!yes(LogicId::Bd, "D: p\nD: q", "D: p | q"));
        assert!(!yes(LogicId::Bd, "D: t1\nD: t2\nt1 & !t2 | !t1 & t2", "D: true"));
    }

    #[test]
    fn bn_examples() {
        assert!(yes(LogicId::Bn, "D: p", "B: !p"));
        assert!(yes(LogicId::Bn, "!p", "D: p"));
        assert!(yes(LogicId::Bn, "D: p\nq", "D: p"));
        assert!(yes(LogicId::Bn, "D: p\nq", "D: p & q"));
        assert!(decide_bn(&gamma("D: p"), &q("B: p")).unwrap().witness.is_none());
    }

    #[test]
    fn non_entailed_verdicts_carry_countermodels() {
        for logic in LogicId::SEMANTIC {
            let v = decide(logic, &gamma("D: p\nD: q\np | q"), &q("B: p")).unwrap();
            assert!(!v.entailed);
            assert!(v.witness.is_some(), "{logic}");
        }
    }

    #[test]
    fn query_atoms_outside_gamma_are_fine() {
        assert!(!yes(LogicId::Bd, "p", "B: r"));
        assert!(yes(LogicId::Bd, "p", "B: r | !r"));
    }

    #[test]
    fn inconsistency_prop8_witness() {
        let r = inconsistency_report(LogicId::Bd, &gamma("p\nD: p")).unwrap();
        assert!(r.combined_inconsistent);
        assert!(!r.b_inconsistent);
        assert!(r.d_inconsistent);
        assert!(!r.d_inconsistent_literal);
        assert_eq!(r.witness_formula, Some(parse_formula("p").unwrap()));
    }

    #[test]
    fn inconsistency_murder_mystery_under_bd() {
        let r = inconsistency_report(LogicId::Bd, &gamma("D: a\nD: b\na | b")).unwrap();
        assert!(!r.any());
        assert!(r.witness_formula.is_none());
    }

    #[test]
    fn inconsistency_lottery_under_gbd() {
        let r = inconsistency_report(LogicId::Gbd, &gamma("D: t1\nD: t2\nt1 & !t2 | !t1 & t2")).unwrap();
        assert!(r.combined_inconsistent);
        assert!(!r.b_inconsistent);
        let w = r.witness_formula.unwrap();
        let g = gamma("D: t1\nD: t2\nt1 & !t2 | !t1 & t2");
        assert!(entails(LogicId::Gbd, &g, &Sentence::belief(w.clone())).unwrap());
        assert!(entails(LogicId::Gbd, &g, &Sentence::disbelief(w)).unwrap());
    }

    #[test]
    fn consequences_examples() {
        let p = AtomUniverse::new(["p"]).unwrap();
        let c = consequences(LogicId::Wbd, &InformationSet::new(), &p).unwrap();
        assert_eq!(c, [q("B: true"), q("D: false")].into_iter().collect());

        let c = consequences(LogicId::Bd, &gamma("!p"), &p).unwrap();
        assert_eq!(
            c,
            [q("B: true"), q("B: !p"), q("D: false"), q("D: p")].into_iter().collect()
        );

        let c = consequences(LogicId::Gbd, &gamma("D: p"), &p).unwrap();
        let dis: BTreeSet<_> = c.iter().filter(|s| s.is_disbelief()).cloned().collect();
        assert_eq!(dis, [q("D: false"), q("D: p")].into_iter().collect());
    }

    #[test]
    fn consequences_guards() {
        let three = AtomUniverse::standard(3).unwrap();
        assert!(matches!(
            consequences(LogicId::Bd, &InformationSet::new(), &three),
            Err(Error::Scale { .. })
        ));
        let p = AtomUniverse::new(["p"]).unwrap();
        assert_eq!(
            consequences(LogicId::Bd, &gamma("q"), &p).unwrap_err(),
            Error::UnknownAtom("q".into())
        );
    }

    #[test]
    fn logic_names_parse() {
        assert_eq!("BD".parse::<LogicId>().unwrap(), LogicId::Bd);
        assert_eq!("wbd".parse::<LogicId>().unwrap(), LogicId::Wbd);
        assert!("kd45".parse::<LogicId>().is_err());
    }
}
