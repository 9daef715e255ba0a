//! Built-in information sets with their expected verdicts.

use serde::{Deserialize, Serialize};

use crate::decision::{decide, inconsistency_report, LogicId};
use crate::error::{Error, Result};
use crate::pl::MAX_ATOMS;
use crate::syntax::{Formula, InformationSet, Sentence};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExpectedVerdict {
    pub logic: LogicId,
    pub query: Sentence,
    pub entailed: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExpectedConsistency {
    pub logic: LogicId,
    pub b_inconsistent: bool,
    pub d_inconsistent: bool,
    pub combined_inconsistent: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Fixture {
    pub name: String,
    pub description: String,
    pub gamma: InformationSet,
    pub verdicts: Vec<ExpectedVerdict>,
    pub consistency: Vec<ExpectedConsistency>,
}

/// A fixture expectation the decision procedures do not meet.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Mismatch {
    pub fixture: String,
    pub detail: String,
}

pub const NAMES: [&str; 7] = ["lottery", "murder", "suspects", "agnostic", "dvee", "refuted", "conflict"];

fn atom(name: &str) -> Formula {
    Formula::atom(name)
}

fn s(text: &str) -> Sentence {
    text.parse().expect("fixture sentence")
}

fn verdicts(query: &str, wbd: bool, gbd: bool, bd: bool, bn: bool) -> Vec<ExpectedVerdict> {
    let query = s(query);
    [(LogicId::Wbd, wbd), (LogicId::Gbd, gbd), (LogicId::Bd, bd), (LogicId::Bn, bn)]
        .into_iter()
        .map(|(logic, entailed)| ExpectedVerdict { logic, query: query.clone(), entailed })
        .collect()
}

fn consistency(logic: LogicId, b: bool, d: bool, combined: bool) -> ExpectedConsistency {
    ExpectedConsistency { logic, b_inconsistent: b, d_inconsistent: d, combined_inconsistent: combined }
}

fn all_consistent(logics: &[LogicId]) -> Vec<ExpectedConsistency> {
    logics.iter().map(|&l| consistency(l, false, false, false)).collect()
}

impl Fixture {
    pub fn to_bdl(&self) -> String {
        let mut out = format!("# {}\n", self.description);
        out.push_str(&self.gamma.to_bdl());
        out
    }

    /// Runs every expectation against the decision procedures.
    pub fn check(&self) -> Result<Vec<Mismatch>> {
        let mut out = Vec::new();
        for e in &self.verdicts {
            let got = decide(e.logic, &self.gamma, &e.query)?.entailed;
            if got != e.entailed {
                out.push(Mismatch {
                    fixture: self.name.clone(),
                    detail: format!("{} {}: expected entailed={}, got {}", e.logic, e.query, e.entailed, got),
                });
            }
        }
        for e in &self.consistency {
            let r = inconsistency_report(e.logic, &self.gamma)?;
            let got = (r.b_inconsistent, r.d_inconsistent, r.combined_inconsistent);
            let want = (e.b_inconsistent, e.d_inconsistent, e.combined_inconsistent);
            if got != want {
                out.push(Mismatch {
                    fixture: self.name.clone(),
                    detail: format!("{} (b, d, combined): expected {:?}, got {:?}", e.logic, want, got),
                });
            }
        }
        Ok(out)
    }
}

/// `n` tickets, each disbelieved to win, exactly one of which wins.
pub fn lottery(n: usize) -> Result<Fixture> {
    if n < 2 {
        return Err(Error::InvalidArgument(format!("a lottery needs at least 2 tickets, got {n}")));
    }
    if n > MAX_ATOMS {
        return Err(Error::TooManyAtoms { found: n, limit: MAX_ATOMS });
    }
    let tickets: Vec<Formula> = (1..=n).map(|i| atom(&format!("t{i}"))).collect();
    let exactly_one = Formula::exactly_one(&tickets);
    let mut gamma: InformationSet = tickets.iter().cloned().map(Sentence::disbelief).collect();
    gamma.insert(Sentence::belief(exactly_one.clone()));

    let mut verdicts = verdicts("D: true", false, false, false, true);
    verdicts.extend([
        ExpectedVerdict { logic: LogicId::Gbd, query: Sentence::disbelief(exactly_one.clone()), entailed: true },
        ExpectedVerdict { logic: LogicId::Bd, query: Sentence::disbelief(exactly_one), entailed: false },
    ]);
    let mut consistency_rows = all_consistent(&[LogicId::Wbd, LogicId::Bd]);
    consistency_rows.push(consistency(LogicId::Gbd, false, false, true));
    Ok(Fixture {
        name: "lottery".into(),
        description: format!("lottery with {n} tickets: no ticket is believed to win, exactly one wins"),
        gamma,
        verdicts,
        consistency: consistency_rows,
    })
}

/// The suspect was at the scene; killing requires a motive; being at the
/// scene with a motive is disbelieved.
pub fn murder() -> Fixture {
    let gamma: InformationSet = ["s", "k -> m", "D: s & m"].into_iter().map(s).collect();
    Fixture {
        name: "murder".into(),
        description: "s: at the scene, k: killed, m: had a motive".into(),
        gamma,
        verdicts: verdicts("D: k", false, false, true, true),
        consistency: all_consistent(&LogicId::SEMANTIC),
    }
}

/// One of two suspects did it; neither is believed to have.
pub fn suspects() -> Fixture {
    let gamma: InformationSet = ["D: a", "D: b", "a | b"].into_iter().map(s).collect();
    let mut verdicts = verdicts("D: true", false, false, false, true);
    verdicts.push(ExpectedVerdict { logic: LogicId::Gbd, query: s("D: a | b"), entailed: true });
    let mut rows = all_consistent(&[LogicId::Wbd, LogicId::Bd]);
    rows.push(consistency(LogicId::Gbd, false, false, true));
    Fixture {
        name: "suspects".into(),
        description: "a, b: the two suspects".into(),
        gamma,
        verdicts,
        consistency: rows,
    }
}

/// Agnosticism about `p`.
pub fn agnostic() -> Fixture {
    let gamma: InformationSet = ["D: p", "D: !p"].into_iter().map(s).collect();
    let mut rows = all_consistent(&[LogicId::Wbd, LogicId::Bd]);
    rows.push(consistency(LogicId::Gbd, false, true, true));
    Fixture {
        name: "agnostic".into(),
        description: "neither p nor its negation is accepted".into(),
        gamma,
        verdicts: verdicts("D: true", false, true, false, true),
        consistency: rows,
    }
}

/// Two disbeliefs; only GBD combines them.
pub fn dvee() -> Fixture {
    let gamma: InformationSet = ["D: p", "D: q"].into_iter().map(s).collect();
    Fixture {
        name: "dvee".into(),
        description: "two separate disbeliefs".into(),
        gamma,
        verdicts: verdicts("D: p | q", false, true, false, true),
        consistency: all_consistent(&LogicId::SEMANTIC),
    }
}

/// A belief refuting `p`.
pub fn refuted() -> Fixture {
    let gamma: InformationSet = ["!p"].into_iter().map(s).collect();
    Fixture {
        name: "refuted".into(),
        description: "belief in the negation of p".into(),
        gamma,
        verdicts: verdicts("D: p", false, false, true, true),
        consistency: all_consistent(&LogicId::SEMANTIC),
    }
}

/// Believing and disbelieving the same sentence.
pub fn conflict() -> Fixture {
    let gamma: InformationSet = ["p", "D: p"].into_iter().map(s).collect();
    Fixture {
        name: "conflict".into(),
        description: "p is believed and disbelieved".into(),
        gamma,
        verdicts: verdicts("D: true", false, false, true, true),
        consistency: vec![
            consistency(LogicId::Wbd, false, false, true),
            consistency(LogicId::Gbd, false, false, true),
            consistency(LogicId::Bd, false, true, true),
        ],
    }
}

/// Looks a fixture up by name; `lottery` uses `tickets`.
pub fn by_name(name: &str, tickets: usize) -> Result<Option<Fixture>> {
    Ok(Some(match name {
        "lottery" => lottery(tickets)?,
        "murder" => murder(),
        "suspects" => suspects(),
        "agnostic" => agnostic(),
        "dvee" => dvee(),
        "refuted" => refuted(),
        "conflict" => conflict(),
        _ => return Ok(None),
    }))
}

pub fn all() -> Vec<Fixture> {
    NAMES.iter().map(|n| by_name(n, 2).expect("valid").expect("known")).collect()
}
