//! Logics of belief and disbelief: syntax, classical propositional logic,
//! decision procedures, model theory, rule closure and a property-checking
//! harness.
//!
//! ```
//! use disbelief_core::{decide, parse_information_set, parse_sentence, LogicId};
//!
//! let gamma = parse_information_set("D: p | q").unwrap();
//! let query = parse_sentence("D: p").unwrap();
//! assert!(decide(LogicId::Wbd, &gamma, &query).unwrap().entailed);
//! ```

pub mod closure;
pub mod decision;
pub mod error;
pub mod fixtures;
pub mod metatheory;
pub mod pl;
pub mod semantics;
pub mod syntax;

pub use closure::{
    build_universe, close, readings_agree, Closure, ClosureUniverse, Route, RuleId, RuleReading, RuleSet, SentenceMask,
};
pub use decision::{
    consequences, decide, entails, inconsistency_report, InconsistencyReport, LogicId, Rationale, UnknownLogic, Verdict,
};
pub use error::{Error, Result};
pub use metatheory::{generate_information_set, run_suite, PropertyReport, Scale};
pub use pl::{pl_entails, AtomUniverse, Valuation, WorldSet};
pub use semantics::{brute_force_entails, satisfies, Countermodel, Model, ModelBd, ModelGbd, ModelWbd};
pub use syntax::{
    parse_formula, parse_information_set, parse_sentence, render, DocumentError, Formula, InformationSet, ParseError,
    Sentence, SentenceKind,
};
