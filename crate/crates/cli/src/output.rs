//! The structured (JSON) output document.

use clap::ValueEnum;
use disbelief_core::closure::{RuleId, RuleReading};
use disbelief_core::decision::InconsistencyReport;
use disbelief_core::{Countermodel, InformationSet, LogicId, PropertyReport, Rationale, Sentence};
use serde::{Deserialize, Serialize};

pub const SCHEMA: u32 = 1;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum LogicSel {
    Wbd,
    Gbd,
    Bd,
    Bn,
    All,
}

impl LogicSel {
    pub fn logics(self) -> Vec<LogicId> {
        match self {
            LogicSel::Wbd => vec![LogicId::Wbd],
            LogicSel::Gbd => vec![LogicId::Gbd],
            LogicSel::Bd => vec![LogicId::Bd],
            LogicSel::Bn => vec![LogicId::Bn],
            LogicSel::All => LogicId::ALL.to_vec(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Input {
    pub files: Vec<String>,
    pub sentences: InformationSet,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CountermodelRecord {
    pub universe: Vec<String>,
    pub model: String,
    pub agent_worlds: Vec<usize>,
    pub sources: Vec<Vec<usize>>,
    pub legend: String,
}

impl From<&Countermodel> for CountermodelRecord {
    fn from(cm: &Countermodel) -> Self {
        CountermodelRecord {
            universe: cm.universe.atoms().to_vec(),
            model: cm.model.to_string(),
            agent_worlds: cm.model.agent_worlds().iter().collect(),
            sources: cm.model.sources().into_iter().map(|n| n.iter().collect()).collect(),
            legend: cm.legend(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Record {
    Entailment {
        logic: LogicId,
        query: Sentence,
        entailed: bool,
        rationale: Rationale,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        countermodel: Option<CountermodelRecord>,
    },
    Consistency {
        #[serde(flatten)]
        report: InconsistencyReport,
    },
    Consequences {
        logic: LogicId,
        universe: Vec<String>,
        sentences: Vec<Sentence>,
    },
    Closure {
        #[serde(default, skip_serializing_if = "Option::is_none")]
        logic: Option<LogicId>,
        rules: Vec<RuleId>,
        reading: RuleReading,
        universe: Vec<String>,
        rounds: usize,
        sentences: Vec<Sentence>,
        /// consequences of `logic` the closure does not derive
        #[serde(default)]
        missing: Vec<Sentence>,
        /// derived sentences that are not consequences of `logic`
        #[serde(default)]
        extra: Vec<Sentence>,
    },
    Fixture {
        name: String,
        description: String,
        passed: bool,
        #[serde(default)]
        mismatches: Vec<String>,
    },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Output {
    pub schema: u32,
    pub command: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub logic: Option<LogicSel>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub input: Option<Input>,
    #[serde(default)]
    pub verdicts: Vec<Record>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub countermodel: Option<CountermodelRecord>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub report: Option<PropertyReport>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
    pub exit: i32,
}

impl Output {
    pub fn new(command: &str) -> Output {
        Output {
            schema: SCHEMA,
            command: command.to_string(),
            logic: None,
            input: None,
            verdicts: vec![],
            countermodel: None,
            report: None,
            notes: vec![],
            exit: 0,
        }
    }
}

pub fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

pub fn formula_list(sentences: &[Sentence]) -> String {
    sentences.iter().map(ToString::to_string).collect::<Vec<_>>().join(", ")
}

