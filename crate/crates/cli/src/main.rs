//! `disbelief`: command-line front end for the belief/disbelief logics.

use std::io::{self, Read, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use disbelief_core::closure::{self, defining_rules, RuleId, RuleReading, RuleSet};
use disbelief_core::decision::{consequence_mask, inconsistency_report};
use disbelief_core::metatheory::{run_suite_timed, Scale};
use disbelief_core::syntax::DocumentError;
use disbelief_core::{
    decide, fixtures, parse_information_set, parse_sentence, AtomUniverse, ClosureUniverse, InformationSet, LogicId,
    Sentence,
};

use disbelief_cli::output::{formula_list, yes_no, CountermodelRecord, Input, LogicSel, Output, Record};

const EXIT_OK: i32 = 0;
const EXIT_NO: i32 = 1;
const EXIT_ERROR: i32 = 2;

#[derive(Debug, thiserror::Error)]
enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{path}: {source}")]
    Io { path: String, source: io::Error },
    #[error("{}", .0.join("\n"))]
    Parse(Vec<String>),
    #[error(transparent)]
    Core(#[from] disbelief_core::Error),
}

#[derive(Debug, Parser)]
#[command(name = "disbelief", version, about = "Entailment, consistency and closure for logics of belief and disbelief")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Decide whether the input entails a query.
    Check {
        #[command(flatten)]
        common: Common,
        /// The query sentence, e.g. "D: p | q".
        #[arg(long)]
        query: String,
        /// Print a countermodel for non-entailed queries.
        #[arg(long)]
        countermodel: bool,
    },
    /// Report the inconsistency notions of the input.
    Consistency {
        #[command(flatten)]
        common: Common,
    },
    /// List the consequences of the input over its atoms, one sentence per semantic class.
    Consequences {
        #[command(flatten)]
        common: Common,
    },
    /// Close the input under inference rules and compare with the decision procedure.
    Closure {
        #[command(flatten)]
        common: Common,
        /// How premises of the hypothetical rules are read.
        #[arg(long, default_value = "derivability")]
        reading: RuleReading,
        /// Comma-separated rules to use instead of the logic's defining rules.
        #[arg(long, value_delimiter = ',')]
        rules: Vec<RuleId>,
    },
    /// Run the metatheory property suite.
    Meta {
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value = "quick")]
        scale: Scale,
        #[arg(long)]
        json: bool,
    },
    /// Print a built-in information set and check its expected verdicts.
    Examples {
        /// Fixture name; all fixtures when omitted.
        #[arg(value_parser = clap::builder::PossibleValuesParser::new(fixtures::NAMES))]
        name: Option<String>,
        /// Number of lottery tickets.
        #[arg(long, default_value_t = 2)]
        tickets: usize,
        #[arg(long)]
        json: bool,
    },
}

#[derive(Debug, Args)]
struct Common {
    /// Input .bdl files, merged by union; `-` reads standard input.
    files: Vec<PathBuf>,
    #[arg(long, value_enum, default_value = "all")]
    logic: LogicSel,
    /// Size of the atom universe; fresh atoms pad the input's atoms.
    #[arg(long)]
    atoms: Option<usize>,
    /// Emit one JSON document instead of text.
    #[arg(long)]
    json: bool,
}

struct Loaded {
    input: Input,
}

impl Loaded {
    fn gamma(&self) -> &InformationSet {
        &self.input.sentences
    }
}

fn read_source(path: &PathBuf) -> Result<(String, String), CliError> {
    let name = path.display().to_string();
    if name == "-" {
        let mut text = String::new();
        io::stdin()
            .read_to_string(&mut text)
            .map_err(|source| CliError::Io { path: "<stdin>".into(), source })?;
        return Ok(("<stdin>".into(), text));
    }
    let text = std::fs::read_to_string(path).map_err(|source| CliError::Io { path: name.clone(), source })?;
    Ok((name, text))
}

fn located(origin: &str, e: &DocumentError) -> Vec<String> {
    e.errors
        .iter()
        .map(|pe| {
            let text = pe.to_string();
            let msg = text.split_once(": ").map_or(text.as_str(), |(_, m)| m);
            format!("{origin}:{}:{}: {msg}", pe.line, pe.column)
        })
        .collect()
}

fn load(files: &[PathBuf]) -> Result<Loaded, CliError> {
    let stdin = [PathBuf::from("-")];
    let files = if files.is_empty() { &stdin[..] } else { files };
    let mut sentences = InformationSet::new();
    let mut names = Vec::new();
    let mut diagnostics = Vec::new();
    for path in files {
        let (name, text) = read_source(path)?;
        match parse_information_set(&text) {
            Ok(set) => sentences.extend(set.iter().cloned()),
            Err(e) => diagnostics.extend(located(&name, &e)),
        }
        names.push(name);
    }
    if !diagnostics.is_empty() {
        return Err(CliError::Parse(diagnostics));
    }
    Ok(Loaded { input: Input { files: names, sentences } })
}

fn parse_query(text: &str) -> Result<Sentence, CliError> {
    parse_sentence(text).map_err(|e| CliError::Parse(located("--query", &DocumentError { errors: vec![e] })))
}

/// atoms(Γ) padded with fresh atoms to `atoms`.
fn universe(gamma: &InformationSet, atoms: Option<usize>) -> Result<AtomUniverse, CliError> {
    let base = AtomUniverse::new(gamma.atoms())?;
    match atoms {
        None => Ok(base),
        Some(n) if n < base.len() => Err(CliError::Usage(format!(
            "--atoms {n} is smaller than the {} atoms of the input ({})",
            base.len(),
            base.atoms().join(", ")
        ))),
        Some(n) => Ok(base.padded_to(n)?),
    }
}

fn universe_names(u: &AtomUniverse) -> Vec<String> {
    u.atoms().to_vec()
}

struct Outcome {
    doc: Output,
    text: String,
}

fn cmd_check(common: &Common, query: &str, countermodel: bool) -> Result<Outcome, CliError> {
    let loaded = load(&common.files)?;
    let query = parse_query(query)?;
    if let Some(n) = common.atoms {
        universe(&loaded.gamma().with(query.clone()), Some(n))?;
    }
    let mut doc = Output::new("check");
    doc.logic = Some(common.logic);
    let mut text = String::new();
    let mut all_entailed = true;
    let labelled = common.logic == LogicSel::All;
    for logic in common.logic.logics() {
        let v = decide(logic, loaded.gamma(), &query)?;
        all_entailed &= v.entailed;
        let cm = if countermodel { v.witness.as_ref().map(CountermodelRecord::from) } else { None };
        let verdict = if v.entailed { "entailed" } else { "not entailed" };
        if labelled {
            text.push_str(&format!("{}: {verdict}\n", logic.name().to_lowercase()));
        } else {
            text.push_str(&format!("{verdict}\n"));
        }
        text.push_str(&format!("  rationale: {}\n", v.rationale));
        if countermodel {
            match &v.witness {
                Some(w) => text.push_str(&format!("  countermodel: {w}\n")),
                None if !v.entailed => text.push_str("  countermodel: none (no model theory)\n"),
                None => {}
            }
        }
        if !labelled {
            doc.countermodel = cm.clone();
        }
        doc.verdicts.push(Record::Entailment {
            logic,
            query: query.clone(),
            entailed: v.entailed,
            rationale: v.rationale,
            countermodel: cm,
        });
    }
    doc.input = Some(loaded.input);
    doc.exit = if all_entailed { EXIT_OK } else { EXIT_NO };
    Ok(Outcome { doc, text })
}

fn cmd_consistency(common: &Common) -> Result<Outcome, CliError> {
    let loaded = load(&common.files)?;
    if common.atoms.is_some() {
        universe(loaded.gamma(), common.atoms)?;
    }
    let mut doc = Output::new("consistency");
    doc.logic = Some(common.logic);
    let mut text = String::new();
    let mut flagged = false;
    for logic in common.logic.logics() {
        let r = inconsistency_report(logic, loaded.gamma())?;
        flagged |= r.any();
        let status = if r.any() { "inconsistent" } else { "consistent" };
        text.push_str(&format!("{}: {status}\n", logic.name().to_lowercase()));
        text.push_str(&format!("  b-inconsistent: {}\n", yes_no(r.b_inconsistent)));
        text.push_str(&format!("  d-inconsistent: {}\n", yes_no(r.d_inconsistent)));
        text.push_str(&format!("  d-inconsistent (disbeliefs only): {}\n", yes_no(r.d_inconsistent_literal)));
        text.push_str(&format!("  combined-inconsistent: {}\n", yes_no(r.combined_inconsistent)));
        if let Some(w) = &r.witness_formula {
            text.push_str(&format!("  witness: B: {w} and D: {w}\n"));
        }
        doc.verdicts.push(Record::Consistency { report: r });
    }
    doc.input = Some(loaded.input);
    doc.exit = if flagged { EXIT_NO } else { EXIT_OK };
    Ok(Outcome { doc, text })
}

fn cmd_consequences(common: &Common) -> Result<Outcome, CliError> {
    let loaded = load(&common.files)?;
    let u = universe(loaded.gamma(), common.atoms)?;
    let mut doc = Output::new("consequences");
    doc.logic = Some(common.logic);
    let mut text = String::new();
    for logic in common.logic.logics() {
        let sentences: Vec<Sentence> = disbelief_core::consequences(logic, loaded.gamma(), &u)?.into_iter().collect();
        text.push_str(&format!(
            "{} consequences over {u} ({} sentences):\n",
            logic.name().to_lowercase(),
            sentences.len()
        ));
        for s in &sentences {
            text.push_str(&format!("  {s}\n"));
        }
        doc.verdicts.push(Record::Consequences { logic, universe: universe_names(&u), sentences });
    }
    doc.input = Some(loaded.input);
    Ok(Outcome { doc, text })
}

fn cmd_closure(common: &Common, reading: RuleReading, rules: &[RuleId]) -> Result<Outcome, CliError> {
    let loaded = load(&common.files)?;
    let u = universe(loaded.gamma(), common.atoms)?;
    let cu = ClosureUniverse::over(&u)?;
    let gamma = loaded.gamma();
    let mut doc = Output::new("closure");
    doc.logic = Some(common.logic);
    let mut text = String::new();

    let runs: Vec<(Option<LogicId>, RuleSet)> = if rules.is_empty() {
        common.logic.logics().into_iter().map(|l| (Some(l), defining_rules(l))).collect()
    } else {
        let logic = match common.logic {
            LogicSel::All => None,
            one => one.logics().first().copied(),
        };
        vec![(logic, rules.iter().copied().collect())]
    };

    for (logic, rules) in runs {
        let c = closure::close(&rules, reading, gamma, &cu)?;
        let route = closure::Route::Closure { rules: rules.clone(), reading };
        let (missing, extra) = match logic {
            Some(l) => {
                let decided = consequence_mask(l, gamma, &u)?;
                (decided.difference(c.derived), c.derived.difference(decided))
            }
            None => Default::default(),
        };
        let to_vec = |m: closure::SentenceMask| m.sentences(cu.forms()).collect::<Vec<_>>();
        let (missing, extra) = (to_vec(missing), to_vec(extra));
        let sentences: Vec<Sentence> = c.sentences(&cu).into_iter().collect();
        let label = logic.map_or_else(|| "rules".to_string(), |l| l.name().to_lowercase());
        text.push_str(&format!(
            "{label}: {route} over {u}, {} sentences after {} round{}:\n",
            sentences.len(),
            c.rounds,
            if c.rounds == 1 { "" } else { "s" }
        ));
        for s in &sentences {
            text.push_str(&format!("  {s}\n"));
        }
        if let Some(l) = logic {
            if !missing.is_empty() {
                let note = format!(
                    "warning: {route} misses {} {} consequence(s): {}",
                    missing.len(),
                    l.name(),
                    formula_list(&missing)
                );
                doc.notes.push(note);
            }
            if !extra.is_empty() {
                let note = format!(
                    "warning: {route} derives {} sentence(s) that are not {} consequences: {}",
                    extra.len(),
                    l.name(),
                    formula_list(&extra)
                );
                doc.notes.push(note);
            }
        }
        doc.verdicts.push(Record::Closure {
            logic,
            rules: rules.into_iter().collect(),
            reading,
            universe: universe_names(&u),
            rounds: c.rounds,
            sentences,
            missing,
            extra,
        });
    }
    doc.input = Some(loaded.input);
    Ok(Outcome { doc, text })
}

fn cmd_meta(seed: u64, scale: Scale) -> Outcome {
    let (report, timings) = run_suite_timed(seed, scale);
    for (id, secs) in &timings.cases {
        eprintln!("timing: {id} {secs:.3}s");
    }
    eprintln!("timing: total {:.3}s", timings.total_seconds);
    let mut doc = Output::new("meta");
    doc.exit = if report.passed { EXIT_OK } else { EXIT_NO };
    let text = report.to_text();
    doc.report = Some(report);
    Outcome { doc, text }
}

fn cmd_examples(name: Option<&str>, tickets: usize) -> Result<Outcome, CliError> {
    let names: Vec<&str> = match name {
        Some(n) => vec![n],
        None => fixtures::NAMES.to_vec(),
    };
    let mut doc = Output::new("examples");
    let mut text = String::new();
    let mut passed = true;
    for n in &names {
        let f = fixtures::by_name(n, tickets)?.ok_or_else(|| CliError::Usage(format!("unknown example `{n}`")))?;
        let mismatches: Vec<String> = f.check()?.into_iter().map(|m| m.detail).collect();
        passed &= mismatches.is_empty();
        if names.len() > 1 {
            text.push_str(&format!("## {}\n", f.name));
        }
        text.push_str(&f.to_bdl());
        for e in &f.verdicts {
            let v = decide(e.logic, &f.gamma, &e.query)?;
            let status = if v.entailed == e.entailed { "ok" } else { "MISMATCH" };
            let verdict = if e.entailed { "entailed" } else { "not entailed" };
            text.push_str(&format!("# expect {} {}: {verdict} ({status})\n", e.logic.name().to_lowercase(), e.query));
            doc.verdicts.push(Record::Entailment {
                logic: e.logic,
                query: e.query.clone(),
                entailed: v.entailed,
                rationale: v.rationale,
                countermodel: None,
            });
        }
        for e in &f.consistency {
            let r = inconsistency_report(e.logic, &f.gamma)?;
            let got = (r.b_inconsistent, r.d_inconsistent, r.combined_inconsistent);
            let status =
                if got == (e.b_inconsistent, e.d_inconsistent, e.combined_inconsistent) { "ok" } else { "MISMATCH" };
            let flags: Vec<&str> = [
                (e.b_inconsistent, "b-inconsistent"),
                (e.d_inconsistent, "d-inconsistent"),
                (e.combined_inconsistent, "combined-inconsistent"),
            ]
            .into_iter()
            .filter_map(|(on, label)| on.then_some(label))
            .collect();
            let summary = if flags.is_empty() { "consistent".to_string() } else { flags.join(", ") };
            text.push_str(&format!("# expect {}: {summary} ({status})\n", e.logic.name().to_lowercase()));
            doc.verdicts.push(Record::Consistency { report: r });
        }
        doc.verdicts.push(Record::Fixture {
            name: f.name.clone(),
            description: f.description.clone(),
            passed: mismatches.is_empty(),
            mismatches,
        });
        if names.len() == 1 {
            doc.input = Some(Input { files: vec![], sentences: f.gamma.clone() });
        }
    }
    doc.exit = if passed { EXIT_OK } else { EXIT_NO };
    Ok(Outcome { doc, text })
}

fn run(cli: Cli) -> Result<(Outcome, bool), CliError> {
    Ok(match cli.command {
        Command::Check { common, query, countermodel } => (cmd_check(&common, &query, countermodel)?, common.json),
        Command::Consistency { common } => (cmd_consistency(&common)?, common.json),
        Command::Consequences { common } => (cmd_consequences(&common)?, common.json),
        Command::Closure { common, reading, rules } => (cmd_closure(&common, reading, &rules)?, common.json),
        Command::Meta { seed, scale, json } => (cmd_meta(seed, scale), json),
        Command::Examples { name, tickets, json } => (cmd_examples(name.as_deref(), tickets)?, json),
    })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok((outcome, json)) => {
            let mut stdout = io::stdout().lock();
            let written = if json {
                let doc = serde_json::to_string_pretty(&outcome.doc).expect("output serializes");
                writeln!(stdout, "{doc}")
            } else {
                for note in &outcome.doc.notes {
                    eprintln!("{note}");
                }
                write!(stdout, "{}", outcome.text)
            };
            if written.is_err() {
                return ExitCode::from(EXIT_ERROR as u8);
            }
            ExitCode::from(outcome.doc.exit as u8)
        }
        Err(CliError::Parse(lines)) => {
            for line in lines {
                eprintln!("{line}");
            }
            ExitCode::from(EXIT_ERROR as u8)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(EXIT_ERROR as u8)
        }
    }
}
