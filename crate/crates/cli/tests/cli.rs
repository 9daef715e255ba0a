use std::path::Path;
use std::process::{Command, Output as ProcessOutput};

use disbelief_cli::output::{Output, Record};
use disbelief_core::LogicId;
use tempfile::TempDir;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_disbelief"))
}

fn workspace(files: &[(&str, &str)]) -> TempDir {
    let dir = tempfile::tempdir().unwrap();
    for (name, text) in files {
        std::fs::write(dir.path().join(name), text).unwrap();
    }
    dir
}

fn run(dir: &Path, args: &[&str]) -> ProcessOutput {
    bin().args(args).current_dir(dir).output().unwrap()
}

fn stdout(out: &ProcessOutput) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn stderr(out: &ProcessOutput) -> String {
    String::from_utf8(out.stderr.clone()).unwrap()
}

fn json(dir: &Path, args: &[&str]) -> (i32, Output) {
    let out = bin().args(args).arg("--json").current_dir(dir).output().unwrap();
    let text = stdout(&out);
    let doc: Output = serde_json::from_str(&text).unwrap_or_else(|e| panic!("{e}\n{text}"));
    assert_eq!(serde_json::to_string_pretty(&doc).unwrap() + "\n", text, "re-emitted JSON differs");
    (out.status.code().unwrap(), doc)
}

const MURDER: &str = "s\nk -> m\nD: s & m\n";
const AGNOSTIC: &str = "D: p\nD: !p\n";
const TWO_DIS: &str = "D: p\nD: q\n";
const LOTTERY: &str = "D: t1\nD: t2\nB: (t1 & !t2) | (!t1 & t2)\n";

#[test]
fn murder_is_entailed_in_bd_citing_the_disbelief() {
    let dir = workspace(&[("murder.bdl", MURDER)]);
    let out = run(dir.path(), &["check", "--logic", "bd", "--query", "D: k", "murder.bdl"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.starts_with("entailed\n"), "{text}");
    assert!(text.contains("D: s & m"), "{text}");

    let (code, doc) = json(dir.path(), &["check", "--logic", "bd", "--query", "D: k", "murder.bdl"]);
    assert_eq!(code, 0);
    match &doc.verdicts[..] {
        [Record::Entailment { entailed: true, rationale, .. }] => {
            assert_eq!(serde_json::to_value(rationale).unwrap()["source"], "s & m");
        }
        other => panic!("{other:?}"),
    }
}

#[test]
fn agnosticism_entails_top_bar_in_gbd() {
    let dir = workspace(&[("agnostic.bdl", AGNOSTIC)]);
    let out = run(dir.path(), &["check", "--logic", "gbd", "--query", "D: true", "agnostic.bdl"]);
    assert_eq!(out.status.code(), Some(0));
    let out = run(dir.path(), &["check", "--logic", "bd", "--query", "D: true", "agnostic.bdl"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stdout(&out).starts_with("not entailed\n"));
}

#[test]
fn two_disbeliefs_fan_out_per_logic() {
    let dir = workspace(&[("two-dis.bdl", TWO_DIS)]);
    let out = run(dir.path(), &["check", "--logic", "all", "--query", "D: p|q", "two-dis.bdl"]);
    assert_eq!(out.status.code(), Some(1));
    let text = stdout(&out);
    for line in ["wbd: not entailed", "gbd: entailed", "bd: not entailed", "bn: entailed"] {
        assert!(text.lines().any(|l| l == line), "{line} missing from\n{text}");
    }
}

#[test]
fn logic_all_equals_individual_checks() {
    let dir = workspace(&[("murder.bdl", MURDER), ("two-dis.bdl", TWO_DIS), ("lottery.bdl", LOTTERY)]);
    for (file, query) in [("murder.bdl", "D: k"), ("two-dis.bdl", "D: p | q"), ("lottery.bdl", "D: t1 | t2"), ("murder.bdl", "m")] {
        let (_, all) = json(dir.path(), &["check", "--logic", "all", "--query", query, "--countermodel", file]);
        assert_eq!(all.verdicts.len(), 4);
        for (logic, record) in LogicId::ALL.iter().zip(&all.verdicts) {
            let name = logic.name().to_lowercase();
            let (code, one) = json(dir.path(), &["check", "--logic", &name, "--query", query, "--countermodel", file]);
            assert_eq!(one.verdicts, vec![record.clone()], "{file} {query} {name}");
            let Record::Entailment { entailed, countermodel, .. } = record else { panic!() };
            assert_eq!(code, if *entailed { 0 } else { 1 });
            assert_eq!(one.countermodel, countermodel.clone());
        }
    }
}

#[test]
fn countermodel_is_printed_on_request() {
    let dir = workspace(&[("two-dis.bdl", TWO_DIS)]);
    let out = run(dir.path(), &["check", "--logic", "bd", "--query", "D: p | q", "--countermodel", "two-dis.bdl"]);
    let text = stdout(&out);
    assert!(text.contains("countermodel: M = {"), "{text}");
    assert!(text.contains("where v0 = {p:false, q:false}"), "{text}");
    let (_, doc) = json(dir.path(), &["check", "--logic", "bd", "--query", "D: p | q", "--countermodel", "two-dis.bdl"]);
    let cm = doc.countermodel.expect("countermodel");
    assert_eq!(cm.universe, vec!["p", "q"]);
    assert!(!cm.sources.is_empty());
}

#[test]
fn lottery_consistency_depends_on_the_logic() {
    let dir = workspace(&[("lottery.bdl", LOTTERY), ("bp.bdl", "B: p\nD: p\n")]);
    let out = run(dir.path(), &["consistency", "--logic", "bd", "lottery.bdl"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).starts_with("bd: consistent\n"));

    let (code, doc) = json(dir.path(), &["consistency", "--logic", "gbd", "lottery.bdl"]);
    assert_eq!(code, 1);
    let Record::Consistency { report } = &doc.verdicts[0] else { panic!() };
    assert!(report.combined_inconsistent && !report.b_inconsistent);

    let (code, doc) = json(dir.path(), &["consistency", "--logic", "bd", "bp.bdl"]);
    assert_eq!(code, 1);
    let Record::Consistency { report } = &doc.verdicts[0] else { panic!() };
    assert!(report.combined_inconsistent && !report.b_inconsistent);
}

#[test]
fn membership_closure_warns_about_the_missing_disbelief() {
    let dir = workspace(&[("negp.bdl", "!p\n")]);
    let args = ["closure", "--logic", "bd", "--reading", "membership", "--atoms", "1", "negp.bdl"];
    let out = run(dir.path(), &args);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.lines().any(|l| l.trim() == "B: !p"), "{text}");
    assert!(!text.lines().any(|l| l.trim() == "D: p"), "{text}");
    assert!(stderr(&out).contains("warning:") && stderr(&out).contains("D: p"), "{}", stderr(&out));

    let (_, doc) = json(dir.path(), &args);
    let Record::Closure { missing, extra, .. } = &doc.verdicts[0] else { panic!() };
    assert_eq!(missing.iter().map(ToString::to_string).collect::<Vec<_>>(), vec!["D: p"]);
    assert!(extra.is_empty());
    assert_eq!(doc.notes.len(), 1);

    let out = run(dir.path(), &["closure", "--logic", "bd", "--atoms", "1", "negp.bdl"]);
    assert!(stdout(&out).lines().any(|l| l.trim() == "D: p"));
    assert!(stderr(&out).is_empty(), "{}", stderr(&out));
}

#[test]
fn explicit_rules_replace_the_defining_rules() {
    let dir = workspace(&[("two-dis.bdl", TWO_DIS)]);
    let (code, doc) = json(dir.path(), &["closure", "--rules", "b,dbot,gd", "two-dis.bdl"]);
    assert_eq!(code, 0);
    let Record::Closure { logic, sentences, .. } = &doc.verdicts[0] else { panic!() };
    assert_eq!(*logic, None);
    let (_, gbd) = json(dir.path(), &["closure", "--logic", "gbd", "two-dis.bdl"]);
    let Record::Closure { sentences: expected, missing, .. } = &gbd.verdicts[0] else { panic!() };
    assert_eq!(sentences, expected);
    assert!(missing.is_empty());
    let out = run(dir.path(), &["closure", "--rules", "b,nope", "two-dis.bdl"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn consequences_list_one_sentence_per_class() {
    let dir = workspace(&[("negp.bdl", "!p\n")]);
    let (code, doc) = json(dir.path(), &["consequences", "--logic", "bd", "negp.bdl"]);
    assert_eq!(code, 0);
    let Record::Consequences { sentences, universe, .. } = &doc.verdicts[0] else { panic!() };
    assert_eq!(universe, &vec!["p".to_string()]);
    let mut texts: Vec<String> = sentences.iter().map(ToString::to_string).collect();
    texts.sort();
    assert_eq!(texts, vec!["B: !p", "B: true", "D: false", "D: p"]);
}

#[test]
fn examples_emit_their_information_sets() {
    let dir = workspace(&[]);
    let out = run(dir.path(), &["examples", "lottery", "--tickets", "3"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    for line in ["D: t1", "D: t2", "D: t3", "# expect bd: consistent (ok)"] {
        assert!(text.lines().any(|l| l == line), "{line} missing from\n{text}");
    }
    let gamma = disbelief_core::parse_information_set(&text).unwrap();
    assert_eq!(gamma.len(), 4);

    for name in disbelief_core::fixtures::NAMES {
        let (code, doc) = json(dir.path(), &["examples", name]);
        assert_eq!(code, 0, "{name}");
        assert!(matches!(doc.verdicts.last(), Some(Record::Fixture { passed: true, .. })));
    }
    assert_eq!(run(dir.path(), &["examples", "lottery", "--tickets", "1"]).status.code(), Some(2));
    assert_eq!(run(dir.path(), &["examples", "nonesuch"]).status.code(), Some(2));
}

#[test]
fn files_merge_and_stdin_is_read() {
    let dir = workspace(&[("a.bdl", "s\n"), ("b.bdl", "k -> m\nD: s & m\n")]);
    let out = run(dir.path(), &["check", "--logic", "bd", "--query", "D: k", "a.bdl", "b.bdl"]);
    assert_eq!(out.status.code(), Some(0));

    use std::io::Write;
    let mut child = bin()
        .args(["check", "--logic", "bd", "--query", "D: k", "-"])
        .stdin(std::process::Stdio::piped())
        .stdout(std::process::Stdio::piped())
        .spawn()
        .unwrap();
    child.stdin.take().unwrap().write_all(MURDER.as_bytes()).unwrap();
    assert_eq!(child.wait_with_output().unwrap().status.code(), Some(0));
}

#[test]
fn input_errors_exit_2_with_located_diagnostics() {
    let dir = workspace(&[("bad.bdl", "p\np &\nD: (q\n"), ("ok.bdl", "p\n"), ("wide.bdl", "p & q & r\n")]);
    let out = run(dir.path(), &["check", "--query", "p", "bad.bdl"]);
    assert_eq!(out.status.code(), Some(2));
    let err = stderr(&out);
    assert!(err.lines().any(|l| l.starts_with("bad.bdl:2:4: ")), "{err}");
    assert!(err.lines().any(|l| l.starts_with("bad.bdl:3:6: ")), "{err}");
    assert!(stdout(&out).is_empty());

    let out = run(dir.path(), &["check", "--query", "D: (", "ok.bdl"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).starts_with("--query:1:"), "{}", stderr(&out));

    for args in [
        &["check", "ok.bdl"][..],
        &["check", "--query", "p", "missing.bdl"],
        &["consistency", "--logic", "xyz", "ok.bdl"],
        &["consequences", "wide.bdl"],
        &["closure", "--atoms", "0", "ok.bdl"],
        &["meta", "--scale", "huge"],
    ] {
        assert_eq!(run(dir.path(), args).status.code(), Some(2), "{args:?}");
    }
}

#[test]
fn atoms_pad_the_universe() {
    let dir = workspace(&[("ok.bdl", "p\n")]);
    let (_, doc) = json(dir.path(), &["consequences", "--logic", "wbd", "--atoms", "2", "ok.bdl"]);
    let Record::Consequences { universe, sentences, .. } = &doc.verdicts[0] else { panic!() };
    assert_eq!(universe.len(), 2);
    assert_eq!(universe[0], "p");
    // four beliefs entailed by p, the contradiction disbelieved
    assert_eq!(sentences.len(), 5);
}

#[test]
fn meta_quick_passes_and_timings_stay_on_stderr() {
    let dir = workspace(&[]);
    let out = run(dir.path(), &["meta", "--seed", "0", "--scale", "quick", "--json"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    let doc: Output = serde_json::from_str(&text).unwrap();
    assert_eq!(serde_json::to_string_pretty(&doc).unwrap() + "\n", text);
    let report = doc.report.expect("report");
    assert!(report.passed);
    assert!(report.case("Prop9-Bprime").is_some());
    assert!(!text.contains("timing"));
    assert!(stderr(&out).contains("timing: total"));
}
