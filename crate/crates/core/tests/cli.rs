use std::fs;
use std::process::Command;

use eyvp::automata::Fsa;
use eyvp::cli::{run, TranslationRecord};
use eyvp::grammar::{Grammar, ParseTree, Terminal};

struct Output {
    code: i32,
    stdout: String,
    stderr: String,
}

fn eyvp(args: &[&str]) -> Output {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("eyvp").chain(args.iter().copied());
    let code = run(argv, &mut out, &mut err);
    Output {
        code,
        stdout: String::from_utf8(out).unwrap(),
        stderr: String::from_utf8(err).unwrap(),
    }
}

#[test]
fn translate_text_channels() {
    let o = eyvp(&["translate", "--strip-diacritics", "eat cold food"]);
    assert_eq!(o.code, 0, "{}", o.stderr);
    assert!(o.stdout.contains("rule: je ounje tutu\n"), "{}", o.stdout);
    assert!(o.stdout.contains("w4w: je tutu ounje\n"), "{}", o.stdout);

    let o = eyvp(&["translate", "--strip-diacritics", "Eat cold food"]);
    assert!(o.stdout.contains("rule: Je ounje tutu\n"));
}

#[test]
fn translate_empty_is_usage_error() {
    let o = eyvp(&["translate", ""]);
    assert_eq!(o.code, 1);
    assert!(o.stderr.contains("empty input"), "{}", o.stderr);
    let o = eyvp(&["translate"]);
    assert_eq!(o.code, 1);
}

#[test]
fn translate_show_tree() {
    let o = eyvp(&["translate", "--show-tree", "eat"]);
    assert_eq!(o.code, 0);
    assert!(o.stdout.contains("tree: (VP (V eat))\n"), "{}", o.stdout);
}

#[test]
fn translate_failure_exits_2_with_w4w() {
    let o = eyvp(&["translate", "the eat"]);
    assert_eq!(o.code, 2);
    assert!(o.stdout.contains("w4w: nàà jẹ\n"));
    assert!(o.stdout.contains("error: no derivation"), "{}", o.stdout);
}

#[test]
fn w4w_only() {
    let o = eyvp(&["translate", "--w4w-only", "the eat"]);
    assert_eq!(o.code, 0);
    assert_eq!(o.stdout, "w4w: nàà jẹ\n");
}

#[test]
fn json_output_roundtrips() {
    let o = eyvp(&[
        "translate",
        "--format",
        "json",
        "--show-tree",
        "Gave mother the cold water",
    ]);
    assert_eq!(o.code, 0);
    let line = o.stdout.trim_end();
    let record: TranslationRecord = serde_json::from_str(line).unwrap();
    assert_eq!(serde_json::to_string(&record).unwrap(), line);
    assert_eq!(record.rule, ["Fún", "ìyá", "ni", "omi", "tútù", "nàà"]);
    assert_eq!(record.tags[2], Terminal::Particle);
    let value: serde_json::Value = serde_json::from_str(line).unwrap();
    for key in ["source", "w4w", "rule", "unknowns", "tags", "tree"] {
        assert!(value.get(key).is_some(), "missing {key}");
    }
    // The bracketed tree resolves back to the same parse.
    let tree =
        ParseTree::from_bracketed(record.tree.as_deref().unwrap(), &Grammar::source()).unwrap();
    let direct = eyvp::Translator::builtin()
        .translate("Gave mother the cold water")
        .unwrap();
    assert_eq!(tree, direct.source_tree);
    let target =
        ParseTree::from_bracketed(record.target_tree.as_deref().unwrap(), &Grammar::target())
            .unwrap();
    // Leaf indices are renumbered in reading order, so compare renderings.
    assert_eq!(target.to_string(), direct.target_tree.to_string());
}

#[test]
fn batch_keeps_order_and_count() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("batch.txt");
    fs::write(
        &path,
        "eat cold food\nthe eat\n\neat quinoa\ngo to the small house\n",
    )
    .unwrap();
    let o = eyvp(&[
        "translate",
        "--format",
        "json",
        "--batch",
        path.to_str().unwrap(),
    ]);
    assert_eq!(o.code, 2);
    let records: Vec<TranslationRecord> = o
        .stdout
        .lines()
        .map(|l| serde_json::from_str(l).unwrap())
        .collect();
    assert_eq!(records.len(), 5);
    assert_eq!(records[0].source, "eat cold food");
    assert!(records[0].error.is_none());
    assert!(records[1].error.is_some());
    assert!(records[2].error.is_some());
    assert_eq!(records[3].unknowns[0].surface, "quinoa");
    assert_eq!(records[3].w4w, ["jẹ", "quinoa"]);
    assert!(records[4].error.is_none());

    fs::write(&path, "eat\ncook the big meat\n").unwrap();
    let o = eyvp(&["translate", "--batch", path.to_str().unwrap()]);
    assert_eq!(o.code, 0);
    assert_eq!(o.stdout.matches("rule: ").count(), 2);
}

#[test]
fn bad_files_exit_1() {
    let o = eyvp(&["translate", "--batch", "/nonexistent/batch.txt"]);
    assert_eq!(o.code, 1);
    let dir = tempfile::tempdir().unwrap();
    let lex = dir.path().join("lex.tsv");
    fs::write(&lex, "eat\tverb\tjẹ\nbroken line\n").unwrap();
    let o = eyvp(&["--lexicon", lex.to_str().unwrap(), "translate", "eat"]);
    assert_eq!(o.code, 1);
    assert!(o.stderr.contains("line 2"), "{}", o.stderr);
}

#[test]
fn custom_lexicon() {
    let dir = tempfile::tempdir().unwrap();
    let lex = dir.path().join("lex.tsv");
    fs::write(&lex, "see\tverb\trí\nlion\tnoun\tkìnnìún\na\tdet\tkan\n").unwrap();
    let o = eyvp(&[
        "translate",
        "--lexicon",
        lex.to_str().unwrap(),
        "see a lion",
    ]);
    assert_eq!(o.code, 0, "{}", o.stderr);
    assert!(o.stdout.contains("rule: rí kìnnìún kan\n"));
}

#[test]
fn eval_builtin_gold() {
    let o = eyvp(&["eval"]);
    assert_eq!(o.code, 0, "{}", o.stdout);
    assert_eq!(o.stdout.matches("PASS\t").count(), 7);
    assert_eq!(o.stdout.matches("EXCLUDED\t").count(), 2);
    assert!(o.stdout.contains("accuracy: 7/7 = 1.000 (2 excluded)"));
}

#[test]
fn eval_edge_cases() {
    let dir = tempfile::tempdir().unwrap();
    let gold = dir.path().join("gold.tsv");

    fs::write(&gold, "").unwrap();
    let o = eyvp(&["eval", gold.to_str().unwrap()]);
    assert_eq!(o.code, 0);
    assert!(o.stdout.contains("n/a"));

    fs::write(&gold, "eat\twrong\n").unwrap();
    let o = eyvp(&["eval", gold.to_str().unwrap()]);
    assert_ne!(o.code, 0);
    assert!(o.stdout.starts_with("FAIL\teat"));

    fs::write(&gold, "eat\tje\nx\ty\tz\n").unwrap();
    let o = eyvp(&["eval", gold.to_str().unwrap()]);
    assert_eq!(o.code, 1);
    assert!(o.stderr.contains("line 2"));

    fs::write(&gold, "eat\tje\n").unwrap();
    assert_eq!(eyvp(&["eval", gold.to_str().unwrap()]).code, 0);
    assert_eq!(
        eyvp(&["eval", "--strict-diacritics", gold.to_str().unwrap()]).code,
        2
    );
}

#[test]
fn fsa_tables() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("source.fsa");
    let o = eyvp(&["fsa", "--source", "--output", path.to_str().unwrap()]);
    assert_eq!(o.code, 0);
    assert_eq!(o.stdout, "states: 9\ntransitions: 18\n");
    let table = fs::read_to_string(&path).unwrap();
    assert_eq!(
        Fsa::parse_table(&table).unwrap(),
        Fsa::compile(&Grammar::source())
    );

    let o = eyvp(&["fsa", "--target"]);
    assert_eq!(o.code, 0);
    assert!(o
        .stdout
        .lines()
        .any(|l| l.split('\t').nth(1) == Some("Prt")));
    assert_eq!(o.stderr, "states: 9\ntransitions: 16\n");

    let o = eyvp(&["fsa", "--source", "--output", "/nonexistent/dir/x.fsa"]);
    assert_eq!(o.code, 1);
    assert_eq!(eyvp(&["fsa"]).code, 1);
}

#[test]
fn grammar_dump() {
    let o = eyvp(&["grammar-dump", "--target"]);
    assert_eq!(o.code, 0);
    assert!(o.stdout.contains("start = VP"));
    assert!(o.stdout.contains("NP -> N ADJ DET"));

    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("g.txt");
    fs::write(&path, "VP -> V NP\nNP -> NP ADJ | N\n").unwrap();
    let o = eyvp(&["grammar-dump", "--file", path.to_str().unwrap()]);
    assert_eq!(o.code, 1);
    assert!(o.stderr.contains("recursive"), "{}", o.stderr);
}

#[test]
fn user_grammar_without_transfer_rule() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("g.txt");
    fs::write(&path, "VP -> V N N\n").unwrap();
    let o = eyvp(&[
        "translate",
        "--grammar",
        path.to_str().unwrap(),
        "gave mother water",
    ]);
    assert_eq!(o.code, 2);
    assert!(
        o.stdout
            .contains("no transfer rule for production VP -> V N N"),
        "{}",
        o.stdout
    );
}

#[test]
fn binary_smoke() {
    let out = Command::new(env!("CARGO_BIN_EXE_eyvp"))
        .args(["translate", "--strip-diacritics", "killed a boy"])
        .output()
        .unwrap();
    assert!(out.status.success());
    assert!(String::from_utf8_lossy(&out.stdout).contains("rule: pa omodokunrin kan"));
    let out = Command::new(env!("CARGO_BIN_EXE_eyvp"))
        .args(["translate", ""])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(1));
}
