//! Command-line front end. [`run`] does all the work so the binary stays a
//! one-liner and commands can be driven from tests.
//!
//! Exit codes: 0 success, 1 usage or data error, 2 one or more phrases
//! failed to translate (or, for `eval`, mismatched the gold table).

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};

use crate::automata::Fsa;
use crate::eval::{evaluate, load_gold, BUILTIN_GOLD};
use crate::grammar::{Grammar, Terminal};
use crate::lexicon::Lexicon;
use crate::text;
use crate::transfer::{w4w_with_unknowns, Failure, Transfer, Translator, Unknown};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_FAILED: i32 = 2;

#[derive(Debug, Parser)]
#[command(
    name = "eyvp",
    version,
    about = "English to Yorùbá verb-phrase translator"
)]
pub struct Cli {
    /// Lexicon TSV file (defaults to the built-in lexicon).
    #[arg(long, global = true, value_name = "PATH")]
    pub lexicon: Option<PathBuf>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Translate one phrase, or one phrase per line of a batch file.
    Translate(TranslateArgs),
    /// Score the rule channel against a gold TSV table.
    Eval(EvalArgs),
    /// Write the compiled automaton as a transition table.
    Fsa(SideArgs),
    /// Print a grammar's nonterminals, terminals, start symbol and rules.
    GrammarDump(SideArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Debug, Args)]
pub struct TranslateArgs {
    /// Phrase to translate.
    pub text: Option<String>,
    /// File with one phrase per line.
    #[arg(long, value_name = "FILE", conflicts_with = "text")]
    pub batch: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    /// Include the source and transferred parse trees.
    #[arg(long)]
    pub show_tree: bool,
    /// Remove tone marks and under-dots from the output.
    #[arg(long)]
    pub strip_diacritics: bool,
    /// Only produce the word-for-word channel.
    #[arg(long)]
    pub w4w_only: bool,
    /// Source grammar rule file (defaults to the built-in grammar).
    #[arg(long, value_name = "FILE")]
    pub grammar: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct EvalArgs {
    /// Gold TSV file (defaults to the built-in gold table).
    pub gold: Option<PathBuf>,
    /// Compare with tone marks and under-dots intact.
    #[arg(long)]
    pub strict_diacritics: bool,
}

#[derive(Debug, Args)]
pub struct SideArgs {
    #[command(flatten)]
    pub side: Side,
    /// Output path (stdout when omitted).
    #[arg(long, short, value_name = "PATH")]
    pub output: Option<PathBuf>,
}

/// Which grammar to operate on; exactly one is required.
#[derive(Debug, Args)]
#[group(required = true, multiple = false)]
pub struct Side {
    /// Use the English grammar.
    #[arg(long)]
    pub source: bool,
    /// Use the Yorùbá grammar.
    #[arg(long)]
    pub target: bool,
    /// Read the grammar from a rule file instead.
    #[arg(long, value_name = "FILE")]
    pub file: Option<PathBuf>,
}

/// JSON form of one translated phrase.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TranslationRecord {
    pub source: String,
    pub w4w: Vec<String>,
    pub rule: Vec<String>,
    pub unknowns: Vec<Unknown>,
    pub tags: Vec<Terminal>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub tree: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub target_tree: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

impl TranslationRecord {
    fn is_failure(&self) -> bool {
        self.error.is_some()
    }
}

struct UsageError(String);

impl<E: std::fmt::Display> From<E> for UsageError {
    fn from(e: E) -> Self {
        UsageError(e.to_string())
    }
}

/// Parse `args` (including the program name) and execute the command.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let target: &mut dyn Write = if e.use_stderr() { err } else { out };
            let _ = write!(target, "{}", e.render());
            return code;
        }
    };
    match execute(&cli, out, err) {
        Ok(code) => code,
        Err(UsageError(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            EXIT_USAGE
        }
    }
}

fn read(path: &Path) -> Result<String, UsageError> {
    fs::read_to_string(path).map_err(|e| UsageError(format!("{}: {e}", path.display())))
}

fn load_lexicon(path: Option<&Path>) -> Result<Lexicon, UsageError> {
    match path {
        None => Ok(Lexicon::builtin()),
        Some(p) => {
            Lexicon::parse(&read(p)?).map_err(|e| UsageError(format!("{}: {e}", p.display())))
        }
    }
}

fn load_grammar(path: &Path) -> Result<Grammar, UsageError> {
    Grammar::parse_rules(&read(path)?).map_err(|e| UsageError(format!("{}: {e}", path.display())))
}

fn side_grammar(args: &SideArgs) -> Result<Grammar, UsageError> {
    match &args.side.file {
        Some(p) => load_grammar(p),
        None if args.side.target => Ok(Grammar::target()),
        None => Ok(Grammar::source()),
    }
}

fn emit(args: &SideArgs, out: &mut dyn Write, body: &str) -> Result<(), UsageError> {
    match &args.output {
        Some(p) => fs::write(p, body).map_err(|e| UsageError(format!("{}: {e}", p.display()))),
        None => Ok(out.write_all(body.as_bytes())?),
    }
}

fn execute(cli: &Cli, out: &mut dyn Write, err: &mut dyn Write) -> Result<i32, UsageError> {
    let lexicon = load_lexicon(cli.lexicon.as_deref())?;
    match &cli.command {
        Command::Translate(args) => cmd_translate(args, lexicon, out),
        Command::Eval(args) => cmd_eval(args, lexicon, out),
        Command::Fsa(args) => {
            let fsa = Fsa::compile(&side_grammar(args)?);
            emit(args, out, &fsa.to_table())?;
            let summary = format!(
                "states: {}\ntransitions: {}\n",
                fsa.state_count(),
                fsa.transition_count()
            );
            // Counts go to stdout unless the table itself was written there.
            if args.output.is_some() {
                out.write_all(summary.as_bytes())?;
            } else {
                err.write_all(summary.as_bytes())?;
            }
            Ok(EXIT_OK)
        }
        Command::GrammarDump(args) => {
            let grammar = side_grammar(args)?;
            emit(args, out, &grammar.to_string())?;
            Ok(EXIT_OK)
        }
    }
}

/// Translate one phrase into its output record.
pub fn translate_record(
    translator: &Translator,
    phrase: &str,
    args: &TranslateArgs,
) -> TranslationRecord {
    let strip = |tokens: Vec<String>| -> Vec<String> {
        if args.strip_diacritics {
            tokens.iter().map(|t| text::strip_diacritics(t)).collect()
        } else {
            tokens
        }
    };
    if args.w4w_only {
        let tokens = text::tokenize(phrase);
        let mut w4w = w4w_with_unknowns(&tokens, translator.lexicon());
        if tokens.first().is_some_and(|t| t.is_capitalized()) {
            if let Some(first) = w4w.tokens.first_mut() {
                *first = text::capitalize(first);
            }
        }
        return TranslationRecord {
            source: text::normalize(phrase.trim()),
            w4w: strip(w4w.tokens),
            rule: Vec::new(),
            unknowns: w4w.unknowns,
            tags: Vec::new(),
            tree: None,
            target_tree: None,
            error: tokens.is_empty().then(|| Failure::EmptyInput.to_string()),
        };
    }
    match translator.translate(phrase) {
        Ok(t) => TranslationRecord {
            source: t.source.clone(),
            w4w: strip(t.w4w.clone()),
            rule: strip(t.rule.clone()),
            unknowns: t.unknowns.clone(),
            tags: t.tags.clone(),
            tree: args.show_tree.then(|| t.source_tree.to_string()),
            target_tree: args.show_tree.then(|| t.target_tree.to_string()),
            error: None,
        },
        Err(e) => TranslationRecord {
            source: e.phrase.clone(),
            w4w: strip(e.w4w.clone()),
            rule: Vec::new(),
            unknowns: e.unknowns.clone(),
            tags: Vec::new(),
            tree: None,
            target_tree: None,
            error: Some(e.failure.to_string()),
        },
    }
}

fn write_text(
    record: &TranslationRecord,
    batch: bool,
    w4w_only: bool,
    out: &mut dyn Write,
) -> std::io::Result<()> {
    if batch {
        writeln!(out, "source: {}", record.source)?;
    }
    writeln!(out, "w4w: {}", record.w4w.join(" "))?;
    match &record.error {
        Some(e) => writeln!(out, "error: {e}")?,
        None if !w4w_only => writeln!(out, "rule: {}", record.rule.join(" "))?,
        None => {}
    }
    if let Some(tree) = &record.tree {
        writeln!(out, "tree: {tree}")?;
    }
    if let Some(tree) = &record.target_tree {
        writeln!(out, "target-tree: {tree}")?;
    }
    if !record.unknowns.is_empty() {
        let words: Vec<&str> = record.unknowns.iter().map(|u| u.surface.as_str()).collect();
        writeln!(out, "unknown: {}", words.join(", "))?;
    }
    Ok(())
}

fn cmd_translate(
    args: &TranslateArgs,
    lexicon: Lexicon,
    out: &mut dyn Write,
) -> Result<i32, UsageError> {
    let source = match &args.grammar {
        Some(p) => load_grammar(p)?,
        None => Grammar::source(),
    };
    let translator = Translator::new(lexicon, source, Transfer::builtin());

    let (phrases, batch) = match (&args.batch, &args.text) {
        (Some(path), _) => (
            read(path)?.lines().map(str::to_owned).collect::<Vec<_>>(),
            true,
        ),
        (None, Some(text)) => (vec![text.clone()], false),
        (None, None) => {
            return Err(UsageError(
                "nothing to translate: give TEXT or --batch FILE".into(),
            ))
        }
    };

    let records: Vec<TranslationRecord> = phrases
        .iter()
        .map(|p| translate_record(&translator, p, args))
        .collect();

    if !batch && records[0].error.as_deref() == Some(&Failure::EmptyInput.to_string()) {
        return Err(UsageError(Failure::EmptyInput.to_string()));
    }

    for (i, record) in records.iter().enumerate() {
        match args.format {
            Format::Json => writeln!(out, "{}", serde_json::to_string(record)?)?,
            Format::Text => {
                if batch && i > 0 {
                    writeln!(out)?;
                }
                write_text(record, batch, args.w4w_only, out)?;
            }
        }
    }
    Ok(if records.iter().any(TranslationRecord::is_failure) {
        EXIT_FAILED
    } else {
        EXIT_OK
    })
}

fn cmd_eval(args: &EvalArgs, lexicon: Lexicon, out: &mut dyn Write) -> Result<i32, UsageError> {
    let document = match &args.gold {
        Some(p) => read(p)?,
        None => BUILTIN_GOLD.to_owned(),
    };
    let pairs = load_gold(&document).map_err(|e| match &args.gold {
        Some(p) => UsageError(format!("{}: {e}", p.display())),
        None => UsageError(e.to_string()),
    })?;
    let report = evaluate(
        &pairs,
        &Translator::with_lexicon(lexicon),
        args.strict_diacritics,
    );
    writeln!(out, "{report}")?;
    Ok(if report.is_perfect() {
        EXIT_OK
    } else {
        EXIT_FAILED
    })
}
