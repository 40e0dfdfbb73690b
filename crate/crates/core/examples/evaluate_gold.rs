//! Score the rule channel against a gold table (the built-in one unless a
//! path is given).

use eyvp::eval::{evaluate, load_gold, BUILTIN_GOLD};
use eyvp::Translator;

fn main() {
    let doc = match std::env::args().nth(1) {
        Some(path) => std::fs::read_to_string(path).expect("readable gold file"),
        None => BUILTIN_GOLD.to_owned(),
    };
    let pairs = load_gold(&doc).unwrap_or_else(|e| panic!("gold table: {e}"));
    let report = evaluate(&pairs, &Translator::builtin(), false);
    println!("{report}");
    if !report.is_perfect() {
        std::process::exit(2);
    }
}
