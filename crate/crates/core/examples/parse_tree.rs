//! Parse a phrase, show the bracketed tree before and after transfer, and
//! read a bracketed tree back in.

use eyvp::grammar::{parse, Grammar, ParseTree};
use eyvp::lexicon::Lexicon;
use eyvp::text::tokenize;
use eyvp::transfer::Transfer;

fn main() {
    let phrase = std::env::args()
        .nth(1)
        .unwrap_or_else(|| "gave the boy a small bread".into());
    let lexicon = Lexicon::builtin();
    let source = Grammar::source();
    let tokens = tokenize(&phrase);

    let tree = match parse(&tokens, &lexicon, &source) {
        Ok(tree) => tree,
        Err(e) => {
            eprintln!("{phrase}: {e}");
            std::process::exit(2);
        }
    };
    tree.check_against(&tokens)
        .expect("parser output is well formed");
    println!("source: {tree}");

    let moved = Transfer::builtin().transfer_tree(&tree).unwrap();
    println!("target: {moved}");

    let again = ParseTree::from_bracketed(&tree.to_string(), &source).unwrap();
    assert_eq!(again.to_string(), tree.to_string());
    println!("round-trip ok ({} leaves)", again.leaf_count());
}
