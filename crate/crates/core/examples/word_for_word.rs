//! The word-for-word baseline: dictionary substitution in source order,
//! unknown words passed through untouched.

use eyvp::lexicon::Lexicon;
use eyvp::text::tokenize;
use eyvp::transfer::w4w_with_unknowns;

fn main() {
    let lexicon = Lexicon::builtin();
    for phrase in [
        "the big black bed",
        "cook breakfast in the bedroom",
        "wash the zebra",
    ] {
        let out = w4w_with_unknowns(&tokenize(phrase), &lexicon);
        println!("{phrase:32} -> {}", out.tokens.join(" "));
        for u in &out.unknowns {
            println!("{:32}    unknown word {:?} at {}", "", u.surface, u.index);
        }
    }
}
