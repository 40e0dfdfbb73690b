//! Swap in a different lexicon, source grammar and transfer rules: a tiny
//! grammar where adjectives follow the noun and the object comes first.

use eyvp::grammar::Grammar;
use eyvp::lexicon::Lexicon;
use eyvp::transfer::{Transfer, TransferRule};
use eyvp::Translator;

const LEXICON: &str = "\
# toy kitchen domain
see\tverb\trí
buy\tverb\trà
lion\tnoun\tkìnnìún
bread\tnoun\tbúrẹ́dì
big\tadj\tnlá
";

const SOURCE: &str = "\
VP -> V NP | V
NP -> ADJ N | N
";

const TARGET: &str = "\
VP -> NP V | V
NP -> N ADJ | N
";

const RULES: &str = "\
VP -> V NP => 1 0
VP -> V    => 0
NP -> ADJ N => 1 0
NP -> N     => 0
";

fn main() {
    let lexicon = Lexicon::parse(LEXICON).unwrap().with_domain("kitchen");
    let source = Grammar::parse_rules(SOURCE).unwrap();
    let target = Grammar::parse_rules(TARGET).unwrap();
    let rules = TransferRule::parse_rules(RULES).unwrap();
    let transfer = Transfer::new(rules, target).unwrap();
    let translator = Translator::new(lexicon, source, transfer);

    for phrase in ["see the big lion", "buy big bread", "see"] {
        match translator.translate(phrase) {
            Ok(t) => println!("{phrase:18} -> {}", t.rule_text(false)),
            Err(e) => println!("{phrase:18} !! {e}"),
        }
    }
}
