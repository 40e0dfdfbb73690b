//! Compile both grammars to minimal automata, confirm they accept exactly
//! the grammar languages, validate some tag sequences, and export a table.

use eyvp::automata::{equivalent, Fsa};
use eyvp::grammar::{Grammar, Terminal};
use eyvp::lexicon::PosTag::*;

fn main() {
    for (name, grammar) in [("source", Grammar::source()), ("target", Grammar::target())] {
        let fsa = Fsa::compile(&grammar);
        println!(
            "{name}: {} sequences, max length {}, {} states, {} transitions, equivalent: {}",
            grammar.derive_all().len(),
            grammar.max_length(),
            fsa.state_count(),
            fsa.transition_count(),
            equivalent(&fsa, &grammar),
        );
    }

    let target = Fsa::compile(&Grammar::target());
    let cases: [(&str, Vec<Terminal>); 3] = [
        (
            "V N ADJ DET",
            vec![Verb.into(), Noun.into(), Adj.into(), Det.into()],
        ),
        (
            "V DET ADJ N",
            vec![Verb.into(), Det.into(), Adj.into(), Noun.into()],
        ),
        (
            "V N Prt N DET",
            vec![
                Verb.into(),
                Noun.into(),
                Terminal::Particle,
                Noun.into(),
                Det.into(),
            ],
        ),
    ];
    for (shown, seq) in &cases {
        println!("target accepts {shown:14} {}", target.accepts(seq));
    }

    let table = target.to_table();
    assert_eq!(Fsa::parse_table(&table).unwrap(), target);
    println!("\n{table}");
}
