//! Query the bilingual lexicon: tag candidates in priority order and the
//! target for each reading. Loads a TSV file when one is given.

use eyvp::lexicon::{Lexicon, PosTag};

fn main() {
    let mut args = std::env::args().skip(1);
    let lexicon = match args.next() {
        Some(path) => {
            let doc = std::fs::read_to_string(&path).expect("readable lexicon");
            Lexicon::parse(&doc).unwrap_or_else(|e| panic!("{path}: {e}"))
        }
        None => Lexicon::builtin(),
    };
    println!("{} entries, domain {:?}", lexicon.len(), lexicon.domain());
    for tag in PosTag::ALL {
        println!("  {:5} {}", tag.symbol(), lexicon.words_with_tag(tag).len());
    }

    for word in ["cook", "Water", "fight", "bedroom", "zebra"] {
        let tags = lexicon.tag_candidates(word);
        if tags.is_empty() {
            println!("{word}: not in lexicon");
            continue;
        }
        let readings: Vec<String> = tags
            .iter()
            .map(|&t| format!("{} {}", t.name(), lexicon.lookup(word, t).unwrap()))
            .collect();
        println!("{word}: {}", readings.join("; "));
    }
}
