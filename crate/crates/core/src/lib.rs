//! Rule-based English→Yorùbá verb-phrase translation.
//!
//! The pipeline tokenizes an English verb phrase, parses it with a small
//! non-recursive context-free grammar, reorders the tree with structural
//! transfer rules (Yorùbá noun phrases are head-initial: `N ADJ DET`),
//! substitutes words from a bilingual lexicon and checks the resulting
//! tag sequence against an automaton compiled from the Yorùbá grammar.
//! A word-for-word channel is produced alongside for comparison.
//!
//! ```
//! use eyvp::Translator;
//!
//! let translator = Translator::builtin();
//! let t = translator.translate("ate the hot food").unwrap();
//! assert_eq!(t.rule_text(false), "jẹ oúnjẹ gbígbóná nàà");
//! assert_eq!(t.w4w_text(false), "jẹ nàà gbígbóná oúnjẹ");
//! ```

pub mod automata;
pub mod cli;
pub mod eval;
pub mod grammar;
pub mod lexicon;
pub mod text;
pub mod transfer;

pub use automata::{equivalent, Fsa};
pub use eval::{evaluate, load_gold, EvalReport, GoldPair};
pub use grammar::{parse, Grammar, ParseTree, Terminal};
pub use lexicon::{Lexicon, PosTag};
pub use transfer::{Transfer, Translation, Translator};
