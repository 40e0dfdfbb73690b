use thiserror::Error;

use super::{lexicalize, w4w_with_unknowns, Transfer, TransferError, Unknown};
use crate::automata::Fsa;
use crate::grammar::{parse, Grammar, ParseError, ParseTree, Terminal};
use crate::lexicon::Lexicon;
use crate::text::{self, tokenize};

/// Both output channels for one phrase.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Translation {
    pub source: String,
    pub source_tree: ParseTree,
    pub target_tree: ParseTree,
    pub w4w: Vec<String>,
    pub rule: Vec<String>,
    pub unknowns: Vec<Unknown>,
    /// Leaf terminals of the target tree, particles included.
    pub tags: Vec<Terminal>,
}

impl Translation {
    pub fn rule_text(&self, strip_diacritics: bool) -> String {
        render(&self.rule, strip_diacritics)
    }

    pub fn w4w_text(&self, strip_diacritics: bool) -> String {
        render(&self.w4w, strip_diacritics)
    }
}

pub fn render(tokens: &[String], strip_diacritics: bool) -> String {
    let joined = tokens.join(" ");
    if strip_diacritics {
        text::strip_diacritics(&joined)
    } else {
        joined
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Failure {
    #[error("empty input")]
    EmptyInput,
    #[error(transparent)]
    Parse(ParseError),
    #[error(transparent)]
    Transfer(#[from] TransferError),
    #[error("target tag sequence {0} is rejected by the target automaton")]
    Rejected(String),
}

impl From<ParseError> for Failure {
    fn from(e: ParseError) -> Self {
        match e {
            ParseError::Empty => Failure::EmptyInput,
            other => Failure::Parse(other),
        }
    }
}

/// The rule channel failed. The word-for-word channel needs no parse and is
/// still returned.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("{failure}")]
pub struct TranslateError {
    pub phrase: String,
    pub failure: Failure,
    pub w4w: Vec<String>,
    pub unknowns: Vec<Unknown>,
}

/// Lexicon, source grammar, transfer rules and the automaton compiled from
/// the target grammar, bundled for repeated use.
#[derive(Debug, Clone)]
pub struct Translator {
    lexicon: Lexicon,
    source: Grammar,
    transfer: Transfer,
    target_fsa: Fsa,
}

impl Translator {
    pub fn new(lexicon: Lexicon, source: Grammar, transfer: Transfer) -> Self {
        let target_fsa = Fsa::compile(transfer.target_grammar());
        Self {
            lexicon,
            source,
            transfer,
            target_fsa,
        }
    }

    pub fn with_lexicon(lexicon: Lexicon) -> Self {
        Self::new(lexicon, Grammar::source(), Transfer::builtin())
    }

    pub fn builtin() -> Self {
        Self::with_lexicon(Lexicon::builtin())
    }

    pub fn lexicon(&self) -> &Lexicon {
        &self.lexicon
    }

    pub fn source_grammar(&self) -> &Grammar {
        &self.source
    }

    pub fn transfer(&self) -> &Transfer {
        &self.transfer
    }

    pub fn target_fsa(&self) -> &Fsa {
        &self.target_fsa
    }

    /// normalize → tokenize → parse → transfer → lexicalize, plus the
    /// word-for-word channel.
    pub fn translate(&self, input: &str) -> Result<Translation, TranslateError> {
        let source = text::normalize(input.trim());
        let tokens = tokenize(&source);
        let capitalized = tokens.first().is_some_and(|t| t.is_capitalized());
        let mut w4w = w4w_with_unknowns(&tokens, &self.lexicon);
        if capitalized {
            capitalize_first(&mut w4w.tokens);
        }

        let fail = |failure: Failure, w4w: super::Lexicalized| TranslateError {
            phrase: source.clone(),
            failure,
            w4w: w4w.tokens,
            unknowns: w4w.unknowns,
        };

        if tokens.is_empty() {
            return Err(fail(Failure::EmptyInput, w4w));
        }
        let source_tree = match parse(&tokens, &self.lexicon, &self.source) {
            Ok(t) => t,
            Err(e) => return Err(fail(e.into(), w4w)),
        };
        let target_tree = match self.transfer.transfer_tree(&source_tree) {
            Ok(t) => t,
            Err(e) => return Err(fail(e.into(), w4w)),
        };
        let tags = target_tree.terminals();
        if !self.target_fsa.accepts(&tags) {
            let shown: Vec<&str> = tags.iter().map(|t| t.symbol()).collect();
            return Err(fail(Failure::Rejected(shown.join(" ")), w4w));
        }
        let mut lexical = lexicalize(&target_tree, &self.lexicon);
        if capitalized {
            capitalize_first(&mut lexical.tokens);
        }
        let mut unknowns = w4w.unknowns;
        for u in lexical.unknowns {
            if !unknowns.contains(&u) {
                unknowns.push(u);
            }
        }
        Ok(Translation {
            source,
            source_tree,
            target_tree,
            w4w: w4w.tokens,
            rule: lexical.tokens,
            unknowns,
            tags,
        })
    }
}

fn capitalize_first(tokens: &mut [String]) {
    if let Some(first) = tokens.first_mut() {
        *first = text::capitalize(first);
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rule(phrase: &str) -> String {
        Translator::builtin()
            .translate(phrase)
            .unwrap()
            .rule_text(true)
    }

    #[test]
    fn gold_examples() {
        assert_eq!(rule("go to the small house"), "lo si ile kekere naa");
        assert_eq!(rule("cook the big meat"), "se eeran nla naa");
        assert_eq!(rule("sit in the small house"), "joko ninu ile kekere naa");
        assert_eq!(
            rule("Gave mother the cold water"),
            "Fun iya ni omi tutu naa"
        );
    }

    #[test]
    fn casing_mirrors_first_word() {
        let t = Translator::builtin().translate("Eat cold food").unwrap();
        assert_eq!(t.rule_text(false), "Jẹ oúnjẹ tútù");
        assert_eq!(t.w4w_text(false), "Jẹ tútù oúnjẹ");
        assert_eq!(t.tags.len(), 3);
    }

    #[test]
    fn failures_keep_w4w() {
        let tr = Translator::builtin();
        let err = tr.translate("   ").unwrap_err();
        assert_eq!(err.failure, Failure::EmptyInput);

        let err = tr.translate("eat quinoa").unwrap_err();
        assert!(matches!(
            err.failure,
            Failure::Parse(ParseError::UnknownWord { index: 1, .. })
        ));
        assert_eq!(err.w4w, ["jẹ", "quinoa"]);
        assert_eq!(err.unknowns.len(), 1);

        let err = tr.translate("the eat").unwrap_err();
        assert!(matches!(
            err.failure,
            Failure::Parse(ParseError::NoParse { .. })
        ));
        assert_eq!(err.w4w, ["nàà", "jẹ"]);
    }

    #[test]
    fn rejected_by_target_automaton() {
        // Automaton narrower than the grammar the rules map onto.
        let target = Grammar::parse_rules(
            "VP -> V NP PP | V NP Prt NP | V NP | V PP | V\n\
             NP -> N ADJ DET | N DET | N ADJ | N\n\
             PP -> P NP\n",
        )
        .unwrap();
        let transfer = Transfer::new(Transfer::builtin().rules().to_vec(), target).unwrap();
        let mut tr = Translator::new(Lexicon::builtin(), Grammar::source(), transfer);
        tr.target_fsa = Fsa::compile(&Grammar::parse_rules("VP -> V").unwrap());
        let err = tr.translate("eat food").unwrap_err();
        assert_eq!(err.failure, Failure::Rejected("V N".into()));
        assert!(tr.translate("eat").is_ok());
    }
}
