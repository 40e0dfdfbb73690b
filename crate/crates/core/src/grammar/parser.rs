//! Recursive descent with full backtracking over production choice and
//! per-token tag choice.
//!
//! Alternatives are produced in the order a depth-first search would visit
//! them (productions by ordinal, tags by lexicon priority), and the first
//! alternative covering the whole input wins.

use thiserror::Error;

use super::{Grammar, Nonterminal, ParseTree, Symbol, TaggedToken, Terminal};
use crate::lexicon::{Lexicon, PosTag};
use crate::text::Token;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("nothing to parse")]
    Empty,
    #[error("unknown word `{surface}` at position {index}")]
    UnknownWord { surface: String, index: usize },
    #[error("no derivation from the start symbol; candidate tags: {}", render_candidates(.candidates))]
    NoParse { candidates: Vec<Vec<PosTag>> },
}

fn render_candidates(candidates: &[Vec<PosTag>]) -> String {
    candidates
        .iter()
        .map(|tags| {
            let names: Vec<&str> = tags.iter().map(|t| t.symbol()).collect();
            format!("[{}]", names.join("|"))
        })
        .collect::<Vec<_>>()
        .join(" ")
}

struct Parser<'a> {
    grammar: &'a Grammar,
    tokens: &'a [Token],
    candidates: Vec<Vec<PosTag>>,
}

impl Parser<'_> {
    /// Every way `symbol` can cover a prefix of `tokens[at..]`, as
    /// (subtree, end position), in search order.
    fn expand(&self, symbol: &Symbol, at: usize) -> Vec<(ParseTree, usize)> {
        match symbol {
            Symbol::Terminal(Terminal::Pos(tag)) => match self.tokens.get(at) {
                Some(tok) if self.candidates[at].contains(tag) => vec![(
                    ParseTree::Word(TaggedToken {
                        token: tok.clone(),
                        tag: *tag,
                    }),
                    at + 1,
                )],
                _ => Vec::new(),
            },
            // Particles are inserted by transfer, never read from input.
            Symbol::Terminal(Terminal::Particle) => Vec::new(),
            Symbol::Nonterminal(n) => self.expand_nonterminal(n, at),
        }
    }

    fn expand_nonterminal(&self, n: &Nonterminal, at: usize) -> Vec<(ParseTree, usize)> {
        let mut out = Vec::new();
        for production in self.grammar.productions_for(n) {
            let mut partial: Vec<(Vec<ParseTree>, usize)> = vec![(Vec::new(), at)];
            for sym in &production.rhs {
                let mut next = Vec::new();
                for (children, end) in partial {
                    for (child, child_end) in self.expand(sym, end) {
                        let mut c = children.clone();
                        c.push(child);
                        next.push((c, child_end));
                    }
                }
                partial = next;
                if partial.is_empty() {
                    break;
                }
            }
            out.extend(partial.into_iter().map(|(children, end)| {
                (
                    ParseTree::Node {
                        label: n.clone(),
                        production: production.clone(),
                        children,
                    },
                    end,
                )
            }));
        }
        out
    }
}

/// Parse `tokens` as a derivation of `grammar`'s start symbol.
pub fn parse(
    tokens: &[Token],
    lexicon: &Lexicon,
    grammar: &Grammar,
) -> Result<ParseTree, ParseError> {
    if tokens.is_empty() {
        return Err(ParseError::Empty);
    }
    let mut candidates = Vec::with_capacity(tokens.len());
    for tok in tokens {
        let tags = lexicon.tag_candidates(&tok.folded);
        if tags.is_empty() {
            return Err(ParseError::UnknownWord {
                surface: tok.surface.clone(),
                index: tok.index,
            });
        }
        candidates.push(tags);
    }
    let parser = Parser {
        grammar,
        tokens,
        candidates,
    };
    let start = Symbol::Nonterminal(grammar.start().clone());
    parser
        .expand(&start, 0)
        .into_iter()
        .find(|(_, end)| *end == tokens.len())
        .map(|(tree, _)| tree)
        .ok_or(ParseError::NoParse {
            candidates: parser.candidates,
        })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::text::tokenize;

    fn lex() -> Lexicon {
        Lexicon::parse(
            "eat\tverb\tjẹ\n\
             the\tdet\tnàà\n\
             fresh\tadj\ttuntun\n\
             meat\tnoun\tẹran\n\
             on\tprep\tlórí\n\
             table\tnoun\ttábìlì\n\
             cook\tverb\tṣe\n\
             cook\tnoun\talásè\n\
             it\tpron\tó\n",
        )
        .unwrap()
    }

    fn parse_str(s: &str) -> Result<ParseTree, ParseError> {
        parse(&tokenize(s), &lex(), &Grammar::source())
    }

    #[test]
    fn parses_fig4_phrase() {
        let tree = parse_str("eat the fresh meat on the table").unwrap();
        assert_eq!(
            tree.to_string(),
            "(VP (V eat) (NP (DET the) (ADJ fresh) (N meat)) (PP (P on) (NP (DET the) (N table))))"
        );
        tree.check_against(&tokenize("eat the fresh meat on the table"))
            .unwrap();
    }

    #[test]
    fn bare_verb() {
        assert_eq!(parse_str("eat").unwrap().to_string(), "(VP (V eat))");
    }

    #[test]
    fn no_parse_when_det_first() {
        assert_eq!(
            parse_str("the eat"),
            Err(ParseError::NoParse {
                candidates: vec![vec![PosTag::Det], vec![PosTag::Verb]]
            })
        );
    }

    #[test]
    fn backtracks_over_tags() {
        // "cook" is tried as a verb first, then as a noun in object position.
        let tree = parse_str("cook the cook").unwrap();
        assert_eq!(tree.to_string(), "(VP (V cook) (NP (DET the) (N cook)))");
    }

    #[test]
    fn unknown_word_and_pronoun_gap() {
        assert_eq!(
            parse_str("eat quinoa"),
            Err(ParseError::UnknownWord {
                surface: "quinoa".into(),
                index: 1
            })
        );
        assert!(matches!(
            parse_str("eat it"),
            Err(ParseError::NoParse { .. })
        ));
        assert_eq!(
            parse(&[], &lex(), &Grammar::source()),
            Err(ParseError::Empty)
        );
    }

    #[test]
    fn deterministic() {
        let a = parse_str("cook the fresh meat on the table").unwrap();
        let b = parse_str("cook the fresh meat on the table").unwrap();
        assert_eq!(a, b);
    }
}
