//! Structural transfer from English parse trees to Yorùbá trees, and the
//! two lexical channels: rule-based (walk the transferred tree) and
//! word-for-word (substitute in source order).

mod pipeline;

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::grammar::{Grammar, Nonterminal, ParseTree, Production, Symbol, Terminal, PARTICLE};
use crate::lexicon::Lexicon;
use crate::text::Token;

pub use pipeline::{Failure, TranslateError, Translation, Translator};

/// Built-in rules: source production `=>` target order, where numbers pick
/// source children and `Prt` inserts the particle.
pub const BUILTIN_RULES: &str = "\
VP -> V NP PP    => 0 1 2
VP -> V NP NP    => 0 1 Prt 2
VP -> V NP       => 0 1
VP -> V PP       => 0 1
VP -> V          => 0
NP -> DET ADJ N  => 2 1 0
NP -> DET N      => 1 0
NP -> ADJ N      => 1 0
NP -> N          => 0
PP -> P NP       => 0 1
";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Slot {
    Child(usize),
    Particle,
}

impl fmt::Display for Slot {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Slot::Child(i) => write!(f, "{i}"),
            Slot::Particle => f.write_str(Terminal::Particle.symbol()),
        }
    }
}

/// Reordering of one source production's children, with optional particle
/// insertions.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TransferRule {
    pub lhs: Nonterminal,
    pub rhs: Vec<Symbol>,
    pub order: Vec<Slot>,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TransferError {
    #[error("no transfer rule for production {0}")]
    UnmappedProduction(String),
    #[error("target grammar has no production {0}")]
    MissingTargetProduction(String),
    #[error("rule for {rule}: order is not a permutation of the source positions")]
    NotPermutation { rule: String },
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },
}

impl TransferRule {
    pub fn new(
        lhs: Nonterminal,
        rhs: Vec<Symbol>,
        order: Vec<Slot>,
    ) -> Result<Self, TransferError> {
        let mut picked: Vec<usize> = order
            .iter()
            .filter_map(|s| match s {
                Slot::Child(i) => Some(*i),
                Slot::Particle => None,
            })
            .collect();
        picked.sort_unstable();
        if picked != (0..rhs.len()).collect::<Vec<_>>() {
            let rhs: Vec<String> = rhs.iter().map(ToString::to_string).collect();
            return Err(TransferError::NotPermutation {
                rule: format!("{lhs} -> {}", rhs.join(" ")),
            });
        }
        Ok(Self { lhs, rhs, order })
    }

    pub fn matches(&self, production: &Production) -> bool {
        production.same_shape(&self.lhs, &self.rhs)
    }

    /// Right-hand side this rule produces on the target side.
    pub fn target_rhs(&self) -> Vec<Symbol> {
        self.order
            .iter()
            .map(|slot| match slot {
                Slot::Child(i) => self.rhs[*i].clone(),
                Slot::Particle => Symbol::Terminal(Terminal::Particle),
            })
            .collect()
    }

    /// Parse rule lines of the form `LHS -> A B C => 2 1 0`.
    pub fn parse_rules(document: &str) -> Result<Vec<TransferRule>, TransferError> {
        let mut rules = Vec::new();
        for (n, raw) in document.lines().enumerate() {
            let line = n + 1;
            let body = raw.split('#').next().unwrap_or("").trim();
            if body.is_empty() {
                continue;
            }
            let syntax = |message: &str| TransferError::Syntax {
                line,
                message: message.to_owned(),
            };
            let (pattern, order) = body
                .split_once("=>")
                .ok_or_else(|| syntax("expected `=>`"))?;
            let (lhs, rhs) = pattern
                .split_once("->")
                .ok_or_else(|| syntax("expected `->`"))?;
            let lhs = Nonterminal::new(lhs.trim());
            let rhs: Vec<Symbol> = rhs.split_whitespace().map(Symbol::named).collect();
            let order = order
                .split_whitespace()
                .map(|item| {
                    if item == Terminal::Particle.symbol() {
                        Ok(Slot::Particle)
                    } else {
                        item.parse()
                            .map(Slot::Child)
                            .map_err(|_| syntax("bad slot"))
                    }
                })
                .collect::<Result<Vec<_>, _>>()?;
            rules.push(TransferRule::new(lhs, rhs, order)?);
        }
        Ok(rules)
    }
}

/// A rule set paired with the target grammar whose productions the
/// transferred nodes are labelled with.
#[derive(Debug, Clone)]
pub struct Transfer {
    rules: Vec<TransferRule>,
    target: Grammar,
}

impl Transfer {
    /// Pair `rules` with `target`, checking that each rule's output shape is
    /// a production of the target grammar.
    pub fn new(rules: Vec<TransferRule>, target: Grammar) -> Result<Self, TransferError> {
        for rule in &rules {
            let rhs = rule.target_rhs();
            if target.find_production(&rule.lhs, &rhs).is_none() {
                return Err(TransferError::MissingTargetProduction(render(
                    &rule.lhs, &rhs,
                )));
            }
        }
        Ok(Self { rules, target })
    }

    pub fn builtin() -> Self {
        let rules = TransferRule::parse_rules(BUILTIN_RULES).expect("built-in rules parse");
        Transfer::new(rules, Grammar::target()).expect("built-in rules fit the target grammar")
    }

    pub fn rules(&self) -> &[TransferRule] {
        &self.rules
    }

    pub fn target_grammar(&self) -> &Grammar {
        &self.target
    }

    pub fn rule_for(&self, production: &Production) -> Option<&TransferRule> {
        self.rules.iter().find(|r| r.matches(production))
    }

    /// Map a source tree to a target tree bottom-up. Word leaves keep their
    /// source tokens; particle leaves are added where rules demand.
    pub fn transfer_tree(&self, tree: &ParseTree) -> Result<ParseTree, TransferError> {
        match tree {
            ParseTree::Word(_) | ParseTree::Particle => Ok(tree.clone()),
            ParseTree::Node {
                label,
                production,
                children,
            } => {
                let rule = self
                    .rule_for(production)
                    .ok_or_else(|| TransferError::UnmappedProduction(production.to_string()))?;
                let mut moved = Vec::with_capacity(rule.order.len());
                for slot in &rule.order {
                    moved.push(match slot {
                        Slot::Child(i) => self.transfer_tree(&children[*i])?,
                        Slot::Particle => ParseTree::Particle,
                    });
                }
                let rhs = rule.target_rhs();
                let production = self
                    .target
                    .find_production(label, &rhs)
                    .cloned()
                    .ok_or_else(|| TransferError::MissingTargetProduction(render(label, &rhs)))?;
                Ok(ParseTree::Node {
                    label: label.clone(),
                    production,
                    children: moved,
                })
            }
        }
    }
}

fn render(lhs: &Nonterminal, rhs: &[Symbol]) -> String {
    let rhs: Vec<String> = rhs.iter().map(ToString::to_string).collect();
    format!("{lhs} -> {}", rhs.join(" "))
}

/// A source word with no dictionary entry, passed through untranslated.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Unknown {
    pub surface: String,
    pub index: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Lexicalized {
    pub tokens: Vec<String>,
    pub unknowns: Vec<Unknown>,
}

/// Walk the leaves left to right, emitting each word's dictionary target
/// (split on internal spaces) or, failing that, its source surface.
pub fn lexicalize(tree: &ParseTree, lexicon: &Lexicon) -> Lexicalized {
    let mut out = Lexicalized::default();
    tree.walk_leaves(&mut |leaf| match leaf {
        ParseTree::Word(w) => match lexicon.lookup(&w.token.folded, w.tag) {
            Some(target) => out
                .tokens
                .extend(target.split_whitespace().map(str::to_owned)),
            None => {
                out.tokens.push(w.token.surface.clone());
                out.unknowns.push(Unknown {
                    surface: w.token.surface.clone(),
                    index: w.token.index,
                });
            }
        },
        ParseTree::Particle => out.tokens.push(PARTICLE.to_owned()),
        ParseTree::Node { .. } => {}
    });
    out
}

/// Word-for-word channel: each token's target under its highest-priority
/// tag, in source order; unknown tokens pass through.
pub fn w4w_translate(tokens: &[Token], lexicon: &Lexicon) -> Vec<String> {
    w4w_with_unknowns(tokens, lexicon).tokens
}

pub fn w4w_with_unknowns(tokens: &[Token], lexicon: &Lexicon) -> Lexicalized {
    let mut out = Lexicalized::default();
    for tok in tokens {
        let target = lexicon
            .tag_candidates(&tok.folded)
            .first()
            .and_then(|&tag| lexicon.lookup(&tok.folded, tag));
        match target {
            Some(t) => out.tokens.extend(t.split_whitespace().map(str::to_owned)),
            None => {
                out.tokens.push(tok.surface.clone());
                out.unknowns.push(Unknown {
                    surface: tok.surface.clone(),
                    index: tok.index,
                });
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grammar::parse;
    use crate::text::tokenize;

    fn lex() -> Lexicon {
        Lexicon::builtin()
    }

    fn transferred(phrase: &str) -> ParseTree {
        let tree = parse(&tokenize(phrase), &lex(), &Grammar::source()).unwrap();
        Transfer::builtin().transfer_tree(&tree).unwrap()
    }

    #[test]
    fn head_initial_np() {
        let t = transferred("ate the hot food");
        assert_eq!(
            t.to_string(),
            "(VP (V ate) (NP (N food) (ADJ hot) (DET the)))"
        );
        t.check_structure().unwrap();
    }

    #[test]
    fn bare_verb_is_identity() {
        assert_eq!(transferred("eat").to_string(), "(VP (V eat))");
    }

    #[test]
    fn ditransitive_gets_particle() {
        let t = transferred("Gave mother the cold water");
        assert_eq!(
            t.to_string(),
            "(VP (V Gave) (NP (N mother)) (Prt ni) (NP (N water) (ADJ cold) (DET the)))"
        );
    }

    #[test]
    fn unmapped_production_is_reported() {
        let rules = TransferRule::parse_rules("VP -> V => 0").unwrap();
        let transfer = Transfer::new(rules, Grammar::target()).unwrap();
        let tree = parse(&tokenize("eat food"), &lex(), &Grammar::source()).unwrap();
        assert!(matches!(
            transfer.transfer_tree(&tree),
            Err(TransferError::UnmappedProduction(p)) if p == "VP -> V NP"
        ));
    }

    #[test]
    fn rule_validation() {
        assert!(matches!(
            TransferRule::parse_rules("NP -> DET N => 1 1"),
            Err(TransferError::NotPermutation { .. })
        ));
        let rules = TransferRule::parse_rules("NP -> DET N => 0 1").unwrap();
        assert!(matches!(
            Transfer::new(rules, Grammar::target()),
            Err(TransferError::MissingTargetProduction(_))
        ));
        assert!(matches!(
            TransferRule::parse_rules("NP -> DET N"),
            Err(TransferError::Syntax { line: 1, .. })
        ));
    }

    #[test]
    fn lexicalize_killed_a_boy() {
        let out = lexicalize(&transferred("killed a boy"), &lex());
        assert_eq!(out.tokens, ["pa", "ọmọdọkùnrin", "kan"]);
        assert!(out.unknowns.is_empty());
    }

    #[test]
    fn lexicalize_unknown_and_multiword() {
        let tree = transferred("eat the bread");
        let partial = Lexicon::parse("eat\tverb\tjẹ\nthe\tdet\tnàà\n").unwrap();
        let out = lexicalize(&tree, &partial);
        assert_eq!(out.tokens, ["jẹ", "bread", "nàà"]);
        assert_eq!(
            out.unknowns,
            [Unknown {
                surface: "bread".into(),
                index: 2
            }]
        );

        let multi = Lexicon::parse("see\tverb\trí\nbedroom\tnoun\tYara Ibusun\n").unwrap();
        let tree = parse(&tokenize("see bedroom"), &multi, &Grammar::source()).unwrap();
        let tree = Transfer::builtin().transfer_tree(&tree).unwrap();
        assert_eq!(lexicalize(&tree, &multi).tokens, ["rí", "Yara", "Ibusun"]);
    }

    #[test]
    fn w4w_keeps_source_order() {
        let out = w4w_translate(&tokenize("ate the hot food"), &lex());
        assert_eq!(out, ["jẹ", "nàà", "gbígbóná", "oúnjẹ"]);
        assert!(w4w_translate(&[], &lex()).is_empty());
        assert_eq!(w4w_translate(&tokenize("eat"), &lex()), ["jẹ"]);
        let out = w4w_with_unknowns(&tokenize("eat quinoa"), &lex());
        assert_eq!(out.tokens, ["jẹ", "quinoa"]);
        assert_eq!(out.unknowns.len(), 1);
    }
}
