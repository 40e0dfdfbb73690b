use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use super::{Grammar, Nonterminal, Production, Symbol, Terminal, PARTICLE};
use crate::lexicon::PosTag;
use crate::text::Token;

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct TaggedToken {
    pub token: Token,
    pub tag: PosTag,
}

/// Constituent tree. Word leaves carry the source token; particle leaves
/// only appear in transferred (target-side) trees.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ParseTree {
    Word(TaggedToken),
    Particle,
    Node {
        label: Nonterminal,
        production: Production,
        children: Vec<ParseTree>,
    },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TreeError {
    #[error("node {label}: children {found} do not match production {production}")]
    ChildMismatch {
        label: Nonterminal,
        production: String,
        found: String,
    },
    #[error("node label {label} differs from production lhs {lhs}")]
    LabelMismatch {
        label: Nonterminal,
        lhs: Nonterminal,
    },
    #[error("leaves are not the input tokens in order")]
    LeafOrder,
    #[error("malformed bracketed tree: {0}")]
    Syntax(String),
    #[error("no production {0} in grammar")]
    UnknownProduction(String),
}

impl ParseTree {
    /// Grammar symbol this subtree was derived from.
    pub fn root_symbol(&self) -> Symbol {
        match self {
            ParseTree::Word(w) => Symbol::from(w.tag),
            ParseTree::Particle => Symbol::Terminal(Terminal::Particle),
            ParseTree::Node { label, .. } => Symbol::Nonterminal(label.clone()),
        }
    }

    /// Word leaves, left to right.
    pub fn words(&self) -> Vec<&TaggedToken> {
        let mut out = Vec::new();
        self.walk_leaves(&mut |leaf| {
            if let ParseTree::Word(w) = leaf {
                out.push(w);
            }
        });
        out
    }

    /// Terminal sequence read off the leaves, particles included.
    pub fn terminals(&self) -> Vec<Terminal> {
        let mut out = Vec::new();
        self.walk_leaves(&mut |leaf| match leaf {
            ParseTree::Word(w) => out.push(Terminal::Pos(w.tag)),
            ParseTree::Particle => out.push(Terminal::Particle),
            ParseTree::Node { .. } => {}
        });
        out
    }

    pub fn walk_leaves<'a>(&'a self, f: &mut impl FnMut(&'a ParseTree)) {
        match self {
            ParseTree::Node { children, .. } => {
                for c in children {
                    c.walk_leaves(f);
                }
            }
            leaf => f(leaf),
        }
    }

    pub fn leaf_count(&self) -> usize {
        let mut n = 0;
        self.walk_leaves(&mut |_| n += 1);
        n
    }

    /// Check that every node's children match its production.
    pub fn check_structure(&self) -> Result<(), TreeError> {
        if let ParseTree::Node {
            label,
            production,
            children,
        } = self
        {
            if label != &production.lhs {
                return Err(TreeError::LabelMismatch {
                    label: label.clone(),
                    lhs: production.lhs.clone(),
                });
            }
            let found: Vec<Symbol> = children.iter().map(ParseTree::root_symbol).collect();
            if found != production.rhs {
                return Err(TreeError::ChildMismatch {
                    label: label.clone(),
                    production: production.to_string(),
                    found: found
                        .iter()
                        .map(ToString::to_string)
                        .collect::<Vec<_>>()
                        .join(" "),
                });
            }
            for c in children {
                c.check_structure()?;
            }
        }
        Ok(())
    }

    /// Structural check plus: word leaves are exactly `tokens`, in order.
    pub fn check_against(&self, tokens: &[Token]) -> Result<(), TreeError> {
        self.check_structure()?;
        let leaves: Vec<&Token> = self.words().into_iter().map(|w| &w.token).collect();
        if leaves.len() != tokens.len() || leaves.iter().zip(tokens).any(|(a, b)| *a != b) {
            return Err(TreeError::LeafOrder);
        }
        Ok(())
    }

    /// Read back a tree printed by the `Display` impl, resolving each node's
    /// production in `grammar`. Token indices are assigned left to right.
    pub fn from_bracketed(text: &str, grammar: &Grammar) -> Result<ParseTree, TreeError> {
        let mut reader = BracketReader {
            items: lex_brackets(text),
            pos: 0,
            next_index: 0,
            grammar,
        };
        let tree = reader.tree()?;
        if reader.pos != reader.items.len() {
            return Err(TreeError::Syntax("trailing input".into()));
        }
        Ok(tree)
    }
}

/// Bracketed notation: `(VP (V eat) (NP (N food)))`.
impl fmt::Display for ParseTree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ParseTree::Word(w) => write!(f, "({} {})", w.tag.symbol(), w.token.surface),
            ParseTree::Particle => write!(f, "({} {PARTICLE})", Terminal::Particle),
            ParseTree::Node {
                label, children, ..
            } => {
                write!(f, "({label}")?;
                for c in children {
                    write!(f, " {c}")?;
                }
                write!(f, ")")
            }
        }
    }
}

#[derive(Debug, PartialEq)]
enum Item {
    Open,
    Close,
    Atom(String),
}

fn lex_brackets(text: &str) -> Vec<Item> {
    let mut items = Vec::new();
    let mut atom = String::new();
    let flush = |atom: &mut String, items: &mut Vec<Item>| {
        if !atom.is_empty() {
            items.push(Item::Atom(std::mem::take(atom)));
        }
    };
    for c in text.chars() {
        match c {
            '(' => {
                flush(&mut atom, &mut items);
                items.push(Item::Open);
            }
            ')' => {
                flush(&mut atom, &mut items);
                items.push(Item::Close);
            }
            c if c.is_whitespace() => flush(&mut atom, &mut items),
            c => atom.push(c),
        }
    }
    flush(&mut atom, &mut items);
    items
}

struct BracketReader<'g> {
    items: Vec<Item>,
    pos: usize,
    next_index: usize,
    grammar: &'g Grammar,
}

impl BracketReader<'_> {
    fn expect(&mut self, want: Item) -> Result<(), TreeError> {
        if self.items.get(self.pos) == Some(&want) {
            self.pos += 1;
            Ok(())
        } else {
            Err(TreeError::Syntax(format!(
                "expected {want:?} at item {}",
                self.pos
            )))
        }
    }

    fn atom(&mut self) -> Result<String, TreeError> {
        match self.items.get(self.pos) {
            Some(Item::Atom(a)) => {
                let a = a.clone();
                self.pos += 1;
                Ok(a)
            }
            _ => Err(TreeError::Syntax(format!(
                "expected a label at item {}",
                self.pos
            ))),
        }
    }

    fn tree(&mut self) -> Result<ParseTree, TreeError> {
        self.expect(Item::Open)?;
        let label = self.atom()?;
        let tree = if let Some(term) = Terminal::from_symbol(&label) {
            let word = self.atom()?;
            match term {
                Terminal::Particle => ParseTree::Particle,
                Terminal::Pos(tag) => {
                    let token = Token::new(word, self.next_index);
                    self.next_index += 1;
                    ParseTree::Word(TaggedToken { token, tag })
                }
            }
        } else {
            let label = Nonterminal::new(&label);
            let mut children = Vec::new();
            while self.items.get(self.pos) == Some(&Item::Open) {
                children.push(self.tree()?);
            }
            let rhs: Vec<Symbol> = children.iter().map(ParseTree::root_symbol).collect();
            let production = self
                .grammar
                .find_production(&label, &rhs)
                .cloned()
                .ok_or_else(|| {
                    let shown: Vec<String> = rhs.iter().map(ToString::to_string).collect();
                    TreeError::UnknownProduction(format!("{label} -> {}", shown.join(" ")))
                })?;
            ParseTree::Node {
                label,
                production,
                children,
            }
        };
        self.expect(Item::Close)?;
        Ok(tree)
    }
}
