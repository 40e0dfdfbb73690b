//! Context-free grammars over part-of-speech terminals.
//!
//! A [`Grammar`] is the usual 4-tuple: nonterminals, terminals, an ordered
//! list of productions and a start symbol. Grammars are checked on
//! construction and must be non-recursive, which keeps their language
//! finite and lets [`Grammar::derive_all`] and the automata module work
//! with it exhaustively.

mod parser;
mod tree;

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::lexicon::PosTag;

pub use parser::{parse, ParseError};
pub use tree::{ParseTree, TaggedToken, TreeError};

/// Literal inserted in the particle slot of the target grammar.
pub const PARTICLE: &str = "ni";

/// A terminal: either a lexical category or the target-side particle slot.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(into = "String", try_from = "String")]
pub enum Terminal {
    Pos(PosTag),
    Particle,
}

impl Terminal {
    pub fn symbol(self) -> &'static str {
        match self {
            Terminal::Pos(tag) => tag.symbol(),
            Terminal::Particle => "Prt",
        }
    }

    pub fn from_symbol(symbol: &str) -> Option<Terminal> {
        if symbol == "Prt" {
            Some(Terminal::Particle)
        } else {
            PosTag::from_symbol(symbol).map(Terminal::Pos)
        }
    }
}

impl From<PosTag> for Terminal {
    fn from(tag: PosTag) -> Self {
        Terminal::Pos(tag)
    }
}

impl fmt::Display for Terminal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.symbol())
    }
}

impl From<Terminal> for String {
    fn from(t: Terminal) -> String {
        t.symbol().to_owned()
    }
}

impl TryFrom<String> for Terminal {
    type Error = String;

    fn try_from(s: String) -> Result<Self, Self::Error> {
        Terminal::from_symbol(&s).ok_or_else(|| format!("unknown terminal `{s}`"))
    }
}

/// Name of a nonterminal (VP, NP, PP, ...).
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Nonterminal(Arc<str>);

impl Nonterminal {
    pub fn new(name: &str) -> Self {
        Nonterminal(Arc::from(name))
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }
}

impl fmt::Display for Nonterminal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Symbol {
    Terminal(Terminal),
    Nonterminal(Nonterminal),
}

impl Symbol {
    /// Resolve a symbol name: known terminal names win, anything else is a
    /// nonterminal.
    pub fn named(name: &str) -> Symbol {
        match Terminal::from_symbol(name) {
            Some(t) => Symbol::Terminal(t),
            None => Symbol::Nonterminal(Nonterminal::new(name)),
        }
    }
}

impl From<PosTag> for Symbol {
    fn from(tag: PosTag) -> Self {
        Symbol::Terminal(Terminal::Pos(tag))
    }
}

impl fmt::Display for Symbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Symbol::Terminal(t) => t.fmt(f),
            Symbol::Nonterminal(n) => n.fmt(f),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Production {
    pub lhs: Nonterminal,
    pub rhs: Vec<Symbol>,
    /// Rank within the grammar; lower ordinals are tried first.
    pub ordinal: usize,
}

impl Production {
    pub fn same_shape(&self, lhs: &Nonterminal, rhs: &[Symbol]) -> bool {
        &self.lhs == lhs && self.rhs == rhs
    }
}

impl fmt::Display for Production {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} ->", self.lhs)?;
        for sym in &self.rhs {
            write!(f, " {sym}")?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GrammarError {
    #[error("grammar has no productions")]
    Empty,
    #[error("start symbol {0} is not a nonterminal of the grammar")]
    UnknownStart(Nonterminal),
    #[error("production {0} has an empty right-hand side")]
    EmptyRhs(String),
    #[error("nonterminal {0} is used but has no production")]
    NoProduction(Nonterminal),
    #[error("terminal {0} is used but not declared")]
    UndeclaredTerminal(Terminal),
    #[error("grammar is recursive: {}", .0.iter().map(|n| n.as_str()).collect::<Vec<_>>().join(" -> "))]
    Recursive(Vec<Nonterminal>),
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },
}

/// An ordered, non-recursive context-free grammar.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Grammar {
    nonterminals: BTreeSet<Nonterminal>,
    terminals: BTreeSet<Terminal>,
    productions: Vec<Production>,
    start: Nonterminal,
}

impl Grammar {
    /// Build a grammar from fully specified parts, checking every invariant.
    pub fn new(
        nonterminals: BTreeSet<Nonterminal>,
        terminals: BTreeSet<Terminal>,
        rules: Vec<(Nonterminal, Vec<Symbol>)>,
        start: Nonterminal,
    ) -> Result<Grammar, GrammarError> {
        if rules.is_empty() {
            return Err(GrammarError::Empty);
        }
        if !nonterminals.contains(&start) {
            return Err(GrammarError::UnknownStart(start));
        }
        let productions: Vec<Production> = rules
            .into_iter()
            .enumerate()
            .map(|(ordinal, (lhs, rhs))| Production { lhs, rhs, ordinal })
            .collect();

        for p in &productions {
            if p.rhs.is_empty() {
                return Err(GrammarError::EmptyRhs(p.to_string()));
            }
            if !nonterminals.contains(&p.lhs) {
                return Err(GrammarError::NoProduction(p.lhs.clone()));
            }
            for sym in &p.rhs {
                match sym {
                    Symbol::Terminal(t) if !terminals.contains(t) => {
                        return Err(GrammarError::UndeclaredTerminal(*t));
                    }
                    Symbol::Nonterminal(n) if !nonterminals.contains(n) => {
                        return Err(GrammarError::NoProduction(n.clone()));
                    }
                    _ => {}
                }
            }
        }
        for n in &nonterminals {
            if !productions.iter().any(|p| &p.lhs == n) {
                return Err(GrammarError::NoProduction(n.clone()));
            }
        }

        let grammar = Grammar {
            nonterminals,
            terminals,
            productions,
            start,
        };
        if let Some(cycle) = grammar.find_cycle() {
            return Err(GrammarError::Recursive(cycle));
        }
        Ok(grammar)
    }

    /// Build a grammar whose nonterminals and terminals are exactly those
    /// mentioned by `rules`.
    pub fn from_rules(
        start: &str,
        rules: Vec<(Nonterminal, Vec<Symbol>)>,
    ) -> Result<Grammar, GrammarError> {
        let mut nonterminals = BTreeSet::new();
        let mut terminals = BTreeSet::new();
        for (lhs, rhs) in &rules {
            nonterminals.insert(lhs.clone());
            for sym in rhs {
                match sym {
                    Symbol::Terminal(t) => {
                        terminals.insert(*t);
                    }
                    Symbol::Nonterminal(n) => {
                        nonterminals.insert(n.clone());
                    }
                }
            }
        }
        Grammar::new(nonterminals, terminals, rules, Nonterminal::new(start))
    }

    /// The English verb-phrase grammar.
    pub fn source() -> Grammar {
        Self::parse_rules(
            "VP -> V NP PP | V NP NP | V NP | V PP | V\n\
             NP -> DET ADJ N | DET N | ADJ N | N\n\
             PP -> P NP\n",
        )
        .expect("built-in source grammar is valid")
    }

    /// The Yorùbá verb-phrase grammar, with head-initial noun phrases and a
    /// particle slot between the two objects of a ditransitive.
    pub fn target() -> Grammar {
        Self::parse_rules(
            "VP -> V NP PP | V NP Prt NP | V NP | V PP | V\n\
             NP -> N ADJ DET | N DET | N ADJ | N\n\
             PP -> P NP\n",
        )
        .expect("built-in target grammar is valid")
    }

    /// Parse the line-oriented grammar format: `LHS -> A B C | D`, one
    /// nonterminal per line, `#` comments. The first left-hand side is the
    /// start symbol. Names `V N DET ADJ P PRON Prt` are terminals.
    pub fn parse_rules(document: &str) -> Result<Grammar, GrammarError> {
        let mut rules = Vec::new();
        let mut start = None;
        for (n, raw) in document.lines().enumerate() {
            let line = n + 1;
            let body = raw.split('#').next().unwrap_or("").trim();
            if body.is_empty() {
                continue;
            }
            let (lhs, rhs) = body.split_once("->").ok_or_else(|| GrammarError::Syntax {
                line,
                message: "expected `LHS -> RHS`".into(),
            })?;
            let lhs = lhs.trim();
            if lhs.is_empty() || lhs.contains(char::is_whitespace) {
                return Err(GrammarError::Syntax {
                    line,
                    message: format!("bad left-hand side `{lhs}`"),
                });
            }
            if Terminal::from_symbol(lhs).is_some() {
                return Err(GrammarError::Syntax {
                    line,
                    message: format!("terminal `{lhs}` cannot be a left-hand side"),
                });
            }
            let lhs = Nonterminal::new(lhs);
            start.get_or_insert_with(|| lhs.clone());
            for alt in rhs.split('|') {
                let symbols: Vec<Symbol> = alt.split_whitespace().map(Symbol::named).collect();
                if symbols.is_empty() {
                    return Err(GrammarError::Syntax {
                        line,
                        message: "empty alternative".into(),
                    });
                }
                rules.push((lhs.clone(), symbols));
            }
        }
        let start = start.ok_or(GrammarError::Empty)?;
        Grammar::from_rules(start.as_str(), rules)
    }

    pub fn start(&self) -> &Nonterminal {
        &self.start
    }

    pub fn nonterminals(&self) -> &BTreeSet<Nonterminal> {
        &self.nonterminals
    }

    pub fn terminals(&self) -> &BTreeSet<Terminal> {
        &self.terminals
    }

    pub fn productions(&self) -> &[Production] {
        &self.productions
    }

    /// Productions for `lhs`, in ordinal order.
    pub fn productions_for<'a>(
        &'a self,
        lhs: &'a Nonterminal,
    ) -> impl Iterator<Item = &'a Production> + 'a {
        self.productions.iter().filter(move |p| &p.lhs == lhs)
    }

    pub fn find_production(&self, lhs: &Nonterminal, rhs: &[Symbol]) -> Option<&Production> {
        self.productions.iter().find(|p| p.same_shape(lhs, rhs))
    }

    fn find_cycle(&self) -> Option<Vec<Nonterminal>> {
        #[derive(Clone, Copy, PartialEq)]
        enum Mark {
            Visiting,
            Done,
        }
        fn visit(
            g: &Grammar,
            n: &Nonterminal,
            marks: &mut BTreeMap<Nonterminal, Mark>,
            path: &mut Vec<Nonterminal>,
        ) -> Option<Vec<Nonterminal>> {
            match marks.get(n) {
                Some(Mark::Done) => return None,
                Some(Mark::Visiting) => {
                    let from = path.iter().position(|p| p == n).unwrap_or(0);
                    let mut cycle = path[from..].to_vec();
                    cycle.push(n.clone());
                    return Some(cycle);
                }
                None => {}
            }
            marks.insert(n.clone(), Mark::Visiting);
            path.push(n.clone());
            for p in g.productions_for(n) {
                for sym in &p.rhs {
                    if let Symbol::Nonterminal(child) = sym {
                        if let Some(c) = visit(g, child, marks, path) {
                            return Some(c);
                        }
                    }
                }
            }
            path.pop();
            marks.insert(n.clone(), Mark::Done);
            None
        }

        let mut marks = BTreeMap::new();
        self.nonterminals
            .iter()
            .find_map(|n| visit(self, n, &mut marks, &mut Vec::new()))
    }

    /// The (finite) language of the grammar: every terminal sequence
    /// derivable from the start symbol.
    pub fn derive_all(&self) -> BTreeSet<Vec<Terminal>> {
        let mut memo = BTreeMap::new();
        self.language_of(&self.start, &mut memo)
    }

    fn language_of(
        &self,
        n: &Nonterminal,
        memo: &mut BTreeMap<Nonterminal, BTreeSet<Vec<Terminal>>>,
    ) -> BTreeSet<Vec<Terminal>> {
        if let Some(lang) = memo.get(n) {
            return lang.clone();
        }
        let mut lang = BTreeSet::new();
        for p in self.productions_for(n) {
            let mut partial: BTreeSet<Vec<Terminal>> = BTreeSet::from([Vec::new()]);
            for sym in &p.rhs {
                let pieces = match sym {
                    Symbol::Terminal(t) => BTreeSet::from([vec![*t]]),
                    Symbol::Nonterminal(child) => self.language_of(child, memo),
                };
                partial = partial
                    .iter()
                    .flat_map(|prefix| {
                        pieces.iter().map(move |piece| {
                            let mut s = prefix.clone();
                            s.extend_from_slice(piece);
                            s
                        })
                    })
                    .collect();
            }
            lang.extend(partial);
        }
        memo.insert(n.clone(), lang.clone());
        lang
    }

    /// Length of the longest derivable sequence.
    pub fn max_length(&self) -> usize {
        self.derive_all().iter().map(Vec::len).max().unwrap_or(0)
    }

    /// Render in the rule-file format accepted by [`Grammar::parse_rules`],
    /// grouping alternatives by left-hand side in first-appearance order.
    pub fn to_rules(&self) -> String {
        let mut order: Vec<&Nonterminal> = Vec::new();
        for p in &self.productions {
            if !order.contains(&&p.lhs) {
                order.push(&p.lhs);
            }
        }
        let mut out = String::new();
        for lhs in order {
            let alts: Vec<String> = self
                .productions_for(lhs)
                .map(|p| {
                    p.rhs
                        .iter()
                        .map(ToString::to_string)
                        .collect::<Vec<_>>()
                        .join(" ")
                })
                .collect();
            out.push_str(&format!("{lhs} -> {}\n", alts.join(" | ")));
        }
        out
    }
}

impl FromStr for Grammar {
    type Err = GrammarError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Grammar::parse_rules(s)
    }
}

impl fmt::Display for Grammar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let list = |items: Vec<String>| items.join(", ");
        writeln!(
            f,
            "V = {{{}}}",
            list(self.nonterminals.iter().map(ToString::to_string).collect())
        )?;
        writeln!(
            f,
            "Σ = {{{}}}",
            list(self.terminals.iter().map(ToString::to_string).collect())
        )?;
        writeln!(f, "start = {}", self.start)?;
        writeln!(f, "productions:")?;
        for p in &self.productions {
            writeln!(f, "  {:>2}. {p}", p.ordinal)?;
        }
        Ok(())
    }
}
