//! Deterministic acyclic automata over grammar terminals.
//!
//! [`Fsa::compile`] materializes a grammar's finite language, threads it
//! into a trie and merges states with identical right languages, giving the
//! minimal partial DFA for the language. The text table produced by
//! [`Fsa::to_table`] reads back with [`Fsa::parse_table`].

use std::collections::{BTreeMap, BTreeSet, HashMap, HashSet, VecDeque};
use std::fmt::Write as _;

use thiserror::Error;

use crate::grammar::{Grammar, Terminal};

pub type StateId = usize;

#[derive(Debug, Clone, PartialEq, Eq, Default)]
struct State {
    accepting: bool,
    transitions: BTreeMap<Terminal, StateId>,
}

/// A deterministic, acyclic automaton with every state reachable.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Fsa {
    states: Vec<State>,
    start: StateId,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FsaError {
    #[error("automaton has no states")]
    NoStates,
    #[error("state {0} is not defined")]
    UndefinedState(StateId),
    #[error("state {0} is unreachable from the start state")]
    Unreachable(StateId),
    #[error("automaton has a cycle through state {0}")]
    Cyclic(StateId),
    #[error("conflicting transitions from state {state} on {symbol}")]
    Nondeterministic { state: StateId, symbol: Terminal },
    #[error("line {line}: {message}")]
    Table { line: usize, message: String },
}

/// Mutable automaton under construction. Unlike [`Fsa`] it may hold
/// unreachable or dead states; [`FsaBuilder::build`] rejects those while
/// [`FsaBuilder::minimize`] prunes them.
#[derive(Debug, Clone, Default)]
pub struct FsaBuilder {
    states: Vec<State>,
    start: StateId,
}

impl FsaBuilder {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add_state(&mut self, accepting: bool) -> StateId {
        self.states.push(State {
            accepting,
            transitions: BTreeMap::new(),
        });
        self.states.len() - 1
    }

    pub fn set_start(&mut self, start: StateId) {
        self.start = start;
    }

    pub fn set_accepting(&mut self, state: StateId, accepting: bool) -> Result<(), FsaError> {
        self.states
            .get_mut(state)
            .ok_or(FsaError::UndefinedState(state))?
            .accepting = accepting;
        Ok(())
    }

    pub fn add_transition(
        &mut self,
        from: StateId,
        symbol: Terminal,
        to: StateId,
    ) -> Result<(), FsaError> {
        if to >= self.states.len() {
            return Err(FsaError::UndefinedState(to));
        }
        let state = self
            .states
            .get_mut(from)
            .ok_or(FsaError::UndefinedState(from))?;
        match state.transitions.get(&symbol) {
            Some(&prev) if prev != to => Err(FsaError::Nondeterministic {
                state: from,
                symbol,
            }),
            _ => {
                state.transitions.insert(symbol, to);
                Ok(())
            }
        }
    }

    fn check_shape(&self) -> Result<(), FsaError> {
        if self.states.is_empty() {
            return Err(FsaError::NoStates);
        }
        if self.start >= self.states.len() {
            return Err(FsaError::UndefinedState(self.start));
        }
        if let Some(state) = find_cycle(&self.states) {
            return Err(FsaError::Cyclic(state));
        }
        Ok(())
    }

    /// Freeze as-is, requiring every state to be reachable.
    pub fn build(self) -> Result<Fsa, FsaError> {
        self.check_shape()?;
        let reachable = reachable_from(&self.states, self.start);
        if let Some(s) = (0..self.states.len()).find(|s| !reachable.contains(s)) {
            return Err(FsaError::Unreachable(s));
        }
        Ok(Fsa {
            states: self.states,
            start: self.start,
        })
    }

    /// Drop unreachable and dead states and merge equivalent ones.
    pub fn minimize(self) -> Result<Fsa, FsaError> {
        self.check_shape()?;
        Ok(merge_equivalent(&self.states, self.start))
    }
}

fn reachable_from(states: &[State], start: StateId) -> HashSet<StateId> {
    let mut seen = HashSet::from([start]);
    let mut queue = VecDeque::from([start]);
    while let Some(s) = queue.pop_front() {
        for &t in states[s].transitions.values() {
            if seen.insert(t) {
                queue.push_back(t);
            }
        }
    }
    seen
}

fn find_cycle(states: &[State]) -> Option<StateId> {
    // 0 = unvisited, 1 = on stack, 2 = done
    let mut marks = vec![0u8; states.len()];
    for root in 0..states.len() {
        if marks[root] != 0 {
            continue;
        }
        let mut stack: Vec<(StateId, Vec<StateId>)> =
            vec![(root, states[root].transitions.values().copied().collect())];
        marks[root] = 1;
        while let Some((s, pending)) = stack.last_mut() {
            match pending.pop() {
                Some(t) if marks[t] == 1 => return Some(t),
                Some(t) if marks[t] == 0 => {
                    marks[t] = 1;
                    let next = states[t].transitions.values().copied().collect();
                    stack.push((t, next));
                }
                Some(_) => {}
                None => {
                    marks[*s] = 2;
                    stack.pop();
                }
            }
        }
    }
    None
}

/// Bottom-up suffix merging on an acyclic automaton: two states are merged
/// when they agree on acceptance and on (symbol, merged target) pairs.
/// States that cannot reach acceptance vanish, except the start state.
fn merge_equivalent(states: &[State], start: StateId) -> Fsa {
    type Signature = (bool, Vec<(Terminal, usize)>);

    let order = post_order(states, start);
    // Class id per original state; None for dead states.
    let mut class: HashMap<StateId, Option<usize>> = HashMap::new();
    let mut classes: HashMap<Signature, usize> = HashMap::new();
    let mut class_states: Vec<Signature> = Vec::new();

    for s in order {
        let edges: Vec<(Terminal, usize)> = states[s]
            .transitions
            .iter()
            .filter_map(|(&sym, t)| class[t].map(|c| (sym, c)))
            .collect();
        let sig: Signature = (states[s].accepting, edges);
        let id = if !sig.0 && sig.1.is_empty() && s != start {
            None
        } else {
            Some(*classes.entry(sig.clone()).or_insert_with(|| {
                class_states.push(sig);
                class_states.len() - 1
            }))
        };
        class.insert(s, id);
    }

    // Renumber classes breadth-first from the start, following symbols in
    // order, so equal languages always produce identical tables.
    let root = class[&start].expect("start state always has a class");
    let mut number: HashMap<usize, StateId> = HashMap::from([(root, 0)]);
    let mut queue = VecDeque::from([root]);
    let mut visit = vec![root];
    while let Some(c) = queue.pop_front() {
        for &(_, t) in &class_states[c].1 {
            if !number.contains_key(&t) {
                number.insert(t, number.len());
                visit.push(t);
                queue.push_back(t);
            }
        }
    }
    let states = visit
        .iter()
        .map(|&c| {
            let (accepting, edges) = &class_states[c];
            State {
                accepting: *accepting,
                transitions: edges.iter().map(|&(sym, t)| (sym, number[&t])).collect(),
            }
        })
        .collect();
    Fsa { states, start: 0 }
}

fn post_order(states: &[State], start: StateId) -> Vec<StateId> {
    let mut out = Vec::with_capacity(states.len());
    let mut seen = HashSet::from([start]);
    let mut stack: Vec<(StateId, Vec<StateId>)> =
        vec![(start, states[start].transitions.values().copied().collect())];
    while let Some((s, pending)) = stack.last_mut() {
        match pending.pop() {
            Some(t) => {
                if seen.insert(t) {
                    let next = states[t].transitions.values().copied().collect();
                    stack.push((t, next));
                }
            }
            None => {
                out.push(*s);
                stack.pop();
            }
        }
    }
    out
}

impl Fsa {
    /// Minimal automaton accepting exactly `grammar.derive_all()`.
    pub fn compile(grammar: &Grammar) -> Fsa {
        Fsa::from_language(&grammar.derive_all())
    }

    /// Build a trie over `language`, then merge equivalent suffix states.
    pub fn from_language<'a>(language: impl IntoIterator<Item = &'a Vec<Terminal>>) -> Fsa {
        let mut trie = FsaBuilder::new();
        let root = trie.add_state(false);
        trie.set_start(root);
        for word in language {
            let mut at = root;
            for &sym in word {
                at = match trie.states[at].transitions.get(&sym) {
                    Some(&next) => next,
                    None => {
                        let next = trie.add_state(false);
                        trie.states[at].transitions.insert(sym, next);
                        next
                    }
                };
            }
            trie.states[at].accepting = true;
        }
        trie.minimize().expect("a trie is acyclic")
    }

    pub fn start(&self) -> StateId {
        self.start
    }

    pub fn state_count(&self) -> usize {
        self.states.len()
    }

    pub fn transition_count(&self) -> usize {
        self.states.iter().map(|s| s.transitions.len()).sum()
    }

    pub fn is_accepting(&self, state: StateId) -> bool {
        self.states.get(state).is_some_and(|s| s.accepting)
    }

    pub fn step(&self, state: StateId, symbol: Terminal) -> Option<StateId> {
        self.states.get(state)?.transitions.get(&symbol).copied()
    }

    /// Symbols labelling at least one transition.
    pub fn alphabet(&self) -> BTreeSet<Terminal> {
        self.states
            .iter()
            .flat_map(|s| s.transitions.keys().copied())
            .collect()
    }

    /// All (from, symbol, to) triples, ordered by source state then symbol.
    pub fn transitions(&self) -> impl Iterator<Item = (StateId, Terminal, StateId)> + '_ {
        self.states
            .iter()
            .enumerate()
            .flat_map(|(from, s)| s.transitions.iter().map(move |(&sym, &to)| (from, sym, to)))
    }

    pub fn accepting_states(&self) -> impl Iterator<Item = StateId> + '_ {
        self.states
            .iter()
            .enumerate()
            .filter(|(_, s)| s.accepting)
            .map(|(i, _)| i)
    }

    pub fn accepts(&self, sequence: &[Terminal]) -> bool {
        let mut at = self.start;
        for &sym in sequence {
            match self.step(at, sym) {
                Some(next) => at = next,
                None => return false,
            }
        }
        self.is_accepting(at)
    }

    /// Length of the longest accepted sequence (the automaton is acyclic).
    pub fn max_accepted_length(&self) -> Option<usize> {
        // Longest path to an accepting state, memoized per state.
        fn longest(fsa: &Fsa, s: StateId, memo: &mut Vec<Option<Option<usize>>>) -> Option<usize> {
            if let Some(v) = memo[s] {
                return v;
            }
            let mut best = fsa.states[s].accepting.then_some(0);
            for &t in fsa.states[s].transitions.values() {
                if let Some(l) = longest(fsa, t, memo) {
                    best = Some(best.map_or(l + 1, |b: usize| b.max(l + 1)));
                }
            }
            memo[s] = Some(best);
            best
        }
        let mut memo = vec![None; self.states.len()];
        longest(self, self.start, &mut memo)
    }

    /// Every accepted sequence.
    pub fn language(&self) -> BTreeSet<Vec<Terminal>> {
        let mut out = BTreeSet::new();
        let mut stack = vec![(self.start, Vec::new())];
        while let Some((s, prefix)) = stack.pop() {
            if self.states[s].accepting {
                out.insert(prefix.clone());
            }
            for (&sym, &t) in &self.states[s].transitions {
                let mut p = prefix.clone();
                p.push(sym);
                stack.push((t, p));
            }
        }
        out
    }

    pub fn to_builder(&self) -> FsaBuilder {
        FsaBuilder {
            states: self.states.clone(),
            start: self.start,
        }
    }

    pub fn minimize(&self) -> Fsa {
        merge_equivalent(&self.states, self.start)
    }

    /// Plain-text transition table:
    ///
    /// ```text
    /// states<TAB>N
    /// start<TAB>S
    /// accept<TAB>A      (one line per accepting state)
    /// FROM<TAB>SYM<TAB>TO
    /// ```
    pub fn to_table(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "states\t{}", self.state_count());
        let _ = writeln!(out, "start\t{}", self.start);
        for a in self.accepting_states() {
            let _ = writeln!(out, "accept\t{a}");
        }
        for (from, sym, to) in self.transitions() {
            let _ = writeln!(out, "{from}\t{sym}\t{to}");
        }
        out
    }

    pub fn parse_table(document: &str) -> Result<Fsa, FsaError> {
        let mut builder = FsaBuilder::new();
        let mut start = None;
        let mut accept = Vec::new();
        let mut edges = Vec::new();
        let mut declared = None;
        for (n, raw) in document.lines().enumerate() {
            let line = n + 1;
            let raw = raw.trim_end_matches('\r');
            if raw.trim().is_empty() || raw.starts_with('#') {
                continue;
            }
            let err = |message: String| FsaError::Table { line, message };
            let id = |s: &str| {
                s.trim()
                    .parse::<StateId>()
                    .map_err(|_| err(format!("bad state id `{s}`")))
            };
            let fields: Vec<&str> = raw.split('\t').collect();
            match fields.as_slice() {
                ["states", n] => declared = Some(id(n)?),
                ["start", s] => start = Some(id(s)?),
                ["accept", s] => accept.push(id(s)?),
                [from, sym, to] => {
                    let symbol = Terminal::from_symbol(sym.trim())
                        .ok_or_else(|| err(format!("unknown symbol `{sym}`")))?;
                    edges.push((line, id(from)?, symbol, id(to)?));
                }
                _ => return Err(err(format!("unrecognized line `{raw}`"))),
            }
        }
        let largest = edges
            .iter()
            .flat_map(|&(_, f, _, t)| [f, t])
            .chain(accept.iter().copied())
            .chain(start)
            .max();
        let count = declared.unwrap_or_else(|| largest.map_or(0, |m| m + 1));
        if let Some(m) = largest.filter(|&m| m >= count) {
            return Err(FsaError::UndefinedState(m));
        }
        for _ in 0..count {
            builder.add_state(false);
        }
        builder.set_start(start.ok_or(FsaError::Table {
            line: 0,
            message: "missing start declaration".into(),
        })?);
        for a in accept {
            builder.set_accepting(a, true)?;
        }
        for (line, from, sym, to) in edges {
            builder
                .add_transition(from, sym, to)
                .map_err(|e| FsaError::Table {
                    line,
                    message: e.to_string(),
                })?;
        }
        builder.build()
    }
}

/// Exhaustive check that `fsa` and `grammar` agree on every sequence over
/// their joint alphabet up to the grammar's maximum derivation length.
pub fn equivalent(fsa: &Fsa, grammar: &Grammar) -> bool {
    first_disagreement(fsa, grammar).is_none()
}

/// The first sequence (in length-then-symbol order) on which `fsa` and
/// `grammar` disagree, if any.
pub fn first_disagreement(fsa: &Fsa, grammar: &Grammar) -> Option<Vec<Terminal>> {
    let language: HashSet<Vec<Terminal>> = grammar.derive_all().into_iter().collect();
    let max_len = language.iter().map(Vec::len).max().unwrap_or(0);
    let alphabet: Vec<Terminal> = grammar
        .terminals()
        .iter()
        .copied()
        .chain(fsa.alphabet())
        .collect::<BTreeSet<_>>()
        .into_iter()
        .collect();

    let mut word = Vec::with_capacity(max_len);
    (0..=max_len).find_map(|len| {
        search_length(&mut word, len, &alphabet, &mut |w| {
            fsa.accepts(w) != language.contains(w)
        })
    })
}

/// Visit every sequence of exactly `len` symbols in lexicographic order,
/// returning the first one `bad` flags.
fn search_length(
    word: &mut Vec<Terminal>,
    len: usize,
    alphabet: &[Terminal],
    bad: &mut impl FnMut(&[Terminal]) -> bool,
) -> Option<Vec<Terminal>> {
    if word.len() == len {
        return bad(word).then(|| word.clone());
    }
    for &sym in alphabet {
        word.push(sym);
        let found = search_length(word, len, alphabet, bad);
        word.pop();
        if found.is_some() {
            return found;
        }
    }
    None
}
