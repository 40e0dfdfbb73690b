//! Bilingual English→Yorùbá dictionary grouped by part of speech.
//!
//! The on-disk form is a UTF-8 TSV document with one `source⇥pos⇥target`
//! entry per line. Blank lines and lines starting with `#` are ignored.
//! Both sides are NFC-normalized on ingest and the source is lowercased, so
//! the stored bytes are always the NFC form of the input.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::text;

/// Part-of-speech tag carried by every lexicon entry.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum PosTag {
    Verb,
    Noun,
    Det,
    Adj,
    Prep,
    Pron,
}

impl PosTag {
    pub const ALL: [PosTag; 6] = [
        PosTag::Verb,
        PosTag::Noun,
        PosTag::Det,
        PosTag::Adj,
        PosTag::Prep,
        PosTag::Pron,
    ];

    /// Order in which candidate readings of an ambiguous word are tried.
    pub const PRIORITY: [PosTag; 6] = [
        PosTag::Verb,
        PosTag::Det,
        PosTag::Prep,
        PosTag::Adj,
        PosTag::Noun,
        PosTag::Pron,
    ];

    /// Name used in lexicon files.
    pub fn name(self) -> &'static str {
        match self {
            PosTag::Verb => "verb",
            PosTag::Noun => "noun",
            PosTag::Det => "det",
            PosTag::Adj => "adj",
            PosTag::Prep => "prep",
            PosTag::Pron => "pron",
        }
    }

    /// Grammar symbol, as written in production rules and parse trees.
    pub fn symbol(self) -> &'static str {
        match self {
            PosTag::Verb => "V",
            PosTag::Noun => "N",
            PosTag::Det => "DET",
            PosTag::Adj => "ADJ",
            PosTag::Prep => "P",
            PosTag::Pron => "PRON",
        }
    }

    pub fn from_symbol(symbol: &str) -> Option<PosTag> {
        PosTag::ALL.into_iter().find(|t| t.symbol() == symbol)
    }
}

impl fmt::Display for PosTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.symbol())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("unknown part of speech `{0}`")]
pub struct UnknownPos(pub String);

impl FromStr for PosTag {
    type Err = UnknownPos;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let lower = s.trim().to_ascii_lowercase();
        PosTag::ALL
            .into_iter()
            .find(|t| t.name() == lower)
            .ok_or_else(|| UnknownPos(s.trim().to_owned()))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct LexEntry {
    pub source: String,
    pub pos: PosTag,
    pub target: String,
}

impl LexEntry {
    /// Tab-separated line in the lexicon file format.
    pub fn to_line(&self) -> String {
        format!("{}\t{}\t{}", self.source, self.pos.name(), self.target)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LexiconError {
    #[error("line {line}: expected 3 tab-separated fields, found {found}")]
    FieldCount { line: usize, found: usize },
    #[error("line {line}: unknown part of speech `{token}`")]
    UnknownPos { line: usize, token: String },
    #[error("line {line}: {what} must not be empty")]
    EmptyField { line: usize, what: &'static str },
    #[error("line {line}: source `{source_word}` contains whitespace")]
    SourceWhitespace { line: usize, source_word: String },
    #[error("line {line}: duplicate entry ({source_word}, {pos}), first defined on line {first}")]
    Duplicate {
        line: usize,
        first: usize,
        source_word: String,
        pos: PosTag,
    },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Lexicon {
    entries: BTreeMap<(String, PosTag), String>,
    domain: String,
}

impl Default for Lexicon {
    fn default() -> Self {
        Self {
            entries: BTreeMap::new(),
            domain: "home".to_owned(),
        }
    }
}

/// The lexicon shipped with the crate.
pub const BUILTIN_LEXICON: &str = include_str!("../data/lexicon.tsv");

impl Lexicon {
    pub fn builtin() -> Lexicon {
        Lexicon::parse(BUILTIN_LEXICON).expect("shipped lexicon is well-formed")
    }

    /// Parse a TSV lexicon document.
    pub fn parse(document: &str) -> Result<Lexicon, LexiconError> {
        let mut lexicon = Lexicon::default();
        let mut first_seen: BTreeMap<(String, PosTag), usize> = BTreeMap::new();

        for (n, raw) in document.lines().enumerate() {
            let line = n + 1;
            let raw = raw.trim_end_matches('\r');
            if raw.trim().is_empty() || raw.trim_start().starts_with('#') {
                continue;
            }
            let fields: Vec<&str> = raw.split('\t').collect();
            if fields.len() != 3 {
                return Err(LexiconError::FieldCount {
                    line,
                    found: fields.len(),
                });
            }
            let source = text::fold(fields[0].trim());
            let target = text::normalize(fields[2].trim());
            let pos: PosTag = fields[1]
                .parse()
                .map_err(|UnknownPos(token)| LexiconError::UnknownPos { line, token })?;
            if source.is_empty() {
                return Err(LexiconError::EmptyField {
                    line,
                    what: "source",
                });
            }
            if target.is_empty() {
                return Err(LexiconError::EmptyField {
                    line,
                    what: "target",
                });
            }
            if source.chars().any(char::is_whitespace) {
                return Err(LexiconError::SourceWhitespace {
                    line,
                    source_word: source,
                });
            }
            let key = (source, pos);
            if let Some(&first) = first_seen.get(&key) {
                return Err(LexiconError::Duplicate {
                    line,
                    first,
                    source_word: key.0,
                    pos,
                });
            }
            first_seen.insert(key.clone(), line);
            lexicon.entries.insert(key, target);
        }
        Ok(lexicon)
    }

    pub fn with_domain(mut self, domain: impl Into<String>) -> Self {
        self.domain = domain.into();
        self
    }

    pub fn domain(&self) -> &str {
        &self.domain
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn lookup(&self, surface: &str, pos: PosTag) -> Option<&str> {
        let key = (text::fold(surface), pos);
        self.entries.get(&key).map(String::as_str)
    }

    /// Every tag `surface` is listed under, in [`PosTag::PRIORITY`] order.
    pub fn tag_candidates(&self, surface: &str) -> Vec<PosTag> {
        let folded = text::fold(surface);
        PosTag::PRIORITY
            .into_iter()
            .filter(|&pos| self.entries.contains_key(&(folded.clone(), pos)))
            .collect()
    }

    pub fn entries(&self) -> impl Iterator<Item = LexEntry> + '_ {
        self.entries.iter().map(|((source, pos), target)| LexEntry {
            source: source.clone(),
            pos: *pos,
            target: target.clone(),
        })
    }

    /// Distinct source words, in sorted order.
    pub fn words(&self) -> Vec<&str> {
        let mut words: Vec<&str> = self.entries.keys().map(|(s, _)| s.as_str()).collect();
        words.dedup();
        words
    }

    /// Source words listed under `pos`.
    pub fn words_with_tag(&self, pos: PosTag) -> Vec<&str> {
        self.entries
            .keys()
            .filter(|(_, p)| *p == pos)
            .map(|(s, _)| s.as_str())
            .collect()
    }

    pub fn to_tsv(&self) -> String {
        self.entries().map(|e| e.to_line() + "\n").collect()
    }
}
