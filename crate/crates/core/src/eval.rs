//! Gold-corpus loading and exact-match evaluation of the rule channel.

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::text::comparison_key;
use crate::transfer::{Translator, Unknown};

/// The gold table shipped with the crate.
pub const BUILTIN_GOLD: &str = include_str!("../data/gold.tsv");

/// Comment directive marking the next pair as excluded from scoring.
const EXCLUDE_DIRECTIVE: &str = "#exclude";

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GoldPair {
    pub source: String,
    pub expected: String,
    /// Set when the pair is known to be inconsistent with the lexicon.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub excluded: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GoldError {
    #[error("line {line}: expected 2 tab-separated fields, found {found}")]
    FieldCount { line: usize, found: usize },
    #[error("line {line}: empty {what}")]
    EmptyField { line: usize, what: &'static str },
    #[error("line {line}: exclusion directive is not followed by a pair")]
    DanglingExclusion { line: usize },
}

/// Parse a `source⇥expected` TSV document. `#` lines are comments, except
/// `#exclude⇥reason`, which excludes the pair on the next data line.
pub fn load_gold(document: &str) -> Result<Vec<GoldPair>, GoldError> {
    let mut pairs = Vec::new();
    let mut pending: Option<(usize, String)> = None;
    for (n, raw) in document.lines().enumerate() {
        let line = n + 1;
        let raw = raw.trim_end_matches('\r');
        if raw.trim().is_empty() {
            continue;
        }
        if let Some(rest) = raw.strip_prefix(EXCLUDE_DIRECTIVE) {
            let reason = rest.trim();
            let reason = if reason.is_empty() {
                "excluded"
            } else {
                reason
            };
            pending = Some((line, reason.to_owned()));
            continue;
        }
        if raw.starts_with('#') {
            continue;
        }
        let fields: Vec<&str> = raw.split('\t').collect();
        if fields.len() != 2 {
            return Err(GoldError::FieldCount {
                line,
                found: fields.len(),
            });
        }
        let (source, expected) = (fields[0].trim(), fields[1].trim());
        if source.is_empty() {
            return Err(GoldError::EmptyField {
                line,
                what: "source",
            });
        }
        if expected.is_empty() {
            return Err(GoldError::EmptyField {
                line,
                what: "expected output",
            });
        }
        pairs.push(GoldPair {
            source: source.to_owned(),
            expected: expected.to_owned(),
            excluded: pending.take().map(|(_, r)| r),
        });
    }
    if let Some((line, _)) = pending {
        return Err(GoldError::DanglingExclusion { line });
    }
    Ok(pairs)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PairRecord {
    pub source: String,
    pub expected: String,
    /// Rule-channel rendering, or the failure message.
    pub got: Result<String, String>,
    pub matched: bool,
    pub unknowns: Vec<Unknown>,
    pub excluded: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EvalReport {
    /// Scored (non-excluded) pairs.
    pub total: usize,
    pub matches: usize,
    pub records: Vec<PairRecord>,
}

impl EvalReport {
    /// `None` when nothing was scored.
    pub fn accuracy(&self) -> Option<f64> {
        (self.total > 0).then(|| self.matches as f64 / self.total as f64)
    }

    pub fn is_perfect(&self) -> bool {
        self.matches == self.total
    }

    pub fn excluded(&self) -> impl Iterator<Item = &PairRecord> {
        self.records.iter().filter(|r| r.excluded.is_some())
    }
}

impl fmt::Display for EvalReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in &self.records {
            let got = match &r.got {
                Ok(s) => s.clone(),
                Err(e) => format!("<error: {e}>"),
            };
            let status = match (&r.excluded, r.matched) {
                (Some(_), _) => "EXCLUDED",
                (None, true) => "PASS",
                (None, false) => "FAIL",
            };
            write!(f, "{status}\t{}\t{}\t{got}", r.source, r.expected)?;
            if let Some(reason) = &r.excluded {
                write!(f, "\t({reason})")?;
            }
            if !r.unknowns.is_empty() {
                let words: Vec<&str> = r.unknowns.iter().map(|u| u.surface.as_str()).collect();
                write!(f, "\tunknown: {}", words.join(", "))?;
            }
            writeln!(f)?;
        }
        match self.accuracy() {
            Some(acc) => write!(f, "accuracy: {}/{} = {acc:.3}", self.matches, self.total)?,
            None => write!(f, "accuracy: n/a (0 scored pairs)")?,
        }
        let excluded = self.excluded().count();
        if excluded > 0 {
            write!(f, " ({excluded} excluded)")?;
        }
        Ok(())
    }
}

/// Translate every gold source and compare its rule channel to the
/// expected text, case-folded and (unless `strict_diacritics`)
/// diacritic-stripped.
pub fn evaluate(
    pairs: &[GoldPair],
    translator: &Translator,
    strict_diacritics: bool,
) -> EvalReport {
    let mut report = EvalReport {
        total: 0,
        matches: 0,
        records: Vec::with_capacity(pairs.len()),
    };
    for pair in pairs {
        let (got, unknowns) = match translator.translate(&pair.source) {
            Ok(t) => (Ok(t.rule_text(false)), t.unknowns),
            Err(e) => (Err(e.failure.to_string()), e.unknowns),
        };
        let matched = got.as_ref().is_ok_and(|g| {
            comparison_key(g, strict_diacritics)
                == comparison_key(&pair.expected, strict_diacritics)
        });
        if pair.excluded.is_none() {
            report.total += 1;
            report.matches += usize::from(matched);
        }
        report.records.push(PairRecord {
            source: pair.source.clone(),
            expected: pair.expected.clone(),
            got,
            matched,
            unknowns,
            excluded: pair.excluded.clone(),
        });
    }
    report
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn load_examples() {
        let pairs = load_gold("killed a boy\tPa omodokunrin kan\n").unwrap();
        assert_eq!(
            pairs,
            [GoldPair {
                source: "killed a boy".into(),
                expected: "Pa omodokunrin kan".into(),
                excluded: None
            }]
        );
        assert!(load_gold("").unwrap().is_empty());
        assert_eq!(
            load_gold("a\tb\n\nx\ty\tz\n"),
            Err(GoldError::FieldCount { line: 3, found: 3 })
        );
        assert_eq!(
            load_gold("a\tb\n#exclude\tbad\n"),
            Err(GoldError::DanglingExclusion { line: 2 })
        );
    }

    #[test]
    fn exclusion_directive() {
        let pairs =
            load_gold("#exclude\tdrops det\nkilled the big man\tPa omokunrin nla\n").unwrap();
        assert_eq!(pairs[0].excluded.as_deref(), Some("drops det"));
    }

    #[test]
    fn builtin_gold_is_perfect() {
        let pairs = load_gold(BUILTIN_GOLD).unwrap();
        assert_eq!(pairs.len(), 9);
        let report = evaluate(&pairs, &Translator::builtin(), false);
        assert_eq!(report.total, 7);
        assert_eq!(report.accuracy(), Some(1.0), "{report}");
        assert_eq!(report.excluded().count(), 2);
    }

    #[test]
    fn forced_mismatch_and_empty() {
        let tr = Translator::builtin();
        let report = evaluate(&load_gold("eat\twrong\n").unwrap(), &tr, false);
        assert_eq!(report.accuracy(), Some(0.0));
        assert!(!report.is_perfect());
        assert!(report.to_string().starts_with("FAIL\teat\twrong\tjẹ"));

        let empty = evaluate(&[], &tr, false);
        assert_eq!(empty.total, 0);
        assert_eq!(empty.accuracy(), None);
        assert!(empty.is_perfect());
        assert!(empty.to_string().contains("n/a"));
    }

    #[test]
    fn strict_diacritics_compares_marks() {
        let tr = Translator::builtin();
        let loose = evaluate(&load_gold("eat\tje\n").unwrap(), &tr, false);
        let strict = evaluate(&load_gold("eat\tje\n").unwrap(), &tr, true);
        assert!(loose.is_perfect());
        assert!(!strict.is_perfect());
        let strict = evaluate(&load_gold("eat\tJẹ\n").unwrap(), &tr, true);
        assert!(strict.is_perfect());
    }
}
