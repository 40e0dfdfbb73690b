//! Unicode normalization and tokenization of input phrases.

use serde::{Deserialize, Serialize};
use unicode_normalization::char::is_combining_mark;
use unicode_normalization::UnicodeNormalization;

/// Punctuation stripped from both ends of every whitespace-separated piece.
pub const STRIPPED_PUNCTUATION: &[char] = &['.', ',', ';', ':', '!', '?', '"', '\'', '(', ')'];

/// A single word of the input phrase.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Token {
    /// Original text with surrounding punctuation removed, case preserved.
    pub surface: String,
    /// Lowercase NFC form used for dictionary lookup, with every character
    /// of [`STRIPPED_PUNCTUATION`] removed.
    pub folded: String,
    /// 0-based position in the phrase.
    pub index: usize,
}

impl Token {
    pub fn new(surface: impl Into<String>, index: usize) -> Self {
        let surface = surface.into();
        let folded = fold(&surface).replace(STRIPPED_PUNCTUATION, "");
        Self {
            surface,
            folded,
            index,
        }
    }

    pub fn is_capitalized(&self) -> bool {
        self.surface.chars().next().is_some_and(char::is_uppercase)
    }
}

/// NFC-compose `text`.
pub fn normalize(text: &str) -> String {
    text.nfc().collect()
}

/// Lowercase and NFC-compose.
pub fn fold(text: &str) -> String {
    normalize(&text.to_lowercase())
}

/// Remove tone marks, under-dots and every other combining mark.
pub fn strip_diacritics(text: &str) -> String {
    text.nfd()
        .filter(|c| !is_combining_mark(*c))
        .nfc()
        .collect()
}

/// Comparison key for evaluation: case-folded, optionally diacritic-free,
/// with whitespace runs collapsed.
pub fn comparison_key(text: &str, keep_diacritics: bool) -> String {
    let folded = fold(text);
    let folded = if keep_diacritics {
        folded
    } else {
        strip_diacritics(&folded)
    };
    folded.split_whitespace().collect::<Vec<_>>().join(" ")
}

/// Split on Unicode whitespace, trim punctuation from each piece and drop
/// pieces that end up empty.
pub fn tokenize(text: &str) -> Vec<Token> {
    let text = normalize(text);
    text.split_whitespace()
        .map(|piece| piece.trim_matches(STRIPPED_PUNCTUATION))
        .filter(|piece| !piece.is_empty())
        .enumerate()
        .map(|(index, surface)| Token::new(surface, index))
        .collect()
}

/// Uppercase the first character of `word`.
pub fn capitalize(word: &str) -> String {
    let mut chars = word.chars();
    match chars.next() {
        Some(first) => first.to_uppercase().chain(chars).collect(),
        None => String::new(),
    }
}
