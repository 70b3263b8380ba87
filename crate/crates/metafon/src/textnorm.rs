//! Cleanup of raw records into tokens ready for phonetic rewriting.
//!
//! Raw surname and medicine-title records arrive with mixed case, stray
//! whitespace, apostrophes, service characters and Latin characters typed in
//! place of visually identical Cyrillic ones. Cleaning is strictly the first
//! stage of the pipeline: every transformation downstream assumes a
//! lowercase, composed, Cyrillic-only token.

use thiserror::Error;
use unicode_normalization::UnicodeNormalization;

/// Apostrophe code points that real keyboards produce; all are removed.
pub const APOSTROPHES: [char; 4] = ['\u{0027}', '\u{2019}', '\u{02BC}', '\u{0060}'];

/// Latin letters that look like Cyrillic ones, with their Cyrillic targets.
/// Folding is idempotent: no target appears in the source set.
pub const HOMOGLYPH_PAIRS: &[(char, char)] = &[
    ('a', 'а'),
    ('b', 'в'),
    ('c', 'с'),
    ('d', 'д'),
    ('e', 'е'),
    ('h', 'н'),
    ('i', 'і'),
    ('k', 'к'),
    ('m', 'м'),
    ('o', 'о'),
    ('p', 'р'),
    ('t', 'т'),
    ('u', 'и'),
    ('x', 'х'),
    ('y', 'у'),
];

/// Letters the cleaner keeps: the Ukrainian alphabet plus the Russian
/// extras `ё ы э ъ` that show up in mixed-language data.
pub fn is_accepted_letter(c: char) -> bool {
    matches!(c, 'а'..='я' | 'ё' | 'є' | 'і' | 'ї' | 'ґ')
}

/// A cleaned, lowercase, homoglyph-folded token.
///
/// `hyphenated` marks double and triple surnames; those are unique enough as
/// spelled and skip phonetic rewriting entirely.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CleanToken {
    text: String,
    hyphenated: bool,
}

impl CleanToken {
    pub fn text(&self) -> &str {
        &self.text
    }

    pub fn hyphenated(&self) -> bool {
        self.hyphenated
    }

    /// Letter count, internal hyphens excluded.
    pub fn letter_len(&self) -> usize {
        self.text.chars().filter(|&c| c != '-').count()
    }
}

impl std::fmt::Display for CleanToken {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.text)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CleanError {
    /// Fewer than two letters survived cleaning; the record is reported to
    /// the reject side channel instead of being indexed.
    #[error("{0} letter(s) left after cleaning, need at least 2")]
    EmptyAfterClean(usize),
}

/// Replaces every Latin character of [`HOMOGLYPH_PAIRS`] with its Cyrillic
/// counterpart. Expects lowercase input; everything else passes through.
pub fn fold_homoglyphs(s: &str) -> String {
    s.chars()
        .map(|c| {
            HOMOGLYPH_PAIRS
                .iter()
                .find(|(latin, _)| *latin == c)
                .map_or(c, |&(_, cyr)| cyr)
        })
        .collect()
}

fn nfc(s: &str) -> String {
    s.nfc().collect()
}

fn is_apostrophe(c: char) -> bool {
    APOSTROPHES.contains(&c)
}

// collapse runs of hyphens and trim them off the edges
fn normalize_hyphens(s: &str) -> String {
    let mut out = String::with_capacity(s.len());
    for c in s.chars() {
        if c == '-' && out.ends_with('-') {
            continue;
        }
        out.push(c);
    }
    out.trim_matches('-').to_string()
}

/// Cleans one surname record.
///
/// Normalizes to composed form, lowercases, strips whitespace, collapses
/// hyphen runs, drops apostrophes, folds Latin homoglyphs and removes every
/// remaining character outside the accepted alphabet. Hyphen normalization
/// runs once more at the end so that deleted junk cannot leave an edge or
/// doubled hyphen behind; this also makes cleaning idempotent.
pub fn clean_surname(raw: &str) -> Result<CleanToken, CleanError> {
    let lower = nfc(raw).to_lowercase();
    let compact: String = lower.chars().filter(|c| !c.is_whitespace()).collect();
    let hyphened = normalize_hyphens(&compact);
    let plain: String = hyphened.chars().filter(|&c| !is_apostrophe(c)).collect();
    let folded = fold_homoglyphs(&plain);
    let kept: String = folded
        .chars()
        .filter(|&c| is_accepted_letter(c) || c == '-')
        .collect();
    let text = normalize_hyphens(&kept);

    let letters = text.chars().filter(|&c| c != '-').count();
    if letters < 2 {
        return Err(CleanError::EmptyAfterClean(letters));
    }
    Ok(CleanToken {
        hyphenated: text.contains('-'),
        text,
    })
}

/// Cleans one medicine title into zero or more tokens.
///
/// Points, commas, hyphens, trademark signs and any other character outside
/// the working alphabet become separators; Latin homoglyphs are folded and
/// the unmapped Latin residue is dropped. Tokens shorter than four
/// characters are discarded, then soft/hard signs and apostrophes are
/// removed from the survivors (in that order: the length gate counts the
/// spelling as written).
pub fn clean_medicine(raw: &str) -> Vec<CleanToken> {
    let lower = nfc(raw).to_lowercase();
    let spaced: String = lower
        .chars()
        .map(|c| {
            if is_accepted_letter(c) || c.is_ascii_lowercase() || is_apostrophe(c) {
                c
            } else {
                ' '
            }
        })
        .collect();
    let folded = fold_homoglyphs(&spaced);

    folded
        .split_whitespace()
        .map(|word| {
            word.chars()
                .filter(|&c| is_accepted_letter(c) || is_apostrophe(c))
                .collect::<String>()
        })
        .filter(|word| word.chars().count() >= 4)
        .map(|word| {
            word.chars()
                .filter(|&c| c != 'ь' && c != 'ъ' && !is_apostrophe(c))
                .collect::<String>()
        })
        .filter(|word| !word.is_empty())
        .map(|text| CleanToken {
            text,
            hyphenated: false,
        })
        .collect()
}
