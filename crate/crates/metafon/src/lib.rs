//! Phonetic keys and inverted indexes for Ukrainian surnames and for
//! medicine titles mixing Ukrainian and Russian.
//!
//! The pipeline is fixed: clean the record first ([`textnorm`]), then rewrite
//! it with an ordered rule table ([`rewrite`], tables in [`surname`] and
//! [`medicine`]), then collect keys into an inverted index ([`index`]) used
//! for fuzzy lookup, deduplication and the gain/frequency reports
//! ([`stats`]). Spelling variants of one pronunciation land in one bucket:
//!
//! ```
//! use metafon::{surname, textnorm};
//!
//! let a = textnorm::clean_surname("Шевченко")?;
//! let b = textnorm::clean_surname("ШЕВЧЕНКА")?;
//! assert_eq!(surname::surname_key(&a).as_str(), "шевчI");
//! assert_eq!(surname::surname_key(&a), surname::surname_key(&b));
//! # Ok::<(), metafon::textnorm::CleanError>(())
//! ```
//!
//! The report math is generic over the scalar type via [`num::Float`];
//! `f64`-backed aliases live at the crate root.

pub mod distance;
pub mod index;
pub mod medicine;
pub mod num;
pub mod rewrite;
pub mod stats;
pub mod surname;
pub mod textnorm;

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

pub use distance::edit_distance;
pub use index::{PhoneticIndex, Rank};
pub use num::Float;
pub use rewrite::{RewriteRule, RewriteTrace, RuleSet};
pub use textnorm::{clean_medicine, clean_surname, fold_homoglyphs, CleanToken};

/// `f64`-backed report types; the generic forms live in [`stats`].
pub type Gain = stats::Gain<f64>;
pub type OptimizationReport = stats::OptimizationReport<f64>;
pub type FrequencyReport = stats::FrequencyReport<f64>;

/// Which rule table drives cleaning, key generation and indexing.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Mode {
    Surname,
    Medicine,
}

impl Mode {
    pub fn as_str(self) -> &'static str {
        match self {
            Mode::Surname => "surname",
            Mode::Medicine => "medicine",
        }
    }
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("unknown ruleset '{0}', expected 'surname' or 'medicine'")]
pub struct UnknownMode(String);

impl FromStr for Mode {
    type Err = UnknownMode;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "surname" => Ok(Mode::Surname),
            "medicine" => Ok(Mode::Medicine),
            other => Err(UnknownMode(other.to_string())),
        }
    }
}

/// A phonetic key: lowercase Cyrillic letters plus the cluster codes
/// `1`/`2`/`3` and the ending codes `A`..`U`.
///
/// Keys of hyphenated (double and triple) surnames are the cleaned spelling
/// itself, hyphens included; those names are unique enough without
/// reduction.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PhoneticKey(String);

impl PhoneticKey {
    pub(crate) fn new(text: String) -> Self {
        PhoneticKey(text)
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }

    pub fn into_string(self) -> String {
        self.0
    }

    /// Key length in characters.
    pub fn len(&self) -> usize {
        self.0.chars().count()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

impl fmt::Display for PhoneticKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl From<PhoneticKey> for String {
    fn from(key: PhoneticKey) -> String {
        key.0
    }
}

impl AsRef<str> for PhoneticKey {
    fn as_ref(&self) -> &str {
        &self.0
    }
}
