//! Inverted phonetic index: key -> bucket of (original cleaned form, count).
//!
//! Searching runs over keys instead of the full sample, so a lookup touches
//! one bucket instead of every record. Buckets partition the distinct
//! cleaned forms; bucket members stay sorted so that serialization is
//! byte-deterministic and diffable.

use std::collections::BTreeMap;
use std::io;
use std::time::SystemTime;

use serde::Serialize;
use thiserror::Error;

use crate::distance::edit_distance;
use crate::medicine::{medicine_rules, medicine_token_key};
use crate::surname::{surname_key, surname_rules};
use crate::textnorm::{clean_medicine, clean_surname, CleanError, CleanToken};
use crate::{Mode, RuleSet};

/// How [`PhoneticIndex::lookup`] orders bucket members.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Rank {
    /// Bucket order (lexicographic by form).
    #[default]
    None,
    /// Ascending edit distance to the cleaned query, ties lexicographic.
    EditDistance,
}

/// One record the cleaner refused, for the reject side channel.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Reject {
    /// 1-based input line number.
    pub line: usize,
    pub reason: String,
}

/// One lookup hit.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Hit {
    pub form: String,
    pub count: u64,
    /// Present when ranked by edit distance.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub distance: Option<usize>,
}

/// A bucket holding two or more distinct spellings: a deduplication group.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DedupGroup {
    pub key: String,
    /// (form, count), sorted lexicographically by form.
    pub members: Vec<(String, u64)>,
    pub total: u64,
}

#[derive(Debug, Error)]
pub enum BuildError {
    #[error("input line {line}: {source}")]
    Io {
        line: usize,
        #[source]
        source: io::Error,
    },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LookupError {
    #[error(transparent)]
    Clean(#[from] CleanError),
    #[error("no tokens of 4+ characters in the query")]
    EmptyQuery,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("cannot merge a '{left}' index with a '{right}' index")]
pub struct MergeError {
    pub left: Mode,
    pub right: Mode,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("index line {line}: {msg}")]
pub struct ParseError {
    pub line: usize,
    pub msg: String,
}

/// The inverted index plus its build metadata.
///
/// Immutable once built; lookups are safe concurrently. Rebuilding produces
/// a new value. Partial indexes over disjoint slices of a corpus merge with
/// [`PhoneticIndex::merge`]: counts add and member sets union, so merging is
/// associative and commutative.
#[derive(Debug, Clone)]
pub struct PhoneticIndex {
    mode: Mode,
    built_at: SystemTime,
    records: u64,
    /// key -> form -> count
    entries: BTreeMap<String, BTreeMap<String, u64>>,
}

impl PhoneticIndex {
    fn empty(mode: Mode) -> Self {
        PhoneticIndex {
            mode,
            built_at: SystemTime::now(),
            records: 0,
            entries: BTreeMap::new(),
        }
    }

    fn insert(&mut self, key: String, form: String) {
        *self
            .entries
            .entry(key)
            .or_default()
            .entry(form)
            .or_insert(0) += 1;
        self.records += 1;
    }

    pub fn mode(&self) -> Mode {
        self.mode
    }

    /// When this index value was built. Not serialized: the on-disk format
    /// stays byte-identical across rebuilds of the same corpus.
    pub fn built_at(&self) -> SystemTime {
        self.built_at
    }

    /// Number of accepted records (medicine mode counts surviving tokens).
    pub fn record_count(&self) -> u64 {
        self.records
    }

    /// Number of distinct keys.
    pub fn key_count(&self) -> u64 {
        self.entries.len() as u64
    }

    /// Number of distinct cleaned forms.
    pub fn form_count(&self) -> u64 {
        self.entries.values().map(|b| b.len() as u64).sum()
    }

    /// Total character volume of the distinct keys.
    pub fn key_volume(&self) -> u64 {
        self.entries.keys().map(|k| k.chars().count() as u64).sum()
    }

    /// Total character volume of the distinct cleaned forms.
    pub fn form_volume_distinct(&self) -> u64 {
        self.iter().map(|(_, f, _)| f.chars().count() as u64).sum()
    }

    /// Total character volume of the full sample (each form weighted by its
    /// occurrence count).
    pub fn form_volume_total(&self) -> u64 {
        self.iter()
            .map(|(_, f, c)| f.chars().count() as u64 * c)
            .sum()
    }

    pub fn bucket(&self, key: &str) -> Option<&BTreeMap<String, u64>> {
        self.entries.get(key)
    }

    pub fn keys(&self) -> impl Iterator<Item = &str> {
        self.entries.keys().map(String::as_str)
    }

    /// All (key, form, count) triples in serialization order.
    pub fn iter(&self) -> impl Iterator<Item = (&str, &str, u64)> {
        self.entries.iter().flat_map(|(key, bucket)| {
            bucket
                .iter()
                .map(move |(form, &count)| (key.as_str(), form.as_str(), count))
        })
    }

    /// Returns the bucket for the query's key, optionally ranked by edit
    /// distance to the cleaned query. A missing bucket is an empty result,
    /// distinct from a cleaning failure, which is an error.
    pub fn lookup(&self, query: &str, rank: Rank) -> Result<Vec<Hit>, LookupError> {
        let (hits, reference): (Vec<Hit>, Vec<String>) = match self.mode {
            Mode::Surname => {
                let token = clean_surname(query)?;
                let key = surname_key(&token);
                let hits = self
                    .bucket(key.as_str())
                    .map(|bucket| {
                        bucket
                            .iter()
                            .map(|(form, &count)| Hit {
                                form: form.clone(),
                                count,
                                distance: None,
                            })
                            .collect()
                    })
                    .unwrap_or_default();
                (hits, vec![token.text().to_string()])
            }
            Mode::Medicine => {
                let tokens = clean_medicine(query);
                if tokens.is_empty() {
                    return Err(LookupError::EmptyQuery);
                }
                // any-token match: union of the buckets of every token key
                let mut merged: BTreeMap<String, u64> = BTreeMap::new();
                for token in &tokens {
                    let key = medicine_token_key(token);
                    if let Some(bucket) = self.bucket(key.as_str()) {
                        for (form, &count) in bucket {
                            merged.entry(form.clone()).or_insert(count);
                        }
                    }
                }
                let hits = merged
                    .into_iter()
                    .map(|(form, count)| Hit {
                        form,
                        count,
                        distance: None,
                    })
                    .collect();
                (hits, tokens.iter().map(|t| t.text().to_string()).collect())
            }
        };

        let mut hits = hits;
        if rank == Rank::EditDistance {
            for hit in &mut hits {
                let d = reference
                    .iter()
                    .map(|q| edit_distance(&hit.form, q))
                    .min()
                    .unwrap_or(0);
                hit.distance = Some(d);
            }
            hits.sort_by(|a, b| {
                a.distance
                    .cmp(&b.distance)
                    .then_with(|| a.form.cmp(&b.form))
            });
        }
        Ok(hits)
    }

    /// Buckets with two or more distinct forms, largest total first.
    pub fn dedup_groups(&self) -> Vec<DedupGroup> {
        let mut groups: Vec<DedupGroup> = self
            .entries
            .iter()
            .filter(|(_, bucket)| bucket.len() >= 2)
            .map(|(key, bucket)| {
                let members: Vec<(String, u64)> =
                    bucket.iter().map(|(f, &c)| (f.clone(), c)).collect();
                let total = members.iter().map(|(_, c)| c).sum();
                DedupGroup {
                    key: key.clone(),
                    members,
                    total,
                }
            })
            .collect();
        groups.sort_by(|a, b| b.total.cmp(&a.total).then_with(|| a.key.cmp(&b.key)));
        groups
    }

    /// Merges two partial indexes built with the same ruleset: counts add,
    /// member sets union, record counts add.
    pub fn merge(mut self, other: PhoneticIndex) -> Result<PhoneticIndex, MergeError> {
        if self.mode != other.mode {
            return Err(MergeError {
                left: self.mode,
                right: other.mode,
            });
        }
        for (key, bucket) in other.entries {
            let target = self.entries.entry(key).or_default();
            for (form, count) in bucket {
                *target.entry(form).or_insert(0) += count;
            }
        }
        self.records += other.records;
        Ok(self)
    }

    /// Serializes to the text exchange format: two header lines, then one
    /// `key<TAB>form<TAB>count` line per member, sorted by key then form.
    pub fn to_text(&self) -> String {
        let mut out = format!("#ruleset={}\n#records={}\n", self.mode, self.records);
        for (key, form, count) in self.iter() {
            out.push_str(&format!("{key}\t{form}\t{count}\n"));
        }
        out
    }

    /// Parses the [`PhoneticIndex::to_text`] format, validating the record
    /// count against the sum of member counts.
    pub fn from_text(src: &str) -> Result<PhoneticIndex, ParseError> {
        let mut mode: Option<Mode> = None;
        let mut declared: Option<u64> = None;
        let mut entries: BTreeMap<String, BTreeMap<String, u64>> = BTreeMap::new();
        let mut total = 0u64;

        for (n, raw) in src.lines().enumerate() {
            let line_no = n + 1;
            let line = raw.trim_end_matches('\r');
            if line.is_empty() {
                continue;
            }
            if let Some(value) = line.strip_prefix("#ruleset=") {
                mode = Some(value.parse().map_err(|e| ParseError {
                    line: line_no,
                    msg: format!("{e}"),
                })?);
                continue;
            }
            if let Some(value) = line.strip_prefix("#records=") {
                declared = Some(value.parse().map_err(|_| ParseError {
                    line: line_no,
                    msg: format!("bad record count '{value}'"),
                })?);
                continue;
            }
            if line.starts_with('#') {
                continue;
            }
            let mut fields = line.split('\t');
            let (key, form, count) =
                match (fields.next(), fields.next(), fields.next(), fields.next()) {
                    (Some(k), Some(f), Some(c), None) => (k, f, c),
                    _ => {
                        return Err(ParseError {
                            line: line_no,
                            msg: "expected key<TAB>form<TAB>count".to_string(),
                        })
                    }
                };
            let count: u64 = count.parse().map_err(|_| ParseError {
                line: line_no,
                msg: format!("bad count '{count}'"),
            })?;
            let previous = entries
                .entry(key.to_string())
                .or_default()
                .insert(form.to_string(), count);
            if previous.is_some() {
                return Err(ParseError {
                    line: line_no,
                    msg: format!("duplicate member '{form}' under key '{key}'"),
                });
            }
            total += count;
        }

        let mode = mode.ok_or(ParseError {
            line: 1,
            msg: "missing #ruleset= header".to_string(),
        })?;
        if let Some(declared) = declared {
            if declared != total {
                return Err(ParseError {
                    line: 2,
                    msg: format!("header says {declared} records, members sum to {total}"),
                });
            }
        }
        Ok(PhoneticIndex {
            mode,
            built_at: SystemTime::now(),
            records: total,
            entries,
        })
    }
}

/// The rule table behind a mode.
pub fn rules_for(mode: Mode) -> &'static RuleSet {
    match mode {
        Mode::Surname => surname_rules(),
        Mode::Medicine => medicine_rules(),
    }
}

fn key_for(mode: Mode, token: &CleanToken) -> String {
    match mode {
        Mode::Surname => surname_key(token).into_string(),
        Mode::Medicine => medicine_token_key(token).into_string(),
    }
}

/// Builds an index from a line stream. Records the cleaner refuses go to the
/// reject list instead of aborting the batch; I/O failures abort with the
/// offending line number.
pub fn build<I>(lines: I, mode: Mode) -> Result<(PhoneticIndex, Vec<Reject>), BuildError>
where
    I: IntoIterator<Item = io::Result<String>>,
{
    let mut index = PhoneticIndex::empty(mode);
    let mut rejects = Vec::new();

    for (n, line) in lines.into_iter().enumerate() {
        let line_no = n + 1;
        let line = line.map_err(|source| BuildError::Io {
            line: line_no,
            source,
        })?;
        match mode {
            Mode::Surname => match clean_surname(&line) {
                Ok(token) => {
                    let key = key_for(mode, &token);
                    index.insert(key, token.text().to_string());
                }
                Err(err) => rejects.push(Reject {
                    line: line_no,
                    reason: err.to_string(),
                }),
            },
            Mode::Medicine => {
                // zero surviving tokens is a valid outcome, not a reject
                for token in clean_medicine(&line) {
                    let key = key_for(mode, &token);
                    index.insert(key, token.text().to_string());
                }
            }
        }
    }
    Ok((index, rejects))
}

/// [`build`] over in-memory lines; cannot fail.
pub fn build_from_strs<'a, I>(lines: I, mode: Mode) -> (PhoneticIndex, Vec<Reject>)
where
    I: IntoIterator<Item = &'a str>,
{
    build(lines.into_iter().map(|l| Ok(l.to_string())), mode)
        .expect("in-memory build cannot hit I/O errors")
}
