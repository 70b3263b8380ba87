//! Gain and frequency reports over a built index.
//!
//! The gain of indexed search over a full scan is measured two ways: by row
//! count and by character volume. Both use the same optimization
//! coefficient, `K = (1 - I/N) * 100`, where `I` is the index side and `N`
//! the full sample. The frequency report adds per-form rates in per mille,
//! an ending histogram and a descriptive power-law column.
//!
//! Everything here is generic over the scalar type `F`; the crate root
//! exports `f64`-backed aliases.

use serde::Serialize;
use thiserror::Error;

use crate::index::PhoneticIndex;
use crate::num::Float;
use crate::surname::ENDINGS;
use crate::Mode;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum StatsError {
    #[error("empty sample: nothing to report")]
    DegenerateInput,
    #[error("frequency report requires a surname index, got '{0}'")]
    SurnameIndexRequired(Mode),
}

/// Optimization coefficient of index size `index` against full size `full`,
/// as a percentage. Zero when the index does not shrink the sample at all.
pub fn optimization_coefficient<F: Float>(full: u64, index: u64) -> Result<F, StatsError> {
    if full == 0 {
        return Err(StatsError::DegenerateInput);
    }
    let full = F::from_u64(full).expect("count fits the scalar");
    let index = F::from_u64(index).expect("count fits the scalar");
    let hundred = F::from_u64(100).expect("constant fits");
    Ok((F::one() - index / full) * hundred)
}

/// One gain row: full-sample size vs index size, by rows and by characters.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Gain<F: Float> {
    pub full_count: u64,
    pub index_count: u64,
    pub full_volume: u64,
    pub index_volume: u64,
    /// `(1 - index_count/full_count) * 100`
    pub count_gain_pct: F,
    /// `(1 - index_volume/full_volume) * 100`
    pub volume_gain_pct: F,
}

impl<F: Float> Gain<F> {
    pub fn from_counts(
        full_count: u64,
        index_count: u64,
        full_volume: u64,
        index_volume: u64,
    ) -> Result<Self, StatsError> {
        Ok(Gain {
            full_count,
            index_count,
            full_volume,
            index_volume,
            count_gain_pct: optimization_coefficient(full_count, index_count)?,
            volume_gain_pct: optimization_coefficient(full_volume, index_volume)?,
        })
    }
}

/// Gain measured against the distinct forms (structured sample) and against
/// the raw record multiset (full sample). The index side is the same set of
/// distinct keys in both rows.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct OptimizationReport<F: Float> {
    pub ruleset: String,
    pub structured: Gain<F>,
    pub full: Gain<F>,
}

pub fn optimization_report<F: Float>(
    index: &PhoneticIndex,
) -> Result<OptimizationReport<F>, StatsError> {
    if index.record_count() == 0 {
        return Err(StatsError::DegenerateInput);
    }
    Ok(OptimizationReport {
        ruleset: index.mode().to_string(),
        structured: Gain::from_counts(
            index.form_count(),
            index.key_count(),
            index.form_volume_distinct(),
            index.key_volume(),
        )?,
        full: Gain::from_counts(
            index.record_count(),
            index.key_count(),
            index.form_volume_total(),
            index.key_volume(),
        )?,
    })
}

/// One form with its occurrence count and rate in per mille of all records.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FormRate<F: Float> {
    pub form: String,
    pub count: u64,
    pub per_mille: F,
}

/// Records whose cleaned form ends with one of the compressible endings.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct EndingCount {
    pub ending: String,
    pub code: char,
    pub count: u64,
}

/// One occurrence class: `class_size` distinct forms share `occurrences`
/// records each. `model_per_mille` is the descriptive power model
/// `2*pi*n^(-e)` evaluated at the class size; no fitting is done.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PowerLawRow<F: Float> {
    pub class_size: u64,
    pub occurrences: u64,
    pub observed_per_mille: F,
    pub model_per_mille: F,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FrequencyReport<F: Float> {
    pub records: u64,
    /// Most frequent forms, count descending, capped at the requested size.
    pub top: Vec<FormRate<F>>,
    /// Ending histogram over record counts, descending, zero rows omitted.
    pub endings: Vec<EndingCount>,
    /// Occurrence classes, most frequent first, capped at the requested size.
    pub power_law: Vec<PowerLawRow<F>>,
}

fn per_mille<F: Float>(count: u64, total: u64) -> F {
    let count = F::from_u64(count).expect("count fits the scalar");
    let total = F::from_u64(total).expect("count fits the scalar");
    let thousand = F::from_u64(1000).expect("constant fits");
    count / total * thousand
}

/// Power model `2*pi*n^(-e)` for a class of `n` equally frequent forms.
pub fn power_model<F: Float>(class_size: u64) -> F {
    let two = F::from_u64(2).expect("constant fits");
    let n = F::from_u64(class_size).expect("count fits the scalar");
    two * F::PI() * n.powf(-F::E())
}

/// Frequency statistics for a surname index: top forms by rate, the ending
/// histogram and the occurrence-class table with the power-model column.
pub fn frequency_report<F: Float>(
    index: &PhoneticIndex,
    top: usize,
) -> Result<FrequencyReport<F>, StatsError> {
    if index.mode() != Mode::Surname {
        return Err(StatsError::SurnameIndexRequired(index.mode()));
    }
    let total = index.record_count();
    if total == 0 {
        return Err(StatsError::DegenerateInput);
    }

    let mut forms: Vec<(&str, u64)> = index.iter().map(|(_, form, count)| (form, count)).collect();
    forms.sort_by(|a, b| b.1.cmp(&a.1).then_with(|| a.0.cmp(b.0)));

    let top_rates = forms
        .iter()
        .take(top)
        .map(|&(form, count)| FormRate {
            form: form.to_string(),
            count,
            per_mille: per_mille(count, total),
        })
        .collect();

    // histogram over the cleaned spellings as stored, weighted by count
    let mut endings: Vec<EndingCount> = ENDINGS
        .iter()
        .map(|&(ending, code)| EndingCount {
            ending: ending.to_string(),
            code,
            count: 0,
        })
        .collect();
    for &(form, count) in &forms {
        if let Some(slot) = endings.iter_mut().find(|e| form.ends_with(&e.ending)) {
            slot.count += count;
        }
    }
    let mut endings: Vec<EndingCount> = endings.into_iter().filter(|e| e.count > 0).collect();
    endings.sort_by(|a, b| b.count.cmp(&a.count).then_with(|| a.ending.cmp(&b.ending)));

    // occurrence classes: how many distinct forms share each count
    let mut classes: std::collections::BTreeMap<u64, u64> = std::collections::BTreeMap::new();
    for &(_, count) in &forms {
        *classes.entry(count).or_insert(0) += 1;
    }
    let power_law = classes
        .iter()
        .rev()
        .take(top)
        .map(|(&occurrences, &class_size)| PowerLawRow {
            class_size,
            occurrences,
            observed_per_mille: per_mille(occurrences, total),
            model_per_mille: power_model(class_size),
        })
        .collect();

    Ok(FrequencyReport {
        records: total,
        top: top_rates,
        endings,
        power_law,
    })
}
