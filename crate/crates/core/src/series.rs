//! Canonical demand data model: raw records, daily-gridded series, and the
//! per-date forecast container shared by every model in the crate.
//!
//! A [`DemandSeries`] holds one value per calendar day between its start and
//! end dates, with zero-fill on days without shipments. Series are immutable
//! after construction and safe to share across worker threads.

use std::collections::BTreeMap;
use std::fmt;

use chrono::{Days, NaiveDate};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// One raw demand observation: a quantity shipped to a client on a day.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DemandRecord {
    pub date: NaiveDate,
    pub material: String,
    pub client: String,
    pub quantity: f64,
}

/// Identifies one (material, client) demand stream.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct SeriesKey {
    pub material: String,
    pub client: String,
}

impl fmt::Display for SeriesKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.material, self.client)
    }
}

/// Inclusive date span used as the gridding window.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct DateSpan {
    pub start: NaiveDate,
    pub end: NaiveDate,
}

impl DateSpan {
    pub fn new(start: NaiveDate, end: NaiveDate) -> Result<Self> {
        if end < start {
            return Err(Error::InvalidInput(format!(
                "span end {end} precedes start {start}"
            )));
        }
        Ok(Self { start, end })
    }

    pub fn len(&self) -> usize {
        (self.end - self.start).num_days() as usize + 1
    }

    pub fn is_empty(&self) -> bool {
        false // construction guarantees start <= end
    }

    pub fn contains(&self, date: NaiveDate) -> bool {
        date >= self.start && date <= self.end
    }
}

/// One (material, client) demand history on a daily grid.
///
/// Invariants: `values.len()` equals the number of days in the span, all
/// values are non-negative and finite, and days without records hold zero.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DemandSeries {
    key: SeriesKey,
    start: NaiveDate,
    values: Vec<f64>,
}

impl DemandSeries {
    pub fn new(key: SeriesKey, start: NaiveDate, values: Vec<f64>) -> Result<Self> {
        if values.is_empty() {
            return Err(Error::InvalidInput(format!("series {key} has no days")));
        }
        for (i, &v) in values.iter().enumerate() {
            if !v.is_finite() || v < 0.0 {
                return Err(Error::NegativeQuantity {
                    date: start + chrono::Duration::days(i as i64),
                    material: key.material.clone(),
                    client: key.client.clone(),
                    quantity: v,
                });
            }
        }
        Ok(Self { key, start, values })
    }

    pub fn key(&self) -> &SeriesKey {
        &self.key
    }

    pub fn start_date(&self) -> NaiveDate {
        self.start
    }

    pub fn end_date(&self) -> NaiveDate {
        self.start + chrono::Duration::days(self.values.len() as i64 - 1)
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn date_at(&self, index: usize) -> NaiveDate {
        self.start + chrono::Duration::days(index as i64)
    }

    pub fn index_of(&self, date: NaiveDate) -> Option<usize> {
        if date < self.start || date > self.end_date() {
            return None;
        }
        Some((date - self.start).num_days() as usize)
    }

    /// Value on `date`, or `None` outside the stored span.
    pub fn value_on(&self, date: NaiveDate) -> Option<f64> {
        self.index_of(date).map(|i| self.values[i])
    }

    /// The strictly positive entries, in chronological order.
    pub fn nonzero(&self) -> Vec<(NaiveDate, f64)> {
        self.values
            .iter()
            .enumerate()
            .filter(|(_, &v)| v > 0.0)
            .map(|(i, &v)| (self.date_at(i), v))
            .collect()
    }

    /// Dates with strictly positive demand.
    pub fn demand_dates(&self) -> Vec<NaiveDate> {
        self.nonzero().into_iter().map(|(d, _)| d).collect()
    }

    /// Copy of this series with every day after `cutoff` dropped.
    ///
    /// Returns `None` when the cutoff precedes the series start.
    pub fn truncated(&self, cutoff: NaiveDate) -> Option<DemandSeries> {
        if cutoff < self.start {
            return None;
        }
        let keep = if cutoff >= self.end_date() {
            self.values.len()
        } else {
            (cutoff - self.start).num_days() as usize + 1
        };
        Some(DemandSeries {
            key: self.key.clone(),
            start: self.start,
            values: self.values[..keep].to_vec(),
        })
    }
}

/// Grid raw records into one series per distinct (material, client) key.
///
/// Same-key-same-day quantities are summed into a single daily bucket; all
/// other days are zero-filled. The output is sorted by key. An empty record
/// set yields an empty result.
pub fn build_series(records: &[DemandRecord], span: DateSpan) -> Result<Vec<DemandSeries>> {
    let mut grids: BTreeMap<SeriesKey, Vec<f64>> = BTreeMap::new();
    for rec in records {
        if !rec.quantity.is_finite() || rec.quantity < 0.0 {
            return Err(Error::NegativeQuantity {
                date: rec.date,
                material: rec.material.clone(),
                client: rec.client.clone(),
                quantity: rec.quantity,
            });
        }
        if !span.contains(rec.date) {
            return Err(Error::RecordOutsideSpan {
                date: rec.date,
                start: span.start,
                end: span.end,
            });
        }
        let key = SeriesKey {
            material: rec.material.clone(),
            client: rec.client.clone(),
        };
        let grid = grids.entry(key).or_insert_with(|| vec![0.0; span.len()]);
        let idx = (rec.date - span.start).num_days() as usize;
        grid[idx] += rec.quantity;
    }
    grids
        .into_iter()
        .map(|(key, values)| DemandSeries::new(key, span.start, values))
        .collect()
}

/// Convert a series back into one record per demand bucket.
pub fn to_records(series: &DemandSeries) -> Vec<DemandRecord> {
    series
        .nonzero()
        .into_iter()
        .map(|(date, quantity)| DemandRecord {
            date,
            material: series.key().material.clone(),
            client: series.key().client.clone(),
            quantity,
        })
        .collect()
}

/// Per-date forecast: occurrence score, thresholded flag, size estimate, and
/// the combined forecast. Invariant: `combined = size_estimate` when the flag
/// is set and zero otherwise.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ForecastPoint {
    pub date: NaiveDate,
    /// Classifier score. Probability in [0, 1] for probabilistic models; raw
    /// model output for models that only rank (flagged by the producer).
    pub occurrence_score: f64,
    pub occurrence_flag: bool,
    pub size_estimate: f64,
    pub combined: f64,
}

impl ForecastPoint {
    pub fn new(date: NaiveDate, score: f64, flag: bool, size_estimate: f64) -> Self {
        Self {
            date,
            occurrence_score: score,
            occurrence_flag: flag,
            size_estimate,
            combined: if flag { size_estimate } else { 0.0 },
        }
    }
}

/// Helper for tests and synthetic code: series spanning `values.len()` days.
pub fn series_from_values(material: &str, client: &str, start: NaiveDate, values: Vec<f64>) -> DemandSeries {
    DemandSeries::new(
        SeriesKey {
            material: material.to_string(),
            client: client.to_string(),
        },
        start,
        values,
    )
    .expect("valid test series")
}

/// First date strictly `days` after `date` (saturating construction).
pub fn add_days(date: NaiveDate, days: u64) -> NaiveDate {
    date.checked_add_days(Days::new(days)).expect("date overflow")
}

/// Date `days` before `date`.
pub fn sub_days(date: NaiveDate, days: u64) -> NaiveDate {
    date.checked_sub_days(Days::new(days)).expect("date underflow")
}
