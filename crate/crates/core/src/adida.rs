//! Aggregate-forecast-disaggregate wrapper: temporal bucketing removes
//! intermittency, a point forecaster predicts the next bucket, and the bucket
//! forecast is spread back over days.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::forecasters::{moving_average3, naive_last, ses};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum AggregationMode {
    /// Consecutive sums aligned so the final bucket ends at the series end;
    /// an incomplete head is dropped.
    NonOverlapping,
    /// Sliding-window sums.
    Overlapping,
}

/// Forecaster applied to the aggregated series (all bucket values).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum InnerForecaster {
    Ses { alpha: f64 },
    Naive,
    MovingAverage3,
}

impl InnerForecaster {
    fn forecast(&self, aggregated: &[f64]) -> Result<f64> {
        match self {
            InnerForecaster::Ses { alpha } => ses(aggregated, *alpha),
            InnerForecaster::Naive => naive_last(aggregated),
            InnerForecaster::MovingAverage3 => moving_average3(aggregated),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AggregationPlan {
    pub bucket_len: usize,
    pub mode: AggregationMode,
    pub inner: InnerForecaster,
}

impl AggregationPlan {
    pub fn new(bucket_len: usize) -> Result<Self> {
        if bucket_len == 0 {
            return Err(Error::Config("bucket_len must be at least 1".into()));
        }
        Ok(Self {
            bucket_len,
            mode: AggregationMode::NonOverlapping,
            inner: InnerForecaster::Ses { alpha: 0.1 },
        })
    }

    pub fn with_inner(mut self, inner: InnerForecaster) -> Self {
        self.inner = inner;
        self
    }

    pub fn with_mode(mut self, mode: AggregationMode) -> Self {
        self.mode = mode;
        self
    }
}

/// Mean inter-demand interval rounded up; 1 for all-zero input. The usual
/// default bucket size when none is configured.
pub fn default_bucket_len(values: &[f64]) -> usize {
    let buckets = values.iter().filter(|&&v| v > 0.0).count();
    if buckets == 0 {
        return 1;
    }
    (values.len() as f64 / buckets as f64).ceil() as usize
}

/// Aggregate a daily series into bucket sums.
pub fn aggregate(values: &[f64], plan: &AggregationPlan) -> Result<Vec<f64>> {
    let b = plan.bucket_len;
    if values.len() < b {
        return Err(Error::SeriesTooShort {
            needed: b,
            found: values.len(),
        });
    }
    match plan.mode {
        AggregationMode::NonOverlapping => {
            let head = values.len() % b;
            Ok(values[head..]
                .chunks_exact(b)
                .map(|chunk| chunk.iter().sum())
                .collect())
        }
        AggregationMode::Overlapping => Ok(values
            .windows(b)
            .map(|window| window.iter().sum())
            .collect()),
    }
}

/// Split one bucket forecast into `bucket_len` dailies whose left-to-right
/// sum reproduces the bucket forecast bit-for-bit: the last day absorbs the
/// rounding left over by equal division.
fn disaggregate_bucket(bucket_forecast: f64, bucket_len: usize) -> Vec<f64> {
    if bucket_len == 1 {
        return vec![bucket_forecast];
    }
    let per_day = bucket_forecast / bucket_len as f64;
    let mut dailies = Vec::with_capacity(bucket_len);
    let mut partial = 0.0;
    for _ in 0..bucket_len - 1 {
        dailies.push(per_day);
        partial += per_day;
    }
    dailies.push(bucket_forecast - partial);
    dailies
}

/// Forecast the next buckets with the inner forecaster and spread each bucket
/// equally over its days, returning exactly `horizon_days` values.
pub fn adida_forecast(
    values: &[f64],
    plan: &AggregationPlan,
    horizon_days: usize,
) -> Result<Vec<f64>> {
    let aggregated = aggregate(values, plan)?;
    let bucket_forecast = plan.inner.forecast(&aggregated)?;
    let mut out = Vec::with_capacity(horizon_days);
    while out.len() < horizon_days {
        out.extend(disaggregate_bucket(bucket_forecast, plan.bucket_len));
    }
    out.truncate(horizon_days);
    Ok(out)
}
