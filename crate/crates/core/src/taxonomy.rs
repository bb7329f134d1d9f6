//! Demand pattern statistics and labels.
//!
//! ADI (average demand interval) is the total number of periods divided by
//! the number of periods with positive demand. CV² is the squared coefficient
//! of variation of the nonzero demand sizes. Together they place a series in
//! one of four quadrants (smooth, erratic, intermittent, lumpy); ADI alone
//! decides whether forecasting needs an occurrence classifier in front of the
//! size regressor.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::series::DemandSeries;

/// Four-quadrant demand label by (ADI, CV²) cutoffs.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Quadrant {
    Smooth,
    Erratic,
    Intermittent,
    Lumpy,
}

impl fmt::Display for Quadrant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Quadrant::Smooth => "smooth",
            Quadrant::Erratic => "erratic",
            Quadrant::Intermittent => "intermittent",
            Quadrant::Lumpy => "lumpy",
        };
        f.write_str(s)
    }
}

/// Two-type label by ADI alone: regular demand needs only a size regressor,
/// irregular demand needs an occurrence classifier plus a size regressor.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum StrategyClass {
    /// Regular occurrence; regression alone suffices.
    RegressionOnly,
    /// Irregular occurrence; classification plus regression.
    ClassificationPlusRegression,
}

impl fmt::Display for StrategyClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            StrategyClass::RegressionOnly => f.write_str("R"),
            StrategyClass::ClassificationPlusRegression => f.write_str("C+R"),
        }
    }
}

/// Whether CV² uses the population or sample standard deviation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum StdMode {
    Population,
    Sample,
}

/// Cutoffs and conventions for [`classify`].
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct TaxonomyConfig {
    pub adi_cutoff: f64,
    pub cv2_cutoff: f64,
    pub std_mode: StdMode,
}

impl Default for TaxonomyConfig {
    fn default() -> Self {
        Self {
            adi_cutoff: 1.32,
            cv2_cutoff: 0.49,
            std_mode: StdMode::Population,
        }
    }
}

/// Pattern statistics plus both labels for one series.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PatternProfile {
    pub adi: f64,
    pub cv2: f64,
    pub quadrant: Quadrant,
    pub strategy: StrategyClass,
}

/// Average demand interval: total periods / periods with positive demand.
///
/// Counts every stored period, weekends included; the weekday restriction
/// applies to prediction dates, not to the interval statistic.
pub fn adi(series: &DemandSeries) -> Result<f64> {
    let buckets = series.values().iter().filter(|&&v| v > 0.0).count();
    if buckets == 0 {
        return Err(Error::UndefinedPattern);
    }
    Ok(series.len() as f64 / buckets as f64)
}

/// Squared coefficient of variation of the nonzero demand sizes.
pub fn cv2(series: &DemandSeries, mode: StdMode) -> Result<f64> {
    let sizes: Vec<f64> = series
        .values()
        .iter()
        .copied()
        .filter(|&v| v > 0.0)
        .collect();
    if sizes.is_empty() {
        return Err(Error::UndefinedPattern);
    }
    let n = sizes.len() as f64;
    let mean = sizes.iter().sum::<f64>() / n;
    let ss: f64 = sizes.iter().map(|v| (v - mean) * (v - mean)).sum();
    let var = match mode {
        StdMode::Population => ss / n,
        StdMode::Sample => {
            if sizes.len() < 2 {
                0.0
            } else {
                ss / (n - 1.0)
            }
        }
    };
    Ok(var / (mean * mean))
}

/// Compute ADI and CV² and assign both labels.
///
/// Boundary ties (statistic equal to its cutoff) classify to the irregular /
/// high-variation side.
pub fn classify(series: &DemandSeries, config: &TaxonomyConfig) -> Result<PatternProfile> {
    let adi = adi(series)?;
    let cv2 = cv2(series, config.std_mode)?;
    Ok(profile_from_stats(adi, cv2, config))
}

/// Label precomputed (ADI, CV²) statistics.
pub fn profile_from_stats(adi: f64, cv2: f64, config: &TaxonomyConfig) -> PatternProfile {
    let irregular = adi >= config.adi_cutoff;
    let high_var = cv2 >= config.cv2_cutoff;
    let quadrant = match (irregular, high_var) {
        (true, true) => Quadrant::Lumpy,
        (true, false) => Quadrant::Intermittent,
        (false, true) => Quadrant::Erratic,
        (false, false) => Quadrant::Smooth,
    };
    let strategy = if irregular {
        StrategyClass::ClassificationPlusRegression
    } else {
        StrategyClass::RegressionOnly
    };
    PatternProfile {
        adi,
        cv2,
        quadrant,
        strategy,
    }
}
