//! Classical single-model forecasters and local size estimators: naive,
//! MA(3), most-frequent-value, simple exponential smoothing, jittered
//! resampling, Croston, the Syntetos-Boylan approximation, and TSB.
//!
//! Croston and TSB are exposed as state traces: `state_at(i)` is the state
//! after observing periods `0..=i`, so a rolling forecast origin is a single
//! index lookup and never sees data newer than the origin.

use rand::Rng;
use rand_distr::{Distribution, StandardNormal};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::series::DemandSeries;

fn check_alpha(alpha: f64, name: &str) -> Result<()> {
    if !(alpha > 0.0 && alpha <= 1.0) {
        return Err(Error::Config(format!(
            "{name} must lie in (0, 1], got {alpha}"
        )));
    }
    Ok(())
}

/// Most recent value of the history.
pub fn naive_last(history: &[f64]) -> Result<f64> {
    history.last().copied().ok_or(Error::NoForecast)
}

/// Mean of the last `min(3, len)` values.
pub fn moving_average3(history: &[f64]) -> Result<f64> {
    if history.is_empty() {
        return Err(Error::NoForecast);
    }
    let window = &history[history.len().saturating_sub(3)..];
    Ok(window.iter().sum::<f64>() / window.len() as f64)
}

/// Modal value; ties break to the smallest value for determinism.
pub fn most_frequent(history: &[f64]) -> Result<f64> {
    if history.is_empty() {
        return Err(Error::NoForecast);
    }
    let mut sorted = history.to_vec();
    sorted.sort_by(|a, b| a.partial_cmp(b).expect("finite demand sizes"));
    let mut best = (0usize, f64::NAN);
    let mut i = 0;
    while i < sorted.len() {
        let mut j = i;
        while j < sorted.len() && sorted[j] == sorted[i] {
            j += 1;
        }
        if j - i > best.0 {
            best = (j - i, sorted[i]);
        }
        i = j;
    }
    Ok(best.1)
}

/// Median of the history (mean of the middle pair for even lengths).
pub fn median(history: &[f64]) -> Result<f64> {
    if history.is_empty() {
        return Err(Error::NoForecast);
    }
    let mut sorted = history.to_vec();
    sorted.sort_by(|a, b| a.partial_cmp(b).expect("finite demand sizes"));
    let n = sorted.len();
    Ok(if n % 2 == 1 {
        sorted[n / 2]
    } else {
        0.5 * (sorted[n / 2 - 1] + sorted[n / 2])
    })
}

/// Simple exponential smoothing over the given values: `s_1 = x_1`,
/// `s_t = alpha * x_t + (1 - alpha) * s_{t-1}`; returns the final level.
pub fn ses(history: &[f64], alpha: f64) -> Result<f64> {
    check_alpha(alpha, "alpha")?;
    let mut iter = history.iter();
    let mut level = *iter.next().ok_or(Error::NoForecast)?;
    for &x in iter {
        level = alpha * x + (1.0 - alpha) * level;
    }
    Ok(level)
}

/// Jitter a resampled size: `1 + round(x + z * sqrt(x))`, falling back to the
/// unjittered value when the result would be non-positive.
pub fn jitter(x_star: f64, z: f64) -> f64 {
    let jittered = 1.0 + (x_star + z * x_star.sqrt()).round();
    if jittered <= 0.0 {
        x_star
    } else {
        jittered
    }
}

/// Draw a past size uniformly and jitter it with a standard normal deviate.
pub fn jittered_sample<R: Rng + ?Sized>(history: &[f64], rng: &mut R) -> Result<f64> {
    if history.is_empty() {
        return Err(Error::NoForecast);
    }
    let x_star = history[rng.random_range(0..history.len())];
    let z: f64 = StandardNormal.sample(rng);
    Ok(jitter(x_star, z))
}

/// Demand frequency of the first `prefix_len` periods.
pub fn demand_frequency(values: &[f64], prefix_len: usize) -> f64 {
    let prefix = &values[..prefix_len.min(values.len())];
    if prefix.is_empty() {
        return 0.0;
    }
    prefix.iter().filter(|&&v| v > 0.0).count() as f64 / prefix.len() as f64
}

/// Interval update rule for Croston-family recursions.
///
/// `Standard` smooths the observed inter-demand interval, keeping the
/// interval state interpretable as a periodicity. `AsPrinted` additionally
/// multiplies the interval observation by the demand size, reproducing a
/// formula variant that circulates in print; it is kept only for
/// compatibility checks.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum IntervalUpdate {
    Standard,
    AsPrinted,
}

/// Initialization of the Croston interval state at the first demand.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum CrostonInit {
    /// Interval starts at 1.
    UnitInterval,
    /// Interval starts at the number of periods up to and including the
    /// first demand.
    FirstGap,
}

#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct CrostonParams {
    pub alpha: f64,
    pub update: IntervalUpdate,
    pub init: CrostonInit,
}

impl CrostonParams {
    pub fn new(alpha: f64) -> Self {
        Self {
            alpha,
            update: IntervalUpdate::Standard,
            init: CrostonInit::UnitInterval,
        }
    }
}

/// Croston state: smoothed demand level and smoothed inter-demand interval.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CrostonState {
    pub level: f64,
    pub interval: f64,
}

impl CrostonState {
    /// Flat per-period forecast.
    pub fn forecast(&self) -> f64 {
        self.level / self.interval
    }

    /// Occurrence belief implied by the interval state, clamped to (0, 1].
    pub fn implied_occurrence(&self) -> f64 {
        (1.0 / self.interval).min(1.0)
    }
}

/// Per-period Croston states; `None` before the first demand.
#[derive(Debug, Clone)]
pub struct CrostonTrace {
    states: Vec<Option<CrostonState>>,
    params: CrostonParams,
}

impl CrostonTrace {
    pub fn fit(values: &[f64], params: CrostonParams) -> Result<Self> {
        check_alpha(params.alpha, "alpha")?;
        let alpha = params.alpha;
        let mut states = Vec::with_capacity(values.len());
        let mut state: Option<CrostonState> = None;
        let mut last_demand: Option<usize> = None;
        for (i, &v) in values.iter().enumerate() {
            if v > 0.0 {
                state = Some(match state {
                    None => CrostonState {
                        level: v,
                        interval: match params.init {
                            CrostonInit::UnitInterval => 1.0,
                            CrostonInit::FirstGap => (i + 1) as f64,
                        },
                    },
                    Some(s) => {
                        let q = (i - last_demand.expect("demand seen")) as f64;
                        let interval_obs = match params.update {
                            IntervalUpdate::Standard => q,
                            IntervalUpdate::AsPrinted => q * v,
                        };
                        CrostonState {
                            level: alpha * v + (1.0 - alpha) * s.level,
                            interval: alpha * interval_obs + (1.0 - alpha) * s.interval,
                        }
                    }
                });
                last_demand = Some(i);
            }
            states.push(state);
        }
        Ok(Self { states, params })
    }

    /// State after observing periods `0..=index`.
    pub fn state_at(&self, index: usize) -> Option<CrostonState> {
        self.states.get(index).copied().flatten()
    }

    /// Final state, or an error when the series never had demand.
    pub fn final_state(&self) -> Result<CrostonState> {
        self.states
            .last()
            .copied()
            .flatten()
            .ok_or(Error::NoForecast)
    }

    pub fn params(&self) -> CrostonParams {
        self.params
    }
}

/// Croston's flat forecast for the whole series.
pub fn croston(series: &DemandSeries, alpha: f64) -> Result<f64> {
    let trace = CrostonTrace::fit(series.values(), CrostonParams::new(alpha))?;
    Ok(trace.final_state()?.forecast())
}

/// Syntetos-Boylan approximation: `(1 - alpha/2)` times the Croston forecast.
pub fn sba(series: &DemandSeries, alpha: f64) -> Result<f64> {
    Ok((1.0 - alpha / 2.0) * croston(series, alpha)?)
}

/// TSB state: smoothed demand level and occurrence probability.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TsbState {
    pub level: f64,
    pub probability: f64,
}

impl TsbState {
    pub fn forecast(&self) -> f64 {
        self.level * self.probability
    }
}

/// Per-period TSB states. Unlike Croston, the state advances every period:
/// zero-demand periods decay the occurrence probability.
#[derive(Debug, Clone)]
pub struct TsbTrace {
    states: Vec<TsbState>,
    alpha: f64,
    beta: f64,
}

impl TsbTrace {
    /// Fit over `values`; the occurrence probability is initialized to the
    /// empirical demand frequency of the first `init_prefix_len` periods so
    /// that evaluation windows beyond the training segment never feed the
    /// initialization.
    pub fn fit(values: &[f64], init_prefix_len: usize, alpha: f64, beta: f64) -> Result<Self> {
        check_alpha(alpha, "alpha")?;
        check_alpha(beta, "beta")?;
        if values.is_empty() {
            return Err(Error::SeriesTooShort {
                needed: 1,
                found: 0,
            });
        }
        let mut probability = demand_frequency(values, init_prefix_len.max(1));
        let mut level = 0.0;
        let mut seen_demand = false;
        let mut states = Vec::with_capacity(values.len());
        for &v in values {
            if v > 0.0 {
                level = if seen_demand {
                    alpha * v + (1.0 - alpha) * level
                } else {
                    v
                };
                seen_demand = true;
                probability = beta + (1.0 - beta) * probability;
            } else {
                probability = (1.0 - beta) * probability;
            }
            states.push(TsbState { level, probability });
        }
        Ok(Self {
            states,
            alpha,
            beta,
        })
    }

    pub fn state_at(&self, index: usize) -> Option<TsbState> {
        self.states.get(index).copied()
    }

    pub fn final_state(&self) -> TsbState {
        *self.states.last().expect("non-empty trace")
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn beta(&self) -> f64 {
        self.beta
    }
}

/// TSB per-period forecast after processing the whole series.
pub fn tsb(series: &DemandSeries, alpha: f64, beta: f64) -> Result<f64> {
    let trace = TsbTrace::fit(series.values(), series.len(), alpha, beta)?;
    Ok(trace.final_state().forecast())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::series::series_from_values;
    use approx::assert_relative_eq;
    use chrono::NaiveDate;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn d(s: &str) -> NaiveDate {
        s.parse().unwrap()
    }

    fn series(values: Vec<f64>) -> DemandSeries {
        series_from_values("A", "X", d("2020-01-01"), values)
    }

    #[test]
    fn naive_takes_most_recent() {
        assert_eq!(naive_last(&[3.0, 6.0]).unwrap(), 6.0);
        assert_eq!(naive_last(&[7.0]).unwrap(), 7.0);
        assert_eq!(naive_last(&[2.0, 2.0, 9.0]).unwrap(), 9.0);
        assert!(matches!(naive_last(&[]), Err(Error::NoForecast)));
    }

    #[test]
    fn ma3_window_and_short_history() {
        assert_eq!(moving_average3(&[3.0, 6.0, 9.0]).unwrap(), 6.0);
        assert_eq!(moving_average3(&[4.0]).unwrap(), 4.0);
        assert_eq!(moving_average3(&[1.0, 2.0, 3.0, 10.0]).unwrap(), 5.0);
    }

    #[test]
    fn mfv_mode_with_smallest_tie_break() {
        assert_eq!(most_frequent(&[5.0, 5.0, 8.0]).unwrap(), 5.0);
        assert_eq!(most_frequent(&[2.0, 3.0]).unwrap(), 2.0);
        assert_eq!(most_frequent(&[7.0, 7.0, 7.0]).unwrap(), 7.0);
    }

    #[test]
    fn median_even_and_odd() {
        assert_eq!(median(&[3.0, 1.0, 2.0]).unwrap(), 2.0);
        assert_eq!(median(&[4.0, 8.0]).unwrap(), 6.0);
    }

    #[test]
    fn ses_recursion() {
        assert_eq!(ses(&[10.0], 0.3).unwrap(), 10.0);
        assert_eq!(ses(&[10.0, 20.0], 0.5).unwrap(), 15.0);
        // Hand recursion: s2 = 0.2*8 + 0.8*4 = 4.8; s3 = 0.2*8 + 0.8*4.8 = 5.44.
        assert_relative_eq!(ses(&[4.0, 8.0, 8.0], 0.2).unwrap(), 5.44, max_relative = 1e-12);
    }

    #[test]
    fn ses_alpha_one_is_naive() {
        let h = [4.0, 9.0, 2.0, 6.0];
        assert_eq!(ses(&h, 1.0).unwrap(), naive_last(&h).unwrap());
    }

    #[test]
    fn jitter_formula_and_fallback() {
        assert_eq!(jitter(5.0, 0.0), 6.0);
        // Large negative z drives the jittered value non-positive.
        assert_eq!(jitter(5.0, -10.0), 5.0);
    }

    #[test]
    fn jittered_sample_is_reproducible() {
        let history = [4.0, 9.0, 2.0];
        let a = jittered_sample(&history, &mut ChaCha8Rng::seed_from_u64(7)).unwrap();
        let b = jittered_sample(&history, &mut ChaCha8Rng::seed_from_u64(7)).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn croston_constant_demand_converges_to_value() {
        let s = series(vec![4.0; 20]);
        for alpha in [0.1, 0.5, 0.9] {
            assert_relative_eq!(croston(&s, alpha).unwrap(), 4.0, max_relative = 1e-12);
        }
    }

    #[test]
    fn croston_hand_recursion() {
        // [3, 0, 0, 6] with alpha 0.5: level = 4.5, interval = 0.5*3 + 0.5*1 = 2.
        let s = series(vec![3.0, 0.0, 0.0, 6.0]);
        assert_relative_eq!(croston(&s, 0.5).unwrap(), 2.25, max_relative = 1e-12);
    }

    #[test]
    fn croston_single_demand_uses_initialization() {
        let s = series(vec![0.0, 5.0, 0.0]);
        assert_eq!(croston(&s, 0.3).unwrap(), 5.0);
    }

    #[test]
    fn croston_all_zero_is_no_forecast() {
        let s = series(vec![0.0, 0.0, 0.0]);
        assert!(matches!(croston(&s, 0.2), Err(Error::NoForecast)));
    }

    #[test]
    fn croston_invariant_to_trailing_zeros() {
        let s1 = series(vec![3.0, 0.0, 6.0, 2.0]);
        let s2 = series(vec![3.0, 0.0, 6.0, 2.0, 0.0, 0.0, 0.0]);
        assert_eq!(croston(&s1, 0.4).unwrap(), croston(&s2, 0.4).unwrap());
    }

    #[test]
    fn sba_is_scaled_croston() {
        let s = series(vec![3.0, 0.0, 0.0, 6.0]);
        assert_relative_eq!(sba(&s, 0.5).unwrap(), 0.75 * 2.25, max_relative = 1e-12);
        // Composition example: croston forecast 10 with alpha 0.2 -> 9.
        assert_eq!((1.0 - 0.2 / 2.0) * 10.0, 9.0);
    }

    #[test]
    fn printed_interval_variant_differs() {
        let values = vec![3.0, 0.0, 0.0, 6.0];
        let standard = CrostonTrace::fit(&values, CrostonParams::new(0.5)).unwrap();
        let printed = CrostonTrace::fit(
            &values,
            CrostonParams {
                alpha: 0.5,
                update: IntervalUpdate::AsPrinted,
                init: CrostonInit::UnitInterval,
            },
        )
        .unwrap();
        // Printed: interval = 0.5*(3*6) + 0.5*1 = 9.5.
        assert_relative_eq!(printed.final_state().unwrap().interval, 9.5);
        assert_relative_eq!(standard.final_state().unwrap().interval, 2.0);
    }

    #[test]
    fn tsb_probability_updates() {
        // One zero period from p = 0.5 with beta 0.2 -> 0.4.
        let trace = TsbTrace::fit(&[1.0, 0.0], 2, 0.5, 0.2).unwrap();
        // p0 = 0.5 (one demand in two periods); demand: p = 0.2 + 0.8*0.5 = 0.6;
        // zero: p = 0.8*0.6 = 0.48.
        assert_relative_eq!(trace.state_at(0).unwrap().probability, 0.6);
        assert_relative_eq!(trace.state_at(1).unwrap().probability, 0.48);
    }

    #[test]
    fn tsb_decays_to_zero_over_zero_tail() {
        let mut values = vec![5.0, 0.0, 5.0];
        values.extend(vec![0.0; 40]);
        let trace = TsbTrace::fit(&values, values.len(), 0.2, 0.2).unwrap();
        let mut prev = f64::INFINITY;
        for i in 3..values.len() {
            let f = trace.state_at(i).unwrap().forecast();
            assert!(f < prev, "forecast must strictly decrease over zeros");
            prev = f;
        }
        assert!(prev < 0.01);
    }

    #[test]
    fn tsb_all_zero_is_defined_and_zero() {
        let s = series(vec![0.0; 5]);
        assert_eq!(tsb(&s, 0.2, 0.2).unwrap(), 0.0);
    }

    #[test]
    fn point_forecasts_scale_linearly() {
        let base = vec![3.0, 0.0, 6.0, 0.0, 0.0, 9.0];
        let c = 2.5;
        let scaled: Vec<f64> = base.iter().map(|v| v * c).collect();
        let s1 = series(base.clone());
        let s2 = series(scaled.clone());
        let nz1: Vec<f64> = base.iter().copied().filter(|&v| v > 0.0).collect();
        let nz2: Vec<f64> = scaled.iter().copied().filter(|&v| v > 0.0).collect();
        assert_relative_eq!(croston(&s2, 0.3).unwrap(), c * croston(&s1, 0.3).unwrap());
        assert_relative_eq!(sba(&s2, 0.3).unwrap(), c * sba(&s1, 0.3).unwrap());
        assert_relative_eq!(ses(&nz2, 0.3).unwrap(), c * ses(&nz1, 0.3).unwrap());
        assert_relative_eq!(
            moving_average3(&nz2).unwrap(),
            c * moving_average3(&nz1).unwrap()
        );
        assert_relative_eq!(naive_last(&nz2).unwrap(), c * naive_last(&nz1).unwrap());
    }

    #[test]
    fn implied_occurrence_is_inverse_interval() {
        let s = CrostonState {
            level: 4.0,
            interval: 2.0,
        };
        assert_eq!(s.implied_occurrence(), 0.5);
        let dense = CrostonState {
            level: 4.0,
            interval: 0.5,
        };
        assert_eq!(dense.implied_occurrence(), 1.0);
    }
}
