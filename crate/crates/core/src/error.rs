//! Error type shared across the crate.

use chrono::NaiveDate;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("negative quantity {quantity} for ({material}, {client}) on {date}")]
    NegativeQuantity {
        date: NaiveDate,
        material: String,
        client: String,
        quantity: f64,
    },

    #[error("record dated {date} falls outside the span {start}..{end}")]
    RecordOutsideSpan {
        date: NaiveDate,
        start: NaiveDate,
        end: NaiveDate,
    },

    #[error("series has no demand buckets; pattern statistics are undefined")]
    UndefinedPattern,

    #[error("no demand history to forecast from")]
    NoForecast,

    #[error("no rows to fit on")]
    EmptyTrainingSet,

    #[error("training rows contain no {missing} examples")]
    SingleClass { missing: &'static str },

    #[error("feature schema mismatch: {detail}")]
    SchemaMismatch { detail: String },

    #[error("metric undefined: {reason}")]
    UndefinedMetric { reason: String },

    #[error("chronology violation: {detail}")]
    Leakage { detail: String },

    #[error("invalid configuration: {0}")]
    Config(String),

    #[error("unknown experiment id '{0}'")]
    UnknownExperiment(String),

    #[error("series too short: need at least {needed} periods, found {found}")]
    SeriesTooShort { needed: usize, found: usize },

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),

    #[error("model file error: {0}")]
    ModelFormat(String),
}

pub type Result<T> = std::result::Result<T, Error>;
