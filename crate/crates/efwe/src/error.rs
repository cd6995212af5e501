//! Crate-wide error type.
//!
//! Every fallible operation in this crate returns [`Result`]. Variants carry
//! enough context to act on the failure: a quadrature failure reports its best
//! estimate, a below-support quantile reports the support threshold, and a
//! conditioning failure reports the pivot diagnostics of the attempted
//! factorization.

use thiserror::Error;

/// Convenience alias used throughout the crate.
pub type Result<T> = std::result::Result<T, Error>;

/// Errors produced by distribution evaluation, numerics, inference, and I/O.
#[derive(Debug, Error)]
pub enum Error {
    /// An argument lies outside the mathematical domain of the operation.
    #[error("domain error: {what}")]
    Domain { what: String },

    /// A probability level falls at or below the mass defect at the origin,
    /// so no quantile exists in the positive support.
    #[error(
        "quantile level {q} does not exceed the origin mass {threshold}; \
         no point of the positive support is reached"
    )]
    BelowSupport { q: f64, threshold: f64 },

    /// Strict-inversion sampling drew a uniform variate inside the origin
    /// mass, where the inverse distribution function is undefined.
    #[error("uniform draw fell inside the origin mass (defect = {defect}); use conditional sampling to avoid this")]
    DefectSample { defect: f64 },

    /// Root bracketing failed: the objective has the same sign at both ends.
    #[error("no sign change on [{lo}, {hi}]: f(lo) = {flo}, f(hi) = {fhi}")]
    NoSignChange {
        lo: f64,
        hi: f64,
        flo: f64,
        fhi: f64,
    },

    /// The integrand or objective produced a NaN during iteration.
    #[error("evaluation produced NaN at x = {x}")]
    NanEvaluation { x: f64 },

    /// Adaptive quadrature exhausted its refinement budget. The best estimate
    /// and its error bound are reported so callers can decide whether the
    /// partial answer is usable.
    #[error("quadrature did not converge: estimate {estimate} with error bound {error_bound}")]
    QuadNonConvergence { estimate: f64, error_bound: f64 },

    /// A symmetric matrix was not positive definite (or was singular), so it
    /// cannot serve as an observed information matrix. Carries the pivots of
    /// the attempted Cholesky factorization; a non-positive entry marks the
    /// failing leading minor.
    #[error("matrix is not positive definite; Cholesky pivots were {pivots:?}")]
    Conditioning { pivots: Vec<f64> },

    /// The density has no stationary point on the search grid; the
    /// distribution is monotone over the scanned range.
    #[error("no interior mode: the density has no stationary point on [{lo}, {hi}]")]
    NoInteriorMode { lo: f64, hi: f64 },

    /// A dataset operation requires at least one observation.
    #[error("dataset is empty")]
    EmptyData,

    /// All observations are identical; scale estimation is impossible.
    #[error("degenerate data: all {n} observations equal {value}")]
    DegenerateData { n: usize, value: f64 },

    /// Too few observations for the requested fit.
    #[error(
        "insufficient data: {n} observations for a {k}-parameter model (need at least {need})"
    )]
    InsufficientData { n: usize, k: usize, need: usize },

    /// The small-sample information criterion divides by n - k - 1 <= 0.
    #[error("aicc undefined: n = {n} observations with k = {k} parameters requires n > k + 1")]
    AiccUndefined { n: usize, k: usize },

    /// A CSV cell failed to parse as a positive time. One-based row numbers
    /// count data rows, excluding any header.
    #[error("csv parse error at data row {row}: {detail}")]
    CsvParse { row: usize, detail: String },

    /// A parsed observation was zero or negative; lifetimes must be positive.
    #[error("nonpositive value {value} at data row {row}: lifetimes must be strictly positive")]
    NonPositiveValue { row: usize, value: f64 },

    /// The requested CSV column does not exist.
    #[error("column {column} not found in csv file")]
    ColumnNotFound { column: String },

    /// Underlying file or stream failure.
    #[error("io error: {0}")]
    Io(#[from] std::io::Error),

    /// Structural CSV failure (ragged rows, bad quoting).
    #[error("csv error: {0}")]
    Csv(#[from] csv::Error),
}

impl Error {
    /// Shorthand for a [`Error::Domain`] with a formatted message.
    pub fn domain(what: impl Into<String>) -> Self {
        Error::Domain { what: what.into() }
    }
}
