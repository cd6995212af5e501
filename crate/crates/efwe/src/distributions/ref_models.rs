//! Two-parameter reference families used in model comparison.

use crate::error::{Error, Result};

/// A reference lifetime model: flexible Weibull extension, Weibull, or
/// linear failure rate. All three are proper distributions on `x > 0`
/// (no origin mass) with exactly two parameters.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum RefModel {
    /// `F(x) = 1 - exp(-exp(alpha x - beta / x))`.
    Fwe { alpha: f64, beta: f64 },
    /// `F(x) = 1 - exp(-(x / scale)^shape)`.
    Weibull { scale: f64, shape: f64 },
    /// Hazard `a + b x`, so `F(x) = 1 - exp(-a x - b x^2 / 2)`; `b = 0`
    /// degenerates to the exponential distribution.
    Lfr { a: f64, b: f64 },
}

impl RefModel {
    /// Flexible Weibull extension with `alpha, beta > 0`.
    pub fn fwe(alpha: f64, beta: f64) -> Result<Self> {
        require_positive("alpha", alpha)?;
        require_positive("beta", beta)?;
        Ok(RefModel::Fwe { alpha, beta })
    }

    /// Weibull with `scale, shape > 0`.
    pub fn weibull(scale: f64, shape: f64) -> Result<Self> {
        require_positive("scale", scale)?;
        require_positive("shape", shape)?;
        Ok(RefModel::Weibull { scale, shape })
    }

    /// Linear failure rate with `a > 0`, `b >= 0`.
    pub fn lfr(a: f64, b: f64) -> Result<Self> {
        require_positive("a", a)?;
        if !(b >= 0.0) || !b.is_finite() {
            return Err(Error::domain(format!("b must be finite and >= 0, got {b}")));
        }
        Ok(RefModel::Lfr { a, b })
    }

    /// Human-readable family label.
    pub fn family(&self) -> &'static str {
        match self {
            RefModel::Fwe { .. } => "fwe",
            RefModel::Weibull { .. } => "weibull",
            RefModel::Lfr { .. } => "lfr",
        }
    }

    /// Parameter names in the order of [`RefModel::params`].
    pub fn param_names(&self) -> [&'static str; 2] {
        match self {
            RefModel::Fwe { .. } => ["alpha", "beta"],
            RefModel::Weibull { .. } => ["scale", "shape"],
            RefModel::Lfr { .. } => ["a", "b"],
        }
    }

    /// Parameter values in the order of [`RefModel::param_names`].
    pub fn params(&self) -> [f64; 2] {
        match *self {
            RefModel::Fwe { alpha, beta } => [alpha, beta],
            RefModel::Weibull { scale, shape } => [scale, shape],
            RefModel::Lfr { a, b } => [a, b],
        }
    }

    /// Rebuilds the same family with new parameter values, revalidating.
    pub fn with_params(&self, p: [f64; 2]) -> Result<Self> {
        match self {
            RefModel::Fwe { .. } => RefModel::fwe(p[0], p[1]),
            RefModel::Weibull { .. } => RefModel::weibull(p[0], p[1]),
            RefModel::Lfr { .. } => RefModel::lfr(p[0], p[1]),
        }
    }

    /// Distribution function at `x > 0`.
    pub fn cdf(&self, x: f64) -> Result<f64> {
        check_x(x)?;
        let log_s = self.log_survival_unchecked(x);
        Ok(-log_s.exp_m1())
    }

    /// Survival function at `x > 0`.
    pub fn survival(&self, x: f64) -> Result<f64> {
        check_x(x)?;
        Ok(self.log_survival_unchecked(x).exp())
    }

    fn log_survival_unchecked(&self, x: f64) -> f64 {
        match *self {
            RefModel::Fwe { alpha, beta } => -(alpha * x - beta / x).exp(),
            RefModel::Weibull { scale, shape } => -(x / scale).powf(shape),
            RefModel::Lfr { a, b } => -(a * x + 0.5 * b * x * x),
        }
    }

    /// Natural log of the density at `x > 0`; underflows to `-inf`.
    pub fn log_pdf(&self, x: f64) -> Result<f64> {
        check_x(x)?;
        Ok(match *self {
            RefModel::Fwe { alpha, beta } => {
                let z = alpha * x - beta / x;
                let ratio = beta / (x * x);
                let log_rate = if ratio.is_finite() {
                    (alpha + ratio).ln()
                } else {
                    beta.ln() - 2.0 * x.ln()
                };
                log_rate + z - z.exp()
            }
            RefModel::Weibull { scale, shape } => {
                let t = x / scale;
                (shape / scale).ln() + (shape - 1.0) * t.ln() - t.powf(shape)
            }
            RefModel::Lfr { a, b } => (a + b * x).ln() - a * x - 0.5 * b * x * x,
        })
    }

    /// Density at `x > 0`.
    pub fn pdf(&self, x: f64) -> Result<f64> {
        Ok(self.log_pdf(x)?.exp())
    }
}

fn require_positive(name: &str, v: f64) -> Result<()> {
    if !(v > 0.0) || !v.is_finite() {
        return Err(Error::domain(format!(
            "{name} must be strictly positive and finite, got {v}"
        )));
    }
    Ok(())
}

fn check_x(x: f64) -> Result<()> {
    if !(x > 0.0) || x.is_nan() {
        return Err(Error::domain(format!(
            "evaluation point must be strictly positive, got {x}"
        )));
    }
    Ok(())
}

// ======================================================================
// tests
// ======================================================================
