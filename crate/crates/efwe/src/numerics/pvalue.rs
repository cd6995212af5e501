//! Kolmogorov-Smirnov tail probability.

use crate::error::{Error, Result};

/// Two-sided asymptotic p-value for a Kolmogorov-Smirnov statistic `d`
/// observed on a sample of size `n`.
///
/// Applies the small-sample scaling `s = d (sqrt(n) + 0.12 + 0.11 / sqrt(n))`
/// and evaluates the Kolmogorov series `2 sum_{k>=1} (-1)^{k-1} exp(-2 k^2 s^2)`,
/// truncated once terms drop below `1e-12`. The result is clamped to `[0, 1]`.
pub fn kolmogorov_pvalue(d: f64, n: usize) -> Result<f64> {
    if !(0.0..=1.0).contains(&d) || d.is_nan() {
        return Err(Error::domain(format!(
            "ks statistic must lie in [0, 1], got {d}"
        )));
    }
    if n == 0 {
        return Err(Error::domain("sample size must be positive"));
    }
    if d == 0.0 {
        return Ok(1.0);
    }
    let sqrt_n = (n as f64).sqrt();
    let s = d * (sqrt_n + 0.12 + 0.11 / sqrt_n);
    let mut sum = 0.0;
    let mut sign = 1.0;
    for k in 1..=1000u32 {
        let term = (-2.0 * (k as f64 * s).powi(2)).exp();
        sum += sign * term;
        if term < 1e-12 {
            break;
        }
        sign = -sign;
    }
    Ok((2.0 * sum).clamp(0.0, 1.0))
}

// ======================================================================
// tests
// ======================================================================
