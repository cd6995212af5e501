//! Analytic and structural properties of the EFWE distribution: mode,
//! median, quantile-based shape measures, raw moments, the moment
//! generating function, and order-statistic densities.

use crate::distributions::EfweParams;
use crate::error::{Error, Result};
use crate::numerics::{find_root, integrate_semi_infinite, Bracket, QuadSpec};

const GRID_LO: f64 = 1e-6;
const GRID_HI: f64 = 1e6;
const GRID_POINTS: usize = 400;

/// A stationary point of the density with its classification.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CriticalPoint {
    /// Location of the stationary point.
    pub x: f64,
    /// Log-density at the point.
    pub log_pdf: f64,
    /// True for a local maximum, false for a local minimum.
    pub is_maximum: bool,
}

/// Result of the mode search: the stationary point with the largest density,
/// a flag marking densities with more than one stationary point, and the
/// full list of critical points found on the search grid.
#[derive(Debug, Clone, PartialEq)]
pub struct ModeResult {
    pub mode: f64,
    pub multimodal: bool,
    pub critical_points: Vec<CriticalPoint>,
}

/// Stationarity function for the log-density. With `z = alpha x - beta / x`,
/// `w = e^z`, and `A = alpha + beta / x^2`,
///
/// ```text
/// psi(x) = -2 beta / x^3 + A^2 (1 + w - lambda w e^w)
/// ```
///
/// shares its sign with the derivative of the log-density (`psi = A * (log
/// f)'`), so its roots are exactly the stationary points of the density.
fn psi(p: &EfweParams, x: f64) -> f64 {
    let z = p.alpha() * x - p.beta() / x;
    let w = z.exp();
    let a = p.alpha() + p.beta() / (x * x);
    let bracket = if w > 700.0 {
        // lambda * w * e^w dwarfs every other term.
        f64::NEG_INFINITY
    } else {
        1.0 + w - p.lambda() * w * w.exp()
    };
    -2.0 * p.beta() / (x * x * x) + a * a * bracket
}

/// Locates the stationary points of the density by a sign scan of the
/// stationarity function over a 400-point geometric grid on `[1e-6, 1e6]`,
/// refining each sign change with the bracketed root finder.
///
/// The returned mode is the stationary point with the largest density. When
/// the density is monotone over the entire grid there is no interior mode
/// and an error is returned.
pub fn mode(params: &EfweParams) -> Result<ModeResult> {
    let ratio = (GRID_HI / GRID_LO).ln() / (GRID_POINTS - 1) as f64;
    let grid: Vec<f64> = (0..GRID_POINTS)
        .map(|i| GRID_LO * (ratio * i as f64).exp())
        .collect();
    let vals: Vec<f64> = grid.iter().map(|&x| psi(params, x)).collect();

    let mut points = Vec::new();
    for i in 0..GRID_POINTS - 1 {
        let (a, b) = (vals[i], vals[i + 1]);
        let root = if a == 0.0 {
            Some((grid[i], vals[i.max(1) - 1] > 0.0))
        } else if a.signum() != b.signum() && b != 0.0 {
            let tol = 1e-10 * grid[i + 1].max(1.0);
            let bracket = Bracket::new(grid[i], grid[i + 1])?;
            Some((find_root(|x| psi(params, x), bracket, tol)?, a > 0.0))
        } else {
            None
        };
        if let Some((x, falling)) = root {
            points.push(CriticalPoint {
                x,
                log_pdf: params.log_pdf(x)?,
                // psi passing from + to - means the density rises then falls.
                is_maximum: falling,
            });
        }
    }
    if points.is_empty() {
        return Err(Error::NoInteriorMode {
            lo: GRID_LO,
            hi: GRID_HI,
        });
    }
    let best = points
        .iter()
        .max_by(|p, q| p.log_pdf.total_cmp(&q.log_pdf))
        .expect("points is non-empty");
    Ok(ModeResult {
        mode: best.x,
        multimodal: points.len() > 1,
        critical_points: points,
    })
}

/// Median of the distribution: `quantile(0.5)`. Exists on the positive
/// support only when the origin mass stays below one half, i.e.
/// `lambda < ln 2`; otherwise the below-support error is propagated.
pub fn median(params: &EfweParams) -> Result<f64> {
    params.quantile(0.5)
}

/// Bowley skewness from the quartiles:
/// `(q.75 - 2 q.5 + q.25) / (q.75 - q.25)`. Lies in `(-1, 1)`.
pub fn bowley_skewness(params: &EfweParams) -> Result<f64> {
    let q1 = params.quantile(0.25)?;
    let q2 = params.quantile(0.5)?;
    let q3 = params.quantile(0.75)?;
    Ok((q3 - 2.0 * q2 + q1) / (q3 - q1))
}

/// Octile-based kurtosis measure
/// `(q.875 - q.625 - q.375 + q.125) / (q.75 - q.25)`.
pub fn moors_kurtosis(params: &EfweParams) -> Result<f64> {
    let e1 = params.quantile(0.125)?;
    let e3 = params.quantile(0.375)?;
    let e5 = params.quantile(0.625)?;
    let e7 = params.quantile(0.875)?;
    let q1 = params.quantile(0.25)?;
    let q3 = params.quantile(0.75)?;
    Ok((e7 - e5 - e3 + e1) / (q3 - q1))
}

/// The `r`-th raw moment `∫ x^r f(x) dx` by adaptive quadrature. Because of
/// the origin mass the zeroth moment is `exp(-lambda)`, not one; moments of
/// the conditional law `X | X > 0` are these values divided by
/// `exp(-lambda)`.
pub fn raw_moment(params: &EfweParams, r: u32) -> Result<f64> {
    let p = *params;
    integrate_semi_infinite(
        move |x| {
            let lp = p.log_pdf_unchecked(x);
            if lp == f64::NEG_INFINITY {
                0.0
            } else {
                (r as f64 * x.ln() + lp).exp()
            }
        },
        &QuadSpec::default(),
    )
}

/// Moment generating function `∫ e^{tx} f(x) dx` by adaptive quadrature.
/// Converges for every real `t` because the survival tail decays doubly
/// exponentially; `mgf(0) = exp(-lambda)` (the origin mass again).
pub fn mgf(params: &EfweParams, t: f64) -> Result<f64> {
    if !t.is_finite() {
        return Err(Error::domain(format!(
            "mgf argument must be finite, got {t}"
        )));
    }
    let p = *params;
    integrate_semi_infinite(
        move |x| {
            let lp = p.log_pdf_unchecked(x);
            if lp == f64::NEG_INFINITY {
                0.0
            } else {
                (t * x + lp).exp()
            }
        },
        &QuadSpec::default(),
    )
}

/// Truncation controls for [`raw_moment_series`]: caps on the three
/// summation indices and the magnitude floor below which a loop is cut off.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SeriesTruncation {
    max_i: usize,
    max_j: usize,
    max_k: usize,
    term_floor: f64,
}

impl SeriesTruncation {
    /// Validates that each cap is at least one and the floor is positive.
    pub fn new(max_i: usize, max_j: usize, max_k: usize, term_floor: f64) -> Result<Self> {
        if max_i < 1 || max_j < 1 || max_k < 1 {
            return Err(Error::domain("series truncation caps must be at least 1"));
        }
        if !(term_floor > 0.0) || !term_floor.is_finite() {
            return Err(Error::domain(format!(
                "term floor must be positive and finite, got {term_floor}"
            )));
        }
        Ok(SeriesTruncation {
            max_i,
            max_j,
            max_k,
            term_floor,
        })
    }

    pub fn max_i(&self) -> usize {
        self.max_i
    }
    pub fn max_j(&self) -> usize {
        self.max_j
    }
    pub fn max_k(&self) -> usize {
        self.max_k
    }
    pub fn term_floor(&self) -> f64 {
        self.term_floor
    }
}

impl Default for SeriesTruncation {
    fn default() -> Self {
        SeriesTruncation {
            max_i: 30,
            max_j: 30,
            max_k: 30,
            term_floor: 1e-14,
        }
    }
}

/// Output of the formal series evaluation: the truncated sum, per-`i` shell
/// sums and cumulative partial sums as diagnostics, the growth ratio of the
/// last two shells, and a divergence flag.
#[derive(Debug, Clone, PartialEq)]
pub struct SeriesResult {
    pub value: f64,
    pub shells: Vec<f64>,
    pub partial_sums: Vec<f64>,
    pub growth_ratio: f64,
    pub diverged: bool,
}

/// Formal closed-form series for the `r`-th raw moment, kept for
/// documentation and comparison only — it does NOT agree with
/// [`raw_moment`] and must not be used as a moment.
///
/// The triple sum evaluated verbatim is
///
/// ```text
/// sum_{i,j,k} (-1)^{i+k} lambda^{i+1} beta^k (i+1)^j (j+1)^k / (i! j! k!)
///   * [ G(r-k+1) / (alpha^{r-k} (j+1)^{r-k+1})
///     + beta G(r-k-1) / (alpha^{r-k-1} (j+1)^{r-k-1}) ]
/// ```
///
/// where a gamma factor at a non-positive integer argument removes that
/// addend. Each loop stops at its cap or after two consecutive blocks
/// smaller in magnitude than the floor (a single-block rule would truncate
/// everything on exact cancellations). The derivation behind this series
/// rests on a divergent integral identity, so the sum settles on values
/// unrelated to the true moments; the diagnostics let callers observe that.
pub fn raw_moment_series(params: &EfweParams, r: u32, trunc: &SeriesTruncation) -> SeriesResult {
    let (alpha, beta, lambda) = (params.alpha(), params.beta(), params.lambda());
    let r = r as i32;
    let mut total = 0.0;
    let mut shells = Vec::new();
    let mut partial_sums = Vec::new();

    let mut coef_i = lambda;
    let mut small_i = 0;
    for i in 0..=trunc.max_i {
        if i > 0 {
            coef_i *= -lambda / i as f64;
        }
        let mut shell = 0.0;
        let mut coef_j = 1.0;
        let mut small_j = 0;
        for j in 0..=trunc.max_j {
            if j > 0 {
                coef_j *= (i as f64 + 1.0) / j as f64;
            }
            let jp1 = j as f64 + 1.0;
            let mut block = 0.0;
            let mut coef_k = 1.0;
            let mut small_k = 0;
            for k in 0..=trunc.max_k {
                if k > 0 {
                    coef_k *= -beta * jp1 / k as f64;
                }
                let k = k as i32;
                let mut bracket = 0.0;
                if r - k >= 0 {
                    bracket += factorial(r - k) / (alpha.powi(r - k) * jp1.powi(r - k + 1));
                }
                if r - k - 2 >= 0 {
                    bracket +=
                        beta * factorial(r - k - 2) / (alpha.powi(r - k - 1) * jp1.powi(r - k - 1));
                }
                let term = coef_i * coef_j * coef_k * bracket;
                block += term;
                if term.abs() < trunc.term_floor {
                    small_k += 1;
                    if small_k >= 2 {
                        break;
                    }
                } else {
                    small_k = 0;
                }
            }
            shell += block;
            if block.abs() < trunc.term_floor {
                small_j += 1;
                if small_j >= 2 {
                    break;
                }
            } else {
                small_j = 0;
            }
        }
        shells.push(shell);
        total += shell;
        partial_sums.push(total);
        if shell.abs() < trunc.term_floor {
            small_i += 1;
            if small_i >= 2 {
                break;
            }
        } else {
            small_i = 0;
        }
    }

    let growth_ratio = match shells.len() {
        0 | 1 => f64::INFINITY,
        n if shells[n - 2] == 0.0 => f64::INFINITY,
        n => (shells[n - 1] / shells[n - 2]).abs(),
    };
    let diverged = !total.is_finite() || growth_ratio >= 1.0;
    SeriesResult {
        value: total,
        shells,
        partial_sums,
        growth_ratio,
        diverged,
    }
}

fn factorial(m: i32) -> f64 {
    (2..=m).map(|v| v as f64).product()
}

/// Rank and sample size for an order-statistic density, `1 <= r <= n`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct OrderStatSpec {
    r: usize,
    n: usize,
}

impl OrderStatSpec {
    /// Validates `1 <= r <= n`.
    pub fn new(r: usize, n: usize) -> Result<Self> {
        if r < 1 || r > n {
            return Err(Error::domain(format!(
                "order statistic rank requires 1 <= r <= n, got r = {r}, n = {n}"
            )));
        }
        Ok(OrderStatSpec { r, n })
    }

    pub fn r(&self) -> usize {
        self.r
    }
    pub fn n(&self) -> usize {
        self.n
    }
}

/// Density of the `r`-th order statistic of `n` independent draws,
///
/// ```text
/// f_{r:n}(x) = f(x) F(x)^{r-1} (1 - F(x))^{n-r} / B(r, n-r+1),
/// ```
///
/// evaluated with log-space powers so extreme ranks stay finite where `F`
/// is near zero or one.
pub fn order_stat_pdf(params: &EfweParams, spec: &OrderStatSpec, x: f64) -> Result<f64> {
    let lp = params.log_pdf(x)?;
    if lp == f64::NEG_INFINITY {
        return Ok(0.0);
    }
    let ls = params.log_survival_unchecked(x);
    let mut acc = lp - ln_beta(spec.r, spec.n - spec.r + 1);
    if spec.r > 1 {
        let log_cdf = (-ls.exp_m1()).ln();
        acc += (spec.r - 1) as f64 * log_cdf;
    }
    if spec.n > spec.r {
        acc += (spec.n - spec.r) as f64 * ls;
    }
    Ok(acc.exp())
}

fn ln_beta(r: usize, s: usize) -> f64 {
    ln_factorial(r - 1) + ln_factorial(s - 1) - ln_factorial(r + s - 1)
}

fn ln_factorial(m: usize) -> f64 {
    (2..=m).map(|v| (v as f64).ln()).sum()
}

// ======================================================================
// tests
// ======================================================================
