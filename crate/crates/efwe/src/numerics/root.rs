//! Bracketed scalar root finding.

use crate::error::{Error, Result};

/// A bracketing interval `[lo, hi]` with `lo < hi`, both finite.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Bracket {
    lo: f64,
    hi: f64,
}

impl Bracket {
    /// Validates that `lo < hi` and both endpoints are finite.
    pub fn new(lo: f64, hi: f64) -> Result<Self> {
        if !lo.is_finite() || !hi.is_finite() {
            return Err(Error::domain(format!(
                "bracket endpoints must be finite, got [{lo}, {hi}]"
            )));
        }
        if lo >= hi {
            return Err(Error::domain(format!(
                "bracket requires lo < hi, got [{lo}, {hi}]"
            )));
        }
        Ok(Bracket { lo, hi })
    }

    /// Lower endpoint.
    pub fn lo(&self) -> f64 {
        self.lo
    }

    /// Upper endpoint.
    pub fn hi(&self) -> f64 {
        self.hi
    }
}

/// Finds a root of `f` inside `bracket` to absolute tolerance `tol`.
///
/// Uses inverse-quadratic interpolation with a secant fallback, guarded by
/// bisection: whenever three consecutive accepted steps fail to halve the
/// bracket, the next step is a plain bisection. The bracket endpoints must
/// evaluate to opposite (or zero) signs; infinite values keep their sign and
/// force bisection steps. NaN from `f` aborts with an evaluation error.
pub fn find_root<F>(mut f: F, bracket: Bracket, tol: f64) -> Result<f64>
where
    F: FnMut(f64) -> f64,
{
    if !(tol > 0.0) || !tol.is_finite() {
        return Err(Error::domain(format!(
            "tolerance must be positive, got {tol}"
        )));
    }
    let (mut a, mut b) = (bracket.lo, bracket.hi);
    let mut fa = checked(&mut f, a)?;
    let mut fb = checked(&mut f, b)?;
    if fa == 0.0 {
        return Ok(a);
    }
    if fb == 0.0 {
        return Ok(b);
    }
    if fa.signum() == fb.signum() {
        return Err(Error::NoSignChange {
            lo: a,
            hi: b,
            flo: fa,
            fhi: fb,
        });
    }

    // Previous iterate for inverse-quadratic interpolation.
    let (mut c, mut fc) = (a, fa);
    let mut width_at_check = b - a;
    let mut slow_steps = 0u32;

    for _ in 0..200 {
        // Keep |f(b)| <= |f(a)| so b is the best current iterate.
        if fa.abs() < fb.abs() {
            std::mem::swap(&mut a, &mut b);
            std::mem::swap(&mut fa, &mut fb);
        }
        let half = 0.5 * (a - b);
        if half.abs() <= tol || fb == 0.0 {
            return Ok(b);
        }

        let force_bisection = slow_steps >= 3 || !fa.is_finite() || !fb.is_finite();
        let mut step = if force_bisection {
            half
        } else if fa != fc && fb != fc && fc.is_finite() {
            // Inverse quadratic interpolation through (a, fa), (b, fb), (c, fc).
            let q = fb / fc;
            let r = fb / fa;
            let s = fa / fc;
            let p = r * (q * (s - q) * (a - b) - (1.0 - r) * (b - c));
            let d = (s - 1.0) * (r - 1.0) * (q - 1.0);
            p / d
        } else {
            // Secant step.
            fb * (a - b) / (fb - fa)
        };

        // Reject interpolation steps that stall or do not land strictly
        // inside (b, a); magnitude alone is not enough, the direction must
        // point at the far endpoint or the iterate can leave the bracket.
        if !step.is_finite()
            || step == 0.0
            || step.signum() != half.signum()
            || step.abs() >= 2.0 * half.abs()
        {
            step = half;
        }
        if step.abs() < tol {
            step = tol.copysign(half);
        }

        c = b;
        fc = fb;
        let x = b + step;
        let fx = checked(&mut f, x)?;
        if fx == 0.0 {
            return Ok(x);
        }
        if fx.signum() == fb.signum() {
            b = x;
            fb = fx;
        } else {
            a = b;
            fa = fb;
            b = x;
            fb = fx;
        }

        // Track contraction to decide when bisection must take over.
        let width = (a - b).abs();
        if width > 0.5 * width_at_check.abs() {
            slow_steps += 1;
        } else {
            slow_steps = 0;
            width_at_check = width;
        }
    }
    // The loop bound is generous: bisection alone resolves any finite
    // bracket to ~1e-16 relative width within 60 iterations.
    Ok(b)
}

fn checked<F: FnMut(f64) -> f64>(f: &mut F, x: f64) -> Result<f64> {
    let y = f(x);
    if y.is_nan() {
        return Err(Error::NanEvaluation { x });
    }
    Ok(y)
}

// ======================================================================
// tests
// ======================================================================

#[cfg(test)]
mod tests {
    use super::*;
    use crate::error::Error;

    #[test]
    fn quadratic_root() {
        let b = Bracket::new(0.0, 5.0).unwrap();
        let r = find_root(|x| x * x - 4.0, b, 1e-12).unwrap();
        assert!((r - 2.0).abs() < 1e-10);
    }

    #[test]
    fn cosine_fixed_point() {
        // Root of cos(x) - x, checked against an independently bisected value.
        let b = Bracket::new(0.0, 1.0).unwrap();
        let r = find_root(|x| x.cos() - x, b, 1e-13).unwrap();
        assert!((r - 0.739_085_133_215_160_7).abs() < 1e-10);
    }

    #[test]
    fn same_sign_is_error() {
        let b = Bracket::new(3.0, 5.0).unwrap();
        let e = find_root(|x| x * x - 4.0, b, 1e-12).unwrap_err();
        assert!(matches!(e, Error::NoSignChange { .. }));
    }

    #[test]
    fn nan_is_error() {
        let b = Bracket::new(-1.0, 2.0).unwrap();
        let e = find_root(|x| if x > 0.5 { f64::NAN } else { x - 1.0 }, b, 1e-12);
        assert!(matches!(e.unwrap_err(), Error::NanEvaluation { .. }));
    }

    #[test]
    fn endpoint_root_is_returned() {
        let b = Bracket::new(2.0, 5.0).unwrap();
        let r = find_root(|x| x * x - 4.0, b, 1e-12).unwrap();
        assert_eq!(r, 2.0);
    }

    #[test]
    fn infinite_plateau_falls_back_to_bisection() {
        // f jumps to -inf on the right half; sign information still suffices.
        let b = Bracket::new(0.0, 10.0).unwrap();
        let f = |x: f64| if x > 3.0 { f64::NEG_INFINITY } else { 1.0 - x };
        let r = find_root(f, b, 1e-9).unwrap();
        assert!((r - 1.0).abs() < 1e-7);
    }

    #[test]
    fn invalid_bracket_rejected() {
        assert!(Bracket::new(1.0, 1.0).is_err());
        assert!(Bracket::new(2.0, 1.0).is_err());
        assert!(Bracket::new(f64::NEG_INFINITY, 1.0).is_err());
    }
}
