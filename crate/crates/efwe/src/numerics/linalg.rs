//! Tiny dense symmetric linear algebra for 2x2 and 3x3 systems.
//!
//! Observed information matrices in this crate are at most 3x3, so explicit
//! cofactor inversion plus a Cholesky positive-definiteness check is both
//! faster and easier to audit than a general factorization.

use crate::error::{Error, Result};

/// Cholesky pivots (diagonal of L) for a symmetric 3x3 matrix, or a
/// conditioning error carrying the pivots computed so far with a trailing
/// nonpositive entry marking the failing leading minor.
pub fn cholesky_pivots3(m: &[[f64; 3]; 3]) -> Result<[f64; 3]> {
    let mut piv = [0.0f64; 3];
    let d0 = m[0][0];
    if !(d0 > 0.0) {
        return Err(Error::Conditioning { pivots: vec![d0] });
    }
    piv[0] = d0.sqrt();
    let l10 = m[1][0] / piv[0];
    let l20 = m[2][0] / piv[0];
    let d1 = m[1][1] - l10 * l10;
    if !(d1 > 0.0) {
        return Err(Error::Conditioning {
            pivots: vec![piv[0], d1],
        });
    }
    piv[1] = d1.sqrt();
    let l21 = (m[2][1] - l20 * l10) / piv[1];
    let d2 = m[2][2] - l20 * l20 - l21 * l21;
    if !(d2 > 0.0) {
        return Err(Error::Conditioning {
            pivots: vec![piv[0], piv[1], d2],
        });
    }
    piv[2] = d2.sqrt();
    Ok(piv)
}

/// Inverts a symmetric positive definite 3x3 matrix via cofactors after a
/// Cholesky check confirms positive definiteness.
pub fn invert_spd3(m: &[[f64; 3]; 3]) -> Result<[[f64; 3]; 3]> {
    cholesky_pivots3(m)?;
    let c00 = m[1][1] * m[2][2] - m[1][2] * m[2][1];
    let c01 = m[1][2] * m[2][0] - m[1][0] * m[2][2];
    let c02 = m[1][0] * m[2][1] - m[1][1] * m[2][0];
    let det = m[0][0] * c00 + m[0][1] * c01 + m[0][2] * c02;
    if det == 0.0 || !det.is_finite() {
        return Err(Error::Conditioning { pivots: vec![det] });
    }
    let c11 = m[0][0] * m[2][2] - m[0][2] * m[2][0];
    let c12 = m[0][2] * m[1][0] - m[0][0] * m[2][1];
    let c22 = m[0][0] * m[1][1] - m[0][1] * m[1][0];
    let inv = [
        [c00 / det, c01 / det, c02 / det],
        [c01 / det, c11 / det, c12 / det],
        [c02 / det, c12 / det, c22 / det],
    ];
    Ok(inv)
}

/// Inverts a symmetric positive definite 2x2 matrix.
pub fn invert_spd2(m: &[[f64; 2]; 2]) -> Result<[[f64; 2]; 2]> {
    let d0 = m[0][0];
    if !(d0 > 0.0) {
        return Err(Error::Conditioning { pivots: vec![d0] });
    }
    let det = m[0][0] * m[1][1] - m[0][1] * m[1][0];
    if !(det > 0.0) || !det.is_finite() {
        return Err(Error::Conditioning {
            pivots: vec![d0.sqrt(), det / d0],
        });
    }
    Ok([
        [m[1][1] / det, -m[0][1] / det],
        [-m[1][0] / det, m[0][0] / det],
    ])
}

// ======================================================================
// tests
// ======================================================================


#[cfg(test)]
mod proptests {
    use super::*;
    use proptest::prelude::*;

    proptest! {
        // Random SPD matrices built as L L^T invert to a true inverse.
        #[test]
        fn random_spd_roundtrip(
            l00 in 0.2f64..3.0, l10 in -2.0f64..2.0, l11 in 0.2f64..3.0,
            l20 in -2.0f64..2.0, l21 in -2.0f64..2.0, l22 in 0.2f64..3.0,
        ) {
            let m = [
                [l00 * l00, l00 * l10, l00 * l20],
                [l00 * l10, l10 * l10 + l11 * l11, l10 * l20 + l11 * l21],
                [l00 * l20, l10 * l20 + l11 * l21, l20 * l20 + l21 * l21 + l22 * l22],
            ];
            let inv = invert_spd3(&m).unwrap();
            for (i, mi) in m.iter().enumerate() {
                for j in 0..3 {
                    let mut s = 0.0;
                    for (k, invk) in inv.iter().enumerate() {
                        s += mi[k] * invk[j];
                    }
                    let want = if i == j { 1.0 } else { 0.0 };
                    prop_assert!((s - want).abs() < 1e-8, "({i},{j}) = {s}");
                }
            }
        }
    }
}
