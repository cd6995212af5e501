//! Numerical kernels: root finding, quadrature on the half line,
//! simplex minimization, Kolmogorov tail probabilities, the normal
//! quantile, and small symmetric linear algebra.
//!
//! These are the only pieces of generic numerics in the crate; everything
//! statistical builds on them.

mod linalg;
mod normal;
mod pvalue;
mod quad;
mod root;
mod simplex;

pub use linalg::{cholesky_pivots3, invert_spd2, invert_spd3};
pub use normal::normal_quantile;
pub use pvalue::kolmogorov_pvalue;
pub use quad::{integrate_semi_infinite, QuadSpec};
pub use root::{find_root, Bracket};
pub use simplex::{minimize, minimize_with_step, MinimizeResult};
