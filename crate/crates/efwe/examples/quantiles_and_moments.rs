//! Closed-form quantiles, interior mode search, quantile shape measures,
//! and moments by quadrature next to the formal series evaluator.

use efwe::properties::{
    bowley_skewness, median, mode, moors_kurtosis, raw_moment, raw_moment_series, SeriesTruncation,
};
use efwe::EfweParams;

fn main() -> Result<(), efwe::Error> {
    let d = EfweParams::new(1.0, 1.0, 0.05)?;

    println!("quartiles of EFWE(1, 1, 0.05):");
    for q in [0.25, 0.5, 0.75] {
        println!("  q({q}) = {:.6}", d.quantile(q)?);
    }
    println!("median (closed form): {:.6}", median(&d)?);
    println!("bowley skewness: {:.6}", bowley_skewness(&d)?);
    println!("moors kurtosis: {:.6}", moors_kurtosis(&d)?);

    // The mode search classifies every interior stationary point, which
    // matters for bathtub-shaped settings with several of them.
    let m = mode(&EfweParams::new(0.015, 0.381, 0.076)?)?;
    println!();
    println!("stationary points of the bathtub-scale density:");
    for c in &m.critical_points {
        println!(
            "  x = {:>9.5}  log-density {:>10.5}  {}",
            c.x,
            c.log_pdf,
            if c.is_maximum { "maximum" } else { "minimum" }
        );
    }
    println!("mode = {:.5} (multimodal: {})", m.mode, m.multimodal);

    // Quadrature is the authoritative moment method; the printed series
    // form diverges for most parameter values and is kept only as a
    // documented formal evaluator.
    println!();
    let d = EfweParams::new(1.0, 1.0, 1.0)?;
    for r in [1, 2] {
        println!("E[X^{r}] by quadrature: {:.9}", raw_moment(&d, r)?);
    }
    let series = raw_moment_series(&d, 1, &SeriesTruncation::default());
    println!(
        "series evaluator at r = 1: {:.9} (diverged: {}, growth ratio {:.2})",
        series.value, series.diverged, series.growth_ratio
    );
    Ok(())
}
