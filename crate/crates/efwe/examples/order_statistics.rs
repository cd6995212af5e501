//! Order-statistic densities: extremes, the sample median, and the sum
//! identity tying them back to the parent density.

use efwe::properties::{order_stat_pdf, OrderStatSpec};
use efwe::EfweParams;

fn main() -> Result<(), efwe::Error> {
    let d = EfweParams::new(1.0, 1.0, 0.2)?;
    let n = 7;

    println!("order-statistic densities from a sample of n = {n}:");
    println!(
        "  {:>6} {:>12} {:>12} {:>12}",
        "x", "minimum", "median(4:7)", "maximum"
    );
    let min = OrderStatSpec::new(1, n)?;
    let med = OrderStatSpec::new(4, n)?;
    let max = OrderStatSpec::new(n, n)?;
    for x in [0.5, 1.0, 1.5, 2.0, 2.5, 3.0] {
        println!(
            "  {x:>6.2} {:>12.6} {:>12.6} {:>12.6}",
            order_stat_pdf(&d, &min, x)?,
            order_stat_pdf(&d, &med, x)?,
            order_stat_pdf(&d, &max, x)?
        );
    }

    // Summing the r-th order-statistic density over r recovers n times
    // the parent density at every point.
    let x = 1.3;
    let sum: f64 = (1..=n)
        .map(|r| order_stat_pdf(&d, &OrderStatSpec::new(r, n).unwrap(), x).unwrap())
        .sum();
    let parent = d.pdf(x)?;
    println!();
    println!("sum over r at x = {x}: {sum:.10}");
    println!("n * parent density:   {:.10}", n as f64 * parent);
    Ok(())
}
