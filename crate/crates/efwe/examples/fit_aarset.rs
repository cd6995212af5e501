//! Fits the EFWE family to the built-in device-failure data and prints
//! the complete inference summary.

use efwe::inference::fit_mle;
use efwe::{aarset, Family};

fn main() -> Result<(), efwe::Error> {
    let data = aarset();
    let fit = fit_mle(&data, Family::Efwe)?;

    println!("dataset: {} (n = {})", data.label(), fit.n);
    println!(
        "converged: {} (score norm {:.2e})",
        fit.converged, fit.score_norm
    );
    println!();
    println!("estimates with {}% Wald intervals:", fit.level * 100.0);
    for (i, name) in fit.param_names.iter().enumerate() {
        println!(
            "  {name:<6} = {:>10.6}  [{:.6}, {:.6}]",
            fit.estimates[i], fit.ci[i].0, fit.ci[i].1
        );
    }
    println!();
    println!("log-likelihood: {:.4}", fit.loglik);
    println!("aic  = {:.4}", fit.aic);
    println!("aicc = {:.4}", fit.aicc);
    println!("bic  = {:.4}", fit.bic);
    println!(
        "ks statistic = {:.5}, p = {:.4}",
        fit.ks_stat, fit.ks_pvalue
    );
    println!("defect mass at the origin: {:.5}", fit.defect);

    // The covariance matrix backs the intervals above.
    println!();
    println!("covariance of the estimates:");
    for row in &fit.vcov {
        let cells: Vec<String> = row.iter().map(|v| format!("{v:>12.4e}")).collect();
        println!("  [{}]", cells.join(" "));
    }
    Ok(())
}
