//! Nonparametric Kaplan-Meier survival next to the fitted parametric
//! curve, the standard visual check behind the goodness-of-fit numbers.

use efwe::inference::{fit_mle, kaplan_meier};
use efwe::{aarset, Family};

fn main() -> Result<(), efwe::Error> {
    let data = aarset();
    let km = kaplan_meier(&data);
    let fit = fit_mle(&data, Family::Efwe)?;

    println!(
        "{:>6} {:>8} {:>7} {:>12} {:>12}",
        "time", "at risk", "events", "km", "fitted"
    );
    for (i, &t) in km.times().iter().enumerate() {
        println!(
            "{t:>6.1} {:>8} {:>7} {:>12.4} {:>12.4}",
            km.at_risk()[i],
            km.events()[i],
            km.surv()[i],
            fit.survival(t)?
        );
    }

    // Step evaluation between event times is right continuous.
    for t in [18.0, 50.0] {
        println!();
        println!(
            "S({t}) = {:.4} (km) vs {:.4} (fitted)",
            km.survival_at(t),
            fit.survival(t)?
        );
    }
    Ok(())
}
