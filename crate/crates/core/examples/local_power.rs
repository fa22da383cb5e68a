//! Power under local alternatives theta0 + delta / sqrt(n), compared
//! with the noncentral chi-square prediction.

use apd_score::score::{asymptotic_power, noncentrality, NullSpec};
use apd_score::simulate::{run_local_alternative_study, StudyConfig};

fn main() -> apd_score::Result<()> {
    let lambda = 2.0;
    let null = NullSpec::new(lambda)?;
    let n = 2000;
    let reps = 1000;

    println!("{:>14} {:>8} {:>10} {:>10}", "delta", "ncp", "predicted", "empirical");
    for delta in [[0.5, 0.0], [1.0, 0.0], [0.0, 0.5], [1.0, 0.5], [1.5, 1.0]] {
        let mut cfg = StudyConfig::local_alternative(lambda, n, reps, 9, delta);
        cfg.alpha_grid = vec![0.05];
        let report = run_local_alternative_study(&cfg)?;
        println!(
            "{:>14} {:>8.3} {:>10.4} {:>10.4}",
            format!("({}, {})", delta[0], delta[1]),
            noncentrality(delta, &null),
            asymptotic_power(delta, &null, 0.05)?,
            report.rejection_rates[0].rate
        );
    }
    Ok(())
}
