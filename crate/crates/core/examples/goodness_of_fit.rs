//! Fit the symmetric null by maximum likelihood and run the modified score test.
//!
//! Data drawn from a skewed APD should be rejected against the symmetric
//! null with the same exponent; data drawn from the null should not.

use apd_score::apd::{self, ApdParams};
use apd_score::score::{fit_null_mle, run_test, NullSpec};
use apd_score::simulate::replicate_rng;

fn main() -> apd_score::Result<()> {
    let null = NullSpec::new(1.5)?;
    let n = 1000;

    let cases = [
        ("symmetric, theta2 = 1.5", ApdParams::new(0.5, 1.5, 3.0, 2.0)?),
        ("skewed, theta1 = 0.35", ApdParams::new(0.35, 1.5, 3.0, 2.0)?),
        ("heavier tails, theta2 = 1", ApdParams::new(0.5, 1.0, 3.0, 2.0)?),
    ];
    for (i, (label, p)) in cases.iter().enumerate() {
        let data = apd::sample(p, n, &mut replicate_rng(7, i as u64));
        let kappa = fit_null_mle(&data, &null)?;
        let report = run_test(&data, &null, 0.05)?;
        println!("{label}");
        println!("  mu_hat {:.4}  sigma_hat {:.4}", kappa.mu, kappa.sigma);
        println!("  r_n = ({:.4}, {:.4})", report.r_n.c1, report.r_n.c2);
        println!(
            "  T = {:.3}, p = {:.4} -> {}",
            report.t_stat,
            report.p_value,
            if report.rejected { "reject" } else { "keep" }
        );
    }
    Ok(())
}
