//! Density, CDF, quantiles and sampling for a skewed APD.
//!
//! Run with `cargo run --release -p apd-score --example density_and_sampling`.

use apd_score::apd::{self, ApdParams};
use apd_score::simulate::{ks_distance, replicate_rng};

fn main() -> apd_score::Result<()> {
    let p = ApdParams::new(0.3, 1.5, 1.0, 2.0)?;
    println!("APD(theta1 = 0.3, theta2 = 1.5, mu = 1, sigma = 2), delta = {:.6}", p.delta());

    println!("{:>6} {:>12} {:>12}", "x", "pdf", "cdf");
    for x in [-4.0, -1.0, 0.0, 1.0, 2.0, 4.0, 8.0] {
        println!("{x:>6} {:>12.6} {:>12.6}", p.log_pdf(x)?.exp(), p.cdf(x));
    }
    // the mode sits at mu and carries left mass theta1
    println!("F(mu) = {}", p.cdf(p.mu()));

    println!("{:>6} {:>12}", "u", "quantile");
    for u in [0.01, 0.1, 0.3, 0.5, 0.9, 0.99] {
        println!("{u:>6} {:>12.6}", p.quantile(u)?);
    }

    let mut rng = replicate_rng(2024, 0);
    let draws = apd::sample(&p, 20_000, &mut rng);
    let left = draws.iter().filter(|&&x| x < p.mu()).count() as f64 / draws.len() as f64;
    let ks = ks_distance(&draws, |x| p.cdf(x));
    println!("20000 draws: share below mu = {left:.4}, KS distance = {ks:.4}");
    Ok(())
}
