//! Converting skewed exponential power parameters to the APD form.

use apd_score::apd::{from_sepd, SepdParams};

fn main() -> apd_score::Result<()> {
    for (gamma, q) in [(1.0, 2.0), (0.5, 1.0), (2.0, 1.5), (1.3, 3.0)] {
        let sp = SepdParams::new(gamma, q, 0.5, 1.2)?;
        let ap = from_sepd(&sp);
        let max_gap = [-3.0, -1.0, 0.0, 0.5, 1.0, 2.5, 5.0]
            .iter()
            .map(|&x| Ok((sp.log_pdf(x)? - ap.log_pdf(x)?).abs()))
            .collect::<apd_score::Result<Vec<f64>>>()?
            .into_iter()
            .fold(0.0, f64::max);
        println!(
            "gamma {gamma:<4} q {q:<4} -> theta1 {:.6} theta2 {} sigma {:.6}  max |log f diff| {max_gap:.1e}",
            ap.theta1(),
            ap.theta2(),
            ap.sigma()
        );
    }
    Ok(())
}
