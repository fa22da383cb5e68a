//! RMSE of the null MLE shrinks like 1/sqrt(n).

use apd_score::score::{LocationScale, NullSpec};
use apd_score::simulate::consistency_rmse;

fn main() -> apd_score::Result<()> {
    let kappa = LocationScale::new(1.0, 2.0)?;
    for lambda in [1.0, 1.5, 2.0, 3.0] {
        let null = NullSpec::new(lambda)?;
        let mut prev: Option<(f64, f64)> = None;
        for n in [250, 1000, 4000] {
            let r = consistency_rmse(&null, kappa, n, 400, 5)?;
            let ratio = prev.map(|(m, s)| format!("  ratios {:.2} {:.2}", m / r.rmse_mu, s / r.rmse_sigma));
            println!(
                "lambda {lambda:<4} n {n:<5} rmse mu {:.5} sigma {:.5}{}",
                r.rmse_mu,
                r.rmse_sigma,
                ratio.unwrap_or_default()
            );
            prev = Some((r.rmse_mu, r.rmse_sigma));
        }
    }
    Ok(())
}
