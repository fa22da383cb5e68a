//! Monte Carlo size of the test under the null.
//!
//! `cargo run --release -p apd-score --example size_study -- 2 2000 5000`
//! takes lambda, n and the replicate count.

use apd_score::simulate::{run_null_study, StudyConfig};

fn main() -> apd_score::Result<()> {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let arg = |i: usize, default: f64| args.get(i).and_then(|s| s.parse().ok()).unwrap_or(default);
    let lambda = arg(0, 2.0);
    let n = arg(1, 2000.0) as usize;
    let reps = arg(2, 2000.0) as usize;

    let report = run_null_study(&StudyConfig::null(lambda, n, reps, 42))?;
    println!("null lambda = {lambda}, n = {n}, reps = {reps}");
    for r in &report.rejection_rates {
        println!("  alpha {:<5} rejection rate {:.4} (se {:.4})", r.alpha, r.rate, r.std_error);
    }
    println!("  KS distance of T to chi-square(2): {:.4}", report.ks_stat);
    Ok(())
}
