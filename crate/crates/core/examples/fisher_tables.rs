//! Closed-form Fisher information and the score covariance, checked
//! against adaptive quadrature.

use apd_score::score::{fisher_blocks, NullSpec};
use apd_score::simulate::quadrature_fisher;

fn main() -> apd_score::Result<()> {
    println!(
        "{:>6} {:>10} {:>10} {:>10} {:>10} {:>10} {:>10} {:>10} {:>10} {:>9}",
        "lambda", "J_t1t1", "J_t2t2", "J_t1mu", "J_t2sig", "J_mumu", "J_sigsig", "Sig11", "Sig22", "quad err"
    );
    for lambda in [1.0, 1.25, 1.5, 2.0, 2.5, 3.0, 4.0] {
        let null = NullSpec::new(lambda)?;
        let f = fisher_blocks(&null);
        let closed = f.to_matrix4();
        let quad = quadrature_fisher(&null)?;
        let err = (0..4)
            .flat_map(|i| (0..4).map(move |j| (i, j)))
            .map(|(i, j)| (closed[i][j] - quad[i][j]).abs())
            .fold(0.0, f64::max);
        println!(
            "{lambda:>6} {:>10.5} {:>10.5} {:>10.5} {:>10.5} {:>10.5} {:>10.5} {:>10.5} {:>10.5} {err:>9.1e}",
            f.j_tt[0][0], f.j_tt[1][1], f.j_tk[0][0], f.j_tk[1][1],
            f.j_kk[0][0], f.j_kk[1][1], f.sigma_mat[0][0], f.sigma_mat[1][1]
        );
    }
    Ok(())
}
