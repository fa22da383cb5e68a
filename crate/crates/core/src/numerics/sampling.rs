use rand::Rng;
use rand_distr::StandardNormal;

/// Draws from `Gamma(shape, scale = 1)`.
///
/// Marsaglia–Tsang squeeze/rejection for `shape >= 1`; smaller shapes are
/// boosted through `Gamma(shape) = Gamma(shape + 1) * U^(1/shape)`.
///
/// # Panics
///
/// Panics if `shape` is not a finite positive number.
pub fn gamma_sample<R: Rng + ?Sized>(shape: f64, rng: &mut R) -> f64 {
    assert!(shape > 0.0 && shape.is_finite(), "gamma shape must be positive, got {shape}");
    if shape < 1.0 {
        let u: f64 = open01(rng);
        return marsaglia_tsang(shape + 1.0, rng) * u.powf(1.0 / shape);
    }
    marsaglia_tsang(shape, rng)
}

fn marsaglia_tsang<R: Rng + ?Sized>(shape: f64, rng: &mut R) -> f64 {
    let d = shape - 1.0 / 3.0;
    let c = 1.0 / (9.0 * d).sqrt();
    loop {
        let z: f64 = rng.sample(StandardNormal);
        let v = 1.0 + c * z;
        if v <= 0.0 {
            continue;
        }
        let v = v * v * v;
        let u: f64 = open01(rng);
        let z2 = z * z;
        if u < 1.0 - 0.0331 * z2 * z2 {
            return d * v;
        }
        if u.ln() < 0.5 * z2 + d * (1.0 - v + v.ln()) {
            return d * v;
        }
    }
}

/// Uniform on the open interval `(0, 1)`.
pub(crate) fn open01<R: Rng + ?Sized>(rng: &mut R) -> f64 {
    loop {
        let u: f64 = rng.random();
        if u > 0.0 {
            return u;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::reg_lower_inc_gamma;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn moments(shape: f64, n: usize, seed: u64) -> (f64, f64) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let draws: Vec<f64> = (0..n).map(|_| gamma_sample(shape, &mut rng)).collect();
        let mean = draws.iter().sum::<f64>() / n as f64;
        let var = draws.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / (n as f64 - 1.0);
        (mean, var)
    }

    #[test]
    fn exponential_mean() {
        let n = 1_000_000;
        let (mean, _) = moments(1.0, n, 1);
        assert!((mean - 1.0).abs() < 3.0 / (n as f64).sqrt());
    }

    #[test]
    fn shape_two_and_a_half_moments() {
        let n = 1_000_000;
        let (mean, var) = moments(2.5, n, 2);
        // Var(X) = 2.5; Var(S^2) ~ (mu4 - sigma^4) / n with mu4 = 3k^2 + 6k.
        let se_mean = (2.5 / n as f64).sqrt();
        let mu4 = 3.0 * 2.5 * 2.5 + 6.0 * 2.5;
        let se_var = ((mu4 - 2.5 * 2.5) / n as f64).sqrt();
        assert!((mean - 2.5).abs() < 4.0 * se_mean, "mean {mean}");
        assert!((var - 2.5).abs() < 4.0 * se_var, "var {var}");
    }

    #[test]
    fn small_shape_matches_cdf() {
        let n = 100_000;
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let mut draws: Vec<f64> = (0..n).map(|_| gamma_sample(0.5, &mut rng)).collect();
        draws.sort_by(f64::total_cmp);
        let mut d: f64 = 0.0;
        for (i, &x) in draws.iter().enumerate() {
            let f = reg_lower_inc_gamma(0.5, x).unwrap();
            d = d.max((f - i as f64 / n as f64).abs()).max(((i + 1) as f64 / n as f64 - f).abs());
        }
        assert!(d < 1.63 / (n as f64).sqrt(), "KS distance {d}");
    }
}
