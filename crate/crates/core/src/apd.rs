//! The asymmetric power distribution with location and scale.
//!
//! The standard density is
//!
//! ```text
//! f(y | θ) = δ^(1/θ₂) / (2^(1/θ₂) Γ(1 + 1/θ₂)) · exp(-½ δ / A(y) · |y|^θ₂)
//! δ        = 2 θ₁^θ₂ (1-θ₁)^θ₂ / (θ₁^θ₂ + (1-θ₁)^θ₂)
//! A(y)     = [½ + sign(y)(½ - θ₁)]^θ₂
//! ```
//!
//! and `g(x | θ, μ, σ) = f((x - μ)/σ | θ) / σ`. The asymmetry `θ₁` is the
//! probability mass to the left of the mode `μ`.

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{domain, Result};
use crate::numerics::{gamma_sample, inv_reg_gamma, ln_gamma_unchecked, open01, reg_gamma_pq};

/// Full parameter vector `(θ₁, θ₂, μ, σ)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ApdParams {
    theta1: f64,
    theta2: f64,
    mu: f64,
    sigma: f64,
}

impl ApdParams {
    pub fn new(theta1: f64, theta2: f64, mu: f64, sigma: f64) -> Result<Self> {
        if !(theta1 > 0.0 && theta1 < 1.0) {
            return Err(domain("theta1", theta1, "in (0, 1)"));
        }
        if !(theta2 > 0.0 && theta2.is_finite()) {
            return Err(domain("theta2", theta2, "finite and > 0"));
        }
        if !mu.is_finite() {
            return Err(domain("mu", mu, "finite"));
        }
        if !(sigma > 0.0 && sigma.is_finite()) {
            return Err(domain("sigma", sigma, "finite and > 0"));
        }
        Ok(Self {
            theta1,
            theta2,
            mu,
            sigma,
        })
    }

    /// Standard (`μ = 0`, `σ = 1`) member of the family.
    pub fn standard(theta1: f64, theta2: f64) -> Result<Self> {
        Self::new(theta1, theta2, 0.0, 1.0)
    }

    pub fn theta1(&self) -> f64 {
        self.theta1
    }
    pub fn theta2(&self) -> f64 {
        self.theta2
    }
    pub fn mu(&self) -> f64 {
        self.mu
    }
    pub fn sigma(&self) -> f64 {
        self.sigma
    }

    pub fn delta(&self) -> f64 {
        delta_coeff(self.theta1, self.theta2)
    }

    pub fn log_pdf(&self, x: f64) -> Result<f64> {
        log_pdf(x, self)
    }

    pub fn cdf(&self, x: f64) -> f64 {
        cdf(x, self)
    }

    pub fn quantile(&self, u: f64) -> Result<f64> {
        quantile(u, self)
    }
}

/// Which side of the mode an observation falls on.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    Left,
    Mode,
    Right,
}

impl Side {
    /// `sign(0) = 0` maps to [`Side::Mode`].
    pub fn of(y: f64) -> Self {
        if y < 0.0 {
            Side::Left
        } else if y > 0.0 {
            Side::Right
        } else {
            Side::Mode
        }
    }
}

/// `δ_θ = 2 θ₁^θ₂ (1-θ₁)^θ₂ / (θ₁^θ₂ + (1-θ₁)^θ₂)`, a value in `(0, 2)`.
pub fn delta_coeff(theta1: f64, theta2: f64) -> f64 {
    let a = theta1.powf(theta2);
    let b = (1.0 - theta1).powf(theta2);
    2.0 * a * b / (a + b)
}

/// `A_θ(y) = [½ + sign(y)(½ - θ₁)]^θ₂`.
pub fn side_coeff(side: Side, theta1: f64, theta2: f64) -> f64 {
    let base = match side {
        Side::Left => theta1,
        Side::Mode => 0.5,
        Side::Right => 1.0 - theta1,
    };
    base.powf(theta2)
}

fn log_norm_const(delta: f64, theta2: f64) -> f64 {
    let inv = 1.0 / theta2;
    inv * delta.ln() - inv * std::f64::consts::LN_2 - ln_gamma_unchecked(1.0 + inv)
}

/// Log density of `APD(θ, μ, σ)` at `x`.
pub fn log_pdf(x: f64, p: &ApdParams) -> Result<f64> {
    if !x.is_finite() {
        return Err(domain("x", x, "finite"));
    }
    let y = (x - p.mu) / p.sigma;
    let delta = p.delta();
    let a = side_coeff(Side::of(y), p.theta1, p.theta2);
    Ok(log_norm_const(delta, p.theta2) - 0.5 * delta / a * y.abs().powf(p.theta2) - p.sigma.ln())
}

pub fn pdf(x: f64, p: &ApdParams) -> Result<f64> {
    log_pdf(x, p).map(f64::exp)
}

/// Distribution function. With `t = δ/(2A)·|y|^θ₂` each half is a scaled
/// regularised incomplete gamma in `t` with shape `1/θ₂`.
pub fn cdf(x: f64, p: &ApdParams) -> f64 {
    if x.is_nan() {
        return f64::NAN;
    }
    let y = (x - p.mu) / p.sigma;
    let shape = 1.0 / p.theta2;
    let delta = p.delta();
    let side = Side::of(y);
    let t = delta / (2.0 * side_coeff(side, p.theta1, p.theta2)) * y.abs().powf(p.theta2);
    let (lower, upper) = reg_gamma_pq(shape, t);
    match side {
        Side::Left => p.theta1 * upper,
        Side::Mode => p.theta1,
        Side::Right => p.theta1 + (1.0 - p.theta1) * lower,
    }
}

/// Inverse of [`cdf`] for `u ∈ (0, 1)`.
pub fn quantile(u: f64, p: &ApdParams) -> Result<f64> {
    if !(u > 0.0 && u < 1.0) {
        return Err(domain("u", u, "in (0, 1)"));
    }
    let shape = 1.0 / p.theta2;
    let delta = p.delta();
    let (side, lower, upper) = if u < p.theta1 {
        // θ₁·Q(shape, t) = u
        let q = u / p.theta1;
        (Side::Left, 1.0 - q, q)
    } else if u > p.theta1 {
        // θ₁ + (1-θ₁)·P(shape, t) = u
        let lower = (u - p.theta1) / (1.0 - p.theta1);
        let upper = (1.0 - u) / (1.0 - p.theta1);
        (Side::Right, lower, upper)
    } else {
        return Ok(p.mu);
    };
    let t = inv_reg_gamma(shape, lower, upper)?;
    let a = side_coeff(side, p.theta1, p.theta2);
    let magnitude = (2.0 * a * t / delta).powf(1.0 / p.theta2);
    let y = if side == Side::Left { -magnitude } else { magnitude };
    Ok(p.mu + p.sigma * y)
}

/// One draw: pick the side with `P(left) = θ₁`, draw `T ~ Gamma(1/θ₂)` and
/// set `|Y| = (2 A T / δ)^(1/θ₂)`.
pub fn sample_one<R: Rng + ?Sized>(p: &ApdParams, rng: &mut R) -> f64 {
    let left = open01(rng) < p.theta1;
    let side = if left { Side::Left } else { Side::Right };
    let t = gamma_sample(1.0 / p.theta2, rng);
    let a = side_coeff(side, p.theta1, p.theta2);
    let magnitude = (2.0 * a * t / p.delta()).powf(1.0 / p.theta2);
    let y = if left { -magnitude } else { magnitude };
    p.mu + p.sigma * y
}

/// `n` i.i.d. draws from `APD(θ, μ, σ)`.
pub fn sample<R: Rng + ?Sized>(p: &ApdParams, n: usize, rng: &mut R) -> Vec<f64> {
    (0..n).map(|_| sample_one(p, rng)).collect()
}

/// Parameters `(γ, q, m, s)` of the skewed exponential power distribution.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SepdParams {
    gamma: f64,
    q: f64,
    m: f64,
    s: f64,
}

impl SepdParams {
    pub fn new(gamma: f64, q: f64, m: f64, s: f64) -> Result<Self> {
        if !(gamma > 0.0 && gamma.is_finite()) {
            return Err(domain("gamma", gamma, "finite and > 0"));
        }
        if !(q > 0.0 && q.is_finite()) {
            return Err(domain("q", q, "finite and > 0"));
        }
        if !m.is_finite() {
            return Err(domain("m", m, "finite"));
        }
        if !(s > 0.0 && s.is_finite()) {
            return Err(domain("s", s, "finite and > 0"));
        }
        Ok(Self { gamma, q, m, s })
    }

    pub fn gamma(&self) -> f64 {
        self.gamma
    }
    pub fn q(&self) -> f64 {
        self.q
    }
    pub fn m(&self) -> f64 {
        self.m
    }
    pub fn s(&self) -> f64 {
        self.s
    }

    /// Log density in the SEPD's own parametrisation:
    /// `c / s · exp(-½ |γ (x-m)/s|^q)` left of `m` and
    /// `c / s · exp(-½ |(x-m)/(γ s)|^q)` right of it, with
    /// `1/c = 2^(1/q) Γ(1 + 1/q) (γ + 1/γ)`.
    pub fn log_pdf(&self, x: f64) -> Result<f64> {
        if !x.is_finite() {
            return Err(domain("x", x, "finite"));
        }
        let inv_q = 1.0 / self.q;
        let log_c = -(inv_q * std::f64::consts::LN_2
            + ln_gamma_unchecked(1.0 + inv_q)
            + (self.gamma + 1.0 / self.gamma).ln());
        let z = (x - self.m) / self.s;
        let scaled = if x <= self.m {
            self.gamma * z
        } else {
            z / self.gamma
        };
        Ok(log_c - self.s.ln() - 0.5 * scaled.abs().powf(self.q))
    }
}

/// Maps SEPD parameters onto the equivalent APD parameters.
pub fn from_sepd(sp: &SepdParams) -> ApdParams {
    let theta1 = 1.0 / (1.0 + sp.gamma * sp.gamma);
    let theta2 = sp.q;
    let delta = delta_coeff(theta1, theta2);
    let sigma = delta.powf(1.0 / theta2) * (sp.gamma + 1.0 / sp.gamma) * sp.s;
    ApdParams {
        theta1,
        theta2,
        mu: sp.m,
        sigma,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn delta_values() {
        for lambda in [0.5, 1.0, 2.0, 3.7] {
            assert!((delta_coeff(0.5, lambda) - 2f64.powf(-lambda)).abs() < 1e-15);
        }
        assert_eq!(delta_coeff(0.5, 1.0), 0.5);
        assert!((delta_coeff(0.3, 2.0) - 0.0882 / 0.58).abs() < 1e-15);
        assert!((delta_coeff(0.3, 2.0) - 0.152_069_0).abs() < 1e-7);
    }

    #[test]
    fn side_values() {
        assert!((side_coeff(Side::Left, 0.3, 2.0) - 0.09).abs() < 1e-15);
        assert!((side_coeff(Side::Right, 0.3, 2.0) - 0.49).abs() < 1e-15);
        for side in [Side::Left, Side::Mode, Side::Right] {
            assert_eq!(side_coeff(side, 0.5, 2.5), 2f64.powf(-2.5));
        }
        assert_eq!(Side::of(0.0), Side::Mode);
        assert_eq!(Side::of(-0.0), Side::Mode);
    }

    #[test]
    fn log_pdf_special_cases() {
        let laplace = ApdParams::standard(0.5, 1.0).unwrap();
        assert!((log_pdf(0.0, &laplace).unwrap() - 0.25f64.ln()).abs() < 1e-14);
        let normal = ApdParams::standard(0.5, 2.0).unwrap();
        let want = -0.5 * (2.0 * std::f64::consts::PI).ln();
        assert!((log_pdf(0.0, &normal).unwrap() - want).abs() < 1e-14);
        assert!((log_pdf(1.3, &normal).unwrap() - (want - 0.5 * 1.69)).abs() < 1e-14);
        assert!(log_pdf(f64::NAN, &normal).is_err());
    }

    #[test]
    fn location_scale_identity() {
        let std = ApdParams::standard(0.3, 1.5).unwrap();
        let shifted = ApdParams::new(0.3, 1.5, -2.0, 3.5).unwrap();
        for y in [-3.0, -0.2, 0.0, 0.7, 4.0] {
            let lhs = log_pdf(-2.0 + 3.5 * y, &shifted).unwrap();
            let rhs = log_pdf(y, &std).unwrap() - 3.5f64.ln();
            assert!((lhs - rhs).abs() < 1e-13);
        }
    }

    #[test]
    fn cdf_anchors() {
        let p = ApdParams::new(0.3, 1.5, 2.0, 0.5).unwrap();
        assert_eq!(cdf(2.0, &p), 0.3);
        let normal = ApdParams::standard(0.5, 2.0).unwrap();
        assert_eq!(cdf(0.0, &normal), 0.5);
        // Phi(1.959964) from a 40-digit normal CDF
        assert!((cdf(1.959_964, &normal) - 0.975_000_000_903_557_6).abs() < 1e-10);
        assert_eq!(cdf(f64::NEG_INFINITY, &normal), 0.0);
        assert_eq!(cdf(f64::INFINITY, &normal), 1.0);
    }

    #[test]
    fn quantile_anchors() {
        let p = ApdParams::new(0.3, 1.5, 2.0, 0.5).unwrap();
        assert_eq!(quantile(0.3, &p).unwrap(), 2.0);
        let sym = ApdParams::new(0.5, 3.0, -1.25, 2.0).unwrap();
        assert_eq!(quantile(0.5, &sym).unwrap(), -1.25);
        let normal = ApdParams::standard(0.5, 2.0).unwrap();
        assert!((quantile(0.975, &normal).unwrap() - 1.959_963_984_540_054).abs() < 1e-9);
        assert!(quantile(0.0, &normal).is_err());
        assert!(quantile(1.0, &normal).is_err());
    }

    #[test]
    fn quantile_inverts_cdf() {
        for (t1, t2) in [(0.5, 1.0), (0.5, 2.0), (0.3, 1.5), (0.7, 3.0), (0.1, 0.6)] {
            let p = ApdParams::new(t1, t2, 1.0, 2.0).unwrap();
            for i in 1..100 {
                let u = i as f64 / 100.0;
                let x = quantile(u, &p).unwrap();
                assert!((cdf(x, &p) - u).abs() < 1e-9, "({t1}, {t2}) u = {u}");
            }
        }
    }

    #[test]
    fn sepd_mapping() {
        let sym = from_sepd(&SepdParams::new(1.0, 2.3, 0.4, 1.1).unwrap());
        assert_eq!(sym.theta1(), 0.5);
        let lap = from_sepd(&SepdParams::new(1.0, 1.0, 0.0, 1.0).unwrap());
        assert_eq!(lap, ApdParams::standard(0.5, 1.0).unwrap());
        let sp = SepdParams::new(2.0, 1.5, 0.0, 1.0).unwrap();
        let ap = from_sepd(&sp);
        for x in [-1.0, 0.0, 2.0] {
            let a = log_pdf(x, &ap).unwrap().exp();
            let b = sp.log_pdf(x).unwrap().exp();
            assert!((a - b).abs() < 1e-12, "x = {x}");
        }
    }

    #[test]
    fn mass_left_of_mode() {
        let p = ApdParams::new(0.3, 1.7, 5.0, 2.0).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let n = 1_000_000;
        let left = (0..n).filter(|_| sample_one(&p, &mut rng) < 5.0).count();
        let frac = left as f64 / n as f64;
        assert!((frac - 0.3).abs() < 3.0 * (0.21 / n as f64).sqrt(), "fraction {frac}");
    }

    #[test]
    fn laplace_location() {
        let p = ApdParams::new(0.5, 1.0, 5.0, 1.0).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(12);
        let n = 1_000_000;
        let mean = sample(&p, n, &mut rng).iter().sum::<f64>() / n as f64;
        // Var = 2^(2/λ) Γ(3/λ)/Γ(1/λ) = 8 for the unit Laplace member
        assert!((mean - 5.0).abs() < 4.0 * (8.0 / n as f64).sqrt());
    }

    #[test]
    fn empty_sample() {
        let p = ApdParams::standard(0.5, 2.0).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        assert!(sample(&p, 0, &mut rng).is_empty());
    }

    #[test]
    fn rejects_invalid_params() {
        assert!(ApdParams::new(0.0, 1.0, 0.0, 1.0).is_err());
        assert!(ApdParams::new(1.0, 1.0, 0.0, 1.0).is_err());
        assert!(ApdParams::new(0.5, 0.0, 0.0, 1.0).is_err());
        assert!(ApdParams::new(0.5, 1.0, f64::NAN, 1.0).is_err());
        assert!(ApdParams::new(0.5, 1.0, 0.0, 0.0).is_err());
        assert!(SepdParams::new(0.0, 1.0, 0.0, 1.0).is_err());
        assert!(SepdParams::new(1.0, 1.0, 0.0, -1.0).is_err());
    }
}
