//! Gamma, digamma and trigamma on the positive half-line.
//!
//! All three use the same scheme: shift the argument upward with the
//! functional recurrence until it is large enough for the asymptotic
//! Stirling/Bernoulli expansion, then undo the shift.

use crate::error::{domain, Result};

const HALF_LN_2PI: f64 = 0.918_938_533_204_672_8;

// B_{2k} / (2k (2k - 1)) for k = 1..=8
const STIRLING: [f64; 8] = [
    1.0 / 12.0,
    -1.0 / 360.0,
    1.0 / 1260.0,
    -1.0 / 1680.0,
    1.0 / 1188.0,
    -691.0 / 360_360.0,
    1.0 / 156.0,
    -3617.0 / 122_400.0,
];

// B_{2k} / (2k) for k = 1..=7
const DIGAMMA_ASYM: [f64; 7] = [
    1.0 / 12.0,
    -1.0 / 120.0,
    1.0 / 252.0,
    -1.0 / 240.0,
    1.0 / 132.0,
    -691.0 / 32_760.0,
    1.0 / 12.0,
];

// B_{2k} for k = 1..=7
const TRIGAMMA_ASYM: [f64; 7] = [
    1.0 / 6.0,
    -1.0 / 30.0,
    1.0 / 42.0,
    -1.0 / 30.0,
    5.0 / 66.0,
    -691.0 / 2730.0,
    7.0 / 6.0,
];

const LGAMMA_SHIFT: f64 = 10.0;
const PSI_SHIFT: f64 = 8.0;

fn check_positive(name: &'static str, x: f64) -> Result<()> {
    if x.is_finite() && x > 0.0 {
        Ok(())
    } else {
        Err(domain(name, x, "finite and > 0"))
    }
}

/// `log Γ(x)` for `x > 0`.
pub fn log_gamma(x: f64) -> Result<f64> {
    check_positive("x", x)?;
    Ok(ln_gamma_unchecked(x))
}

pub(crate) fn ln_gamma_unchecked(x: f64) -> f64 {
    let mut z = x;
    let mut prod = 1.0;
    while z < LGAMMA_SHIFT {
        prod *= z;
        z += 1.0;
    }
    let inv = 1.0 / z;
    let inv2 = inv * inv;
    let mut series = 0.0;
    let mut pow = inv;
    for c in STIRLING {
        series += c * pow;
        pow *= inv2;
    }
    (z - 0.5) * z.ln() - z + HALF_LN_2PI + series - prod.ln()
}

/// `Γ(x)` for `x > 0`; overflows to infinity past `x ≈ 171.6`.
pub fn gamma(x: f64) -> Result<f64> {
    log_gamma(x).map(f64::exp)
}

/// Digamma `ψ(x) = d/dx log Γ(x)` for `x > 0`.
pub fn digamma(x: f64) -> Result<f64> {
    check_positive("x", x)?;
    Ok(digamma_unchecked(x))
}

pub(crate) fn digamma_unchecked(x: f64) -> f64 {
    let mut z = x;
    let mut shift = 0.0;
    while z < PSI_SHIFT {
        shift += 1.0 / z;
        z += 1.0;
    }
    let inv2 = 1.0 / (z * z);
    let mut series = 0.0;
    let mut pow = inv2;
    for c in DIGAMMA_ASYM {
        series += c * pow;
        pow *= inv2;
    }
    z.ln() - 0.5 / z - series - shift
}

/// Trigamma `ψ'(x)` for `x > 0`.
pub fn trigamma(x: f64) -> Result<f64> {
    check_positive("x", x)?;
    Ok(trigamma_unchecked(x))
}

pub(crate) fn trigamma_unchecked(x: f64) -> f64 {
    let mut z = x;
    let mut shift = 0.0;
    while z < PSI_SHIFT {
        shift += 1.0 / (z * z);
        z += 1.0;
    }
    let inv = 1.0 / z;
    let inv2 = inv * inv;
    let mut series = 0.0;
    let mut pow = inv2 * inv;
    for c in TRIGAMMA_ASYM {
        series += c * pow;
        pow *= inv2;
    }
    inv + 0.5 * inv2 + series + shift
}
