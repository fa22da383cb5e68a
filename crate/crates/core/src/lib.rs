//! The asymmetric power distribution (APD) and a modified score test of
//! goodness-of-fit for an exponential power null with unknown location and
//! scale.
//!
//! The crate is organised in four layers:
//!
//! * [`numerics`]: gamma-family special functions, central and noncentral
//!   chi-square distributions, a gamma sampler and adaptive quadrature.
//! * [`apd`]: the APD itself (density, CDF, quantile, sampler) and the
//!   skewed exponential power reparametrisation.
//! * [`score`]: score vectors, the null maximum likelihood fit of
//!   `(mu, sigma)`, the closed-form Fisher blocks, the test statistic and
//!   local-alternative power.
//! * [`simulate`]: a deterministic, parallel Monte Carlo harness for size,
//!   power and Fisher-matrix cross-checks.
//!
//! ```
//! use apd_score::apd::ApdParams;
//! use apd_score::score::{run_test, NullSpec};
//! use apd_score::simulate::replicate_rng;
//!
//! let params = ApdParams::new(0.5, 2.0, 10.0, 3.0).unwrap();
//! let mut rng = replicate_rng(7, 0);
//! let data = apd_score::apd::sample(&params, 500, &mut rng);
//!
//! let null = NullSpec::new(2.0).unwrap();
//! let report = run_test(&data, &null, 0.05).unwrap();
//! assert!(report.t_stat >= 0.0);
//! assert!((0.0..=1.0).contains(&report.p_value));
//! ```

#![cfg_attr(test, allow(clippy::excessive_precision))]

pub mod apd;
pub mod error;
pub mod numerics;
pub mod score;
pub mod simulate;

pub use error::{Error, Result};
