//! Special functions, chi-square distributions, gamma variates and
//! adaptive quadrature.

mod chisq;
mod incgamma;
mod quadrature;
mod sampling;
mod special;

pub use chisq::{chi2_cdf, chi2_quantile, chi2_sf, noncentral_chi2_cdf, noncentral_chi2_sf};
pub use incgamma::{inv_reg_gamma, reg_lower_inc_gamma, reg_upper_inc_gamma};
pub use quadrature::{integrate, Domain, Integral, QuadratureSpec};
pub use sampling::gamma_sample;
pub use special::{digamma, gamma, log_gamma, trigamma};

pub(crate) use incgamma::reg_gamma_pq;
pub(crate) use sampling::open01;
pub(crate) use special::{digamma_unchecked, ln_gamma_unchecked, trigamma_unchecked};
