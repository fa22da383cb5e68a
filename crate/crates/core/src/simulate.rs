//! Monte Carlo harness: empirical size under the null, empirical power
//! under local alternatives `θₙ = θ₀ + δ/√n`, and Monte Carlo / quadrature
//! cross-checks of the Fisher matrix.
//!
//! Every replicate draws from its own ChaCha stream keyed by
//! `(seed, replicate index)`, and per-replicate outputs are aggregated in
//! index order. Reports are therefore a pure function of the configuration,
//! whatever the number of worker threads.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::apd::{self, ApdParams};
use crate::error::{Error, Result};
use crate::numerics::{chi2_cdf, integrate, noncentral_chi2_cdf, Domain, QuadratureSpec};
use crate::score::{
    asymptotic_power, d_kappa, d_theta, fit_null_mle, modified_score, noncentrality, test_statistic,
    LocationScale, Mat4, NullSpec,
};

const FISHER_CHUNK: usize = 1 << 16;

/// Random stream for replicate `index` of a study seeded with `seed`.
pub fn replicate_rng(seed: u64, index: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);
    rng
}

/// Kolmogorov–Smirnov distance between a sample and a reference CDF.
pub fn ks_distance<F: Fn(f64) -> f64>(values: &[f64], cdf: F) -> f64 {
    let mut sorted = values.to_vec();
    sorted.sort_by(f64::total_cmp);
    let n = sorted.len() as f64;
    sorted
        .iter()
        .enumerate()
        .map(|(i, &x)| {
            let f = cdf(x);
            (f - i as f64 / n).max((i + 1) as f64 / n - f)
        })
        .fold(0.0, f64::max)
}

fn with_workers<T: Send>(workers: Option<usize>, job: impl FnOnce() -> T + Send) -> Result<T> {
    match workers {
        None => Ok(job()),
        Some(w) => {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(w.max(1))
                .build()
                .map_err(|e| Error::Config(format!("cannot build thread pool: {e}")))?;
            Ok(pool.install(job))
        }
    }
}

/// Settings of a size or power study.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StudyConfig {
    pub lambda: f64,
    pub n: usize,
    pub reps: usize,
    pub seed: u64,
    pub alpha_grid: Vec<f64>,
    /// Direction of the local alternative; `None` for a null study.
    pub delta: Option<[f64; 2]>,
    /// Location and scale used to generate the data.
    pub kappa: LocationScale,
}

impl StudyConfig {
    pub fn null(lambda: f64, n: usize, reps: usize, seed: u64) -> Self {
        Self {
            lambda,
            n,
            reps,
            seed,
            alpha_grid: vec![0.01, 0.05, 0.10],
            delta: None,
            kappa: LocationScale::default(),
        }
    }

    pub fn local_alternative(lambda: f64, n: usize, reps: usize, seed: u64, delta: [f64; 2]) -> Self {
        Self {
            delta: Some(delta),
            ..Self::null(lambda, n, reps, seed)
        }
    }

    pub fn validate(&self) -> Result<()> {
        NullSpec::new(self.lambda).map_err(|e| Error::Config(e.to_string()))?;
        if self.n < 10 {
            return Err(Error::Config(format!("n = {} must be at least 10", self.n)));
        }
        if self.reps < 100 {
            return Err(Error::Config(format!("reps = {} must be at least 100", self.reps)));
        }
        if self.alpha_grid.is_empty() {
            return Err(Error::Config("alpha grid is empty".into()));
        }
        for (i, &a) in self.alpha_grid.iter().enumerate() {
            if !(a > 0.0 && a < 1.0) {
                return Err(Error::Config(format!("alpha = {a} is not in (0, 1)")));
            }
            if self.alpha_grid[..i].contains(&a) {
                return Err(Error::Config(format!("alpha = {a} is repeated")));
            }
        }
        LocationScale::new(self.kappa.mu, self.kappa.sigma)
            .map_err(|e| Error::Config(e.to_string()))?;
        if let Some(d) = self.delta {
            if !(d[0].is_finite() && d[1].is_finite()) {
                return Err(Error::Config("delta must be finite".into()));
            }
        }
        Ok(())
    }

    /// Data-generating distribution: `θ₀ + δ/√n` with `κ`.
    pub fn generating_params(&self) -> Result<ApdParams> {
        let root_n = (self.n as f64).sqrt();
        let [d1, d2] = self.delta.unwrap_or([0.0, 0.0]);
        let theta1 = 0.5 + d1 / root_n;
        let theta2 = self.lambda + d2 / root_n;
        ApdParams::new(theta1, theta2, self.kappa.mu, self.kappa.sigma).map_err(|e| {
            Error::Config(format!(
                "local alternative (θ₁, θ₂) = ({theta1}, {theta2}) leaves the parameter space: {e}"
            ))
        })
    }
}

/// Empirical rejection rate at one level.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RejectionRate {
    pub alpha: f64,
    pub rate: f64,
    pub std_error: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StudyReport {
    pub config: StudyConfig,
    /// Noncentrality `δᵀΣδ` of the reference distribution (0 for the null).
    pub ncp: f64,
    pub rejection_rates: Vec<RejectionRate>,
    /// KS distance between the statistics and the (noncentral) χ²₂ law.
    pub ks_stat: f64,
    /// Asymptotic power per level; present for local-alternative studies.
    pub predicted_power: Option<Vec<f64>>,
    pub completed_replicates: usize,
    pub replicate_failures: usize,
}

/// Null study: data from `APD((½, λ), κ)`.
pub fn run_null_study(cfg: &StudyConfig) -> Result<StudyReport> {
    if cfg.delta.is_some() {
        return Err(Error::Config("null study must not set delta".into()));
    }
    run_study(cfg)
}

/// Local-alternative study: data from `APD(θ₀ + δ/√n, κ)`.
pub fn run_local_alternative_study(cfg: &StudyConfig) -> Result<StudyReport> {
    if cfg.delta.is_none() {
        return Err(Error::Config("local-alternative study requires delta".into()));
    }
    run_study(cfg)
}

/// Runs either kind of study on the current rayon pool.
pub fn run_study(cfg: &StudyConfig) -> Result<StudyReport> {
    run_study_with_workers(cfg, None)
}

/// Runs a study on a dedicated pool of `workers` threads (`None` uses the
/// global pool). The report does not depend on the worker count.
pub fn run_study_with_workers(cfg: &StudyConfig, workers: Option<usize>) -> Result<StudyReport> {
    cfg.validate()?;
    let null = NullSpec::new(cfg.lambda)?;
    let params = cfg.generating_params()?;

    let stats: Vec<Option<f64>> = with_workers(workers, || {
        (0..cfg.reps)
            .into_par_iter()
            .map(|r| {
                let mut rng = replicate_rng(cfg.seed, r as u64);
                let data = apd::sample(&params, cfg.n, &mut rng);
                let kappa = fit_null_mle(&data, &null).ok()?;
                let r_n = modified_score(&data, &null, &kappa).ok()?;
                let t = test_statistic(&r_n, cfg.n, &null).t_stat;
                t.is_finite().then_some(t)
            })
            .collect()
    })?;

    let t_values: Vec<f64> = stats.iter().flatten().copied().collect();
    let failures = cfg.reps - t_values.len();
    if t_values.is_empty() {
        return Err(Error::Numeric("every replicate failed".into()));
    }
    let m = t_values.len() as f64;

    let rejection_rates = cfg
        .alpha_grid
        .iter()
        .map(|&alpha| {
            let critical = crate::numerics::chi2_quantile(1.0 - alpha, 2)?;
            let hits = t_values.iter().filter(|&&t| t > critical).count();
            let rate = hits as f64 / m;
            Ok(RejectionRate {
                alpha,
                rate,
                std_error: (rate * (1.0 - rate) / m).sqrt(),
            })
        })
        .collect::<Result<Vec<_>>>()?;

    let delta = cfg.delta.unwrap_or([0.0, 0.0]);
    let ncp = noncentrality(delta, &null);
    let ks_stat = if ncp == 0.0 {
        ks_distance(&t_values, |t| chi2_cdf(t, 2).unwrap_or(f64::NAN))
    } else {
        ks_distance(&t_values, |t| noncentral_chi2_cdf(t, 2, ncp).unwrap_or(f64::NAN))
    };
    let predicted_power = match cfg.delta {
        Some(d) => Some(
            cfg.alpha_grid
                .iter()
                .map(|&a| asymptotic_power(d, &null, a))
                .collect::<Result<Vec<_>>>()?,
        ),
        None => None,
    };

    Ok(StudyReport {
        config: cfg.clone(),
        ncp,
        rejection_rates,
        ks_stat,
        predicted_power,
        completed_replicates: t_values.len(),
        replicate_failures: failures,
    })
}

/// Monte Carlo estimate of `J` with per-entry standard errors.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct McFisherEstimate {
    pub n_draws: usize,
    pub estimate: Mat4,
    pub std_error: Mat4,
    pub means: [f64; 4],
}

#[derive(Clone, Copy)]
struct Moments {
    count: f64,
    sum: [f64; 4],
    cross: Mat4,
    cross_sq: Mat4,
}

impl Moments {
    fn zero() -> Self {
        Self {
            count: 0.0,
            sum: [0.0; 4],
            cross: [[0.0; 4]; 4],
            cross_sq: [[0.0; 4]; 4],
        }
    }

    fn push(&mut self, v: [f64; 4]) {
        self.count += 1.0;
        for i in 0..4 {
            self.sum[i] += v[i];
            for j in 0..4 {
                let p = v[i] * v[j];
                self.cross[i][j] += p;
                self.cross_sq[i][j] += p * p;
            }
        }
    }

    fn merge(mut self, other: &Self) -> Self {
        self.count += other.count;
        for i in 0..4 {
            self.sum[i] += other.sum[i];
            for j in 0..4 {
                self.cross[i][j] += other.cross[i][j];
                self.cross_sq[i][j] += other.cross_sq[i][j];
            }
        }
        self
    }
}

fn stacked_scores(y: f64, null: &NullSpec) -> [f64; 4] {
    let t = d_theta(y, null);
    let k = d_kappa(y, null);
    [t.c1, t.c2, k.c1, k.c2]
}

/// Monte Carlo estimate of the covariance of the stacked scores
/// `(d_θ(Y), d_κ(Y))` over `n_draws` standard null draws.
///
/// The scores have mean zero under the null, so the covariance is estimated
/// by the raw second moments `(1/N) Σ d_a d_b`; each standard error is the
/// standard deviation of the products over `√N`. A constant product (such as
/// `d_μ² = ¼` when `λ = 1`) has a zero standard error. The sample means are
/// returned alongside.
pub fn mc_fisher_check(null: &NullSpec, n_draws: usize, seed: u64) -> Result<McFisherEstimate> {
    if n_draws < 100_000 {
        return Err(Error::Config(format!("n_draws = {n_draws} must be at least 1e5")));
    }
    let params = ApdParams::standard(0.5, null.lambda())?;
    let chunks = n_draws.div_ceil(FISHER_CHUNK);
    let parts: Vec<Moments> = (0..chunks)
        .into_par_iter()
        .map(|c| {
            let mut rng = replicate_rng(seed, c as u64);
            let len = FISHER_CHUNK.min(n_draws - c * FISHER_CHUNK);
            let mut m = Moments::zero();
            for _ in 0..len {
                m.push(stacked_scores(apd::sample_one(&params, &mut rng), null));
            }
            m
        })
        .collect();
    let total = parts.iter().fold(Moments::zero(), |acc, p| acc.merge(p));

    let n = total.count;
    let mut estimate = [[0.0; 4]; 4];
    let mut std_error = [[0.0; 4]; 4];
    for i in 0..4 {
        for j in 0..4 {
            let mean_prod = total.cross[i][j] / n;
            estimate[i][j] = mean_prod;
            let var_prod = (total.cross_sq[i][j] / n - mean_prod * mean_prod).max(0.0);
            std_error[i][j] = (var_prod / n).sqrt();
        }
    }
    Ok(McFisherEstimate {
        n_draws,
        estimate,
        std_error,
        means: total.sum.map(|s| s / n),
    })
}

fn null_density(null: &NullSpec) -> impl Fn(f64) -> f64 {
    let lambda = null.lambda();
    let log_c = -(1.0 + 1.0 / lambda) * std::f64::consts::LN_2
        - crate::numerics::ln_gamma_unchecked(1.0 + 1.0 / lambda);
    move |y: f64| (log_c - 0.5 * y.abs().powf(lambda)).exp()
}

fn quadrature_spec() -> QuadratureSpec {
    QuadratureSpec {
        abs_tol: 1e-12,
        rel_tol: 1e-12,
        max_subdivisions: 2000,
    }
}

// ∫ h(y) f(y) dy split at the mode, where the scores are not smooth.
fn null_expectation<H: Fn(f64) -> f64>(h: H, null: &NullSpec) -> Result<f64> {
    let f = null_density(null);
    let spec = quadrature_spec();
    let left = integrate(|y| h(y) * f(y), Domain::To(0.0), &spec)?;
    let right = integrate(|y| h(y) * f(y), Domain::From(0.0), &spec)?;
    Ok(left.value + right.value)
}

/// `J` by adaptive quadrature of `E[d_a(Y) d_b(Y)]` under the standard null.
pub fn quadrature_fisher(null: &NullSpec) -> Result<Mat4> {
    let mut out = [[0.0; 4]; 4];
    for a in 0..4 {
        for b in a..4 {
            let v = null_expectation(
                |y| {
                    let s = stacked_scores(y, null);
                    s[a] * s[b]
                },
                null,
            )?;
            out[a][b] = v;
            out[b][a] = v;
        }
    }
    Ok(out)
}

/// `E[d_a(Y)]` for the four score components under the standard null.
pub fn quadrature_score_means(null: &NullSpec) -> Result<[f64; 4]> {
    let mut out = [0.0; 4];
    for (a, slot) in out.iter_mut().enumerate() {
        *slot = null_expectation(|y| stacked_scores(y, null)[a], null)?;
    }
    Ok(out)
}

/// Root mean squared error of `(μ̂, σ̂)` over replicated null samples.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RmseReport {
    pub n: usize,
    pub reps: usize,
    pub rmse_mu: f64,
    pub rmse_sigma: f64,
    pub replicate_failures: usize,
}

pub fn consistency_rmse(
    null: &NullSpec,
    kappa: LocationScale,
    n: usize,
    reps: usize,
    seed: u64,
) -> Result<RmseReport> {
    if n < 2 || reps == 0 {
        return Err(Error::Config(format!("need n >= 2 and reps >= 1, got n = {n}, reps = {reps}")));
    }
    let params = ApdParams::new(0.5, null.lambda(), kappa.mu, kappa.sigma)?;
    let fits: Vec<Option<LocationScale>> = (0..reps)
        .into_par_iter()
        .map(|r| {
            let mut rng = replicate_rng(seed, r as u64);
            let data = apd::sample(&params, n, &mut rng);
            fit_null_mle(&data, null).ok()
        })
        .collect();
    let ok: Vec<LocationScale> = fits.into_iter().flatten().collect();
    if ok.is_empty() {
        return Err(Error::Numeric("every replicate failed".into()));
    }
    let m = ok.len() as f64;
    let mse_mu = ok.iter().map(|k| (k.mu - kappa.mu).powi(2)).sum::<f64>() / m;
    let mse_sigma = ok.iter().map(|k| (k.sigma - kappa.sigma).powi(2)).sum::<f64>() / m;
    Ok(RmseReport {
        n,
        reps,
        rmse_mu: mse_mu.sqrt(),
        rmse_sigma: mse_sigma.sqrt(),
        replicate_failures: reps - ok.len(),
    })
}
