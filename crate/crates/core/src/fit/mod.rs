//! Maximum-likelihood fits of heavy-tailed candidates and their pairwise
//! comparison by normalized log-likelihood ratio.
//!
//! Four families are supported, each restricted to a tail `x ≥ xmin`:
//!
//! | family              | discrete pmf ∝                          | continuous pdf ∝          |
//! |---------------------|-----------------------------------------|---------------------------|
//! | power law           | `x^−α`                                  | `x^−α`                    |
//! | truncated power law | `x^−α e^−λx`                            | `x^−α e^−λx`              |
//! | log-normal          | `Φ(z(x+½)) − Φ(z(x−½))`, `z = (ln·−μ)/σ` | log-normal density        |
//! | exponential         | `e^−λx`                                 | `e^−λx`                   |
//!
//! Discrete fits are used for counts (degrees, sizes, intersection sizes) and
//! continuous fits for singular values. The default table workflow selects a
//! single `xmin` with the power-law Kolmogorov–Smirnov scan and shares it
//! across all candidates, so every likelihood is computed on the same samples.

mod optimize;
pub mod special;

use std::fmt;

use libm::erfc;
use thiserror::Error;

use crate::distribution::EmpiricalDistribution;
use optimize::{golden_section, nelder_mead};
use special::{hurwitz_zeta, ln_normal_pdf, normal_interval, normal_sf, scaled_tail_integral, scaled_tail_sum};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum FitError {
    #[error("tail x >= {xmin} has fewer than two distinct values")]
    DegenerateTail { xmin: f64 },

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("invalid parameters for {family}: {reason}")]
    InvalidParameters { family: FamilyKind, reason: String },

    #[error("{family} fit did not converge after {iterations} iterations (trace: {trace:?})")]
    NotConverged { family: FamilyKind, iterations: usize, trace: Vec<f64> },

    #[error("pointwise log-likelihood ratios have zero variance; comparison indeterminate")]
    Indeterminate,

    #[error("need at least {needed} distinct support values, got {got}")]
    InsufficientSupport { needed: usize, got: usize },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum FamilyKind {
    PowerLaw,
    TruncatedPowerLaw,
    LogNormal,
    Exponential,
}

impl FamilyKind {
    pub const ALL: [FamilyKind; 4] =
        [FamilyKind::PowerLaw, FamilyKind::TruncatedPowerLaw, FamilyKind::LogNormal, FamilyKind::Exponential];

    pub fn as_str(self) -> &'static str {
        match self {
            FamilyKind::PowerLaw => "power_law",
            FamilyKind::TruncatedPowerLaw => "truncated_power_law",
            FamilyKind::LogNormal => "log_normal",
            FamilyKind::Exponential => "exponential",
        }
    }
}

impl fmt::Display for FamilyKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl std::str::FromStr for FamilyKind {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "power_law" | "pw" => Ok(FamilyKind::PowerLaw),
            "truncated_power_law" | "tpw" => Ok(FamilyKind::TruncatedPowerLaw),
            "log_normal" | "logn" => Ok(FamilyKind::LogNormal),
            "exponential" | "exp" => Ok(FamilyKind::Exponential),
            other => Err(format!("unknown family `{other}`")),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum FamilyParams {
    PowerLaw { alpha: f64 },
    TruncatedPowerLaw { alpha: f64, lambda: f64 },
    LogNormal { mu: f64, sigma: f64 },
    Exponential { lambda: f64 },
}

impl FamilyParams {
    pub fn kind(&self) -> FamilyKind {
        match self {
            FamilyParams::PowerLaw { .. } => FamilyKind::PowerLaw,
            FamilyParams::TruncatedPowerLaw { .. } => FamilyKind::TruncatedPowerLaw,
            FamilyParams::LogNormal { .. } => FamilyKind::LogNormal,
            FamilyParams::Exponential { .. } => FamilyKind::Exponential,
        }
    }

    /// (param1, param2) in CSV order: α; α, λ; μ, σ; λ.
    pub fn values(&self) -> (f64, Option<f64>) {
        match *self {
            FamilyParams::PowerLaw { alpha } => (alpha, None),
            FamilyParams::TruncatedPowerLaw { alpha, lambda } => (alpha, Some(lambda)),
            FamilyParams::LogNormal { mu, sigma } => (mu, Some(sigma)),
            FamilyParams::Exponential { lambda } => (lambda, None),
        }
    }
}

/// A fully specified candidate distribution on `x ≥ xmin`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CandidateFamily {
    params: FamilyParams,
    xmin: f64,
    discrete: bool,
    /// Log of the family's normalizing term (see `ln_pdf`).
    ln_norm: f64,
}

impl CandidateFamily {
    pub fn new(params: FamilyParams, xmin: f64, discrete: bool) -> Result<Self, FitError> {
        let kind = params.kind();
        let bad = |reason: &str| FitError::InvalidParameters { family: kind, reason: reason.into() };
        if !(xmin.is_finite() && xmin > 0.0) || (discrete && (xmin < 1.0 || xmin.fract() != 0.0)) {
            return Err(FitError::InvalidInput(format!("xmin {xmin} invalid")));
        }
        let ln_norm = match params {
            FamilyParams::PowerLaw { alpha } => {
                if !(alpha > 1.0 && alpha.is_finite()) {
                    return Err(bad("alpha must exceed 1"));
                }
                if discrete {
                    hurwitz_zeta(alpha, xmin).ln()
                } else {
                    (alpha - 1.0).ln() - xmin.ln()
                }
            }
            FamilyParams::TruncatedPowerLaw { alpha, lambda } => {
                if !(lambda > 0.0 && lambda.is_finite() && alpha.is_finite()) {
                    return Err(bad("lambda must be positive"));
                }
                let s = if discrete {
                    scaled_tail_sum(alpha, lambda, xmin)
                } else {
                    scaled_tail_integral(alpha, lambda, xmin)
                };
                s.ln()
            }
            FamilyParams::LogNormal { mu, sigma } => {
                if !(sigma > 0.0 && sigma.is_finite() && mu.is_finite()) {
                    return Err(bad("sigma must be positive"));
                }
                let lo = if discrete { xmin - 0.5 } else { xmin };
                normal_sf((lo.ln() - mu) / sigma).ln()
            }
            FamilyParams::Exponential { lambda } => {
                if !(lambda > 0.0 && lambda.is_finite()) {
                    return Err(bad("lambda must be positive"));
                }
                if discrete {
                    (-(-lambda).exp_m1()).ln()
                } else {
                    lambda.ln()
                }
            }
        };
        if !ln_norm.is_finite() {
            return Err(bad("normalization is not finite"));
        }
        Ok(Self { params, xmin, discrete, ln_norm })
    }

    pub fn params(&self) -> FamilyParams {
        self.params
    }

    pub fn kind(&self) -> FamilyKind {
        self.params.kind()
    }

    pub fn xmin(&self) -> f64 {
        self.xmin
    }

    pub fn discrete(&self) -> bool {
        self.discrete
    }

    /// Log pmf (discrete) or log pdf (continuous) at `x ≥ xmin`.
    pub fn ln_pdf(&self, x: f64) -> f64 {
        let xmin = self.xmin;
        match self.params {
            FamilyParams::PowerLaw { alpha } => {
                if self.discrete {
                    -alpha * x.ln() - self.ln_norm
                } else {
                    self.ln_norm - alpha * (x / xmin).ln()
                }
            }
            FamilyParams::TruncatedPowerLaw { alpha, lambda } => -alpha * x.ln() - lambda * (x - xmin) - self.ln_norm,
            FamilyParams::LogNormal { mu, sigma } => {
                if self.discrete {
                    let a = ((x - 0.5).ln() - mu) / sigma;
                    let b = ((x + 0.5).ln() - mu) / sigma;
                    let mass = normal_interval(a, b);
                    let ln_mass = if mass > 1e-300 {
                        mass.ln()
                    } else {
                        // deep tail: midpoint density of the log-normal
                        let z = (x.ln() - mu) / sigma;
                        ln_normal_pdf(z) - sigma.ln() - x.ln()
                    };
                    ln_mass - self.ln_norm
                } else {
                    let z = (x.ln() - mu) / sigma;
                    ln_normal_pdf(z) - sigma.ln() - x.ln() - self.ln_norm
                }
            }
            FamilyParams::Exponential { lambda } => self.ln_norm - lambda * (x - xmin),
        }
    }

    /// P(X ≤ x) for `x ≥ xmin`.
    pub fn cdf(&self, x: f64) -> f64 {
        if x < self.xmin {
            return 0.0;
        }
        let xmin = self.xmin;
        let sf = match (self.params, self.discrete) {
            (FamilyParams::PowerLaw { alpha }, true) => hurwitz_zeta(alpha, x + 1.0) / self.ln_norm.exp(),
            (FamilyParams::PowerLaw { alpha }, false) => (x / xmin).powf(1.0 - alpha),
            (FamilyParams::TruncatedPowerLaw { alpha, lambda }, true) => {
                (-lambda * (x + 1.0 - xmin)).exp() * scaled_tail_sum(alpha, lambda, x + 1.0) / self.ln_norm.exp()
            }
            (FamilyParams::TruncatedPowerLaw { alpha, lambda }, false) => {
                (-lambda * (x - xmin)).exp() * scaled_tail_integral(alpha, lambda, x) / self.ln_norm.exp()
            }
            (FamilyParams::LogNormal { mu, sigma }, true) => {
                normal_sf(((x + 0.5).ln() - mu) / sigma) / self.ln_norm.exp()
            }
            (FamilyParams::LogNormal { mu, sigma }, false) => normal_sf((x.ln() - mu) / sigma) / self.ln_norm.exp(),
            (FamilyParams::Exponential { lambda }, true) => (-lambda * (x - xmin + 1.0)).exp(),
            (FamilyParams::Exponential { lambda }, false) => (-lambda * (x - xmin)).exp(),
        };
        (1.0 - sf).clamp(0.0, 1.0)
    }

    /// Σ count·ln p(x) over the tail of `dist`.
    pub fn log_likelihood(&self, dist: &EmpiricalDistribution) -> f64 {
        dist.tail(self.xmin).iter().map(|(x, c)| c as f64 * self.ln_pdf(x)).sum()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct FitReport {
    pub family: CandidateFamily,
    pub log_likelihood: f64,
    pub n_tail: u64,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LLRResult {
    /// Σ ln p_A(x) − ln p_B(x).
    pub ratio: f64,
    /// `ratio / (σ √n)` with σ the sample standard deviation of the pointwise terms.
    pub ratio_normalized: f64,
    pub p_value: f64,
}

/// Sufficient statistics of a tail.
struct TailStats {
    n: f64,
    sum_ln: f64,
    sum_x: f64,
    mean_ln: f64,
    sd_ln: f64,
}

fn tail_stats(tail: &EmpiricalDistribution) -> TailStats {
    let n = tail.total() as f64;
    let sum_ln: f64 = tail.iter().map(|(x, c)| c as f64 * x.ln()).sum();
    let sum_x = tail.weighted_sum();
    let mean_ln = sum_ln / n;
    let var_ln = tail.iter().map(|(x, c)| c as f64 * (x.ln() - mean_ln).powi(2)).sum::<f64>() / n;
    TailStats { n, sum_ln, sum_x, mean_ln, sd_ln: var_ln.sqrt() }
}

const NM_FTOL: f64 = 1e-8;
const NM_MAX_ITER: usize = 20_000;

fn validate_tail(dist: &EmpiricalDistribution, xmin: f64, discrete: bool) -> Result<EmpiricalDistribution, FitError> {
    if discrete && dist.support().iter().any(|v| v.fract() != 0.0) {
        return Err(FitError::InvalidInput("discrete fit needs integer values".into()));
    }
    if !(xmin > 0.0) || (discrete && (xmin < 1.0 || xmin.fract() != 0.0)) {
        return Err(FitError::InvalidInput(format!("xmin {xmin} invalid")));
    }
    let tail = dist.tail(xmin);
    if tail.distinct() < 2 {
        return Err(FitError::DegenerateTail { xmin });
    }
    Ok(tail)
}

fn report(family: CandidateFamily, tail: &EmpiricalDistribution) -> FitReport {
    FitReport { log_likelihood: family.log_likelihood(tail), n_tail: tail.total(), family }
}

fn fit_power_law(tail: &EmpiricalDistribution, st: &TailStats, xmin: f64, discrete: bool) -> Result<FitReport, FitError> {
    let alpha = if discrete {
        let neg_ll = |a: f64| a * st.sum_ln + st.n * hurwitz_zeta(a, xmin).ln();
        golden_section(neg_ll, 1.0 + 1e-7, 30.0, 1e-12)
    } else {
        1.0 + st.n / (st.sum_ln - st.n * xmin.ln())
    };
    let family = CandidateFamily::new(FamilyParams::PowerLaw { alpha }, xmin, discrete)?;
    Ok(report(family, tail))
}

fn fit_exponential(tail: &EmpiricalDistribution, st: &TailStats, xmin: f64, discrete: bool) -> Result<FitReport, FitError> {
    let excess = st.sum_x / st.n - xmin;
    let lambda = if discrete { (1.0 + 1.0 / excess).ln() } else { 1.0 / excess };
    let family = CandidateFamily::new(FamilyParams::Exponential { lambda }, xmin, discrete)?;
    Ok(report(family, tail))
}

fn fit_truncated(tail: &EmpiricalDistribution, st: &TailStats, xmin: f64, discrete: bool) -> Result<FitReport, FitError> {
    let kind = FamilyKind::TruncatedPowerLaw;
    let neg_ll = |p: &[f64]| {
        let (alpha, lambda) = (p[0], p[1].exp());
        let s = if discrete {
            scaled_tail_sum(alpha, lambda, xmin)
        } else {
            scaled_tail_integral(alpha, lambda, xmin)
        };
        if !(s.is_finite() && s > 0.0) {
            return f64::INFINITY;
        }
        alpha * st.sum_ln + lambda * (st.sum_x - st.n * xmin) + st.n * s.ln()
    };
    let pw = fit_power_law(tail, st, xmin, discrete).ok();
    let alpha0 = pw.as_ref().map(|r| r.family.values_alpha()).unwrap_or(1.5);
    let scale = (st.sum_x / st.n - xmin).max(1.0);
    let starts = [[alpha0, (1e-3 / scale).ln()], [alpha0.min(1.0), (1.0 / scale).ln()]];
    let mut best: Option<(Vec<f64>, f64)> = None;
    let mut failure = None;
    for start in starts {
        match nelder_mead(neg_ll, &start, &[0.2, 1.0], NM_FTOL, 1e-12, NM_MAX_ITER) {
            Ok(m) => {
                if best.as_ref().is_none_or(|b| m.value < b.1) {
                    best = Some((m.point, m.value));
                }
            }
            Err(e) => failure = Some(e),
        }
    }
    let Some((point, _)) = best else {
        let e = failure.expect("at least one start ran");
        return Err(FitError::NotConverged { family: kind, iterations: e.iterations, trace: e.trace });
    };
    let mut family = CandidateFamily::new(
        FamilyParams::TruncatedPowerLaw { alpha: point[0], lambda: point[1].exp() },
        xmin,
        discrete,
    )?;
    // the power law is the λ → 0 limit; keep the nested optimum when the simplex stalls short of it
    if let Some(pw) = pw {
        let alpha = pw.family.values_alpha();
        let lambda = 1e-12 / tail.support().last().copied().unwrap_or(1.0);
        if let Ok(limit) = CandidateFamily::new(FamilyParams::TruncatedPowerLaw { alpha, lambda }, xmin, discrete) {
            if limit.log_likelihood(tail) > family.log_likelihood(tail) {
                family = limit;
            }
        }
    }
    Ok(report(family, tail))
}

fn fit_log_normal(tail: &EmpiricalDistribution, st: &TailStats, xmin: f64, discrete: bool) -> Result<FitReport, FitError> {
    let kind = FamilyKind::LogNormal;
    let neg_ll = |p: &[f64]| match CandidateFamily::new(FamilyParams::LogNormal { mu: p[0], sigma: p[1].exp() }, xmin, discrete) {
        Ok(f) => {
            let ll = f.log_likelihood(tail);
            if ll.is_finite() {
                -ll
            } else {
                f64::INFINITY
            }
        }
        Err(_) => f64::INFINITY,
    };
    let sd = st.sd_ln.max(0.1);
    let starts = [[st.mean_ln, sd.ln()], [st.mean_ln - sd, (1.5 * sd).ln()]];
    let mut best: Option<(Vec<f64>, f64)> = None;
    let mut failure = None;
    for start in starts {
        match nelder_mead(neg_ll, &start, &[0.5 * sd, 0.3], NM_FTOL, 1e-12, NM_MAX_ITER) {
            Ok(m) if m.value.is_finite() => {
                if best.as_ref().is_none_or(|b| m.value < b.1) {
                    best = Some((m.point, m.value));
                }
            }
            Ok(_) => {}
            Err(e) => failure = Some(e),
        }
    }
    let Some((point, _)) = best else {
        return Err(match failure {
            Some(e) => FitError::NotConverged { family: kind, iterations: e.iterations, trace: e.trace },
            None => FitError::InvalidParameters { family: kind, reason: "no finite likelihood found".into() },
        });
    };
    let family = CandidateFamily::new(FamilyParams::LogNormal { mu: point[0], sigma: point[1].exp() }, xmin, discrete)?;
    Ok(report(family, tail))
}

impl CandidateFamily {
    fn values_alpha(&self) -> f64 {
        self.params.values().0
    }
}

/// Maximum-likelihood fit of `kind` on the samples `≥ xmin`.
pub fn fit(dist: &EmpiricalDistribution, kind: FamilyKind, xmin: f64, discrete: bool) -> Result<FitReport, FitError> {
    let tail = validate_tail(dist, xmin, discrete)?;
    let st = tail_stats(&tail);
    match kind {
        FamilyKind::PowerLaw => fit_power_law(&tail, &st, xmin, discrete),
        FamilyKind::TruncatedPowerLaw => fit_truncated(&tail, &st, xmin, discrete),
        FamilyKind::LogNormal => fit_log_normal(&tail, &st, xmin, discrete),
        FamilyKind::Exponential => fit_exponential(&tail, &st, xmin, discrete),
    }
}

/// Normalized log-likelihood ratio of two fitted families on their shared tail.
pub fn compare_fitted(dist: &EmpiricalDistribution, a: &FitReport, b: &FitReport) -> Result<LLRResult, FitError> {
    let (fa, fb) = (&a.family, &b.family);
    if fa.xmin != fb.xmin || fa.discrete != fb.discrete {
        return Err(FitError::InvalidInput("families were fitted on different tails".into()));
    }
    let tail = dist.tail(fa.xmin);
    let n = tail.total() as f64;
    let terms: Vec<(f64, f64)> = tail.iter().map(|(x, c)| (fa.ln_pdf(x) - fb.ln_pdf(x), c as f64)).collect();
    let ratio: f64 = terms.iter().map(|(d, c)| d * c).sum();
    let mean = ratio / n;
    let ss: f64 = terms.iter().map(|(d, c)| c * (d - mean).powi(2)).sum();
    let sd = (ss / (n - 1.0)).sqrt();
    let scale = terms.iter().map(|(d, _)| d.abs()).fold(0.0, f64::max);
    if n < 2.0 || !(sd > 1e-12 * scale.max(f64::MIN_POSITIVE)) {
        return Err(FitError::Indeterminate);
    }
    let ratio_normalized = ratio / (sd * n.sqrt());
    let p_value = erfc(ratio.abs() / (sd * (2.0 * n).sqrt()));
    Ok(LLRResult { ratio, ratio_normalized, p_value })
}

pub fn compare(
    dist: &EmpiricalDistribution,
    family_a: FamilyKind,
    family_b: FamilyKind,
    xmin: f64,
    discrete: bool,
) -> Result<LLRResult, FitError> {
    let a = fit(dist, family_a, xmin, discrete)?;
    let b = fit(dist, family_b, xmin, discrete)?;
    compare_fitted(dist, &a, &b)
}

/// Minimum number of samples a candidate tail must keep during the xmin scan.
pub const MIN_TAIL_SAMPLES: u64 = 10;

/// Kolmogorov–Smirnov distance between the tail's empirical CDF and `family`.
pub fn ks_distance(dist: &EmpiricalDistribution, family: &CandidateFamily) -> f64 {
    let tail = dist.tail(family.xmin());
    let n = tail.total() as f64;
    let mut cum = 0u64;
    let mut d: f64 = 0.0;
    for (x, c) in tail.iter() {
        let before = cum as f64 / n;
        cum += c;
        let after = cum as f64 / n;
        let fit = family.cdf(x);
        d = d.max((after - fit).abs());
        if !family.discrete() {
            // continuous CDF is also compared just below the jump
            d = d.max((before - fit).abs());
        }
    }
    d
}

/// Chooses `xmin` among the observed support values by minimizing the KS distance.
pub fn select_xmin(dist: &EmpiricalDistribution, kind: FamilyKind, discrete: bool) -> Result<f64, FitError> {
    if dist.distinct() < 10 {
        return Err(FitError::InsufficientSupport { needed: 10, got: dist.distinct() });
    }
    let support = dist.support();
    let counts = dist.counts();
    // suffix sums of counts
    let mut remaining: Vec<u64> = vec![0; support.len() + 1];
    for i in (0..support.len()).rev() {
        remaining[i] = remaining[i + 1] + counts[i];
    }
    let mut best: Option<(f64, f64)> = None;
    for (i, &xmin) in support.iter().enumerate() {
        if support.len() - i < 2 || remaining[i] < MIN_TAIL_SAMPLES {
            break;
        }
        let Ok(rep) = fit(dist, kind, xmin, discrete) else { continue };
        let d = ks_distance(dist, &rep.family);
        if d.is_finite() && best.is_none_or(|(_, bd)| d < bd) {
            best = Some((xmin, d));
        }
    }
    Ok(best.map(|(x, _)| x).unwrap_or(support[0]))
}

/// One candidate's row of a fit table.
#[derive(Debug, Clone, PartialEq)]
pub struct FitRow {
    pub kind: FamilyKind,
    pub fit: Result<FitReport, FitError>,
    /// Comparison against the exponential baseline; `None` for the baseline itself.
    pub vs_exponential: Option<Result<LLRResult, FitError>>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct FitTable {
    pub xmin: f64,
    pub discrete: bool,
    pub rows: Vec<FitRow>,
}

impl FitTable {
    pub fn row(&self, kind: FamilyKind) -> &FitRow {
        self.rows.iter().find(|r| r.kind == kind).expect("all families present")
    }

    /// Normalized LLR of `kind` against the exponential, when available.
    pub fn normalized_vs_exponential(&self, kind: FamilyKind) -> Option<f64> {
        match &self.row(kind).vs_exponential {
            Some(Ok(r)) => Some(r.ratio_normalized),
            _ => None,
        }
    }

    /// Heavy-tailed family with the largest normalized ratio against the exponential.
    pub fn best_heavy_tailed(&self) -> Option<FamilyKind> {
        [FamilyKind::PowerLaw, FamilyKind::TruncatedPowerLaw, FamilyKind::LogNormal]
            .into_iter()
            .filter_map(|k| self.normalized_vs_exponential(k).map(|r| (k, r)))
            .max_by(|a, b| a.1.total_cmp(&b.1))
            .map(|(k, _)| k)
    }
}

/// Fits every candidate on one shared tail and compares each heavy-tailed
/// family against the exponential baseline.
///
/// When `xmin` is `None` it is chosen by the power-law KS scan (or the
/// smallest support value when fewer than 10 distinct values exist).
pub fn fit_table(dist: &EmpiricalDistribution, discrete: bool, xmin: Option<f64>) -> Result<FitTable, FitError> {
    if dist.is_empty() {
        return Err(FitError::InvalidInput("empty distribution".into()));
    }
    let xmin = match xmin {
        Some(x) => x,
        None => match select_xmin(dist, FamilyKind::PowerLaw, discrete) {
            Ok(x) => x,
            Err(FitError::InsufficientSupport { .. }) => dist.support()[0],
            Err(e) => return Err(e),
        },
    };
    let baseline = fit(dist, FamilyKind::Exponential, xmin, discrete);
    let rows = FamilyKind::ALL
        .into_iter()
        .map(|kind| {
            let fit = if kind == FamilyKind::Exponential { baseline.clone() } else { fit(dist, kind, xmin, discrete) };
            let vs_exponential = (kind != FamilyKind::Exponential).then(|| match (&fit, &baseline) {
                (Ok(a), Ok(b)) => compare_fitted(dist, a, b),
                (Err(e), _) | (_, Err(e)) => Err(e.clone()),
            });
            FitRow { kind, fit, vs_exponential }
        })
        .collect();
    Ok(FitTable { xmin, discrete, rows })
}
