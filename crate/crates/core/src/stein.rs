//! Exchangeable-pair machinery: birth-death kernels, detailed balance,
//! linear-drift extraction, the movement-variance bound, the discrete
//! characterizing operator for the matched binomial target, and the
//! proof-level tail/correction estimates.
//!
//! All probabilistic identities here are evaluated in exact rational
//! arithmetic; square-root comparisons are decided by squaring, never by
//! floating point.

use num_traits::{Signed, Zero};
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::binhat::{binhat_dist, BinHatParams};
use crate::dist::ExactDist;
use crate::metrics::tv_distance;
use crate::rat::{le_sqrt_form, rat, rat_i, sqrt_form_le, sqrt_form_value, Rat};
use crate::Error;

/// One-step transition kernel on consecutive integers with moves
/// restricted to {-1, 0, +1}. Stay-probabilities are implicit:
/// `stay(k) = 1 - up(k) - down(k)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BirthDeathKernel {
    lo: i64,
    up: Vec<Rat>,
    down: Vec<Rat>,
}

impl BirthDeathKernel {
    /// Validates: equal lengths, nonnegative entries, `up + down <= 1`
    /// at every state, no upward move from the top state, no downward
    /// move from the bottom state.
    pub fn new(lo: i64, up: Vec<Rat>, down: Vec<Rat>) -> Result<Self, Error> {
        if up.is_empty() || up.len() != down.len() {
            return Err(Error::InvalidParam(
                "kernel needs equal-length nonempty up/down vectors".into(),
            ));
        }
        if !up[up.len() - 1].is_zero() {
            return Err(Error::InvalidParam("up(hi) must be 0".into()));
        }
        if !down[0].is_zero() {
            return Err(Error::InvalidParam("down(lo) must be 0".into()));
        }
        for (u, d) in up.iter().zip(&down) {
            if u.is_negative() || d.is_negative() || u + d > rat_i(1) {
                return Err(Error::InvalidParam(format!(
                    "invalid one-step probabilities up={u} down={d}"
                )));
            }
        }
        Ok(BirthDeathKernel { lo, up, down })
    }

    pub fn lo(&self) -> i64 {
        self.lo
    }

    pub fn hi(&self) -> i64 {
        self.lo + self.up.len() as i64 - 1
    }

    pub fn len(&self) -> usize {
        self.up.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    fn index(&self, k: i64) -> Result<usize, Error> {
        if k < self.lo() || k > self.hi() {
            Err(Error::Domain(format!(
                "state {k} outside [{}, {}]",
                self.lo(),
                self.hi()
            )))
        } else {
            Ok((k - self.lo) as usize)
        }
    }

    pub fn up(&self, k: i64) -> Result<Rat, Error> {
        Ok(self.up[self.index(k)?].clone())
    }

    pub fn down(&self, k: i64) -> Result<Rat, Error> {
        Ok(self.down[self.index(k)?].clone())
    }

    pub fn stay(&self, k: i64) -> Result<Rat, Error> {
        let i = self.index(k)?;
        Ok(rat_i(1) - &self.up[i] - &self.down[i])
    }

    /// `(state, up, down)` triples.
    pub fn iter(&self) -> impl Iterator<Item = (i64, &Rat, &Rat)> {
        let lo = self.lo;
        self.up
            .iter()
            .zip(&self.down)
            .enumerate()
            .map(move |(i, (u, d))| (lo + i as i64, u, d))
    }
}

/// Movement probability `S(k) = up(k) + down(k)`.
pub fn s_function(kernel: &BirthDeathKernel, k: i64) -> Result<Rat, Error> {
    Ok(kernel.up(k)? + kernel.down(k)?)
}

fn require_matching_supports(kernel: &BirthDeathKernel, pi: &ExactDist) -> Result<(), Error> {
    if kernel.lo() != pi.lo() || kernel.hi() != pi.hi() {
        return Err(Error::Domain(format!(
            "kernel support [{}, {}] does not match distribution support [{}, {}]",
            kernel.lo(),
            kernel.hi(),
            pi.lo(),
            pi.hi()
        )));
    }
    Ok(())
}

/// Maximum detailed-balance defect `|pi(k) up(k) - pi(k+1) down(k+1)|`
/// over adjacent state pairs; exactly zero certifies reversibility (and
/// hence exchangeability of the one-step pair started at stationarity).
pub fn check_reversibility(kernel: &BirthDeathKernel, pi: &ExactDist) -> Result<Rat, Error> {
    require_matching_supports(kernel, pi)?;
    let mut worst = rat_i(0);
    for k in kernel.lo()..kernel.hi() {
        let defect = (pi.prob(k) * kernel.up(k)? - pi.prob(k + 1) * kernel.down(k + 1)?).abs();
        if defect > worst {
            worst = defect;
        }
    }
    Ok(worst)
}

/// Exact diagnostics of an exchangeable pair represented by its kernel and
/// stationary law.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PairDiagnostics {
    /// Drift coefficient from `E[X'-mu | X] = (1-lambda)(X-mu)`, if a
    /// non-central state exists to fit it from.
    pub lambda: Option<Rat>,
    /// Max over states of the linear-drift defect (0 certifies the
    /// linearity hypothesis exactly).
    pub linearity_residual: Rat,
    /// Max detailed-balance defect.
    pub reversibility_residual: Rat,
    /// `S(k)` per state, in state order.
    pub s_values: Vec<Rat>,
    /// `E S`; equals `2 lambda sigma2` whenever the drift is exactly linear.
    pub mean_s: Rat,
    /// `Var S` under the stationary law.
    pub var_s: Rat,
}

/// Fits the drift coefficient at one non-central state and certifies the
/// linear-drift condition at every state, alongside movement statistics.
pub fn extract_lambda(kernel: &BirthDeathKernel, pi: &ExactDist) -> Result<PairDiagnostics, Error> {
    require_matching_supports(kernel, pi)?;
    let mu = pi.mean();
    let reversibility_residual = check_reversibility(kernel, pi)?;

    let mut lambda: Option<Rat> = None;
    for (k, u, d) in kernel.iter() {
        let dev = rat_i(k) - &mu;
        if !dev.is_zero() {
            lambda = Some((d - u) / dev);
            break;
        }
    }
    let mut linearity_residual = rat_i(0);
    for (k, u, d) in kernel.iter() {
        let drift = u - d;
        let predicted = match &lambda {
            Some(l) => -l * (rat_i(k) - &mu),
            None => rat_i(0),
        };
        let defect = (drift - predicted).abs();
        if defect > linearity_residual {
            linearity_residual = defect;
        }
    }

    let s_values: Vec<Rat> = kernel.iter().map(|(_, u, d)| u + d).collect();
    let mean_s: Rat = kernel
        .iter()
        .zip(pi.probs())
        .map(|((_, u, d), p)| (u + d) * p)
        .collect::<Vec<_>>()
        .into_iter()
        .sum();
    let mean_sq: Rat = kernel
        .iter()
        .zip(pi.probs())
        .map(|((_, u, d), p)| {
            let s = u + d;
            &s * &s * p
        })
        .sum();
    let var_s = mean_sq - &mean_s * &mean_s;

    Ok(PairDiagnostics {
        lambda,
        linearity_residual,
        reversibility_residual,
        s_values,
        mean_s,
        var_s,
    })
}

/// Exact variance of the movement probability under the stationary law.
pub fn var_s(kernel: &BirthDeathKernel, pi: &ExactDist) -> Result<Rat, Error> {
    Ok(extract_lambda(kernel, pi)?.var_s)
}

/// A bound of the form `sqrt(radicand) + tail`, kept exact so that
/// comparisons never round.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SqrtBound {
    pub radicand: Rat,
    pub tail: Rat,
}

impl SqrtBound {
    /// Float rendering of the bound.
    pub fn value(&self) -> f64 {
        sqrt_form_value(&self.radicand, &self.tail)
    }

    /// Exact test of `x <= sqrt(radicand) + tail`.
    pub fn covers(&self, x: &Rat) -> bool {
        le_sqrt_form(x, &self.radicand, &self.tail)
    }

    /// Exact test of `1 <= sqrt(radicand) + tail` (the bound is vacuous).
    pub fn ge_one(&self) -> bool {
        le_sqrt_form(&rat_i(1), &self.radicand, &self.tail)
    }

    /// Exact test of `self <= other` as bound values.
    pub fn le(&self, other: &SqrtBound) -> bool {
        sqrt_form_le(&self.radicand, &self.tail, &other.radicand, &other.tail)
    }
}

/// The abstract certification bound `sqrt(Var S)/(2 lambda sigma2) +
/// 1.4/sigma2`, returned with exact radicand `Var S/(2 lambda sigma2)^2`
/// and exact tail `7/(5 sigma2)`.
pub fn pair_bound(lambda: &Rat, sigma2: &Rat, var_s: &Rat) -> Result<SqrtBound, Error> {
    if !lambda.is_positive() || !sigma2.is_positive() || var_s.is_negative() {
        return Err(Error::InvalidParam(format!(
            "pair_bound needs lambda > 0, sigma2 > 0, var_s >= 0; got ({lambda}, {sigma2}, {var_s})"
        )));
    }
    let denom = rat_i(2) * lambda * sigma2;
    Ok(SqrtBound {
        radicand: var_s / (&denom * &denom),
        tail: rat(7, 5) / sigma2,
    })
}

/// Certification outcome.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CertStatus {
    /// Exact TV is at most the bound.
    Holds,
    /// The matched binomial target does not exist (negative success
    /// probability), but the bound is at least 1, so the claim is vacuous.
    HoldsVacuously,
    /// Exact TV exceeds the bound (or the bound is below 1 with no target).
    Violated,
    /// A hypothesis (reversibility, linear drift, moment match) failed;
    /// nothing is asserted.
    HypothesisFailed,
}

impl CertStatus {
    pub fn as_str(&self) -> &'static str {
        match self {
            CertStatus::Holds => "holds",
            CertStatus::HoldsVacuously => "holds-vacuously",
            CertStatus::Violated => "violated",
            CertStatus::HypothesisFailed => "hypothesis-failed",
        }
    }
}

/// Result of certifying one instance: the exact distance (when the target
/// exists), the exact bound, and the verdict.
#[derive(Debug, Clone)]
pub struct BoundReport {
    /// Free-form parameter record (e.g. "narayana n=17").
    pub label: String,
    pub lambda: Option<Rat>,
    pub sigma2: Rat,
    pub var_s: Rat,
    /// Exact total variation to the matched binomial target; `None` in the
    /// degenerate regime where the target does not exist.
    pub tv: Option<Rat>,
    pub bound: SqrtBound,
    pub status: CertStatus,
}

impl BoundReport {
    pub fn holds(&self) -> bool {
        matches!(self.status, CertStatus::Holds | CertStatus::HoldsVacuously)
    }

    /// `tv / bound` as floats, when both are available and nonzero.
    pub fn slack_ratio(&self) -> Option<f64> {
        let tv = self.tv.as_ref()?;
        let b = self.bound.value();
        if b > 0.0 {
            Some(crate::rat::to_f64(tv) / b)
        } else {
            None
        }
    }
}

/// Certifies one exchangeable-pair instance: checks the hypotheses
/// (reversibility, linear drift, exact moment match), evaluates the bound,
/// computes the exact distance to the matched binomial target, and
/// records the verdict. Hypothesis failures are flagged in the status
/// rather than asserted.
pub fn certify(
    kernel: &BirthDeathKernel,
    pi: &ExactDist,
    mu: &Rat,
    sigma2: &Rat,
    label: impl Into<String>,
) -> Result<BoundReport, Error> {
    let label = label.into();
    let diag = extract_lambda(kernel, pi)?;
    let hypotheses_ok = diag.reversibility_residual.is_zero()
        && diag.linearity_residual.is_zero()
        && diag.lambda.as_ref().is_some_and(|l| l.is_positive())
        && &pi.mean() == mu
        && &pi.variance() == sigma2
        && sigma2.is_positive();
    if !hypotheses_ok {
        return Ok(BoundReport {
            label,
            lambda: diag.lambda,
            sigma2: sigma2.clone(),
            var_s: diag.var_s,
            tv: None,
            bound: SqrtBound {
                radicand: rat_i(0),
                tail: rat_i(0),
            },
            status: CertStatus::HypothesisFailed,
        });
    }
    let lambda = diag.lambda.clone().expect("checked above");
    let bound = pair_bound(&lambda, sigma2, &diag.var_s)?;
    let params = crate::binhat::binhat_params(mu, sigma2)?;
    let (tv, status) = if params.is_degenerate() {
        let status = if bound.ge_one() {
            CertStatus::HoldsVacuously
        } else {
            CertStatus::Violated
        };
        (None, status)
    } else {
        let target = binhat_dist(&params)?;
        let tv = tv_distance(pi, &target);
        let status = if bound.covers(&tv) {
            CertStatus::Holds
        } else {
            CertStatus::Violated
        };
        (Some(tv), status)
    };
    Ok(BoundReport {
        label,
        lambda: Some(lambda),
        sigma2: sigma2.clone(),
        var_s: diag.var_s,
        tv,
        bound,
        status,
    })
}

/// A rational-valued test function on the integers.
#[derive(Debug, Clone)]
pub enum TestFn {
    /// `g(k) = k^e`.
    Monomial(u32),
    /// Tabulated values on consecutive integers; zero outside.
    Table { offset: i64, values: Vec<Rat> },
}

impl TestFn {
    pub fn eval(&self, k: i64) -> Rat {
        match self {
            TestFn::Monomial(e) => crate::rat::pow_u(&rat_i(k), *e),
            TestFn::Table { offset, values } => {
                if k < *offset || k >= *offset + values.len() as i64 {
                    rat_i(0)
                } else {
                    values[(k - offset) as usize].clone()
                }
            }
        }
    }
}

/// Monomials `x^0 .. x^max_degree`.
pub fn monomials(max_degree: u32) -> Vec<TestFn> {
    (0..=max_degree).map(TestFn::Monomial).collect()
}

/// Seeded pseudo-random tabulated test functions on `[lo, hi]`, with
/// rational values of moderate height. Deterministic in the seed.
pub fn random_test_fns(seed: u64, count: usize, lo: i64, hi: i64) -> Vec<TestFn> {
    assert!(hi >= lo);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            let values = (lo..=hi)
                .map(|_| {
                    let num = rng.gen_range(-999i64..=999);
                    let den = rng.gen_range(1i64..=64);
                    rat(num, den)
                })
                .collect();
            TestFn::Table { offset: lo, values }
        })
        .collect()
}

/// The default identity-checking family: monomials up to degree 6 plus
/// `random_count` seeded random tables on `[lo, hi]`.
pub fn test_family(seed: u64, random_count: usize, lo: i64, hi: i64) -> Vec<TestFn> {
    let mut fns = monomials(6);
    fns.extend(random_test_fns(seed, random_count, lo, hi));
    fns
}

/// The characterizing operator of the matched binomial target:
/// `(Bg)(k) = (k - mu) Thg(k) - sigma2 Dg(k) + a(k) Dg(k)` with
/// `Thg(k) = (g(k+1) + g(k))/2`, `Dg(k) = g(k+1) - g(k)`, and `a` the
/// quadratic correction of the parameters.
pub fn stein_operator(g: &TestFn, k: i64, params: &BinHatParams) -> Rat {
    let gk = g.eval(k);
    let gk1 = g.eval(k + 1);
    let theta = (&gk1 + &gk) / rat_i(2);
    let delta = &gk1 - &gk;
    let kk = rat_i(k);
    (&kk - &params.mu) * theta - &params.sigma2 * &delta + params.correction_at(&kk) * &delta
}

/// `max_g |E[ (Bg)(X) ]|` under an arbitrary law — exactly zero when the
/// law is the matched binomial target, positive otherwise (for a rich
/// enough family).
pub fn characterization_residual(
    dist: &ExactDist,
    params: &BinHatParams,
    fns: &[TestFn],
) -> Rat {
    let mut worst = rat_i(0);
    for g in fns {
        let e: Rat = dist
            .iter()
            .map(|(k, p)| stein_operator(g, k, params) * p)
            .sum();
        let e = e.abs();
        if e > worst {
            worst = e;
        }
    }
    worst
}

/// Characterization check under the target itself: must return exactly 0.
/// Errors in the degenerate regime (no target law exists).
pub fn characterization_check(params: &BinHatParams, fns: &[TestFn]) -> Result<Rat, Error> {
    let dist = binhat_dist(params)?;
    Ok(characterization_residual(&dist, params, fns))
}

/// Exactly-checkable pair identities: for each test function `g`,
/// `E[(X-mu) g(X)] = (1/lambda) E[up(X) Dg(X)]` and
/// `E[(X-mu) Thg(X)] = (1/(2 lambda)) E[S(X) Dg(X)]`.
/// Returns the maximum absolute defect (expected: exactly 0).
pub fn pair_identity_check(
    kernel: &BirthDeathKernel,
    pi: &ExactDist,
    mu: &Rat,
    lambda: &Rat,
    fns: &[TestFn],
) -> Result<Rat, Error> {
    require_matching_supports(kernel, pi)?;
    if !lambda.is_positive() {
        return Err(Error::InvalidParam(format!("lambda {lambda} must be > 0")));
    }
    let mut worst = rat_i(0);
    for g in fns {
        let mut lhs1 = rat_i(0);
        let mut rhs1 = rat_i(0);
        let mut lhs2 = rat_i(0);
        let mut rhs2 = rat_i(0);
        for ((k, u, d), p) in kernel.iter().zip(pi.probs()) {
            let gk = g.eval(k);
            let gk1 = g.eval(k + 1);
            let theta = (&gk1 + &gk) / rat_i(2);
            let delta = &gk1 - &gk;
            let dev = rat_i(k) - mu;
            lhs1 += &dev * &gk * p;
            rhs1 += u * &delta * p;
            lhs2 += &dev * &theta * p;
            rhs2 += (u + d) * &delta * p;
        }
        rhs1 /= lambda;
        rhs2 /= rat_i(2) * lambda;
        for defect in [(lhs1 - rhs1).abs(), (lhs2 - rhs2).abs()] {
            if defect > worst {
                worst = defect;
            }
        }
    }
    Ok(worst)
}

/// Exact evaluations behind the proof's tail and correction estimates.
#[derive(Debug, Clone)]
pub struct EstimateReport {
    /// `P[X outside {shift, ..., shift + n}]`, exact.
    pub p_outside: Rat,
    /// `P[|X - mu| >= 2 sigma2 - 1]`, exact.
    pub p_large_dev: Rat,
    /// The deviation threshold `2 sigma2 - 1`.
    pub dev_threshold: Rat,
    /// `sigma2 / (2 sigma2 - 1)^2`, when the threshold is positive.
    pub chebyshev_cap: Option<Rat>,
    /// `0.61 / sigma2`, when `sigma2 >= 1.4`.
    pub tail_cap: Option<Rat>,
    /// `E|a(X)|`, exact.
    pub mean_abs_correction: Rat,
    /// The correction bound `n t^2 + sigma t + delta/4` as a
    /// (radicand, rest) pair: `sqrt(sigma2 t^2) + (n t^2 + delta/4)`.
    pub correction_radicand: Rat,
    pub correction_rest: Rat,
    /// `p_outside <= p_large_dev` (support inclusion).
    pub inclusion_ok: bool,
    /// `p_large_dev <= chebyshev_cap` (exact Chebyshev), when applicable.
    pub chebyshev_ok: Option<bool>,
    /// `chebyshev_cap <= tail_cap`, when `sigma2 >= 1.4`.
    pub cap_chain_ok: Option<bool>,
    /// `E|a(X)| <= n t^2 + sigma t + delta/4`, decided exactly.
    pub correction_bound_ok: bool,
    /// Direct exact comparison `E|a(X)| <= 3/4`.
    pub correction_le_three_quarters: bool,
    /// `n t^2 + sigma t + delta/4 <= 3/4`, when `sigma2 >= 1.4`.
    pub correction_cap_ok: Option<bool>,
}

impl EstimateReport {
    /// Every estimate that is applicable at this variance level holds.
    pub fn all_applicable_hold(&self) -> bool {
        self.inclusion_ok
            && self.correction_bound_ok
            && self.chebyshev_ok.unwrap_or(true)
            && self.cap_chain_ok.unwrap_or(true)
            && self.correction_cap_ok.unwrap_or(true)
            // In the large-variance regime the 3/4 cap is part of the chain.
            && (self.correction_cap_ok.is_none() || self.correction_le_three_quarters)
    }
}

/// Evaluates the tail-probability chain
/// `P[X outside T] <= P[|X-mu| >= 2 sigma2 - 1] <= sigma2/(2 sigma2 - 1)^2
/// <= 0.61/sigma2` and the correction chain
/// `E|a(X)| <= n t^2 + sigma t + delta/4 <= 3/4`, each link exactly, each
/// gated by its own applicability condition. Requires the law's mean and
/// variance to match the parameters exactly (Chebyshev is used exactly).
pub fn tail_and_correction_estimates(
    pi: &ExactDist,
    params: &BinHatParams,
) -> Result<EstimateReport, Error> {
    if pi.mean() != params.mu || pi.variance() != params.sigma2 {
        return Err(Error::Hypothesis(format!(
            "law moments ({}, {}) do not match parameters ({}, {})",
            pi.mean(),
            pi.variance(),
            params.mu,
            params.sigma2
        )));
    }
    let t_lo = params.shift;
    let t_hi = params.shift + params.n as i64;
    let p_outside: Rat = pi
        .iter()
        .filter(|(k, _)| *k < t_lo || *k > t_hi)
        .map(|(_, p)| p.clone())
        .sum();

    let dev_threshold = rat_i(2) * &params.sigma2 - rat_i(1);
    let p_large_dev: Rat = pi
        .iter()
        .filter(|(k, _)| (rat_i(*k) - &params.mu).abs() >= dev_threshold)
        .map(|(_, p)| p.clone())
        .sum();
    let inclusion_ok = p_outside <= p_large_dev;

    let (chebyshev_cap, chebyshev_ok) = if dev_threshold.is_positive() {
        let cap = &params.sigma2 / (&dev_threshold * &dev_threshold);
        let ok = p_large_dev <= cap;
        (Some(cap), Some(ok))
    } else {
        (None, None)
    };

    let large_variance = params.sigma2 >= rat(7, 5);
    let (tail_cap, cap_chain_ok) = if large_variance {
        let cap = rat(61, 100) / &params.sigma2;
        let ok = chebyshev_cap
            .as_ref()
            .map(|c| c <= &cap)
            .unwrap_or(false);
        (Some(cap), Some(ok))
    } else {
        (None, None)
    };

    let mean_abs_correction: Rat = pi
        .iter()
        .map(|(k, p)| params.correction_at(&rat_i(k)).abs() * p)
        .sum();
    let (correction_radicand, correction_rest) = params.correction_mean_bound();
    let correction_bound_ok = le_sqrt_form(
        &mean_abs_correction,
        &correction_radicand,
        &correction_rest,
    );
    let correction_le_three_quarters = mean_abs_correction <= rat(3, 4);
    let correction_cap_ok = if large_variance {
        Some(sqrt_form_le(
            &correction_radicand,
            &correction_rest,
            &rat_i(0),
            &rat(3, 4),
        ))
    } else {
        None
    };

    Ok(EstimateReport {
        p_outside,
        p_large_dev,
        dev_threshold,
        chebyshev_cap,
        tail_cap,
        mean_abs_correction,
        correction_radicand,
        correction_rest,
        inclusion_ok,
        chebyshev_ok,
        cap_chain_ok,
        correction_bound_ok,
        correction_le_three_quarters,
        correction_cap_ok,
    })
}

/// The single-site resampling pair for the matched binomial target itself:
/// `up(k) = (n - j) p / n`, `down(k) = j (1 - p) / n` with `j = k - shift`.
/// Reversible for the target with drift coefficient `1/n`. Errors when the
/// success probability is not strictly positive.
pub fn binhat_flip_kernel(params: &BinHatParams) -> Result<BirthDeathKernel, Error> {
    let p = params.success_prob();
    if !p.is_positive() {
        return Err(Error::Degenerate(format!(
            "no resampling pair: success probability {p} is not positive"
        )));
    }
    let n = params.n;
    let q = rat_i(1) - &p;
    let nr = rat_i(n as i64);
    let up: Vec<Rat> = (0..=n).map(|j| rat_i((n - j) as i64) * &p / &nr).collect();
    let down: Vec<Rat> = (0..=n).map(|j| rat_i(j as i64) * &q / &nr).collect();
    BirthDeathKernel::new(params.shift, up, down)
}

/// A deliberately different law: moves half of the lowest mass one step
/// up. Used as a negative control for the characterization check.
pub fn perturbed_copy(dist: &ExactDist) -> ExactDist {
    let mut probs: Vec<Rat> = dist.probs().to_vec();
    if probs.len() == 1 {
        probs.push(rat_i(0));
    }
    let half = &probs[0] / rat_i(2);
    probs[0] = &probs[0] - &half;
    probs[1] = &probs[1] + &half;
    ExactDist::new(dist.lo(), probs).expect("perturbation preserves total mass")
}
