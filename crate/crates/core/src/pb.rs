//! Sums of independent Bernoulli variables with unequal success
//! probabilities: the single-site resampling pair, its closed-form
//! movement variance, certification against the matched binomial target,
//! and the comparison with the translated-Poisson approximation bound.

use num_traits::{Signed, Zero};
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::binhat::{binhat_dist, binhat_params};
use crate::dist::poisson_binomial_dist;
use crate::floatdist::translated_poisson_dist;
use crate::metrics::{tv_distance, tv_distance_float};
use crate::rat::{rat, rat_i, Rat};
use crate::stein::{
    pair_bound, BirthDeathKernel, BoundReport, CertStatus, SqrtBound,
};
use crate::Error;

/// Mean `sum p_i` and variance `sum p_i (1 - p_i)`.
pub fn mean_var(p: &[Rat]) -> (Rat, Rat) {
    let mu: Rat = p.iter().cloned().sum();
    let sigma2: Rat = p.iter().map(|q| q * (rat_i(1) - q)).sum();
    (mu, sigma2)
}

/// Closed-form variance of the full-vector movement probability of the
/// single-site resampling pair:
/// `Var S = (1/n^2) sum_i (1 - 2 p_i)^2 p_i (1 - p_i)`.
pub fn var_s(p: &[Rat]) -> Result<Rat, Error> {
    if p.is_empty() {
        return Err(Error::InvalidParam("need at least one probability".into()));
    }
    for q in p {
        if q.is_negative() || q > &rat_i(1) {
            return Err(Error::InvalidParam(format!(
                "success probability {q} outside [0, 1]"
            )));
        }
    }
    let n = rat_i(p.len() as i64);
    let sum: Rat = p
        .iter()
        .map(|q| {
            let c = rat_i(1) - rat_i(2) * q;
            &c * &c * q * (rat_i(1) - q)
        })
        .sum();
    Ok(sum / (&n * &n))
}

/// Certification result: the pair-form bound, the directly expanded
/// displayed bound, and their exact agreement.
#[derive(Debug, Clone)]
pub struct PBReport {
    /// Number of trials.
    pub n: usize,
    pub mu: Rat,
    pub report: BoundReport,
    /// `sqrt(sum (1-2p)^2 p (1-p) / (4 sigma^4)) + 1.4/sigma2`, expanded
    /// independently of the pair form.
    pub bound_direct: SqrtBound,
    /// Exact coincidence of the two renderings.
    pub bounds_match: bool,
}

/// Certifies one indicator-sum instance against its matched binomial
/// target. Errors when the variance is zero (deterministic sum).
pub fn certify(p: &[Rat]) -> Result<PBReport, Error> {
    let dist = poisson_binomial_dist(p)?;
    let (mu, sigma2) = mean_var(p);
    if sigma2.is_zero() {
        return Err(Error::Degenerate(
            "deterministic sum: variance is zero".into(),
        ));
    }
    let n = p.len();
    let lambda = rat_i(1) / rat_i(n as i64);
    let vs = var_s(p)?;
    let bound = pair_bound(&lambda, &sigma2, &vs)?;

    let s4 = &sigma2 * &sigma2;
    let direct_radicand: Rat = p
        .iter()
        .map(|q| {
            let c = rat_i(1) - rat_i(2) * q;
            &c * &c * q * (rat_i(1) - q)
        })
        .sum::<Rat>()
        / (rat_i(4) * &s4);
    let bound_direct = SqrtBound {
        radicand: direct_radicand,
        tail: rat(7, 5) / &sigma2,
    };
    let bounds_match = bound == bound_direct;

    let params = binhat_params(&mu, &sigma2)?;
    let (tv, status) = if params.is_degenerate() {
        let status = if bound.ge_one() {
            CertStatus::HoldsVacuously
        } else {
            CertStatus::Violated
        };
        (None, status)
    } else {
        let target = binhat_dist(&params)?;
        let tv = tv_distance(&dist, &target);
        let status = if bound.covers(&tv) {
            CertStatus::Holds
        } else {
            CertStatus::Violated
        };
        (Some(tv), status)
    };

    Ok(PBReport {
        n,
        mu,
        report: BoundReport {
            label: format!("indicator-sum n={n}"),
            lambda: Some(lambda),
            sigma2,
            var_s: vs,
            tv,
            bound,
            status,
        },
        bound_direct,
        bounds_match,
    })
}

/// Side-by-side comparison with the translated-Poisson approximation:
/// the binomial-target bound in pair form versus the translated-Poisson
/// bound `sqrt(sum p^3 (1-p)) / sigma2 + 2/sigma2`, together with the
/// numerically evaluated distance to the translated-Poisson law.
#[derive(Debug, Clone)]
pub struct TPComparison {
    pub bound_pair: SqrtBound,
    pub bound_tp: SqrtBound,
    /// Total variation between the exact indicator-sum law and the
    /// truncated translated-Poisson law (float; truncation below 1e-9).
    pub tv_tp: f64,
    /// Exact comparison of the two bound values.
    pub pair_bound_smaller: bool,
    pub tp_bound_holds: bool,
}

pub fn translated_poisson_comparison(
    p: &[Rat],
    truncation_mass: f64,
) -> Result<TPComparison, Error> {
    let dist = poisson_binomial_dist(p)?;
    let (mu, sigma2) = mean_var(p);
    if sigma2.is_zero() {
        return Err(Error::Degenerate(
            "deterministic sum: variance is zero".into(),
        ));
    }
    let n = p.len();
    let lambda = rat_i(1) / rat_i(n as i64);
    let vs = var_s(p)?;
    let bound_pair = pair_bound(&lambda, &sigma2, &vs)?;

    let s4 = &sigma2 * &sigma2;
    let tp_radicand: Rat = p
        .iter()
        .map(|q| q * q * q * (rat_i(1) - q))
        .sum::<Rat>()
        / &s4;
    let bound_tp = SqrtBound {
        radicand: tp_radicand,
        tail: rat_i(2) / &sigma2,
    };

    let tp = translated_poisson_dist(&mu, &sigma2, truncation_mass)?;
    let tv_tp = tv_distance_float(&dist.to_float(), &tp);

    Ok(TPComparison {
        pair_bound_smaller: bound_pair.le(&bound_tp),
        tp_bound_holds: tv_tp <= bound_tp.value(),
        bound_pair,
        bound_tp,
        tv_tp,
    })
}

/// The birth-death kernel induced on the sum by single-site resampling:
/// `up(k) = (1/n) sum_i p_i (1-p_i) P_-i(k) / P(k)` and
/// `down(k) = (1/n) sum_i p_i (1-p_i) P_-i(k-1) / P(k)`, where `P_-i` is
/// the law of the sum without coordinate `i`. Conditioning on the sum can
/// only shrink the movement variance, so the kernel-level `Var S` is at
/// most the closed-form full-vector value.
pub fn induced_kernel(p: &[Rat]) -> Result<BirthDeathKernel, Error> {
    let dist = poisson_binomial_dist(p)?;
    if dist.len() == 1 {
        return Err(Error::Degenerate(
            "deterministic sum induces no moves".into(),
        ));
    }
    let n = rat_i(p.len() as i64);
    let mut up = vec![rat_i(0); dist.len()];
    let mut down = vec![rat_i(0); dist.len()];
    for i in 0..p.len() {
        let w = &p[i] * (rat_i(1) - &p[i]);
        if w.is_zero() {
            continue;
        }
        let rest: Vec<Rat> = p
            .iter()
            .enumerate()
            .filter(|(j, _)| *j != i)
            .map(|(_, q)| q.clone())
            .collect();
        let loo = poisson_binomial_dist(&rest)?;
        for (idx, k) in (dist.lo()..=dist.hi()).enumerate() {
            up[idx] += &w * loo.prob(k);
            down[idx] += &w * loo.prob(k - 1);
        }
    }
    for (idx, k) in (dist.lo()..=dist.hi()).enumerate() {
        let scale = &n * dist.prob(k);
        up[idx] = &up[idx] / &scale;
        down[idx] = &down[idx] / &scale;
    }
    BirthDeathKernel::new(dist.lo(), up, down)
}

/// Seeded random probability vectors: length 2..=50, entries `a/b` with
/// `b <= 16`, resampled until the variance exceeds 1/4 (so the matched
/// binomial target always exists). Deterministic in the seed.
pub fn random_p_sequences(seed: u64, count: usize) -> Vec<Vec<Rat>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(count);
    while out.len() < count {
        let len = rng.gen_range(2usize..=50);
        let p: Vec<Rat> = (0..len)
            .map(|_| {
                let den = rng.gen_range(1i64..=16);
                let num = rng.gen_range(0i64..=den);
                rat(num, den)
            })
            .collect();
        let (_, sigma2) = mean_var(&p);
        if sigma2 > rat(1, 4) {
            out.push(p);
        }
    }
    out
}
