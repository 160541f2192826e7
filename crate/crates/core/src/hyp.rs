//! Hypergeometric counts (sampling without replacement): the one-swap
//! birth-death kernel, the closed movement function, the exact variance
//! polynomial identity with its term-by-term caps, and certification of
//! both the kernel-level bound and the displayed closed-form bound.

use crate::binhat::binhat_params;
use crate::dist::{hypergeometric_dist, hypergeometric_mean_var, ExactDist};
use crate::rat::{rat, rat_i, Rat};
use crate::stein::{
    certify as stein_certify, s_function, BirthDeathKernel, BoundReport, CertStatus, SqrtBound,
};
use crate::Error;

/// A fully materialized instance: `n` draws from a population of `big_n`
/// with `m` marked items.
#[derive(Debug, Clone)]
pub struct HypInstance {
    pub big_n: u64,
    pub n: u64,
    pub m: u64,
    pub dist: ExactDist,
    pub mu: Rat,
    pub sigma2: Rat,
}

/// Requires `1 <= m < big_n` and `1 <= n < big_n` (nondegenerate count).
pub fn instance(big_n: u64, n: u64, m: u64) -> Result<HypInstance, Error> {
    if m == 0 || m >= big_n || n == 0 || n >= big_n {
        return Err(Error::InvalidParam(format!(
            "need 1 <= m < N and 1 <= n < N; got N={big_n} n={n} m={m}"
        )));
    }
    let dist = hypergeometric_dist(big_n, n, m)?;
    let (mu, sigma2) = hypergeometric_mean_var(big_n, n, m)?;
    Ok(HypInstance {
        big_n,
        n,
        m,
        dist,
        mu,
        sigma2,
    })
}

/// Drift coefficient of the one-swap pair: `N / (m (N - m + 1))`.
pub fn lambda(big_n: u64, m: u64) -> Rat {
    rat_i(big_n as i64) / (rat_i(m as i64) * rat_i((big_n - m + 1) as i64))
}

/// The one-swap chain: pick a marked item and an unmarked item and swap
/// their sampled/unsampled roles. On the count of marked items drawn,
/// `up(k) = (m-k)(n-k) / (m (N-m+1))`,
/// `down(k) = k (N-m-n+k) / (m (N-m+1))`.
pub fn hyp_kernel(big_n: u64, n: u64, m: u64) -> Result<BirthDeathKernel, Error> {
    let inst = instance(big_n, n, m)?;
    let denom = rat_i((m * (big_n - m + 1)) as i64);
    let lo = inst.dist.lo();
    let hi = inst.dist.hi();
    let up: Vec<Rat> = (lo..=hi)
        .map(|k| rat_i((m as i64 - k) * (n as i64 - k)) / &denom)
        .collect();
    let down: Vec<Rat> = (lo..=hi)
        .map(|k| rat_i(k * (big_n as i64 - m as i64 - n as i64 + k)) / &denom)
        .collect();
    BirthDeathKernel::new(lo, up, down)
}

/// Closed form of the movement probability:
/// `S(k) = (m n + (N - 2m - 2n) k + 2 k^2) / (m (N - m + 1))`.
pub fn s_closed(big_n: u64, n: u64, m: u64, k: i64) -> Rat {
    let big_n = big_n as i64;
    let n = n as i64;
    let m = m as i64;
    let num = rat_i(m * n) + rat_i(big_n - 2 * m - 2 * n) * rat_i(k) + rat_i(2 * k * k);
    num / rat_i(m * (big_n - m + 1))
}

/// The exact movement-variance identity chain for one instance, with
/// every displayed relaxation step checked as stated.
#[derive(Debug, Clone)]
pub struct HypIdentities {
    /// Kernel `S` agrees with the closed form at every state.
    pub s_matches: bool,
    /// `Var[(N-2m-2n) X + 2 X^2]`, directly.
    pub var_y_direct: Rat,
    /// The same variance via the closed polynomial identity.
    pub var_y_closed: Rat,
    pub bracket_ok: bool,
    /// Kernel-level `Var S` and its scaling consistency
    /// `Var S = (lambda/N)^2 Var Y`.
    pub var_s_kernel: Rat,
    pub var_s_scaled_ok: bool,
    /// Term caps: the three non-leading bracket terms over
    /// `(N-3)(N-2)(N-1)` are at most `13N`, `45N`, `72N` respectively.
    pub term_caps_ok: [bool; 3],
    /// `Var Y / sigma2 <= (N-2m)^2 (N-2n)^2 / ((N-3)(N-1)) + 130 N`.
    pub step_sum_ok: bool,
    /// `(N-2m)^2 (N-2n)^2 / ((N-3)(N-1)) <= 6 (N-2m)^2 (N-2n)^2 / N^2`.
    pub step_relax_ok: bool,
    /// `Var Y <= sigma2 (6 (N-2m)^2 (N-2n)^2 / N^2 + 130 N)`.
    pub var_y_final_ok: bool,
    pub all_ok: bool,
}

/// Requires `big_n >= 4` (the identity scales by `(N-3)(N-2)(N-1)`).
pub fn s_and_variance_identities(big_n: u64, n: u64, m: u64) -> Result<HypIdentities, Error> {
    if big_n < 4 {
        return Err(Error::InvalidParam(format!(
            "variance identities need N >= 4, got {big_n}"
        )));
    }
    let inst = instance(big_n, n, m)?;
    let kernel = hyp_kernel(big_n, n, m)?;

    let mut s_matches = true;
    for k in inst.dist.lo()..=inst.dist.hi() {
        if s_function(&kernel, k)? != s_closed(big_n, n, m, k) {
            s_matches = false;
        }
    }

    let big_n_i = big_n as i64;
    let n_i = n as i64;
    let m_i = m as i64;
    let lin = rat_i(big_n_i - 2 * m_i - 2 * n_i);
    let y = |k: i64| -> Rat { &lin * rat_i(k) + rat_i(2 * k * k) };
    let mean_y: Rat = inst.dist.iter().map(|(k, p)| y(k) * p).sum();
    let mean_y2: Rat = inst
        .dist
        .iter()
        .map(|(k, p)| {
            let v = y(k);
            &v * &v * p
        })
        .sum();
    let var_y_direct = mean_y2 - &mean_y * &mean_y;

    // Bracket terms over the common denominator (N-3)(N-2)(N-1).
    let a = big_n_i - 2 * m_i;
    let b = big_n_i - 2 * n_i;
    let d = rat_i((big_n_i - 3) * (big_n_i - 2) * (big_n_i - 1));
    let t1 = rat_i(a * a * b * b * (big_n_i - 2)) / &d;
    let t2 = rat_i(2 * a * b * (4 * m_i - 3) * (n_i - 1)) / &d;
    let t3 = rat_i(4 * a * (m_i - 1) * (n_i - 1) * (2 * m_i + 2 * n_i - 1)) / &d;
    let t4 = rat_i(8 * (m_i - 1) * m_i * (n_i - 1) * (2 * m_i - n_i - 1) - a * a * b) / &d;
    let var_y_closed = &inst.sigma2 * (&t1 + &t2 + &t3 + &t4);
    let bracket_ok = var_y_direct == var_y_closed;

    let var_s_kernel = crate::stein::var_s(&kernel, &inst.dist)?;
    let lam = lambda(big_n, m);
    let scale = &lam / rat_i(big_n_i);
    let var_s_scaled_ok = var_s_kernel == &scale * &scale * &var_y_direct;

    let cap = |c: i64| rat_i(c * big_n_i);
    let term_caps_ok = [t2 <= cap(13), t3 <= cap(45), t4 <= cap(72)];

    let leading = rat_i(a * a * b * b) / rat_i((big_n_i - 3) * (big_n_i - 1));
    let step_sum_ok = &t1 + &t2 + &t3 + &t4 <= &leading + cap(130);
    let relaxed = rat_i(6 * a * a * b * b) / rat_i(big_n_i * big_n_i);
    let step_relax_ok = leading <= relaxed;
    let var_y_final_ok = var_y_direct <= &inst.sigma2 * (&relaxed + cap(130));

    let all_ok = s_matches
        && bracket_ok
        && var_s_scaled_ok
        && term_caps_ok.iter().all(|&x| x)
        && step_sum_ok
        && step_relax_ok
        && var_y_final_ok;

    Ok(HypIdentities {
        s_matches,
        var_y_direct,
        var_y_closed,
        bracket_ok,
        var_s_kernel,
        var_s_scaled_ok,
        term_caps_ok,
        step_sum_ok,
        step_relax_ok,
        var_y_final_ok,
        all_ok,
    })
}

/// Certification result: the kernel-level report plus the displayed
/// closed-form bound
/// `sqrt(6 (N-2m)^2 (N-2n)^2 / (4 N^4 sigma2) + 130 / (4 N sigma2))
///  + 1.4/sigma2`.
#[derive(Debug, Clone)]
pub struct HypReport {
    pub big_n: u64,
    pub n: u64,
    pub m: u64,
    pub report: BoundReport,
    pub bound_display: SqrtBound,
    /// Verdict for the displayed bound alone.
    pub display_status: CertStatus,
    /// Exact check that the kernel-level bound is at most the displayed one.
    pub pair_le_display: bool,
}

/// Requires `big_n >= 4`.
pub fn certify(big_n: u64, n: u64, m: u64) -> Result<HypReport, Error> {
    if big_n < 4 {
        return Err(Error::InvalidParam(format!(
            "certification needs N >= 4, got {big_n}"
        )));
    }
    let inst = instance(big_n, n, m)?;
    let kernel = hyp_kernel(big_n, n, m)?;
    let report = stein_certify(
        &kernel,
        &inst.dist,
        &inst.mu,
        &inst.sigma2,
        format!("hypergeometric N={big_n} n={n} m={m}"),
    )?;

    let big_n_i = big_n as i64;
    let a = big_n_i - 2 * m as i64;
    let b = big_n_i - 2 * n as i64;
    let n4 = rat_i(big_n_i) * rat_i(big_n_i) * rat_i(big_n_i) * rat_i(big_n_i);
    let radicand = rat_i(6 * a * a * b * b) / (rat_i(4) * &n4 * &inst.sigma2)
        + rat_i(130) / (rat_i(4) * rat_i(big_n_i) * &inst.sigma2);
    let bound_display = SqrtBound {
        radicand,
        tail: rat(7, 5) / &inst.sigma2,
    };

    let params = binhat_params(&inst.mu, &inst.sigma2)?;
    let display_status = if report.status == CertStatus::HypothesisFailed {
        CertStatus::HypothesisFailed
    } else if params.is_degenerate() {
        if bound_display.ge_one() {
            CertStatus::HoldsVacuously
        } else {
            CertStatus::Violated
        }
    } else {
        let tv = report.tv.as_ref().expect("non-degenerate target has tv");
        if bound_display.covers(tv) {
            CertStatus::Holds
        } else {
            CertStatus::Violated
        }
    };
    let pair_le_display =
        report.status != CertStatus::HypothesisFailed && report.bound.le(&bound_display);

    Ok(HypReport {
        big_n,
        n,
        m,
        report,
        bound_display,
        display_status,
        pair_le_display,
    })
}

/// All admissible `(N, n, m)` triples with `4 <= N <= n_max`.
pub fn sweep_grid(n_max: u64) -> Vec<(u64, u64, u64)> {
    let mut grid = Vec::new();
    for big_n in 4..=n_max {
        for n in 1..big_n {
            for m in 1..big_n {
                grid.push((big_n, n, m));
            }
        }
    }
    grid
}
