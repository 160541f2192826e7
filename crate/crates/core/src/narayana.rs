//! The normalized Narayana law on {1, .., n}: its adjacent-transposition
//! birth-death kernel, closed-form moments with a stationarity-based
//! moment ladder re-derivation, closed-form movement variance with the
//! full identity chain, certification against the matched binomial
//! target, and normal-approximation diagnostics.

use num_traits::Zero;

use crate::dist::{narayana_dist, narayana_mean_var, ExactDist, MomentSet};
use crate::metrics::{kolmogorov_vs_normal, local_limit_stat};
use crate::poly::Poly;
use crate::rat::{rat_i, to_f64, Rat};
use crate::stein::{
    certify as stein_certify, extract_lambda, BirthDeathKernel, BoundReport, CertStatus,
    SqrtBound,
};
use crate::Error;

/// A fully materialized instance: law plus exact moments.
#[derive(Debug, Clone)]
pub struct NarayanaInstance {
    pub n: u64,
    pub dist: ExactDist,
    pub mu: Rat,
    pub sigma2: Rat,
}

/// Requires `n >= 2` (the kernel and variance need at least two states).
pub fn instance(n: u64) -> Result<NarayanaInstance, Error> {
    let dist = narayana_dist(n)?;
    let (mu, sigma2) = narayana_mean_var(n)?;
    Ok(NarayanaInstance {
        n,
        dist,
        mu,
        sigma2,
    })
}

/// The adjacent-swap chain on {1, .., n}:
/// `up(k) = (n-k)(n-k+1) / (n(n-1))`, `down(k) = k(k-1) / (n(n-1))`.
pub fn narayana_kernel(n: u64) -> Result<BirthDeathKernel, Error> {
    if n < 2 {
        return Err(Error::InvalidParam(format!(
            "kernel needs n >= 2, got {n}"
        )));
    }
    let denom = rat_i((n * (n - 1)) as i64);
    let up: Vec<Rat> = (1..=n)
        .map(|k| rat_i(((n - k) * (n - k + 1)) as i64) / &denom)
        .collect();
    let down: Vec<Rat> = (1..=n)
        .map(|k| rat_i((k * (k - 1)) as i64) / &denom)
        .collect();
    BirthDeathKernel::new(1, up, down)
}

fn poly_n(n: u64) -> Rat {
    rat_i(n as i64)
}

/// First four raw moments in closed form (`n >= 2`).
pub fn closed_moments(n: u64) -> Result<MomentSet, Error> {
    if n < 2 {
        return Err(Error::InvalidParam(format!(
            "closed moments need n >= 2, got {n}"
        )));
    }
    let nr = poly_n(n);
    let m1 = (&nr + rat_i(1)) / rat_i(2);
    let n2 = &nr * &nr;
    let n3 = &n2 * &nr;
    let n4 = &n3 * &nr;
    let n5 = &n4 * &nr;
    let m2 = (&n3 + rat_i(2) * &n2 - rat_i(1)) / (rat_i(4) * &nr - rat_i(2));
    let np1 = &nr + rat_i(1);
    let m3 = (&n2 + rat_i(2) * &nr - rat_i(2)) * &np1 * &np1 / (rat_i(8) * &nr - rat_i(4));
    let m4 = (&n5 + rat_i(4) * &n4 - rat_i(3) * &n3 - rat_i(12) * &n2 + rat_i(2) * &nr
        + rat_i(6))
        * &np1
        / (rat_i(4) * (rat_i(2) * &nr - rat_i(1)) * (rat_i(2) * &nr - rat_i(3)));
    Ok(MomentSet { m1, m2, m3, m4 })
}

/// Re-derives the first four raw moments from stationarity alone: for
/// `Q_r(k) = (n-k)(n-k+1)[(k+1)^r - k^r] + k(k-1)[(k-1)^r - k^r]`,
/// reversibility forces `E[Q_r(K)] = 0`, and the top-degree coefficient
/// of `Q_r` must cancel, leaving a linear equation for the r-th moment.
/// The cancellation is asserted (hypothesis error on failure).
pub fn moment_ladder(n: u64) -> Result<MomentSet, Error> {
    if n < 2 {
        return Err(Error::InvalidParam(format!(
            "moment ladder needs n >= 2, got {n}"
        )));
    }
    let nr = poly_n(n);
    // u(k) = (n-k)(n-k+1), d(k) = k(k-1) as polynomials in k.
    let u = Poly::linear(nr.clone(), rat_i(-1)).mul(&Poly::linear(&nr + rat_i(1), rat_i(-1)));
    let d = Poly::linear(rat_i(0), rat_i(1)).mul(&Poly::linear(rat_i(-1), rat_i(1)));
    let k_poly = Poly::linear(rat_i(0), rat_i(1));
    let k_up = Poly::linear(rat_i(1), rat_i(1));
    let k_dn = Poly::linear(rat_i(-1), rat_i(1));

    let mut moments: Vec<Rat> = vec![rat_i(1)];
    for r in 1..=4u32 {
        let a_r = k_up.pow(r).sub(&k_poly.pow(r));
        let b_r = k_dn.pow(r).sub(&k_poly.pow(r));
        let q = u.mul(&a_r).add(&d.mul(&b_r));
        if q.degree() != Some(r as usize) {
            return Err(Error::Hypothesis(format!(
                "degree-{} cancellation failed in the moment ladder at r={r}",
                r + 1
            )));
        }
        let lead = q.coeff(r as usize);
        if lead.is_zero() {
            return Err(Error::Hypothesis(format!(
                "vanishing leading coefficient in the moment ladder at r={r}"
            )));
        }
        let mut known = rat_i(0);
        for (i, m) in moments.iter().enumerate() {
            known += q.coeff(i) * m;
        }
        moments.push(-known / lead);
    }
    Ok(MomentSet {
        m1: moments[1].clone(),
        m2: moments[2].clone(),
        m3: moments[3].clone(),
        m4: moments[4].clone(),
    })
}

/// Closed-form movement variance
/// `Var S = (n+1)(n-2) / ((2n-1)^2 (2n-3) (n-1))` (`n >= 2`).
pub fn var_s_closed(n: u64) -> Result<Rat, Error> {
    if n < 2 {
        return Err(Error::InvalidParam(format!(
            "movement variance needs n >= 2, got {n}"
        )));
    }
    let nr = poly_n(n);
    let num = (&nr + rat_i(1)) * (&nr - rat_i(2));
    let tm1 = rat_i(2) * &nr - rat_i(1);
    let den = &tm1 * &tm1 * (rat_i(2) * &nr - rat_i(3)) * (&nr - rat_i(1));
    Ok(num / den)
}

/// The intermediate product-moment identities feeding the closed movement
/// variance, each evaluated directly against its closed form.
#[derive(Debug, Clone)]
pub struct VarSIdentities {
    /// `E[(K-1)(n-K)]` direct and closed `n(n-1)(n-2)/(4n-2)`.
    pub e_prod: Rat,
    pub e_prod_closed: Rat,
    /// `E[(K-1)^2 (n-K)^2]` direct and closed
    /// `n^2 (n^4 - 7n^3 + 19n^2 - 23n + 10) / (4 (4n^2 - 8n + 3))`.
    pub e_prod_sq: Rat,
    pub e_prod_sq_closed: Rat,
    /// `Var[(K-1)(n-K)]` direct and closed
    /// `(n+1) n^2 (n-1)(n-2) / (4 (2n-1)^2 (2n-3))`.
    pub var_prod: Rat,
    pub var_prod_closed: Rat,
    /// Kernel-derived `Var S` and the scaling identity
    /// `Var S = 4 Var[(K-1)(n-K)] / (n^2 (n-1)^2)`.
    pub var_s_kernel: Rat,
    pub var_s_scaled: Rat,
    pub var_s_closed: Rat,
    pub all_ok: bool,
}

pub fn var_s_identities(n: u64) -> Result<VarSIdentities, Error> {
    let inst = instance(n)?;
    let nr = poly_n(n);

    let e_prod: Rat = inst
        .dist
        .iter()
        .map(|(k, p)| (rat_i(k) - rat_i(1)) * (&nr - rat_i(k)) * p)
        .sum();
    let e_prod_closed =
        &nr * (&nr - rat_i(1)) * (&nr - rat_i(2)) / (rat_i(4) * &nr - rat_i(2));

    let e_prod_sq: Rat = inst
        .dist
        .iter()
        .map(|(k, p)| {
            let f = (rat_i(k) - rat_i(1)) * (&nr - rat_i(k));
            &f * &f * p
        })
        .sum();
    let n2 = &nr * &nr;
    let n3 = &n2 * &nr;
    let n4 = &n3 * &nr;
    let e_prod_sq_closed = &n2
        * (&n4 - rat_i(7) * &n3 + rat_i(19) * &n2 - rat_i(23) * &nr + rat_i(10))
        / (rat_i(4) * (rat_i(4) * &n2 - rat_i(8) * &nr + rat_i(3)));

    let var_prod = &e_prod_sq - &e_prod * &e_prod;
    let tm1 = rat_i(2) * &nr - rat_i(1);
    let var_prod_closed = (&nr + rat_i(1)) * &n2 * (&nr - rat_i(1)) * (&nr - rat_i(2))
        / (rat_i(4) * &tm1 * &tm1 * (rat_i(2) * &nr - rat_i(3)));

    let kernel = narayana_kernel(n)?;
    let var_s_kernel = crate::stein::var_s(&kernel, &inst.dist)?;
    let nm1 = &nr - rat_i(1);
    let var_s_scaled = rat_i(4) * &var_prod / (&n2 * &nm1 * &nm1);
    let var_s_closed_v = var_s_closed(n)?;

    let all_ok = e_prod == e_prod_closed
        && e_prod_sq == e_prod_sq_closed
        && var_prod == var_prod_closed
        && var_s_kernel == var_s_scaled
        && var_s_kernel == var_s_closed_v;

    Ok(VarSIdentities {
        e_prod,
        e_prod_closed,
        e_prod_sq,
        e_prod_sq_closed,
        var_prod,
        var_prod_closed,
        var_s_kernel,
        var_s_scaled,
        var_s_closed: var_s_closed_v,
        all_ok,
    })
}

/// Certification result for one instance, including the `12/n` cap.
#[derive(Debug, Clone)]
pub struct NarayanaReport {
    pub n: u64,
    pub report: BoundReport,
    /// `12/n`.
    pub cap: Rat,
    /// Exact check that the evaluated bound is at most `12/n`.
    pub cap_holds: bool,
    /// The bound produced from the closed movement variance coincides
    /// exactly with the kernel-derived bound.
    pub intermediate_matches: bool,
}

/// Closed-form rendering of the kernel bound:
/// radicand `(n-2)/((2n-3)(n-1)(n+1))`, tail `28(2n-1)/(5(n-1)(n+1))`.
pub fn intermediate_bound(n: u64) -> Result<SqrtBound, Error> {
    if n < 2 {
        return Err(Error::InvalidParam(format!(
            "intermediate bound needs n >= 2, got {n}"
        )));
    }
    let nr = poly_n(n);
    let radicand = (&nr - rat_i(2))
        / ((rat_i(2) * &nr - rat_i(3)) * (&nr - rat_i(1)) * (&nr + rat_i(1)));
    let tail =
        rat_i(28) * (rat_i(2) * &nr - rat_i(1)) / (rat_i(5) * (&nr - rat_i(1)) * (&nr + rat_i(1)));
    Ok(SqrtBound { radicand, tail })
}

pub fn certify(n: u64) -> Result<NarayanaReport, Error> {
    let inst = instance(n)?;
    let kernel = narayana_kernel(n)?;
    let report = stein_certify(
        &kernel,
        &inst.dist,
        &inst.mu,
        &inst.sigma2,
        format!("narayana n={n}"),
    )?;
    let cap = rat_i(12) / poly_n(n);
    let cap_bound = SqrtBound {
        radicand: rat_i(0),
        tail: cap.clone(),
    };
    let cap_holds = report.status != CertStatus::HypothesisFailed && report.bound.le(&cap_bound);
    let intermediate_matches = intermediate_bound(n)? == report.bound;
    Ok(NarayanaReport {
        n,
        report,
        cap,
        cap_holds,
        intermediate_matches,
    })
}

/// Normal-approximation diagnostics for one instance.
#[derive(Debug, Clone)]
pub struct NormalChecks {
    /// Sup-distance between the exact CDF and the normal CDF with the
    /// matching mean and variance.
    pub kolmogorov: f64,
    /// `1.59 / sqrt(n)`.
    pub kolmogorov_cap: f64,
    pub kolmogorov_ok: bool,
    /// Exact check `sigma2 >= n/8`.
    pub variance_floor_ok: bool,
    /// `sqrt(sigma) * sup_k |pmf(k) - normal density at k|`.
    pub local_limit_stat: f64,
}

pub fn normal_approx_checks(n: u64) -> Result<NormalChecks, Error> {
    let inst = instance(n)?;
    let sigma = to_f64(&inst.sigma2).sqrt();
    let kolmogorov = kolmogorov_vs_normal(&inst.dist, &inst.mu, sigma);
    let kolmogorov_cap = 1.59 / (n as f64).sqrt();
    let variance_floor_ok = inst.sigma2 >= rat_i(n as i64) / rat_i(8);
    let lls = local_limit_stat(&inst.dist, &inst.mu, sigma);
    Ok(NormalChecks {
        kolmogorov,
        kolmogorov_cap,
        kolmogorov_ok: kolmogorov <= kolmogorov_cap,
        variance_floor_ok,
        local_limit_stat: lls,
    })
}

/// One row of the sweep report: certification plus moment, pair, and
/// normal-approximation diagnostics.
#[derive(Debug, Clone)]
pub struct NarayanaRow {
    pub n: u64,
    pub tv: Rat,
    pub bound: SqrtBound,
    /// `12/n`.
    pub cap: Rat,
    pub cap_holds: bool,
    pub kolmogorov: f64,
    pub kolmogorov_cap: f64,
    pub local_limit_stat: f64,
    /// Ladder, closed-form, and direct moments all agree.
    pub moments_ok: bool,
    pub reversibility_ok: bool,
    /// Drift coefficient equals `2/(n-1)` with zero linearity defect.
    pub lambda_ok: bool,
    pub status: CertStatus,
}

pub fn full_row(n: u64) -> Result<NarayanaRow, Error> {
    let inst = instance(n)?;
    let nar = certify(n)?;
    let kernel = narayana_kernel(n)?;
    let diag = extract_lambda(&kernel, &inst.dist)?;

    let direct = inst.dist.moment_set();
    let closed = closed_moments(n)?;
    let ladder = moment_ladder(n)?;
    let moments_ok = direct == closed && closed == ladder;

    let reversibility_ok = diag.reversibility_residual.is_zero();
    let lambda_expected = rat_i(2) / (poly_n(n) - rat_i(1));
    let lambda_ok =
        diag.lambda.as_ref() == Some(&lambda_expected) && diag.linearity_residual.is_zero();

    let normal = normal_approx_checks(n)?;
    let tv = nar.report.tv.clone().unwrap_or_else(|| rat_i(0));

    Ok(NarayanaRow {
        n,
        tv,
        bound: nar.report.bound.clone(),
        cap: nar.cap.clone(),
        cap_holds: nar.cap_holds,
        kolmogorov: normal.kolmogorov,
        kolmogorov_cap: normal.kolmogorov_cap,
        local_limit_stat: normal.local_limit_stat,
        moments_ok,
        reversibility_ok,
        lambda_ok,
        status: nar.report.status,
    })
}
