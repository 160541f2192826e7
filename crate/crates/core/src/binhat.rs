//! The shifted symmetric-ish binomial target: given a mean and variance,
//! build the unique law `Bi(n, 1/2 - t) + shift` whose mean is exactly the
//! requested mean and whose variance is within `1/4` above / `1/(4 sigma2)`
//! below the requested variance.

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive};

use crate::dist::ExactDist;
use crate::rat::{frac_part, rat, rat_i, Rat};
use crate::Error;

/// Parameters of the matched binomial target.
///
/// With `delta` the fractional part of `-4 sigma2`:
/// `n = 4 sigma2 + delta` (an integer), the success probability is
/// `1/2 - t`, and the law is shifted by the integer `shift`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BinHatParams {
    pub mu: Rat,
    pub sigma2: Rat,
    pub n: u64,
    pub delta: Rat,
    pub t: Rat,
    pub shift: i64,
}

impl BinHatParams {
    /// Success probability `1/2 - t`; may be negative in the degenerate
    /// regime (only possible when `n == 1`).
    pub fn success_prob(&self) -> Rat {
        rat(1, 2) - &self.t
    }

    /// True when the success probability is negative, i.e. no actual
    /// binomial law with these parameters exists.
    pub fn is_degenerate(&self) -> bool {
        self.success_prob().is_negative()
    }

    /// The quadratic correction `a(k) = n t^2 - (k - mu) t - delta/4`
    /// appearing in the discrete characterizing operator.
    pub fn correction_at(&self, k: &Rat) -> Rat {
        rat_i(self.n as i64) * &self.t * &self.t - (k - &self.mu) * &self.t - &self.delta / rat_i(4)
    }

    /// Upper bound `n t^2 + sigma t + delta/4` used for `E|a(X)|`; the
    /// middle term is returned as a (radicand, rest) pair so callers can
    /// compare without evaluating a square root:
    /// `E|a(X)| <= sqrt(radicand) + rest` with
    /// `radicand = sigma2 t^2`, `rest = n t^2 + delta/4`.
    pub fn correction_mean_bound(&self) -> (Rat, Rat) {
        let t2 = &self.t * &self.t;
        let radicand = &self.sigma2 * &t2;
        let rest = rat_i(self.n as i64) * &t2 + &self.delta / rat_i(4);
        (radicand, rest)
    }
}

/// Computes the matched binomial parameters for a target mean and variance.
/// Requires `sigma2 > 0`. Always succeeds there, even when the resulting
/// success probability is negative (see [`BinHatParams::is_degenerate`]).
pub fn binhat_params(mu: &Rat, sigma2: &Rat) -> Result<BinHatParams, Error> {
    if !sigma2.is_positive() {
        return Err(Error::InvalidParam(format!(
            "variance {sigma2} must be positive"
        )));
    }
    let four_s2 = rat_i(4) * sigma2;
    let delta = frac_part(&(-&four_s2));
    let n_rat = &four_s2 + &delta;
    debug_assert!(n_rat.is_integer());
    let n = n_rat
        .to_integer()
        .to_u64()
        .ok_or_else(|| Error::InvalidParam(format!("variance {sigma2} too large")))?;
    let anchor = -mu + rat_i(2) * sigma2 + &delta / rat_i(2);
    let t = frac_part(&anchor) / &n_rat;
    let shift = (-anchor.floor().to_integer())
        .to_i64()
        .ok_or_else(|| Error::InvalidParam(format!("mean {mu} too large")))?;
    Ok(BinHatParams {
        mu: mu.clone(),
        sigma2: sigma2.clone(),
        n,
        delta,
        t,
        shift,
    })
}

/// The law `Bi(n, 1/2 - t) + shift` for the given parameters. Errors in the
/// degenerate regime where the success probability is negative.
pub fn binhat_dist(params: &BinHatParams) -> Result<ExactDist, Error> {
    let p = params.success_prob();
    if p.is_negative() {
        return Err(Error::Degenerate(format!(
            "success probability {p} is negative (n = {}, t = {})",
            params.n, params.t
        )));
    }
    let q = rat_i(1) - &p;
    let n = params.n;
    let probs = (0..=n)
        .map(|j| {
            let c = num_integer::binomial(BigInt::from(n), BigInt::from(j));
            Rat::from(c) * crate::rat::pow_u(&p, j as u32) * crate::rat::pow_u(&q, (n - j) as u32)
        })
        .collect();
    ExactDist::new(params.shift, probs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::Zero;

    /// Formal variance `n p (1 - p)`, which is defined (and bracketed)
    /// even when `p < 0`.
    fn formal_variance(params: &BinHatParams) -> Rat {
        let p = params.success_prob();
        rat_i(params.n as i64) * &p * (rat_i(1) - &p)
    }

    fn formal_mean(params: &BinHatParams) -> Rat {
        rat_i(params.n as i64) * params.success_prob() + rat_i(params.shift)
    }

    #[test]
    fn quarter_quarter_case() {
        // mu = 1/4, sigma2 = 1/4: n = 1, delta = 0, t = 1/4, shift = 0,
        // law = Bernoulli(1/4).
        let params = binhat_params(&rat(1, 4), &rat(1, 4)).unwrap();
        assert_eq!(params.n, 1);
        assert_eq!(params.delta, rat_i(0));
        assert_eq!(params.t, rat(1, 4));
        assert_eq!(params.shift, 0);
        let d = binhat_dist(&params).unwrap();
        assert_eq!(d.probs(), &[rat(3, 4), rat(1, 4)]);
        assert_eq!(d.mean(), rat(1, 4));
    }

    #[test]
    fn narayana_three_moments_case() {
        // mu = 2, sigma2 = 2/5: n = 2, t = 0, shift = 1 -> Bi(2, 1/2) + 1.
        let params = binhat_params(&rat_i(2), &rat(2, 5)).unwrap();
        assert_eq!(params.n, 2);
        assert_eq!(params.delta, rat(2, 5));
        assert_eq!(params.t, rat_i(0));
        assert_eq!(params.shift, 1);
        let d = binhat_dist(&params).unwrap();
        assert_eq!(d.lo(), 1);
        assert_eq!(d.probs(), &[rat(1, 4), rat(1, 2), rat(1, 4)]);
        assert_eq!(d.mean(), rat_i(2));
        assert_eq!(d.variance(), rat(1, 2));
    }

    #[test]
    fn integer_variance_gives_zero_delta() {
        let params = binhat_params(&rat(7, 2), &rat_i(9)).unwrap();
        assert_eq!(params.n, 36);
        assert_eq!(params.delta, rat_i(0));
    }

    #[test]
    fn degenerate_regime_detected() {
        // mu = 9/10, sigma2 = 1/8: n = 1, t = 3/5, p = -1/10.
        let params = binhat_params(&rat(9, 10), &rat(1, 8)).unwrap();
        assert_eq!(params.n, 1);
        assert_eq!(params.t, rat(3, 5));
        assert!(params.is_degenerate());
        assert!(binhat_dist(&params).is_err());
        // Degeneracy requires n == 1; formal mean still matches exactly.
        assert_eq!(formal_mean(&params), rat(9, 10));
    }

    #[test]
    fn rejects_nonpositive_variance() {
        assert!(binhat_params(&rat_i(1), &rat_i(0)).is_err());
        assert!(binhat_params(&rat_i(1), &rat(-1, 2)).is_err());
    }

    #[test]
    fn mean_exact_and_variance_bracketed_on_grid() {
        let mus = [rat(-7, 3), rat_i(0), rat(1, 2), rat(9, 10), rat(13, 4)];
        let s2s = [
            rat(1, 8),
            rat(1, 4),
            rat(2, 5),
            rat_i(1),
            rat(27, 7),
            rat_i(100),
        ];
        for mu in &mus {
            for s2 in &s2s {
                let params = binhat_params(mu, s2).unwrap();
                // n is the ceiling of 4 sigma2.
                let four_s2 = rat_i(4) * s2;
                assert!(rat_i(params.n as i64) >= four_s2);
                assert!(rat_i(params.n as i64) < four_s2 + rat_i(1) || params.delta.is_zero());
                // t in [0, 1/n).
                assert!(!params.t.is_negative());
                assert!(&params.t * rat_i(params.n as i64) < rat_i(1));
                // Mean matches exactly; formal variance is bracketed.
                assert_eq!(formal_mean(&params), mu.clone(), "mu={mu} s2={s2}");
                let v = formal_variance(&params);
                assert!(v <= s2 + rat(1, 4), "upper mu={mu} s2={s2}");
                assert!(v > s2 - rat_i(1) / (rat_i(4) * s2), "lower mu={mu} s2={s2}");
                // When non-degenerate the realized law has those moments.
                if !params.is_degenerate() {
                    let d = binhat_dist(&params).unwrap();
                    assert_eq!(d.mean(), mu.clone());
                    assert_eq!(d.variance(), v);
                }
            }
        }
    }

    #[test]
    fn correction_bound_dominates_pointwise_mean() {
        // E a(X) = n t^2 - delta/4 when X has mean mu; the advertised
        // bound dominates |E a(X)| for a non-degenerate sample case.
        let params = binhat_params(&rat(13, 4), &rat(27, 7)).unwrap();
        let d = binhat_dist(&params).unwrap();
        let mean_a: Rat = d
            .iter()
            .map(|(k, p)| params.correction_at(&rat_i(k)) * p)
            .sum();
        let expected = rat_i(params.n as i64) * &params.t * &params.t - &params.delta / rat_i(4);
        assert_eq!(mean_a, expected);
        let (radicand, rest) = params.correction_mean_bound();
        assert!(crate::rat::le_sqrt_form(&mean_a.abs(), &radicand, &rest));
    }
}
