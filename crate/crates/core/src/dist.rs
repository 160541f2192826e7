//! Integer-supported probability distributions with exact rational masses.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::floatdist::FloatDist;
use crate::rat::{pow_u, rat_i, to_f64, Rat};
use crate::Error;

/// A probability distribution on consecutive integers, stored dense.
///
/// Invariants: every mass is `>= 0`, the masses sum to exactly 1, and the
/// first and last stored entries are nonzero (trimmed support). Interior
/// zeros are permitted.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExactDist {
    offset: i64,
    probs: Vec<Rat>,
}

impl ExactDist {
    /// Builds a distribution from `offset` and the masses on consecutive
    /// integers starting there, validating and trimming zero edges.
    pub fn new(offset: i64, probs: Vec<Rat>) -> Result<Self, Error> {
        if probs.iter().any(|p| p.is_negative()) {
            return Err(Error::InvalidParam("negative probability mass".into()));
        }
        let total: Rat = probs.iter().sum();
        if !total.is_one() {
            return Err(Error::InvalidParam(format!(
                "masses sum to {total}, not 1"
            )));
        }
        let lead = probs.iter().take_while(|p| p.is_zero()).count();
        let trail = probs.iter().rev().take_while(|p| p.is_zero()).count();
        let trimmed: Vec<Rat> = probs[lead..probs.len() - trail].to_vec();
        debug_assert!(!trimmed.is_empty());
        Ok(ExactDist {
            offset: offset + lead as i64,
            probs: trimmed,
        })
    }

    pub fn point_mass(k: i64) -> Self {
        ExactDist {
            offset: k,
            probs: vec![rat_i(1)],
        }
    }

    /// Smallest support point.
    pub fn lo(&self) -> i64 {
        self.offset
    }

    /// Largest support point.
    pub fn hi(&self) -> i64 {
        self.offset + self.probs.len() as i64 - 1
    }

    pub fn len(&self) -> usize {
        self.probs.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn probs(&self) -> &[Rat] {
        &self.probs
    }

    /// Mass at `k`; zero off support.
    pub fn prob(&self, k: i64) -> Rat {
        if k < self.lo() || k > self.hi() {
            Rat::zero()
        } else {
            self.probs[(k - self.offset) as usize].clone()
        }
    }

    /// `(k, mass)` pairs over the stored support.
    pub fn iter(&self) -> impl Iterator<Item = (i64, &Rat)> {
        let offset = self.offset;
        self.probs
            .iter()
            .enumerate()
            .map(move |(i, p)| (offset + i as i64, p))
    }

    pub fn mean(&self) -> Rat {
        self.iter().map(|(k, p)| rat_i(k) * p).sum()
    }

    pub fn variance(&self) -> Rat {
        let m = self.mean();
        self.iter()
            .map(|(k, p)| {
                let d = rat_i(k) - &m;
                &d * &d * p
            })
            .sum()
    }

    /// Exact raw moments `E K^r` for `r = 1..=up_to`.
    pub fn raw_moments(&self, up_to: u32) -> Vec<Rat> {
        (1..=up_to)
            .map(|r| self.iter().map(|(k, p)| pow_u(&rat_i(k), r) * p).sum())
            .collect()
    }

    /// First four raw moments.
    pub fn moment_set(&self) -> MomentSet {
        let m = self.raw_moments(4);
        MomentSet {
            m1: m[0].clone(),
            m2: m[1].clone(),
            m3: m[2].clone(),
            m4: m[3].clone(),
        }
    }

    /// Same law shifted by `by`.
    pub fn shifted(&self, by: i64) -> Self {
        ExactDist {
            offset: self.offset + by,
            probs: self.probs.clone(),
        }
    }

    /// Float rendering (no truncation: the support is already finite).
    pub fn to_float(&self) -> FloatDist {
        FloatDist::new(
            self.offset,
            self.probs.iter().map(to_f64).collect(),
            0.0,
        )
    }
}

/// First four raw moments of an integer-supported law.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MomentSet {
    pub m1: Rat,
    pub m2: Rat,
    pub m3: Rat,
    pub m4: Rat,
}

impl MomentSet {
    pub fn variance(&self) -> Rat {
        &self.m2 - &self.m1 * &self.m1
    }
}

fn big(n: u64) -> BigInt {
    BigInt::from(n)
}

/// `a / b` asserting exact divisibility (used where divisibility is
/// guaranteed, e.g. Catalan and Narayana numerators).
fn exact_div(a: BigInt, b: &BigInt) -> BigInt {
    let (q, r) = a.div_rem(b);
    debug_assert!(r.is_zero());
    q
}

/// Catalan number `C_n = C(2n, n)/(n+1)`.
pub fn catalan(n: u64) -> BigInt {
    exact_div(num_integer::binomial(big(2 * n), big(n)), &big(n + 1))
}

/// Narayana number `N(n, k) = C(n, k-1) C(n, k)/n`, for `1 <= k <= n`.
pub fn narayana_number(n: u64, k: u64) -> Result<BigInt, Error> {
    if n == 0 || k == 0 || k > n {
        return Err(Error::Domain(format!("narayana_number({n}, {k})")));
    }
    let prod = num_integer::binomial(big(n), big(k - 1)) * num_integer::binomial(big(n), big(k));
    Ok(exact_div(prod, &big(n)))
}

/// The Narayana law on `{1, ..., n}`: mass `N(n,k)/C_n`.
pub fn narayana_dist(n: u64) -> Result<ExactDist, Error> {
    if n == 0 {
        return Err(Error::Domain("narayana_dist(0)".into()));
    }
    let cat = catalan(n);
    let probs = (1..=n)
        .map(|k| Ok(Rat::new(narayana_number(n, k)?, cat.clone())))
        .collect::<Result<Vec<_>, Error>>()?;
    ExactDist::new(1, probs)
}

/// Closed-form mean `(n+1)/2` and variance `(n-1)(n+1)/(4(2n-1))` of the
/// Narayana law; requires `n >= 2`.
pub fn narayana_mean_var(n: u64) -> Result<(Rat, Rat), Error> {
    if n < 2 {
        return Err(Error::Domain(format!("narayana_mean_var({n})")));
    }
    let n = rat_i(n as i64);
    let one = rat_i(1);
    let mu = (&n + &one) / rat_i(2);
    let sigma2 = (&n - &one) * (&n + &one) / (rat_i(4) * (rat_i(2) * &n - &one));
    Ok((mu, sigma2))
}

/// Law of a sum of independent Bernoulli variables, by exact convolution.
pub fn poisson_binomial_dist(p: &[Rat]) -> Result<ExactDist, Error> {
    for pi in p {
        if pi.is_negative() || *pi > rat_i(1) {
            return Err(Error::InvalidParam(format!(
                "Bernoulli probability {pi} outside [0, 1]"
            )));
        }
    }
    let mut probs = vec![rat_i(1)];
    for pi in p {
        let q = rat_i(1) - pi;
        let mut next = vec![Rat::zero(); probs.len() + 1];
        for (j, w) in probs.iter().enumerate() {
            next[j] += w * &q;
            next[j + 1] += w * pi;
        }
        probs = next;
    }
    ExactDist::new(0, probs)
}

/// The hypergeometric law: `k` good items among `n` draws without
/// replacement from `N` items of which `m` are good.
pub fn hypergeometric_dist(cap_n: u64, n: u64, m: u64) -> Result<ExactDist, Error> {
    if cap_n == 0 || m > cap_n || n > cap_n {
        return Err(Error::Domain(format!(
            "hypergeometric_dist({cap_n}, {n}, {m})"
        )));
    }
    let lo = (n + m).saturating_sub(cap_n);
    let hi = n.min(m);
    let den = num_integer::binomial(big(cap_n), big(n));
    let probs = (lo..=hi)
        .map(|k| {
            let w = num_integer::binomial(big(m), big(k))
                * num_integer::binomial(big(cap_n - m), big(n - k));
            Rat::new(w, den.clone())
        })
        .collect();
    ExactDist::new(lo as i64, probs)
}

/// Closed-form mean and variance of the hypergeometric law
/// (`nm/N`, `mn(N-m)(N-n)/((N-1)N^2)`); requires `N >= 2`.
pub fn hypergeometric_mean_var(cap_n: u64, n: u64, m: u64) -> Result<(Rat, Rat), Error> {
    if cap_n < 2 || m > cap_n || n > cap_n {
        return Err(Error::Domain(format!(
            "hypergeometric_mean_var({cap_n}, {n}, {m})"
        )));
    }
    let (cn, nn, mm) = (rat_i(cap_n as i64), rat_i(n as i64), rat_i(m as i64));
    let mu = &nn * &mm / &cn;
    let sigma2 =
        &mm * &nn * (&cn - &mm) * (&cn - &nn) / ((&cn - rat_i(1)) * &cn * &cn);
    Ok((mu, sigma2))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::rat;

    /// Independent binomial oracle: Pascal's triangle, additions only.
    fn pascal_binomial(n: u64, k: u64) -> BigInt {
        let mut row: Vec<BigInt> = vec![BigInt::from(1)];
        for _ in 0..n {
            let mut next = vec![BigInt::from(1)];
            for i in 1..row.len() {
                next.push(&row[i - 1] + &row[i]);
            }
            next.push(BigInt::from(1));
            row = next;
        }
        row[k as usize].clone()
    }

    #[test]
    fn catalan_small_values() {
        assert_eq!(catalan(0), BigInt::from(1));
        assert_eq!(catalan(3), BigInt::from(5));
        assert_eq!(catalan(10), BigInt::from(16796));
    }

    #[test]
    fn catalan_agrees_with_pascal_oracle() {
        for n in 0..=20u64 {
            let oracle = pascal_binomial(2 * n, n) / BigInt::from(n + 1);
            assert_eq!(catalan(n), oracle, "n={n}");
        }
    }

    #[test]
    fn narayana_numbers_and_row_sums() {
        assert_eq!(narayana_number(3, 2).unwrap(), BigInt::from(3));
        assert_eq!(narayana_number(4, 2).unwrap(), BigInt::from(6));
        for n in 1..=60u64 {
            assert_eq!(narayana_number(n, 1).unwrap(), BigInt::from(1));
            let row: BigInt = (1..=n).map(|k| narayana_number(n, k).unwrap()).sum();
            assert_eq!(row, catalan(n), "row sum n={n}");
        }
        assert!(narayana_number(3, 0).is_err());
        assert!(narayana_number(3, 4).is_err());
    }

    #[test]
    fn narayana_dist_small_cases() {
        let d3 = narayana_dist(3).unwrap();
        assert_eq!(d3.lo(), 1);
        assert_eq!(d3.probs(), &[rat(1, 5), rat(3, 5), rat(1, 5)]);

        let d1 = narayana_dist(1).unwrap();
        assert_eq!(d1, ExactDist::point_mass(1));

        let d4 = narayana_dist(4).unwrap();
        assert_eq!(
            d4.probs(),
            &[rat(1, 14), rat(6, 14), rat(6, 14), rat(1, 14)]
        );
    }

    #[test]
    fn narayana_dist_is_symmetric() {
        for n in 1..=40u64 {
            let d = narayana_dist(n).unwrap();
            let probs = d.probs();
            for i in 0..probs.len() {
                assert_eq!(probs[i], probs[probs.len() - 1 - i], "n={n} i={i}");
            }
        }
    }

    #[test]
    fn narayana_mean_var_matches_direct_summation() {
        assert_eq!(narayana_mean_var(3).unwrap(), (rat_i(2), rat(2, 5)));
        assert_eq!(narayana_mean_var(2).unwrap(), (rat(3, 2), rat(1, 4)));
        assert_eq!(narayana_mean_var(5).unwrap(), (rat_i(3), rat(2, 3)));
        assert!(narayana_mean_var(1).is_err());
        for n in 2..=100u64 {
            let d = narayana_dist(n).unwrap();
            let (mu, sigma2) = narayana_mean_var(n).unwrap();
            assert_eq!(d.mean(), mu, "mean n={n}");
            assert_eq!(d.variance(), sigma2, "variance n={n}");
        }
    }

    #[test]
    fn poisson_binomial_small_cases() {
        let fair = poisson_binomial_dist(&[rat(1, 2), rat(1, 2)]).unwrap();
        assert_eq!(fair.lo(), 0);
        assert_eq!(fair.probs(), &[rat(1, 4), rat(1, 2), rat(1, 4)]);

        let degenerate = poisson_binomial_dist(&[rat_i(1), rat_i(0)]).unwrap();
        assert_eq!(degenerate, ExactDist::point_mass(1));

        let quarter = poisson_binomial_dist(&[rat(1, 4), rat(1, 4)]).unwrap();
        assert_eq!(quarter.probs(), &[rat(9, 16), rat(6, 16), rat(1, 16)]);

        assert!(poisson_binomial_dist(&[rat(2, 1)]).is_err());
        assert!(poisson_binomial_dist(&[rat(-1, 2)]).is_err());
    }

    #[test]
    fn poisson_binomial_moments() {
        let p = [rat(1, 3), rat(2, 7), rat(9, 11), rat(1, 2)];
        let d = poisson_binomial_dist(&p).unwrap();
        let mu: Rat = p.iter().cloned().sum();
        let s2: Rat = p.iter().map(|pi| pi * (rat_i(1) - pi)).sum();
        assert_eq!(d.mean(), mu);
        assert_eq!(d.variance(), s2);
    }

    #[test]
    fn hypergeometric_small_cases() {
        let d = hypergeometric_dist(4, 2, 2).unwrap();
        assert_eq!(d.lo(), 0);
        assert_eq!(d.probs(), &[rat(1, 6), rat(4, 6), rat(1, 6)]);

        let all_good = hypergeometric_dist(7, 3, 7).unwrap();
        assert_eq!(all_good, ExactDist::point_mass(3));

        let d6 = hypergeometric_dist(6, 3, 3).unwrap();
        assert_eq!(
            d6.probs(),
            &[rat(1, 20), rat(9, 20), rat(9, 20), rat(1, 20)]
        );

        assert!(hypergeometric_dist(4, 5, 2).is_err());
    }

    #[test]
    fn hypergeometric_closed_moments_match() {
        for cap_n in 2..=12u64 {
            for m in 0..=cap_n {
                for n in 0..=cap_n {
                    let d = hypergeometric_dist(cap_n, n, m).unwrap();
                    let (mu, s2) = hypergeometric_mean_var(cap_n, n, m).unwrap();
                    assert_eq!(d.mean(), mu, "{cap_n},{n},{m}");
                    assert_eq!(d.variance(), s2, "{cap_n},{n},{m}");
                }
            }
        }
    }

    #[test]
    fn raw_moments_of_narayana_three() {
        let d = narayana_dist(3).unwrap();
        let m = d.raw_moments(4);
        assert_eq!(m, vec![rat_i(2), rat(22, 5), rat(52, 5), rat_i(26)]);
        let ms = d.moment_set();
        assert_eq!(ms.variance(), rat(2, 5));
    }

    #[test]
    fn raw_moments_of_point_mass() {
        let d = ExactDist::point_mass(-3);
        assert_eq!(
            d.raw_moments(4),
            vec![rat_i(-3), rat_i(9), rat_i(-27), rat_i(81)]
        );
    }

    #[test]
    fn constructor_rejects_bad_masses_and_trims() {
        assert!(ExactDist::new(0, vec![rat(1, 2)]).is_err());
        assert!(ExactDist::new(0, vec![rat(3, 2), rat(-1, 2)]).is_err());
        let d = ExactDist::new(5, vec![rat_i(0), rat(1, 2), rat(1, 2), rat_i(0)]).unwrap();
        assert_eq!(d.lo(), 6);
        assert_eq!(d.hi(), 7);
        assert_eq!(d.prob(5), rat_i(0));
        assert_eq!(d.prob(6), rat(1, 2));
    }
}
