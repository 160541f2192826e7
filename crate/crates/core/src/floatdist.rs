//! Float-backed distributions on consecutive integers, for the few places
//! where an irrational constant forces floating point (the translated
//! Poisson target and normal-CDF comparisons).

use crate::rat::{frac_part, to_f64, Rat};
use crate::Error;

/// A (possibly truncated) distribution on consecutive integers with `f64`
/// masses. `omitted` bounds the truncated-away mass.
#[derive(Debug, Clone, PartialEq)]
pub struct FloatDist {
    offset: i64,
    probs: Vec<f64>,
    omitted: f64,
}

impl FloatDist {
    /// Builds from `offset` and consecutive masses, trimming exact-zero
    /// edges. `omitted` records mass lost to truncation.
    pub fn new(offset: i64, probs: Vec<f64>, omitted: f64) -> Self {
        debug_assert!(probs.iter().all(|p| p.is_finite() && *p >= 0.0));
        debug_assert!((0.0..1.0).contains(&omitted));
        let lead = probs.iter().take_while(|p| **p == 0.0).count();
        let trail = probs[lead..].iter().rev().take_while(|p| **p == 0.0).count();
        let trimmed = probs[lead..probs.len() - trail].to_vec();
        debug_assert!(!trimmed.is_empty());
        FloatDist {
            offset: offset + lead as i64,
            probs: trimmed,
            omitted,
        }
    }

    pub fn lo(&self) -> i64 {
        self.offset
    }

    pub fn hi(&self) -> i64 {
        self.offset + self.probs.len() as i64 - 1
    }

    pub fn probs(&self) -> &[f64] {
        &self.probs
    }

    /// Upper bound on the mass lost to truncation.
    pub fn omitted(&self) -> f64 {
        self.omitted
    }

    pub fn prob(&self, k: i64) -> f64 {
        if k < self.lo() || k > self.hi() {
            0.0
        } else {
            self.probs[(k - self.offset) as usize]
        }
    }

    pub fn iter(&self) -> impl Iterator<Item = (i64, f64)> + '_ {
        let offset = self.offset;
        self.probs
            .iter()
            .enumerate()
            .map(move |(i, p)| (offset + i as i64, *p))
    }

    pub fn total(&self) -> f64 {
        self.probs.iter().sum()
    }

    pub fn shifted(&self, by: i64) -> Self {
        FloatDist {
            offset: self.offset + by,
            probs: self.probs.clone(),
            omitted: self.omitted,
        }
    }
}

/// Largest Poisson parameter accepted before the pmf recurrence from zero
/// would underflow; far above every parameter the sweeps produce.
const MAX_POISSON_PARAM: f64 = 600.0;

/// The integer-translated Poisson law matching a target mean and variance:
/// `Poisson(sigma2 + frac) + floor`, where `mu - sigma2 = floor + frac`
/// splits into integer and fractional part. Truncated so the omitted mass
/// is below `truncation_mass` (must lie in `(0, 1e-9]`).
pub fn translated_poisson_dist(
    mu: &Rat,
    sigma2: &Rat,
    truncation_mass: f64,
) -> Result<FloatDist, Error> {
    use num_traits::{Signed, ToPrimitive};
    if !sigma2.is_positive() {
        return Err(Error::InvalidParam(format!(
            "variance {sigma2} must be positive"
        )));
    }
    if !(truncation_mass > 0.0 && truncation_mass <= 1e-9) {
        return Err(Error::InvalidParam(format!(
            "truncation mass {truncation_mass} outside (0, 1e-9]"
        )));
    }
    let diff = mu - sigma2;
    let shift = diff
        .floor()
        .to_integer()
        .to_i64()
        .ok_or_else(|| Error::InvalidParam("mean/variance too large".into()))?;
    let lambda = to_f64(&(sigma2 + frac_part(&diff)));
    if !(lambda <= MAX_POISSON_PARAM) {
        return Err(Error::InvalidParam(format!(
            "Poisson parameter {lambda} exceeds supported range {MAX_POISSON_PARAM}"
        )));
    }
    let mut probs = Vec::new();
    let mut p = (-lambda).exp();
    let mut cum = 0.0f64;
    let mut k = 0u64;
    loop {
        probs.push(p);
        cum += p;
        // Past the mode the remaining tail is dominated by a geometric
        // series with ratio lambda/(k+1) < 1.
        let ratio = lambda / (k as f64 + 1.0);
        if ratio < 1.0 {
            let tail_bound = p * ratio / (1.0 - ratio);
            if tail_bound < truncation_mass {
                break;
            }
        }
        p *= lambda / (k as f64 + 1.0);
        k += 1;
        debug_assert!(k < 1_000_000, "Poisson truncation failed to converge");
    }
    let omitted = (1.0 - cum).max(0.0);
    debug_assert!(omitted < truncation_mass);
    Ok(FloatDist::new(shift, probs, omitted))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::{rat, rat_i};

    #[test]
    fn integer_case_has_no_shift() {
        let d = translated_poisson_dist(&rat_i(5), &rat_i(5), 1e-12).unwrap();
        assert_eq!(d.lo(), 0);
        assert!((d.prob(0) - (-5.0f64).exp()).abs() < 1e-16);
        assert!(d.omitted() < 1e-12);
        assert!((d.total() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn fractional_case_shifts_by_floor() {
        // mu = 2, sigma2 = 2/5: mu - sigma2 = 8/5, so the law is
        // Poisson(2/5 + 3/5) = Poisson(1) shifted by 1.
        let d = translated_poisson_dist(&rat_i(2), &rat(2, 5), 1e-12).unwrap();
        assert_eq!(d.lo(), 1);
        let e1 = (-1.0f64).exp();
        assert!((d.prob(1) - e1).abs() < 1e-15);
        assert!((d.prob(2) - e1).abs() < 1e-15);
        assert!((d.prob(3) - e1 / 2.0).abs() < 1e-15);
        // Mean of the truncated law is close to mu.
        let mean: f64 = d.iter().map(|(k, p)| k as f64 * p).sum();
        assert!((mean - 2.0).abs() < 1e-10);
    }

    #[test]
    fn negative_shift_supported() {
        // mu = -3, sigma2 = 1/2: mu - sigma2 = -7/2 -> shift -4,
        // Poisson(1/2 + 1/2) = Poisson(1).
        let d = translated_poisson_dist(&rat_i(-3), &rat(1, 2), 1e-12).unwrap();
        assert_eq!(d.lo(), -4);
        assert!((d.prob(-4) - (-1.0f64).exp()).abs() < 1e-15);
    }

    #[test]
    fn rejects_bad_inputs() {
        assert!(translated_poisson_dist(&rat_i(1), &rat_i(0), 1e-12).is_err());
        assert!(translated_poisson_dist(&rat_i(1), &rat_i(1), 1e-8).is_err());
        assert!(translated_poisson_dist(&rat_i(1), &rat_i(1), 0.0).is_err());
        assert!(translated_poisson_dist(&rat_i(1), &rat_i(1000), 1e-12).is_err());
    }

    #[test]
    fn truncation_mass_is_configurable_and_respected() {
        for tm in [1e-12, 1e-10, 1e-9] {
            let d = translated_poisson_dist(&rat(15, 2), &rat(22, 7), tm).unwrap();
            assert!(d.omitted() < tm);
            assert!(1.0 - d.total() < tm);
        }
    }

    #[test]
    fn trims_zero_edges() {
        let d = FloatDist::new(3, vec![0.0, 0.5, 0.5, 0.0], 0.0);
        assert_eq!(d.lo(), 4);
        assert_eq!(d.hi(), 5);
        assert_eq!(d.prob(3), 0.0);
        assert_eq!(d.prob(4), 0.5);
    }
}
