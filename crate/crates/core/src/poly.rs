//! Minimal dense univariate polynomials over exact rationals, used to
//! expand stationarity identities in the moment ladder.

use num_traits::Zero;

use crate::rat::{rat_i, Rat};

/// Coefficients in ascending order; no trailing zeros.
#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) struct Poly(Vec<Rat>);

impl Poly {
    pub fn from_coeffs(mut coeffs: Vec<Rat>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Poly(coeffs)
    }

    pub fn constant(c: Rat) -> Self {
        Poly::from_coeffs(vec![c])
    }

    /// `c0 + c1 x`.
    pub fn linear(c0: Rat, c1: Rat) -> Self {
        Poly::from_coeffs(vec![c0, c1])
    }

    pub fn coeff(&self, i: usize) -> Rat {
        self.0.get(i).cloned().unwrap_or_else(|| rat_i(0))
    }

    pub fn degree(&self) -> Option<usize> {
        self.0.len().checked_sub(1)
    }

    pub fn add(&self, other: &Poly) -> Poly {
        let n = self.0.len().max(other.0.len());
        Poly::from_coeffs((0..n).map(|i| self.coeff(i) + other.coeff(i)).collect())
    }

    pub fn sub(&self, other: &Poly) -> Poly {
        let n = self.0.len().max(other.0.len());
        Poly::from_coeffs((0..n).map(|i| self.coeff(i) - other.coeff(i)).collect())
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        if self.0.is_empty() || other.0.is_empty() {
            return Poly(Vec::new());
        }
        let mut out = vec![rat_i(0); self.0.len() + other.0.len() - 1];
        for (i, a) in self.0.iter().enumerate() {
            for (j, b) in other.0.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Poly::from_coeffs(out)
    }

    pub fn pow(&self, e: u32) -> Poly {
        let mut out = Poly::constant(rat_i(1));
        for _ in 0..e {
            out = out.mul(self);
        }
        out
    }

}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::rat;

    #[test]
    fn arithmetic() {
        // (1 + x)^2 = 1 + 2x + x^2
        let p = Poly::linear(rat_i(1), rat_i(1)).pow(2);
        assert_eq!(p.coeff(0), rat_i(1));
        assert_eq!(p.coeff(1), rat_i(2));
        assert_eq!(p.coeff(2), rat_i(1));
        assert_eq!(p.degree(), Some(2));

        // (x+1)^2 - (x-1)^2 = 4x
        let q = Poly::linear(rat_i(-1), rat_i(1)).pow(2);
        let d = p.sub(&q);
        assert_eq!(d.degree(), Some(1));
        assert_eq!(d.coeff(1), rat_i(4));
        // Scaling: 4x * (x + 3/2)
        let e = d.mul(&Poly::linear(rat(3, 2), rat_i(1)));
        assert_eq!(e.coeff(1), rat_i(6));
        assert_eq!(e.coeff(2), rat_i(4));
    }

    #[test]
    fn trailing_zeros_are_trimmed() {
        let p = Poly::from_coeffs(vec![rat_i(1), rat_i(0), rat_i(0)]);
        assert_eq!(p.degree(), Some(0));
        let zero = Poly::from_coeffs(vec![rat_i(0)]);
        assert_eq!(zero.degree(), None);
    }
}
