//! Laurent polynomials in `z` over the rationals.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use super::poly::{write_terms, Poly};
use super::rational::Rational;

/// `Σ coeffs[i] · z^(low + i)`, with nonzero first and last coefficient.
/// The zero element has no coefficients and `low == 0`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct LaurentPoly {
    low: i64,
    coeffs: Vec<Rational>,
}

impl LaurentPoly {
    pub fn new(low: i64, mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        let lead = coeffs.iter().take_while(|c| c.is_zero()).count();
        if lead == coeffs.len() {
            return LaurentPoly::zero();
        }
        coeffs.drain(..lead);
        LaurentPoly {
            low: low + lead as i64,
            coeffs,
        }
    }

    pub fn zero() -> Self {
        LaurentPoly {
            low: 0,
            coeffs: Vec::new(),
        }
    }

    pub fn one() -> Self {
        LaurentPoly::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        LaurentPoly::new(0, vec![c])
    }

    pub fn monomial(c: Rational, e: i64) -> Self {
        LaurentPoly::new(e, vec![c])
    }

    /// Symbol of the forward difference, `z^-1 - 1`.
    pub fn delta() -> Self {
        LaurentPoly::new(-1, vec![Rational::one(), -Rational::one()])
    }

    /// `Σ p_k (z^-1 - 1)^k`, i.e. the polynomial `p` evaluated at Δ.
    pub fn from_delta_poly(p: &Poly) -> Self {
        let delta = LaurentPoly::delta();
        let mut acc = LaurentPoly::zero();
        let mut pow = LaurentPoly::one();
        for c in p.coeffs() {
            acc = &acc + &pow.scale(c);
            pow = &pow * &delta;
        }
        acc
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Lowest exponent with nonzero coefficient (0 for the zero element).
    pub fn low(&self) -> i64 {
        self.low
    }

    /// Highest exponent with nonzero coefficient; `None` for zero.
    pub fn high(&self) -> Option<i64> {
        (!self.is_zero()).then(|| self.low + self.coeffs.len() as i64 - 1)
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn coeff(&self, e: i64) -> Rational {
        let i = e - self.low;
        if i < 0 {
            return Rational::zero();
        }
        self.coeffs
            .get(i as usize)
            .cloned()
            .unwrap_or_else(Rational::zero)
    }

    /// Nonzero terms as `(exponent, coefficient)`.
    pub fn terms(&self) -> impl Iterator<Item = (i64, &Rational)> {
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(move |(i, c)| (self.low + i as i64, c))
    }

    pub fn scale(&self, s: &Rational) -> Self {
        if s.is_zero() {
            return LaurentPoly::zero();
        }
        LaurentPoly {
            low: self.low,
            coeffs: self.coeffs.iter().map(|c| c * s).collect(),
        }
    }

    /// Multiplication by `z^k`.
    pub fn shift(&self, k: i64) -> Self {
        if self.is_zero() {
            return LaurentPoly::zero();
        }
        LaurentPoly {
            low: self.low + k,
            coeffs: self.coeffs.clone(),
        }
    }

    pub fn pow(&self, n: usize) -> Self {
        (0..n).fold(LaurentPoly::one(), |acc, _| &acc * self)
    }

    /// Every monomial `c·z^k` becomes `c·z^(2k)`.
    pub fn substitute_square(&self) -> Self {
        if self.is_zero() {
            return LaurentPoly::zero();
        }
        let mut coeffs = vec![Rational::zero(); 2 * self.coeffs.len() - 1];
        for (i, c) in self.coeffs.iter().enumerate() {
            coeffs[2 * i] = c.clone();
        }
        LaurentPoly::new(2 * self.low, coeffs)
    }

    /// Exact quotient `self / divisor`, or `None` if it is not a Laurent polynomial.
    ///
    /// Writing both as `z^l · P(z)` with `P(0) != 0`, the quotient is a Laurent
    /// polynomial iff the ordinary polynomial division `P_self / P_divisor`
    /// leaves no remainder.
    pub fn div_exact(&self, divisor: &LaurentPoly) -> Option<LaurentPoly> {
        if divisor.is_zero() {
            return None;
        }
        if self.is_zero() {
            return Some(LaurentPoly::zero());
        }
        let b = &divisor.coeffs;
        let b_lead = b.last().expect("nonzero divisor");
        let mut rem = self.coeffs.clone();
        if rem.len() < b.len() {
            return None;
        }
        let qlen = rem.len() - b.len() + 1;
        let mut quot = vec![Rational::zero(); qlen];
        for i in (0..qlen).rev() {
            let c = &rem[i + b.len() - 1] / b_lead;
            if c.is_zero() {
                continue;
            }
            for (j, bj) in b.iter().enumerate() {
                rem[i + j] -= &c * bj;
            }
            quot[i] = c;
        }
        if rem.iter().any(|c| !c.is_zero()) {
            return None;
        }
        Some(LaurentPoly::new(self.low - divisor.low, quot))
    }

    /// If no positive powers occur, returns `P` with `self = P(z^-1)`.
    pub fn as_poly_in_zinv(&self) -> Option<Poly> {
        if self.is_zero() {
            return Some(Poly::zero());
        }
        if self.high().unwrap() > 0 {
            return None;
        }
        let deg = (-self.low) as usize;
        let mut coeffs = vec![Rational::zero(); deg + 1];
        for (e, c) in self.terms() {
            coeffs[(-e) as usize] = c.clone();
        }
        Some(Poly::new(coeffs))
    }

    /// If the entry is a polynomial in Δ = z^-1 - 1, returns that polynomial.
    pub fn as_delta_poly(&self) -> Option<Poly> {
        self.as_poly_in_zinv().map(|p| p.shift(&Rational::one()))
    }
}

impl Add for &LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self.clone();
        }
        let low = self.low.min(rhs.low);
        let high = self.high().unwrap().max(rhs.high().unwrap());
        LaurentPoly::new(
            low,
            (low..=high).map(|e| self.coeff(e) + rhs.coeff(e)).collect(),
        )
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        LaurentPoly {
            low: self.low,
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl Sub for &LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: &LaurentPoly) -> LaurentPoly {
        self + &(-rhs)
    }
}

impl Mul for &LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        if self.is_zero() || rhs.is_zero() {
            return LaurentPoly::zero();
        }
        let mut out = vec![Rational::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        LaurentPoly::new(self.low + rhs.low, out)
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_terms(f, &self.coeffs, self.low, "z")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rational::{int, rat};

    fn lp(low: i64, c: &[i64]) -> LaurentPoly {
        LaurentPoly::new(low, c.iter().map(|&v| int(v)).collect())
    }

    #[test]
    fn normalization_trims_both_ends() {
        let p = lp(-2, &[0, 0, 1, 2, 0]);
        assert_eq!(p.low(), 0);
        assert_eq!(p.high(), Some(1));
        assert!(lp(3, &[0, 0]).is_zero());
        assert_eq!(lp(3, &[0, 0]), LaurentPoly::zero());
    }

    #[test]
    fn arithmetic() {
        let a = lp(-1, &[1, -1]); // z^-1 - 1
        let b = lp(0, &[1, 1]); // 1 + z
        assert_eq!(&a * &b, lp(-1, &[1, 0, -1]));
        assert!((&a - &a).is_zero());
        assert_eq!(a.pow(2), lp(-2, &[1, -2, 1]));
    }

    #[test]
    fn substitute_square_is_monomialwise() {
        assert_eq!(lp(1, &[1]).substitute_square(), lp(2, &[1]));
        assert_eq!(lp(-1, &[1, -1]).substitute_square(), lp(-2, &[1, 0, -1]));
        assert_eq!(lp(0, &[1, 1, 1]).substitute_square(), lp(0, &[1, 0, 1, 0, 1]));
    }

    #[test]
    fn exact_division() {
        // (z^-1 - z) / (z^-2 - 1) = z
        let num = lp(-1, &[1, 0, -1]);
        let den = lp(-2, &[1, 0, -1]);
        assert_eq!(num.div_exact(&den), Some(lp(1, &[1])));
        assert_eq!(LaurentPoly::one().div_exact(&LaurentPoly::delta()), None);
        assert_eq!(LaurentPoly::zero().div_exact(&den), Some(LaurentPoly::zero()));
        assert_eq!(num.div_exact(&LaurentPoly::zero()), None);
        // (1 + z)/2 divided by 1/2
        let half = LaurentPoly::constant(rat(1, 2));
        assert_eq!(lp(0, &[1, 1]).scale(&rat(1, 2)).div_exact(&half), Some(lp(0, &[1, 1])));
    }

    #[test]
    fn delta_polynomials() {
        let p = Poly::new(vec![int(-1), rat(-1, 2)]);
        let sym = LaurentPoly::from_delta_poly(&p);
        // -1 - (z^-1 - 1)/2 = -1/2 - z^-1/2
        assert_eq!(sym, LaurentPoly::new(-1, vec![rat(-1, 2), rat(-1, 2)]));
        assert_eq!(sym.as_delta_poly(), Some(p));
        assert_eq!(lp(1, &[1]).as_delta_poly(), None);
    }

    #[test]
    fn display() {
        assert_eq!(LaurentPoly::delta().to_string(), "z^-1 - 1");
        assert_eq!(LaurentPoly::zero().to_string(), "0");
    }
}
