//! Dense univariate polynomials over the rationals.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::rational::{binomial, factorial, format_rational, Rational};

/// Coefficients by ascending degree, trailing zeros trimmed.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct Poly {
    coeffs: Vec<Rational>,
}

impl Poly {
    pub fn new(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    pub fn constant(c: Rational) -> Self {
        Poly::new(vec![c])
    }

    pub fn one() -> Self {
        Poly::constant(Rational::one())
    }

    /// `c · x^k`
    pub fn monomial(c: Rational, k: usize) -> Self {
        let mut coeffs = vec![Rational::zero(); k + 1];
        coeffs[k] = c;
        Poly::new(coeffs)
    }

    /// `x^k / k!`, the normalized monomial.
    pub fn normalized_monomial(k: usize) -> Self {
        Poly::monomial(Rational::new(BigInt::one(), factorial(k)), k)
    }

    pub fn from_ints(coeffs: &[i64]) -> Self {
        Poly::new(coeffs.iter().map(|&c| Rational::from_integer(c.into())).collect())
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> Rational {
        self.coeffs.get(k).cloned().unwrap_or_else(Rational::zero)
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn leading_coeff(&self) -> Rational {
        self.coeffs.last().cloned().unwrap_or_else(Rational::zero)
    }

    pub fn eval(&self, x: &Rational) -> Rational {
        self.coeffs
            .iter()
            .rev()
            .fold(Rational::zero(), |acc, c| acc * x + c)
    }

    pub fn eval_f64(&self, x: f64) -> f64 {
        self.coeffs
            .iter()
            .rev()
            .fold(0.0, |acc, c| acc * x + super::rational::to_f64(c))
    }

    pub fn scale(&self, s: &Rational) -> Self {
        if s.is_zero() {
            return Poly::zero();
        }
        Poly::new(self.coeffs.iter().map(|c| c * s).collect())
    }

    pub fn derivative(&self) -> Self {
        Poly::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, c)| c * Rational::from_integer(k.into()))
                .collect(),
        )
    }

    pub fn nth_derivative(&self, n: usize) -> Self {
        (0..n).fold(self.clone(), |p, _| p.derivative())
    }

    /// Antiderivative vanishing at zero.
    pub fn antiderivative(&self) -> Self {
        let mut coeffs = Vec::with_capacity(self.coeffs.len() + 1);
        coeffs.push(Rational::zero());
        for (k, c) in self.coeffs.iter().enumerate() {
            coeffs.push(c / Rational::from_integer((k + 1).into()));
        }
        Poly::new(coeffs)
    }

    /// `q(x) = p(x + t)`.
    pub fn shift(&self, t: &Rational) -> Self {
        if t.is_zero() || self.coeffs.len() < 2 {
            return self.clone();
        }
        // powers of t up to the degree
        let mut tpow = Vec::with_capacity(self.coeffs.len());
        tpow.push(Rational::one());
        for i in 1..self.coeffs.len() {
            tpow.push(&tpow[i - 1] * t);
        }
        let mut out = vec![Rational::zero(); self.coeffs.len()];
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            for (i, slot) in out.iter_mut().enumerate().take(k + 1) {
                let b = Rational::from_integer(binomial(k, i));
                *slot += c * b * &tpow[k - i];
            }
        }
        Poly::new(out)
    }

    /// `q(x) = p(a·x + b)`.
    pub fn affine(&self, a: &Rational, b: &Rational) -> Self {
        let mut scaled = Vec::with_capacity(self.coeffs.len());
        let mut apow = Rational::one();
        for c in &self.coeffs {
            scaled.push(c * &apow);
            apow *= a;
        }
        // p(a x + b) = p_a(x + b/a) when a != 0
        if a.is_zero() {
            return Poly::constant(self.eval(b));
        }
        Poly::new(scaled).shift(&(b / a))
    }

    /// Unit-step forward difference `p(x+1) - p(x)`.
    pub fn forward_difference(&self) -> Self {
        &self.shift(&Rational::one()) - self
    }

    pub fn forward_difference_pow(&self, k: usize) -> Self {
        (0..k).fold(self.clone(), |p, _| p.forward_difference())
    }
}

impl Add for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Poly::new((0..n).map(|k| self.coeff(k) + rhs.coeff(k)).collect())
    }
}

impl Sub for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Poly::new((0..n).map(|k| self.coeff(k) - rhs.coeff(k)).collect())
    }
}

impl Mul for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        if self.is_zero() || rhs.is_zero() {
            return Poly::zero();
        }
        let mut out = vec![Rational::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Poly::new(out)
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly::new(self.coeffs.iter().map(|c| -c).collect())
    }
}

impl Add for Poly {
    type Output = Poly;
    fn add(self, rhs: Poly) -> Poly {
        &self + &rhs
    }
}

impl Sub for Poly {
    type Output = Poly;
    fn sub(self, rhs: Poly) -> Poly {
        &self - &rhs
    }
}

impl Mul for Poly {
    type Output = Poly;
    fn mul(self, rhs: Poly) -> Poly {
        &self * &rhs
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_terms(f, &self.coeffs, 0, "x")
    }
}

/// Writes `Σ c_k var^(k+low)` in ascending order with ASCII signs.
pub(crate) fn write_terms(
    f: &mut fmt::Formatter<'_>,
    coeffs: &[Rational],
    low: i64,
    var: &str,
) -> fmt::Result {
    let mut first = true;
    for (i, c) in coeffs.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let e = low + i as i64;
        let neg = c < &Rational::zero();
        let mag = if neg { -c } else { c.clone() };
        if first {
            if neg {
                f.write_str("-")?;
            }
        } else {
            f.write_str(if neg { " - " } else { " + " })?;
        }
        first = false;
        let coeff = if mag.denom().is_one() {
            format_rational(&mag)
        } else {
            format!("({})", format_rational(&mag))
        };
        match e {
            0 => f.write_str(&format_rational(&mag))?,
            _ => {
                if !mag.is_one() {
                    f.write_str(&coeff)?;
                }
                f.write_str(var)?;
                if e != 1 {
                    write!(f, "^{e}")?;
                }
            }
        }
    }
    if first {
        f.write_str("0")?;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rational::{int, rat};

    #[test]
    fn shift_examples() {
        let x2 = Poly::from_ints(&[0, 0, 1]);
        assert_eq!(x2.shift(&int(0)), x2);
        assert_eq!(x2.shift(&int(1)), Poly::from_ints(&[1, 2, 1]));
        // (x-1)^3/6 expanded by repeated multiplication
        let xm1 = Poly::from_ints(&[-1, 1]);
        let cube = (&(&xm1 * &xm1) * &xm1).scale(&rat(1, 6));
        let p = Poly::normalized_monomial(3);
        assert_eq!(p.shift(&int(-1)), cube);
        assert_eq!(
            cube,
            Poly::new(vec![rat(-1, 6), rat(1, 2), rat(-1, 2), rat(1, 6)])
        );
    }

    #[test]
    fn degree_and_trimming() {
        assert_eq!(Poly::zero().degree(), None);
        assert_eq!(Poly::new(vec![int(1), int(0), int(0)]).degree(), Some(0));
        assert!((&Poly::from_ints(&[1, 2]) - &Poly::from_ints(&[1, 2])).is_zero());
    }

    #[test]
    fn calculus() {
        let p = Poly::from_ints(&[1, 1, 1, 1]);
        assert_eq!(p.derivative(), Poly::from_ints(&[1, 2, 3]));
        assert_eq!(p.nth_derivative(3), Poly::from_ints(&[6]));
        assert_eq!(p.nth_derivative(4), Poly::zero());
        assert_eq!(p.derivative().antiderivative(), Poly::from_ints(&[0, 1, 1, 1]));
        // Δ x^2 = 2x + 1
        assert_eq!(Poly::from_ints(&[0, 0, 1]).forward_difference(), Poly::from_ints(&[1, 2]));
    }

    #[test]
    fn affine_substitution() {
        // (2x+1)^2 = 4x^2 + 4x + 1
        let p = Poly::from_ints(&[0, 0, 1]);
        assert_eq!(p.affine(&int(2), &int(1)), Poly::from_ints(&[1, 4, 4]));
        assert_eq!(p.affine(&int(0), &int(3)), Poly::from_ints(&[9]));
    }

    #[test]
    fn display() {
        let p = Poly::new(vec![rat(-1, 6), int(1), rat(1, 2)]);
        assert_eq!(p.to_string(), "-1/6 + x + (1/2)x^2");
        assert_eq!(Poly::zero().to_string(), "0");
    }
}
