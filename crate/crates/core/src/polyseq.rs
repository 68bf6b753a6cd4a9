//! Polynomial vector sequences `α ↦ (p_0(α), …, p_d(α))` and exact
//! application of difference and subdivision operators to them.

use std::ops::{Add, Sub};

use num_bigint::BigInt;
use num_traits::One;

use crate::algebra::rational::factorial;
use crate::algebra::{Poly, RatMatrix, Rational};
use crate::error::{Error, Result};
use crate::operators::DiffOp;
use crate::subdivision::Mask;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PolyVec {
    entries: Vec<Poly>,
}

impl PolyVec {
    pub fn new(entries: Vec<Poly>) -> Result<Self> {
        if entries.len() < 2 {
            return Err(Error::Shape(format!(
                "polynomial vector needs length >= 2, got {}",
                entries.len()
            )));
        }
        Ok(PolyVec { entries })
    }

    pub fn zero(d: usize) -> Self {
        PolyVec {
            entries: vec![Poly::zero(); d + 1],
        }
    }

    /// Constant sequence `α ↦ v`.
    pub fn constant(v: &[Rational]) -> Result<Self> {
        PolyVec::new(v.iter().cloned().map(Poly::constant).collect())
    }

    /// `v · p`, the vector `v` scaled by the polynomial `p`.
    pub fn outer(v: &[Rational], p: &Poly) -> Result<Self> {
        PolyVec::new(v.iter().map(|c| p.scale(c)).collect())
    }

    pub fn d(&self) -> usize {
        self.entries.len() - 1
    }

    pub fn entries(&self) -> &[Poly] {
        &self.entries
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Poly::is_zero)
    }

    /// The constant value if every entry has degree ≤ 0.
    pub fn as_constant(&self) -> Option<Vec<Rational>> {
        self.entries
            .iter()
            .map(|p| (p.degree().unwrap_or(0) == 0).then(|| p.coeff(0)))
            .collect()
    }

    pub fn eval(&self, x: &Rational) -> Vec<Rational> {
        self.entries.iter().map(|p| p.eval(x)).collect()
    }

    pub fn scale(&self, s: &Rational) -> Self {
        PolyVec {
            entries: self.entries.iter().map(|p| p.scale(s)).collect(),
        }
    }

    /// `α ↦ s(α + t)`.
    pub fn shift(&self, t: &Rational) -> Self {
        PolyVec {
            entries: self.entries.iter().map(|p| p.shift(t)).collect(),
        }
    }

    /// `α ↦ s(a·α + b)`.
    pub fn affine(&self, a: &Rational, b: &Rational) -> Self {
        PolyVec {
            entries: self.entries.iter().map(|p| p.affine(a, b)).collect(),
        }
    }

    /// Entrywise forward difference.
    pub fn forward_difference(&self) -> Self {
        PolyVec {
            entries: self.entries.iter().map(Poly::forward_difference).collect(),
        }
    }

    /// Pointwise `M · s(α)`.
    pub fn mat_mul(&self, m: &RatMatrix) -> Result<Self> {
        if m.cols() != self.entries.len() {
            return Err(Error::Shape(format!(
                "{}x{} matrix on vector of length {}",
                m.rows(),
                m.cols(),
                self.entries.len()
            )));
        }
        let entries = (0..m.rows())
            .map(|i| {
                self.entries
                    .iter()
                    .enumerate()
                    .fold(Poly::zero(), |acc, (j, p)| &acc + &p.scale(&m[(i, j)]))
            })
            .collect();
        PolyVec::new(entries)
    }

    fn check_len(&self, other: &PolyVec) -> Result<()> {
        if self.entries.len() != other.entries.len() {
            return Err(Error::Shape(format!(
                "vectors of length {} and {}",
                self.entries.len(),
                other.entries.len()
            )));
        }
        Ok(())
    }

    pub fn try_add(&self, other: &PolyVec) -> Result<PolyVec> {
        self.check_len(other)?;
        Ok(PolyVec {
            entries: self.entries.iter().zip(&other.entries).map(|(a, b)| a + b).collect(),
        })
    }

    pub fn try_sub(&self, other: &PolyVec) -> Result<PolyVec> {
        self.check_len(other)?;
        Ok(PolyVec {
            entries: self.entries.iter().zip(&other.entries).map(|(a, b)| a - b).collect(),
        })
    }
}

impl Add for &PolyVec {
    type Output = PolyVec;
    fn add(self, rhs: &PolyVec) -> PolyVec {
        self.try_add(rhs).expect("polynomial vectors of equal length")
    }
}

impl Sub for &PolyVec {
    type Output = PolyVec;
    fn sub(self, rhs: &PolyVec) -> PolyVec {
        self.try_sub(rhs).expect("polynomial vectors of equal length")
    }
}

/// `v(p) = (p, p', …, p^(d))`.
pub fn vpoly(p: &Poly, d: usize) -> PolyVec {
    let mut entries = Vec::with_capacity(d + 1);
    let mut cur = p.clone();
    for _ in 0..=d {
        let next = cur.derivative();
        entries.push(cur);
        cur = next;
    }
    PolyVec { entries }
}

/// `(L s)(α) = Σ_β L(β) s(α + β)`, exactly.
pub fn diffop_apply(op: &DiffOp, s: &PolyVec) -> Result<PolyVec> {
    if op.dim() != s.entries.len() {
        return Err(Error::Shape(format!(
            "operator of size {} on vector of length {}",
            op.dim(),
            s.entries.len()
        )));
    }
    let mut acc = PolyVec::zero(s.d());
    for (beta, m) in op.coefficients() {
        let shifted = s.shift(&Rational::from_integer(beta.into()));
        acc = &acc + &shifted.mat_mul(&m)?;
    }
    Ok(acc)
}

/// Even and odd branches of `S_A s` for polynomial `s`:
/// `(S_A s)(2α) = even(α)`, `(S_A s)(2α+1) = odd(α)` with
/// `even(α) = Σ_γ A(2γ) s(α - γ)` and `odd(α) = Σ_γ A(2γ+1) s(α - γ)`.
pub fn mask_apply_poly(mask: &Mask, s: &PolyVec) -> Result<(PolyVec, PolyVec)> {
    if mask.d() != s.d() {
        return Err(Error::Shape(format!(
            "mask has d = {}, data has d = {}",
            mask.d(),
            s.d()
        )));
    }
    let mut even = PolyVec::zero(s.d());
    let mut odd = PolyVec::zero(s.d());
    for (i, m) in mask.matrices().iter().enumerate() {
        let alpha = mask.offset() + i as i64;
        let gamma = alpha.div_euclid(2);
        let term = s.shift(&Rational::from_integer((-gamma).into())).mat_mul(m)?;
        if alpha.rem_euclid(2) == 0 {
            even = &even + &term;
        } else {
            odd = &odd + &term;
        }
    }
    Ok((even, odd))
}

/// `q = Σ_{k=1}^{n-d} p^(k+d) / k!` for `deg p = n > d`; degree `n - d - 1`.
pub fn q_poly(p: &Poly, d: usize) -> Result<Poly> {
    let n = match p.degree() {
        Some(n) if n > d => n,
        degree => return Err(Error::QUndefined { degree, d }),
    };
    let mut q = Poly::zero();
    let mut deriv = p.nth_derivative(d + 1);
    for k in 1..=n - d {
        q = &q + &deriv.scale(&Rational::new(BigInt::one(), factorial(k)));
        deriv = deriv.derivative();
    }
    Ok(q)
}

/// `Σ_k coeffs[k] · p^(offset + k)` as a vector polynomial, helper for the
/// identities `Σ a_k p^(k+d)`.
pub fn weighted_derivatives(terms: &[(Vec<Rational>, usize)], p: &Poly, d: usize) -> PolyVec {
    terms.iter().fold(PolyVec::zero(d), |acc, (v, order)| {
        let deriv = p.nth_derivative(*order);
        if deriv.is_zero() {
            return acc;
        }
        &acc + &PolyVec::outer(v, &deriv).expect("length d + 1")
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rational::{int, rat};
    use crate::operators::{augmented_taylor, taylor, TaylorVariant};

    fn worked_mask() -> Mask {
        Mask::new(
            1,
            0,
            vec![
                RatMatrix::from_rows(vec![vec![int(1), int(0)], vec![int(0), rat(1, 2)]]).unwrap(),
                RatMatrix::from_rows(vec![vec![int(1), rat(1, 2)], vec![int(0), rat(1, 2)]])
                    .unwrap(),
            ],
        )
        .unwrap()
    }

    #[test]
    fn vpoly_examples() {
        assert_eq!(vpoly(&Poly::one(), 1), PolyVec::constant(&[int(1), int(0)]).unwrap());
        let half_x2 = Poly::new(vec![int(0), int(0), rat(1, 2)]);
        assert_eq!(vpoly(&half_x2, 1).entries(), &[half_x2.clone(), Poly::from_ints(&[0, 1])]);
        let p3 = Poly::normalized_monomial(3);
        assert_eq!(
            vpoly(&p3, 2).entries(),
            &[p3.clone(), Poly::normalized_monomial(2), Poly::from_ints(&[0, 1])]
        );
    }

    #[test]
    fn diffop_apply_examples() {
        let t1 = taylor(1, TaylorVariant::Complete);
        let x = Poly::from_ints(&[0, 1]);
        assert!(diffop_apply(&t1, &vpoly(&x, 1)).unwrap().is_zero());
        let half_x2 = Poly::normalized_monomial(2);
        let out = diffop_apply(&t1, &vpoly(&half_x2, 1)).unwrap();
        assert_eq!(out.as_constant(), Some(vec![rat(1, 2), int(1)]));
        let aug = augmented_taylor(1, 1).unwrap();
        let out = diffop_apply(&aug, &vpoly(&half_x2, 1)).unwrap();
        // e_1 + y_1 = (0, 1) + (1/2, 0)
        assert_eq!(out.as_constant(), Some(vec![rat(1, 2), int(1)]));
        assert!(diffop_apply(&t1, &vpoly(&x, 2)).is_err());
    }

    #[test]
    fn mask_apply_poly_examples() {
        let x = Poly::from_ints(&[0, 1]);
        let s = vpoly(&x, 1);
        let (even, odd) = mask_apply_poly(&Mask::zero(1), &s).unwrap();
        assert!(even.is_zero() && odd.is_zero());

        let (even, odd) = mask_apply_poly(&worked_mask(), &s).unwrap();
        assert_eq!(even.entries(), &[x.clone(), Poly::constant(rat(1, 2))]);
        assert_eq!(
            odd.entries(),
            &[Poly::new(vec![rat(1, 2), int(1)]), Poly::constant(rat(1, 2))]
        );
        // equals 2^-1 v(x) at 2α and 2α + 1
        assert_eq!(even, s.affine(&int(2), &int(0)).scale(&rat(1, 2)));
        assert_eq!(odd, s.affine(&int(2), &int(1)).scale(&rat(1, 2)));

        let ident = Mask::new(2, 0, vec![RatMatrix::identity(3)]).unwrap();
        let s = vpoly(&Poly::from_ints(&[1, 2, 3, 4]), 2);
        let (even, odd) = mask_apply_poly(&ident, &s).unwrap();
        assert_eq!(even, s);
        assert!(odd.is_zero());
    }

    #[test]
    fn q_poly_examples() {
        assert_eq!(q_poly(&Poly::normalized_monomial(2), 1).unwrap(), Poly::one());
        let q = q_poly(&Poly::normalized_monomial(3), 1).unwrap();
        assert_eq!(q, Poly::new(vec![rat(1, 2), int(1)]));
        assert_eq!(q.degree(), Some(1));
        for d in 1..=5 {
            assert_eq!(q_poly(&Poly::normalized_monomial(d + 1), d).unwrap(), Poly::one());
        }
        assert_eq!(
            q_poly(&Poly::from_ints(&[1, 1]), 1),
            Err(Error::QUndefined { degree: Some(1), d: 1 })
        );
        assert!(q_poly(&Poly::zero(), 1).is_err());
    }
}
