//! Stationary difference operators with matrix coefficients.
//!
//! An operator `(L c)(α) = Σ_β L(β) c(α + β)` is stored as its symbol
//! `L*(z) = Σ_β L(β) z^-β`. With `c#(z) = Σ_α c(α) z^α` this gives
//! `(L c)# = L* · c#`, so composition is the product of symbols. The forward
//! difference `Δ` has symbol `z^-1 - 1`.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::algebra::rational::{factorial, pow2, to_f64, Rational};
use crate::algebra::{LaurentMatrix, LaurentPoly, Poly, RatMatrix};
use crate::combinatorics::gregory_g;
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct DiffOp {
    symbol: LaurentMatrix,
}

impl DiffOp {
    pub fn from_symbol(symbol: LaurentMatrix) -> Result<Self> {
        if symbol.rows() != symbol.cols() {
            return Err(Error::Shape(format!(
                "operator symbol must be square, got {}x{}",
                symbol.rows(),
                symbol.cols()
            )));
        }
        Ok(DiffOp { symbol })
    }

    pub fn identity(dim: usize) -> Self {
        DiffOp {
            symbol: LaurentMatrix::identity(dim),
        }
    }

    /// Pointwise multiplication by a constant matrix.
    pub fn constant(m: &RatMatrix) -> Result<Self> {
        DiffOp::from_symbol(LaurentMatrix::from_rational(m))
    }

    /// Builds an operator from entries given as polynomials in Δ.
    pub fn from_delta_rows(rows: &[Vec<Poly>]) -> Result<Self> {
        let sym = rows
            .iter()
            .map(|r| r.iter().map(LaurentPoly::from_delta_poly).collect())
            .collect();
        DiffOp::from_symbol(LaurentMatrix::from_rows(sym)?)
    }

    /// Size of the vectors acted upon, `d + 1`.
    pub fn dim(&self) -> usize {
        self.symbol.rows()
    }

    pub fn symbol(&self) -> &LaurentMatrix {
        &self.symbol
    }

    /// `self ∘ inner`: apply `inner` first.
    pub fn compose(&self, inner: &DiffOp) -> Result<DiffOp> {
        DiffOp::from_symbol(self.symbol.mul(&inner.symbol)?)
    }

    /// Nonzero coefficient matrices `(β, L(β))`, ascending in `β`.
    pub fn coefficients(&self) -> Vec<(i64, RatMatrix)> {
        let Some((lo, hi)) = self.symbol.exponent_range() else {
            return Vec::new();
        };
        (-hi..=-lo)
            .map(|beta| (beta, self.symbol.coefficient(-beta)))
            .filter(|(_, m)| !m.is_zero())
            .collect()
    }

    /// `(L s)(x) = Σ_β L(β) s(x + β)` for a vector-valued function sampled
    /// in floating point.
    pub fn apply_at(&self, x: f64, sample: impl Fn(f64) -> Vec<f64>) -> Vec<f64> {
        let mut out = vec![0.0; self.dim()];
        for (beta, m) in self.coefficients() {
            let s = sample(x + beta as f64);
            for (i, o) in out.iter_mut().enumerate() {
                for (j, sj) in s.iter().enumerate() {
                    let c = &m[(i, j)];
                    if !c.is_zero() {
                        *o += to_f64(c) * sj;
                    }
                }
            }
        }
        out
    }

    /// Entries as polynomials in Δ, if every entry has no positive powers of `z`.
    pub fn delta_rows(&self) -> Option<Vec<Vec<Poly>>> {
        (0..self.dim())
            .map(|i| {
                (0..self.dim())
                    .map(|j| self.symbol.get(i, j).as_delta_poly())
                    .collect()
            })
            .collect()
    }

    /// One line per row, entries rendered in Δ and separated by `", "`.
    pub fn format_delta(&self) -> Option<String> {
        let rows = self.delta_rows()?;
        Some(
            rows.iter()
                .map(|r| r.iter().map(format_delta_poly).collect::<Vec<_>>().join(", "))
                .collect::<Vec<_>>()
                .join("\n"),
        )
    }

    /// One line per row, entries rendered as Laurent polynomials in `z`.
    pub fn format_symbol(&self) -> String {
        (0..self.dim())
            .map(|i| {
                (0..self.dim())
                    .map(|j| self.symbol.get(i, j).to_string())
                    .collect::<Vec<_>>()
                    .join(", ")
            })
            .collect::<Vec<_>>()
            .join("\n")
    }
}

impl fmt::Display for DiffOp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.format_delta() {
            Some(s) => f.write_str(&s),
            None => f.write_str(&self.format_symbol()),
        }
    }
}

/// Renders a polynomial in Δ, e.g. `−1−(1/2)Δ` or `Δ²`.
pub fn format_delta_poly(p: &Poly) -> String {
    let mut out = String::new();
    for (k, c) in p.coeffs().iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let neg = c < &Rational::zero();
        let mag = if neg { -c } else { c.clone() };
        if neg {
            out.push('\u{2212}');
        } else if !out.is_empty() {
            out.push('+');
        }
        let num = crate::algebra::format_rational(&mag);
        if k == 0 {
            out.push_str(&num);
            continue;
        }
        if !mag.is_one() {
            if mag.denom().is_one() {
                out.push_str(&num);
            } else {
                out.push_str(&format!("({num})"));
            }
        }
        out.push('Δ');
        if k > 1 {
            out.push_str(&superscript(k));
        }
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

fn superscript(k: usize) -> String {
    const DIGITS: [char; 10] = ['⁰', '¹', '²', '³', '⁴', '⁵', '⁶', '⁷', '⁸', '⁹'];
    k.to_string()
        .bytes()
        .map(|b| DIGITS[(b - b'0') as usize])
        .collect()
}

/// The Hermite dilation `diag(1, 2^-1, …, 2^-d)`.
///
/// Kept separate from the block difference operator [`delta_block`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DilationMatrix {
    pub d: usize,
}

impl DilationMatrix {
    pub fn new(d: usize) -> Self {
        DilationMatrix { d }
    }

    /// `diag(1, 2^-1, …, 2^-d)` raised to an integer power.
    pub fn pow(&self, e: i64) -> RatMatrix {
        RatMatrix::diag(&(0..=self.d as i64).map(|k| pow2(-k * e)).collect::<Vec<_>>())
    }

    pub fn matrix(&self) -> RatMatrix {
        self.pow(1)
    }
}

/// `diag(1, …, 1, Δ)` of size `d + 1`.
pub fn delta_block(d: usize) -> DiffOp {
    let mut entries = vec![LaurentPoly::one(); d + 1];
    entries[d] = LaurentPoly::delta();
    DiffOp {
        symbol: LaurentMatrix::diag(entries),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum TaylorVariant {
    /// Last row `(0, …, 0, 1)`.
    Incomplete,
    /// Last row `(0, …, 0, Δ)`.
    Complete,
    /// Last column zeroed, corner 1.
    Prime,
}

/// Band entry `-1/(j-i)!` above the diagonal, Δ on it.
fn taylor_band(dim: usize) -> LaurentMatrix {
    let mut m = LaurentMatrix::zeros(dim, dim);
    for i in 0..dim {
        m.set(i, i, LaurentPoly::delta());
        for j in i + 1..dim {
            let c = -Rational::new(BigInt::one(), factorial(j - i));
            m.set(i, j, LaurentPoly::constant(c));
        }
    }
    m
}

/// Taylor operators of order `d`; `d = 0` gives `T_0 = T_0' = id`, `T̃_0 = Δ`.
pub fn taylor(d: usize, variant: TaylorVariant) -> DiffOp {
    let mut m = taylor_band(d + 1);
    match variant {
        TaylorVariant::Incomplete => m.set(d, d, LaurentPoly::one()),
        TaylorVariant::Complete => {}
        TaylorVariant::Prime => {
            for i in 0..d {
                m.set(i, d, LaurentPoly::zero());
            }
            m.set(d, d, LaurentPoly::one());
        }
    }
    DiffOp { symbol: m }
}

/// Augmented Taylor operator of order `n`: upper-left block `T̃_{d-1}`, last
/// column `-Σ_{k=0}^{n-d} G_k^{d-i} Δ^k` in row `i < d`, corner `Δ^{n+1-d}`.
pub fn augmented_taylor(d: usize, n: usize) -> Result<DiffOp> {
    if d == 0 || n < d {
        return Err(Error::InvalidArgument(format!(
            "augmented Taylor operator needs n >= d >= 1, got d = {d}, n = {n}"
        )));
    }
    let mut m = taylor_band(d + 1);
    for i in 0..d {
        let column = Poly::new((0..=n - d).map(|k| -gregory_g(k, d - i)).collect());
        m.set(i, d, LaurentPoly::from_delta_poly(&column));
    }
    m.set(d, d, LaurentPoly::delta().pow(n + 1 - d));
    Ok(DiffOp { symbol: m })
}

fn check_y(y: &[Rational], d: usize) -> Result<()> {
    if y.len() != d + 1 {
        return Err(Error::Shape(format!(
            "vector of length {} for d = {d}",
            y.len()
        )));
    }
    if !y[d].is_zero() {
        return Err(Error::InvalidArgument(
            "last entry of the Gauss vector must be zero".into(),
        ));
    }
    Ok(())
}

/// The Gauss matrix `I + y e_dᵀ` (requires `y_d = 0`).
pub fn gauss_matrix(y: &[Rational], d: usize) -> Result<RatMatrix> {
    check_y(y, d)?;
    let mut m = RatMatrix::identity(d + 1);
    for (i, yi) in y.iter().enumerate().take(d) {
        m[(i, d)] = yi.clone();
    }
    Ok(m)
}

/// `(I + y e_dᵀ)^-1 = I - y e_dᵀ`, valid since `e_dᵀ y = 0`.
pub fn gauss_matrix_inverse(y: &[Rational], d: usize) -> Result<RatMatrix> {
    let neg: Vec<Rational> = y.iter().map(|v| -v).collect();
    gauss_matrix(&neg, d)
}

/// `D (I - y e_dᵀ)`: identity block, last column `-y_{0:d-1}`, corner Δ.
pub fn gauss_step(y: &[Rational], d: usize) -> Result<DiffOp> {
    let inv = DiffOp::constant(&gauss_matrix_inverse(y, d)?)?;
    delta_block(d).compose(&inv)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rational::{int, rat};
    use crate::combinatorics::y_vector;

    fn delta_op(rows: &[&[&[i64]]]) -> DiffOp {
        // entries as integer Δ-polynomial coefficient lists
        DiffOp::from_delta_rows(
            &rows
                .iter()
                .map(|r| r.iter().map(|c| Poly::from_ints(c)).collect())
                .collect::<Vec<_>>(),
        )
        .unwrap()
    }

    #[test]
    fn delta_block_examples() {
        assert_eq!(delta_block(1), delta_op(&[&[&[1], &[]], &[&[], &[0, 1]]]));
        let d2 = delta_block(2);
        assert_eq!(d2.symbol().get(2, 2), &LaurentPoly::delta());
        assert_eq!(d2.symbol().get(1, 1), &LaurentPoly::one());
        let sq = d2.compose(&d2).unwrap();
        assert_eq!(sq.symbol().get(2, 2), &LaurentPoly::delta().pow(2));
    }

    #[test]
    fn taylor_examples() {
        let t = taylor(1, TaylorVariant::Complete);
        assert_eq!(t, delta_op(&[&[&[0, 1], &[-1]], &[&[], &[0, 1]]]));
        let t2 = taylor(2, TaylorVariant::Incomplete);
        let row0 = &t2.delta_rows().unwrap()[0];
        assert_eq!(row0[0], Poly::from_ints(&[0, 1]));
        assert_eq!(row0[1], Poly::from_ints(&[-1]));
        assert_eq!(row0[2], Poly::constant(rat(-1, 2)));
        assert_eq!(t2.symbol().get(2, 2), &LaurentPoly::one());
        assert_eq!(
            taylor(1, TaylorVariant::Prime),
            delta_op(&[&[&[0, 1], &[]], &[&[], &[1]]])
        );
        assert_eq!(taylor(0, TaylorVariant::Complete), delta_op(&[&[&[0, 1]]]));
        assert_eq!(taylor(0, TaylorVariant::Prime), DiffOp::identity(1));
        assert_eq!(taylor(0, TaylorVariant::Incomplete), DiffOp::identity(1));
    }

    #[test]
    fn complete_is_delta_block_times_incomplete() {
        for d in 0..=5 {
            let lhs = delta_block(d)
                .compose(&taylor(d, TaylorVariant::Incomplete))
                .unwrap();
            assert_eq!(lhs, taylor(d, TaylorVariant::Complete));
        }
    }

    #[test]
    fn augmented_examples() {
        assert_eq!(
            augmented_taylor(2, 2).unwrap(),
            taylor(2, TaylorVariant::Complete)
        );
        let t = augmented_taylor(1, 2).unwrap();
        let rows = t.delta_rows().unwrap();
        assert_eq!(rows[0][0], Poly::from_ints(&[0, 1]));
        assert_eq!(rows[0][1], Poly::new(vec![int(-1), rat(-1, 2)]));
        assert_eq!(rows[1][0], Poly::zero());
        assert_eq!(rows[1][1], Poly::from_ints(&[0, 0, 1]));

        let t23 = augmented_taylor(2, 3).unwrap().delta_rows().unwrap();
        assert_eq!(t23[0][2], Poly::new(vec![rat(-1, 2), rat(-1, 6)]));
        assert_eq!(t23[1][2], Poly::new(vec![int(-1), rat(-1, 2)]));
        assert_eq!(t23[2][2], Poly::from_ints(&[0, 0, 1]));

        assert!(augmented_taylor(0, 3).is_err());
        assert!(augmented_taylor(3, 2).is_err());
    }

    #[test]
    fn gauss_step_examples() {
        assert_eq!(gauss_step(&[int(0), int(0), int(0)], 2).unwrap(), delta_block(2));
        let g = gauss_step(&[rat(1, 2), int(0)], 1).unwrap();
        let expected = DiffOp::from_delta_rows(&[
            vec![Poly::one(), Poly::constant(rat(-1, 2))],
            vec![Poly::zero(), Poly::from_ints(&[0, 1])],
        ])
        .unwrap();
        assert_eq!(g, expected);
        assert!(gauss_step(&[int(1), int(1)], 1).is_err());
        assert!(gauss_step(&[int(1)], 1).is_err());
    }

    #[test]
    fn gauss_matrix_inverse_pairs() {
        let y = vec![rat(3, 7), rat(-2, 5), int(0)];
        let prod = gauss_matrix(&y, 2)
            .unwrap()
            .mul(&gauss_matrix_inverse(&y, 2).unwrap())
            .unwrap();
        assert_eq!(prod, RatMatrix::identity(3));
    }

    #[test]
    fn augmented_equals_gauss_chain_small() {
        let d = 2;
        let mut op = taylor(d, TaylorVariant::Prime);
        for j in d..=d + 2 {
            op = gauss_step(&y_vector(j - d, d), d).unwrap().compose(&op).unwrap();
            assert_eq!(op, augmented_taylor(d, j).unwrap());
        }
    }

    #[test]
    fn coefficient_view_matches_symbol_convention() {
        // Δ = z^-1 - 1: L(0) = -1, L(1) = 1
        let coeffs = delta_op(&[&[&[0, 1]]]).coefficients();
        assert_eq!(coeffs.len(), 2);
        assert_eq!(coeffs[0], (0, RatMatrix::from_ints(&[&[-1]])));
        assert_eq!(coeffs[1], (1, RatMatrix::from_ints(&[&[1]])));
    }

    #[test]
    fn delta_formatting() {
        let t = augmented_taylor(1, 2).unwrap();
        assert_eq!(t.format_delta().unwrap(), "Δ, −1−(1/2)Δ\n0, Δ²");
        assert_eq!(format_delta_poly(&Poly::from_ints(&[2, 0, 0, -3])), "2−3Δ³");
        assert_eq!(format_delta_poly(&Poly::from_ints(&[0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 1])), "Δ¹⁰");
        let shifted = DiffOp::from_symbol(LaurentMatrix::diag(vec![LaurentPoly::monomial(int(1), 1)])).unwrap();
        assert!(shifted.format_delta().is_none());
        assert_eq!(shifted.to_string(), "z");
    }

    #[test]
    fn dilation_powers() {
        let dil = DilationMatrix::new(2);
        assert_eq!(dil.matrix(), RatMatrix::diag(&[int(1), rat(1, 2), rat(1, 4)]));
        assert_eq!(dil.pow(-1), RatMatrix::diag(&[int(1), int(2), int(4)]));
        assert_eq!(dil.pow(0), RatMatrix::identity(3));
    }
}
