//! Masks, finitely supported vector sequences and subdivision operators
//! `(S_A c)(α) = Σ_β A(α - 2β) c(β)`.

use num_traits::Zero;

use crate::algebra::{LaurentMatrix, LaurentPoly, RatMatrix, Rational};
use crate::error::{Error, Result};
use crate::operators::{DiffOp, DilationMatrix};

/// Finitely supported sequence of `(d+1)×(d+1)` matrices at consecutive
/// offsets. First and last stored matrices are nonzero; the zero mask stores
/// none.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Mask {
    d: usize,
    offset: i64,
    matrices: Vec<RatMatrix>,
}

impl Mask {
    pub fn new(d: usize, offset: i64, mut matrices: Vec<RatMatrix>) -> Result<Self> {
        if let Some(m) = matrices
            .iter()
            .find(|m| m.rows() != d + 1 || m.cols() != d + 1)
        {
            return Err(Error::Shape(format!(
                "mask matrix is {}x{}, expected {}x{}",
                m.rows(),
                m.cols(),
                d + 1,
                d + 1
            )));
        }
        while matrices.last().is_some_and(RatMatrix::is_zero) {
            matrices.pop();
        }
        let lead = matrices.iter().take_while(|m| m.is_zero()).count();
        matrices.drain(..lead);
        let offset = if matrices.is_empty() { 0 } else { offset + lead as i64 };
        Ok(Mask { d, offset, matrices })
    }

    pub fn zero(d: usize) -> Self {
        Mask {
            d,
            offset: 0,
            matrices: Vec::new(),
        }
    }

    /// Mask `A#(z) = symbol`.
    pub fn from_symbol(symbol: &LaurentMatrix) -> Result<Self> {
        if symbol.rows() != symbol.cols() || symbol.rows() == 0 {
            return Err(Error::Shape("mask symbol must be square".into()));
        }
        let d = symbol.rows() - 1;
        let Some((lo, hi)) = symbol.exponent_range() else {
            return Ok(Mask::zero(d));
        };
        Mask::new(d, lo, (lo..=hi).map(|e| symbol.coefficient(e)).collect())
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn offset(&self) -> i64 {
        self.offset
    }

    pub fn matrices(&self) -> &[RatMatrix] {
        &self.matrices
    }

    pub fn is_zero(&self) -> bool {
        self.matrices.is_empty()
    }

    /// Inclusive support bounds, `None` for the zero mask.
    pub fn support(&self) -> Option<(i64, i64)> {
        (!self.is_zero()).then(|| (self.offset, self.offset + self.matrices.len() as i64 - 1))
    }

    pub fn get(&self, alpha: i64) -> RatMatrix {
        let i = alpha - self.offset;
        if i < 0 || i as usize >= self.matrices.len() {
            RatMatrix::zeros(self.d + 1, self.d + 1)
        } else {
            self.matrices[i as usize].clone()
        }
    }

    /// `A#(z) = Σ_α A(α) z^α`.
    pub fn symbol(&self) -> LaurentMatrix {
        let n = self.d + 1;
        let mut rows = vec![vec![LaurentPoly::zero(); n]; n];
        for (i, row) in rows.iter_mut().enumerate() {
            for (j, entry) in row.iter_mut().enumerate() {
                *entry = LaurentPoly::new(
                    self.offset,
                    self.matrices.iter().map(|m| m[(i, j)].clone()).collect(),
                );
            }
        }
        LaurentMatrix::from_rows(rows).expect("square mask symbol")
    }

    /// Applies `f` to every matrix.
    pub fn map(&self, f: impl Fn(&RatMatrix) -> RatMatrix) -> Result<Mask> {
        Mask::new(self.d, self.offset, self.matrices.iter().map(f).collect())
    }
}

/// Finitely supported sequence of `(d+1)`-vectors; leading and trailing zero
/// vectors are trimmed.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct VecSeq {
    d: usize,
    offset: i64,
    vectors: Vec<Vec<Rational>>,
}

impl VecSeq {
    pub fn new(d: usize, offset: i64, mut vectors: Vec<Vec<Rational>>) -> Result<Self> {
        if let Some(v) = vectors.iter().find(|v| v.len() != d + 1) {
            return Err(Error::Shape(format!(
                "sequence vector of length {}, expected {}",
                v.len(),
                d + 1
            )));
        }
        let is_zero = |v: &Vec<Rational>| v.iter().all(Zero::is_zero);
        while vectors.last().is_some_and(is_zero) {
            vectors.pop();
        }
        let lead = vectors.iter().take_while(|v| is_zero(v)).count();
        vectors.drain(..lead);
        let offset = if vectors.is_empty() { 0 } else { offset + lead as i64 };
        Ok(VecSeq { d, offset, vectors })
    }

    pub fn zero(d: usize) -> Self {
        VecSeq {
            d,
            offset: 0,
            vectors: Vec::new(),
        }
    }

    /// Samples `f` at `lo..=hi`.
    pub fn from_fn(d: usize, lo: i64, hi: i64, f: impl Fn(i64) -> Vec<Rational>) -> Result<Self> {
        VecSeq::new(d, lo, (lo..=hi).map(f).collect())
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn offset(&self) -> i64 {
        self.offset
    }

    pub fn vectors(&self) -> &[Vec<Rational>] {
        &self.vectors
    }

    pub fn is_zero(&self) -> bool {
        self.vectors.is_empty()
    }

    pub fn support(&self) -> Option<(i64, i64)> {
        (!self.is_zero()).then(|| (self.offset, self.offset + self.vectors.len() as i64 - 1))
    }

    pub fn get(&self, alpha: i64) -> Vec<Rational> {
        let i = alpha - self.offset;
        if i < 0 || i as usize >= self.vectors.len() {
            vec![Rational::zero(); self.d + 1]
        } else {
            self.vectors[i as usize].clone()
        }
    }

    /// Generating function `c#(z) = Σ_α c(α) z^α` as a column.
    pub fn symbol(&self) -> LaurentMatrix {
        let rows = (0..=self.d)
            .map(|i| {
                vec![LaurentPoly::new(
                    self.offset,
                    self.vectors.iter().map(|v| v[i].clone()).collect(),
                )]
            })
            .collect();
        LaurentMatrix::from_rows(rows).expect("column symbol")
    }

    pub fn from_symbol(symbol: &LaurentMatrix) -> Result<Self> {
        if symbol.cols() != 1 || symbol.rows() == 0 {
            return Err(Error::Shape("sequence symbol must be a column".into()));
        }
        let d = symbol.rows() - 1;
        let Some((lo, hi)) = symbol.exponent_range() else {
            return Ok(VecSeq::zero(d));
        };
        VecSeq::new(
            d,
            lo,
            (lo..=hi)
                .map(|e| (0..=d).map(|i| symbol.get(i, 0).coeff(e)).collect())
                .collect(),
        )
    }

    /// Pointwise `M · c(α)`.
    pub fn map_matrix(&self, m: &RatMatrix) -> Result<VecSeq> {
        let vectors = self
            .vectors
            .iter()
            .map(|v| m.mul_vec(v))
            .collect::<Result<Vec<_>>>()?;
        VecSeq::new(self.d, self.offset, vectors)
    }
}

fn check_dims(a: usize, b: usize) -> Result<()> {
    if a != b {
        return Err(Error::Shape(format!("mask has d = {a}, data has d = {b}")));
    }
    Ok(())
}

/// `(S_A c)(α) = Σ_β A(α - 2β) c(β)`, support within `2·supp(c) + supp(A)`.
pub fn mask_apply(mask: &Mask, c: &VecSeq) -> Result<VecSeq> {
    check_dims(mask.d, c.d)?;
    let (Some((alo, ahi)), Some((clo, chi))) = (mask.support(), c.support()) else {
        return Ok(VecSeq::zero(c.d));
    };
    let lo = alo + 2 * clo;
    let hi = ahi + 2 * chi;
    let n = c.d + 1;
    let mut out = vec![vec![Rational::zero(); n]; (hi - lo + 1) as usize];
    for (bi, cv) in c.vectors.iter().enumerate() {
        let beta = clo + bi as i64;
        for (ai, a) in mask.matrices.iter().enumerate() {
            let alpha = alo + ai as i64 + 2 * beta;
            let slot = &mut out[(alpha - lo) as usize];
            for (i, s) in slot.iter_mut().enumerate() {
                for (j, cj) in cv.iter().enumerate() {
                    if !cj.is_zero() {
                        *s += &a[(i, j)] * cj;
                    }
                }
            }
        }
    }
    VecSeq::new(c.d, lo, out)
}

/// `(Σ_β A(2β), Σ_β A(2β+1))`.
pub fn coset_sums(mask: &Mask) -> (RatMatrix, RatMatrix) {
    let n = mask.d + 1;
    let mut even = RatMatrix::zeros(n, n);
    let mut odd = RatMatrix::zeros(n, n);
    for (i, m) in mask.matrices.iter().enumerate() {
        let alpha = mask.offset + i as i64;
        let target = if alpha.rem_euclid(2) == 0 { &mut even } else { &mut odd };
        *target = target.add(m).expect("same shape");
    }
    (even, odd)
}

/// Level mask `Dil^(-level-1) · A(α) · Dil^level`.
pub fn hermite_level_mask(mask: &Mask, level: usize) -> Mask {
    let dil = DilationMatrix::new(mask.d);
    let left = dil.pow(-(level as i64) - 1);
    let right = dil.pow(level as i64);
    mask.map(|m| left.mul(m).and_then(|x| x.mul(&right)).expect("square"))
        .expect("dimensions preserved")
}

/// Runs `levels` steps of the Hermite scheme `c^[n+1] = S_{A^[n]} c^[n]`.
///
/// Index `α` of the result stands for the point `α · 2^-levels`. Entry `k` of
/// the raw output approximates the `k`-th derivative there; see
/// [`step_scaled`] for the `h^k`-scaled view.
pub fn hermite_iterate(mask: &Mask, c0: &VecSeq, levels: usize) -> Result<VecSeq> {
    check_dims(mask.d, c0.d)?;
    let mut c = c0.clone();
    for level in 0..levels {
        c = mask_apply(&hermite_level_mask(mask, level), &c)?;
    }
    Ok(c)
}

/// `Dil^levels · c`: entry `k` multiplied by `2^(-k·levels)`. Applied to the
/// output of [`hermite_iterate`] this equals `S_A^levels c0`.
pub fn step_scaled(c: &VecSeq, levels: usize) -> Result<VecSeq> {
    c.map_matrix(&DilationMatrix::new(c.d).pow(levels as i64))
}

/// `(L c)(α) = Σ_β L(β) c(α + β)` on a finitely supported sequence.
pub fn diffop_apply_seq(op: &DiffOp, c: &VecSeq) -> Result<VecSeq> {
    check_dims(op.dim() - 1, c.d)?;
    let coeffs = op.coefficients();
    let (Some((clo, chi)), Some(bmin), Some(bmax)) = (
        c.support(),
        coeffs.first().map(|x| x.0),
        coeffs.last().map(|x| x.0),
    ) else {
        return Ok(VecSeq::zero(c.d));
    };
    let lo = clo - bmax;
    let hi = chi - bmin;
    let out = (lo..=hi)
        .map(|alpha| {
            let mut acc = vec![Rational::zero(); c.d + 1];
            for (beta, m) in &coeffs {
                let v = m.mul_vec(&c.get(alpha + beta)).expect("square");
                for (a, x) in acc.iter_mut().zip(v) {
                    *a += x;
                }
            }
            acc
        })
        .collect();
    VecSeq::new(c.d, lo, out)
}
