//! Matrices with Laurent-polynomial entries: the symbol domain.

use std::collections::HashMap;
use std::fmt;

use num_traits::Zero;

use super::laurent::LaurentPoly;
use super::linalg::RatMatrix;
use super::rational::Rational;
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct LaurentMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<LaurentPoly>,
}

impl LaurentMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        LaurentMatrix {
            rows,
            cols,
            entries: vec![LaurentPoly::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        LaurentMatrix::diag(vec![LaurentPoly::one(); n])
    }

    pub fn diag(entries: Vec<LaurentPoly>) -> Self {
        let n = entries.len();
        let mut m = LaurentMatrix::zeros(n, n);
        for (i, e) in entries.into_iter().enumerate() {
            m.set(i, i, e);
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<LaurentPoly>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if r == 0 || c == 0 || rows.iter().any(|row| row.len() != c) {
            return Err(Error::Shape("Laurent matrix rows must be nonempty and equal length".into()));
        }
        Ok(LaurentMatrix {
            rows: r,
            cols: c,
            entries: rows.into_iter().flatten().collect(),
        })
    }

    /// Constant matrix embedded in the symbol domain.
    pub fn from_rational(m: &RatMatrix) -> Self {
        let mut out = LaurentMatrix::zeros(m.rows(), m.cols());
        for i in 0..m.rows() {
            for j in 0..m.cols() {
                out.set(i, j, LaurentPoly::constant(m[(i, j)].clone()));
            }
        }
        out
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &LaurentPoly {
        assert!(i < self.rows && j < self.cols);
        &self.entries[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: LaurentPoly) {
        assert!(i < self.rows && j < self.cols);
        self.entries[i * self.cols + j] = v;
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(LaurentPoly::is_zero)
    }

    /// Smallest and largest exponent over all entries; `None` if zero.
    pub fn exponent_range(&self) -> Option<(i64, i64)> {
        self.entries
            .iter()
            .filter(|e| !e.is_zero())
            .map(|e| (e.low(), e.high().unwrap()))
            .reduce(|(a, b), (c, d)| (a.min(c), b.max(d)))
    }

    /// Constant matrix of the coefficients of `z^e`.
    pub fn coefficient(&self, e: i64) -> RatMatrix {
        let mut m = RatMatrix::zeros(self.rows, self.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                m[(i, j)] = self.get(i, j).coeff(e);
            }
        }
        m
    }

    pub fn mul(&self, rhs: &LaurentMatrix) -> Result<LaurentMatrix> {
        if self.cols != rhs.rows {
            return Err(Error::Shape(format!(
                "{}x{} times {}x{}",
                self.rows, self.cols, rhs.rows, rhs.cols
            )));
        }
        let mut out = LaurentMatrix::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for j in 0..rhs.cols {
                let mut acc = LaurentPoly::zero();
                for k in 0..self.cols {
                    let a = self.get(i, k);
                    if a.is_zero() {
                        continue;
                    }
                    acc = &acc + &(a * rhs.get(k, j));
                }
                out.set(i, j, acc);
            }
        }
        Ok(out)
    }

    pub fn add(&self, rhs: &LaurentMatrix) -> Result<LaurentMatrix> {
        if self.rows != rhs.rows || self.cols != rhs.cols {
            return Err(Error::Shape(format!(
                "{}x{} plus {}x{}",
                self.rows, self.cols, rhs.rows, rhs.cols
            )));
        }
        Ok(LaurentMatrix {
            rows: self.rows,
            cols: self.cols,
            entries: self
                .entries
                .iter()
                .zip(&rhs.entries)
                .map(|(a, b)| a + b)
                .collect(),
        })
    }

    pub fn scale(&self, s: &Rational) -> LaurentMatrix {
        self.map(|e| e.scale(s))
    }

    pub fn map(&self, f: impl Fn(&LaurentPoly) -> LaurentPoly) -> LaurentMatrix {
        LaurentMatrix {
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().map(f).collect(),
        }
    }

    /// Entrywise `z -> z^2`.
    pub fn substitute_square(&self) -> LaurentMatrix {
        self.map(LaurentPoly::substitute_square)
    }

    /// Determinant by expansion over column subsets (memoized minors).
    pub fn det(&self) -> Result<LaurentPoly> {
        if self.rows != self.cols {
            return Err(Error::Shape(format!(
                "determinant of {}x{} matrix",
                self.rows, self.cols
            )));
        }
        let n = self.rows;
        assert!(n < 32, "determinant expansion limited to fewer than 32 columns");
        let rows: Vec<usize> = (0..n).collect();
        let cols: Vec<usize> = (0..n).collect();
        Ok(self.minor_det(&rows, &cols))
    }

    fn minor_det(&self, rows: &[usize], cols: &[usize]) -> LaurentPoly {
        let k = rows.len();
        if k == 0 {
            return LaurentPoly::one();
        }
        // memo keyed on the bitmask of still-unused columns; the row is
        // determined by how many columns remain
        let mut memo: HashMap<u32, LaurentPoly> = HashMap::new();
        let full: u32 = if k == 32 { u32::MAX } else { (1u32 << k) - 1 };
        self.expand(rows, cols, full, &mut memo)
    }

    fn expand(
        &self,
        rows: &[usize],
        cols: &[usize],
        mask: u32,
        memo: &mut HashMap<u32, LaurentPoly>,
    ) -> LaurentPoly {
        if mask == 0 {
            return LaurentPoly::one();
        }
        if let Some(v) = memo.get(&mask) {
            return v.clone();
        }
        let r = rows[rows.len() - mask.count_ones() as usize];
        let mut acc = LaurentPoly::zero();
        let mut position = 0;
        for (ci, &c) in cols.iter().enumerate() {
            if mask & (1 << ci) == 0 {
                continue;
            }
            let a = self.get(r, c);
            if !a.is_zero() {
                let sub = self.expand(rows, cols, mask & !(1 << ci), memo);
                let term = a * &sub;
                acc = if position % 2 == 0 { &acc + &term } else { &acc - &term };
            }
            position += 1;
        }
        memo.insert(mask, acc.clone());
        acc
    }

    /// Classical adjugate, `adj(M) · M = det(M) · I`.
    pub fn adjugate(&self) -> Result<LaurentMatrix> {
        if self.rows != self.cols {
            return Err(Error::Shape(format!(
                "adjugate of {}x{} matrix",
                self.rows, self.cols
            )));
        }
        let n = self.rows;
        let mut adj = LaurentMatrix::zeros(n, n);
        if n == 1 {
            adj.set(0, 0, LaurentPoly::one());
            return Ok(adj);
        }
        for i in 0..n {
            for j in 0..n {
                let rows: Vec<usize> = (0..n).filter(|&r| r != j).collect();
                let cols: Vec<usize> = (0..n).filter(|&c| c != i).collect();
                let m = self.minor_det(&rows, &cols);
                adj.set(i, j, if (i + j) % 2 == 0 { m } else { -&m });
            }
        }
        Ok(adj)
    }

    /// Exact right division `num · den^-1`.
    ///
    /// Every entry of `num · adj(den)` must be divisible by `det(den)` in the
    /// Laurent ring; otherwise the quotient has no Laurent-polynomial symbol
    /// and [`Error::NotExactlyDivisible`] is returned.
    pub fn solve_right(num: &LaurentMatrix, den: &LaurentMatrix) -> Result<LaurentMatrix> {
        if den.rows != den.cols {
            return Err(Error::Shape(format!(
                "divisor must be square, got {}x{}",
                den.rows, den.cols
            )));
        }
        if num.cols != den.rows {
            return Err(Error::Shape(format!(
                "{}x{} over {}x{}",
                num.rows, num.cols, den.rows, den.cols
            )));
        }
        let det = den.det()?;
        if det.is_zero() {
            return Err(Error::SingularSymbol);
        }
        let scaled = num.mul(&den.adjugate()?)?;
        let mut out = LaurentMatrix::zeros(num.rows, num.cols);
        for i in 0..num.rows {
            for j in 0..num.cols {
                let q = scaled
                    .get(i, j)
                    .div_exact(&det)
                    .ok_or(Error::NotExactlyDivisible { row: i, col: j })?;
                out.set(i, j, q);
            }
        }
        Ok(out)
    }

    /// Value of every entry's coefficient sum, i.e. the symbol at `z = 1`.
    pub fn at_one(&self) -> RatMatrix {
        let mut m = RatMatrix::zeros(self.rows, self.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                m[(i, j)] = self
                    .get(i, j)
                    .coeffs()
                    .iter()
                    .fold(Rational::zero(), |a, c| a + c);
            }
        }
        m
    }
}

impl fmt::Display for LaurentMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            let row: Vec<String> = (0..self.cols).map(|j| self.get(i, j).to_string()).collect();
            writeln!(f, "[{}]", row.join(", "))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rational::{int, rat};

    fn lp(low: i64, c: &[Rational]) -> LaurentPoly {
        LaurentPoly::new(low, c.to_vec())
    }

    fn z() -> LaurentPoly {
        LaurentPoly::monomial(int(1), 1)
    }

    #[test]
    fn identity_and_diagonal_products() {
        let m = LaurentMatrix::from_rows(vec![
            vec![LaurentPoly::delta(), z()],
            vec![LaurentPoly::zero(), LaurentPoly::constant(rat(1, 3))],
        ])
        .unwrap();
        assert_eq!(LaurentMatrix::identity(2).mul(&m).unwrap(), m);
        let zinv = LaurentPoly::monomial(int(1), -1);
        let a = LaurentMatrix::diag(vec![z(), z()]);
        let b = LaurentMatrix::diag(vec![zinv.clone(), zinv]);
        assert_eq!(a.mul(&b).unwrap(), LaurentMatrix::identity(2));
    }

    #[test]
    fn product_expanded_by_hand() {
        // [[z^-1 - 1, -1],[0, 1]] x [[1 + z, z/2],[0, (1+z)/2]]
        let a = LaurentMatrix::from_rows(vec![
            vec![LaurentPoly::delta(), LaurentPoly::constant(int(-1))],
            vec![LaurentPoly::zero(), LaurentPoly::one()],
        ])
        .unwrap();
        let b = LaurentMatrix::from_rows(vec![
            vec![lp(0, &[int(1), int(1)]), lp(1, &[rat(1, 2)])],
            vec![LaurentPoly::zero(), lp(0, &[rat(1, 2), rat(1, 2)])],
        ])
        .unwrap();
        let expected = LaurentMatrix::from_rows(vec![
            vec![lp(-1, &[int(1), int(0), int(-1)]), lp(1, &[int(-1)])],
            vec![LaurentPoly::zero(), lp(0, &[rat(1, 2), rat(1, 2)])],
        ])
        .unwrap();
        assert_eq!(a.mul(&b).unwrap(), expected);
        assert!(a.mul(&LaurentMatrix::zeros(3, 1)).is_err());
    }

    #[test]
    fn substitute_square_entries() {
        let m = LaurentMatrix::from_rows(vec![vec![z()], vec![LaurentPoly::delta()]]).unwrap();
        let sq = m.substitute_square();
        assert_eq!(sq.get(0, 0), &lp(2, &[int(1)]));
        assert_eq!(sq.get(1, 0), &lp(-2, &[int(1), int(0), int(-1)]));
    }

    #[test]
    fn solve_right_examples() {
        let den = LaurentMatrix::from_rows(vec![
            vec![lp(-2, &[int(1), int(0), int(-1)]), LaurentPoly::constant(int(-1))],
            vec![LaurentPoly::zero(), lp(-2, &[int(1), int(0), int(-1)])],
        ])
        .unwrap();
        assert_eq!(
            LaurentMatrix::solve_right(&den, &den).unwrap(),
            LaurentMatrix::identity(2)
        );
        let num = LaurentMatrix::from_rows(vec![
            vec![lp(-1, &[int(1), int(0), int(-1)]), lp(1, &[int(-1)])],
            vec![LaurentPoly::zero(), lp(-1, &[rat(1, 2), int(0), rat(-1, 2)])],
        ])
        .unwrap();
        let x = LaurentMatrix::solve_right(&num, &den).unwrap();
        let expected = LaurentMatrix::diag(vec![z(), lp(1, &[rat(1, 2)])]);
        assert_eq!(x, expected);
        assert_eq!(x.mul(&den).unwrap(), num);

        let one = LaurentMatrix::identity(1);
        let delta = LaurentMatrix::diag(vec![LaurentPoly::delta()]);
        assert_eq!(
            LaurentMatrix::solve_right(&one, &delta),
            Err(Error::NotExactlyDivisible { row: 0, col: 0 })
        );
        assert_eq!(
            LaurentMatrix::solve_right(&one, &LaurentMatrix::zeros(1, 1)),
            Err(Error::SingularSymbol)
        );
    }

    #[test]
    fn adjugate_identity() {
        let m = LaurentMatrix::from_rows(vec![
            vec![z(), LaurentPoly::one(), LaurentPoly::delta()],
            vec![LaurentPoly::constant(int(2)), LaurentPoly::delta(), LaurentPoly::zero()],
            vec![LaurentPoly::one(), z(), LaurentPoly::constant(rat(1, 2))],
        ])
        .unwrap();
        let det = m.det().unwrap();
        let prod = m.adjugate().unwrap().mul(&m).unwrap();
        for i in 0..3 {
            for j in 0..3 {
                let expected = if i == j { det.clone() } else { LaurentPoly::zero() };
                assert_eq!(prod.get(i, j), &expected);
            }
        }
    }
}
