//! Stirling numbers, coefficients `G_n^k` for repeated integration with
//! forward differences, p-Cauchy numbers, and the coefficient vectors
//! `a_j`, `y_j` consumed by the augmented Taylor operators.
//!
//! Tables are memoized and grow monotonically. The shared instances behind
//! the free functions are guarded by a mutex, so the functions behave as pure
//! functions from any thread.

use std::sync::{Mutex, OnceLock};

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::algebra::rational::{factorial, from_bigint, Rational};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum TableKind {
    /// Unsigned Stirling numbers of the first kind (cycle counts).
    Stirling1,
    /// `s(n, m) = (-1)^(n-m) [n, m]`.
    Stirling1Signed,
    Stirling2,
    /// `G_n^k`, indexed `(n, k)`.
    Gregory,
}

/// Memoized grid of exact values for one [`TableKind`].
#[derive(Debug)]
pub struct CoeffTable {
    kind: TableKind,
    grid: Mutex<Grid>,
}

#[derive(Debug, Default)]
struct Grid {
    // rows[r][c]: for Stirling tables r = n, c = m; for Gregory r = k - 1, c = n
    rows: Vec<Vec<Rational>>,
    n_rows: usize,
    n_cols: usize,
}

impl CoeffTable {
    pub fn new(kind: TableKind) -> Self {
        CoeffTable {
            kind,
            grid: Mutex::new(Grid::default()),
        }
    }

    pub fn kind(&self) -> TableKind {
        self.kind
    }

    /// Value at `(n, m)`; for [`TableKind::Gregory`] this is `G_n^m` and
    /// `m = 0` yields zero.
    pub fn get(&self, n: usize, m: usize) -> Rational {
        let (r, c) = match self.kind {
            TableKind::Gregory => {
                if m == 0 {
                    return Rational::zero();
                }
                (m - 1, n)
            }
            _ => (n, m),
        };
        let mut grid = self.grid.lock().expect("coefficient table poisoned");
        if r >= grid.n_rows || c >= grid.n_cols {
            let rows = (r + 1).max(2 * grid.n_rows).max(8);
            let cols = (c + 1).max(2 * grid.n_cols).max(8);
            *grid = Grid {
                rows: self.build(rows, cols),
                n_rows: rows,
                n_cols: cols,
            };
        }
        grid.rows[r][c].clone()
    }

    /// `[get(n, m) for m in 0..=m_max] for n in 0..=n_max`.
    pub fn table(&self, n_max: usize, m_max: usize) -> Vec<Vec<Rational>> {
        (0..=n_max)
            .map(|n| (0..=m_max).map(|m| self.get(n, m)).collect())
            .collect()
    }

    fn build(&self, rows: usize, cols: usize) -> Vec<Vec<Rational>> {
        match self.kind {
            TableKind::Stirling1 => stirling_grid(rows, cols, |n, _m| BigInt::from(n)),
            TableKind::Stirling1Signed => {
                stirling_grid(rows, cols, |n, _m| -BigInt::from(n))
            }
            TableKind::Stirling2 => stirling_grid(rows, cols, |_n, m| BigInt::from(m)),
            TableKind::Gregory => gregory_grid(rows, cols),
        }
    }
}

/// Builds `t[n+1][m] = w(n, m) t[n][m] + t[n][m-1]` from `t[0][0] = 1` and
/// zeros elsewhere in row 0 and column 0. Second-kind numbers use the column
/// index as weight, first-kind the row index.
fn stirling_grid(
    rows: usize,
    cols: usize,
    weight: impl Fn(usize, usize) -> BigInt,
) -> Vec<Vec<Rational>> {
    let mut t = vec![vec![BigInt::zero(); cols]; rows];
    t[0][0] = BigInt::one();
    for n in 0..rows - 1 {
        for m in 1..cols {
            let v = weight(n, m) * &t[n][m] + &t[n][m - 1];
            t[n + 1][m] = v;
        }
    }
    t.into_iter()
        .map(|row| row.into_iter().map(from_bigint).collect())
        .collect()
}

/// `G_n^k` for `k = 1..=rows`, `n = 0..cols`: the `k = 1` row from the
/// signed-Stirling sum, higher rows by the three-term recursion in `k`.
fn gregory_grid(rows: usize, cols: usize) -> Vec<Vec<Rational>> {
    // row k-1 needs one more column than row k
    let width = cols + rows;
    let mut g: Vec<Vec<Rational>> = Vec::with_capacity(rows);
    g.push((0..width).map(gregory_base).collect());
    for k in 2..=rows {
        let prev = &g[k - 2];
        let w = width - (k - 1);
        let scale = Rational::one() / Rational::from_integer(BigInt::from(1i64 - k as i64));
        let row: Vec<Rational> = (0..w)
            .map(|n| {
                if n == 0 {
                    return Rational::new(BigInt::one(), factorial(k));
                }
                let a = Rational::from_integer(BigInt::from(n as i64 - 1)) * &prev[n];
                let b = Rational::from_integer(BigInt::from(n + 1)) * &prev[n + 1];
                (a + b) * &scale
            })
            .collect();
        g.push(row);
    }
    g.into_iter()
        .map(|mut row| {
            row.truncate(cols);
            row
        })
        .collect()
}

/// `G_n^1 = (1/n!) Σ_{j=1}^{n} s(n, j) / (j + 1)`, with `G_0^1 = 1`.
fn gregory_base(n: usize) -> Rational {
    if n == 0 {
        return Rational::one();
    }
    let signed = shared(TableKind::Stirling1Signed);
    let sum = (1..=n).fold(Rational::zero(), |acc, j| {
        acc + signed.get(n, j) / Rational::from_integer(BigInt::from(j + 1))
    });
    sum / from_bigint(factorial(n))
}

fn shared(kind: TableKind) -> &'static CoeffTable {
    static S1: OnceLock<CoeffTable> = OnceLock::new();
    static S1S: OnceLock<CoeffTable> = OnceLock::new();
    static S2: OnceLock<CoeffTable> = OnceLock::new();
    static G: OnceLock<CoeffTable> = OnceLock::new();
    let cell = match kind {
        TableKind::Stirling1 => &S1,
        TableKind::Stirling1Signed => &S1S,
        TableKind::Stirling2 => &S2,
        TableKind::Gregory => &G,
    };
    cell.get_or_init(|| CoeffTable::new(kind))
}

fn as_integer(r: Rational) -> BigInt {
    debug_assert!(r.is_integer());
    r.to_integer()
}

/// Stirling number of the second kind `{n, m}`; zero outside the triangle.
pub fn stirling2(n: usize, m: usize) -> BigInt {
    as_integer(shared(TableKind::Stirling2).get(n, m))
}

/// Unsigned Stirling number of the first kind `[n, m]`.
pub fn stirling1_unsigned(n: usize, m: usize) -> BigInt {
    as_integer(shared(TableKind::Stirling1).get(n, m))
}

/// Signed Stirling number of the first kind, from its own recurrence
/// `s(n+1, m) = s(n, m-1) - n s(n, m)`.
pub fn stirling1_signed(n: usize, m: usize) -> BigInt {
    as_integer(shared(TableKind::Stirling1Signed).get(n, m))
}

/// `G_n^k` for `k >= 1` (zero for `k = 0`).
pub fn gregory_g(n: usize, k: usize) -> Rational {
    shared(TableKind::Gregory).get(n, k)
}

/// `G_n^k = (1/n!) Σ_{j=1}^{n} s(n, j) / ((j+1)···(j+k))`, evaluated
/// directly. Independent of the recursion behind [`gregory_g`] for `k >= 2`.
pub fn gregory_g_stirling(n: usize, k: usize) -> Rational {
    if k == 0 {
        return Rational::zero();
    }
    if n == 0 {
        return Rational::new(BigInt::one(), factorial(k));
    }
    let sum = (1..=n).fold(Rational::zero(), |acc, j| {
        let rising: BigInt = (j + 1..=j + k).map(BigInt::from).product();
        acc + Rational::new(stirling1_signed(n, j), rising)
    });
    sum / from_bigint(factorial(n))
}

/// p-Cauchy number of the first kind, `C_{n,p} = n! (p+1)! G_n^{p+1}`.
pub fn p_cauchy(n: usize, p: usize) -> Rational {
    from_bigint(factorial(n) * factorial(p + 1)) * gregory_g(n, p + 1)
}

/// `γ^j_m = (m!/j!) {j, m}`; zero when `m > j`.
pub fn gamma_coeff(j: usize, m: usize) -> Rational {
    if m > j {
        return Rational::zero();
    }
    Rational::new(factorial(m) * stirling2(j, m), factorial(j))
}

/// `a_j = (1/(j+d)!, …, 1/(j+1)!, 1/j!)`.
pub fn a_vector(j: usize, d: usize) -> Vec<Rational> {
    (0..=d)
        .map(|i| Rational::new(BigInt::one(), factorial(j + d - i)))
        .collect()
}

/// `y_j = (G_j^d, …, G_j^1, 0)`.
pub fn y_vector(j: usize, d: usize) -> Vec<Rational> {
    (0..=d)
        .map(|i| if i == d { Rational::zero() } else { gregory_g(j, d - i) })
        .collect()
}

/// `(a_j, y_j)` of length `d + 1`.
pub fn coeff_vectors(j: usize, d: usize) -> (Vec<Rational>, Vec<Rational>) {
    (a_vector(j, d), y_vector(j, d))
}

/// Copy of `v` with the last entry set to zero.
pub fn hat(v: &[Rational]) -> Vec<Rational> {
    let mut out = v.to_vec();
    if let Some(last) = out.last_mut() {
        *last = Rational::zero();
    }
    out
}
