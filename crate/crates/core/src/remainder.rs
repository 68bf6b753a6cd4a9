//! Forward-difference integration sums, iterated-integral remainders, and the
//! row-by-row reading of `T̃_d^n v(f)` as remainder terms.
//!
//! Builtin functions are evaluated in `f64`; polynomials take an exact path.

use std::fmt;
use std::str::FromStr;
use std::sync::OnceLock;

use num_traits::{One, Zero};

use crate::algebra::rational::{binomial, from_bigint, from_f64, parse_rational, to_f64};
use crate::algebra::{Poly, Rational};
use crate::combinatorics::gregory_g;
use crate::error::{Error, Result};
use crate::operators::augmented_taylor;
use crate::par::Execution;
use crate::polyseq::{diffop_apply, vpoly};

/// `exp`, the `k`-th derivative of `sin`, or a rational polynomial.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum AnalyticFn {
    Exp,
    Sin(usize),
    Poly(Poly),
}

impl AnalyticFn {
    pub fn sin() -> Self {
        AnalyticFn::Sin(0)
    }

    pub fn derivative(&self, k: usize) -> AnalyticFn {
        match self {
            AnalyticFn::Exp => AnalyticFn::Exp,
            AnalyticFn::Sin(m) => AnalyticFn::Sin((m + k) % 4),
            AnalyticFn::Poly(p) => AnalyticFn::Poly(p.nth_derivative(k)),
        }
    }

    pub fn eval(&self, x: f64) -> f64 {
        match self {
            AnalyticFn::Exp => x.exp(),
            AnalyticFn::Sin(m) => match m % 4 {
                0 => x.sin(),
                1 => x.cos(),
                2 => -x.sin(),
                _ => -x.cos(),
            },
            AnalyticFn::Poly(p) => p.eval_f64(x),
        }
    }

    /// `Δ^m f(x) = Σ_i (-1)^(m-i) C(m,i) f(x+i)`.
    pub fn forward_difference(&self, m: usize, x: f64) -> f64 {
        (0..=m)
            .map(|i| {
                let c = to_f64(&from_bigint(binomial(m, i)));
                let sign = if (m - i).is_multiple_of(2) { 1.0 } else { -1.0 };
                sign * c * self.eval(x + i as f64)
            })
            .sum()
    }
}

impl FromStr for AnalyticFn {
    type Err = Error;

    /// `exp`, `sin`, or `poly:c0,c1,…` with ascending rational coefficients.
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "exp" => Ok(AnalyticFn::Exp),
            "sin" => Ok(AnalyticFn::sin()),
            _ => {
                let body = s
                    .strip_prefix("poly:")
                    .ok_or_else(|| Error::Parse(format!("unknown function {s:?}")))?;
                let coeffs = body
                    .split(',')
                    .map(parse_rational)
                    .collect::<Result<Vec<_>>>()?;
                Ok(AnalyticFn::Poly(Poly::new(coeffs)))
            }
        }
    }
}

impl fmt::Display for AnalyticFn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AnalyticFn::Exp => write!(f, "exp"),
            AnalyticFn::Sin(0) => write!(f, "sin"),
            AnalyticFn::Sin(m) => write!(f, "sin^({m})"),
            AnalyticFn::Poly(p) => write!(f, "{p}"),
        }
    }
}

fn check_k(k: usize) -> Result<()> {
    if k == 0 {
        return Err(Error::InvalidArgument("integration order k must be >= 1".into()));
    }
    Ok(())
}

/// `I^k_n f(x1; x0) = Σ_{m=0}^n G_m^k Δ^m f(x0) (x1 - x0)^k`.
pub fn forward_int_sum(f: &AnalyticFn, k: usize, n: usize, x0: f64, x1: f64) -> Result<f64> {
    check_k(k)?;
    let h = (x1 - x0).powi(k as i32);
    Ok((0..=n)
        .map(|m| to_f64(&gregory_g(m, k)) * f.forward_difference(m, x0))
        .sum::<f64>()
        * h)
}

/// Exact `I^k_n p(x1; x0)` for a rational polynomial.
pub fn forward_int_sum_exact(p: &Poly, k: usize, n: usize, x0: &Rational, x1: &Rational) -> Result<Rational> {
    check_k(k)?;
    let mut h = Rational::one();
    for _ in 0..k {
        h *= x1 - x0;
    }
    let sum = (0..=n).fold(Rational::zero(), |acc, m| {
        acc + gregory_g(m, k) * p.forward_difference_pow(m).eval(x0)
    });
    Ok(sum * h)
}

const GL_POINTS: usize = 16;
const MAX_DEPTH: usize = 40;

/// Gauss–Legendre nodes and weights on `[-1, 1]` by Newton iteration.
fn gauss_legendre() -> &'static [(f64, f64)] {
    static RULE: OnceLock<Vec<(f64, f64)>> = OnceLock::new();
    RULE.get_or_init(|| {
        let n = GL_POINTS;
        let mut rule = Vec::with_capacity(n);
        for i in 0..n {
            let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
            let mut dp = 0.0;
            for _ in 0..100 {
                // three-term recurrence for P_n and its derivative
                let (mut p0, mut p1) = (1.0, x);
                for k in 2..=n {
                    let k = k as f64;
                    let p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
                    p0 = p1;
                    p1 = p2;
                }
                dp = n as f64 * (x * p1 - p0) / (x * x - 1.0);
                let dx = p1 / dp;
                x -= dx;
                if dx.abs() < 1e-16 {
                    break;
                }
            }
            rule.push((x, 2.0 / ((1.0 - x * x) * dp * dp)));
        }
        rule
    })
}

fn gl_panel(g: &dyn Fn(f64) -> f64, a: f64, b: f64) -> f64 {
    let half = 0.5 * (b - a);
    let mid = 0.5 * (a + b);
    half * gauss_legendre().iter().map(|(x, w)| w * g(mid + half * x)).sum::<f64>()
}

fn adaptive(g: &dyn Fn(f64) -> f64, a: f64, b: f64, whole: f64, tol: f64, depth: usize) -> Result<f64> {
    let m = 0.5 * (a + b);
    let left = gl_panel(g, a, m);
    let right = gl_panel(g, m, b);
    if (left + right - whole).abs() <= tol {
        return Ok(left + right);
    }
    if depth >= MAX_DEPTH {
        return Err(Error::Quadrature(format!(
            "no convergence on [{a}, {b}] to tolerance {tol:e}"
        )));
    }
    Ok(adaptive(g, a, m, left, 0.5 * tol, depth + 1)? + adaptive(g, m, b, right, 0.5 * tol, depth + 1)?)
}

/// Adaptive Gauss–Legendre quadrature of `g` over `[a, b]`.
pub fn integrate(g: &dyn Fn(f64) -> f64, a: f64, b: f64, tol: f64) -> Result<f64> {
    if tol.is_nan() || tol <= 0.0 {
        return Err(Error::InvalidArgument(format!("tolerance must be positive, got {tol}")));
    }
    if a == b {
        return Ok(0.0);
    }
    let whole = gl_panel(g, a, b);
    let v = adaptive(g, a, b, whole, tol, 0)?;
    if !v.is_finite() {
        return Err(Error::Quadrature(format!("non-finite value on [{a}, {b}]")));
    }
    Ok(v)
}

/// `k`-fold iterated integral from `x0` to `x1` as
/// `∫ (x1 - t)^(k-1) / (k-1)! f(t) dt`.
pub fn iterated_integral(f: &AnalyticFn, k: usize, x0: f64, x1: f64, tol: f64) -> Result<f64> {
    check_k(k)?;
    if let AnalyticFn::Poly(p) = f {
        if tol <= 0.0 {
            return Err(Error::InvalidArgument(format!("tolerance must be positive, got {tol}")));
        }
        return Ok(to_f64(&iterated_integral_exact(p, k, &from_f64(x0)?, &from_f64(x1)?)?));
    }
    let fact: f64 = (1..k).map(|i| i as f64).product();
    let kernel = |t: f64| (x1 - t).powi(k as i32 - 1) / fact * f.eval(t);
    integrate(&kernel, x0, x1, tol)
}

/// Nested quadrature `∫_{x0}^{x1} ∫_{x0}^{t_1} … f`, exponential in `k`.
pub fn nested_integral(f: &AnalyticFn, k: usize, x0: f64, x1: f64, tol: f64) -> Result<f64> {
    check_k(k)?;
    fn inner(f: &AnalyticFn, k: usize, x0: f64, t: f64, tol: f64) -> f64 {
        if k == 0 {
            return f.eval(t);
        }
        integrate(&|s| inner(f, k - 1, x0, s, tol), x0, t, tol).unwrap_or(f64::NAN)
    }
    let v = inner(f, k, x0, x1, tol);
    if v.is_nan() {
        return Err(Error::Quadrature("nested quadrature failed".into()));
    }
    Ok(v)
}

/// Exact `k`-fold iterated integral of a rational polynomial.
pub fn iterated_integral_exact(p: &Poly, k: usize, x0: &Rational, x1: &Rational) -> Result<Rational> {
    check_k(k)?;
    let mut q = p.shift(x0);
    for _ in 0..k {
        q = q.antiderivative();
    }
    Ok(q.eval(&(x1 - x0)))
}

/// `R^k_n f(x1; x0)`: iterated integral minus `I^k_n`.
pub fn remainder(f: &AnalyticFn, k: usize, n: usize, x0: f64, x1: f64, tol: f64) -> Result<f64> {
    if let AnalyticFn::Poly(p) = f {
        let r = remainder_exact(p, k, n, &from_f64(x0)?, &from_f64(x1)?)?;
        return Ok(to_f64(&r));
    }
    Ok(iterated_integral(f, k, x0, x1, tol)? - forward_int_sum(f, k, n, x0, x1)?)
}

pub fn remainder_exact(p: &Poly, k: usize, n: usize, x0: &Rational, x1: &Rational) -> Result<Rational> {
    Ok(iterated_integral_exact(p, k, x0, x1)? - forward_int_sum_exact(p, k, n, x0, x1)?)
}

#[derive(Debug, Clone, PartialEq)]
pub struct RowCheck {
    pub row: usize,
    pub operator_value: f64,
    pub remainder_value: f64,
    pub discrepancy: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct InterpretReport {
    pub d: usize,
    pub n: usize,
    pub x: f64,
    pub rows: Vec<RowCheck>,
}

impl InterpretReport {
    pub fn max_discrepancy(&self) -> f64 {
        self.rows.iter().map(|r| r.discrepancy).fold(0.0, f64::max)
    }
}

fn check_dn(d: usize, n: usize) -> Result<()> {
    if d == 0 || n < d {
        return Err(Error::InvalidArgument(format!("need n >= d >= 1, got d = {d}, n = {n}")));
    }
    Ok(())
}

/// Compares row `j < d` of `T̃_d^n v(f)(x)` with `R^{d-j}_{n-d} f^(d)(x+1; x)`
/// and row `d` with `Δ^{n+1-d} f^(d)(x)`.
pub fn interpret_check(f: &AnalyticFn, d: usize, n: usize, x: f64, tol: f64) -> Result<InterpretReport> {
    check_dn(d, n)?;
    if let AnalyticFn::Poly(p) = f {
        let exact = interpret_check_exact(p, d, n, &from_f64(x)?)?;
        let rows = exact
            .iter()
            .enumerate()
            .map(|(row, (op, rem))| {
                let discrepancy = to_f64(&(op - rem)).abs();
                RowCheck { row, operator_value: to_f64(op), remainder_value: to_f64(rem), discrepancy }
            })
            .collect();
        return Ok(InterpretReport { d, n, x, rows });
    }
    let op = augmented_taylor(d, n)?;
    let derivs: Vec<AnalyticFn> = (0..=d).map(|i| f.derivative(i)).collect();
    let lhs = op.apply_at(x, |t| derivs.iter().map(|g| g.eval(t)).collect());
    let fd = &derivs[d];
    let mut rows = Vec::with_capacity(d + 1);
    for (j, &operator_value) in lhs.iter().enumerate() {
        let remainder_value = if j < d {
            remainder(fd, d - j, n - d, x, x + 1.0, tol)?
        } else {
            fd.forward_difference(n + 1 - d, x)
        };
        rows.push(RowCheck {
            row: j,
            operator_value,
            remainder_value,
            discrepancy: (operator_value - remainder_value).abs(),
        });
    }
    Ok(InterpretReport { d, n, x, rows })
}

/// Exact `(operator side, remainder side)` per row for a rational polynomial.
pub fn interpret_check_exact(p: &Poly, d: usize, n: usize, x: &Rational) -> Result<Vec<(Rational, Rational)>> {
    check_dn(d, n)?;
    let op = augmented_taylor(d, n)?;
    let lhs = diffop_apply(&op, &vpoly(p, d))?.eval(x);
    let fd = p.nth_derivative(d);
    let x1 = x + Rational::one();
    lhs.into_iter()
        .enumerate()
        .map(|(j, value)| {
            let rem = if j < d {
                remainder_exact(&fd, d - j, n - d, x, &x1)?
            } else {
                fd.forward_difference_pow(n + 1 - d).eval(x)
            };
            Ok((value, rem))
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq)]
pub struct InterpretCase {
    pub f: AnalyticFn,
    pub d: usize,
    pub n: usize,
    pub x: f64,
}

/// Runs [`interpret_check`] over independent cases.
pub fn interpret_sweep(cases: &[InterpretCase], tol: f64, exec: Execution) -> Vec<Result<InterpretReport>> {
    exec.map(cases, |c| interpret_check(&c.f, c.d, c.n, c.x, tol))
}
