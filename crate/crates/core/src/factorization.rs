//! Factor masks `B_j` with `T S_A = 2^-j S_{B_j} T`.
//!
//! Two routes: [`factor_direct`] divides symbols in one go, [`factor_chain`]
//! starts from the complete Taylor factor and applies rank-one steps with
//! Gauss generators `I + y e_dᵀ`. They must agree.

use num_traits::One;

use crate::algebra::rational::{int, pow2};
use crate::algebra::{LaurentMatrix, RatMatrix, Rational};
use crate::combinatorics::y_vector;
use crate::error::{Error, Result};
use crate::operators::{augmented_taylor, delta_block, gauss_matrix, DiffOp};
use crate::par::Execution;
use crate::polyseq::{diffop_apply, vpoly};
use crate::spectral::{eigenspace_constants, spectral_check, spectral_solve, SpectralSystem};
use crate::subdivision::{coset_sums, Mask};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FactorizationResult {
    pub mask: Mask,
    pub order: usize,
    pub op: DiffOp,
    pub factor: Mask,
    /// `T*(z) A#(z) = 2^-j B#(z) T*(z²)` holds exactly.
    pub verified: bool,
    /// Basis of `E_{B_j}`.
    pub eigen_1: Vec<Vec<Rational>>,
    /// Basis of `E_{2B_j}`.
    pub eigen_2: Vec<Vec<Rational>>,
    /// Chain only: `e_d + y_{j+1-d}` used for the next step.
    pub generator: Option<Vec<Rational>>,
    /// Chain only: set when `dim E_{2B_j} != 1` at a step that proceeded.
    pub flagged: bool,
}

impl FactorizationResult {
    fn new(mask: &Mask, order: usize, op: DiffOp, factor: Mask) -> Result<Self> {
        let verified = verify(mask, &factor, &op, order)?;
        let eigen_1 = eigenspace_constants(&factor, &Rational::one())?;
        let eigen_2 = eigenspace_constants(&factor, &int(2))?;
        Ok(FactorizationResult {
            mask: mask.clone(),
            order,
            op,
            factor,
            verified,
            eigen_1,
            eigen_2,
            generator: None,
            flagged: false,
        })
    }
}

fn check_op(mask: &Mask, op: &DiffOp) -> Result<()> {
    if op.dim() != mask.d() + 1 {
        return Err(Error::Shape(format!(
            "operator of size {} for mask with d = {}",
            op.dim(),
            mask.d()
        )));
    }
    Ok(())
}

/// Checks `T*(z) A#(z) = 2^-j B#(z) T*(z²)` exactly.
pub fn verify(mask: &Mask, factor: &Mask, op: &DiffOp, j: usize) -> Result<bool> {
    check_op(mask, op)?;
    check_op(factor, op)?;
    let t = op.symbol();
    let lhs = t.mul(&mask.symbol())?;
    let rhs = factor
        .symbol()
        .mul(&t.substitute_square())?
        .scale(&pow2(-(j as i64)));
    Ok(lhs == rhs)
}

/// `B# = 2^j T*(z) A#(z) T*(z²)^-1` by exact Laurent division.
pub fn factor_direct(mask: &Mask, op: &DiffOp, j: usize) -> Result<FactorizationResult> {
    check_op(mask, op)?;
    let t = op.symbol();
    let num = t.mul(&mask.symbol())?.scale(&pow2(j as i64));
    let b = LaurentMatrix::solve_right(&num, &t.substitute_square())?;
    FactorizationResult::new(mask, j, op.clone(), Mask::from_symbol(&b)?)
}

/// `C# = scale · M*(z) B#(z) M*(z²)^-1` with `M = D V^-1`.
pub fn rank1_step(b: &Mask, v: &RatMatrix, scale: &Rational) -> Result<Mask> {
    let m = delta_block(b.d()).compose(&DiffOp::constant(&v.inverse()?)?)?;
    let t = m.symbol();
    let num = t.mul(&b.symbol())?.scale(scale);
    Mask::from_symbol(&LaurentMatrix::solve_right(&num, &t.substitute_square())?)
}

/// Factors for `j = d..=n` via the rank-one chain, after checking that the
/// spectral condition holds up to order `n`.
pub fn factor_chain(mask: &Mask, n: usize) -> Result<Vec<FactorizationResult>> {
    let outcome = spectral_solve(mask, n)?;
    if let Some(failed_at) = outcome.failed_at {
        return Err(Error::SpectralOrderInsufficient {
            required: n,
            failed_at,
        });
    }
    run_chain(mask, n, None)
}

/// As [`factor_chain`], given an explicit set of spectral polynomials. The
/// factors do not depend on the choice; the polynomials only serve to
/// cross-check each generator column as `T̃_d^j v(p_{j+1})`.
pub fn factor_chain_with_system(
    mask: &Mask,
    n: usize,
    sys: &SpectralSystem,
) -> Result<Vec<FactorizationResult>> {
    if sys.order() < n {
        return Err(Error::InvalidArgument(format!(
            "spectral system of order {} for chain to order {n}",
            sys.order()
        )));
    }
    let report = spectral_check(mask, sys)?;
    if let Some(k) = report.iter().position(|ok| !ok) {
        if k <= n {
            return Err(Error::SpectralOrderInsufficient {
                required: n,
                failed_at: k,
            });
        }
    }
    run_chain(mask, n, Some(sys))
}

fn run_chain(mask: &Mask, n: usize, sys: Option<&SpectralSystem>) -> Result<Vec<FactorizationResult>> {
    let d = mask.d();
    if n < d {
        return Err(Error::InvalidArgument(format!(
            "chain order {n} below d = {d}"
        )));
    }
    let base = factor_direct(mask, &augmented_taylor(d, d)?, d)
        .map_err(|e| Error::ChainStep { order: d, source: Box::new(e) })?;
    let mut results = vec![base];
    for j in d..n {
        let y = y_vector(j + 1 - d, d);
        let v = gauss_matrix(&y, d)?;
        let mut column = y.clone();
        column[d] = Rational::one();

        let current = results.last_mut().expect("nonempty");
        let (even, odd) = coset_sums(&current.factor);
        let two = int(2);
        let fixed = even.scale(&two).mul_vec(&column)? == column
            && odd.scale(&two).mul_vec(&column)? == column;
        let from_polys = match sys {
            Some(s) => {
                let op = augmented_taylor(d, j)?;
                let image = diffop_apply(&op, &vpoly(&s.polys()[j + 1], d))?;
                image.as_constant().as_deref() == Some(&column[..])
            }
            None => true,
        };
        if !fixed || !from_polys {
            return Err(Error::ChainStep {
                order: j + 1,
                source: Box::new(Error::NotEigenvector { order: j }),
            });
        }
        current.flagged = current.eigen_2.len() != 1;
        current.generator = Some(column);

        let next = rank1_step(&current.factor, &v, &two)
            .map_err(|e| Error::ChainStep { order: j + 1, source: Box::new(e) })?;
        results.push(FactorizationResult::new(
            mask,
            j + 1,
            augmented_taylor(d, j + 1)?,
            next,
        )?);
    }
    Ok(results)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Method {
    #[default]
    Direct,
    Chain,
}

/// Factor of order `j` with `T̃_d^j` by either route.
pub fn factor_order(mask: &Mask, j: usize, method: Method) -> Result<FactorizationResult> {
    match method {
        Method::Direct => {
            let op = augmented_taylor(mask.d(), j)?;
            factor_direct(mask, &op, j).map_err(|e| match e {
                Error::Shape(_) | Error::InvalidArgument(_) => e,
                other => Error::ChainStep { order: j, source: Box::new(other) },
            })
        }
        Method::Chain => Ok(factor_chain(mask, j)?.pop().expect("j >= d gives a result")),
    }
}

/// Independent chains over a batch of `(mask, n)` pairs.
pub fn factor_batch(
    jobs: &[(Mask, usize)],
    exec: Execution,
) -> Vec<Result<Vec<FactorizationResult>>> {
    exec.map(jobs, |(mask, n)| factor_chain(mask, *n))
}

/// Whether the direct route reproduces every factor of a chain.
pub fn chain_matches_direct(results: &[FactorizationResult]) -> Result<bool> {
    for r in results {
        let direct = factor_direct(&r.mask, &r.op, r.order)?;
        if direct.factor != r.factor {
            return Ok(false);
        }
    }
    Ok(true)
}

/// `2 · (both coset sums of B)` fixes `v`.
pub fn fixed_by_twice_cosets(factor: &Mask, v: &[Rational]) -> Result<bool> {
    let (even, odd) = coset_sums(factor);
    let two = int(2);
    Ok(even.scale(&two).mul_vec(v)? == v && odd.scale(&two).mul_vec(v)? == v)
}
