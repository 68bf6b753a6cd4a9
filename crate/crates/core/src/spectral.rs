//! Spectral conditions `S_A v(p_k) = 2^-k v(p_k)`, constant-sequence
//! eigenspaces, and construction of masks with a prescribed spectral order.
//!
//! All checks are exact polynomial identities in the sequence index, split
//! into the even branch `(S_A s)(2α)` and the odd branch `(S_A s)(2α+1)`.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::algebra::rational::{factorial, int, pow2};
use crate::algebra::{Poly, RatMatrix, Rational};
use crate::error::{Error, Result};
use crate::polyseq::{mask_apply_poly, vpoly, PolyVec};
use crate::subdivision::{coset_sums, Mask};

/// Polynomials `p_0, …, p_order` with `deg p_k = k` and leading coefficient `1/k!`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SpectralSystem {
    d: usize,
    polys: Vec<Poly>,
}

impl SpectralSystem {
    pub fn new(d: usize, polys: Vec<Poly>) -> Result<Self> {
        if polys.is_empty() {
            return Err(Error::InvalidArgument("spectral system needs p_0".into()));
        }
        for (k, p) in polys.iter().enumerate() {
            let lead = Rational::new(BigInt::one(), factorial(k));
            if p.degree() != Some(k) || p.leading_coeff() != lead {
                return Err(Error::InvalidArgument(format!(
                    "p_{k} = {p} is not normalized (degree {k}, leading coefficient 1/{k}!)"
                )));
            }
        }
        Ok(SpectralSystem { d, polys })
    }

    /// `p_k = x^k / k!` for `k = 0..=order`.
    pub fn monomial(d: usize, order: usize) -> Self {
        SpectralSystem {
            d,
            polys: (0..=order).map(Poly::normalized_monomial).collect(),
        }
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn order(&self) -> usize {
        self.polys.len() - 1
    }

    pub fn polys(&self) -> &[Poly] {
        &self.polys
    }
}

/// `(even - 2^-k v(p)(2·), odd - 2^-k v(p)(2·+1))`; both zero iff `p`
/// satisfies the spectral identity with eigenvalue `2^-k`.
pub fn branch_residuals(mask: &Mask, p: &Poly, k: usize) -> Result<(PolyVec, PolyVec)> {
    let s = vpoly(p, mask.d());
    let (even, odd) = mask_apply_poly(mask, &s)?;
    let scale = pow2(-(k as i64));
    let two = int(2);
    let even_target = s.affine(&two, &Rational::zero()).scale(&scale);
    let odd_target = s.affine(&two, &Rational::one()).scale(&scale);
    Ok((&even - &even_target, &odd - &odd_target))
}

/// Per-order report: entry `k` is true iff `S_A v(p_k) = 2^-k v(p_k)`.
pub fn spectral_check(mask: &Mask, sys: &SpectralSystem) -> Result<Vec<bool>> {
    if mask.d() != sys.d {
        return Err(Error::Shape(format!(
            "mask has d = {}, spectral system d = {}",
            mask.d(),
            sys.d
        )));
    }
    sys.polys
        .iter()
        .enumerate()
        .map(|(k, p)| {
            let (e, o) = branch_residuals(mask, p, k)?;
            Ok(e.is_zero() && o.is_zero())
        })
        .collect()
}

/// Result of [`spectral_solve`]: the system up to the last solvable order and
/// the first failing order, if any.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SolveOutcome {
    pub system: Option<SpectralSystem>,
    pub failed_at: Option<usize>,
}

impl SolveOutcome {
    /// Highest order reached, `None` if order 0 already fails.
    pub fn achieved(&self) -> Option<usize> {
        self.system.as_ref().map(SpectralSystem::order)
    }
}

fn flatten(pair: &(PolyVec, PolyVec), max_deg: usize) -> Vec<Rational> {
    [&pair.0, &pair.1]
        .iter()
        .flat_map(|pv| pv.entries().iter())
        .flat_map(|p| (0..=max_deg).map(move |e| p.coeff(e)))
        .collect()
}

/// Solves the spectral condition order by order up to `max_order`; free
/// parameters are set to zero.
pub fn spectral_solve(mask: &Mask, max_order: usize) -> Result<SolveOutcome> {
    spectral_solve_with(mask, max_order, &mut |_| Rational::zero())
}

/// As [`spectral_solve`], with free parameters of order `k` chosen by `free(k)`.
pub fn spectral_solve_with(
    mask: &Mask,
    max_order: usize,
    free: &mut dyn FnMut(usize) -> Rational,
) -> Result<SolveOutcome> {
    let mut polys = Vec::new();
    for k in 0..=max_order {
        let Some(p) = spectral_poly_with(mask, k, free)? else {
            let system = (!polys.is_empty()).then(|| SpectralSystem {
                d: mask.d(),
                polys: polys.clone(),
            });
            return Ok(SolveOutcome {
                system,
                failed_at: Some(k),
            });
        };
        polys.push(p);
    }
    Ok(SolveOutcome {
        system: Some(SpectralSystem {
            d: mask.d(),
            polys,
        }),
        failed_at: None,
    })
}

/// Normalized `p_k` with `S_A v(p_k) = 2^-k v(p_k)`, free parameters zero;
/// `None` if no such polynomial exists. Orders are solved independently.
pub fn spectral_poly(mask: &Mask, k: usize) -> Result<Option<Poly>> {
    spectral_poly_with(mask, k, &mut |_| Rational::zero())
}

fn spectral_poly_with(
    mask: &Mask,
    k: usize,
    free: &mut dyn FnMut(usize) -> Rational,
) -> Result<Option<Poly>> {
    // unknown lower-order coefficients c_0..c_{k-1}
    let target = branch_residuals(mask, &Poly::normalized_monomial(k), k)?;
    let rhs: Vec<Rational> = flatten(&target, k).into_iter().map(|v| -v).collect();
    let mut coeffs = if k == 0 {
        if !rhs.iter().all(Zero::is_zero) {
            return Ok(None);
        }
        Vec::new()
    } else {
        let mut m = RatMatrix::zeros(rhs.len(), k);
        for j in 0..k {
            let residual = branch_residuals(mask, &Poly::monomial(Rational::one(), j), k)?;
            for (i, v) in flatten(&residual, k).into_iter().enumerate() {
                m[(i, j)] = v;
            }
        }
        let Ok(sol) = m.solve(&rhs)? else {
            return Ok(None);
        };
        let mut c = sol.particular;
        for basis in &sol.nullspace {
            let t = free(k);
            for (ci, bi) in c.iter_mut().zip(basis) {
                *ci += &t * bi;
            }
        }
        c
    };
    coeffs.push(Rational::new(BigInt::one(), factorial(k)));
    Ok(Some(Poly::new(coeffs)))
}

/// Basis of `E_{λA} = { c : λ·even·c = c, λ·odd·c = c }`.
pub fn eigenspace_constants(mask: &Mask, lambda: &Rational) -> Result<Vec<Vec<Rational>>> {
    if lambda.is_zero() {
        return Err(Error::InvalidArgument("eigenspace scale must be nonzero".into()));
    }
    let (even, odd) = coset_sums(mask);
    let id = RatMatrix::identity(mask.d() + 1);
    let top = even.scale(lambda).sub(&id)?;
    let bottom = odd.scale(lambda).sub(&id)?;
    Ok(top.vstack(&bottom)?.nullspace())
}

/// Solves for a mask supported on `lo..=hi` with `S_A v(x^k/k!) = 2^-k v(x^k/k!)`
/// for `k = 0..=order`; free entries are zero.
pub fn mask_construct(d: usize, order: usize, lo: i64, hi: i64) -> Result<Mask> {
    mask_construct_with(d, order, lo, hi, &mut || Rational::zero())
}

/// As [`mask_construct`], with each free direction of the solution space
/// weighted by a value drawn from `free`.
pub fn mask_construct_with(
    d: usize,
    order: usize,
    lo: i64,
    hi: i64,
    free: &mut dyn FnMut() -> Rational,
) -> Result<Mask> {
    if d == 0 {
        return Err(Error::InvalidArgument("d must be at least 1".into()));
    }
    if hi < lo {
        return Err(Error::InvalidArgument(format!("empty support {lo}:{hi}")));
    }
    let n = d + 1;
    let taps = (hi - lo + 1) as usize;
    let unknown = |alpha: i64, i: usize, j: usize| ((alpha - lo) as usize * n + i) * n + j;
    let n_unknowns = taps * n * n;

    let mut rows: Vec<Vec<Rational>> = Vec::new();
    let mut rhs: Vec<Rational> = Vec::new();
    for k in 0..=order {
        let s = vpoly(&Poly::normalized_monomial(k), d);
        let scale = pow2(-(k as i64));
        for parity in 0..2i64 {
            let target = s.affine(&int(2), &int(parity)).scale(&scale);
            for i in 0..n {
                for e in 0..=k {
                    let mut row = vec![Rational::zero(); n_unknowns];
                    for alpha in lo..=hi {
                        if alpha.rem_euclid(2) != parity {
                            continue;
                        }
                        let gamma = alpha.div_euclid(2);
                        let shifted = s.shift(&int(-gamma));
                        for (j, sj) in shifted.entries().iter().enumerate() {
                            row[unknown(alpha, i, j)] = sj.coeff(e);
                        }
                    }
                    rows.push(row);
                    rhs.push(target.entries()[i].coeff(e));
                }
            }
        }
    }
    let m = RatMatrix::from_rows(rows)?;
    let sol = match m.solve(&rhs)? {
        Ok(sol) => sol,
        Err(bad) => {
            return Err(Error::Infeasible {
                deficiency: bad.augmented_rank - bad.rank,
                rank: bad.rank,
                augmented_rank: bad.augmented_rank,
            })
        }
    };
    let mut x = sol.particular;
    for basis in &sol.nullspace {
        let t = free();
        if t.is_zero() {
            continue;
        }
        for (xi, bi) in x.iter_mut().zip(basis) {
            *xi += &t * bi;
        }
    }
    let matrices = (0..taps)
        .map(|a| {
            RatMatrix::from_rows(
                (0..n)
                    .map(|i| (0..n).map(|j| x[(a * n + i) * n + j].clone()).collect())
                    .collect(),
            )
        })
        .collect::<Result<Vec<_>>>()?;
    Mask::new(d, lo, matrices)
}

/// Highest order `k <= max_order` such that the spectral condition holds for
/// all orders up to `k`.
pub fn spectral_order(mask: &Mask, max_order: usize) -> Result<Option<usize>> {
    Ok(spectral_solve(mask, max_order)?.achieved())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rational::rat;

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
    fn system_validation() {
        assert!(SpectralSystem::new(1, vec![Poly::one(), Poly::from_ints(&[3, 1])]).is_ok());
        assert!(SpectralSystem::new(1, vec![Poly::one(), Poly::from_ints(&[0, 2])]).is_err());
        assert!(SpectralSystem::new(1, vec![Poly::from_ints(&[0, 1])]).is_err());
        assert!(SpectralSystem::new(1, vec![]).is_err());
    }

    #[test]
    fn check_worked_mask() {
        let w = worked_mask();
        let sys = SpectralSystem::monomial(1, 1);
        assert_eq!(spectral_check(&w, &sys).unwrap(), vec![true, true]);
        let sys2 = SpectralSystem::monomial(1, 2);
        assert_eq!(spectral_check(&w, &sys2).unwrap(), vec![true, true, false]);
        // odd branch residual for p_2 = x^2/2 is the constant -(1/8, 1/4)
        let (even, odd) = branch_residuals(&w, &Poly::normalized_monomial(2), 2).unwrap();
        assert_eq!(odd.as_constant(), Some(vec![rat(-1, 8), rat(-1, 4)]));
        assert!(!(even.is_zero() && odd.is_zero()));
        let zero = Mask::zero(1);
        assert_eq!(
            spectral_check(&zero, &SpectralSystem::monomial(1, 0)).unwrap(),
            vec![false]
        );
        assert!(spectral_check(&w, &SpectralSystem::monomial(2, 0)).is_err());
    }

    #[test]
    fn solve_worked_mask() {
        let out = spectral_solve(&worked_mask(), 3).unwrap();
        assert_eq!(out.failed_at, Some(2));
        assert_eq!(out.achieved(), Some(1));
        let sys = out.system.unwrap();
        assert_eq!(sys.polys(), &[Poly::one(), Poly::from_ints(&[0, 1])]);

        let zero = spectral_solve(&Mask::zero(1), 3).unwrap();
        assert_eq!(zero.failed_at, Some(0));
        assert!(zero.system.is_none());
    }

    #[test]
    fn solve_constructed_mask() {
        let m = mask_construct(1, 3, -2, 3).unwrap();
        let out = spectral_solve(&m, 3).unwrap();
        assert_eq!(out.failed_at, None);
        let sys = out.system.unwrap();
        assert_eq!(sys.order(), 3);
        assert!(spectral_check(&m, &sys).unwrap().iter().all(|&b| b));
    }

    #[test]
    fn eigenspace_examples() {
        // symbol [[2z, 0], [0, 1 + z]]
        let b = Mask::new(
            1,
            0,
            vec![RatMatrix::from_ints(&[&[0, 0], &[0, 1]]), RatMatrix::from_ints(&[&[2, 0], &[0, 1]])],
        )
        .unwrap();
        assert_eq!(eigenspace_constants(&b, &int(1)).unwrap(), vec![vec![int(0), int(1)]]);
        let id = Mask::new(1, 0, vec![RatMatrix::identity(2)]).unwrap();
        assert!(eigenspace_constants(&id, &int(1)).unwrap().is_empty());
        assert!(eigenspace_constants(&id, &int(0)).is_err());

        let w = worked_mask();
        let (even, odd) = coset_sums(&w);
        for lambda in [int(1), int(2), rat(1, 2)] {
            for v in eigenspace_constants(&w, &lambda).unwrap() {
                assert_eq!(even.scale(&lambda).mul_vec(&v).unwrap(), v);
                assert_eq!(odd.scale(&lambda).mul_vec(&v).unwrap(), v);
            }
        }
    }

    #[test]
    fn construct_examples() {
        assert_eq!(mask_construct(1, 1, 0, 1).unwrap(), worked_mask());
        let m = mask_construct(1, 2, -1, 1).unwrap();
        assert!(spectral_check(&m, &SpectralSystem::monomial(1, 2))
            .unwrap()
            .iter()
            .all(|&b| b));
        assert!(matches!(
            mask_construct(1, 5, 0, 0),
            Err(Error::Infeasible { .. })
        ));
        assert!(mask_construct(1, 1, 2, 1).is_err());
    }
}
