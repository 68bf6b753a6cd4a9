#![allow(dead_code)]

use hermite_core::algebra::rational::{factorial, int, rat};
use hermite_core::subdivision::{Mask, VecSeq};
use hermite_core::{Poly, RatMatrix, Rational};
use num_bigint::BigInt;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

pub fn rng(seed: u64) -> StdRng {
    StdRng::seed_from_u64(seed)
}

pub fn rand_rat(rng: &mut StdRng) -> Rational {
    rat(rng.gen_range(-9..=9), rng.gen_range(1..=6))
}

pub fn rand_nonzero_rat(rng: &mut StdRng) -> Rational {
    loop {
        let r = rand_rat(rng);
        if r != int(0) {
            return r;
        }
    }
}

/// Random polynomial of exact degree `n`.
pub fn rand_poly(rng: &mut StdRng, n: usize) -> Poly {
    let mut c: Vec<Rational> = (0..n).map(|_| rand_rat(rng)).collect();
    c.push(rand_nonzero_rat(rng));
    Poly::new(c)
}

/// Random polynomial with leading term `x^n / n!`.
pub fn rand_normalized_poly(rng: &mut StdRng, n: usize) -> Poly {
    let mut c: Vec<Rational> = (0..n).map(|_| rand_rat(rng)).collect();
    c.push(Rational::new(BigInt::from(1), factorial(n)));
    Poly::new(c)
}

pub fn rand_matrix(rng: &mut StdRng, n: usize) -> RatMatrix {
    RatMatrix::from_rows((0..n).map(|_| (0..n).map(|_| rand_rat(rng)).collect()).collect()).unwrap()
}

pub fn rand_mask(rng: &mut StdRng, d: usize, lo: i64, hi: i64) -> Mask {
    Mask::new(d, lo, (lo..=hi).map(|_| rand_matrix(rng, d + 1)).collect()).unwrap()
}

pub fn rand_seq(rng: &mut StdRng, d: usize, lo: i64, hi: i64) -> VecSeq {
    let vectors = (lo..=hi).map(|_| (0..=d).map(|_| rand_rat(rng)).collect()).collect();
    VecSeq::new(d, lo, vectors).unwrap()
}

/// Random vector of length `d + 1` with last entry zero.
pub fn rand_gauss_vector(rng: &mut StdRng, d: usize) -> Vec<Rational> {
    let mut v: Vec<Rational> = (0..d).map(|_| rand_rat(rng)).collect();
    v.push(int(0));
    v
}

pub fn worked_mask() -> Mask {
    Mask::new(
        1,
        0,
        vec![
            RatMatrix::from_rows(vec![vec![int(1), int(0)], vec![int(0), rat(1, 2)]]).unwrap(),
            RatMatrix::from_rows(vec![vec![int(1), rat(1, 2)], vec![int(0), rat(1, 2)]]).unwrap(),
        ],
    )
    .unwrap()
}

pub fn unit(d: usize, i: usize) -> Vec<Rational> {
    (0..=d).map(|k| if k == i { int(1) } else { int(0) }).collect()
}

pub fn add_vec(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

/// Gauss–Legendre rule on [0, 1] with `n` nodes, by Newton iteration on `P_n`.
pub fn gauss_rule(n: usize) -> Vec<(f64, f64)> {
    (0..n)
        .map(|i| {
            let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
            let mut dp = 1.0;
            for _ in 0..100 {
                let (mut p0, mut p1) = (1.0, x);
                for k in 2..=n {
                    let k = k as f64;
                    let p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
                    p0 = p1;
                    p1 = p2;
                }
                dp = n as f64 * (x * p1 - p0) / (x * x - 1.0);
                x -= p1 / dp;
            }
            (0.5 * (x + 1.0), 1.0 / ((1.0 - x * x) * dp * dp))
        })
        .collect()
}
