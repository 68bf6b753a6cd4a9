mod common;

use hermite_core::algebra::rational::{format_rational, int, parse_rational, rat, to_f64};
use hermite_core::combinatorics::y_vector;
use hermite_core::operators::{
    augmented_taylor, delta_block, gauss_matrix, gauss_matrix_inverse, gauss_step, taylor, DiffOp,
    TaylorVariant,
};
use hermite_core::subdivision::{diffop_apply_seq, mask_apply, Mask, VecSeq};
use hermite_core::{LaurentMatrix, LaurentPoly, Poly, RatMatrix, Rational};
use proptest::prelude::*;

fn rational() -> impl Strategy<Value = Rational> {
    (-20i64..=20, 1i64..=9).prop_map(|(n, d)| rat(n, d))
}

fn laurent() -> impl Strategy<Value = LaurentPoly> {
    (-3i64..=3, prop::collection::vec(rational(), 0..5)).prop_map(|(low, c)| LaurentPoly::new(low, c))
}

fn matrix(n: usize) -> impl Strategy<Value = RatMatrix> {
    prop::collection::vec(prop::collection::vec(rational(), n), n)
        .prop_map(|rows| RatMatrix::from_rows(rows).unwrap())
}

fn mask_and_seq() -> impl Strategy<Value = (Mask, VecSeq)> {
    (1usize..=3).prop_flat_map(|d| {
        (
            -3i64..=3,
            prop::collection::vec(matrix(d + 1), 1..=5),
            -4i64..=4,
            prop::collection::vec(prop::collection::vec(rational(), d + 1), 1..=6),
        )
            .prop_map(move |(lo, ms, clo, vs)| {
                (Mask::new(d, lo, ms).unwrap(), VecSeq::new(d, clo, vs).unwrap())
            })
    })
}

fn op_and_seq() -> impl Strategy<Value = (DiffOp, DiffOp, VecSeq)> {
    (1usize..=3).prop_flat_map(|d| {
        let n = d + 1;
        (
            prop::collection::vec(laurent(), n * n),
            prop::collection::vec(laurent(), n * n),
            -4i64..=4,
            prop::collection::vec(prop::collection::vec(rational(), n), 1..=6),
        )
            .prop_map(move |(e1, e2, clo, vs)| {
                let op = |e: Vec<LaurentPoly>| {
                    let rows = e.chunks(n).map(|r| r.to_vec()).collect();
                    DiffOp::from_symbol(LaurentMatrix::from_rows(rows).unwrap()).unwrap()
                };
                (op(e1), op(e2), VecSeq::new(d, clo, vs).unwrap())
            })
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn subdivision_matches_symbol_product((mask, c) in mask_and_seq()) {
        let direct = mask_apply(&mask, &c).unwrap();
        let via_symbol = mask.symbol().mul(&c.symbol().substitute_square()).unwrap();
        prop_assert_eq!(direct.symbol(), via_symbol.clone());
        prop_assert_eq!(VecSeq::from_symbol(&via_symbol).unwrap(), direct);
    }

    #[test]
    fn difference_operator_matches_symbol_product((op, _other, c) in op_and_seq()) {
        let direct = diffop_apply_seq(&op, &c).unwrap();
        let via_symbol = op.symbol().mul(&c.symbol()).unwrap();
        prop_assert_eq!(direct.symbol(), via_symbol);
    }

    #[test]
    fn composition_is_sequential_application((a, b, c) in op_and_seq()) {
        let composed = diffop_apply_seq(&a.compose(&b).unwrap(), &c).unwrap();
        let sequential = diffop_apply_seq(&a, &diffop_apply_seq(&b, &c).unwrap()).unwrap();
        prop_assert_eq!(composed, sequential);
    }

    #[test]
    fn laurent_division_inverts_multiplication(a in laurent(), b in laurent()) {
        let prod = &a * &b;
        if !b.is_zero() {
            prop_assert_eq!(prod.div_exact(&b), Some(a.clone()));
        }
        prop_assert_eq!(&(&a + &b) - &b, a);
    }

    #[test]
    fn rational_text_round_trip(r in rational(), s in rational()) {
        let q = &r / (&s + rat(1, 1000));
        prop_assert_eq!(parse_rational(&format_rational(&q)).unwrap(), q);
    }

    #[test]
    fn gauss_matrices_are_inverse(y in prop::collection::vec(rational(), 1..=4)) {
        let d = y.len();
        let mut y = y;
        y.push(int(0));
        let prod = gauss_matrix(&y, d).unwrap().mul(&gauss_matrix_inverse(&y, d).unwrap()).unwrap();
        prop_assert_eq!(prod, RatMatrix::identity(d + 1));
    }
}

#[test]
fn augmented_at_order_d_is_complete() {
    for d in 1..=6 {
        assert_eq!(augmented_taylor(d, d).unwrap(), taylor(d, TaylorVariant::Complete));
    }
}

#[test]
fn augmented_is_product_of_gauss_steps() {
    for d in 1..=4 {
        for j in d..=d + 4 {
            let mut op = taylor(d, TaylorVariant::Prime);
            for k in 0..=j - d {
                op = gauss_step(&y_vector(k, d), d).unwrap().compose(&op).unwrap();
            }
            assert_eq!(op, augmented_taylor(d, j).unwrap(), "d = {d}, j = {j}");
        }
    }
}

#[test]
fn swapped_second_order_operator() {
    let swap = DiffOp::constant(&RatMatrix::from_ints(&[&[0, 1], &[1, 0]])).unwrap();
    let g = swap.compose(&augmented_taylor(1, 2).unwrap()).unwrap();
    let expected = DiffOp::from_delta_rows(&[
        vec![Poly::zero(), Poly::from_ints(&[0, 0, 1])],
        vec![Poly::from_ints(&[0, 1]), Poly::new(vec![int(-1), rat(-1, 2)])],
    ])
    .unwrap();
    assert_eq!(g, expected);
    assert_eq!(g.format_delta().unwrap(), "0, Δ²\nΔ, −1−(1/2)Δ");

    // η(h) = (e^h - 1 - h) / (h (e^h - 1)) tends to the entry 1/2 as h → 0
    let eta = |h: f64| (h.exp_m1() - h) / (h * h.exp_m1());
    let target = to_f64(&rat(1, 2));
    let errors: Vec<f64> = (4..12).map(|j| (eta(2f64.powi(-j)) - target).abs()).collect();
    assert!(errors.windows(2).all(|w| w[1] < w[0]));
    assert!(errors[errors.len() - 1] < 1e-3);
}

#[test]
fn gregory_first_row_for_d1() {
    for j in 1..=6 {
        let rows = augmented_taylor(1, j).unwrap().delta_rows().unwrap();
        let expected = Poly::new((0..j).map(|k| -hermite_core::combinatorics::gregory_g(k, 1)).collect());
        assert_eq!(rows[0][1], expected);
        assert_eq!(rows[1][1], Poly::monomial(int(1), j));
    }
}

#[test]
fn delta_block_squares() {
    for d in 1..=3 {
        let dd = delta_block(d).compose(&delta_block(d)).unwrap();
        let mut entries = vec![LaurentPoly::one(); d + 1];
        entries[d] = LaurentPoly::delta().pow(2);
        assert_eq!(dd.symbol(), &LaurentMatrix::diag(entries));
    }
}
