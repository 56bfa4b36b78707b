//! Randomized algebraic laws for the superspace ring and its operators.

use num::rational::BigRational;
use num::BigInt;
use proptest::prelude::*;

use harmonics::comb::subsets_of_range;
use harmonics::ops::{
    apply_diff_operator, d_i_vandermonde, d_op, elementary_window, interior_theta, partial_x,
};
use harmonics::text;
use harmonics::{Monomial, SuperPolynomial};

fn rat(p: i64, q: i64) -> BigRational {
    BigRational::new(BigInt::from(p), BigInt::from(q))
}

/// A sparse polynomial with up to `terms` monomials on `n` variables.
fn arb_poly(n: usize, terms: usize) -> impl Strategy<Value = SuperPolynomial> {
    let term = (
        prop::collection::vec(0u32..=3, n),
        0u64..(1u64 << n),
        -4i64..=4,
        1i64..=3,
    );
    prop::collection::vec(term, 0..=terms).prop_map(move |ts| {
        let mut p = SuperPolynomial::zero(n);
        for (xexp, thetas, num, den) in ts {
            p.add_term(Monomial { xexp, thetas }, rat(num, den));
        }
        p
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn partial_x_commutes(p in arb_poly(3, 5), i in 1usize..=3, j in 1usize..=3) {
        let a = partial_x(i, &partial_x(j, &p));
        let b = partial_x(j, &partial_x(i, &p));
        prop_assert_eq!(a, b);
    }

    #[test]
    fn interior_theta_anticommutes(p in arb_poly(3, 5), i in 1usize..=3, j in 1usize..=3) {
        let a = interior_theta(i, &interior_theta(j, &p));
        if i == j {
            prop_assert!(a.is_zero());
        } else {
            let b = interior_theta(j, &interior_theta(i, &p));
            prop_assert_eq!(a, -&b);
        }
    }

    #[test]
    fn partial_x_product_rule(p in arb_poly(3, 4), q in arb_poly(3, 4), i in 1usize..=3) {
        let lhs = partial_x(i, &(&p * &q));
        let rhs = &(&partial_x(i, &p) * &q) + &(&p * &partial_x(i, &q));
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn interior_theta_graded_derivation(
        p in arb_poly(3, 4),
        q in arb_poly(3, 4),
        i in 1usize..=3,
    ) {
        // check on each θ-homogeneous component of p
        for (a, b) in p.bidegrees() {
            let pc = p.component((a, b));
            let lhs = interior_theta(i, &(&pc * &q));
            let sign = if b % 2 == 0 { 1 } else { -1 };
            let rhs = &(&interior_theta(i, &pc) * &q)
                + &(&pc * &interior_theta(i, &q)).scale(&rat(sign, 1));
            prop_assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn mul_is_associative(
        p in arb_poly(4, 3),
        q in arb_poly(4, 3),
        r in arb_poly(4, 3),
    ) {
        prop_assert_eq!(&(&p * &q) * &r, &p * &(&q * &r));
    }

    #[test]
    fn mul_distributes(
        p in arb_poly(4, 3),
        q in arb_poly(4, 3),
        r in arb_poly(4, 3),
    ) {
        prop_assert_eq!(&p * &(&q + &r), &(&p * &q) + &(&p * &r));
    }

    #[test]
    fn d_op_squares_to_zero(p in arb_poly(3, 5), i in 1usize..=3) {
        prop_assert!(d_op(i, &d_op(i, &p)).is_zero());
    }

    #[test]
    fn text_round_trip(p in arb_poly(4, 5)) {
        let parsed = text::parse(4, &text::render(&p)).unwrap();
        prop_assert_eq!(parsed, p);
    }
}

#[test]
fn harmonicity_small_n() {
    // every symmetric operator of positive degree kills d_I Δ_n
    for n in 2..=5usize {
        for i_set in subsets_of_range(n) {
            let p = d_i_vandermonde(i_set.elems(), n);
            for r in 1..=n {
                let image = apply_diff_operator(&elementary_window(n, r, n), &p);
                assert!(image.is_zero(), "e_{}(full) fails on I={:?} n={}", r, i_set, n);
            }
        }
    }
}

#[test]
fn flips_are_alternating() {
    // d_I Δ_n changes sign under any simultaneous (x, θ) transposition
    for n in 2..=5usize {
        for i_set in subsets_of_range(n) {
            let p = d_i_vandermonde(i_set.elems(), n);
            for a in 1..=n {
                for b in (a + 1)..=n {
                    assert_eq!(p.swap_vars(a, b), -&p);
                }
            }
        }
    }
}
