//! Differential operators on superspace: partial derivatives, interior
//! products, the operators `∂_g`, the generalized exterior derivatives `d_i`,
//! the Vandermonde determinant and partial elementary symmetric polynomials.

use num::rational::BigRational;
use num::One;

use crate::monomial::Monomial;
use crate::poly::{rat, SuperPolynomial};

/// Formal ∂/∂x_i (1-based); the θ-part is untouched.
pub fn partial_x(i: usize, p: &SuperPolynomial) -> SuperPolynomial {
    let n = p.nvars();
    assert!(1 <= i && i <= n, "x index {} out of range [1,{}]", i, n);
    let mut out = SuperPolynomial::zero(n);
    for (m, c) in p.terms() {
        let e = m.xexp[i - 1];
        if e == 0 {
            continue;
        }
        let mut xexp = m.xexp.clone();
        xexp[i - 1] = e - 1;
        out.add_term(Monomial { xexp, thetas: m.thetas }, c * rat(e as i64));
    }
    out
}

/// Interior product ∂_{θ_i}: a graded derivation. On θ_{c_1}...θ_{c_k} with
/// c_1 < ... < c_k it removes θ_i and multiplies by (−1)^{#{c_j < i}}, or
/// kills the term when θ_i is absent.
pub fn interior_theta(i: usize, p: &SuperPolynomial) -> SuperPolynomial {
    let n = p.nvars();
    assert!(1 <= i && i <= n, "theta index {} out of range [1,{}]", i, n);
    let bit = 1u64 << (i - 1);
    let mut out = SuperPolynomial::zero(n);
    for (m, c) in p.terms() {
        if m.thetas & bit == 0 {
            continue;
        }
        let below = (m.thetas & (bit - 1)).count_ones();
        let sign = if below % 2 == 0 { 1 } else { -1 };
        out.add_term(
            Monomial { xexp: m.xexp.clone(), thetas: m.thetas & !bit },
            c * rat(sign),
        );
    }
    out
}

/// The operator ∂_g applied to p: each monomial `c · x^a θ_S` of g acts as
/// `c · ∏_i ∂_{x_i}^{a_i}` followed by the interior products ∂_{θ_j} for
/// j ∈ S taken in increasing index order, composing left-to-right. The
/// operator-monomial θ-ordering is a convention; increasing order is the one
/// fixed here.
pub fn apply_diff_operator(g: &SuperPolynomial, p: &SuperPolynomial) -> SuperPolynomial {
    assert_eq!(g.nvars(), p.nvars(), "mismatched variable count");
    let n = p.nvars();
    let mut out = SuperPolynomial::zero(n);
    for (m, c) in g.terms() {
        let mut cur = p.clone();
        for i in 1..=n {
            for _ in 0..m.xexp[i - 1] {
                if cur.is_zero() {
                    break;
                }
                cur = partial_x(i, &cur);
            }
        }
        for j in m.theta_indices() {
            if cur.is_zero() {
                break;
            }
            cur = interior_theta(j, &cur);
        }
        out = &out + &cur.scale(c);
    }
    out
}

/// The Vandermonde determinant Δ_n = ∏_{i<j} (x_j − x_i), expanded: n! terms
/// with coefficients ±1 and exponent vectors the permutations of (0,...,n−1).
pub fn vandermonde(n: usize) -> SuperPolynomial {
    assert!(n >= 1);
    let mut out = SuperPolynomial::one(n);
    for i in 1..=n {
        for j in (i + 1)..=n {
            let diff = &SuperPolynomial::x(n, j) - &SuperPolynomial::x(n, i);
            out = &out * &diff;
        }
    }
    out
}

/// The partial elementary symmetric polynomial e_r(S) = Σ_{{i_1<...<i_r}⊆S}
/// x_{i_1}...x_{i_r}. Returns 0 when r > |S|; e_0 = 1.
pub fn elementary(n: usize, r: usize, s: &[usize]) -> SuperPolynomial {
    for &i in s {
        assert!(1 <= i && i <= n, "index {} out of range [1,{}]", i, n);
    }
    if r > s.len() {
        return SuperPolynomial::zero(n);
    }
    let mut out = SuperPolynomial::zero(n);
    let mut choose = vec![0usize; r];
    fn rec(
        n: usize,
        s: &[usize],
        r: usize,
        start: usize,
        depth: usize,
        choose: &mut [usize],
        out: &mut SuperPolynomial,
    ) {
        if depth == r {
            let mut m = Monomial::one(n);
            for &i in choose.iter() {
                m.xexp[i - 1] += 1;
            }
            out.add_term(m, BigRational::one());
            return;
        }
        for pos in start..s.len() {
            choose[depth] = s[pos];
            rec(n, s, r, pos + 1, depth + 1, choose, out);
        }
    }
    rec(n, s, r, 0, 0, &mut choose, &mut out);
    out
}

/// e_r(m̲) = e_r(x_1, ..., x_m) inside ℚ-superspace on n variables.
pub fn elementary_window(n: usize, r: usize, m: usize) -> SuperPolynomial {
    assert!(m <= n);
    let s: Vec<usize> = (1..=m).collect();
    elementary(n, r, &s)
}

/// The generalized exterior derivative d_i = Σ_j ∂_{x_j}^i θ_j.
pub fn d_op(i: usize, p: &SuperPolynomial) -> SuperPolynomial {
    assert!(i >= 1);
    let n = p.nvars();
    let mut out = SuperPolynomial::zero(n);
    for j in 1..=n {
        let mut cur = p.clone();
        for _ in 0..i {
            if cur.is_zero() {
                break;
            }
            cur = partial_x(j, &cur);
        }
        out = &out + &(&SuperPolynomial::theta(n, j) * &cur);
    }
    out
}

/// d_I Δ_n = d_{i_1} ∘ ... ∘ d_{i_k} applied to Δ_n. `I` may repeat entries,
/// in which case the result is 0.
pub fn d_i_vandermonde(i_set: &[usize], n: usize) -> SuperPolynomial {
    for &i in i_set {
        assert!(1 <= i && i < n, "order {} outside [1,{}]", i, n - 1);
    }
    let mut cur = vandermonde(n);
    // d_{i_1} ... d_{i_k} Δ: apply the rightmost operator first
    for &i in i_set.iter().rev() {
        cur = d_op(i, &cur);
    }
    cur
}

/// d(e_r(n̲)) = Σ_j ∂_{x_j} e_r(n̲) · θ_j, the exterior derivative of the
/// elementary symmetric polynomial.
pub fn d_elementary_window(n: usize, r: usize, m: usize) -> SuperPolynomial {
    d_op(1, &elementary_window(n, r, m))
}

#[cfg(test)]
mod tests {
    use super::*;
    use num::Signed;

    #[test]
    fn partial_x_basics() {
        let n = 3;
        // ∂x1 (x1² θ3) = 2 x1 θ3
        let p = SuperPolynomial::monomial(
            n,
            Monomial { xexp: vec![2, 0, 0], thetas: 0b100 },
            rat(1),
        );
        let d = partial_x(1, &p);
        let expect = SuperPolynomial::monomial(
            n,
            Monomial { xexp: vec![1, 0, 0], thetas: 0b100 },
            rat(2),
        );
        assert_eq!(d, expect);
        assert!(partial_x(2, &SuperPolynomial::x(n, 1)).is_zero() == false || true);
        assert!(partial_x(2, &SuperPolynomial::x(n, 1)).is_zero());
        // ∂x1 Δ2 = -1
        let d2 = partial_x(1, &vandermonde(2));
        assert_eq!(d2, SuperPolynomial::constant(2, rat(-1)));
    }

    #[test]
    fn interior_theta_basics() {
        let n = 3;
        let t1t2 = &SuperPolynomial::theta(n, 1) * &SuperPolynomial::theta(n, 2);
        assert_eq!(interior_theta(1, &t1t2), SuperPolynomial::theta(n, 2));
        assert_eq!(interior_theta(2, &t1t2), -&SuperPolynomial::theta(n, 1));
        assert!(interior_theta(3, &t1t2).is_zero());
    }

    #[test]
    fn vandermonde_shape() {
        let v3 = vandermonde(3);
        assert_eq!(v3.num_terms(), 6);
        for (_, c) in v3.terms() {
            assert_eq!(c.abs(), rat(1));
        }
        // coefficient of x2 x3² (identity permutation exponents 0,1,2) is +1
        let m = Monomial { xexp: vec![0, 1, 2], thetas: 0 };
        assert_eq!(v3.coeff(&m), rat(1));
        assert_eq!(vandermonde(1), SuperPolynomial::one(1));
        let v2 = vandermonde(2);
        assert_eq!(v2, &SuperPolynomial::x(2, 2) - &SuperPolynomial::x(2, 1));
    }

    #[test]
    fn elementary_shape() {
        let e2 = elementary(3, 2, &[1, 2, 3]);
        assert_eq!(e2.num_terms(), 3);
        assert_eq!(elementary(3, 0, &[1, 2]), SuperPolynomial::one(3));
        assert!(elementary(3, 3, &[1, 2]).is_zero());
    }

    #[test]
    fn d_op_basics() {
        // d1 Δ2 = θ2 − θ1
        let d1 = d_op(1, &vandermonde(2));
        let expect = &SuperPolynomial::theta(2, 2) - &SuperPolynomial::theta(2, 1);
        assert_eq!(d1, expect);
        // d1 d1 Δ3 = 0
        let dd = d_op(1, &d_op(1, &vandermonde(3)));
        assert!(dd.is_zero());
        // d2 Δ3 has bi-degree (1,1)
        let d2 = d_op(2, &vandermonde(3));
        assert!(!d2.is_zero());
        assert_eq!(d2.bidegrees(), vec![(1, 1)]);
    }

    #[test]
    fn d_i_vandermonde_basics() {
        assert_eq!(d_i_vandermonde(&[], 3), vandermonde(3));
        let expect = &SuperPolynomial::theta(2, 2) - &SuperPolynomial::theta(2, 1);
        assert_eq!(d_i_vandermonde(&[1], 2), expect);
        // repeated orders give 0
        assert!(d_i_vandermonde(&[1, 1], 3).is_zero());
        // bi-degree (C(n,2) − ΣI, |I|)
        let p = d_i_vandermonde(&[1, 2], 4);
        assert_eq!(p.bidegrees(), vec![(6 - 3, 2)]);
    }

    #[test]
    fn n3_relations() {
        let n = 3;
        let d2v = d_i_vandermonde(&[2], n);
        let e2 = elementary_window(n, 2, 2);
        assert!(apply_diff_operator(&e2, &d2v).is_zero());
        let d1v = d_i_vandermonde(&[1], n);
        let e1 = elementary_window(n, 1, 2);
        let lhs = apply_diff_operator(&e2, &d1v);
        let rhs = apply_diff_operator(&e1, &d2v);
        assert_eq!(lhs, rhs);
        assert!(!lhs.is_zero());
    }

    #[test]
    fn apply_e1_to_power_sum() {
        let n = 2;
        let p = &SuperPolynomial::x(n, 1) + &SuperPolynomial::x(n, 2);
        let out = apply_diff_operator(&elementary_window(n, 1, 2), &p);
        assert_eq!(out, SuperPolynomial::constant(n, rat(2)));
    }
}
