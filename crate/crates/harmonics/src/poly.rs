use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num::rational::BigRational;
use num::{BigInt, One, Signed, Zero};

use crate::monomial::{merge_theta_sign, Monomial};

pub const MAX_VARS: usize = 20;

pub fn rat(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

/// A sparse element of `ℚ[x_1..x_n] ⊗ Λ[θ_1..θ_n]`: the x's commute, the θ's
/// anti-commute, and no zero coefficients are stored.
#[derive(Clone, PartialEq, Eq)]
pub struct SuperPolynomial {
    n: usize,
    terms: BTreeMap<Monomial, BigRational>,
}

impl SuperPolynomial {
    pub fn zero(n: usize) -> Self {
        assert!(n <= MAX_VARS, "variable count {} exceeds supported maximum {}", n, MAX_VARS);
        SuperPolynomial { n, terms: BTreeMap::new() }
    }

    pub fn one(n: usize) -> Self {
        Self::constant(n, BigRational::one())
    }

    pub fn constant(n: usize, c: BigRational) -> Self {
        let mut p = Self::zero(n);
        if !c.is_zero() {
            p.terms.insert(Monomial::one(n), c);
        }
        p
    }

    pub fn monomial(n: usize, m: Monomial, c: BigRational) -> Self {
        assert_eq!(m.nvars(), n);
        let mut p = Self::zero(n);
        if !c.is_zero() {
            p.terms.insert(m, c);
        }
        p
    }

    pub fn x(n: usize, i: usize) -> Self {
        Self::monomial(n, Monomial::x(n, i), BigRational::one())
    }

    pub fn theta(n: usize, i: usize) -> Self {
        Self::monomial(n, Monomial::theta(n, i), BigRational::one())
    }

    pub fn nvars(&self) -> usize {
        self.n
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &BigRational)> {
        self.terms.iter()
    }

    /// The maximal term in the canonical monomial order.
    pub fn leading(&self) -> Option<(&Monomial, &BigRational)> {
        self.terms.last_key_value()
    }

    pub fn coeff(&self, m: &Monomial) -> BigRational {
        self.terms.get(m).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn add_term(&mut self, m: Monomial, c: BigRational) {
        assert_eq!(m.nvars(), self.n, "mismatched variable count");
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(m) {
            Entry::Vacant(e) => {
                e.insert(c);
            }
            Entry::Occupied(mut e) => {
                let sum = e.get().clone() + c;
                if sum.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = sum;
                }
            }
        }
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        if c.is_zero() {
            return Self::zero(self.n);
        }
        SuperPolynomial {
            n: self.n,
            terms: self.terms.iter().map(|(m, v)| (m.clone(), v * c)).collect(),
        }
    }

    /// Bi-homogeneous component of the given (x-degree, θ-degree).
    pub fn component(&self, bidegree: (u32, u32)) -> Self {
        SuperPolynomial {
            n: self.n,
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.bidegree() == bidegree)
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        }
    }

    /// Bi-degrees appearing in this polynomial.
    pub fn bidegrees(&self) -> Vec<(u32, u32)> {
        let mut degs: Vec<(u32, u32)> = self.terms.keys().map(|m| m.bidegree()).collect();
        degs.sort_unstable();
        degs.dedup();
        degs
    }

    /// Is every term of the same (x-degree, θ-degree)?
    pub fn is_bihomogeneous(&self) -> bool {
        self.bidegrees().len() <= 1
    }

    /// Simultaneous substitution x_a ↔ x_b, θ_a ↔ θ_b (the S_n action by a
    /// transposition, 1-based indices).
    pub fn swap_vars(&self, a: usize, b: usize) -> Self {
        assert!(a >= 1 && a <= self.n && b >= 1 && b <= self.n);
        if a == b {
            return self.clone();
        }
        let mut out = Self::zero(self.n);
        for (m, c) in &self.terms {
            let mut xexp = m.xexp.clone();
            xexp.swap(a - 1, b - 1);
            let (ba, bb) = (1u64 << (a - 1), 1u64 << (b - 1));
            let mut thetas = m.thetas & !(ba | bb);
            if m.thetas & ba != 0 {
                thetas |= bb;
            }
            if m.thetas & bb != 0 {
                thetas |= ba;
            }
            // swapping two θ indices permutes the sorted word; sign is the
            // parity of the number of set bits strictly between a and b when
            // exactly one endpoint moves past them, plus 1 if both present
            let sign = theta_relabel_sign(m.thetas, a, b);
            out.add_term(Monomial { xexp, thetas }, c * rat(sign as i64));
        }
        out
    }
}

/// Sign incurred by relabeling θ_a ↔ θ_b in a sorted θ-monomial and re-sorting.
fn theta_relabel_sign(mask: u64, a: usize, b: usize) -> i32 {
    let (lo, hi) = if a < b { (a, b) } else { (b, a) };
    let (blo, bhi) = (1u64 << (lo - 1), 1u64 << (hi - 1));
    let has_lo = mask & blo != 0;
    let has_hi = mask & bhi != 0;
    if !has_lo && !has_hi {
        return 1;
    }
    if has_lo && has_hi {
        // exchanging the two entries of the sorted word is one transposition
        return -1;
    }
    // exactly one present: moving it from slot lo to slot hi (or back) hops
    // over the set bits strictly between them
    let between = (mask >> lo) & ((1u64 << (hi - 1 - lo)) - 1);
    if between.count_ones() % 2 == 0 {
        1
    } else {
        -1
    }
}

impl Add for &SuperPolynomial {
    type Output = SuperPolynomial;
    fn add(self, rhs: &SuperPolynomial) -> SuperPolynomial {
        assert_eq!(self.n, rhs.n, "mismatched variable count");
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }
}

impl Sub for &SuperPolynomial {
    type Output = SuperPolynomial;
    fn sub(self, rhs: &SuperPolynomial) -> SuperPolynomial {
        assert_eq!(self.n, rhs.n, "mismatched variable count");
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), -c.clone());
        }
        out
    }
}

impl Neg for &SuperPolynomial {
    type Output = SuperPolynomial;
    fn neg(self) -> SuperPolynomial {
        SuperPolynomial {
            n: self.n,
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c.clone())).collect(),
        }
    }
}

impl Mul for &SuperPolynomial {
    type Output = SuperPolynomial;
    fn mul(self, rhs: &SuperPolynomial) -> SuperPolynomial {
        assert_eq!(self.n, rhs.n, "mismatched variable count");
        let mut out = SuperPolynomial::zero(self.n);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                let (sign, thetas) = merge_theta_sign(ma.thetas, mb.thetas);
                if sign == 0 {
                    continue;
                }
                let xexp = ma.xexp.iter().zip(&mb.xexp).map(|(a, b)| a + b).collect();
                out.add_term(Monomial { xexp, thetas }, ca * cb * rat(sign as i64));
            }
        }
        out
    }
}

impl fmt::Debug for SuperPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", crate::text::render(self))
    }
}

impl fmt::Display for SuperPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", crate::text::render(self))
    }
}

pub fn big_rat(num: BigInt) -> BigRational {
    BigRational::from_integer(num)
}

pub fn factorial(n: u64) -> BigInt {
    let mut acc = BigInt::one();
    for i in 2..=n {
        acc *= BigInt::from(i);
    }
    acc
}

pub fn binomial(n: u64, k: u64) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}

/// The binomial coefficient C(v+u, u) read as the degree-u polynomial
/// `(v+1)(v+2)...(v+u)/u!` in v, so negative v is well-defined.
pub fn binomial_poly(v: i64, u: u64) -> BigRational {
    let mut num = BigInt::one();
    for i in 1..=u as i64 {
        num *= BigInt::from(v + i);
    }
    BigRational::new(num, factorial(u))
}

pub fn is_integer_one(c: &BigRational) -> bool {
    c.is_one()
}

pub fn rational_abs(c: &BigRational) -> BigRational {
    c.abs()
}
