use std::cmp::Ordering;
use std::fmt;

/// A monomial `x_1^{a_1} ... x_n^{a_n} θ_{c_1} ... θ_{c_k}` with `c_1 < ... < c_k`.
///
/// The θ-part is stored as a bitmask: bit `i` set means θ_{i+1} is present.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Monomial {
    pub xexp: Vec<u32>,
    pub thetas: u64,
}

impl Monomial {
    pub fn one(n: usize) -> Self {
        Monomial { xexp: vec![0; n], thetas: 0 }
    }

    /// Single variable x_i (1-based).
    pub fn x(n: usize, i: usize) -> Self {
        assert!(1 <= i && i <= n, "x index {} out of range [1,{}]", i, n);
        let mut m = Monomial::one(n);
        m.xexp[i - 1] = 1;
        m
    }

    /// Single θ_i (1-based).
    pub fn theta(n: usize, i: usize) -> Self {
        assert!(1 <= i && i <= n, "theta index {} out of range [1,{}]", i, n);
        Monomial { xexp: vec![0; n], thetas: 1 << (i - 1) }
    }

    pub fn nvars(&self) -> usize {
        self.xexp.len()
    }

    pub fn xdeg(&self) -> u32 {
        self.xexp.iter().sum()
    }

    pub fn theta_deg(&self) -> u32 {
        self.thetas.count_ones()
    }

    pub fn bidegree(&self) -> (u32, u32) {
        (self.xdeg(), self.theta_deg())
    }

    /// θ-indices in increasing order, 1-based.
    pub fn theta_indices(&self) -> Vec<usize> {
        (0..self.nvars()).filter(|i| self.thetas >> i & 1 == 1).map(|i| i + 1).collect()
    }

    pub fn has_theta(&self, i: usize) -> bool {
        self.thetas >> (i - 1) & 1 == 1
    }
}

/// Canonical order: graded lex on the x-exponents, then the θ-bitmask.
impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.xdeg()
            .cmp(&other.xdeg())
            .then_with(|| self.xexp.cmp(&other.xexp))
            .then_with(|| self.thetas.cmp(&other.thetas))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, &e) in self.xexp.iter().enumerate() {
            if e > 0 {
                if !first {
                    write!(f, " ")?;
                }
                first = false;
                if e == 1 {
                    write!(f, "x{}", i + 1)?;
                } else {
                    write!(f, "x{}^{}", i + 1, e)?;
                }
            }
        }
        for c in self.theta_indices() {
            if !first {
                write!(f, " ")?;
            }
            first = false;
            write!(f, "t{}", c)?;
        }
        if first {
            write!(f, "1")?;
        }
        Ok(())
    }
}

/// Sorts a θ-word into increasing order, returning the sign of the sorting
/// permutation, or 0 if any index repeats (θ_i² = 0).
pub fn normalize_theta(word: &[usize]) -> (i32, u64) {
    let mut mask: u64 = 0;
    let mut sign = 1i32;
    for &i in word {
        assert!(i >= 1 && i <= 64, "theta index {} out of range", i);
        let bit = 1u64 << (i - 1);
        if mask & bit != 0 {
            return (0, 0);
        }
        // inserting θ_i past the already-placed θ_j with j > i flips the sign
        // once per such j
        let higher = (mask >> (i - 1)) >> 1;
        if higher.count_ones() % 2 == 1 {
            sign = -sign;
        }
        mask |= bit;
    }
    (sign, mask)
}

/// Sign of merging two disjoint increasing θ-sets `a` then `b` into one
/// increasing set (Koszul sign), or 0 if they intersect.
pub fn merge_theta_sign(a: u64, b: u64) -> (i32, u64) {
    if a & b != 0 {
        return (0, 0);
    }
    // count pairs (i in a, j in b) with j < i
    let mut sign = 1i32;
    let mut bb = b;
    while bb != 0 {
        let j = bb.trailing_zeros();
        let above = a >> j >> 1;
        if above.count_ones() % 2 == 1 {
            sign = -sign;
        }
        bb &= bb - 1;
    }
    (sign, a | b)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn normalize_theta_examples() {
        assert_eq!(normalize_theta(&[2, 1]), (-1, 0b11));
        assert_eq!(normalize_theta(&[1, 1]).0, 0);
        // 312 has 2 inversions
        assert_eq!(normalize_theta(&[3, 1, 2]), (1, 0b111));
        assert_eq!(normalize_theta(&[]), (1, 0));
    }

    #[test]
    fn merge_sign_matches_wordwise() {
        // {2} then {1}: one transposition
        assert_eq!(merge_theta_sign(0b10, 0b01), (-1, 0b11));
        assert_eq!(merge_theta_sign(0b01, 0b10), (1, 0b11));
        assert_eq!(merge_theta_sign(0b01, 0b01).0, 0);
        // {1,4} then {2,3}: θ1θ4θ2θ3 = +θ1θ2θ3θ4? inversions: (4,2),(4,3) -> +
        assert_eq!(merge_theta_sign(0b1001, 0b0110), (1, 0b1111));
    }

    #[test]
    fn canonical_order_is_graded() {
        let n = 3;
        let a = Monomial { xexp: vec![2, 0, 0], thetas: 0 };
        let b = Monomial { xexp: vec![0, 0, 1], thetas: 0b111 };
        assert!(b < a);
        let c = Monomial { xexp: vec![0, 0, 1], thetas: 0b1 };
        assert!(c < b);
        let _ = n;
    }
}
