//! Marked staircase diagrams: the combinatorial model for the terms of
//! `∂_{e_r(n−m̲)} d_J Δ_n`, the weight-preserving/negating relations between
//! them, and the symmetric-group action on active columns.

use itertools::Itertools;
use num::rational::BigRational;
use num::{One, Zero};

use crate::comb::SubsetOfRange;
use crate::monomial::Monomial;
use crate::poly::{rat, SuperPolynomial};

/// An n-staircase (column heights a permutation of 0..n−1) decorated with
/// top-justified ×'s, at most one ∘ directly below the ×'s of a column, and
/// the last `grey` columns marked grey (grey columns carry no ∘).
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct MarkedStaircase {
    pub n: usize,
    pub heights: Vec<usize>,
    pub crosses: Vec<usize>,
    pub circ: Vec<bool>,
    pub grey: usize,
}

impl MarkedStaircase {
    pub fn new(
        heights: Vec<usize>,
        crosses: Vec<usize>,
        circ: Vec<bool>,
        grey: usize,
    ) -> Self {
        let n = heights.len();
        let ms = MarkedStaircase { n, heights, crosses, circ, grey };
        ms.validate();
        ms
    }

    fn validate(&self) {
        let n = self.n;
        assert_eq!(self.crosses.len(), n);
        assert_eq!(self.circ.len(), n);
        assert!(self.grey <= n);
        let mut seen = self.heights.clone();
        seen.sort_unstable();
        assert_eq!(seen, (0..n).collect::<Vec<_>>(), "heights must be a permutation of 0..n-1");
        for col in 0..n {
            let marks = self.crosses[col] + self.circ[col] as usize;
            assert!(
                marks <= self.heights[col],
                "column {} overfull: {} marks in height {}",
                col + 1,
                marks,
                self.heights[col]
            );
            if self.is_grey(col) {
                assert!(!self.circ[col], "grey column {} cannot hold a circle", col + 1);
            }
        }
    }

    /// 0-based column index → greyness (the last `grey` columns).
    pub fn is_grey(&self, col: usize) -> bool {
        col >= self.n - self.grey
    }

    /// Columns (0-based) that carry at least one ×, in increasing order.
    pub fn cross_columns(&self) -> Vec<usize> {
        (0..self.n).filter(|&c| self.crosses[c] > 0).collect()
    }

    /// The multiset of ×-counts over columns that have them, weakly increasing.
    pub fn cross_multiset(&self) -> Vec<usize> {
        let mut j: Vec<usize> = self.cross_columns().iter().map(|&c| self.crosses[c]).collect();
        j.sort_unstable();
        j
    }

    pub fn circle_count(&self) -> usize {
        self.circ.iter().filter(|&&b| b).count()
    }

    /// The weight: coefficient = sign × order (0 when two ×-counts agree) and
    /// the monomial x^g θ_{c_1}...θ_{c_k}.
    pub fn weight(&self) -> (BigRational, Monomial) {
        let n = self.n;
        let mut mono = Monomial::one(n);
        for col in 0..n {
            let g = self.heights[col] - self.crosses[col] - self.circ[col] as usize;
            mono.xexp[col] = g as u32;
        }
        let cols = self.cross_columns();
        for &c in &cols {
            mono.thetas |= 1 << c;
        }
        // sign of the underlying staircase: inversion parity of the heights
        let mut inv = 0usize;
        for a in 0..n {
            for b in (a + 1)..n {
                if self.heights[a] > self.heights[b] {
                    inv += 1;
                }
            }
        }
        // sgn Δ_k(j_1, ..., j_k) over the ×-counts in column order
        let js: Vec<usize> = cols.iter().map(|&c| self.crosses[c]).collect();
        let mut delta_sign = 1i64;
        'outer: for a in 0..js.len() {
            for b in (a + 1)..js.len() {
                if js[a] == js[b] {
                    delta_sign = 0;
                    break 'outer;
                }
                if js[a] > js[b] {
                    delta_sign = -delta_sign;
                }
            }
        }
        if delta_sign == 0 {
            return (BigRational::zero(), mono);
        }
        let mut order = BigRational::one();
        for col in 0..n {
            let h = self.heights[col];
            for t in 0..self.crosses[col] {
                order *= rat((h - t) as i64);
            }
            if self.circ[col] {
                order *= rat((h - self.crosses[col]) as i64);
            }
        }
        let sign = if inv % 2 == 0 { delta_sign } else { -delta_sign };
        (order * rat(sign), mono)
    }

    /// ASCII grid, rows top to bottom: `X` cross, `o` circle, `.` empty box,
    /// `#` empty grey box, space where no box exists.
    pub fn render(&self) -> String {
        let n = self.n;
        let top = n - 1;
        let mut out = String::new();
        for level in (1..=top.max(1)).rev() {
            for col in 0..n {
                let h = self.heights[col];
                let ch = if level > h {
                    ' '
                } else if level > h - self.crosses[col] {
                    'X'
                } else if self.circ[col] && level == h - self.crosses[col] {
                    'o'
                } else if self.is_grey(col) {
                    '#'
                } else {
                    '.'
                };
                out.push(ch);
            }
            while out.ends_with(' ') {
                out.pop();
            }
            out.push('\n');
        }
        out
    }
}

impl std::fmt::Debug for MarkedStaircase {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "MarkedStaircase(h={:?}, x={:?}, o={:?}, grey={})",
            self.heights, self.crosses, self.circ, self.grey
        )
    }
}

/// Exhaustive, duplicate-free enumeration of marked n-staircases with `r`
/// circles, ×-stacks of the sizes in the multiset `j_multiset` (weakly
/// increasing), and the last `grey` columns grey.
pub fn enumerate(n: usize, r: usize, j_multiset: &[usize], grey: usize) -> Vec<MarkedStaircase> {
    assert!(grey <= n);
    assert!(j_multiset.windows(2).all(|w| w[0] <= w[1]), "multiset must be sorted");
    assert!(j_multiset.iter().all(|&j| j >= 1));
    let mut out = Vec::new();
    // group equal stack sizes so equal values get increasing column sets
    let groups: Vec<(usize, usize)> = {
        let mut g: Vec<(usize, usize)> = Vec::new();
        for &j in j_multiset {
            match g.last_mut() {
                Some((v, c)) if *v == j => *c += 1,
                _ => g.push((j, 1)),
            }
        }
        g
    };
    for heights in (0..n).permutations(n) {
        let mut crosses = vec![0usize; n];
        assign_groups(n, &heights, &groups, 0, &mut crosses, &mut |crosses| {
            // choose r circle columns among non-grey columns with room
            let candidates: Vec<usize> = (0..n - grey)
                .filter(|&c| crosses[c] + 1 <= heights[c])
                .collect();
            for combo in candidates.iter().combinations(r) {
                let mut circ = vec![false; n];
                for &&c in &combo {
                    circ[c] = true;
                }
                out.push(MarkedStaircase {
                    n,
                    heights: heights.clone(),
                    crosses: crosses.to_vec(),
                    circ,
                    grey,
                });
            }
        });
    }
    out
}

fn assign_groups(
    n: usize,
    heights: &[usize],
    groups: &[(usize, usize)],
    gi: usize,
    crosses: &mut Vec<usize>,
    emit: &mut dyn FnMut(&Vec<usize>),
) {
    if gi == groups.len() {
        emit(crosses);
        return;
    }
    let (val, mult) = groups[gi];
    let free: Vec<usize> =
        (0..n).filter(|&c| crosses[c] == 0 && heights[c] >= val).collect();
    for combo in free.iter().combinations(mult) {
        for &&c in &combo {
            crosses[c] = val;
        }
        assign_groups(n, heights, groups, gi + 1, crosses, emit);
        for &&c in &combo {
            crosses[c] = 0;
        }
    }
}

/// The weight generating function of `enumerate(n, r, J, grey)`. By the
/// staircase model this equals `∂_{e_r(n−grey̲)} d_J Δ_n`, which the tests
/// check through the independent operator expansion.
pub fn staircase_gf(n: usize, r: usize, j_multiset: &[usize], grey: usize) -> SuperPolynomial {
    let mut out = SuperPolynomial::zero(n);
    for ms in enumerate(n, r, j_multiset, grey) {
        let (c, m) = ms.weight();
        out.add_term(m, c);
    }
    out
}

/// Relation (A) on a non-grey column (0-based): with ≥2 ×'s and no ∘ the
/// bottommost × becomes an ∘; with an ∘ below ≥1 × the ∘ becomes an ×.
/// An involution; preserves nonzero weight (factor +1).
pub fn relation_a(ms: &MarkedStaircase, col: usize) -> Option<(MarkedStaircase, i32)> {
    if col >= ms.n || ms.is_grey(col) {
        return None;
    }
    let mut out = ms.clone();
    if !ms.circ[col] && ms.crosses[col] >= 2 {
        out.crosses[col] -= 1;
        out.circ[col] = true;
    } else if ms.circ[col] && ms.crosses[col] >= 1 {
        out.crosses[col] += 1;
        out.circ[col] = false;
    } else {
        return None;
    }
    Some((out, 1))
}

/// Relation (B): the non-grey column of height `v` has an ∘ and the non-grey
/// column of height `v−1` does not. Their heights swap, ×-counts stay with
/// their columns, and the ∘ moves to the column now of height `v`. Negates
/// the weight (factor −1).
pub fn relation_b(ms: &MarkedStaircase, v: usize) -> Option<(MarkedStaircase, i32)> {
    if v == 0 || v > ms.n - 1 {
        return None;
    }
    let p = ms.heights.iter().position(|&h| h == v)?;
    let q = ms.heights.iter().position(|&h| h == v - 1)?;
    if ms.is_grey(p) || ms.is_grey(q) {
        return None;
    }
    if !(ms.circ[p] && !ms.circ[q]) {
        return None;
    }
    if ms.crosses[p] > v - 1 || ms.crosses[q] + 1 > v {
        return None;
    }
    let mut out = ms.clone();
    out.heights.swap(p, q);
    out.circ[p] = false;
    out.circ[q] = true;
    Some((out, -1))
}

/// Relation (C): column `p` (non-grey) has j ≥ 2 ×'s and no ∘; column `q` has
/// j−1 ×'s and an ∘. The final × of `p` and the ∘ of `q` swap. Negates the
/// weight (factor −1).
pub fn relation_c(ms: &MarkedStaircase, p: usize, q: usize) -> Option<(MarkedStaircase, i32)> {
    if p >= ms.n || q >= ms.n || p == q || ms.is_grey(p) {
        return None;
    }
    let j = ms.crosses[p];
    if j < 2 || ms.circ[p] {
        return None;
    }
    if ms.crosses[q] + 1 != j || !ms.circ[q] {
        return None;
    }
    let mut out = ms.clone();
    out.crosses[p] = j - 1;
    out.circ[p] = true;
    out.crosses[q] = j;
    out.circ[q] = false;
    Some((out, -1))
}

/// Relation (D) on columns `p`, `q` whose ×-stacks both cover the boundary
/// height `b`: the columns exchange heights together with the ×'s above `b`.
/// The factor is the resulting weight ratio (±1, or 0 when either weight
/// vanishes).
pub fn relation_d(
    ms: &MarkedStaircase,
    p: usize,
    q: usize,
    b: usize,
) -> Option<(MarkedStaircase, i32)> {
    if p >= ms.n || q >= ms.n || p == q || b == 0 {
        return None;
    }
    let (hp, hq) = (ms.heights[p], ms.heights[q]);
    let (cp, cq) = (ms.crosses[p], ms.crosses[q]);
    // both stacks must contain height b
    if !(cp >= 1 && cq >= 1 && b <= hp && b <= hq && hp - cp < b && hq - cq < b) {
        return None;
    }
    let mut out = ms.clone();
    out.heights[p] = hq;
    out.heights[q] = hp;
    out.crosses[p] = cp + hq - hp;
    out.crosses[q] = cq + hp - hq;
    let (w0, m0) = ms.weight();
    let (w1, m1) = out.weight();
    let factor = if w0.is_zero() || w1.is_zero() {
        0
    } else {
        debug_assert_eq!(m0, m1);
        let ratio = &w1 / &w0;
        if ratio == rat(1) {
            1
        } else {
            debug_assert_eq!(ratio, rat(-1));
            -1
        }
    };
    Some((out, factor))
}

/// The per-diagram data used by the action on active columns.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ActiveData {
    /// 0-based indices of the s active columns, left to right.
    pub active: Vec<usize>,
    /// ×-counts of the active columns, left to right.
    pub gamma: Vec<i64>,
    /// Cells without ×'s in the active columns, left to right.
    pub alpha_vec: Vec<i64>,
    /// Positions 1..=s (within the active list) with ∘'s.
    pub omega: Vec<usize>,
    /// Non-grey active positions without ∘'s.
    pub pi: Vec<usize>,
    /// Grey active positions.
    pub psi_grey: Vec<usize>,
    /// d = Σ Γ − Σ I_top.
    pub d: i64,
}

/// Whether `ms` lies in M_I: exactly k ×-columns whose sorted counts agree
/// with I on the first k−s entries and have d ≥ 0 on the last s.
pub fn in_m_i(ms: &MarkedStaircase, i_set: &SubsetOfRange, s: usize) -> bool {
    let k = i_set.len();
    let j = ms.cross_multiset();
    if j.len() != k {
        return false;
    }
    let e = i_set.elems();
    if j[..k - s] != e[..k - s] {
        return false;
    }
    let jt: i64 = j[k - s..].iter().map(|&x| x as i64).sum();
    let it: i64 = e[k - s..].iter().map(|&x| x as i64).sum();
    jt - it >= 0
}

/// Extracts the active-column data of `ms ∈ M_I`, where `s` comes from the
/// extreme-hook shape of I.
pub fn active_data(ms: &MarkedStaircase, i_set: &SubsetOfRange, s: usize) -> ActiveData {
    let k = i_set.len();
    assert!(in_m_i(ms, i_set, s), "staircase not in M_I for I={:?}", i_set);
    let threshold = i_set.elems()[k - s];
    let active: Vec<usize> = (0..ms.n).filter(|&c| ms.crosses[c] >= threshold).collect();
    assert_eq!(active.len(), s, "expected {} active columns in {:?}", s, ms);
    let gamma: Vec<i64> = active.iter().map(|&c| ms.crosses[c] as i64).collect();
    let alpha_vec: Vec<i64> =
        active.iter().map(|&c| (ms.heights[c] - ms.crosses[c]) as i64).collect();
    let mut omega = Vec::new();
    let mut pi = Vec::new();
    let mut psi_grey = Vec::new();
    for (idx, &c) in active.iter().enumerate() {
        if ms.is_grey(c) {
            psi_grey.push(idx + 1);
        } else if ms.circ[c] {
            omega.push(idx + 1);
        } else {
            pi.push(idx + 1);
        }
    }
    let it: i64 = i_set.elems()[k - s..].iter().map(|&x| x as i64).sum();
    let d = gamma.iter().sum::<i64>() - it;
    ActiveData { active, gamma, alpha_vec, omega, pi, psi_grey, d }
}

/// The action of σ ∈ S_s (one-line notation, 1-based) on `ms ∈ M_I`: active
/// column ℓ passes its height (and the ×'s above the common block) to active
/// column σ(ℓ); each active column keeps its ×-free cell count.
pub fn act(
    sigma: &[usize],
    ms: &MarkedStaircase,
    i_set: &SubsetOfRange,
    s: usize,
) -> MarkedStaircase {
    assert_eq!(sigma.len(), s);
    let data = active_data(ms, i_set, s);
    let mut out = ms.clone();
    for l in 0..s {
        let dest = data.active[sigma[l] - 1];
        out.heights[dest] = ms.heights[data.active[l]];
        out.crosses[dest] =
            (out.heights[dest] as i64 - data.alpha_vec[sigma[l] - 1]) as usize;
    }
    out.validate();
    out
}
