//! Exact graded linear algebra over ℚ: flip-action spans of d_I Δ_n, Hilbert
//! data, Tanisaki-quotient dimensions, annihilation checks for the filtration
//! question, and a brute-force order search.

use std::collections::BTreeMap;

use num::rational::BigRational;
use num::{One, Zero};
use serde::Serialize;

use crate::comb::{
    choose, essential_generators, k_subsets_of_range, phi, tanisaki_full_generators,
    SubsetOfRange,
};
use crate::monomial::Monomial;
use crate::ops::{apply_diff_operator, d_i_vandermonde, elementary, partial_x};
use crate::poly::SuperPolynomial;

/// Echelon rows keyed by leading monomial; all rows normalized to leading
/// coefficient 1 and mutually back-substituted (reduced echelon form).
type Slice = BTreeMap<Monomial, SuperPolynomial>;

fn slice_reduce(rows: &Slice, mut p: SuperPolynomial) -> SuperPolynomial {
    loop {
        let (lead, c) = match p.leading() {
            Some((m, c)) => (m.clone(), c.clone()),
            None => return p,
        };
        match rows.get(&lead) {
            Some(row) => p = &p - &row.scale(&c),
            None => return p,
        }
    }
}

fn slice_insert(rows: &mut Slice, p: SuperPolynomial) -> bool {
    let p = slice_reduce(rows, p);
    let (lead, c) = match p.leading() {
        Some((m, c)) => (m.clone(), c.clone()),
        None => return false,
    };
    let row = p.scale(&(BigRational::one() / c));
    // back-substitute into the existing rows to keep the form reduced
    let affected: Vec<Monomial> = rows
        .iter()
        .filter(|(_, r)| !r.coeff(&lead).is_zero())
        .map(|(k, _)| k.clone())
        .collect();
    for key in affected {
        let old = rows.remove(&key).unwrap();
        let cleaned = &old - &row.scale(&old.coeff(&lead));
        rows.insert(key, cleaned);
    }
    rows.insert(lead, row);
    true
}

/// A subspace of superspace stored slicewise by bi-degree.
#[derive(Clone, Debug, Default)]
pub struct GradedSpan {
    n: usize,
    slices: BTreeMap<(u32, u32), Slice>,
}

impl GradedSpan {
    pub fn new(n: usize) -> Self {
        GradedSpan { n, slices: BTreeMap::new() }
    }

    pub fn nvars(&self) -> usize {
        self.n
    }

    /// Adds a polynomial (splitting into bi-homogeneous components); returns
    /// true if the dimension grew.
    pub fn insert(&mut self, p: &SuperPolynomial) -> bool {
        assert_eq!(p.nvars(), self.n);
        let mut grew = false;
        for bd in p.bidegrees() {
            let rows = self.slices.entry(bd).or_default();
            if slice_insert(rows, p.component(bd)) {
                grew = true;
            }
        }
        grew
    }

    /// Exact membership test.
    pub fn contains(&self, p: &SuperPolynomial) -> bool {
        assert_eq!(p.nvars(), self.n);
        p.bidegrees().into_iter().all(|bd| {
            let comp = p.component(bd);
            match self.slices.get(&bd) {
                Some(rows) => slice_reduce(rows, comp).is_zero(),
                None => false,
            }
        })
    }

    pub fn dim(&self) -> usize {
        self.slices.values().map(|s| s.len()).sum()
    }

    pub fn slice_dims(&self) -> BTreeMap<(u32, u32), usize> {
        self.slices.iter().map(|(&bd, s)| (bd, s.len())).collect()
    }

    /// x-degree → dimension, summed over θ-degrees.
    pub fn hilbert(&self) -> BTreeMap<u32, usize> {
        let mut out = BTreeMap::new();
        for (&(xd, _), s) in &self.slices {
            *out.entry(xd).or_insert(0) += s.len();
        }
        out
    }

    pub fn rows(&self) -> impl Iterator<Item = &SuperPolynomial> {
        self.slices.values().flat_map(|s| s.values())
    }

    /// Absorbs every row of `other`.
    pub fn absorb(&mut self, other: &GradedSpan) {
        assert_eq!(self.n, other.n);
        for row in other.rows() {
            self.insert(row);
        }
    }
}

/// The closure of d_I Δ_n under all ∂_{x_i} (the flip action of the
/// polynomial ring), computed by breadth-first differentiation.
pub fn flip_span(n: usize, i_set: &[usize]) -> GradedSpan {
    let mut span = GradedSpan::new(n);
    let mut queue = vec![d_i_vandermonde(i_set, n)];
    while let Some(p) = queue.pop() {
        if p.is_zero() || !span.insert(&p) {
            continue;
        }
        for j in 1..=n {
            let dp = partial_x(j, &p);
            if !dp.is_zero() {
                queue.push(dp);
            }
        }
    }
    span
}

pub fn sum_spans(parts: &[GradedSpan]) -> GradedSpan {
    let n = parts.first().map_or(0, |s| s.n);
    let mut out = GradedSpan::new(n);
    for part in parts {
        out.absorb(part);
    }
    out
}

fn exponent_vectors(n: usize, total: u32) -> Vec<Vec<u32>> {
    if n == 1 {
        return vec![vec![total]];
    }
    let mut out = Vec::new();
    for first in 0..=total {
        for mut rest in exponent_vectors(n - 1, total - first) {
            let mut v = vec![first];
            v.append(&mut rest);
            out.push(v);
        }
    }
    out
}

fn shift_by_monomial(p: &SuperPolynomial, xexp: &[u32]) -> SuperPolynomial {
    let n = p.nvars();
    let mut out = SuperPolynomial::zero(n);
    for (m, c) in p.terms() {
        let mut e = m.xexp.clone();
        for i in 0..n {
            e[i] += xexp[i];
        }
        out.add_term(Monomial { xexp: e, thetas: m.thetas }, c.clone());
    }
    out
}

/// Expands the essential generator list of 𝓘_μ into concrete polynomials
/// e_r(S) over every window image S (|S| = m for each essential e_r(m̲)).
pub fn essential_generator_polys(mu: &[usize]) -> Vec<(usize, Vec<usize>)> {
    let n: usize = mu.iter().sum();
    let mut out = Vec::new();
    for (r, m) in essential_generators(mu).essential {
        for s in k_subsets_of_ground(n, m) {
            out.push((r, s));
        }
    }
    out.sort();
    out.dedup();
    out
}

/// All size-k subsets of the ground set [n] (not just of [n−1]).
fn k_subsets_of_ground(n: usize, k: usize) -> Vec<Vec<usize>> {
    use itertools::Itertools;
    (1..=n).combinations(k).collect()
}

/// Degreewise dimensions of ℚ[x_1..x_n]/𝓘_μ for degrees 0..=cap, computed by
/// row-reducing the ideal's graded pieces (generators times all monomial
/// multiples) against the full polynomial slice.
pub fn ideal_graded_dims(mu: &[usize], cap: usize) -> Vec<usize> {
    let n: usize = mu.iter().sum();
    let gens: Vec<(usize, SuperPolynomial)> = essential_generator_polys(mu)
        .into_iter()
        .map(|(r, s)| (r, elementary(n, r, &s)))
        .collect();
    let mut out = Vec::with_capacity(cap + 1);
    let mut saturated = false;
    for d in 0..=cap {
        if saturated {
            out.push(0);
            continue;
        }
        let mut rows: Slice = BTreeMap::new();
        for (r, g) in &gens {
            if *r > d {
                continue;
            }
            for xexp in exponent_vectors(n, (d - r) as u32) {
                slice_insert(&mut rows, shift_by_monomial(g, &xexp));
            }
        }
        let total = choose(n - 1 + d, d);
        let dim = total - rows.len();
        if dim == 0 {
            // all degree-d monomials lie in the ideal, hence all higher ones
            saturated = true;
        }
        out.push(dim);
    }
    out
}

#[derive(Clone, Debug, Serialize)]
pub struct GeneratorCheck {
    pub r: usize,
    #[serde(rename = "S")]
    pub s: Vec<usize>,
    pub member: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct StepReport {
    #[serde(rename = "I")]
    pub i_set: Vec<usize>,
    pub generators: Vec<GeneratorCheck>,
    pub pass: bool,
}

/// For each step m of the order, checks that every Tanisaki generator of
/// 𝓘_{Φ_n(I_m)} (essential generators with all their window images, or the
/// full defining set when `full_set`) sends d_{I_m} Δ_n into the span of the
/// earlier 𝒮ℋ_{I_j}.
pub fn annihilation_check(
    n: usize,
    k: usize,
    order: &[SubsetOfRange],
    full_set: bool,
) -> Vec<StepReport> {
    validate_order(n, k, order);
    let mut prior = GradedSpan::new(n);
    let mut reports = Vec::new();
    for i_set in order {
        let base = d_i_vandermonde(i_set.elems(), n);
        let mu = phi(n, i_set).sorted_partition();
        let gens = if full_set {
            tanisaki_full_generators(&mu)
        } else {
            essential_generator_polys(&mu)
        };
        let mut checks = Vec::new();
        for (r, s) in gens {
            let image = apply_diff_operator(&elementary(n, r, &s), &base);
            let member = image.is_zero() || prior.contains(&image);
            checks.push(GeneratorCheck { r, s, member });
        }
        let pass = checks.iter().all(|c| c.member);
        reports.push(StepReport { i_set: i_set.elems().to_vec(), generators: checks, pass });
        prior.absorb(&flip_span(n, i_set.elems()));
    }
    reports
}

fn validate_order(n: usize, k: usize, order: &[SubsetOfRange]) {
    let mut seen: Vec<Vec<usize>> = order.iter().map(|s| s.elems().to_vec()).collect();
    seen.sort();
    let mut all: Vec<Vec<usize>> =
        k_subsets_of_range(n, k).iter().map(|s| s.elems().to_vec()).collect();
    all.sort();
    assert_eq!(seen, all, "order must be a permutation of the {}-subsets of [{}]", k, n - 1);
}

/// Checks that the successive filtration quotients have the graded dimensions
/// of ℚ[x]/𝓘_{μ(Φ_n(I_m))}, with x-degree deg of the factor matching quotient
/// degree C(n,2) − Sum(I_m) − deg (the flip action reverses the grading).
pub fn factor_dims_check(n: usize, k: usize, order: &[SubsetOfRange]) -> bool {
    validate_order(n, k, order);
    let binom_n2 = n * (n - 1) / 2;
    let mut cumulative = GradedSpan::new(n);
    let mut prev_hilbert: BTreeMap<u32, usize> = BTreeMap::new();
    for i_set in order {
        cumulative.absorb(&flip_span(n, i_set.elems()));
        let cur = cumulative.hilbert();
        let mu = phi(n, i_set).sorted_partition();
        let top = binom_n2 - i_set.sum();
        let quotient = ideal_graded_dims(&mu, top);
        for deg in 0..=top as u32 {
            let factor = cur.get(&deg).copied().unwrap_or(0)
                - prev_hilbert.get(&deg).copied().unwrap_or(0);
            let expect = quotient[top - deg as usize];
            if factor != expect {
                return false;
            }
        }
        // nothing may appear above the factor's top degree
        for (&deg, &dim) in &cur {
            if deg > top as u32 && dim != prev_hilbert.get(&deg).copied().unwrap_or(0) {
                return false;
            }
        }
        prev_hilbert = cur;
    }
    true
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SearchOutcome {
    Found(Vec<SubsetOfRange>),
    /// Exhaustive backtracking proved no order passes.
    NoneExists,
    /// The node budget ran out before the search completed.
    BudgetExhausted,
}

/// Backtracking search for an order of the k-subsets of [n−1] in which every
/// annihilation check passes, trying high-Sum subsets first. `budget` caps
/// the number of search nodes expanded.
pub fn search_order(n: usize, k: usize, budget: usize) -> SearchOutcome {
    let mut candidates = k_subsets_of_range(n, k);
    // descending Sum, then reverse-lex: the heuristic that works at small n
    candidates.sort_by(|a, b| {
        b.sum().cmp(&a.sum()).then_with(|| b.elems().cmp(a.elems()))
    });
    let spans: Vec<GradedSpan> =
        candidates.iter().map(|i| flip_span(n, i.elems())).collect();
    let images: Vec<Vec<SuperPolynomial>> = candidates
        .iter()
        .map(|i_set| {
            let base = d_i_vandermonde(i_set.elems(), n);
            let mu = phi(n, i_set).sorted_partition();
            essential_generator_polys(&mu)
                .into_iter()
                .map(|(r, s)| apply_diff_operator(&elementary(n, r, &s), &base))
                .collect()
        })
        .collect();
    let mut chosen: Vec<usize> = Vec::new();
    let mut used = vec![false; candidates.len()];
    let mut nodes = 0usize;
    let complete = rec_search(
        n,
        &candidates,
        &spans,
        &images,
        &GradedSpan::new(n),
        &mut chosen,
        &mut used,
        budget,
        &mut nodes,
    );
    match complete {
        Some(true) => {
            SearchOutcome::Found(chosen.iter().map(|&i| candidates[i].clone()).collect())
        }
        Some(false) => SearchOutcome::NoneExists,
        None => SearchOutcome::BudgetExhausted,
    }
}

/// Some(true): found (chosen filled). Some(false): proven impossible from
/// this state. None: budget ran out.
#[allow(clippy::too_many_arguments)]
fn rec_search(
    n: usize,
    candidates: &[SubsetOfRange],
    spans: &[GradedSpan],
    images: &[Vec<SuperPolynomial>],
    prior: &GradedSpan,
    chosen: &mut Vec<usize>,
    used: &mut [bool],
    budget: usize,
    nodes: &mut usize,
) -> Option<bool> {
    if chosen.len() == candidates.len() {
        return Some(true);
    }
    let mut saw_budget_cut = false;
    for idx in 0..candidates.len() {
        if used[idx] {
            continue;
        }
        *nodes += 1;
        if *nodes > budget {
            return None;
        }
        let ok = images[idx]
            .iter()
            .all(|img| img.is_zero() || prior.contains(img));
        if !ok {
            continue;
        }
        let mut next = prior.clone();
        next.absorb(&spans[idx]);
        used[idx] = true;
        chosen.push(idx);
        match rec_search(n, candidates, spans, images, &next, chosen, used, budget, nodes) {
            Some(true) => return Some(true),
            Some(false) => {}
            None => saw_budget_cut = true,
        }
        chosen.pop();
        used[idx] = false;
        if saw_budget_cut {
            return None;
        }
    }
    Some(false)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::comb::subsets_of_range;
    use crate::ops::vandermonde;

    #[test]
    fn flip_span_classical() {
        // dim ℋ_n = n!
        assert_eq!(flip_span(2, &[]).dim(), 2);
        assert_eq!(flip_span(3, &[]).dim(), 6);
        assert_eq!(flip_span(4, &[]).dim(), 24);
        // Hilbert series of the classical coinvariants: [3]_q! = 1,2,2,1
        let h = flip_span(3, &[]).hilbert();
        let dims: Vec<usize> = (0..=3).map(|d| h.get(&d).copied().unwrap_or(0)).collect();
        assert_eq!(dims, vec![1, 2, 2, 1]);
    }

    #[test]
    fn one_form_span_dims() {
        // Σ_i 𝒮ℋ_{{i}} has dimension (n−1)·n!/2
        for n in 3..=4 {
            let parts: Vec<GradedSpan> =
                (1..n).map(|i| flip_span(n, &[i])).collect();
            let total = sum_spans(&parts);
            let expect = (n - 1) * factorial_usize(n) / 2;
            assert_eq!(total.dim(), expect, "n = {}", n);
        }
    }

    fn factorial_usize(n: usize) -> usize {
        (1..=n).product()
    }

    #[test]
    fn membership_basics() {
        let n = 3;
        let sp = flip_span(n, &[1]);
        assert!(sp.contains(&d_i_vandermonde(&[1], n)));
        assert!(!sp.contains(&vandermonde(n)));
        // monotone under absorption
        let mut big = sp.clone();
        big.absorb(&flip_span(n, &[2]));
        assert!(big.contains(&d_i_vandermonde(&[1], n)));
        assert!(big.contains(&d_i_vandermonde(&[2], n)));
    }

    #[test]
    fn ideal_dims_small() {
        // μ = (1³): [3]_q! = 1,2,2,1
        assert_eq!(ideal_graded_dims(&[1, 1, 1], 3), vec![1, 2, 2, 1]);
        // μ = (n): everything above degree 0 is in the ideal
        assert_eq!(ideal_graded_dims(&[4], 3), vec![1, 0, 0, 0]);
        // μ = (2,1): total 3!/2 = 3 with series 1 + 2q
        assert_eq!(ideal_graded_dims(&[2, 1], 3), vec![1, 2, 0, 0]);
        // totals are multinomials for all μ ⊢ 4
        for mu in crate::comb::partitions(4) {
            let cap = 6;
            let dims = ideal_graded_dims(&mu, cap);
            let total: usize = dims.iter().sum();
            let mut multinomial = factorial_usize(4);
            for part in &mu {
                multinomial /= factorial_usize(*part);
            }
            assert_eq!(total, multinomial, "mu = {:?}", mu);
        }
    }

    #[test]
    fn annihilation_n3_order() {
        let order = vec![
            SubsetOfRange::new(3, vec![2]),
            SubsetOfRange::new(3, vec![1]),
        ];
        let reports = annihilation_check(3, 1, &order, false);
        assert!(reports.iter().all(|r| r.pass));
        // the full defining generator set agrees at this size
        let reports = annihilation_check(3, 1, &order, true);
        assert!(reports.iter().all(|r| r.pass));
        // the opposite order fails at the first step
        let bad = vec![
            SubsetOfRange::new(3, vec![1]),
            SubsetOfRange::new(3, vec![2]),
        ];
        let reports = annihilation_check(3, 1, &bad, false);
        assert!(!reports[0].pass);
    }

    #[test]
    fn factor_dims_n3_n4() {
        for n in 3..=4 {
            let order: Vec<SubsetOfRange> =
                (1..n).rev().map(|i| SubsetOfRange::new(n, vec![i])).collect();
            assert!(factor_dims_check(n, 1, &order), "n = {}", n);
        }
    }

    #[test]
    fn search_small() {
        match search_order(3, 1, 100) {
            SearchOutcome::Found(order) => {
                assert_eq!(order[0].elems(), &[2]);
                assert_eq!(order[1].elems(), &[1]);
            }
            other => panic!("unexpected outcome {:?}", other),
        }
        assert_eq!(search_order(4, 1, 0), SearchOutcome::BudgetExhausted);
    }

    #[test]
    fn pieri_implies_membership() {
        // the Generic Pieri Rule rewrites ∂_{e_{n−k}(n−1̲)} d_I Δ_n in terms
        // of lexicographically larger J, so the descending 1-form order puts
        // each such image in the prior span
        let n = 4;
        for i_set in subsets_of_range(n) {
            if i_set.len() != 1 {
                continue;
            }
            let i = i_set.elems()[0];
            let prior_sets: Vec<usize> = ((i + 1)..n).collect();
            let parts: Vec<GradedSpan> =
                prior_sets.iter().map(|&j| flip_span(n, &[j])).collect();
            let prior = sum_spans(&parts);
            let image = apply_diff_operator(
                &elementary(n, n - 1, &(1..=n - 1).collect::<Vec<_>>()),
                &d_i_vandermonde(&[i], n),
            );
            if prior_sets.is_empty() {
                // I = {n−1}: the Pieri sum has the single term J = I
                assert!(image.is_zero());
            } else {
                assert!(image.is_zero() || prior.contains(&image));
            }
        }
    }
}
