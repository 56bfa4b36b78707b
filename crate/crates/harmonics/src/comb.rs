//! Strong compositions, subsets of [n−1], their degree statistics, the
//! mutually inverse bijections `psi`/`phi`, and Tanisaki ideal generators.

use std::fmt;

use crate::text::ParseError;

/// A strong composition α ⊨ n: a sequence of positive parts.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Composition {
    parts: Vec<usize>,
}

impl Composition {
    pub fn new(parts: Vec<usize>) -> Self {
        assert!(parts.iter().all(|&p| p >= 1), "composition parts must be positive");
        Composition { parts }
    }

    /// The empty composition of 0.
    pub fn empty() -> Self {
        Composition { parts: vec![] }
    }

    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    pub fn n(&self) -> usize {
        self.parts.iter().sum()
    }

    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    /// Weakly decreasing rearrangement μ(α).
    pub fn sorted_partition(&self) -> Vec<usize> {
        let mut mu = self.parts.clone();
        mu.sort_unstable_by(|a, b| b.cmp(a));
        mu
    }
}

impl fmt::Debug for Composition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})", render_comma(&self.parts))
    }
}

impl fmt::Display for Composition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", render_comma(&self.parts))
    }
}

fn render_comma(v: &[usize]) -> String {
    v.iter().map(|p| p.to_string()).collect::<Vec<_>>().join(",")
}

/// Parses `1,3,2,1,3,1`; the empty string is the empty composition.
pub fn parse_composition(s: &str) -> Result<Composition, ParseError> {
    let s = s.trim();
    if s.is_empty() {
        return Ok(Composition::empty());
    }
    let mut parts = Vec::new();
    for tok in s.split(',') {
        let tok = tok.trim();
        let p: usize = tok
            .parse()
            .map_err(|_| ParseError { msg: format!("bad composition part `{}`", tok) })?;
        if p == 0 {
            return Err(ParseError { msg: "composition parts must be positive".into() });
        }
        parts.push(p);
    }
    Ok(Composition::new(parts))
}

/// A subset I ⊆ [n−1], stored strictly increasing.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SubsetOfRange {
    n: usize,
    elems: Vec<usize>,
}

impl SubsetOfRange {
    pub fn new(n: usize, mut elems: Vec<usize>) -> Self {
        elems.sort_unstable();
        elems.dedup();
        assert!(
            elems.iter().all(|&i| 1 <= i && i < n),
            "subset {:?} not contained in [1,{}]",
            elems,
            n.saturating_sub(1)
        );
        SubsetOfRange { n, elems }
    }

    pub fn empty(n: usize) -> Self {
        SubsetOfRange { n, elems: vec![] }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn elems(&self) -> &[usize] {
        &self.elems
    }

    pub fn len(&self) -> usize {
        self.elems.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elems.is_empty()
    }

    pub fn sum(&self) -> usize {
        self.elems.iter().sum()
    }
}

impl fmt::Debug for SubsetOfRange {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{}}}@n={}", render_comma(&self.elems), self.n)
    }
}

impl fmt::Display for SubsetOfRange {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self)
    }
}

/// Parses `{2,4,5,7,9}@n=11`.
pub fn parse_subset(s: &str) -> Result<SubsetOfRange, ParseError> {
    let s = s.trim();
    let (body, tail) = s
        .split_once("}@n=")
        .ok_or_else(|| ParseError { msg: format!("bad subset syntax `{}`", s) })?;
    let body = body
        .strip_prefix('{')
        .ok_or_else(|| ParseError { msg: format!("bad subset syntax `{}`", s) })?;
    let n: usize =
        tail.parse().map_err(|_| ParseError { msg: format!("bad subset n `{}`", tail) })?;
    let mut elems = Vec::new();
    if !body.trim().is_empty() {
        for tok in body.split(',') {
            let tok = tok.trim();
            let i: usize = tok
                .parse()
                .map_err(|_| ParseError { msg: format!("bad subset element `{}`", tok) })?;
            elems.push(i);
        }
    }
    let mut sorted = elems.clone();
    sorted.sort_unstable();
    sorted.dedup();
    if sorted != elems {
        return Err(ParseError { msg: "subset elements must be strictly increasing".into() });
    }
    if elems.iter().any(|&i| i == 0 || i >= n) {
        return Err(ParseError { msg: format!("subset element outside [1,{}]", n - 1) });
    }
    Ok(SubsetOfRange { n, elems })
}

pub fn choose(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc = 1usize;
    for i in 0..k {
        acc = acc * (n - i) / (i + 1);
    }
    acc
}

/// coinv(α) = #{i < j : α_i < α_j}.
pub fn coinv(alpha: &Composition) -> usize {
    let p = alpha.parts();
    let mut c = 0;
    for i in 0..p.len() {
        for j in (i + 1)..p.len() {
            if p[i] < p[j] {
                c += 1;
            }
        }
    }
    c
}

/// b(α) = Σ_i (i−1) μ_i where μ is the decreasing rearrangement of α.
pub fn b_stat(alpha: &Composition) -> usize {
    alpha.sorted_partition().iter().enumerate().map(|(i, &m)| i * m).sum()
}

/// deg(α) = coinv(α) + 2b(α) − C(ℓ(α), 2).
pub fn deg_comp(alpha: &Composition) -> i64 {
    let l = alpha.len();
    coinv(alpha) as i64 + 2 * b_stat(alpha) as i64 - choose(l, 2) as i64
}

/// ᾱ: remove 1 from every part and drop empty rows.
pub fn bar_comp(alpha: &Composition) -> Composition {
    Composition::new(alpha.parts().iter().filter(|&&p| p > 1).map(|&p| p - 1).collect())
}

/// deg(I) = C(n,2) − Σ_{i∈I} i.
pub fn deg_subset(i_set: &SubsetOfRange) -> i64 {
    choose(i_set.n(), 2) as i64 - i_set.sum() as i64
}

/// Splits I at n−k: returns s = #{i_j ≤ n−k} and Ī = {i_{s+j} − n + k} ⊆ [k−1].
pub fn bar_subset(i_set: &SubsetOfRange) -> (usize, SubsetOfRange) {
    let n = i_set.n();
    let k = i_set.len();
    let s = i_set.elems().iter().filter(|&&i| i <= n - k).count();
    let elems: Vec<usize> =
        i_set.elems()[s..].iter().map(|&i| i + k - n).collect();
    (s, SubsetOfRange::new(k.max(1), elems))
}

/// Ψ_n: strong compositions of n → subsets of [n−1], by column-filling the
/// diagram of α. Row i of the current diagram receives m − i + 1 when its
/// second-column cell exists; numbers for missing cells are skipped.
pub fn psi(alpha: &Composition) -> SubsetOfRange {
    let n = alpha.n();
    let mut out = Vec::new();
    let mut rows: Vec<usize> = alpha.parts().to_vec();
    let mut m = rows.len(); // cells in the first column
    while !rows.is_empty() {
        for (i, &r) in rows.iter().enumerate() {
            if r >= 2 {
                out.push(m - i);
            }
        }
        rows = rows.iter().filter(|&&r| r >= 2).map(|&r| r - 1).collect();
        m += rows.len();
    }
    SubsetOfRange::new(n.max(1), out)
}

/// Φ_n: subsets of [n−1] → strong compositions of n; the inverse of `psi`.
pub fn phi(n: usize, i_set: &SubsetOfRange) -> Composition {
    assert_eq!(i_set.n(), n);
    let k = i_set.len();
    if k == 0 {
        return Composition::new(vec![1; n]);
    }
    let (s, ibar) = bar_subset(i_set);
    let beta = phi(k, &ibar);
    debug_assert_eq!(beta.len(), s);
    let mut alpha = vec![1usize; n - k];
    // attach β's parts at rows n−k+1−i_s < ... < n−k+1−i_1
    for t in 0..s {
        let row = n - k + 1 - i_set.elems()[s - 1 - t];
        alpha[row - 1] = beta.parts()[t] + 1;
    }
    Composition::new(alpha)
}

/// All strong compositions of n.
pub fn compositions(n: usize) -> Vec<Composition> {
    if n == 0 {
        return vec![Composition::empty()];
    }
    let mut out = Vec::new();
    let mut cur = Vec::new();
    fn rec(rem: usize, cur: &mut Vec<usize>, out: &mut Vec<Composition>) {
        if rem == 0 {
            out.push(Composition::new(cur.clone()));
            return;
        }
        for p in 1..=rem {
            cur.push(p);
            rec(rem - p, cur, out);
            cur.pop();
        }
    }
    rec(n, &mut cur, &mut out);
    out
}

/// All subsets of [n−1].
pub fn subsets_of_range(n: usize) -> Vec<SubsetOfRange> {
    let m = n - 1;
    (0u64..(1 << m))
        .map(|mask| {
            let elems = (1..=m).filter(|i| mask >> (i - 1) & 1 == 1).collect();
            SubsetOfRange::new(n, elems)
        })
        .collect()
}

/// All k-element subsets of [n−1].
pub fn k_subsets_of_range(n: usize, k: usize) -> Vec<SubsetOfRange> {
    subsets_of_range(n).into_iter().filter(|i| i.len() == k).collect()
}

/// All partitions of n (weakly decreasing).
pub fn partitions(n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::new();
    fn rec(rem: usize, max: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if rem == 0 {
            out.push(cur.clone());
            return;
        }
        for p in (1..=rem.min(max)).rev() {
            cur.push(p);
            rec(rem - p, p, cur, out);
            cur.pop();
        }
    }
    rec(n, n, &mut cur, &mut out);
    out
}

/// Transpose of a partition, padded with zeros to length n.
pub fn transpose_padded(mu: &[usize], n: usize) -> Vec<usize> {
    let mut t = vec![0usize; n];
    for i in 0..n {
        t[i] = mu.iter().filter(|&&p| p > i).count();
    }
    t
}

/// A bivariate polynomial in q and z with integer coefficients, used for the
/// generating-function identity.
pub type QzPoly = std::collections::BTreeMap<(i64, u32), i64>;

/// Both sides of the identity
/// Σ_α z^{n−ℓ(α)} q^{2b(α)−C(ℓ(α),2)+coinv(α)} = Σ_I z^{|I|} q^{C(n,2)−Sum(I)},
/// computed by full enumeration.
pub fn gf_identity_check(n: usize) -> (QzPoly, QzPoly, bool) {
    let mut lhs = QzPoly::new();
    for alpha in compositions(n) {
        let z = (n - alpha.len()) as u32;
        let q = deg_comp(&alpha);
        *lhs.entry((q, z)).or_insert(0) += 1;
    }
    let mut rhs = QzPoly::new();
    for i_set in subsets_of_range(n) {
        let z = i_set.len() as u32;
        let q = deg_subset(&i_set);
        *rhs.entry((q, z)).or_insert(0) += 1;
    }
    let eq = lhs == rhs;
    (lhs, rhs, eq)
}

/// The essential generator set for the Tanisaki ideal of μ ⊢ n.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TanisakiGeneratorSet {
    pub mu: Vec<usize>,
    /// d̲_0, ..., d̲_{μ_1−1} with d̲_0 = 1 and d̲_i = d̲_{i−1} + (μ'_i − 1).
    pub dbar: Vec<usize>,
    /// (r, m) meaning e_r(m̲); the window generators e_{d̲_i}(n−i̲) followed
    /// by the full-window generators e_r(n̲), r ∈ [n].
    pub essential: Vec<(usize, usize)>,
}

pub fn essential_generators(mu: &[usize]) -> TanisakiGeneratorSet {
    let n: usize = mu.iter().sum();
    assert!(n >= 1);
    let mu1 = mu[0];
    let mu_t = transpose_padded(mu, n);
    let mut dbar = vec![1usize];
    for i in 1..mu1 {
        dbar.push(dbar[i - 1] + mu_t[i - 1] - 1);
    }
    let mut essential = Vec::new();
    for i in 1..mu1 {
        essential.push((dbar[i], n - i));
    }
    for r in 1..=n {
        essential.push((r, n));
    }
    TanisakiGeneratorSet { mu: mu.to_vec(), dbar, essential }
}

/// d_k(μ) = μ'_n + ... + μ'_{n−k+1} with μ' padded to n entries.
pub fn d_k_mu(mu: &[usize], n: usize, k: usize) -> usize {
    let mu_t = transpose_padded(mu, n);
    (0..k).map(|j| mu_t[n - 1 - j]).sum()
}

/// The full defining generator list of the Tanisaki ideal: all (r, S) with
/// |S| − d_{|S|}(μ) < r ≤ |S|.
pub fn tanisaki_full_generators(mu: &[usize]) -> Vec<(usize, Vec<usize>)> {
    let n: usize = mu.iter().sum();
    let mut out = Vec::new();
    for mask in 1u64..(1 << n) {
        let s: Vec<usize> = (1..=n).filter(|i| mask >> (i - 1) & 1 == 1).collect();
        let size = s.len();
        let dk = d_k_mu(mu, n, size);
        let lo = size.saturating_sub(dk) + 1;
        for r in lo..=size {
            out.push((r, s.clone()));
        }
    }
    out
}

/// Parses a bare comma list like `2,4,5` (empty string → ∅) as a subset of
/// [n−1].
pub fn parse_comma_subset(n: usize, s: &str) -> Result<SubsetOfRange, ParseError> {
    if n < 1 {
        return Err(ParseError { msg: "n must be at least 1".into() });
    }
    let s = s.trim();
    let mut elems = Vec::new();
    if !s.is_empty() {
        for tok in s.split(',') {
            let tok = tok.trim();
            let i: usize = tok
                .parse()
                .map_err(|_| ParseError { msg: format!("bad subset element `{}`", tok) })?;
            elems.push(i);
        }
    }
    let mut sorted = elems.clone();
    sorted.sort_unstable();
    sorted.dedup();
    if sorted.len() != elems.len() {
        return Err(ParseError { msg: format!("repeated element in `{}`", s) });
    }
    if let Some(&hi) = sorted.last() {
        if hi > n - 1 {
            return Err(ParseError {
                msg: format!("element {} outside [1,{}]", hi, n - 1),
            });
        }
    }
    if sorted.first().is_some_and(|&lo| lo == 0) {
        return Err(ParseError { msg: "subset elements start at 1".into() });
    }
    Ok(SubsetOfRange::new(n, sorted))
}

/// Parses an order file: one comma-list subset of [n−1] per line; blank lines
/// and `#` comments are skipped.
pub fn parse_order_file(n: usize, text: &str) -> Result<Vec<SubsetOfRange>, ParseError> {
    let mut out = Vec::new();
    for line in text.lines() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        out.push(parse_comma_subset(n, line)?);
    }
    Ok(out)
}

/// Renders a q,z-polynomial as e.g. `1 + 3 q^2 z + q^5 z^2`.
pub fn render_qz(p: &QzPoly) -> String {
    if p.is_empty() {
        return "0".to_string();
    }
    let mut parts = Vec::new();
    for (&(q, z), &c) in p {
        if c == 0 {
            continue;
        }
        let mut factors = Vec::new();
        match q {
            0 => {}
            1 => factors.push("q".to_string()),
            _ => factors.push(format!("q^{}", q)),
        }
        match z {
            0 => {}
            1 => factors.push("z".to_string()),
            _ => factors.push(format!("z^{}", z)),
        }
        if factors.is_empty() {
            parts.push(format!("{}", c));
        } else if c == 1 {
            parts.push(factors.join(" "));
        } else {
            parts.push(format!("{} {}", c, factors.join(" ")));
        }
    }
    parts.join(" + ")
}

/// Detects the extreme-hook condition: i_1, ..., i_{k−s+1} ≤ n−k and
/// i_{k−s+1+t} = n−s+t for 1 ≤ t ≤ s−1. Returns the unique matching s ∈ [k].
pub fn is_extreme_hook(i_set: &SubsetOfRange) -> Option<usize> {
    let n = i_set.n();
    let k = i_set.len();
    let e = i_set.elems();
    if k == 0 {
        return None;
    }
    for s in 1..=k {
        let prefix_ok = e[..k - s + 1].iter().all(|&i| i <= n - k);
        let tail_ok = (1..s).all(|t| e[k - s + 1 + t - 1] == n - s + t);
        if prefix_ok && tail_ok {
            return Some(s);
        }
    }
    None
}
