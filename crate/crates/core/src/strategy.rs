//! Pivot orderings, cyclic strategies and their equivalence relations.
//!
//! Pairs are written 1-based, as `(i, j)` with `i < j`. Matrix code converts
//! with [`PivotPair::rows`].

use std::collections::{HashSet, VecDeque};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::matrix::SignedPermutation;

/// Largest number of orderings the equivalence searches will visit.
pub const DEFAULT_NODE_CAP: usize = 100_000;

/// A pivot pair `(i, j)`, 1-based with `i < j`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "[usize; 2]", into = "[usize; 2]")]
pub struct PivotPair {
    i: usize,
    j: usize,
}

impl PivotPair {
    /// Normalizes the order of the indices. Both must be >= 1 and distinct.
    pub fn new(a: usize, b: usize) -> Result<Self> {
        if a == 0 || b == 0 || a == b {
            return Err(Error::InvalidPair { i: a, j: b, n: a.max(b) });
        }
        Ok(PivotPair { i: a.min(b), j: a.max(b) })
    }

    pub fn i(&self) -> usize {
        self.i
    }

    pub fn j(&self) -> usize {
        self.j
    }

    /// Zero-based row/column indices.
    pub fn rows(&self) -> (usize, usize) {
        (self.i - 1, self.j - 1)
    }

    /// True when the two pairs share no index, i.e. the rotations commute.
    pub fn is_disjoint(&self, other: &PivotPair) -> bool {
        self.i != other.i && self.i != other.j && self.j != other.i && self.j != other.j
    }

    pub fn fits(&self, n: usize) -> bool {
        self.j <= n
    }
}

impl TryFrom<[usize; 2]> for PivotPair {
    type Error = Error;
    fn try_from(v: [usize; 2]) -> Result<Self> {
        PivotPair::new(v[0], v[1])
    }
}

impl From<PivotPair> for [usize; 2] {
    fn from(p: PivotPair) -> Self {
        [p.i, p.j]
    }
}

impl fmt::Display for PivotPair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.i, self.j)
    }
}

fn pair(i: usize, j: usize) -> PivotPair {
    PivotPair::new(i, j).expect("valid literal pair")
}

/// A finite sequence of pivot pairs for matrices of order `n`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PivotOrdering {
    n: usize,
    pairs: Vec<PivotPair>,
}

impl PivotOrdering {
    pub fn new(n: usize, pairs: Vec<PivotPair>) -> Result<Self> {
        if n < 2 {
            return Err(Error::OrderTooSmall(n));
        }
        if pairs.is_empty() {
            return Err(Error::InvalidOrdering("empty ordering".into()));
        }
        if let Some(p) = pairs.iter().find(|p| !p.fits(n)) {
            return Err(Error::InvalidPair { i: p.i, j: p.j, n });
        }
        Ok(PivotOrdering { n, pairs })
    }

    /// An ordering of all `n(n-1)/2` pairs, each exactly once.
    pub fn cyclic(n: usize, pairs: Vec<PivotPair>) -> Result<Self> {
        let ord = Self::new(n, pairs)?;
        ord.check_cyclic()?;
        Ok(ord)
    }

    pub fn from_tuples(n: usize, tuples: &[(usize, usize)]) -> Result<Self> {
        let pairs = tuples.iter().map(|&(i, j)| PivotPair::new(i, j)).collect::<Result<_>>()?;
        Self::new(n, pairs)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn pairs(&self) -> &[PivotPair] {
        &self.pairs
    }

    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    fn check_cyclic(&self) -> Result<()> {
        let full = self.n * (self.n - 1) / 2;
        if self.pairs.len() != full {
            return Err(Error::InvalidOrdering(format!(
                "cyclic ordering of order {} needs {full} pairs, got {}",
                self.n,
                self.pairs.len()
            )));
        }
        let mut seen = HashSet::new();
        for p in &self.pairs {
            if !seen.insert(*p) {
                return Err(Error::InvalidOrdering(format!("pair {p} appears twice")));
            }
        }
        Ok(())
    }

    pub fn is_cyclic(&self) -> bool {
        self.check_cyclic().is_ok()
    }

    /// Cyclic left shift by `k`: `[O_1, O_2] -> [O_2, O_1]` with `|O_1| = k`.
    pub fn rotated(&self, k: usize) -> Self {
        let mut pairs = self.pairs.clone();
        let len = pairs.len();
        pairs.rotate_left(k % len);
        PivotOrdering { n: self.n, pairs }
    }

    /// Concatenation; the order of the result is the larger of the two.
    pub fn concat(parts: &[&PivotOrdering]) -> Result<Self> {
        let n = parts.iter().map(|p| p.n).max().unwrap_or(0);
        Self::new(n, parts.iter().flat_map(|p| p.pairs.iter().copied()).collect())
    }

    fn sorted_pairs(&self) -> Vec<PivotPair> {
        let mut v = self.pairs.clone();
        v.sort();
        v
    }

    /// JSON array of `[i, j]` pairs.
    pub fn to_json(&self) -> String {
        serde_json::to_string(&self.pairs).expect("pairs serialize")
    }

    /// Parses a JSON array of `[i, j]` pairs; the order is the largest index.
    pub fn from_json(s: &str) -> Result<Self> {
        let pairs: Vec<PivotPair> = serde_json::from_str(s)?;
        let n = pairs.iter().map(|p| p.j).max().unwrap_or(0);
        Self::new(n, pairs)
    }
}

impl fmt::Display for PivotOrdering {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.pairs.iter().map(ToString::to_string).collect();
        f.write_str(&parts.join(","))
    }
}

fn ordering4(tuples: &[(usize, usize)]) -> PivotOrdering {
    PivotOrdering::cyclic(4, tuples.iter().map(|&(i, j)| pair(i, j)).collect()).expect("valid literal ordering")
}

/// `(1,3),(2,4),(1,4),(2,3),(1,2),(3,4)`.
pub fn ordering_i1() -> PivotOrdering {
    ordering4(&[(1, 3), (2, 4), (1, 4), (2, 3), (1, 2), (3, 4)])
}

/// `(1,4),(2,3),(1,3),(2,4),(1,2),(3,4)`.
pub fn ordering_i2() -> PivotOrdering {
    ordering4(&[(1, 4), (2, 3), (1, 3), (2, 4), (1, 2), (3, 4)])
}

pub fn ordering_o1_prime() -> PivotOrdering {
    ordering4(&[(1, 2), (3, 4), (1, 3), (2, 4), (1, 4), (2, 3)])
}

pub fn ordering_o1_double_prime() -> PivotOrdering {
    ordering4(&[(1, 4), (2, 3), (1, 2), (3, 4), (1, 3), (2, 4)])
}

pub fn ordering_o2_prime() -> PivotOrdering {
    ordering4(&[(1, 2), (3, 4), (1, 4), (2, 3), (1, 3), (2, 4)])
}

pub fn ordering_o2_double_prime() -> PivotOrdering {
    ordering4(&[(1, 3), (2, 4), (1, 2), (3, 4), (1, 4), (2, 3)])
}

/// Row-by-row ordering `(1,2),(1,3),...,(1,n),(2,3),...,(n-1,n)`.
pub fn ordering_serial_rowwise(n: usize) -> Result<PivotOrdering> {
    let pairs = (1..=n).flat_map(|i| (i + 1..=n).map(move |j| pair(i, j))).collect();
    PivotOrdering::cyclic(n, pairs)
}

/// Orderings selectable by name: `I1`, `I2`, `O1p`, `O1pp`, `O2p`, `O2pp`
/// (order 4) and `serial-rowwise` (any order).
pub fn named_ordering(name: &str, n: usize) -> Result<PivotOrdering> {
    let four = |ord: PivotOrdering| {
        if n == 4 {
            Ok(ord)
        } else {
            Err(Error::UnsupportedOrder { required: 4, found: n })
        }
    };
    match name {
        "I1" | "O1" => four(ordering_i1()),
        "I2" | "O2" => four(ordering_i2()),
        "O1p" => four(ordering_o1_prime()),
        "O1pp" => four(ordering_o1_double_prime()),
        "O2p" => four(ordering_o2_prime()),
        "O2pp" => four(ordering_o2_double_prime()),
        "serial-rowwise" => ordering_serial_rowwise(n),
        other => Err(Error::InvalidOrdering(format!("unknown strategy `{other}`"))),
    }
}

/// The matrix representation of a cyclic strategy: entry `(i, j)` is the
/// step index that selects `(i, j)`. Diagonal cells hold `-1`, displayed `*`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StrategyMatrix {
    n: usize,
    cells: Vec<i64>,
}

impl StrategyMatrix {
    /// From an upper-triangular description; diagonal entries are ignored.
    pub fn from_grid(grid: &[&[i64]]) -> Result<Self> {
        let n = grid.len();
        let mut m = StrategyMatrix { n, cells: vec![-1; n * n] };
        for r in 0..n {
            if grid[r].len() != n {
                return Err(Error::DimensionMismatch { expected: n, found: grid[r].len() });
            }
            for s in r + 1..n {
                if grid[r][s] != grid[s][r] {
                    return Err(Error::NotSymmetric { row: r, col: s });
                }
                m.set(r, s, grid[r][s]);
            }
        }
        Ok(m)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Zero-based access; diagonal returns -1.
    pub fn get(&self, r: usize, s: usize) -> i64 {
        self.cells[r * self.n + s]
    }

    fn set(&mut self, r: usize, s: usize, v: i64) {
        self.cells[r * self.n + s] = v;
        self.cells[s * self.n + r] = v;
    }

    /// `Pᵀ M P` for a pure permutation `P`.
    pub fn permuted(&self, p: &SignedPermutation) -> Result<Self> {
        if !p.is_pure_permutation() {
            return Err(Error::InvalidPermutation("expected an unsigned permutation".into()));
        }
        if p.n() != self.n {
            return Err(Error::DimensionMismatch { expected: self.n, found: p.n() });
        }
        let mut out = StrategyMatrix { n: self.n, cells: vec![-1; self.n * self.n] };
        for r in 0..self.n {
            for s in r + 1..self.n {
                out.set(r, s, self.get(p.column(r).0, p.column(s).0));
            }
        }
        Ok(out)
    }

    /// Off-diagonal entries of the upper triangle, row by row.
    pub fn upper_entries(&self) -> Vec<i64> {
        (0..self.n).flat_map(|r| (r + 1..self.n).map(move |s| (r, s))).map(|(r, s)| self.get(r, s)).collect()
    }
}

impl fmt::Display for StrategyMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let width = self.cells.iter().filter(|v| **v >= 0).map(|v| v.to_string().len()).max().unwrap_or(1);
        for r in 0..self.n {
            let row: Vec<String> = (0..self.n)
                .map(|s| {
                    if r == s {
                        format!("{:>width$}", "*")
                    } else {
                        format!("{:>width$}", self.get(r, s))
                    }
                })
                .collect();
            writeln!(f, "{}", row.join(" "))?;
        }
        Ok(())
    }
}

/// `M_I` of a cyclic ordering.
pub fn strategy_matrix(ord: &PivotOrdering) -> Result<StrategyMatrix> {
    ord.check_cyclic()?;
    let n = ord.n;
    let mut m = StrategyMatrix { n, cells: vec![-1; n * n] };
    for (k, p) in ord.pairs.iter().enumerate() {
        let (r, s) = p.rows();
        m.set(r, s, k as i64);
    }
    Ok(m)
}

/// Parallel-step matrix: each step index is divided by `n/2`, the number of
/// rotations in one parallel step (for `n = 4`, `k / 2`).
pub fn parallel_step_matrix(ord: &PivotOrdering) -> Result<StrategyMatrix> {
    if !ord.n.is_multiple_of(2) {
        return Err(Error::InvalidOrdering(format!("parallel steps need even order, got {}", ord.n)));
    }
    let group = (ord.n / 2) as i64;
    let mut m = strategy_matrix(ord)?;
    for v in m.cells.iter_mut().filter(|v| **v >= 0) {
        *v /= group;
    }
    Ok(m)
}

/// Whether positions `r` and `r + 1` hold disjoint pairs.
pub fn is_admissible_transposition(ord: &PivotOrdering, r: usize) -> Result<bool> {
    if r + 1 >= ord.len() {
        return Err(Error::PositionOutOfRange { position: r, len: ord.len() });
    }
    Ok(ord.pairs[r].is_disjoint(&ord.pairs[r + 1]))
}

fn same_order(a: &PivotOrdering, b: &PivotOrdering) -> Result<()> {
    if a.n != b.n {
        return Err(Error::DimensionMismatch { expected: a.n, found: b.n });
    }
    Ok(())
}

/// Breadth-first search over orderings reachable from `start` through
/// `neighbours`, stopping as soon as `target` is found.
fn reachable(
    start: &[PivotPair],
    target: &[PivotPair],
    cap: usize,
    neighbours: impl Fn(&[PivotPair], &mut Vec<Vec<PivotPair>>),
) -> Result<bool> {
    let mut seen: HashSet<Vec<PivotPair>> = HashSet::new();
    let mut queue = VecDeque::new();
    seen.insert(start.to_vec());
    queue.push_back(start.to_vec());
    let mut next = Vec::new();
    while let Some(cur) = queue.pop_front() {
        if cur == target {
            return Ok(true);
        }
        next.clear();
        neighbours(&cur, &mut next);
        for cand in next.drain(..) {
            if !seen.contains(&cand) {
                if seen.len() >= cap {
                    return Err(Error::SearchCap(cap));
                }
                seen.insert(cand.clone());
                queue.push_back(cand);
            }
        }
    }
    Ok(false)
}

fn transposition_neighbours(cur: &[PivotPair], out: &mut Vec<Vec<PivotPair>>) {
    for r in 0..cur.len().saturating_sub(1) {
        if cur[r].is_disjoint(&cur[r + 1]) {
            let mut v = cur.to_vec();
            v.swap(r, r + 1);
            out.push(v);
        }
    }
}

/// `a ∼ b`: reachable by admissible transpositions.
pub fn equivalent(a: &PivotOrdering, b: &PivotOrdering) -> Result<bool> {
    equivalent_with_cap(a, b, DEFAULT_NODE_CAP)
}

pub fn equivalent_with_cap(a: &PivotOrdering, b: &PivotOrdering, cap: usize) -> Result<bool> {
    same_order(a, b)?;
    if a.len() != b.len() || a.sorted_pairs() != b.sorted_pairs() {
        return Ok(false);
    }
    reachable(&a.pairs, &b.pairs, cap, transposition_neighbours)
}

/// `a s∼ b`: `b` is a cyclic rotation of `a`.
pub fn shift_equivalent(a: &PivotOrdering, b: &PivotOrdering) -> bool {
    if a.n != b.n || a.len() != b.len() {
        return false;
    }
    (0..a.len()).any(|k| a.rotated(k).pairs == b.pairs)
}

/// `a w∼ b`: connected through a chain of `∼` and `s∼` steps. Only order 4
/// is supported.
pub fn weakly_equivalent(a: &PivotOrdering, b: &PivotOrdering) -> Result<bool> {
    same_order(a, b)?;
    if a.n > 4 {
        return Err(Error::UnsupportedOrder { required: 4, found: a.n });
    }
    if a.len() != b.len() || a.sorted_pairs() != b.sorted_pairs() {
        return Ok(false);
    }
    reachable(&a.pairs, &b.pairs, DEFAULT_NODE_CAP, |cur, out| {
        transposition_neighbours(cur, out);
        let mut v = cur.to_vec();
        v.rotate_left(1);
        out.push(v);
    })
}

/// All fully parallel cyclic orderings of order 4: every block order of the
/// three commuting braces `{(1,3),(2,4)}`, `{(1,4),(2,3)}`, `{(1,2),(3,4)}`,
/// with pairs inside a brace kept in increasing order.
pub fn enumerate_parallel_orderings(n: usize) -> Result<Vec<PivotOrdering>> {
    if n != 4 {
        return Err(Error::UnsupportedOrder { required: 4, found: n });
    }
    let braces = [[pair(1, 3), pair(2, 4)], [pair(1, 4), pair(2, 3)], [pair(1, 2), pair(3, 4)]];
    let block_orders = [[0, 1, 2], [0, 2, 1], [1, 0, 2], [1, 2, 0], [2, 0, 1], [2, 1, 0]];
    block_orders
        .iter()
        .map(|order| PivotOrdering::cyclic(4, order.iter().flat_map(|&b| braces[b]).collect()))
        .collect()
}

/// Partitions orderings into shift-equivalence classes, preserving first
/// appearance order. Returns indices into `orderings`.
pub fn shift_classes(orderings: &[PivotOrdering]) -> Vec<Vec<usize>> {
    let mut classes: Vec<Vec<usize>> = Vec::new();
    for (idx, ord) in orderings.iter().enumerate() {
        match classes.iter_mut().find(|c| shift_equivalent(&orderings[c[0]], ord)) {
            Some(c) => c.push(idx),
            None => classes.push(vec![idx]),
        }
    }
    classes
}

/// Whether `Pᵀ M_a P = M_b` for the parallel-step matrices of `a` and `b`.
pub fn permutationally_equivalent(a: &PivotOrdering, b: &PivotOrdering, p: &SignedPermutation) -> Result<bool> {
    same_order(a, b)?;
    let ma = parallel_step_matrix(a)?;
    let mb = parallel_step_matrix(b)?;
    Ok(ma.permuted(p)? == mb)
}

/// The cyclic strategy `I_O(k) = O[k mod N]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CyclicStrategy {
    ordering: PivotOrdering,
}

impl CyclicStrategy {
    pub fn new(ordering: PivotOrdering) -> Result<Self> {
        ordering.check_cyclic()?;
        Ok(CyclicStrategy { ordering })
    }

    pub fn i1() -> Self {
        CyclicStrategy { ordering: ordering_i1() }
    }

    pub fn i2() -> Self {
        CyclicStrategy { ordering: ordering_i2() }
    }

    pub fn ordering(&self) -> &PivotOrdering {
        &self.ordering
    }

    pub fn n(&self) -> usize {
        self.ordering.n
    }

    /// Steps per cycle, `n(n-1)/2`.
    pub fn period(&self) -> usize {
        self.ordering.len()
    }

    pub fn pair_at(&self, k: usize) -> PivotPair {
        self.ordering.pairs[k % self.period()]
    }
}

/// `k ↦ I(k)` for a cyclic ordering.
pub fn cyclic_strategy(ord: &PivotOrdering) -> Result<CyclicStrategy> {
    CyclicStrategy::new(ord.clone())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn all_orderings4() -> Vec<PivotOrdering> {
        let base = ordering_serial_rowwise(4).unwrap().pairs;
        let mut out = Vec::new();
        permute(&mut base.clone(), 0, &mut out);
        out.into_iter().map(|p| PivotOrdering::cyclic(4, p).unwrap()).collect()
    }

    fn permute(v: &mut Vec<PivotPair>, k: usize, out: &mut Vec<Vec<PivotPair>>) {
        if k == v.len() {
            out.push(v.clone());
            return;
        }
        for i in k..v.len() {
            v.swap(k, i);
            permute(v, k + 1, out);
            v.swap(k, i);
        }
    }

    /// Independent `∼` oracle: in a trace monoid two words are equivalent iff
    /// every pair of non-commuting letters appears in the same relative order.
    fn equivalent_by_projection(a: &PivotOrdering, b: &PivotOrdering) -> bool {
        let pos = |o: &PivotOrdering, p: &PivotPair| o.pairs.iter().position(|q| q == p).unwrap();
        a.pairs.iter().all(|x| {
            a.pairs
                .iter()
                .filter(|y| *y != x && !x.is_disjoint(y))
                .all(|y| (pos(a, x) < pos(a, y)) == (pos(b, x) < pos(b, y)))
        })
    }

    /// Independent `w∼` oracle. A cyclic ordering orients the conflict graph
    /// (pairs sharing an index); a shift by one turns a source into a sink.
    /// Two acyclic orientations are related by such flips iff their
    /// circulations agree on a generating set of cycles. For order 4 the
    /// conflict graph is an octahedron, whose eight triangular faces generate
    /// the cycle space.
    fn triangle_circulations(o: &PivotOrdering) -> Vec<i32> {
        let pos = |p: &PivotPair| o.pairs.iter().position(|q| q == p).unwrap() as i32;
        let v = ordering_serial_rowwise(4).unwrap().pairs;
        let mut circ = Vec::new();
        for a in 0..6 {
            for b in a + 1..6 {
                for c in b + 1..6 {
                    let (x, y, z) = (v[a], v[b], v[c]);
                    if x.is_disjoint(&y) || y.is_disjoint(&z) || x.is_disjoint(&z) {
                        continue;
                    }
                    let dir = |s: &PivotPair, t: &PivotPair| if pos(s) < pos(t) { 1 } else { -1 };
                    circ.push(dir(&x, &y) + dir(&y, &z) + dir(&z, &x));
                }
            }
        }
        assert_eq!(circ.len(), 8);
        circ
    }

    #[test]
    fn named_orderings_match_listing() {
        let t = |o: PivotOrdering| o.pairs.iter().map(|p| (p.i, p.j)).collect::<Vec<_>>();
        assert_eq!(t(ordering_i1()), vec![(1, 3), (2, 4), (1, 4), (2, 3), (1, 2), (3, 4)]);
        assert_eq!(t(ordering_i2()), vec![(1, 4), (2, 3), (1, 3), (2, 4), (1, 2), (3, 4)]);
    }

    #[test]
    fn strategy_matrices_of_i1_and_i2() {
        let m1 = StrategyMatrix::from_grid(&[&[-1, 4, 0, 2], &[4, -1, 3, 1], &[0, 3, -1, 5], &[2, 1, 5, -1]]).unwrap();
        let m2 = StrategyMatrix::from_grid(&[&[-1, 4, 2, 0], &[4, -1, 1, 3], &[2, 1, -1, 5], &[0, 3, 5, -1]]).unwrap();
        assert_eq!(strategy_matrix(&ordering_i1()).unwrap(), m1);
        assert_eq!(strategy_matrix(&ordering_i2()).unwrap(), m2);
        assert_eq!(strategy_matrix(&ordering_i1()).unwrap().to_string(), "* 4 0 2\n4 * 3 1\n0 3 * 5\n2 1 5 *\n");
    }

    #[test]
    fn parallel_step_matrices() {
        let b1 = StrategyMatrix::from_grid(&[&[-1, 2, 0, 1], &[2, -1, 1, 0], &[0, 1, -1, 2], &[1, 0, 2, -1]]).unwrap();
        let b2 = StrategyMatrix::from_grid(&[&[-1, 2, 1, 0], &[2, -1, 0, 1], &[1, 0, -1, 2], &[0, 1, 2, -1]]).unwrap();
        assert_eq!(parallel_step_matrix(&ordering_i1()).unwrap(), b1);
        assert_eq!(parallel_step_matrix(&ordering_i2()).unwrap(), b2);
    }

    #[test]
    fn strategy_matrix_entries_are_a_permutation() {
        for o in all_orderings4() {
            let mut e = strategy_matrix(&o).unwrap().upper_entries();
            e.sort();
            assert_eq!(e, vec![0, 1, 2, 3, 4, 5]);
        }
    }

    #[test]
    fn admissible_transpositions() {
        let o = ordering_i1();
        assert!(is_admissible_transposition(&o, 0).unwrap());
        let scan: Vec<bool> = (0..5).map(|r| is_admissible_transposition(&o, r).unwrap()).collect();
        assert_eq!(scan, vec![true, false, true, false, true]);
        let shared = PivotOrdering::from_tuples(4, &[(1, 3), (1, 4), (2, 4)]).unwrap();
        assert!(!is_admissible_transposition(&shared, 0).unwrap());
        assert!(matches!(is_admissible_transposition(&o, 5), Err(Error::PositionOutOfRange { .. })));
    }

    #[test]
    fn equivalence_examples() {
        let o1 = ordering_i1();
        assert!(equivalent(&o1, &o1).unwrap());
        let mut swapped = o1.pairs.clone();
        swapped.swap(0, 1);
        assert!(equivalent(&o1, &PivotOrdering::cyclic(4, swapped).unwrap()).unwrap());
        assert!(!equivalent(&o1, &ordering_i2()).unwrap());
    }

    #[test]
    fn equivalence_bfs_agrees_with_projection_oracle() {
        let all = all_orderings4();
        let o1 = ordering_i1();
        let o2 = ordering_i2();
        for b in &all {
            assert_eq!(equivalent(&o1, b).unwrap(), equivalent_by_projection(&o1, b), "{b}");
            assert_eq!(equivalent(&o2, b).unwrap(), equivalent_by_projection(&o2, b), "{b}");
        }
    }

    #[test]
    fn shift_equivalence_examples() {
        let o1 = ordering_i1();
        assert!(shift_equivalent(&o1, &ordering_o1_prime()));
        assert!(shift_equivalent(&o1, &ordering_o1_double_prime()));
        assert!(!shift_equivalent(&o1, &ordering_o2_prime()));
        assert!(shift_equivalent(&o1, &o1));
        assert!(shift_equivalent(&ordering_i2(), &ordering_o2_double_prime()));
    }

    #[test]
    fn weak_equivalence_examples() {
        let o1 = ordering_i1();
        assert!(weakly_equivalent(&o1, &ordering_o1_double_prime()).unwrap());
        assert!(weakly_equivalent(&o1, &o1).unwrap());
        // Frozen from the circulation oracle below: I1 and I2 are not weakly
        // equivalent.
        assert_ne!(triangle_circulations(&o1), triangle_circulations(&ordering_i2()));
        assert!(!weakly_equivalent(&o1, &ordering_i2()).unwrap());
    }

    #[test]
    fn weak_equivalence_bfs_agrees_with_circulation_oracle() {
        let all = all_orderings4();
        let o1 = ordering_i1();
        let c1 = triangle_circulations(&o1);
        for b in all.iter().step_by(7) {
            assert_eq!(weakly_equivalent(&o1, b).unwrap(), triangle_circulations(b) == c1, "{b}");
        }
    }

    #[test]
    fn weak_equivalence_rejects_large_orders() {
        let a = ordering_serial_rowwise(5).unwrap();
        assert!(matches!(weakly_equivalent(&a, &a), Err(Error::UnsupportedOrder { .. })));
    }

    #[test]
    fn equivalence_search_cap() {
        let a = ordering_serial_rowwise(8).unwrap();
        let b = a.rotated(3);
        assert!(matches!(equivalent_with_cap(&a, &b, 50), Err(Error::SearchCap(50))));
    }

    #[test]
    fn six_parallel_orderings_in_two_classes() {
        let all = enumerate_parallel_orderings(4).unwrap();
        assert_eq!(all.len(), 6);
        let classes = shift_classes(&all);
        assert_eq!(classes.len(), 2);
        assert!(classes.iter().all(|c| c.len() == 3));
        let as_set = |c: &Vec<usize>| {
            let mut v: Vec<String> = c.iter().map(|&i| all[i].to_string()).collect();
            v.sort();
            v
        };
        let expect = |os: [PivotOrdering; 3]| {
            let mut v: Vec<String> = os.iter().map(ToString::to_string).collect();
            v.sort();
            v
        };
        let class1 = expect([ordering_i1(), ordering_o1_prime(), ordering_o1_double_prime()]);
        let class2 = expect([ordering_i2(), ordering_o2_prime(), ordering_o2_double_prime()]);
        let got: Vec<Vec<String>> = classes.iter().map(as_set).collect();
        assert!(got.contains(&class1) && got.contains(&class2));
        let mut union: Vec<PivotPair> = all.iter().flat_map(|o| o.pairs.clone()).collect();
        union.sort();
        union.dedup();
        assert_eq!(union, ordering_serial_rowwise(4).unwrap().sorted_pairs());
        assert!(enumerate_parallel_orderings(6).is_err());
    }

    #[test]
    fn permutational_equivalence() {
        let p12 = SignedPermutation::transposition(4, 1, 2).unwrap();
        let p34 = SignedPermutation::transposition(4, 3, 4).unwrap();
        assert!(permutationally_equivalent(&ordering_i1(), &ordering_i2(), &p12).unwrap());
        assert!(permutationally_equivalent(&ordering_i1(), &ordering_i2(), &p34).unwrap());
        assert!(!permutationally_equivalent(&ordering_i1(), &ordering_i1(), &p12).unwrap());
        assert!(permutationally_equivalent(&ordering_i1(), &ordering_i2(), &SignedPermutation::q4()).is_err());
    }

    #[test]
    fn cyclic_strategy_indexing() {
        let i1 = cyclic_strategy(&ordering_i1()).unwrap();
        assert_eq!(i1.pair_at(0), pair(1, 3));
        assert_eq!(i1.pair_at(6), pair(1, 3));
        assert_eq!(i1.pair_at(11), pair(3, 4));
        let short = PivotOrdering::from_tuples(4, &[(1, 2), (3, 4)]).unwrap();
        assert!(cyclic_strategy(&short).is_err());
    }

    #[test]
    fn ordering_json_and_validation() {
        let o = PivotOrdering::from_json("[[1,3],[2,4],[1,4],[2,3],[1,2],[3,4]]").unwrap();
        assert_eq!(o, ordering_i1());
        assert_eq!(o.to_json(), "[[1,3],[2,4],[1,4],[2,3],[1,2],[3,4]]");
        let dup = PivotOrdering::from_json("[[1,3],[1,3],[1,4],[2,3],[1,2],[3,4]]").unwrap();
        assert!(matches!(CyclicStrategy::new(dup), Err(Error::InvalidOrdering(_))));
        assert!(PivotOrdering::from_json("[[2,2]]").is_err());
        assert_eq!(PivotPair::new(4, 1).unwrap(), pair(1, 4));
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        fn any_ordering4() -> impl Strategy<Value = PivotOrdering> {
            Just(ordering_serial_rowwise(4).unwrap().pairs)
                .prop_shuffle()
                .prop_map(|p| PivotOrdering::cyclic(4, p).unwrap())
        }

        proptest! {
            #![proptest_config(ProptestConfig::with_cases(64))]

            #[test]
            fn relations_are_equivalences(a in any_ordering4(), b in any_ordering4(), c in any_ordering4()) {
                type Rel = fn(&PivotOrdering, &PivotOrdering) -> bool;
                let rels: [Rel; 3] = [
                    |x, y| equivalent(x, y).unwrap(),
                    shift_equivalent,
                    |x, y| weakly_equivalent(x, y).unwrap(),
                ];
                for rel in rels {
                    prop_assert!(rel(&a, &a));
                    prop_assert_eq!(rel(&a, &b), rel(&b, &a));
                    if rel(&a, &b) && rel(&b, &c) {
                        prop_assert!(rel(&a, &c));
                    }
                }
            }

            #[test]
            fn strong_relations_imply_weak(a in any_ordering4(), b in any_ordering4(), k in 0usize..6) {
                if equivalent(&a, &b).unwrap() || shift_equivalent(&a, &b) {
                    prop_assert!(weakly_equivalent(&a, &b).unwrap());
                }
                let shifted = a.rotated(k);
                prop_assert!(shift_equivalent(&a, &shifted));
                prop_assert!(weakly_equivalent(&a, &shifted).unwrap());
            }
        }
    }
}
