//! 4-uniform hypergraphs: Baber's diamond hypergraph, the FF₄ property,
//! 3-design checks, edge-count bounds and deletion counting.

use std::collections::{BTreeMap, BTreeSet, HashSet};

use num_rational::Rational64;

use crate::error::{input, Result};
use crate::tournament::Tournament;

pub type Edge = [u32; 4];

fn binom(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1u64, |acc, i| acc * (n - i) / (i + 1))
}

/// Colex rank of a sorted 4-subset.
#[inline]
fn rank4(e: &Edge) -> u64 {
    binom(e[0] as u64, 1) + binom(e[1] as u64, 2) + binom(e[2] as u64, 3) + binom(e[3] as u64, 4)
}

#[inline]
fn rank3(t: &[u32; 3]) -> usize {
    (binom(t[0] as u64, 1) + binom(t[1] as u64, 2) + binom(t[2] as u64, 3)) as usize
}

// Dense membership bitmap is used while C(n,4) stays below this.
const DENSE_EDGE_LIMIT: u64 = 1 << 26;
const DENSE_TRIPLE_MAX_ORDER: usize = 64;

#[derive(Clone, Debug)]
enum Membership {
    Dense(Vec<u64>),
    Hashed(HashSet<Edge>),
}

/// A 4-uniform hypergraph on `0..n`, edges kept sorted and deduplicated.
#[derive(Clone, Debug)]
pub struct Hypergraph4 {
    n: usize,
    edges: BTreeSet<Edge>,
    membership: Membership,
}

impl PartialEq for Hypergraph4 {
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n && self.edges == other.edges
    }
}

impl Eq for Hypergraph4 {}

fn normalise(n: usize, raw: [u32; 4]) -> Result<Edge> {
    let mut e = raw;
    e.sort_unstable();
    if e.windows(2).any(|w| w[0] == w[1]) {
        return input(format!("edge {raw:?} has repeated vertices"));
    }
    if e[3] as usize >= n {
        return input(format!("edge {raw:?} has a vertex outside 0..{n}"));
    }
    Ok(e)
}

impl Hypergraph4 {
    pub fn new(n: usize, edges: impl IntoIterator<Item = [u32; 4]>) -> Result<Self> {
        let mut set = BTreeSet::new();
        for raw in edges {
            let e = normalise(n, raw)?;
            if !set.insert(e) {
                return input(format!("duplicate edge {e:?}"));
            }
        }
        Ok(Self::from_set(n, set))
    }

    fn from_set(n: usize, edges: BTreeSet<Edge>) -> Self {
        let slots = binom(n as u64, 4);
        let membership = if slots <= DENSE_EDGE_LIMIT {
            let mut bits = vec![0u64; (slots as usize).div_ceil(64).max(1)];
            for e in &edges {
                let r = rank4(e) as usize;
                bits[r / 64] |= 1 << (r % 64);
            }
            Membership::Dense(bits)
        } else {
            Membership::Hashed(edges.iter().copied().collect())
        };
        Self { n, edges, membership }
    }

    pub fn order(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> impl Iterator<Item = &Edge> {
        self.edges.iter()
    }

    /// Membership test for a sorted 4-subset.
    #[inline]
    pub fn contains(&self, e: &Edge) -> bool {
        match &self.membership {
            Membership::Dense(bits) => {
                let r = rank4(e) as usize;
                bits[r / 64] >> (r % 64) & 1 == 1
            }
            Membership::Hashed(set) => set.contains(e),
        }
    }

    /// Copy without the given edge.
    pub fn without_edge(&self, e: [u32; 4]) -> Result<Self> {
        let e = normalise(self.n, e)?;
        let mut edges = self.edges.clone();
        if !edges.remove(&e) {
            return input(format!("edge {e:?} not present"));
        }
        Ok(Self::from_set(self.n, edges))
    }

    /// Edges avoiding `drop`, on the remaining vertices relabelled in order.
    pub fn delete_vertices(&self, drop: &[usize]) -> Result<Self> {
        let gone = self.drop_mask(drop)?;
        let mut relabel = vec![u32::MAX; self.n];
        let mut next = 0;
        for v in 0..self.n {
            if !gone[v] {
                relabel[v] = next;
                next += 1;
            }
        }
        let edges = self
            .edges
            .iter()
            .filter(|e| e.iter().all(|&v| !gone[v as usize]))
            .map(|e| e.map(|v| relabel[v as usize]))
            .collect();
        Ok(Self::from_set(next as usize, edges))
    }

    fn drop_mask(&self, drop: &[usize]) -> Result<Vec<bool>> {
        let mut gone = vec![false; self.n];
        for &v in drop {
            if v >= self.n {
                return input(format!("vertex {v} out of range for order {}", self.n));
            }
            gone[v] = true;
        }
        Ok(gone)
    }

    /// Number of edges through each vertex.
    pub fn degrees(&self) -> Vec<u64> {
        let mut deg = vec![0u64; self.n];
        for e in &self.edges {
            for &v in e {
                deg[v as usize] += 1;
            }
        }
        deg
    }
}

/// Hyperedges are the 4-sets inducing a diamond in `t`.
pub fn baber(t: &Tournament) -> Hypergraph4 {
    let n = t.order();
    let mut edges = BTreeSet::new();
    for a in 0..n {
        for b in (a + 1)..n {
            for c in (b + 1)..n {
                for d in (c + 1)..n {
                    if t.is_diamond_unchecked([a, b, c, d]) {
                        edges.insert([a as u32, b as u32, c as u32, d as u32]);
                    }
                }
            }
        }
    }
    Hypergraph4::from_set(n, edges)
}

/// Outcome of the FF₄ check.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Ff4Check {
    Ok,
    /// Lexicographically least 5-set holding neither 0 nor 2 edges.
    Violated { five_set: [u32; 5], edges: u32 },
}

impl Ff4Check {
    pub fn is_ok(&self) -> bool {
        matches!(self, Ff4Check::Ok)
    }
}

/// Least violating 5-set whose smallest vertex is in `firsts`.
fn scan_ff4(h: &Hypergraph4, firsts: impl Iterator<Item = usize>) -> Option<([u32; 5], u32)> {
    let n = h.n as u32;
    for a in firsts {
        let a = a as u32;
        for b in (a + 1)..n {
            for c in (b + 1)..n {
                for d in (c + 1)..n {
                    let base = h.contains(&[a, b, c, d]) as u32;
                    for e in (d + 1)..n {
                        let cnt = base
                            + h.contains(&[a, b, c, e]) as u32
                            + h.contains(&[a, b, d, e]) as u32
                            + h.contains(&[a, c, d, e]) as u32
                            + h.contains(&[b, c, d, e]) as u32;
                        if cnt != 0 && cnt != 2 {
                            return Some(([a, b, c, d, e], cnt));
                        }
                    }
                }
            }
        }
    }
    None
}

/// Checks that every 5-set holds 0 or 2 edges.
///
/// With `threads > 1` the smallest vertex of the 5-set is dealt round-robin
/// to workers; the reported counterexample is still the lexicographically
/// least one.
pub fn verify_ff4(h: &Hypergraph4, threads: usize) -> Result<Ff4Check> {
    if h.n < 5 {
        return input(format!("FF4 check needs at least 5 vertices, got {}", h.n));
    }
    let threads = threads.clamp(1, h.n);
    let found = if threads == 1 {
        scan_ff4(h, 0..h.n)
    } else {
        std::thread::scope(|scope| {
            let workers: Vec<_> = (0..threads)
                .map(|w| scope.spawn(move || scan_ff4(h, (w..h.n).step_by(threads))))
                .collect();
            workers.into_iter().filter_map(|w| w.join().expect("ff4 worker panicked")).min()
        })
    };
    Ok(match found {
        None => Ff4Check::Ok,
        Some((five_set, edges)) => Ff4Check::Violated { five_set, edges },
    })
}

#[derive(Clone, Debug)]
enum TripleCounts {
    Dense(Vec<u32>),
    Sparse(BTreeMap<[u32; 3], u32>),
}

/// Number of edges through every 3-subset.
#[derive(Clone, Debug)]
pub struct TripleProfile {
    n: usize,
    counts: TripleCounts,
}

impl TripleProfile {
    /// Count for a sorted triple.
    pub fn get(&self, t: [u32; 3]) -> u32 {
        match &self.counts {
            TripleCounts::Dense(v) => v[rank3(&t)],
            TripleCounts::Sparse(m) => m.get(&t).copied().unwrap_or(0),
        }
    }

    /// Number of triples, zeros included.
    pub fn triple_count(&self) -> u64 {
        binom(self.n as u64, 3)
    }

    pub fn total(&self) -> u64 {
        self.nonzero().map(|c| c as u64).sum()
    }

    pub fn sum_of_squares(&self) -> u64 {
        self.nonzero().map(|c| (c as u64) * (c as u64)).sum()
    }

    fn nonzero(&self) -> Box<dyn Iterator<Item = u32> + '_> {
        match &self.counts {
            TripleCounts::Dense(v) => Box::new(v.iter().copied().filter(|&c| c > 0)),
            TripleCounts::Sparse(m) => Box::new(m.values().copied()),
        }
    }

    /// Whether every triple lies in exactly `lambda` edges.
    pub fn is_constant(&self, lambda: u32) -> bool {
        match &self.counts {
            TripleCounts::Dense(v) => v.iter().all(|&c| c == lambda),
            TripleCounts::Sparse(m) => {
                if lambda == 0 {
                    m.is_empty()
                } else {
                    m.len() as u64 == self.triple_count() && m.values().all(|&c| c == lambda)
                }
            }
        }
    }

    /// Histogram `count -> number of triples`.
    pub fn histogram(&self) -> BTreeMap<u32, u64> {
        let mut hist = BTreeMap::new();
        let mut nonzero = 0;
        for c in self.nonzero() {
            *hist.entry(c).or_insert(0) += 1;
            nonzero += 1;
        }
        let zeros = self.triple_count() - nonzero;
        if zeros > 0 {
            hist.insert(0, zeros);
        }
        hist
    }
}

pub fn triple_profile(h: &Hypergraph4) -> TripleProfile {
    let subs = |e: &Edge| [[e[0], e[1], e[2]], [e[0], e[1], e[3]], [e[0], e[2], e[3]], [e[1], e[2], e[3]]];
    let counts = if h.n <= DENSE_TRIPLE_MAX_ORDER {
        let mut v = vec![0u32; binom(h.n as u64, 3) as usize];
        for e in &h.edges {
            for t in subs(e) {
                v[rank3(&t)] += 1;
            }
        }
        TripleCounts::Dense(v)
    } else {
        let mut m = BTreeMap::new();
        for e in &h.edges {
            for t in subs(e) {
                *m.entry(t).or_insert(0) += 1;
            }
        }
        TripleCounts::Sparse(m)
    };
    TripleProfile { n: h.n, counts }
}

/// FF₄ and every triple in exactly `n/4` edges. Requires `n ≡ 0 (mod 4)`.
pub fn is_ff4_design(h: &Hypergraph4) -> Result<bool> {
    if h.n % 4 != 0 || h.n == 0 {
        return input(format!("FF4 designs need n divisible by 4, got {}", h.n));
    }
    let lambda = (h.n / 4) as u32;
    // a 3-(n,4,λ) design with n = 4 has one block and no 5-sets to check
    if h.n == 4 {
        return Ok(triple_profile(h).is_constant(lambda));
    }
    Ok(triple_profile(h).is_constant(lambda) && verify_ff4(h, 1)?.is_ok())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BoundStatus {
    Proven,
    Conjectural,
}

impl BoundStatus {
    pub fn as_str(self) -> &'static str {
        match self {
            BoundStatus::Proven => "proven",
            BoundStatus::Conjectural => "conjectural",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EdgeBound {
    pub value: Rational64,
    pub status: BoundStatus,
}

/// Largest edge count of an FF₄ hypergraph on `n` vertices, by residue of `n` mod 4.
/// Classes 1 and 2 are conjectural.
pub fn edge_count_bound(n: usize) -> Result<EdgeBound> {
    if n < 5 {
        return input(format!("edge bound needs n >= 5, got {n}"));
    }
    let m = n as i64;
    let (num, status) = match n % 4 {
        0 => (m * m * (m - 1) * (m - 2), BoundStatus::Proven),
        3 => (m * (m - 1) * (m - 3) * (m + 1), BoundStatus::Proven),
        2 => (m * (m - 3) * (m + 2) * (m - 2), BoundStatus::Conjectural),
        _ => ((m - 1) * (m - 2) * (m - 3) * (m + 3), BoundStatus::Conjectural),
    };
    Ok(EdgeBound { value: Rational64::new(num, 96), status })
}

/// Number of blocks of a `t-(n,k,λ)` design containing a fixed `s`-set:
/// `λ·C(n-s, t-s)/C(k-s, t-s)`. `s = 0` gives the block count.
pub fn design_block_counts(n: u64, k: u64, t: u64, lambda: u64, s: u64) -> Result<Rational64> {
    if !(s <= t && t <= k && k <= n) || lambda == 0 {
        return input(format!("need 0 <= s <= t <= k <= n and lambda >= 1, got n={n} k={k} t={t} lambda={lambda} s={s}"));
    }
    Ok(Rational64::new(
        (lambda * binom(n - s, t - s)) as i64,
        binom(k - s, t - s) as i64,
    ))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DeletionCount {
    pub observed: u64,
    /// Inclusion–exclusion over the design parameters; only for FF₄ designs.
    pub predicted: Option<Rational64>,
}

/// Edges avoiding `drop` (at most three vertices), and for an FF₄ design the
/// count predicted from its `3-(n,4,n/4)` parameters alone.
pub fn delete_vertices_count(h: &Hypergraph4, drop: &[usize]) -> Result<DeletionCount> {
    let gone = h.drop_mask(drop)?;
    let d = gone.iter().filter(|&&g| g).count();
    if d > 3 {
        return input(format!("at most 3 vertices can be dropped, got {d}"));
    }
    let observed = h.edges.iter().filter(|e| e.iter().all(|&v| !gone[v as usize])).count() as u64;
    let design = h.n % 4 == 0 && h.n >= 4 && is_ff4_design(h)?;
    let predicted = if design {
        let lambda = (h.n / 4) as u64;
        let mut acc = Rational64::from_integer(0);
        for j in 0..=d as u64 {
            let term = design_block_counts(h.n as u64, 4, 3, lambda, j)? * binom(d as u64, j) as i64;
            if j % 2 == 0 {
                acc += term;
            } else {
                acc -= term;
            }
        }
        Some(acc)
    } else {
        None
    };
    Ok(DeletionCount { observed, predicted })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MinSquares {
    pub minimum: u64,
    /// Nondecreasing: `p - h` parts equal to `k`, then `h` parts equal to `k + 1`.
    pub witness: Vec<u64>,
}

/// Least `Σ xᵢ²` over `p` nonnegative integers summing to `s`.
/// With `s = pk + h`, `0 ≤ h < p`: `h(k+1)² + (p-h)k²`.
pub fn min_sum_squares(s: u64, p: u64) -> Result<MinSquares> {
    if p == 0 {
        return input("number of parts must be positive");
    }
    let (k, h) = (s / p, s % p);
    let minimum = h * (k + 1) * (k + 1) + (p - h) * k * k;
    let mut witness = vec![k; (p - h) as usize];
    witness.extend(std::iter::repeat_n(k + 1, h as usize));
    Ok(MinSquares { minimum, witness })
}

/// Whether every part is `⌊s/p⌋` or `⌊s/p⌋ + 1`, `s` being the sum of the parts.
/// This characterises the minimisers of [`min_sum_squares`].
pub fn is_balanced(parts: &[u64]) -> bool {
    if parts.is_empty() {
        return false;
    }
    let s: u64 = parts.iter().sum();
    let k = s / parts.len() as u64;
    parts.iter().all(|&x| x == k || x == k + 1)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tournament::random_tournament;

    fn h(n: usize, edges: &[[u32; 4]]) -> Hypergraph4 {
        Hypergraph4::new(n, edges.iter().copied()).unwrap()
    }

    #[test]
    fn construction_errors() {
        assert!(Hypergraph4::new(5, [[0, 1, 2, 2]]).is_err());
        assert!(Hypergraph4::new(5, [[0, 1, 2, 5]]).is_err());
        assert!(Hypergraph4::new(5, [[0, 1, 2, 3], [3, 2, 1, 0]]).is_err());
        let g = h(5, &[[3, 1, 0, 2]]);
        assert!(g.contains(&[0, 1, 2, 3]));
        assert!(!g.contains(&[0, 1, 2, 4]));
    }

    #[test]
    fn ff4_examples() {
        assert_eq!(verify_ff4(&h(5, &[[0, 1, 2, 3], [0, 1, 2, 4]]), 1).unwrap(), Ff4Check::Ok);
        assert_eq!(
            verify_ff4(&h(5, &[[0, 1, 2, 3]]), 1).unwrap(),
            Ff4Check::Violated { five_set: [0, 1, 2, 3, 4], edges: 1 }
        );
        assert!(verify_ff4(&h(4, &[]), 1).is_err());
    }

    #[test]
    fn ff4_least_counterexample_independent_of_threads() {
        let mut edges = vec![];
        for (i, e) in [[1, 2, 3, 4], [0, 5, 6, 7], [2, 3, 5, 8], [0, 1, 2, 9]].into_iter().enumerate() {
            if i != 1 {
                edges.push(e);
            }
        }
        let g = h(10, &edges);
        let single = verify_ff4(&g, 1).unwrap();
        assert!(!single.is_ok());
        for t in 2..6 {
            assert_eq!(verify_ff4(&g, t).unwrap(), single);
        }
    }

    #[test]
    fn baber_random_is_ff4() {
        for seed in 0..40 {
            let n = 5 + seed as usize % 8;
            let t = random_tournament(n, seed).unwrap();
            let g = baber(&t);
            assert_eq!(g.edge_count() as u64, t.count_diamonds_naive());
            assert!(verify_ff4(&g, 1).unwrap().is_ok());
        }
    }

    #[test]
    fn baber_transitive_empty() {
        assert_eq!(baber(&Tournament::transitive(9).unwrap()).edge_count(), 0);
    }

    #[test]
    fn triple_profiles() {
        let empty = triple_profile(&h(6, &[]));
        assert!(empty.is_constant(0));
        assert_eq!(empty.histogram(), BTreeMap::from([(0, 20)]));
        let single = triple_profile(&h(5, &[[0, 1, 2, 3]]));
        assert_eq!(single.histogram(), BTreeMap::from([(0, 6), (1, 4)]));
        assert_eq!(single.get([0, 1, 3]), 1);
        assert_eq!(single.get([0, 1, 4]), 0);
        assert_eq!(single.total(), 4);
    }

    #[test]
    fn sparse_profile_agrees_with_dense() {
        let t = random_tournament(66, 3).unwrap();
        let g = baber(&t);
        let p = triple_profile(&g);
        assert!(matches!(p.counts, TripleCounts::Sparse(_)));
        assert_eq!(p.total(), 4 * g.edge_count() as u64);
        let sub = g.delete_vertices(&[64, 65]).unwrap();
        let q = triple_profile(&sub);
        assert!(matches!(q.counts, TripleCounts::Dense(_)));
        let direct = |h: &Hypergraph4, t: [u32; 3]| {
            h.edges().filter(|e| t.iter().all(|v| e.contains(v))).count() as u32
        };
        for t in [[0, 1, 2], [3, 17, 40], [10, 63, 65], [61, 62, 63]] {
            assert_eq!(p.get(t), direct(&g, t));
            if t[2] < 64 {
                assert_eq!(q.get(t), direct(&sub, t));
            }
        }
        assert_eq!(q.total(), 4 * sub.edge_count() as u64);
    }

    #[test]
    fn bounds_by_residue() {
        let r = Rational64::from_integer;
        assert_eq!(edge_count_bound(8).unwrap(), EdgeBound { value: r(28), status: BoundStatus::Proven });
        assert_eq!(edge_count_bound(7).unwrap(), EdgeBound { value: r(14), status: BoundStatus::Proven });
        assert_eq!(edge_count_bound(6).unwrap(), EdgeBound { value: r(6), status: BoundStatus::Conjectural });
        assert_eq!(edge_count_bound(5).unwrap(), EdgeBound { value: r(2), status: BoundStatus::Conjectural });
        assert!(edge_count_bound(4).is_err());
    }

    #[test]
    fn block_counts() {
        let r = Rational64::from_integer;
        assert_eq!(design_block_counts(8, 4, 3, 2, 0).unwrap(), r(28));
        assert_eq!(design_block_counts(8, 4, 3, 2, 1).unwrap(), r(14));
        assert_eq!(design_block_counts(8, 4, 3, 2, 2).unwrap(), r(6));
        assert_eq!(design_block_counts(8, 4, 3, 2, 3).unwrap(), r(2));
        assert!(design_block_counts(8, 4, 3, 2, 4).is_err());
        assert!(design_block_counts(8, 4, 3, 0, 1).is_err());
        assert!(design_block_counts(3, 4, 3, 1, 0).is_err());
    }

    #[test]
    fn min_squares_examples() {
        assert_eq!(min_sum_squares(8, 4).unwrap(), MinSquares { minimum: 16, witness: vec![2, 2, 2, 2] });
        assert_eq!(min_sum_squares(11, 4).unwrap(), MinSquares { minimum: 31, witness: vec![2, 3, 3, 3] });
        assert_eq!(min_sum_squares(0, 3).unwrap(), MinSquares { minimum: 0, witness: vec![0, 0, 0] });
        assert!(min_sum_squares(3, 0).is_err());
        assert!(is_balanced(&[2, 3, 3]) && !is_balanced(&[1, 3, 4]));
    }

    #[test]
    fn deletion_counts_without_design() {
        let g = h(6, &[[0, 1, 2, 3], [0, 1, 2, 4], [1, 2, 3, 5]]);
        let c = delete_vertices_count(&g, &[4]).unwrap();
        assert_eq!(c, DeletionCount { observed: 2, predicted: None });
        assert!(delete_vertices_count(&g, &[0, 1, 2, 3]).is_err());
        assert!(delete_vertices_count(&g, &[6]).is_err());
    }
}
