//! Tournaments stored as row bitsets, diamond detection and counting.
//!
//! Row `i` holds the out-neighbourhood of vertex `i`: bit `j` is set when
//! `i` dominates `j`. Orders up to 64 use a single machine word per row.

use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{input, Result};

pub const MIN_ORDER: usize = 3;
pub const MAX_ORDER: usize = 512;

/// A complete, antisymmetric, irreflexive dominance relation on `0..n`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Tournament {
    n: usize,
    words: usize,
    rows: Vec<u64>,
}

/// Kind of invariant broken by a raw dominance relation.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ViolationKind {
    /// `dom(i,i)` is set.
    Reflexive,
    /// Both `dom(i,j)` and `dom(j,i)` are set.
    BothDirections,
    /// Neither `dom(i,j)` nor `dom(j,i)` is set.
    NoArc,
    /// The relation is not square, or its order is outside the supported range.
    Shape,
}

/// First violated pair found while validating a raw relation.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Violation {
    pub i: usize,
    pub j: usize,
    pub kind: ViolationKind,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let what = match self.kind {
            ViolationKind::Reflexive => "vertex dominates itself",
            ViolationKind::BothDirections => "arc present in both directions",
            ViolationKind::NoArc => "pair has no arc",
            ViolationKind::Shape => "relation is not a square matrix of supported order",
        };
        write!(f, "{what} at ({}, {})", self.i, self.j)
    }
}

/// Checks a raw dominance matrix against the tournament invariants.
///
/// Pairs are scanned row-major; the first offending pair is reported.
pub fn validate(dom: &[Vec<bool>]) -> std::result::Result<(), Violation> {
    let n = dom.len();
    if !(MIN_ORDER..=MAX_ORDER).contains(&n) {
        return Err(Violation { i: n, j: n, kind: ViolationKind::Shape });
    }
    if let Some(i) = dom.iter().position(|row| row.len() != n) {
        return Err(Violation { i, j: dom[i].len(), kind: ViolationKind::Shape });
    }
    for i in 0..n {
        for j in 0..n {
            if i == j {
                if dom[i][i] {
                    return Err(Violation { i, j, kind: ViolationKind::Reflexive });
                }
            } else {
                match (dom[i][j], dom[j][i]) {
                    (true, true) => {
                        return Err(Violation { i, j, kind: ViolationKind::BothDirections })
                    }
                    (false, false) => return Err(Violation { i, j, kind: ViolationKind::NoArc }),
                    _ => {}
                }
            }
        }
    }
    Ok(())
}

/// A single arc reversal `i -> j` becoming `j -> i`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ArcFlip {
    pub i: usize,
    pub j: usize,
}

#[inline(always)]
fn words_for(n: usize) -> usize {
    n.div_ceil(64)
}

fn check_order(n: usize) -> Result<()> {
    if !(MIN_ORDER..=MAX_ORDER).contains(&n) {
        return input(format!("tournament order {n} outside {MIN_ORDER}..={MAX_ORDER}"));
    }
    Ok(())
}

/// Number of 4-subsets of an `n`-set.
pub fn choose4(n: u64) -> u64 {
    if n < 4 {
        0
    } else {
        n * (n - 1) * (n - 2) * (n - 3) / 24
    }
}

/// Scores of four vertices inside the induced 4-tournament form a diamond
/// exactly when their squares sum to 12: the four score sequences are
/// transitive (0,1,2,3) -> 14, diamonds (1,1,1,3) and (0,2,2,2) -> 12,
/// strong (1,1,2,2) -> 10.
#[inline(always)]
fn diamond_scores(s: [u32; 4]) -> bool {
    s[0] * s[0] + s[1] * s[1] + s[2] * s[2] + s[3] * s[3] == 12
}

impl Tournament {
    /// Builds a tournament from an orientation rule on pairs `i < j`:
    /// `lower_wins(i, j)` decides whether `i` dominates `j`.
    pub fn from_fn(n: usize, mut lower_wins: impl FnMut(usize, usize) -> bool) -> Result<Self> {
        check_order(n)?;
        let mut t = Self::empty(n);
        for i in 0..n {
            for j in (i + 1)..n {
                if lower_wins(i, j) {
                    t.set_bit(i, j);
                } else {
                    t.set_bit(j, i);
                }
            }
        }
        Ok(t)
    }

    fn empty(n: usize) -> Self {
        let words = words_for(n);
        Self { n, words, rows: vec![0; n * words] }
    }

    /// Validates and converts a raw dominance matrix.
    pub fn from_matrix(dom: &[Vec<bool>]) -> Result<Self> {
        validate(dom).map_err(|v| crate::Error::Input(v.to_string()))?;
        Self::from_fn(dom.len(), |i, j| dom[i][j])
    }

    /// The transitive tournament where `i` dominates `j` iff `i < j`.
    pub fn transitive(n: usize) -> Result<Self> {
        Self::from_fn(n, |_, _| true)
    }

    /// Decodes the upper-triangle encoding: pairs `(i, j)`, `i < j`, in
    /// row-major order; `true` means the lower index dominates.
    pub fn from_encoding(n: usize, bits: &[bool]) -> Result<Self> {
        let m = n * n.saturating_sub(1) / 2;
        if bits.len() != m {
            return input(format!("encoding of order {n} needs {m} bits, got {}", bits.len()));
        }
        let mut it = bits.iter();
        Self::from_fn(n, |_, _| *it.next().unwrap())
    }

    /// Upper-triangle encoding, inverse of [`Tournament::from_encoding`].
    pub fn encoding(&self) -> Vec<bool> {
        let mut out = Vec::with_capacity(self.n * (self.n - 1) / 2);
        for i in 0..self.n {
            for j in (i + 1)..self.n {
                out.push(self.dominates(i, j));
            }
        }
        out
    }

    #[inline(always)]
    fn set_bit(&mut self, i: usize, j: usize) {
        self.rows[i * self.words + j / 64] |= 1u64 << (j % 64);
    }

    #[inline(always)]
    fn clear_bit(&mut self, i: usize, j: usize) {
        self.rows[i * self.words + j / 64] &= !(1u64 << (j % 64));
    }

    pub fn order(&self) -> usize {
        self.n
    }

    /// Whether `i` dominates `j`. `false` on the diagonal.
    #[inline(always)]
    pub fn dominates(&self, i: usize, j: usize) -> bool {
        (self.rows[i * self.words + j / 64] >> (j % 64)) & 1 == 1
    }

    /// Out-neighbourhood bitset of `i`.
    #[inline]
    pub fn out_row(&self, i: usize) -> &[u64] {
        &self.rows[i * self.words..(i + 1) * self.words]
    }

    pub fn out_degree(&self, i: usize) -> usize {
        self.out_row(i).iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn score_sequence(&self) -> Vec<usize> {
        (0..self.n).map(|i| self.out_degree(i)).collect()
    }

    /// Re-checks the bitset invariants.
    pub fn check(&self) -> std::result::Result<(), Violation> {
        for i in 0..self.n {
            if self.dominates(i, i) {
                return Err(Violation { i, j: i, kind: ViolationKind::Reflexive });
            }
            for j in (i + 1)..self.n {
                match (self.dominates(i, j), self.dominates(j, i)) {
                    (true, true) => {
                        return Err(Violation { i, j, kind: ViolationKind::BothDirections })
                    }
                    (false, false) => return Err(Violation { i, j, kind: ViolationKind::NoArc }),
                    _ => {}
                }
            }
        }
        let total: usize = self.score_sequence().iter().sum();
        debug_assert_eq!(total, self.n * (self.n - 1) / 2);
        Ok(())
    }

    /// Dominance matrix as booleans.
    pub fn to_matrix(&self) -> Vec<Vec<bool>> {
        (0..self.n).map(|i| (0..self.n).map(|j| self.dominates(i, j)).collect()).collect()
    }

    /// The tournament with every arc reversed.
    pub fn reverse(&self) -> Self {
        let mut t = Self::empty(self.n);
        for i in 0..self.n {
            for j in 0..self.n {
                if self.dominates(i, j) {
                    t.set_bit(j, i);
                }
            }
        }
        t
    }

    /// Reverses the arc between `i` and `j`, whichever way it points.
    pub fn flip(&mut self, i: usize, j: usize) {
        debug_assert!(i != j);
        if self.dominates(i, j) {
            self.clear_bit(i, j);
            self.set_bit(j, i);
        } else {
            self.clear_bit(j, i);
            self.set_bit(i, j);
        }
    }

    /// Applies a flip after checking its precondition.
    pub fn apply_flip(&mut self, f: ArcFlip) -> Result<()> {
        self.check_flip(f)?;
        self.flip(f.i, f.j);
        Ok(())
    }

    fn check_flip(&self, f: ArcFlip) -> Result<()> {
        if f.i >= self.n || f.j >= self.n || f.i == f.j {
            return input(format!("arc ({}, {}) invalid for order {}", f.i, f.j, self.n));
        }
        if !self.dominates(f.i, f.j) {
            return input(format!("{} does not dominate {}", f.i, f.j));
        }
        Ok(())
    }

    /// Sub-tournament induced on `keep`, relabelled `0..keep.len()` in the given order.
    pub fn induced(&self, keep: &[usize]) -> Result<Self> {
        if let Some(&v) = keep.iter().find(|&&v| v >= self.n) {
            return input(format!("vertex {v} out of range for order {}", self.n));
        }
        Self::from_fn(keep.len(), |a, b| self.dominates(keep[a], keep[b]))
    }

    #[inline(always)]
    fn quad_scores(&self, q: [usize; 4]) -> [u32; 4] {
        let mut s = [0u32; 4];
        for a in 0..4 {
            for b in (a + 1)..4 {
                if self.dominates(q[a], q[b]) {
                    s[a] += 1;
                } else {
                    s[b] += 1;
                }
            }
        }
        s
    }

    /// Whether `q` induces a diamond: a 3-cycle plus a vertex beating all of
    /// it or beaten by all of it.
    pub fn is_diamond(&self, q: [usize; 4]) -> Result<bool> {
        for a in 0..4 {
            if q[a] >= self.n {
                return input(format!("vertex {} out of range for order {}", q[a], self.n));
            }
            if q[..a].contains(&q[a]) {
                return input(format!("repeated vertex {} in 4-subset", q[a]));
            }
        }
        Ok(self.is_diamond_unchecked(q))
    }

    #[inline(always)]
    pub(crate) fn is_diamond_unchecked(&self, q: [usize; 4]) -> bool {
        diamond_scores(self.quad_scores(q))
    }

    /// Number of diamonds, by scanning every 4-subset.
    pub fn count_diamonds_naive(&self) -> u64 {
        let n = self.n;
        let mut count = 0u64;
        for a in 0..n {
            for b in (a + 1)..n {
                let ab = self.dominates(a, b) as u32;
                for c in (b + 1)..n {
                    let ac = self.dominates(a, c) as u32;
                    let bc = self.dominates(b, c) as u32;
                    let base = [ab + ac, (1 - ab) + bc, (1 - ac) + (1 - bc)];
                    for d in (c + 1)..n {
                        let ad = self.dominates(a, d) as u32;
                        let bd = self.dominates(b, d) as u32;
                        let cd = self.dominates(c, d) as u32;
                        let s = [
                            base[0] + ad,
                            base[1] + bd,
                            base[2] + cd,
                            3 - ad - bd - cd,
                        ];
                        count += diamond_scores(s) as u64;
                    }
                }
            }
        }
        count
    }

    /// For each vertex, the number of diamonds containing it.
    pub fn diamonds_per_vertex(&self) -> Vec<u64> {
        let n = self.n;
        let mut per = vec![0u64; n];
        for a in 0..n {
            for b in (a + 1)..n {
                for c in (b + 1)..n {
                    for d in (c + 1)..n {
                        if self.is_diamond_unchecked([a, b, c, d]) {
                            for v in [a, b, c, d] {
                                per[v] += 1;
                            }
                        }
                    }
                }
            }
        }
        per
    }

    /// Change in the diamond count caused by reversing the arc `f.i -> f.j`.
    ///
    /// Only the 4-sets containing both endpoints can change, so this looks at
    /// C(n-2, 2) quadruples.
    pub fn diamond_delta_on_flip(&self, f: ArcFlip) -> Result<i64> {
        self.check_flip(f)?;
        Ok(self.flip_delta_unchecked(f.i, f.j))
    }

    /// As [`Tournament::diamond_delta_on_flip`], assuming `i -> j` is an arc.
    pub(crate) fn flip_delta_unchecked(&self, i: usize, j: usize) -> i64 {
        let n = self.n;
        let mut delta = 0i64;
        for k in 0..n {
            if k == i || k == j {
                continue;
            }
            let ik = self.dominates(i, k) as u32;
            let jk = self.dominates(j, k) as u32;
            for l in (k + 1)..n {
                if l == i || l == j {
                    continue;
                }
                let il = self.dominates(i, l) as u32;
                let jl = self.dominates(j, l) as u32;
                let kl = self.dominates(k, l) as u32;
                // scores with i -> j
                let si = 1 + ik + il;
                let sj = jk + jl;
                let sk = (1 - ik) + (1 - jk) + kl;
                let sl = (1 - il) + (1 - jl) + (1 - kl);
                let before = diamond_scores([si, sj, sk, sl]);
                let after = diamond_scores([si - 1, sj + 1, sk, sl]);
                delta += after as i64 - before as i64;
            }
        }
        delta
    }
}

impl fmt::Debug for Tournament {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Tournament(n={})", self.n)?;
        for i in 0..self.n {
            let row: String =
                (0..self.n).map(|j| if self.dominates(i, j) { '1' } else { '0' }).collect();
            writeln!(f, "  {row}")?;
        }
        Ok(())
    }
}

/// Random tournament: each pair `i < j`, taken in row-major order, is
/// oriented by one fair bit drawn from ChaCha8 seeded with
/// `ChaCha8Rng::seed_from_u64(seed)`; a set bit means `i` dominates `j`.
/// The generator and draw order are part of the reproducibility contract.
pub fn random_tournament(n: usize, seed: u64) -> Result<Tournament> {
    check_order(n)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    Tournament::from_fn(n, |_, _| rng.gen::<bool>())
}
