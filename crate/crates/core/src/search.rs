//! Exhaustive and annealing searches for diamond-maximal tournaments.
//!
//! Encodings: the `m = C(n,2)` pairs `(i, j)`, `i < j`, in row-major order;
//! pair `p` is bit `m - 1 - p` of a `u64`, set when the lower index
//! dominates. Numeric order on codes is therefore lexicographic order on
//! the bit strings, and "least witness" means least code.

use std::collections::BTreeMap;
use std::sync::atomic::{AtomicUsize, Ordering};

use num_rational::Rational64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{input, Result};
use crate::spectral::diamond_upper_bound;
use crate::tournament::{random_tournament, Tournament};

pub const EXHAUSTIVE_MIN_ORDER: usize = 4;
pub const EXHAUSTIVE_MAX_ORDER: usize = 8;
/// Orders from here on need `long_run`.
pub const LONG_RUN_ORDER: usize = 8;

#[derive(Debug, Clone, PartialEq)]
pub enum SearchMode {
    Exhaustive { pruned: bool, threads: usize },
    Local(LocalSearchParams),
}

#[derive(Debug, Clone, PartialEq)]
pub struct SearchResult {
    pub n: usize,
    pub mode: SearchMode,
    pub max_diamonds: u64,
    pub witness: Tournament,
    pub bound: Rational64,
    /// `max_diamonds` equals the bound and the bound is an integer.
    pub attained: bool,
    /// Encodings (exhaustive) or flip proposals (local) examined.
    pub explored: u64,
}

fn attained(max: u64, bound: Rational64) -> bool {
    bound.is_integer() && bound.to_integer() == max as i64
}

pub fn pair_count(n: usize) -> usize {
    n * (n - 1) / 2
}

/// Tournament of an integer encoding (see module docs).
pub fn tournament_from_code(n: usize, code: u64) -> Result<Tournament> {
    let m = pair_count(n);
    if m > 64 || (m < 64 && code >> m != 0) {
        return input(format!("code {code} does not encode an order-{n} tournament"));
    }
    let bits: Vec<bool> = (0..m).map(|p| code >> (m - 1 - p) & 1 == 1).collect();
    Tournament::from_encoding(n, &bits)
}

pub fn code_of(t: &Tournament) -> Option<u64> {
    let bits = t.encoding();
    (bits.len() <= 64).then(|| bits.iter().fold(0u64, |acc, &b| acc << 1 | b as u64))
}

/// Per-4-set bit positions and a 64-entry diamond table, so that counting
/// diamonds of a code is a gather plus table lookups.
struct CodeCounter {
    quads: Vec<[u32; 6]>,
    table: [bool; 64],
}

impl CodeCounter {
    fn new(n: usize) -> Self {
        let m = pair_count(n);
        let mut pair_index = vec![vec![0usize; n]; n];
        let mut p = 0;
        for i in 0..n {
            for j in (i + 1)..n {
                pair_index[i][j] = p;
                p += 1;
            }
        }
        let bit = |i: usize, j: usize| (m - 1 - pair_index[i][j]) as u32;
        let mut quads = Vec::new();
        for a in 0..n {
            for b in (a + 1)..n {
                for c in (b + 1)..n {
                    for d in (c + 1)..n {
                        quads.push([bit(a, b), bit(a, c), bit(a, d), bit(b, c), bit(b, d), bit(c, d)]);
                    }
                }
            }
        }
        let mut table = [false; 64];
        for (local, slot) in table.iter_mut().enumerate() {
            let bits: Vec<bool> = (0..6).map(|k| local >> (5 - k) & 1 == 1).collect();
            *slot = Tournament::from_encoding(4, &bits)
                .expect("4-vertex encoding")
                .count_diamonds_naive()
                == 1;
        }
        Self { quads, table }
    }

    #[inline]
    fn count(&self, code: u64) -> u64 {
        let mut total = 0u64;
        for q in &self.quads {
            let mut local = 0usize;
            for &b in q {
                local = local << 1 | (code >> b & 1) as usize;
            }
            total += self.table[local] as u64;
        }
        total
    }
}

/// Every maximiser found by an exhaustive scan.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExhaustiveScan {
    pub n: usize,
    pub max_diamonds: u64,
    /// Codes attaining the maximum, ascending.
    pub optima: Vec<u64>,
    pub explored: u64,
    pub pruned: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ExhaustiveOptions {
    pub threads: usize,
    /// Fix vertex 0's out-neighbourhood to `{1, …, d}`. Every tournament is
    /// isomorphic to one of this shape, so the maximum is unchanged.
    pub prune: bool,
    pub long_run: bool,
}

impl Default for ExhaustiveOptions {
    fn default() -> Self {
        Self { threads: 1, prune: true, long_run: false }
    }
}

const CHUNK_BITS: u32 = 14;

/// Half-open code ranges covering the search space.
fn code_ranges(n: usize, prune: bool) -> Vec<(u64, u64)> {
    let m = pair_count(n) as u32;
    let spans: Vec<(u64, u64)> = if prune {
        let rest = m - (n as u32 - 1);
        (0..n as u32)
            .map(|d| {
                // top n-1 bits are vertex 0's row: 1^d 0^(n-1-d)
                let prefix = ((1u64 << d) - 1) << (n as u32 - 1 - d);
                (prefix << rest, (prefix + 1) << rest)
            })
            .collect()
    } else {
        vec![(0, 1u64 << m)]
    };
    let mut chunks = Vec::new();
    for (lo, hi) in spans {
        let mut start = lo;
        while start < hi {
            let end = (start + (1 << CHUNK_BITS)).min(hi);
            chunks.push((start, end));
            start = end;
        }
    }
    chunks
}

fn scan_chunk(counter: &CodeCounter, lo: u64, hi: u64, best: &mut u64, optima: &mut Vec<u64>) {
    for code in lo..hi {
        let d = counter.count(code);
        if d > *best {
            *best = d;
            optima.clear();
        }
        if d == *best {
            optima.push(code);
        }
    }
}

/// Scans every code (or every pruned code) and collects all maximisers.
/// The result does not depend on the thread count.
pub fn exhaustive_scan(n: usize, opts: ExhaustiveOptions) -> Result<ExhaustiveScan> {
    if !(EXHAUSTIVE_MIN_ORDER..=EXHAUSTIVE_MAX_ORDER).contains(&n) {
        return input(format!(
            "exhaustive search supports {EXHAUSTIVE_MIN_ORDER} <= n <= {EXHAUSTIVE_MAX_ORDER}, got {n}"
        ));
    }
    if n >= LONG_RUN_ORDER && !opts.long_run {
        return input(format!("exhaustive search at n = {n} requires the long-run flag"));
    }
    let counter = CodeCounter::new(n);
    let chunks = code_ranges(n, opts.prune);
    let explored = chunks.iter().map(|(lo, hi)| hi - lo).sum();
    let next = AtomicUsize::new(0);
    let threads = opts.threads.max(1);

    let worker = || {
        let mut best = 0u64;
        let mut optima = Vec::new();
        loop {
            let idx = next.fetch_add(1, Ordering::Relaxed);
            let Some(&(lo, hi)) = chunks.get(idx) else { break };
            scan_chunk(&counter, lo, hi, &mut best, &mut optima);
        }
        (best, optima)
    };
    let partials: Vec<(u64, Vec<u64>)> = if threads == 1 {
        vec![worker()]
    } else {
        std::thread::scope(|scope| {
            let handles: Vec<_> = (0..threads).map(|_| scope.spawn(worker)).collect();
            handles.into_iter().map(|h| h.join().expect("search worker panicked")).collect()
        })
    };
    let max_diamonds = partials.iter().map(|(b, _)| *b).max().unwrap_or(0);
    let mut optima: Vec<u64> = partials
        .into_iter()
        .filter(|(b, _)| *b == max_diamonds)
        .flat_map(|(_, o)| o)
        .collect();
    optima.sort_unstable();
    Ok(ExhaustiveScan { n, max_diamonds, optima, explored, pruned: opts.prune })
}

/// Exact maximum number of diamonds over all `n`-tournaments, with the least
/// witness code of the explored space.
pub fn exhaustive_max_diamonds(n: usize, opts: ExhaustiveOptions) -> Result<SearchResult> {
    let scan = exhaustive_scan(n, opts)?;
    let bound = diamond_upper_bound(n)?;
    let witness = tournament_from_code(n, scan.optima[0])?;
    Ok(SearchResult {
        n,
        mode: SearchMode::Exhaustive { pruned: opts.prune, threads: opts.threads.max(1) },
        max_diamonds: scan.max_diamonds,
        witness,
        bound,
        attained: attained(scan.max_diamonds, bound),
        explored: scan.explored,
    })
}

/// Diamond-count distribution over labelled 5-tournaments.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiveVertexLaw {
    pub checked: u64,
    /// diamond count -> number of tournaments
    pub histogram: BTreeMap<u64, u64>,
    /// Least code with a count outside `{0, 2}`.
    pub counterexample: Option<u64>,
}

impl FiveVertexLaw {
    pub fn holds(&self) -> bool {
        self.counterexample.is_none()
    }
}

/// Checks that every 5-tournament accepted by `filter` has 0 or 2 diamonds,
/// counting each one with the 4-subset scan.
pub fn five_vertex_law_where(filter: impl Fn(&Tournament) -> bool) -> FiveVertexLaw {
    let mut law = FiveVertexLaw { checked: 0, histogram: BTreeMap::new(), counterexample: None };
    for code in 0u64..1024 {
        let t = tournament_from_code(5, code).expect("10-bit code");
        if !filter(&t) {
            continue;
        }
        let d = t.count_diamonds_naive();
        law.checked += 1;
        *law.histogram.entry(d).or_insert(0) += 1;
        if d != 0 && d != 2 && law.counterexample.is_none() {
            law.counterexample = Some(code);
        }
    }
    law
}

/// All 1024 labelled 5-tournaments have 0 or 2 diamonds.
pub fn verify_five_vertex_law() -> FiveVertexLaw {
    five_vertex_law_where(|_| true)
}

/// Annealing parameters. Temperature at step `s` is `t0 · cooling^s`.
#[derive(Debug, Clone, PartialEq)]
pub struct LocalSearchParams {
    pub n: usize,
    pub restarts: u32,
    pub steps: u64,
    pub t0: f64,
    pub cooling: f64,
    pub seed: u64,
    pub threads: usize,
}

impl LocalSearchParams {
    pub fn new(n: usize) -> Self {
        Self { n, restarts: 8, steps: 20_000, t0: 2.0, cooling: 0.9995, seed: 0, threads: 1 }
    }
}

struct RestartOutcome {
    best: u64,
    witness: Tournament,
    proposals: u64,
}

/// One annealing run. Restart `r` starts from `random_tournament(n, seed + r)`
/// and draws its moves from ChaCha8 seeded with `seed + r` on stream 1.
fn anneal(params: &LocalSearchParams, restart: u32, target: Option<u64>) -> Result<RestartOutcome> {
    let n = params.n;
    let seed = params.seed.wrapping_add(restart as u64);
    let mut current = random_tournament(n, seed)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(1);
    let mut score = current.count_diamonds_naive() as i64;
    let mut best = score;
    let mut witness = current.clone();
    let mut temperature = params.t0;
    let mut proposals = 0;
    for _ in 0..params.steps {
        if target.is_some_and(|t| best as u64 >= t) {
            break;
        }
        let i = rng.gen_range(0..n);
        let mut j = rng.gen_range(0..n - 1);
        if j >= i {
            j += 1;
        }
        let (from, to) = if current.dominates(i, j) { (i, j) } else { (j, i) };
        let delta = current.flip_delta_unchecked(from, to);
        proposals += 1;
        let accept = delta >= 0
            || (temperature > 0.0 && rng.gen::<f64>() < (delta as f64 / temperature).exp());
        if accept {
            current.flip(from, to);
            score += delta;
            if score > best {
                best = score;
                witness = current.clone();
            }
        }
        temperature *= params.cooling;
    }
    Ok(RestartOutcome { best: best as u64, witness, proposals })
}

/// Simulated annealing over single arc reversals, scored incrementally.
///
/// Restarts are independent, so results depend only on the seed; the best
/// restart wins, ties going to the lexicographically least encoding.
/// A restart stops early once it reaches an integral upper bound.
pub fn local_search_max_diamonds(params: &LocalSearchParams) -> Result<SearchResult> {
    let n = params.n;
    if !(EXHAUSTIVE_MIN_ORDER..=crate::tournament::MAX_ORDER).contains(&n) {
        return input(format!("local search supports 4 <= n <= 512, got {n}"));
    }
    if params.restarts == 0 {
        return input("at least one restart is required");
    }
    if !(params.cooling > 0.0 && params.cooling <= 1.0) || params.t0 < 0.0 {
        return input("cooling must be in (0, 1] and t0 nonnegative");
    }
    let bound = diamond_upper_bound(n)?;
    let target = bound.is_integer().then(|| bound.to_integer() as u64);
    let threads = params.threads.max(1).min(params.restarts as usize);

    let next = AtomicUsize::new(0);
    let worker = || -> Result<Vec<(u32, RestartOutcome)>> {
        let mut out = Vec::new();
        loop {
            let r = next.fetch_add(1, Ordering::Relaxed) as u32;
            if r >= params.restarts {
                break;
            }
            out.push((r, anneal(params, r, target)?));
        }
        Ok(out)
    };
    let mut outcomes: Vec<(u32, RestartOutcome)> = if threads == 1 {
        worker()?
    } else {
        let parts: Vec<Result<Vec<_>>> = std::thread::scope(|scope| {
            let handles: Vec<_> = (0..threads).map(|_| scope.spawn(worker)).collect();
            handles.into_iter().map(|h| h.join().expect("search worker panicked")).collect()
        });
        let mut all = Vec::new();
        for p in parts {
            all.extend(p?);
        }
        all
    };
    outcomes.sort_by_key(|(r, _)| *r);
    let explored = outcomes.iter().map(|(_, o)| o.proposals).sum();
    let (_, winner) = outcomes
        .into_iter()
        .reduce(|a, b| {
            let better = b.1.best > a.1.best
                || (b.1.best == a.1.best && b.1.witness.encoding() < a.1.witness.encoding());
            if better {
                b
            } else {
                a
            }
        })
        .expect("at least one restart");
    Ok(SearchResult {
        n,
        mode: SearchMode::Local(params.clone()),
        max_diamonds: winner.best,
        witness: winner.witness,
        bound,
        attained: attained(winner.best, bound),
        explored,
    })
}
