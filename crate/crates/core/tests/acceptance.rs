//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits
//! nonzero if any criterion fails.

use std::process::ExitCode;
use std::time::Instant;

use diamond_core::constructions::{extend_to_conference, paley_tournament, star_paley};
use diamond_core::hypergraph::{
    baber, delete_vertices_count, design_block_counts, edge_count_bound, is_balanced, is_ff4_design,
    min_sum_squares, triple_profile, verify_ff4, BoundStatus,
};
use diamond_core::search::{
    exhaustive_max_diamonds, exhaustive_scan, tournament_from_code, verify_five_vertex_law,
    ExhaustiveOptions,
};
use diamond_core::spectral::{
    bareiss_det, char_poly, count_diamonds_spectral, is_skew_conference, sigma4_upper_bound,
    sigma_from_traces, sum_principal_minors, CharPoly, SeidelMatrix,
};
use diamond_core::tournament::{choose4, random_tournament};
use num_rational::Rational64;

type Outcome = Result<String, String>;

const PALEY_Q: [u64; 7] = [3, 7, 11, 19, 23, 27, 31];

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

fn even_bound(n: u64) -> u64 {
    n * n * (n - 1) * (n - 2) / 96
}

fn odd_bound(n: u64) -> u64 {
    n * (n - 1) * (n - 3) * (n + 1) / 96
}

fn seidel_of(t: &diamond_core::Tournament) -> SeidelMatrix {
    SeidelMatrix::from_tournament(t)
}

fn c1_paley_even_equality() -> Outcome {
    // n²(n-1)(n-2)/96 at n = 4, 8, 12, 20, 24, 28, 32
    let expected = [1u64, 28, 165, 1425, 3036, 5733, 9920];
    for (q, want) in PALEY_Q.into_iter().zip(expected) {
        let t = star_paley(q).map_err(|e| e.to_string())?;
        let n = q + 1;
        ensure!(even_bound(n) * 96 == n * n * (n - 1) * (n - 2), "bound for n={n} not integral");
        ensure!(even_bound(n) == want, "formula at n={n} gives {}, expected {want}", even_bound(n));
        ensure!(is_skew_conference(&seidel_of(&t)), "T*({q}) Seidel matrix not skew-conference");
        let d = t.count_diamonds_naive();
        ensure!(d == want, "T*({q}) has {d} diamonds, expected {want}");
    }
    Ok(format!("delta(T*(q)) = {expected:?}, all skew-conference"))
}

fn c2_paley_odd_equality() -> Outcome {
    let mut got = Vec::new();
    for q in PALEY_Q {
        let t = paley_tournament(q).map_err(|e| e.to_string())?;
        let n = q;
        ensure!(n * (n - 1) * (n - 3) * (n + 1) % 96 == 0, "odd bound at n={n} not integral");
        let d = t.count_diamonds_naive();
        ensure!(d == odd_bound(n), "T({q}) has {d} diamonds, bound {}", odd_bound(n));
        let target = CharPoly::power_of_quadratic(n as i64, (n as usize - 1) / 2, true);
        ensure!(char_poly(&seidel_of(&t)) == target, "T({q}) char poly is not {target}");
        got.push(d);
    }
    Ok(format!("delta(T(q)) = {got:?}, char polys x(x^2+q)^((q-1)/2)"))
}

fn c3_exhaustive_optima() -> Outcome {
    let full = |threads| ExhaustiveOptions { threads, prune: false, long_run: false };
    let r4 = exhaustive_max_diamonds(4, full(1)).map_err(|e| e.to_string())?;
    ensure!(r4.max_diamonds == 1 && r4.attained && r4.explored == 64, "n=4: {r4:?}");
    let s4 = exhaustive_scan(4, full(1)).map_err(|e| e.to_string())?;
    for &c in &s4.optima {
        let t = tournament_from_code(4, c).map_err(|e| e.to_string())?;
        ensure!(is_skew_conference(&seidel_of(&t)), "n=4 optimum {c} not skew-conference");
    }

    let r5 = exhaustive_max_diamonds(5, full(1)).map_err(|e| e.to_string())?;
    ensure!(r5.max_diamonds == 2 && !r5.attained && r5.explored == 1024, "n=5: {r5:?}");
    let law = verify_five_vertex_law();
    ensure!(law.holds() && law.checked == 1024, "five-vertex law: {law:?}");

    let start = Instant::now();
    let s7 = exhaustive_scan(7, full(1)).map_err(|e| e.to_string())?;
    let single = start.elapsed();
    ensure!(s7.explored == 1 << 21, "n=7 explored {}", s7.explored);
    ensure!(s7.max_diamonds == 14, "n=7 maximum {}", s7.max_diamonds);
    ensure!(single.as_secs() < 60, "n=7 single-threaded scan took {single:?}");
    let target = CharPoly::power_of_quadratic(7, 3, true);
    for &c in &s7.optima {
        let t = tournament_from_code(7, c).map_err(|e| e.to_string())?;
        ensure!(char_poly(&seidel_of(&t)) == target, "n=7 optimum {c} has another char poly");
    }
    let start = Instant::now();
    let par = exhaustive_scan(7, full(4)).map_err(|e| e.to_string())?;
    let parallel = start.elapsed();
    ensure!(par == s7, "n=7 parallel scan differs from single-threaded scan");
    let r7 = exhaustive_max_diamonds(7, full(4)).map_err(|e| e.to_string())?;
    ensure!(r7.attained && r7.witness == tournament_from_code(7, s7.optima[0]).unwrap(), "n=7 witness");
    Ok(format!(
        "max 1/2/14 at n=4/5/7; law {:?}; {} n=7 optima all x(x^2+7)^3; 1 thread {:.2?}, 4 threads {:.2?}, identical",
        law.histogram,
        s7.optima.len(),
        single,
        parallel
    ))
}

fn c4_principal_minor_lemma() -> Outcome {
    for sample in 0..100u64 {
        let n = 5 + (sample % 8) as usize;
        let t = random_tournament(n, 40_000 + sample).map_err(|e| e.to_string())?;
        let lhs = sum_principal_minors(&seidel_of(&t), 4).map_err(|e| e.to_string())?;
        let rhs = 8 * t.count_diamonds_naive() as i128 + choose4(n as u64) as i128;
        ensure!(lhs == rhs, "n={n} seed {}: minors {lhs} vs 8δ+C(n,4) = {rhs}", 40_000 + sample);
    }
    Ok("100 tournaments, n in 5..=12".into())
}

fn c5_spectral_equals_naive() -> Outcome {
    let mut total = 0;
    for n in 5..=40usize {
        for sample in 0..100u64 {
            let seed = 1_000_000 + 1000 * n as u64 + sample;
            let t = random_tournament(n, seed).map_err(|e| e.to_string())?;
            let naive = t.count_diamonds_naive();
            let spectral = count_diamonds_spectral(&t).map_err(|e| e.to_string())?;
            ensure!(naive == spectral, "n={n} seed={seed}: naive {naive}, spectral {spectral}");
            total += 1;
        }
    }
    Ok(format!("{total} tournaments, n in 5..=40"))
}

fn c6_sigma_invariants() -> Outcome {
    let mut extremal = Vec::new();
    for q in PALEY_Q {
        extremal.push(seidel_of(&star_paley(q).map_err(|e| e.to_string())?));
        extremal.push(seidel_of(&paley_tournament(q).map_err(|e| e.to_string())?));
    }
    let mut others = Vec::new();
    for n in 4..=32usize {
        others.push(seidel_of(&random_tournament(n, 77 + n as u64).map_err(|e| e.to_string())?));
    }
    for (s, is_extremal) in extremal.iter().map(|s| (s, true)).chain(others.iter().map(|s| (s, false))) {
        let n = s.order();
        let (s2, s4) = sigma_from_traces(s);
        ensure!(s2 as usize == n * (n - 1) / 2, "n={n}: sigma2 = {s2}");
        if n < 4 {
            continue;
        }
        let bound = sigma4_upper_bound(n).map_err(|e| e.to_string())?;
        let s4r = Rational64::from_integer(s4);
        ensure!(s4r <= bound, "n={n}: sigma4 {s4} exceeds {bound}");
        ensure!((s4r == bound) == is_extremal, "n={n}: sigma4 {s4}, bound {bound}, extremal={is_extremal}");
    }
    Ok(format!("{} extremal instances at equality, {} random strictly below", extremal.len(), others.len()))
}

fn c7_baber_design() -> Outcome {
    let h = baber(&star_paley(7).map_err(|e| e.to_string())?);
    ensure!(h.edge_count() == 28, "baber(T*(7)) has {} edges", h.edge_count());
    ensure!(verify_ff4(&h, 1).map_err(|e| e.to_string())?.is_ok(), "FF4 property fails");
    ensure!(is_ff4_design(&h).map_err(|e| e.to_string())?, "not a 3-(8,4,2) design");
    let prof = triple_profile(&h);
    ensure!(prof.triple_count() == 56 && prof.is_constant(2), "triple profile {:?}", prof.histogram());
    Ok("28 edges, FF4, 3-(8,4,2) design, all 56 triples at 2".into())
}

fn c8_deletion_ladder() -> Outcome {
    let h = baber(&star_paley(7).map_err(|e| e.to_string())?);
    let expected = [14i64, 6, 2];
    let mut cases = 0;
    for (k, want) in (1..=3usize).zip(expected) {
        let bound = edge_count_bound(8 - k).map_err(|e| e.to_string())?;
        let want_status = if k == 1 { BoundStatus::Proven } else { BoundStatus::Conjectural };
        ensure!(bound.value == Rational64::from_integer(want) && bound.status == want_status, "bound at n={}: {bound:?}", 8 - k);
        for mask in 0u32..256 {
            if mask.count_ones() as usize != k {
                continue;
            }
            let drop: Vec<usize> = (0..8).filter(|v| mask >> v & 1 == 1).collect();
            let c = delete_vertices_count(&h, &drop).map_err(|e| e.to_string())?;
            ensure!(c.observed as i64 == want, "drop {drop:?}: observed {}", c.observed);
            ensure!(c.predicted == Some(Rational64::from_integer(want)), "drop {drop:?}: predicted {:?}", c.predicted);
            cases += 1;
        }
    }
    // inclusion–exclusion from the block counts alone
    let r: Vec<Rational64> = (0..=3).map(|s| design_block_counts(8, 4, 3, 2, s).unwrap()).collect();
    ensure!(r[0] - r[1] == Rational64::from_integer(14), "28 - 14");
    ensure!(r[0] - r[1] * 2 + r[2] == Rational64::from_integer(6), "28 - 28 + 6");
    ensure!(r[0] - r[1] * 3 + r[2] * 3 - r[3] == Rational64::from_integer(2), "28 - 42 + 18 - 2");
    ensure!(cases == 8 + 28 + 56, "{cases} cases");
    Ok(format!("{cases} deletions give 14/6/2 = predicted = bounds at n=7/6/5"))
}

fn c9_extension() -> Outcome {
    let s = seidel_of(&paley_tournament(7).map_err(|e| e.to_string())?);
    let ext = extend_to_conference(&s).map_err(|e| e.to_string())?;
    ensure!(ext.order() == 8, "order {}", ext.order());
    let rows = ext.rows();
    for i in 0..8 {
        for j in 0..8 {
            let dot: i64 = (0..8).map(|k| rows[i][k] * rows[j][k]).sum();
            ensure!(dot == if i == j { 7 } else { 0 }, "(S S^T)[{i}][{j}] = {dot}");
        }
    }
    let det = bareiss_det(rows.iter().map(|r| r.iter().map(|&x| x as i128).collect()).collect());
    ensure!(det == 7i128.pow(4), "det = {det}");
    Ok("order-8 bordered matrix with S S^T = 7I".into())
}

/// Every nondecreasing `p`-tuple of nonnegative integers summing to `s`.
fn compositions(s: u64, p: usize, min: u64, prefix: &mut Vec<u64>, out: &mut Vec<Vec<u64>>) {
    if prefix.len() == p - 1 {
        if s >= min {
            prefix.push(s);
            out.push(prefix.clone());
            prefix.pop();
        }
        return;
    }
    let slots = (p - prefix.len()) as u64;
    let mut x = min;
    while x * slots <= s {
        prefix.push(x);
        compositions(s - x, p, x, prefix, out);
        prefix.pop();
        x += 1;
    }
}

fn c10_min_sum_squares() -> Outcome {
    let mut checked = 0;
    for s in 0..=20u64 {
        for p in 1..=6usize {
            let mut all = Vec::new();
            compositions(s, p, 0, &mut Vec::new(), &mut all);
            ensure!(!all.is_empty(), "no compositions for s={s} p={p}");
            let sq = |v: &Vec<u64>| v.iter().map(|x| x * x).sum::<u64>();
            let brute = all.iter().map(sq).min().unwrap();
            let m = min_sum_squares(s, p as u64).map_err(|e| e.to_string())?;
            ensure!(m.minimum == brute, "s={s} p={p}: {} vs brute {brute}", m.minimum);
            ensure!(sq(&m.witness) == brute && m.witness.iter().sum::<u64>() == s, "bad witness {:?}", m.witness);
            for c in &all {
                ensure!((sq(c) == brute) == is_balanced(c), "s={s} p={p}: predicate disagrees on {c:?}");
            }
            checked += all.len();
        }
    }
    Ok(format!("{checked} compositions, s <= 20, p <= 6"))
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Outcome); 10] = [
        ("1 Paley equality, n = q+1", c1_paley_even_equality),
        ("2 Paley equality, n = q", c2_paley_odd_equality),
        ("3 exhaustive optima", c3_exhaustive_optima),
        ("4 principal-minor identity", c4_principal_minor_lemma),
        ("5 spectral = naive count", c5_spectral_equals_naive),
        ("6 sigma invariants", c6_sigma_invariants),
        ("7 Baber / FF4 / design", c7_baber_design),
        ("8 deletion ladder", c8_deletion_ladder),
        ("9 constructive extension", c9_extension),
        ("10 min sum of squares", c10_min_sum_squares),
    ];
    let mut failed = 0;
    for (name, run) in criteria {
        let start = Instant::now();
        match run() {
            Ok(detail) => println!("PASS criterion {name} ({:.2?}): {detail}", start.elapsed()),
            Err(why) => {
                failed += 1;
                println!("FAIL criterion {name} ({:.2?}): {why}", start.elapsed());
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", 10 - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
