//! Paley tournaments, the dominating-vertex augmentation, vertex deletion
//! and the bordering of an odd-order extremal Seidel matrix into a
//! skew-conference matrix.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{input, Error, Result};
use crate::field::{prime_power, FieldTable};
use crate::spectral::{is_skew_conference, matches_extremal_charpoly, Extremal, SeidelMatrix};
use crate::tournament::{Tournament, MAX_ORDER};

fn paley_field(q: u64) -> Result<FieldTable> {
    let Some((p, k)) = prime_power(q) else {
        return input(format!("{q} is not a prime power"));
    };
    if q % 4 != 3 {
        return input(format!("{q} is not congruent to 3 mod 4; the Paley relation is not a tournament"));
    }
    if q as usize > MAX_ORDER {
        return input(format!("q = {q} exceeds the tournament order limit {MAX_ORDER}"));
    }
    FieldTable::new(p, k)
}

/// Paley tournament `T(q)`: vertex `i` is the field element of index `i`
/// and `i → j` iff `j - i` is a nonzero square.
pub fn paley_tournament(q: u64) -> Result<Tournament> {
    let f = paley_field(q)?;
    let sq = f.squares();
    Tournament::from_fn(q as usize, |i, j| sq.contains(f.sub(j as u32, i as u32)))
}

/// `T*(q)`: `T(q)` plus vertex `q` dominating every other vertex.
pub fn star_paley(q: u64) -> Result<Tournament> {
    if q as usize + 1 > MAX_ORDER {
        return input(format!("q + 1 = {} exceeds the tournament order limit {MAX_ORDER}", q + 1));
    }
    let base = paley_tournament(q)?;
    let q = q as usize;
    Tournament::from_fn(q + 1, |i, j| if j == q { false } else { base.dominates(i, j) })
}

/// Induced sub-tournament after removing `drop`, relabelled densely in order.
/// At least four vertices must remain.
pub fn delete_vertices(t: &Tournament, drop: &[usize]) -> Result<Tournament> {
    let n = t.order();
    if let Some(&v) = drop.iter().find(|&&v| v >= n) {
        return input(format!("vertex {v} out of range for order {n}"));
    }
    let mut gone = vec![false; n];
    for &v in drop {
        gone[v] = true;
    }
    let removed = gone.iter().filter(|&&g| g).count();
    if removed + 3 >= n {
        return input(format!("cannot delete {removed} of {n} vertices; fewer than 4 would remain"));
    }
    let keep: Vec<usize> = (0..n).filter(|&v| !gone[v]).collect();
    t.induced(&keep)
}

/// Primitive integer vector spanning the kernel of `s`, normalised so its
/// first nonzero entry is positive. `None` unless the kernel is one-dimensional.
pub fn primitive_kernel_vector(s: &SeidelMatrix) -> Option<Vec<BigInt>> {
    let n = s.order();
    let mut a: Vec<Vec<BigRational>> = (0..n)
        .map(|i| (0..n).map(|j| BigRational::from_integer(BigInt::from(s.get(i, j)))).collect())
        .collect();
    // reduced row echelon form
    let mut pivots = Vec::new();
    let mut row = 0;
    for col in 0..n {
        let Some(r) = (row..n).find(|&r| !a[r][col].is_zero()) else {
            continue;
        };
        a.swap(row, r);
        let inv = a[row][col].recip();
        for x in a[row].iter_mut() {
            *x *= &inv;
        }
        for r in 0..n {
            if r != row && !a[r][col].is_zero() {
                let factor = a[r][col].clone();
                for c in 0..n {
                    let sub = &factor * &a[row][c];
                    a[r][c] -= sub;
                }
            }
        }
        pivots.push(col);
        row += 1;
        if row == n {
            break;
        }
    }
    if pivots.len() + 1 != n {
        return None;
    }
    let free = (0..n).find(|c| !pivots.contains(c)).unwrap();
    let mut v = vec![BigRational::zero(); n];
    v[free] = BigRational::one();
    for (r, &pc) in pivots.iter().enumerate() {
        v[pc] = -a[r][free].clone();
    }
    let lcm = v.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    let ints: Vec<BigInt> = v.iter().map(|x| x.numer() * (&lcm / x.denom())).collect();
    let gcd = ints.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    let mut ints: Vec<BigInt> = ints.into_iter().map(|x| x / &gcd).collect();
    if ints.iter().find(|x| !x.is_zero()).is_some_and(|x| x.is_negative()) {
        for x in ints.iter_mut() {
            *x = -x.clone();
        }
    }
    Some(ints)
}

/// Borders an odd-extremal Seidel matrix `S` of order `n ≡ 3 (mod 4)` with
/// its `±1` kernel vector `u`, giving the skew-conference matrix
/// `[[S, u], [-uᵀ, 0]]` of order `n + 1`.
///
/// For such `S` the kernel is one-dimensional and `S² = uuᵀ - nI`, so the
/// bordered matrix squares to `-nI` once `u` has `±1` entries.
pub fn extend_to_conference(s: &SeidelMatrix) -> Result<SeidelMatrix> {
    let n = s.order();
    if n % 4 != 3 {
        return input(format!("order {n} is not congruent to 3 mod 4"));
    }
    if matches_extremal_charpoly(s) != Extremal::Odd {
        return input(format!("characteristic polynomial is not x(x^2 + {n})^{}", (n - 1) / 2));
    }
    let u = primitive_kernel_vector(s)
        .ok_or_else(|| Error::ExtensionFailed("kernel is not one-dimensional".into()))?;
    let signs: Option<Vec<i8>> = u
        .iter()
        .map(|x| {
            if x.is_one() {
                Some(1)
            } else if (-x).is_one() {
                Some(-1)
            } else {
                None
            }
        })
        .collect();
    let Some(signs) = signs else {
        let shown: Vec<String> = u.iter().map(|x| x.to_string()).collect();
        return Err(Error::ExtensionFailed(format!(
            "primitive kernel vector [{}] is not ±1-valued",
            shown.join(", ")
        )));
    };
    let ext = s.bordered(&signs)?;
    if !is_skew_conference(&ext) {
        return Err(Error::Consistency("bordered matrix is not skew-conference".into()));
    }
    Ok(ext)
}
