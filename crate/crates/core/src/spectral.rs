//! Seidel matrices of tournaments and exact characteristic-polynomial identities.
//!
//! Everything here is exact: characteristic polynomials use arbitrary
//! precision integers, bounds are rationals.

use std::fmt;

use num_bigint::BigInt;
use num_rational::Rational64;
use num_traits::{One, Zero};

use crate::error::{input, Error, Result};
use crate::tournament::{choose4, Tournament};

/// Skew-symmetric matrix with zero diagonal and `±1` off the diagonal.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct SeidelMatrix {
    n: usize,
    entries: Vec<i8>,
    // bitset of the +1 entries of each row
    plus: Vec<u64>,
    words: usize,
}

impl SeidelMatrix {
    /// `S = A - Aᵀ` for the adjacency matrix `A` of `t`.
    pub fn from_tournament(t: &Tournament) -> Self {
        let n = t.order();
        Self::build(n, |i, j| if t.dominates(i, j) { 1 } else { -1 })
    }

    fn build(n: usize, mut off_diag: impl FnMut(usize, usize) -> i8) -> Self {
        let words = n.div_ceil(64).max(1);
        let mut entries = vec![0i8; n * n];
        let mut plus = vec![0u64; n * words];
        for i in 0..n {
            for j in 0..n {
                if i != j {
                    let v = off_diag(i, j);
                    entries[i * n + j] = v;
                    if v == 1 {
                        plus[i * words + j / 64] |= 1u64 << (j % 64);
                    }
                }
            }
        }
        Self { n, entries, plus, words }
    }

    /// Validates a dense matrix.
    pub fn from_rows(rows: &[Vec<i64>]) -> Result<Self> {
        let n = rows.len();
        if n == 0 {
            return input("empty Seidel matrix");
        }
        for (i, row) in rows.iter().enumerate() {
            if row.len() != n {
                return input(format!("row {i} has {} entries, expected {n}", row.len()));
            }
            if row[i] != 0 {
                return input(format!("diagonal entry ({i},{i}) is {}", row[i]));
            }
            for (j, &v) in row.iter().enumerate() {
                if i != j && v != 1 && v != -1 {
                    return input(format!("entry ({i},{j}) is {v}, expected ±1"));
                }
                if v != -rows[j][i] {
                    return input(format!("entries ({i},{j}) and ({j},{i}) are not opposite"));
                }
            }
        }
        Ok(Self::build(n, |i, j| rows[i][j] as i8))
    }

    pub fn order(&self) -> usize {
        self.n
    }

    #[inline(always)]
    pub fn get(&self, i: usize, j: usize) -> i8 {
        self.entries[i * self.n + j]
    }

    pub fn rows(&self) -> Vec<Vec<i64>> {
        (0..self.n).map(|i| (0..self.n).map(|j| self.get(i, j) as i64).collect()).collect()
    }

    pub fn negate(&self) -> Self {
        Self::build(self.n, |i, j| -self.get(i, j))
    }

    /// The tournament whose arcs are the `+1` entries. Needs order ≥ 3.
    pub fn to_tournament(&self) -> Result<Tournament> {
        Tournament::from_fn(self.n, |i, j| self.get(i, j) == 1)
    }

    /// `[[S, u], [-uᵀ, 0]]`.
    pub fn bordered(&self, u: &[i8]) -> Result<Self> {
        if u.len() != self.n || u.iter().any(|&x| x != 1 && x != -1) {
            return input("border vector must have one ±1 entry per row");
        }
        let n = self.n;
        Ok(Self::build(n + 1, |i, j| {
            if i < n && j < n {
                self.get(i, j)
            } else if j == n {
                u[i]
            } else {
                -u[j]
            }
        }))
    }

    /// Principal submatrix with rows and columns in `keep`.
    pub fn principal(&self, keep: &[usize]) -> Self {
        Self::build(keep.len(), |a, b| self.get(keep[a], keep[b]))
    }

    #[inline]
    fn plus_row(&self, i: usize) -> &[u64] {
        &self.plus[i * self.words..(i + 1) * self.words]
    }

    /// Off-diagonal entry `(S²)_ij`, `i != j`.
    ///
    /// For `k ∉ {i, j}` the product `S_ik S_kj = -S_ik S_jk` is `-1` when
    /// rows `i` and `j` agree at `k` and `+1` otherwise, so
    /// `(S²)_ij = 2·d - (n - 2)` where `d` counts disagreements.
    #[inline]
    fn square_off_diag(&self, i: usize, j: usize) -> i64 {
        let (ri, rj) = (self.plus_row(i), self.plus_row(j));
        let mut d: i64 = ri.iter().zip(rj).map(|(a, b)| (a ^ b).count_ones() as i64).sum();
        // positions i and j always differ in the +1 pattern unless masked out
        d -= ((ri[j / 64] ^ rj[j / 64]) >> (j % 64) & 1) as i64;
        d -= ((ri[i / 64] ^ rj[i / 64]) >> (i % 64) & 1) as i64;
        2 * d - (self.n as i64 - 2)
    }

    /// `S²` as a dense matrix; the diagonal is `-(n - 1)`.
    pub fn square(&self) -> Vec<Vec<i64>> {
        let n = self.n;
        let mut out = vec![vec![0i64; n]; n];
        for i in 0..n {
            out[i][i] = -(n as i64 - 1);
            for j in (i + 1)..n {
                let v = self.square_off_diag(i, j);
                out[i][j] = v;
                out[j][i] = v;
            }
        }
        out
    }

    /// `(tr S², tr S⁴)`. `S²` is symmetric so `tr S⁴` is the sum of squares of its entries.
    pub fn traces(&self) -> (i64, i64) {
        let n = self.n as i64;
        let tr2 = -n * (n - 1);
        let mut tr4 = n * (n - 1) * (n - 1);
        for i in 0..self.n {
            for j in (i + 1)..self.n {
                let v = self.square_off_diag(i, j);
                tr4 += 2 * v * v;
            }
        }
        (tr2, tr4)
    }
}

impl fmt::Debug for SeidelMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "SeidelMatrix(n={})", self.n)?;
        for i in 0..self.n {
            let row: Vec<String> = (0..self.n).map(|j| format!("{:2}", self.get(i, j))).collect();
            writeln!(f, "  [{}]", row.join(" "))?;
        }
        Ok(())
    }
}

/// Coefficients of `det(xI - S) = xⁿ + σ₁xⁿ⁻¹ + … + σₙ`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct CharPoly {
    // [1, σ₁, …, σₙ]
    coeffs: Vec<BigInt>,
}

impl CharPoly {
    pub fn from_coefficients(coeffs: Vec<BigInt>) -> Result<Self> {
        if coeffs.first().map(|c| c.is_one()) != Some(true) {
            return input("characteristic polynomial must be monic");
        }
        Ok(Self { coeffs })
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    /// `σ_k`; `σ₀ = 1`.
    pub fn sigma(&self, k: usize) -> &BigInt {
        &self.coeffs[k]
    }

    /// `[1, σ₁, …, σₙ]`, the constant term last.
    pub fn coefficients(&self) -> &[BigInt] {
        &self.coeffs
    }

    /// `(x² + c)^m`, multiplied by `x` when `times_x`.
    pub fn power_of_quadratic(c: i64, m: usize, times_x: bool) -> Self {
        let c = BigInt::from(c);
        let mut coeffs = vec![BigInt::zero(); 2 * m + 1 + times_x as usize];
        let mut binom = BigInt::one();
        let mut cpow = BigInt::one();
        for j in 0..=m {
            coeffs[2 * j] = &binom * &cpow;
            binom = binom * BigInt::from(m - j) / BigInt::from(j + 1);
            cpow *= &c;
        }
        Self { coeffs }
    }
}

impl fmt::Display for CharPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let n = self.degree();
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let deg = n - k;
            let neg = c < &BigInt::zero();
            let mag = if neg { -c } else { c.clone() };
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            first = false;
            let show_coeff = !mag.is_one() || deg == 0;
            if show_coeff {
                write!(f, "{mag}")?;
            }
            match deg {
                0 => {}
                1 => write!(f, "x")?,
                _ => write!(f, "x^{deg}")?,
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

/// Exact characteristic polynomial by the Faddeev–LeVerrier recurrence
/// `M₁ = I`, `σ_k = -tr(S·M_k)/k`, `M_{k+1} = S·M_k + σ_k I`.
/// Division by `k` is exact over the integers.
pub fn char_poly(s: &SeidelMatrix) -> CharPoly {
    let n = s.order();
    let mut coeffs = Vec::with_capacity(n + 1);
    coeffs.push(BigInt::one());
    let mut m: Vec<BigInt> = vec![BigInt::zero(); n * n];
    for i in 0..n {
        m[i * n + i] = BigInt::one();
    }
    let mut prod = vec![BigInt::zero(); n * n];
    for k in 1..=n {
        // prod = S * M; S has ±1/0 entries so only additions are needed
        for i in 0..n {
            for j in 0..n {
                let mut acc = BigInt::zero();
                for l in 0..n {
                    match s.get(i, l) {
                        1 => acc += &m[l * n + j],
                        -1 => acc -= &m[l * n + j],
                        _ => {}
                    }
                }
                prod[i * n + j] = acc;
            }
        }
        let trace: BigInt = (0..n).map(|i| &prod[i * n + i]).sum();
        let sigma = -trace / BigInt::from(k);
        if k < n {
            std::mem::swap(&mut m, &mut prod);
            for i in 0..n {
                m[i * n + i] += &sigma;
            }
        }
        coeffs.push(sigma);
    }
    CharPoly { coeffs }
}

/// `(σ₂, σ₄)` from traces. Odd power sums of a skew-symmetric matrix vanish,
/// so Newton's identities give `σ₂ = -tr(S²)/2` and
/// `σ₄ = (tr(S²)²/2 - tr(S⁴))/4`.
pub fn sigma_from_traces(s: &SeidelMatrix) -> (i64, i64) {
    let (tr2, tr4) = s.traces();
    let sigma2 = -tr2 / 2;
    let sigma4 = (tr2 * tr2 / 2 - tr4) / 4;
    (sigma2, sigma4)
}

/// Fraction-free Gaussian elimination (Bareiss) with row pivoting.
pub fn bareiss_det(mut a: Vec<Vec<i128>>) -> i128 {
    let n = a.len();
    if n == 0 {
        return 1;
    }
    let mut sign = 1i128;
    let mut prev = 1i128;
    for k in 0..n - 1 {
        if a[k][k] == 0 {
            match (k + 1..n).find(|&r| a[r][k] != 0) {
                Some(r) => {
                    a.swap(k, r);
                    sign = -sign;
                }
                None => return 0,
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev;
            }
        }
        prev = a[k][k];
    }
    sign * a[n - 1][n - 1]
}

/// Largest order accepted by [`sum_principal_minors`].
pub const MINOR_ORACLE_MAX_ORDER: usize = 14;

/// Sum of all `k×k` principal minors, each by a Bareiss determinant.
/// Oracle-scale only (`n ≤ 14`). Subsets are visited in increasing bitmask order.
pub fn sum_principal_minors(s: &SeidelMatrix, k: usize) -> Result<i128> {
    let n = s.order();
    if n > MINOR_ORACLE_MAX_ORDER {
        return input(format!("principal-minor oracle limited to order {MINOR_ORACLE_MAX_ORDER}, got {n}"));
    }
    if k > n {
        return input(format!("minor order {k} exceeds matrix order {n}"));
    }
    if k == 0 {
        return Ok(1);
    }
    let mut total = 0i128;
    let mut mask: u32 = (1 << k) - 1;
    while mask < (1 << n) {
        let idx: Vec<usize> = (0..n).filter(|&b| mask >> b & 1 == 1).collect();
        let sub: Vec<Vec<i128>> =
            idx.iter().map(|&i| idx.iter().map(|&j| s.get(i, j) as i128).collect()).collect();
        total += bareiss_det(sub);
        // Gosper's hack: next mask with the same popcount
        let c = mask & mask.wrapping_neg();
        let r = mask + c;
        mask = (((r ^ mask) >> 2) / c) | r;
    }
    Ok(total)
}

/// Diamond count from `σ₄ = 8δ + C(n,4)`.
pub fn count_diamonds_spectral(t: &Tournament) -> Result<u64> {
    let (_, sigma4) = sigma_from_traces(&SeidelMatrix::from_tournament(t));
    let excess = sigma4 - choose4(t.order() as u64) as i64;
    if excess < 0 || excess % 8 != 0 {
        return Err(Error::Consistency(format!(
            "sigma4 - C(n,4) = {excess} is not a nonnegative multiple of 8"
        )));
    }
    Ok((excess / 8) as u64)
}

/// `S² = -(n-1)I`, i.e. `S·Sᵀ = (n-1)I`.
pub fn is_skew_conference(s: &SeidelMatrix) -> bool {
    let n = s.order();
    if n % 2 == 1 {
        return false;
    }
    (0..n).all(|i| (i + 1..n).all(|j| s.square_off_diag(i, j) == 0))
}

/// Which extremal characteristic polynomial, if any, a Seidel matrix has.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Extremal {
    /// `n ≡ 0 (mod 4)` and `P = (x² + n - 1)^{n/2}`.
    Even,
    /// `n ≡ 3 (mod 4)` and `P = x(x² + n)^{(n-1)/2}`.
    Odd,
    No,
}

impl Extremal {
    pub fn as_str(self) -> &'static str {
        match self {
            Extremal::Even => "even-extremal",
            Extremal::Odd => "odd-extremal",
            Extremal::No => "no",
        }
    }
}

/// The extremal polynomial for order `n`, when `n ≡ 0, 3 (mod 4)`.
pub fn extremal_charpoly(n: usize) -> Option<(Extremal, CharPoly)> {
    match n % 4 {
        0 => Some((Extremal::Even, CharPoly::power_of_quadratic(n as i64 - 1, n / 2, false))),
        3 => Some((Extremal::Odd, CharPoly::power_of_quadratic(n as i64, (n - 1) / 2, true))),
        _ => None,
    }
}

pub fn matches_extremal_charpoly(s: &SeidelMatrix) -> Extremal {
    let Some((kind, target)) = extremal_charpoly(s.order()) else {
        return Extremal::No;
    };
    // σ₄ must already agree; skip the O(n⁴) expansion otherwise
    if s.order() >= 4 && BigInt::from(sigma_from_traces(s).1) != *target.sigma(4) {
        return Extremal::No;
    }
    if char_poly(s) == target {
        kind
    } else {
        Extremal::No
    }
}

fn need_order4(n: usize) -> Result<i64> {
    if n < 4 {
        return input(format!("bound needs n >= 4, got {n}"));
    }
    Ok(n as i64)
}

/// Maximum possible number of diamonds in an `n`-tournament:
/// `n²(n-1)(n-2)/96` for even `n`, `n(n-1)(n-3)(n+1)/96` for odd `n`.
pub fn diamond_upper_bound(n: usize) -> Result<Rational64> {
    let n = need_order4(n)?;
    let num = if n % 2 == 0 { n * n * (n - 1) * (n - 2) } else { n * (n - 1) * (n - 3) * (n + 1) };
    Ok(Rational64::new(num, 96))
}

/// Upper bound on `σ₄`: `n(n-1)²(n-2)/8` (even), `n²(n-1)(n-3)/8` (odd).
pub fn sigma4_upper_bound(n: usize) -> Result<Rational64> {
    let n = need_order4(n)?;
    let num = if n % 2 == 0 { n * (n - 1) * (n - 1) * (n - 2) } else { n * n * (n - 1) * (n - 3) };
    Ok(Rational64::new(num, 8))
}
