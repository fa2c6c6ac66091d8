//! Finite fields GF(p^k) backed by exp/log tables.
//!
//! An element is a polynomial `c₀ + c₁x + … + c_{k-1}x^{k-1}` over GF(p)
//! and is indexed by the base-p integer `c₀ + c₁p + … + c_{k-1}p^{k-1}`.
//! The modulus is the smallest monic irreducible of degree `k` when its
//! coefficients are compared from `x^{k-1}` down to `x⁰`; the generator is
//! the smallest primitive element by index.

use crate::error::{input, Result};

/// Largest supported field size.
pub const MAX_FIELD_SIZE: u64 = 1 << 16;

pub fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= p {
        if p % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// Splits `q = p^k` into `(p, k)`.
pub fn prime_power(q: u64) -> Option<(u64, u32)> {
    if q < 2 {
        return None;
    }
    let p = (2..=q).find(|d| q % d == 0)?;
    let mut k = 0;
    let mut r = q;
    while r % p == 0 {
        r /= p;
        k += 1;
    }
    (r == 1).then_some((p, k))
}

#[derive(Clone, Debug)]
pub struct FieldTable {
    p: u32,
    k: u32,
    q: u32,
    /// Low-order coefficients of the monic modulus, `[c₀, …, c_{k-1}]`.
    modulus: Vec<u32>,
    generator: u32,
    /// `exp[i] = g^i` for `0 ≤ i < q-1`.
    exp: Vec<u32>,
    /// `log[a]` for nonzero `a`; `log[0]` is unused.
    log: Vec<u32>,
}

fn digits(mut a: u32, p: u32, k: u32) -> Vec<u32> {
    (0..k)
        .map(|_| {
            let d = a % p;
            a /= p;
            d
        })
        .collect()
}

fn undigits(ds: &[u32], p: u32) -> u32 {
    ds.iter().rev().fold(0, |acc, &d| acc * p + d)
}

/// Remainder of `poly` (low-order first) by the monic polynomial with low coefficients `low`.
fn poly_rem(mut poly: Vec<u32>, low: &[u32], p: u32) -> Vec<u32> {
    let k = low.len();
    while poly.len() > k {
        let lead = poly.pop().unwrap();
        if lead == 0 {
            continue;
        }
        let shift = poly.len() - k;
        for (i, &c) in low.iter().enumerate() {
            let idx = shift + i;
            poly[idx] = (poly[idx] + (p - lead) * c % p) % p;
        }
    }
    poly.resize(k, 0);
    poly
}

fn poly_mul_mod(a: &[u32], b: &[u32], low: &[u32], p: u32) -> Vec<u32> {
    let mut prod = vec![0u32; a.len() + b.len()];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            prod[i + j] = (prod[i + j] + x * y) % p;
        }
    }
    poly_rem(prod, low, p)
}

/// A monic polynomial of degree `k` (given by its low coefficients) is
/// irreducible iff no monic polynomial of degree `1..=k/2` divides it.
fn is_irreducible(low: &[u32], p: u32) -> bool {
    let k = low.len();
    let mut full = low.to_vec();
    full.push(1);
    for d in 1..=k / 2 {
        for idx in 0..p.pow(d as u32) {
            let div_low = digits(idx, p, d as u32);
            if poly_rem(full.clone(), &div_low, p).iter().all(|&c| c == 0) {
                return false;
            }
        }
    }
    true
}

impl FieldTable {
    pub fn new(p: u64, k: u32) -> Result<Self> {
        if !is_prime(p) {
            return input(format!("{p} is not prime"));
        }
        if k == 0 {
            return input("extension degree must be at least 1");
        }
        let q = match p.checked_pow(k) {
            Some(q) if q <= MAX_FIELD_SIZE => q,
            _ => return input(format!("{p}^{k} exceeds the field size cap {MAX_FIELD_SIZE}")),
        };
        let (p, q) = (p as u32, q as u32);
        // Index order of the low coefficients already compares x^{k-1} first.
        let modulus = (0..q)
            .map(|idx| digits(idx, p, k))
            .find(|low| is_irreducible(low, p))
            .expect("an irreducible polynomial of every degree exists");

        let order = |g: u32| -> u32 {
            let gd = digits(g, p, k);
            let mut cur = gd.clone();
            let mut ord = 1;
            while undigits(&cur, p) != 1 {
                cur = poly_mul_mod(&cur, &gd, &modulus, p);
                ord += 1;
            }
            ord
        };
        let generator = (1..q).find(|&g| order(g) == q - 1).expect("GF(q)* is cyclic");

        let gd = digits(generator, p, k);
        let mut exp = Vec::with_capacity(q as usize - 1);
        let mut log = vec![0u32; q as usize];
        let mut cur = digits(1, p, k);
        for i in 0..q - 1 {
            let idx = undigits(&cur, p);
            exp.push(idx);
            log[idx as usize] = i;
            cur = poly_mul_mod(&cur, &gd, &modulus, p);
        }
        Ok(Self { p, k, q, modulus, generator, exp, log })
    }

    pub fn characteristic(&self) -> u32 {
        self.p
    }

    pub fn degree(&self) -> u32 {
        self.k
    }

    pub fn size(&self) -> u32 {
        self.q
    }

    /// Full modulus, low-order first, including the leading 1.
    pub fn modulus(&self) -> Vec<u32> {
        let mut m = self.modulus.clone();
        m.push(1);
        m
    }

    pub fn generator(&self) -> u32 {
        self.generator
    }

    pub fn exp_table(&self) -> &[u32] {
        &self.exp
    }

    pub fn log_table(&self) -> &[u32] {
        &self.log
    }

    pub fn add(&self, a: u32, b: u32) -> u32 {
        let (p, k) = (self.p, self.k);
        let s: Vec<u32> =
            digits(a, p, k).iter().zip(digits(b, p, k)).map(|(x, y)| (x + y) % p).collect();
        undigits(&s, p)
    }

    pub fn neg(&self, a: u32) -> u32 {
        let p = self.p;
        let s: Vec<u32> = digits(a, p, self.k).iter().map(|&x| (p - x) % p).collect();
        undigits(&s, p)
    }

    pub fn sub(&self, a: u32, b: u32) -> u32 {
        self.add(a, self.neg(b))
    }

    pub fn mul(&self, a: u32, b: u32) -> u32 {
        if a == 0 || b == 0 {
            return 0;
        }
        let e = (self.log[a as usize] as u64 + self.log[b as usize] as u64) % (self.q as u64 - 1);
        self.exp[e as usize]
    }

    /// Nonzero squares: the even powers of the generator.
    pub fn squares(&self) -> SquareSet {
        let mut member = vec![false; self.q as usize];
        for e in self.exp.iter().step_by(2) {
            member[*e as usize] = true;
        }
        // for even q every nonzero element is a square and q-1 is odd
        if self.p == 2 {
            for e in &self.exp {
                member[*e as usize] = true;
            }
        }
        SquareSet { member }
    }
}

/// Nonzero squares of a field, as a membership table over element indices.
#[derive(Clone, Debug)]
pub struct SquareSet {
    member: Vec<bool>,
}

impl SquareSet {
    pub fn contains(&self, a: u32) -> bool {
        self.member[a as usize]
    }

    pub fn len(&self) -> usize {
        self.member.iter().filter(|&&m| m).count()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn iter(&self) -> impl Iterator<Item = u32> + '_ {
        self.member.iter().enumerate().filter(|(_, &m)| m).map(|(i, _)| i as u32)
    }
}
