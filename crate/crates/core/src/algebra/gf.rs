//! Finite fields `F_q`, `q = p^n`.
//!
//! Prime fields use direct modular arithmetic. Extension fields encode an
//! element as the integer `sum d_i p^i` of its coefficient vector in the
//! power basis of `F_p[x]/(f)` and multiply through log/antilog tables built
//! from a primitive element, so `q` is capped at [`MAX_EXTENSION_ORDER`].

use std::fmt;
use std::sync::Arc;

use super::ring::{Field, Ring};
use crate::error::{Error, Result};

pub const MAX_EXTENSION_ORDER: u64 = 1 << 16;

/// An element of a finite field, meaningful only together with its [`Gf`].
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Default)]
pub struct Fe(pub u32);

#[derive(Debug)]
struct Inner {
    p: u64,
    n: u32,
    q: u64,
    /// Monic modulus, low degree first; empty for prime fields.
    modulus: Vec<u32>,
    /// Primitive element used for the tables and the `g^k` notation.
    generator: u32,
    exp: Vec<u32>,
    log: Vec<u32>,
}

#[derive(Clone)]
pub struct Gf(Arc<Inner>);

impl fmt::Debug for Gf {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.n == 1 {
            write!(f, "F_{}", self.0.p)
        } else {
            write!(f, "F_{}^{}{:?}", self.0.p, self.0.n, self.0.modulus)
        }
    }
}

impl PartialEq for Gf {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0)
            || (self.0.p == other.0.p && self.0.n == other.0.n && self.0.modulus == other.0.modulus)
    }
}

impl Eq for Gf {}

pub fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

fn prime_factors(mut x: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= x {
        if x.is_multiple_of(d) {
            out.push(d);
            while x.is_multiple_of(d) {
                x /= d;
            }
        }
        d += 1;
    }
    if x > 1 {
        out.push(x);
    }
    out
}

/// Conway polynomials for small fields, low degree first.
fn conway(p: u64, n: u32) -> Option<&'static [u32]> {
    Some(match (p, n) {
        (2, 2) => &[1, 1, 1],
        (2, 3) => &[1, 1, 0, 1],
        (2, 4) => &[1, 1, 0, 0, 1],
        (2, 5) => &[1, 0, 1, 0, 0, 1],
        (2, 6) => &[1, 1, 0, 1, 1, 0, 1],
        (3, 2) => &[2, 2, 1],
        (3, 3) => &[1, 2, 0, 1],
        (3, 4) => &[2, 0, 0, 2, 1],
        (5, 2) => &[2, 4, 1],
        (5, 3) => &[3, 3, 0, 1],
        (7, 2) => &[3, 6, 1],
        (7, 3) => &[4, 0, 6, 1],
        _ => return None,
    })
}

/// Dense polynomial arithmetic on base-p digit vectors, used only while
/// building tables.
struct Raw<'a> {
    p: u64,
    modulus: &'a [u32],
}

impl Raw<'_> {
    fn n(&self) -> usize {
        self.modulus.len() - 1
    }

    fn decode(&self, mut a: u64) -> Vec<u64> {
        let mut d = vec![0; self.n()];
        for slot in d.iter_mut() {
            *slot = a % self.p;
            a /= self.p;
        }
        d
    }

    fn encode(&self, d: &[u64]) -> u64 {
        d.iter().rev().fold(0, |acc, &x| acc * self.p + x)
    }

    fn mul(&self, a: u64, b: u64) -> u64 {
        let (a, b) = (self.decode(a), self.decode(b));
        let n = self.n();
        let mut prod = vec![0u64; 2 * n];
        for (i, &x) in a.iter().enumerate() {
            for (j, &y) in b.iter().enumerate() {
                prod[i + j] = (prod[i + j] + x * y) % self.p;
            }
        }
        for deg in (n..2 * n).rev() {
            let c = prod[deg];
            if c != 0 {
                for (k, &m) in self.modulus.iter().enumerate().take(n) {
                    let idx = deg - n + k;
                    prod[idx] = (prod[idx] + (self.p - c) * m as u64) % self.p;
                }
                prod[deg] = 0;
            }
        }
        self.encode(&prod[..n])
    }

    fn pow(&self, a: u64, mut e: u64) -> u64 {
        let mut acc = 1;
        let mut base = a;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }
}

impl Gf {
    /// The prime field `F_p`.
    pub fn prime(p: u64) -> Result<Gf> {
        if !is_prime(p) || p >= 1 << 31 {
            return Err(Error::arg(format!("{p} is not a supported prime")));
        }
        Ok(Gf(Arc::new(Inner {
            p,
            n: 1,
            q: p,
            modulus: Vec::new(),
            generator: 0,
            exp: Vec::new(),
            log: Vec::new(),
        })))
    }

    /// `F_{p^n}` with the built-in modulus (Conway polynomial where tabulated,
    /// otherwise the first primitive polynomial in counting order).
    pub fn new(p: u64, n: u32) -> Result<Gf> {
        if n == 1 {
            return Gf::prime(p);
        }
        if let Some(m) = conway(p, n) {
            return Gf::with_modulus(p, m);
        }
        Self::check_size(p, n)?;
        let q = p.pow(n);
        // Monic candidates x^n + c(x), c encoded in base p.
        for c in 1..q {
            let mut m: Vec<u32> = Raw { p, modulus: &vec![0; n as usize + 1] }
                .decode(c)
                .into_iter()
                .map(|d| d as u32)
                .collect();
            if m[0] == 0 {
                continue;
            }
            m.push(1);
            let raw = Raw { p, modulus: &m };
            if Self::is_primitive(&raw, p, q) {
                return Gf::with_modulus(p, &m);
            }
        }
        Err(Error::Unsupported(format!("no primitive polynomial found for F_{p}^{n}")))
    }

    fn check_size(p: u64, n: u32) -> Result<()> {
        if !is_prime(p) {
            return Err(Error::arg(format!("{p} is not prime")));
        }
        let q = (p as u128).checked_pow(n).unwrap_or(u128::MAX);
        if q > MAX_EXTENSION_ORDER as u128 {
            return Err(Error::Unsupported(format!(
                "extension field of order {p}^{n} exceeds {MAX_EXTENSION_ORDER}"
            )));
        }
        Ok(())
    }

    fn is_primitive(raw: &Raw<'_>, p: u64, q: u64) -> bool {
        Self::has_full_order(raw, p, q)
    }

    /// `p` itself encodes the class of `x`.
    fn has_full_order(raw: &Raw<'_>, a: u64, q: u64) -> bool {
        let order = q - 1;
        if raw.pow(a, order) != 1 {
            return false;
        }
        prime_factors(order).into_iter().all(|r| raw.pow(a, order / r) != 1)
    }

    /// `F_p[x]/(modulus)`; the modulus is monic, low degree first, and must be
    /// irreducible.
    pub fn with_modulus(p: u64, modulus: &[u32]) -> Result<Gf> {
        if modulus.len() < 2 || *modulus.last().unwrap() != 1 {
            return Err(Error::arg("modulus must be monic of degree >= 1"));
        }
        if modulus.iter().any(|&c| c as u64 >= p) {
            return Err(Error::arg("modulus coefficients must be reduced mod p"));
        }
        let n = (modulus.len() - 1) as u32;
        if n == 1 {
            return Gf::prime(p);
        }
        Self::check_size(p, n)?;
        let q = p.pow(n);
        let raw = Raw { p, modulus };
        // The unit group is cyclic of order q-1 iff the quotient is a field.
        let generator = if Self::has_full_order(&raw, p, q) {
            Some(p)
        } else {
            (2..q).find(|&a| Self::has_full_order(&raw, a, q))
        };
        let Some(generator) = generator else {
            return Err(Error::arg("modulus is not irreducible"));
        };
        let mut exp = vec![0u32; 2 * (q as usize - 1)];
        let mut log = vec![0u32; q as usize];
        let mut cur = 1u64;
        for k in 0..(q - 1) as usize {
            exp[k] = cur as u32;
            log[cur as usize] = k as u32;
            cur = raw.mul(cur, generator);
        }
        for k in (q - 1) as usize..exp.len() {
            exp[k] = exp[k - (q as usize - 1)];
        }
        Ok(Gf(Arc::new(Inner {
            p,
            n,
            q,
            modulus: modulus.to_vec(),
            generator: generator as u32,
            exp,
            log,
        })))
    }

    pub fn p(&self) -> u64 {
        self.0.p
    }

    pub fn degree(&self) -> u32 {
        self.0.n
    }

    pub fn order(&self) -> u64 {
        self.0.q
    }

    pub fn modulus(&self) -> &[u32] {
        &self.0.modulus
    }

    pub fn is_prime_field(&self) -> bool {
        self.0.n == 1
    }

    pub fn elements(&self) -> impl Iterator<Item = Fe> {
        (0..self.0.q as u32).map(Fe)
    }

    /// Generator of the multiplicative group (the `g` of the text grammar).
    pub fn generator(&self) -> Fe {
        if self.0.n == 1 {
            Fe(primitive_root(self.0.p) as u32)
        } else {
            Fe(self.0.generator)
        }
    }

    pub fn gen_pow(&self, k: u64) -> Fe {
        self.pow_fe(self.generator(), k)
    }

    /// Discrete log base [`Gf::generator`] of a nonzero element.
    pub fn log(&self, a: Fe) -> Option<u64> {
        if a.0 == 0 {
            return None;
        }
        if self.0.n > 1 {
            return Some(self.0.log[a.0 as usize] as u64);
        }
        let g = self.generator();
        let mut cur = Fe(1);
        for k in 0..self.0.p - 1 {
            if cur == a {
                return Some(k);
            }
            cur = self.mul_fe(cur, g);
        }
        None
    }

    pub fn from_int(&self, n: i64) -> Fe {
        Fe(n.rem_euclid(self.0.p as i64) as u32)
    }

    /// Elements of the prime subfield are encoded by their integer value.
    pub fn in_prime_subfield(&self, a: Fe) -> bool {
        (a.0 as u64) < self.0.p
    }

    pub fn add_fe(&self, a: Fe, b: Fe) -> Fe {
        let p = self.0.p;
        if self.0.n == 1 {
            return Fe(((a.0 as u64 + b.0 as u64) % p) as u32);
        }
        if p == 2 {
            return Fe(a.0 ^ b.0);
        }
        let (mut x, mut y, mut out, mut place) = (a.0 as u64, b.0 as u64, 0u64, 1u64);
        while x > 0 || y > 0 {
            out += ((x % p + y % p) % p) * place;
            x /= p;
            y /= p;
            place *= p;
        }
        Fe(out as u32)
    }

    pub fn neg_fe(&self, a: Fe) -> Fe {
        let p = self.0.p;
        if self.0.n == 1 {
            return Fe(((p - a.0 as u64) % p) as u32);
        }
        if p == 2 {
            return a;
        }
        let (mut x, mut out, mut place) = (a.0 as u64, 0u64, 1u64);
        while x > 0 {
            out += ((p - x % p) % p) * place;
            x /= p;
            place *= p;
        }
        Fe(out as u32)
    }

    pub fn sub_fe(&self, a: Fe, b: Fe) -> Fe {
        self.add_fe(a, self.neg_fe(b))
    }

    pub fn mul_fe(&self, a: Fe, b: Fe) -> Fe {
        if a.0 == 0 || b.0 == 0 {
            return Fe(0);
        }
        if self.0.n == 1 {
            return Fe(((a.0 as u64 * b.0 as u64) % self.0.p) as u32);
        }
        let i = self.0.log[a.0 as usize] as usize + self.0.log[b.0 as usize] as usize;
        Fe(self.0.exp[i])
    }

    pub fn inv_fe(&self, a: Fe) -> Option<Fe> {
        if a.0 == 0 {
            return None;
        }
        if self.0.n == 1 {
            return Some(self.pow_fe(a, self.0.p - 2));
        }
        let l = self.0.log[a.0 as usize] as usize;
        let qm1 = self.0.q as usize - 1;
        Some(Fe(self.0.exp[(qm1 - l) % qm1]))
    }

    pub fn pow_fe(&self, a: Fe, mut e: u64) -> Fe {
        let mut acc = Fe(1);
        let mut base = a;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul_fe(acc, base);
            }
            base = self.mul_fe(base, base);
            e >>= 1;
        }
        acc
    }

    /// `a -> a^(p^i)`.
    pub fn frobenius(&self, a: Fe, i: u32) -> Fe {
        let i = i % self.0.n;
        self.pow_fe(a, self.0.p.pow(i))
    }

    /// The unique p-th root (finite fields are perfect).
    pub fn pth_root(&self, a: Fe) -> Fe {
        self.pow_fe(a, self.0.q / self.0.p)
    }

    pub fn fmt_fe(&self, a: Fe) -> String {
        if self.in_prime_subfield(a) {
            a.0.to_string()
        } else {
            format!("g^{}", self.0.log[a.0 as usize])
        }
    }
}

fn primitive_root(p: u64) -> u64 {
    if p == 2 {
        return 1;
    }
    let factors = prime_factors(p - 1);
    let powmod = |mut b: u64, mut e: u64| {
        let mut acc = 1u64;
        b %= p;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * b % p;
            }
            b = b * b % p;
            e >>= 1;
        }
        acc
    };
    (2..p)
        .find(|&g| factors.iter().all(|&r| powmod(g, (p - 1) / r) != 1))
        .expect("prime field has a primitive root")
}

impl Ring for Gf {
    type Elem = Fe;

    fn zero(&self) -> Fe {
        Fe(0)
    }
    fn one(&self) -> Fe {
        Fe(1)
    }
    fn add(&self, a: &Fe, b: &Fe) -> Fe {
        self.add_fe(*a, *b)
    }
    fn neg(&self, a: &Fe) -> Fe {
        self.neg_fe(*a)
    }
    fn sub(&self, a: &Fe, b: &Fe) -> Fe {
        self.sub_fe(*a, *b)
    }
    fn mul(&self, a: &Fe, b: &Fe) -> Fe {
        self.mul_fe(*a, *b)
    }
    fn is_zero(&self, a: &Fe) -> bool {
        a.0 == 0
    }
    fn inv(&self, a: &Fe) -> Option<Fe> {
        self.inv_fe(*a)
    }
    fn base_field(&self) -> &Gf {
        self
    }
    fn from_base(&self, c: Fe) -> Fe {
        c
    }
    fn map_base(&self, a: &Fe, f: &dyn Fn(Fe) -> Fe) -> Fe {
        f(*a)
    }
    fn fmt_elem(&self, a: &Fe) -> String {
        self.fmt_fe(*a)
    }
    fn pow(&self, a: &Fe, e: u64) -> Fe {
        self.pow_fe(*a, e)
    }
}

impl Field for Gf {}

/// The p-th root function on a finite field: total, since `F_q` is perfect.
pub fn lambda_fe(field: &Gf, a: Fe) -> Fe {
    field.pth_root(a)
}
