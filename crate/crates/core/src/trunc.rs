//! Truncated polynomial rings `R[X]/(X_1^B, ..., X_a^B)`.
//!
//! With `B = p^m` this is `R[v_m]`; the two-block ring of arity `2e` holds
//! comultiplication images with the `w` block first. Exponent vectors are
//! packed into a `u128` whose natural order is graded lexicographic.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::Arc;

use crate::algebra::gf::{Fe, Gf};
use crate::algebra::poly::{MultiPoly, PolyRing};
use crate::algebra::ring::Ring;
use crate::error::{Error, Result};

pub const MAX_ARITY: usize = 7;
const FIELD_BITS: u32 = 16;
const DEG_SHIFT: u32 = 112;

/// Packed exponent vector.
pub type ExpKey = u128;

pub fn pack(exps: &[u32]) -> ExpKey {
    debug_assert!(exps.len() <= MAX_ARITY);
    let mut key = (exps.iter().sum::<u32>() as u128) << DEG_SHIFT;
    for (k, &e) in exps.iter().enumerate() {
        key |= (e as u128) << (FIELD_BITS * (6 - k as u32));
    }
    key
}

pub fn unpack(key: ExpKey, arity: usize) -> Vec<u32> {
    (0..arity).map(|k| entry(key, k)).collect()
}

#[inline]
fn entry(key: ExpKey, k: usize) -> u32 {
    ((key >> (FIELD_BITS * (6 - k as u32))) & 0xffff) as u32
}

pub fn key_degree(key: ExpKey) -> u32 {
    (key >> DEG_SHIFT) as u32
}

/// The index set `[B]^e` listed in graded lexicographic order.
#[derive(Clone, Debug)]
pub struct IndexSet {
    bound: u32,
    dim: usize,
    list: Vec<Vec<u32>>,
    rank: HashMap<ExpKey, usize>,
}

impl IndexSet {
    pub fn new(bound: u32, dim: usize) -> Self {
        let mut keys: Vec<ExpKey> = Vec::new();
        let mut cur = vec![0u32; dim];
        loop {
            keys.push(pack(&cur));
            let mut k = dim;
            loop {
                if k == 0 {
                    keys.sort_unstable();
                    let list: Vec<Vec<u32>> = keys.iter().map(|&x| unpack(x, dim)).collect();
                    let rank = keys.iter().enumerate().map(|(i, &x)| (x, i)).collect();
                    return IndexSet { bound, dim, list, rank };
                }
                k -= 1;
                cur[k] += 1;
                if cur[k] < bound {
                    break;
                }
                cur[k] = 0;
            }
        }
    }

    pub fn len(&self) -> usize {
        self.list.len()
    }

    pub fn is_empty(&self) -> bool {
        self.list.is_empty()
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn bound(&self) -> u32 {
        self.bound
    }

    pub fn get(&self, r: usize) -> &[u32] {
        &self.list[r]
    }

    pub fn iter(&self) -> impl Iterator<Item = &[u32]> {
        self.list.iter().map(Vec::as_slice)
    }

    pub fn rank_of(&self, i: &[u32]) -> Option<usize> {
        if i.len() != self.dim || i.iter().any(|&x| x >= self.bound) {
            return None;
        }
        self.rank.get(&pack(i)).copied()
    }

    /// Rank of the unit vector along `axis`, if the bound allows it.
    pub fn unit(&self, axis: usize) -> Option<usize> {
        let mut v = vec![0; self.dim];
        v[axis] = 1;
        self.rank_of(&v)
    }
}

pub fn fmt_index(i: &[u32]) -> String {
    i.iter().map(u32::to_string).collect::<Vec<_>>().join(",")
}

/// Sparse element of a truncated ring.
#[derive(Clone, PartialEq, Debug)]
pub struct TruncSeries<C> {
    terms: BTreeMap<ExpKey, C>,
}

impl<C> TruncSeries<C> {
    pub fn zero() -> Self {
        TruncSeries { terms: BTreeMap::new() }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Terms in graded lexicographic order of exponents.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (ExpKey, &C)> {
        self.terms.iter().map(|(k, c)| (*k, c))
    }

    pub fn get(&self, key: ExpKey) -> Option<&C> {
        self.terms.get(&key)
    }
}

#[derive(Clone)]
pub struct TruncRing<R: Ring> {
    coeff: R,
    bound: u32,
    level: Option<u32>,
    names: Arc<Vec<String>>,
}

impl<R: Ring> fmt::Debug for TruncRing<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}[{}]/(^{})", self.coeff, self.names.join(","), self.bound)
    }
}

impl<R: Ring + PartialEq> PartialEq for TruncRing<R> {
    fn eq(&self, other: &Self) -> bool {
        self.coeff == other.coeff && self.bound == other.bound && self.names == other.names
    }
}

fn block_names(prefix: &str, e: usize) -> impl Iterator<Item = String> + '_ {
    (1..=e).map(move |i| format!("{prefix}{i}"))
}

impl<R: Ring> TruncRing<R> {
    /// `R[v_m]` in `e` variables `v1..ve`.
    pub fn new(coeff: R, m: u32, e: usize) -> Result<Self> {
        let bound = level_bound(coeff.characteristic(), m)?;
        let mut r = Self::with_bound(coeff, block_names("v", e).collect(), bound)?;
        r.level = Some(m);
        Ok(r)
    }

    /// `R[w_m, v_m]`, the `w` block first.
    pub fn two_block(coeff: R, m: u32, e: usize) -> Result<Self> {
        let bound = level_bound(coeff.characteristic(), m)?;
        let names = block_names("w", e).chain(block_names("v", e)).collect();
        let mut r = Self::with_bound(coeff, names, bound)?;
        r.level = Some(m);
        Ok(r)
    }

    pub fn with_bound(coeff: R, names: Vec<String>, bound: u32) -> Result<Self> {
        if names.len() > MAX_ARITY {
            return Err(Error::arg(format!("arity {} exceeds {MAX_ARITY}", names.len())));
        }
        if bound == 0 || (bound as u64 - 1) * names.len() as u64 >= 1 << FIELD_BITS {
            return Err(Error::arg(format!("truncation bound {bound} out of range")));
        }
        Ok(TruncRing { coeff, bound, level: None, names: Arc::new(names) })
    }

    pub fn coeff_ring(&self) -> &R {
        &self.coeff
    }

    pub fn arity(&self) -> usize {
        self.names.len()
    }

    pub fn bound(&self) -> u32 {
        self.bound
    }

    pub fn level(&self) -> Option<u32> {
        self.level
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn index_set(&self) -> IndexSet {
        IndexSet::new(self.bound, self.arity())
    }

    /// Same variables and bound over another coefficient ring.
    pub fn over<S: Ring>(&self, coeff: S) -> TruncRing<S> {
        TruncRing { coeff, bound: self.bound, level: self.level, names: self.names.clone() }
    }

    /// Same variables and coefficients, lower level.
    pub fn at_level(&self, m: u32) -> Result<Self> {
        let bound = level_bound(self.coeff.characteristic(), m)?;
        if bound > self.bound {
            return Err(Error::arg(format!("level {m} exceeds the ring's level")));
        }
        Ok(TruncRing { coeff: self.coeff.clone(), bound, level: Some(m), names: self.names.clone() })
    }

    fn in_bounds(&self, key: ExpKey) -> bool {
        (0..self.arity()).all(|k| entry(key, k) < self.bound)
            && (self.arity()..MAX_ARITY).all(|k| entry(key, k) == 0)
    }

    fn accumulate(&self, acc: &mut BTreeMap<ExpKey, R::Elem>, key: ExpKey, c: R::Elem) {
        if self.coeff.is_zero(&c) {
            return;
        }
        match acc.entry(key) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let s = self.coeff.add(o.get(), &c);
                if self.coeff.is_zero(&s) {
                    o.remove();
                } else {
                    *o.get_mut() = s;
                }
            }
        }
    }

    /// Collect terms, discarding exponents outside the bound.
    pub fn from_keys<I: IntoIterator<Item = (ExpKey, R::Elem)>>(&self, terms: I) -> TruncSeries<R::Elem> {
        let mut acc = BTreeMap::new();
        for (k, c) in terms {
            if self.in_bounds(k) {
                self.accumulate(&mut acc, k, c);
            }
        }
        TruncSeries { terms: acc }
    }

    pub fn from_terms<I, E>(&self, terms: I) -> TruncSeries<R::Elem>
    where
        I: IntoIterator<Item = (E, R::Elem)>,
        E: AsRef<[u32]>,
    {
        self.from_keys(terms.into_iter().filter_map(|(e, c)| {
            let e = e.as_ref();
            (e.len() == self.arity()).then(|| (pack(e), c))
        }))
    }

    pub fn constant(&self, c: R::Elem) -> TruncSeries<R::Elem> {
        self.from_keys([(pack(&[]), c)])
    }

    pub fn monomial(&self, exps: &[u32], c: R::Elem) -> TruncSeries<R::Elem> {
        self.from_terms([(exps, c)])
    }

    pub fn var(&self, k: usize) -> TruncSeries<R::Elem> {
        let mut e = vec![0; self.arity()];
        e[k] = 1;
        self.monomial(&e, self.coeff.one())
    }

    /// Coefficient at an exponent vector.
    pub fn coeff(&self, a: &TruncSeries<R::Elem>, i: &[u32]) -> Result<R::Elem> {
        if i.len() != self.arity() || i.iter().any(|&x| x >= self.bound) {
            return Err(Error::arg(format!("index ({}) out of range", fmt_index(i))));
        }
        Ok(self.coeff_at(a, pack(i)))
    }

    pub fn coeff_at(&self, a: &TruncSeries<R::Elem>, key: ExpKey) -> R::Elem {
        a.terms.get(&key).cloned().unwrap_or_else(|| self.coeff.zero())
    }

    pub fn constant_term(&self, a: &TruncSeries<R::Elem>) -> R::Elem {
        self.coeff_at(a, 0)
    }

    /// Check that `a` could have come from this ring.
    pub fn validate(&self, a: &TruncSeries<R::Elem>) -> Result<()> {
        match a.terms.keys().find(|&&k| !self.in_bounds(k)) {
            None => Ok(()),
            Some(&k) => Err(Error::arg(format!(
                "term with exponent ({}) does not belong to {:?}",
                fmt_index(&unpack(k, MAX_ARITY)),
                self
            ))),
        }
    }

    /// Checked product.
    pub fn ts_mul(&self, a: &TruncSeries<R::Elem>, b: &TruncSeries<R::Elem>) -> Result<TruncSeries<R::Elem>> {
        self.validate(a)?;
        self.validate(b)?;
        Ok(self.mul(a, b))
    }

    /// Inverse of a series with invertible constant term.
    pub fn invert(&self, a: &TruncSeries<R::Elem>) -> Result<TruncSeries<R::Elem>> {
        let c0 = self.constant_term(a);
        let ci = self
            .coeff
            .inv(&c0)
            .ok_or_else(|| Error::NotUnit(format!("constant term {} is not invertible", self.coeff.fmt_elem(&c0))))?;
        // a = c0 (1 + n) with n nilpotent; 1/(1+n) = sum (-n)^k.
        let mut n = self.scale_elem(&ci, a);
        n.terms.remove(&0);
        let neg_n = self.neg(&n);
        let mut acc = self.one();
        let mut pw = self.one();
        loop {
            pw = self.mul(&pw, &neg_n);
            if pw.is_zero() {
                break;
            }
            acc = self.add(&acc, &pw);
        }
        Ok(self.scale_elem(&ci, &acc))
    }

    pub fn scale_elem(&self, c: &R::Elem, a: &TruncSeries<R::Elem>) -> TruncSeries<R::Elem> {
        self.from_keys(a.terms().map(|(k, x)| (k, self.coeff.mul(c, x))))
    }

    /// Reduce into a ring of the same arity with a smaller bound.
    pub fn truncate_into(&self, target: &TruncRing<R>, a: &TruncSeries<R::Elem>) -> Result<TruncSeries<R::Elem>> {
        if target.arity() != self.arity() || target.bound > self.bound {
            return Err(Error::arg("truncation target must have equal arity and smaller bound"));
        }
        Ok(target.from_keys(a.terms().map(|(k, c)| (k, c.clone()))))
    }

    pub fn map_coeffs<S: Ring>(
        &self,
        target: &TruncRing<S>,
        a: &TruncSeries<R::Elem>,
        f: impl Fn(&R::Elem) -> S::Elem,
    ) -> TruncSeries<S::Elem> {
        target.from_keys(a.terms().map(|(k, c)| (k, f(c))))
    }

    /// Move variable `k` to position `positions[k]` of `target`.
    pub fn embed(&self, target: &TruncRing<R>, a: &TruncSeries<R::Elem>, positions: &[usize]) -> TruncSeries<R::Elem> {
        let n = target.arity();
        target.from_keys(a.terms().map(|(k, c)| {
            let mut e = vec![0; n];
            for (src, &dst) in positions.iter().enumerate() {
                e[dst] += entry(k, src);
            }
            (pack(&e), c.clone())
        }))
    }

    /// Exact composite `f(args)` of a polynomial over the coefficient ring.
    pub fn substitute_poly(&self, src: &PolyRing<R>, f: &MultiPoly<R::Elem>, args: &[TruncSeries<R::Elem>]) -> Result<TruncSeries<R::Elem>> {
        if args.len() != src.nvars() {
            return Err(Error::arg(format!("expected {} arguments, got {}", src.nvars(), args.len())));
        }
        for a in args {
            self.validate(a)?;
        }
        Ok(src.compose(self, f, args, |c| self.constant(c.clone())))
    }

    /// Exact composite `f(args)` of a truncated series.
    pub fn substitute(&self, src: &TruncRing<R>, f: &TruncSeries<R::Elem>, args: &[TruncSeries<R::Elem>]) -> Result<TruncSeries<R::Elem>> {
        if args.len() != src.arity() {
            return Err(Error::arg(format!("expected {} arguments, got {}", src.arity(), args.len())));
        }
        for a in args {
            self.validate(a)?;
        }
        Ok(compose_generic(self, f, args, |c| self.constant(c.clone()), src.arity()))
    }
}

/// Generic evaluation of a series at images in any ring.
pub fn compose_generic<C, T: Ring>(
    target: &T,
    f: &TruncSeries<C>,
    images: &[T::Elem],
    embed: impl Fn(&C) -> T::Elem,
    arity: usize,
) -> T::Elem {
    let mut powers: Vec<Vec<T::Elem>> = images.iter().map(|x| vec![target.one(), x.clone()]).collect();
    let mut acc = target.zero();
    for (k, c) in f.terms() {
        let mut t = embed(c);
        for (v, cache) in powers.iter_mut().enumerate().take(arity) {
            let e = entry(k, v) as usize;
            if e == 0 {
                continue;
            }
            while cache.len() <= e {
                let next = target.mul(cache.last().unwrap(), &images[v]);
                cache.push(next);
            }
            t = target.mul(&t, &cache[e]);
        }
        acc = target.add(&acc, &t);
    }
    acc
}

pub fn level_bound(p: u64, m: u32) -> Result<u32> {
    p.checked_pow(m)
        .filter(|&b| b < 1 << FIELD_BITS)
        .map(|b| b as u32)
        .ok_or_else(|| Error::arg(format!("level {m} too large for p = {p}")))
}

impl<R: Ring> Ring for TruncRing<R> {
    type Elem = TruncSeries<R::Elem>;

    fn zero(&self) -> Self::Elem {
        TruncSeries::zero()
    }

    fn one(&self) -> Self::Elem {
        self.constant(self.coeff.one())
    }

    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        let mut acc = a.terms.clone();
        for (k, c) in b.terms() {
            self.accumulate(&mut acc, k, c.clone());
        }
        TruncSeries { terms: acc }
    }

    fn neg(&self, a: &Self::Elem) -> Self::Elem {
        TruncSeries { terms: a.terms.iter().map(|(k, c)| (*k, self.coeff.neg(c))).collect() }
    }

    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        let mut acc = BTreeMap::new();
        for (ka, ca) in a.terms() {
            for (kb, cb) in b.terms() {
                let k = ka + kb;
                if (0..self.arity()).all(|v| entry(k, v) < self.bound) {
                    self.accumulate(&mut acc, k, self.coeff.mul(ca, cb));
                }
            }
        }
        TruncSeries { terms: acc }
    }

    fn is_zero(&self, a: &Self::Elem) -> bool {
        a.is_zero()
    }

    fn inv(&self, a: &Self::Elem) -> Option<Self::Elem> {
        self.invert(a).ok()
    }

    fn base_field(&self) -> &Gf {
        self.coeff.base_field()
    }

    fn from_base(&self, c: Fe) -> Self::Elem {
        self.constant(self.coeff.from_base(c))
    }

    fn map_base(&self, a: &Self::Elem, f: &dyn Fn(Fe) -> Fe) -> Self::Elem {
        self.from_keys(a.terms().map(|(k, c)| (k, self.coeff.map_base(c, f))))
    }

    fn fmt_elem(&self, a: &Self::Elem) -> String {
        if a.is_zero() {
            return "0".into();
        }
        let parts: Vec<String> = a
            .terms()
            .map(|(k, c)| {
                let mut factors = Vec::new();
                if k == 0 || !self.coeff.is_one(c) {
                    let s = self.coeff.fmt_elem(c);
                    factors.push(if k != 0 && s.contains(['+', '/', ' ']) { format!("({s})") } else { s });
                }
                for v in 0..self.arity() {
                    match entry(k, v) {
                        0 => {}
                        1 => factors.push(self.names[v].clone()),
                        e => factors.push(format!("{}^{}", self.names[v], e)),
                    }
                }
                factors.join("*")
            })
            .collect();
        parts.join(" + ")
    }

    fn scale(&self, c: Fe, a: &Self::Elem) -> Self::Elem {
        let cc = self.coeff.from_base(c);
        self.scale_elem(&cc, a)
    }
}
