//! Multivariate gcd by recursive primitive pseudo-remainder sequences.

use std::collections::BTreeMap;

use super::poly::{Monomial, MultiPoly, PolyRing};
use super::ring::{Field, Ring};

type P<R> = MultiPoly<<R as Ring>::Elem>;

fn main_var<R: Field>(ring: &PolyRing<R>, f: &P<R>, g: &P<R>) -> Option<usize> {
    (0..ring.nvars()).rev().find(|&v| f.degree_in(v) > 0 || g.degree_in(v) > 0)
}

/// Coefficients of `f` as a polynomial in variable `v`.
fn split<R: Field>(ring: &PolyRing<R>, f: &P<R>, v: usize) -> BTreeMap<u32, P<R>> {
    let mut out: BTreeMap<u32, Vec<(Monomial, R::Elem)>> = BTreeMap::new();
    for (m, c) in f.terms() {
        let mut rest = m.clone();
        let d = rest.0[v];
        rest.0[v] = 0;
        out.entry(d).or_default().push((rest, c.clone()));
    }
    out.into_iter().map(|(d, t)| (d, ring.from_terms(t))).collect()
}

fn var_pow<R: Field>(ring: &PolyRing<R>, v: usize, d: u32) -> P<R> {
    let mut m = Monomial::one(ring.nvars());
    m.0[v] = d;
    ring.term(m, ring.base().one())
}

fn lead_in<R: Field>(ring: &PolyRing<R>, f: &P<R>, v: usize) -> (u32, P<R>) {
    let d = f.degree_in(v);
    let terms = f.terms().filter(|(m, _)| m.0[v] == d).map(|(m, c)| {
        let mut rest = m.clone();
        rest.0[v] = 0;
        (rest, c.clone())
    });
    (d, ring.from_terms(terms))
}

/// Dense coefficients of a polynomial in the single variable `v`, constant first.
fn dense<R: Field>(ring: &PolyRing<R>, f: &P<R>, v: usize) -> Vec<R::Elem> {
    let mut out = vec![ring.base().zero(); f.degree_in(v) as usize + 1];
    for (m, c) in f.terms() {
        out[m.0[v] as usize] = c.clone();
    }
    out
}

fn univariate_gcd<R: Field>(ring: &PolyRing<R>, f: &P<R>, g: &P<R>, v: usize) -> P<R> {
    let k = ring.base();
    let trim = |a: &mut Vec<R::Elem>| {
        while a.last().is_some_and(|c| k.is_zero(c)) {
            a.pop();
        }
    };
    let (mut a, mut b) = (dense(ring, f, v), dense(ring, g, v));
    trim(&mut a);
    trim(&mut b);
    while !b.is_empty() {
        let lb = k.inv(b.last().unwrap()).expect("nonzero leading coefficient");
        while a.len() >= b.len() {
            let q = k.mul(a.last().unwrap(), &lb);
            let shift = a.len() - b.len();
            for (i, c) in b.iter().enumerate() {
                a[shift + i] = k.sub(&a[shift + i], &k.mul(&q, c));
            }
            trim(&mut a);
        }
        std::mem::swap(&mut a, &mut b);
    }
    let terms = a.into_iter().enumerate().map(|(d, c)| {
        let mut m = Monomial::one(ring.nvars());
        m.0[v] = d as u32;
        (m, c)
    });
    ring.make_monic(&ring.from_terms(terms))
}

fn univariate_in<R: Field>(f: &P<R>, v: usize) -> bool {
    f.terms().all(|(m, _)| m.0.iter().enumerate().all(|(i, &e)| i == v || e == 0))
}

fn prem<R: Field>(ring: &PolyRing<R>, a: &P<R>, b: &P<R>, v: usize) -> P<R> {
    let (db, lb) = lead_in(ring, b, v);
    let mut a = a.clone();
    loop {
        if a.is_zero() {
            return a;
        }
        let (da, la) = lead_in(ring, &a, v);
        if da < db {
            return a;
        }
        let shifted = ring.mul(&ring.mul(&la, &var_pow(ring, v, da - db)), b);
        a = ring.sub(&ring.mul(&lb, &a), &shifted);
    }
}

fn content<R: Field>(ring: &PolyRing<R>, f: &P<R>, v: usize) -> P<R> {
    let mut acc = ring.zero();
    for c in split(ring, f, v).values() {
        acc = gcd(ring, &acc, c);
        if ring.as_constant(&acc).is_some() && !acc.is_zero() {
            return ring.one();
        }
    }
    acc
}

fn primitive_part<R: Field>(ring: &PolyRing<R>, f: &P<R>, v: usize) -> P<R> {
    let c = content(ring, f, v);
    ring.exact_div(f, &c).expect("content divides")
}

/// Gcd when one side is a single term: the largest monomial dividing both.
fn monomial_gcd<R: Field>(ring: &PolyRing<R>, f: &P<R>, g: &P<R>) -> P<R> {
    let mut e: Option<Monomial> = None;
    for (m, _) in f.terms().chain(g.terms()) {
        e = Some(match e {
            None => m.clone(),
            Some(acc) => Monomial(acc.0.iter().zip(&m.0).map(|(a, b)| (*a).min(*b)).collect()),
        });
    }
    ring.term(e.expect("nonzero"), ring.base().one())
}

/// Monic gcd; `gcd(0, 0) = 0`.
pub fn gcd<R: Field>(ring: &PolyRing<R>, f: &P<R>, g: &P<R>) -> P<R> {
    if f.is_zero() {
        return ring.make_monic(g);
    }
    if g.is_zero() {
        return ring.make_monic(f);
    }
    if f.num_terms() == 1 || g.num_terms() == 1 {
        return monomial_gcd(ring, f, g);
    }
    let Some(v) = main_var(ring, f, g) else {
        return ring.one();
    };
    if univariate_in::<R>(f, v) && univariate_in::<R>(g, v) {
        return univariate_gcd(ring, f, g, v);
    }
    if f.degree_in(v) == 0 || g.degree_in(v) == 0 {
        let (x, y) = if f.degree_in(v) == 0 { (f, g) } else { (g, f) };
        return gcd(ring, x, &content(ring, y, v));
    }
    let c = gcd(ring, &content(ring, f, v), &content(ring, g, v));
    let (mut a, mut b) = (primitive_part(ring, f, v), primitive_part(ring, g, v));
    if a.degree_in(v) < b.degree_in(v) {
        std::mem::swap(&mut a, &mut b);
    }
    loop {
        let r = prem(ring, &a, &b, v);
        if r.is_zero() {
            break;
        }
        if r.degree_in(v) == 0 {
            b = ring.one();
            break;
        }
        a = b;
        b = primitive_part(ring, &r, v);
    }
    ring.make_monic(&ring.mul(&c, &b))
}
