#![allow(dead_code)]

use hsfield::algebra::{Fe, Gf, Monomial, MultiPoly, PolyRing, RatFunc, RatFuncField, Ring};
use hsfield::trunc::{pack, TruncRing, TruncSeries};
use proptest::prelude::*;

pub type Terms = Vec<(Vec<u32>, u32)>;

pub fn terms(nvars: usize, max_exp: u32, max_terms: usize) -> impl Strategy<Value = Terms> {
    prop::collection::vec((prop::collection::vec(0..=max_exp, nvars), any::<u32>()), 0..=max_terms)
}

pub fn poly(ring: &PolyRing<Gf>, t: &Terms, max_deg: u32) -> MultiPoly<Fe> {
    let f = ring.base();
    ring.from_terms(
        t.iter()
            .filter(|(e, _)| e.iter().sum::<u32>() <= max_deg)
            .map(|(e, c)| (Monomial(e.clone()), f.from_int((*c % f.p() as u32) as i64))),
    )
}

pub fn series(ring: &TruncRing<Gf>, t: &Terms) -> TruncSeries<Fe> {
    let f = ring.coeff_ring();
    let b = ring.bound();
    ring.from_keys(t.iter().map(|(e, c)| {
        let e: Vec<u32> = e.iter().map(|x| x % b).collect();
        (pack(&e), f.from_int((*c % f.p() as u32) as i64))
    }))
}

pub fn ratfunc(k: &RatFuncField, num: &Terms, den: &Terms, max_deg: u32) -> RatFunc {
    let kp = k.poly_ring();
    let d = poly(kp, den, max_deg);
    let d = if d.is_zero() { kp.one() } else { d };
    k.frac(poly(kp, num, max_deg), d).unwrap()
}

pub fn ring(p: u64, names: &[&str]) -> PolyRing<Gf> {
    PolyRing::new(Gf::prime(p).unwrap(), names.iter().map(|s| s.to_string()).collect())
}

pub fn fields(p: u64, names: &[&str]) -> RatFuncField {
    RatFuncField::new(ring(p, names))
}
