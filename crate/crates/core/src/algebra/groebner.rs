//! Buchberger's algorithm and ideal membership.

use std::collections::BTreeSet;

use super::poly::{Monomial, MultiPoly, PolyRing};
use super::ring::{Field, Ring};
use crate::error::{Error, Result};

pub const DEFAULT_PAIR_BUDGET: usize = 100_000;

type P<R> = MultiPoly<<R as Ring>::Elem>;

fn lm<R: Field>(ring: &PolyRing<R>, f: &P<R>) -> Monomial {
    ring.leading_term(f).expect("nonzero").0.clone()
}

fn s_poly<R: Field>(ring: &PolyRing<R>, f: &P<R>, g: &P<R>) -> P<R> {
    let (mf, cf) = ring.leading_term(f).unwrap();
    let (mg, cg) = ring.leading_term(g).unwrap();
    let l = mf.lcm(mg);
    let base = ring.base();
    let a = ring.mul_term(f, &mf.quotient_of(&l), &base.inv(cf).unwrap());
    let b = ring.mul_term(g, &mg.quotient_of(&l), &base.inv(cg).unwrap());
    ring.sub(&a, &b)
}

/// Remainder of `f` on division by `basis`.
pub fn normal_form<R: Field>(ring: &PolyRing<R>, f: &P<R>, basis: &[P<R>]) -> P<R> {
    if basis.is_empty() {
        return f.clone();
    }
    ring.divmod(f, basis).expect("nonzero basis").1
}

/// Reduced Groebner basis of the ideal generated by `gens`.
///
/// At most `budget` S-pairs are reduced before giving up.
pub fn buchberger<R: Field>(ring: &PolyRing<R>, gens: &[P<R>], budget: usize) -> Result<Vec<P<R>>> {
    let mut g: Vec<P<R>> = gens.iter().filter(|f| !f.is_zero()).map(|f| ring.make_monic(f)).collect();
    if g.iter().any(|f| ring.as_constant(f).is_some()) {
        return Ok(vec![ring.one()]);
    }
    let order = ring.order();
    let mut pairs: BTreeSet<(u32, usize, usize)> = BTreeSet::new();
    for j in 0..g.len() {
        for i in 0..j {
            pairs.insert((lm(ring, &g[i]).lcm(&lm(ring, &g[j])).degree(), i, j));
        }
    }
    let mut used = 0usize;
    while let Some(&pair) = pairs.iter().next() {
        pairs.remove(&pair);
        let (_, i, j) = pair;
        let (li, lj) = (lm(ring, &g[i]), lm(ring, &g[j]));
        if li.coprime(&lj) {
            continue;
        }
        used += 1;
        if used > budget {
            return Err(Error::Budget(format!("Buchberger exceeded {budget} S-pairs")));
        }
        let r = normal_form(ring, &s_poly(ring, &g[i], &g[j]), &g);
        if r.is_zero() {
            continue;
        }
        let r = ring.make_monic(&r);
        if ring.as_constant(&r).is_some() {
            return Ok(vec![ring.one()]);
        }
        let lr = lm(ring, &r);
        let k = g.len();
        g.push(r);
        for i in 0..k {
            pairs.insert((lm(ring, &g[i]).lcm(&lr).degree(), i, k));
        }
    }
    // Minimalize, then inter-reduce.
    let mut keep: Vec<P<R>> = Vec::new();
    for (idx, f) in g.iter().enumerate() {
        let m = lm(ring, f);
        let redundant = g.iter().enumerate().any(|(o, h)| {
            let mh = lm(ring, h);
            o != idx && mh.divides(&m) && (mh != m || o < idx)
        });
        if !redundant {
            keep.push(f.clone());
        }
    }
    let mut reduced = Vec::with_capacity(keep.len());
    for k in 0..keep.len() {
        let others: Vec<P<R>> = keep.iter().enumerate().filter(|&(o, _)| o != k).map(|(_, f)| f.clone()).collect();
        let nf = normal_form(ring, &keep[k], &others);
        reduced.push(ring.make_monic(&nf));
    }
    reduced.sort_by(|a, b| order.cmp(&lm(ring, a), &lm(ring, b)));
    Ok(reduced)
}

/// Membership of `f` in the ideal with Groebner basis `basis`.
pub fn ideal_membership<R: Field>(ring: &PolyRing<R>, f: &P<R>, basis: &[P<R>]) -> bool {
    normal_form(ring, f, basis).is_zero()
}

/// Whether some power of `f` lies in the ideal generated by `gens`.
pub fn radical_membership<R: Field>(ring: &PolyRing<R>, f: &P<R>, gens: &[P<R>], budget: usize) -> Result<bool> {
    let mut names = ring.names().to_vec();
    names.push("_rabinowitsch".into());
    let big = PolyRing::new(ring.base().clone(), names).with_order(ring.order());
    let map: Vec<usize> = (0..ring.nvars()).collect();
    let mut lifted: Vec<P<R>> = gens.iter().map(|g| ring.remap_vars(&big, g, &map)).collect();
    let y = big.var(ring.nvars());
    lifted.push(big.sub(&big.one(), &big.mul(&y, &ring.remap_vars(&big, f, &map))));
    let basis = buchberger(&big, &lifted, budget)?;
    Ok(basis.len() == 1 && big.is_one(&basis[0]))
}
