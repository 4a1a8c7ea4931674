//! Reference computations that avoid the packed truncated-series code paths.

use std::collections::HashMap;

use crate::algebra::gf::{Fe, Gf};
use crate::algebra::linalg::rank;
use crate::algebra::poly::{Monomial, MultiPoly, PolyRing};
use crate::algebra::ratfunc::{RatFunc, RatFuncField};
use crate::algebra::ring::Ring;
use crate::error::Result;
use crate::formal_group::FormalGroupLaw;
use crate::trunc::{level_bound, IndexSet};

pub fn binomial(n: u64, k: u64) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1u128, |acc, i| acc * u128::from(n - i) / u128::from(i + 1))
}

pub fn factorial(n: u64) -> u128 {
    (1..=u128::from(n)).product()
}

/// `c[i][j][k]` as the coefficient of `v^i w^j` in `F(v, w)^k`, expanded with
/// plain polynomial arithmetic and exponents `>= p^m` discarded.
pub fn naive_structure_constants(law: &FormalGroupLaw, m: u32) -> Result<HashMap<(usize, usize, usize), Fe>> {
    let e = law.dim();
    let field = law.field();
    let bound = level_bound(field.p(), m)?;
    let idx = IndexSet::new(bound, e);
    let names = (1..=e).map(|a| format!("w{a}")).chain((1..=e).map(|a| format!("v{a}"))).collect();
    let r = PolyRing::new(field.clone(), names);
    let cut = |f: MultiPoly<Fe>| -> MultiPoly<Fe> {
        r.from_terms(f.into_terms().into_iter().filter(|(mono, _)| mono.0.iter().all(|&x| x < bound)))
    };
    // F(v, w): X -> v, Y -> w.
    let args: Vec<MultiPoly<Fe>> = (0..e).map(|a| r.var(e + a)).chain((0..e).map(|a| r.var(a))).collect();
    let f: Vec<MultiPoly<Fe>> = law.series().iter().map(|s| cut(law.ring().compose(&r, s, &args, |c| r.constant(*c)))).collect();
    let mut powers: Vec<MultiPoly<Fe>> = Vec::with_capacity(idx.len());
    for (kr, k) in idx.iter().enumerate() {
        let p = match k.iter().position(|&x| x > 0) {
            None => r.one(),
            Some(a) => {
                let mut prev = k.to_vec();
                prev[a] -= 1;
                let pr = idx.rank_of(&prev).expect("index set is downward closed");
                debug_assert!(pr < kr);
                cut(r.mul(&powers[pr], &f[a]))
            }
        };
        powers.push(p);
    }
    let mut out = HashMap::new();
    for (kr, p) in powers.iter().enumerate() {
        for (mono, c) in p.terms() {
            let j = idx.rank_of(&mono.0[..e]).expect("cut to the bound");
            let i = idx.rank_of(&mono.0[e..]).expect("cut to the bound");
            out.insert((i, j, kr), *c);
        }
    }
    Ok(out)
}

/// The double-sum rule for the two-dimensional Witt group at `p = 2`, in the
/// coordinates where the cocycle enters the first coordinate:
/// the coefficient of `D_(n1,n2)` in `D_(k,l) ∘ D_(i,j)`.
pub fn witt_double_sum_p2(i: u64, j: u64, k: u64, l: u64, n1: u64, n2: u64) -> u8 {
    let mut acc = 0u128;
    for t in 0..=j.min(l) {
        if i + k + t != n1 || j + l != n2 + 2 * t {
            continue;
        }
        let a = factorial(i + k + t) / (factorial(i) * factorial(k) * factorial(t));
        let b = factorial(j + l - 2 * t) / (factorial(j - t) * factorial(l - t));
        acc += a * b;
    }
    (acc % 2) as u8
}

/// `x = a/b` as coordinates over `C = F_2(s)`, `s = t^2`, in the basis `1, t`:
/// `a·b = E(t^2) + t·O(t^2)` and `x = (E + t·O)/b^2`.
fn coordinates_over_squares(k: &RatFuncField, c: &RatFuncField, x: &RatFunc) -> [RatFunc; 2] {
    let kp = k.poly_ring();
    let ab = kp.mul(x.num(), x.den());
    let mut even = Vec::new();
    let mut odd = Vec::new();
    for (mono, coef) in ab.terms() {
        let d = mono.0[0];
        if d % 2 == 0 {
            even.push((Monomial(vec![d / 2]), *coef));
        } else {
            odd.push((Monomial(vec![d / 2]), *coef));
        }
    }
    let cp = c.poly_ring();
    [c.from_poly(cp.from_terms(even)), c.from_poly(cp.from_terms(odd))]
}

/// Linear dependence of elements of `F_2(t)` over `F_2(t^2)`, from their
/// coordinates in the basis `1, t`.
pub fn dependent_over_squares(k: &RatFuncField, xs: &[RatFunc]) -> bool {
    assert_eq!(k.base_field().p(), 2);
    assert_eq!(k.poly_ring().nvars(), 1);
    let c = RatFuncField::new(PolyRing::new(Gf::prime(2).expect("2 is prime"), vec!["s".into()]));
    let rows: Vec<Vec<RatFunc>> = xs.iter().map(|x| coordinates_over_squares(k, &c, x).to_vec()).collect();
    rank(&c, &rows) < xs.len()
}
