//! Jet rings, prolongations and the comultiplication map on jet coordinates.
//!
//! Jet variables are ordered lexicographically in `(t, i)` with `i` in graded
//! lexicographic order; `X<t>_<i>` is the `i`-th jet of the base variable
//! `X<t>`. Second-order jets of `X<t>_<i>` sit at `(t·P + i)·P + j`, where
//! `P` is the size of the index set.

mod search;

pub use search::{axiom_instance_check, Asserted, AxiomReport, SearchSpace};

use rayon::prelude::*;

use crate::algebra::generated::GeneratedAlgebra;
use crate::algebra::gf::{Fe, Gf};
use crate::algebra::groebner::{buchberger, radical_membership};
use crate::algebra::poly::{Monomial, MultiPoly, PolyRing};
use crate::algebra::ratfunc::{RatFunc, RatFuncField};
use crate::algebra::ring::Ring;
use crate::error::{Error, Result};
use crate::formal_group::{StructureConstants, TruncatedGroupLaw};
use crate::hs::{HSDerivation, IterVerdict};
use crate::trunc::{IndexSet, TruncRing};

pub type KPoly = MultiPoly<RatFunc>;

/// An affine variety over the derivation's field, given by generators.
#[derive(Clone, Debug, PartialEq)]
pub struct AffineVariety {
    pub ring: PolyRing<RatFuncField>,
    pub gens: Vec<KPoly>,
    pub name: Option<String>,
}

impl AffineVariety {
    pub fn new(ring: PolyRing<RatFuncField>, gens: Vec<KPoly>) -> Self {
        let gens = gens.into_iter().filter(|g| !g.is_zero()).collect();
        AffineVariety { ring, gens, name: None }
    }

    pub fn affine_space(ring: PolyRing<RatFuncField>) -> Self {
        Self::new(ring, Vec::new())
    }

    pub fn arity(&self) -> usize {
        self.ring.nvars()
    }

    pub fn contains(&self, point: &[RatFunc]) -> Result<bool> {
        if point.len() != self.arity() {
            return Err(Error::arg(format!("point of length {} in a variety of arity {}", point.len(), self.arity())));
        }
        Ok(self.gens.iter().all(|g| self.ring.base().is_zero(&self.ring.evaluate(g, point))))
    }

    pub fn fmt_gens(&self) -> Vec<String> {
        self.gens.iter().map(|g| self.ring.fmt_poly(g)).collect()
    }
}

/// `K{X}` for a derivation on `K` and a base polynomial ring over `K`.
#[derive(Clone, Debug)]
pub struct JetRing {
    derivation: HSDerivation<RatFuncField>,
    base: PolyRing<RatFuncField>,
    jets: PolyRing<RatFuncField>,
    index: IndexSet,
}

pub fn jet_name(base: &str, i: &[u32]) -> String {
    let parts: Vec<String> = i.iter().map(u32::to_string).collect();
    format!("{base}_{}", parts.join("_"))
}

impl JetRing {
    pub fn new(derivation: &HSDerivation<RatFuncField>, base: PolyRing<RatFuncField>) -> Result<Self> {
        if base.base() != derivation.ring() {
            return Err(Error::arg("base ring is not over the derivation's field"));
        }
        let index = derivation.index_set();
        let names = base.names().iter().flat_map(|b| index.iter().map(move |i| jet_name(b, i))).collect();
        let jets = PolyRing::new(base.base().clone(), names).with_order(base.order());
        Ok(JetRing { derivation: derivation.clone(), base, jets, index })
    }

    /// Base variables `X1..Xn`.
    pub fn with_arity(derivation: &HSDerivation<RatFuncField>, n: usize) -> Result<Self> {
        Self::new(derivation, PolyRing::with_prefix(derivation.ring().clone(), "X", n))
    }

    pub fn derivation(&self) -> &HSDerivation<RatFuncField> {
        &self.derivation
    }

    pub fn base(&self) -> &PolyRing<RatFuncField> {
        &self.base
    }

    pub fn jets(&self) -> &PolyRing<RatFuncField> {
        &self.jets
    }

    pub fn index_set(&self) -> &IndexSet {
        &self.index
    }

    pub fn field(&self) -> &RatFuncField {
        self.derivation.ring()
    }

    /// The jet ring one step further, over the jet variables of this one.
    pub fn next(&self) -> Result<JetRing> {
        JetRing::new(&self.derivation, self.jets.clone())
    }

    /// `D_j(f)` for every `j`, in index order.
    ///
    /// Computed from `𝔻(f) ∈ K{X}[v]` with `X_t ↦ Σ_i X_t^(i) v^i`.
    pub fn derivatives(&self, f: &KPoly) -> Vec<KPoly> {
        let target = self.derivation.target().over(self.jets.clone());
        let p_len = self.index.len();
        let images: Vec<_> = (0..self.base.nvars())
            .map(|t| target.from_keys(self.index.iter().enumerate().map(|(r, i)| (crate::trunc::pack(i), self.jets.var(t * p_len + r)))))
            .collect();
        let d = &self.derivation;
        let jets = &self.jets;
        let img = self.base.compose(&target, f, &images, |c| {
            let s = d.apply(c).expect("denominators of K map to units");
            d.target().map_coeffs(&target, &s, |x| jets.constant(x.clone()))
        });
        self.index.iter().map(|i| target.coeff_at(&img, crate::trunc::pack(i))).collect()
    }
}

/// `∇V`: the generators `D_j(f)` for every generator `f` and every `j`.
pub fn nabla_ideal(v: &AffineVariety, jet: &JetRing) -> Result<AffineVariety> {
    if v.ring != *jet.base() {
        return Err(Error::arg("variety is not in the jet ring's base variables"));
    }
    let gens = v.gens.iter().flat_map(|f| jet.derivatives(f)).collect();
    Ok(AffineVariety::new(jet.jets().clone(), gens))
}

/// `𝔻_V(a) = (D_i(a_t))_{t, i}`.
pub fn nabla_point<A: GeneratedAlgebra>(d: &HSDerivation<A>, a: &[A::Elem]) -> Result<Vec<A::Elem>> {
    let mut out = Vec::with_capacity(a.len() * d.index_set().len());
    for x in a {
        out.extend(d.all_components(x)?);
    }
    Ok(out)
}

/// `c_n(b)_{(t, i), j} = Σ_k c[i][j][k] b_{t, k}`.
pub fn c_n_map<R: Ring>(c: &StructureConstants, ring: &R, b: &[R::Elem]) -> Result<Vec<R::Elem>> {
    let p_len = c.index_set().len();
    if b.len() % p_len != 0 {
        return Err(Error::arg(format!("point of length {} is not a multiple of {p_len}", b.len())));
    }
    let same = ring.base_field() == c.field();
    let conv = |x: Fe| -> Result<Fe> {
        if same || c.field().in_prime_subfield(x) {
            Ok(x)
        } else {
            Err(Error::arg("structure constants are not in the prime field"))
        }
    };
    let n = b.len() / p_len;
    let mut out = Vec::with_capacity(n * p_len * p_len);
    for t in 0..n {
        for i in 0..p_len {
            for j in 0..p_len {
                let mut acc = ring.zero();
                for &(k, ck) in c.row(i, j) {
                    acc = ring.add(&acc, &ring.scale(conv(ck)?, &b[t * p_len + k]));
                }
                out.push(acc);
            }
        }
    }
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CompatMode {
    /// Enumerate the points of `W` over the given finite field.
    Pointwise(Gf),
    /// Radical membership of the pulled-back generators of `∇W`.
    Symbolic,
}

#[derive(Clone, Debug, PartialEq)]
pub struct CompatVerdict {
    pub compatible: bool,
    pub points_checked: u64,
    /// Offending point (pointwise) or generator (symbolic).
    pub witness: Option<String>,
}

pub const DEFAULT_POINT_BUDGET: u64 = 1 << 20;

fn to_field_poly(k: &RatFuncField, src: &PolyRing<RatFuncField>, f: &KPoly, field: &Gf) -> Result<(PolyRing<Gf>, MultiPoly<Fe>)> {
    let ring = PolyRing::new(field.clone(), src.names().to_vec());
    let kp = k.poly_ring();
    let same = field == k.base_field();
    let mut terms = Vec::new();
    for (m, c) in f.terms() {
        let cst = k.as_poly(c).and_then(|p| kp.as_constant(&p)).ok_or_else(|| {
            Error::Unsupported(format!("coefficient {} is not a base-field constant", k.fmt_elem(c)))
        })?;
        if !same && !k.base_field().in_prime_subfield(cst) {
            return Err(Error::Unsupported("coefficient outside the prime field".into()));
        }
        terms.push((m.clone(), cst));
    }
    let p = ring.from_terms(terms);
    Ok((ring, p))
}

/// Whether `c_n(W) ⊆ ∇(W)`.
pub fn cv_compatibility(
    g: &TruncatedGroupLaw,
    jet: &JetRing,
    v: &AffineVariety,
    w: &AffineVariety,
    mode: &CompatMode,
    budget: u64,
) -> Result<CompatVerdict> {
    let p_len = jet.index_set().len();
    if w.arity() != v.arity() * p_len || w.ring != *jet.jets() {
        return Err(Error::arg("W must live in the jet coordinates of V"));
    }
    let c = g.structure_constants()?;
    if c.index_set().len() != p_len {
        return Err(Error::arg("group law does not match the jet ring"));
    }
    let jet2 = jet.next()?;
    let nabla_w = nabla_ideal(w, &jet2)?;
    let k = jet.field();
    match mode {
        CompatMode::Pointwise(field) => {
            let wf: Vec<(PolyRing<Gf>, MultiPoly<Fe>)> =
                w.gens.iter().map(|f| to_field_poly(k, &w.ring, f, field)).collect::<Result<_>>()?;
            let nf: Vec<(PolyRing<Gf>, MultiPoly<Fe>)> =
                nabla_w.gens.iter().map(|f| to_field_poly(k, &nabla_w.ring, f, field)).collect::<Result<_>>()?;
            let dim = w.arity() as u32;
            let total = field.order().checked_pow(dim).filter(|&t| t <= budget).ok_or_else(|| {
                Error::Budget(format!("{}^{} points exceed the enumeration budget {budget}", field.order(), dim))
            })?;
            let point = |idx: u64| -> Vec<Fe> {
                let mut x = idx;
                (0..dim)
                    .map(|_| {
                        let d = x % field.order();
                        x /= field.order();
                        Fe(d as u32)
                    })
                    .collect()
            };
            let bad = (0..total).into_par_iter().find_first(|&idx| {
                let b = point(idx);
                if !wf.iter().all(|(r, f)| field.is_zero(&r.evaluate(f, &b))) {
                    return false;
                }
                let cb = c_n_map(&c, field, &b).expect("arity checked");
                !nf.iter().all(|(r, f)| field.is_zero(&r.evaluate(f, &cb)))
            });
            Ok(CompatVerdict {
                compatible: bad.is_none(),
                points_checked: bad.map_or(total, |b| b + 1),
                witness: bad.map(|b| format!("({})", point(b).iter().map(|x| field.fmt_fe(*x)).collect::<Vec<_>>().join(", "))),
            })
        }
        CompatMode::Symbolic => {
            let base = &w.ring;
            let lin: Vec<KPoly> = c_n_map(&c, base, &(0..base.nvars()).map(|x| base.var(x)).collect::<Vec<_>>())?;
            let gb_budget = usize::try_from(budget).unwrap_or(usize::MAX);
            let basis = buchberger(base, &w.gens, gb_budget)?;
            for f in &nabla_w.gens {
                let pulled = nabla_w.ring.compose(base, f, &lin, |x| base.constant(x.clone()));
                if crate::algebra::groebner::ideal_membership(base, &pulled, &basis) {
                    continue;
                }
                if !radical_membership(base, &pulled, &w.gens, gb_budget)? {
                    return Ok(CompatVerdict {
                        compatible: false,
                        points_checked: 0,
                        witness: Some(nabla_w.ring.fmt_poly(f)),
                    });
                }
            }
            Ok(CompatVerdict { compatible: true, points_checked: 0, witness: None })
        }
    }
}

/// The derivation on `F_q(b_0)` with images `Σ_i b_{t,i} v^i`.
#[derive(Clone, Debug)]
pub struct PointDerivation {
    pub derivation: HSDerivation<RatFuncField>,
    pub iterativity: IterVerdict,
}

/// Build the derivation forced by a jet point whose first block consists of
/// distinct generators of `k`.
pub fn derivation_from_point(
    k: &RatFuncField,
    g: &TruncatedGroupLaw,
    v: Option<&AffineVariety>,
    b: &[RatFunc],
) -> Result<PointDerivation> {
    let index = g.index_set();
    let p_len = index.len();
    if b.is_empty() || !b.len().is_multiple_of(p_len) {
        return Err(Error::arg(format!("point length must be a positive multiple of {p_len}")));
    }
    let n = b.len() / p_len;
    let mut gen_of = Vec::with_capacity(n);
    for t in 0..n {
        let x = &b[t * p_len];
        let pos = (0..k.num_gens()).find(|&s| k.gen(s) == *x).ok_or_else(|| {
            Error::arg(format!("first-block entry {} is not a generator", k.fmt_elem(x)))
        })?;
        if gen_of.contains(&pos) {
            return Err(Error::arg("first-block entries must be distinct"));
        }
        gen_of.push(pos);
    }
    let names: Vec<String> = gen_of.iter().map(|&s| k.gen_names()[s].clone()).collect();
    let sub = RatFuncField::new(PolyRing::new(k.base_field().clone(), names).with_order(k.poly_ring().order()));
    let restrict_poly = |f: &MultiPoly<Fe>| -> Result<MultiPoly<Fe>> {
        let mut terms = Vec::new();
        for (m, c) in f.terms() {
            let mut e = vec![0; n];
            for (s, &x) in m.0.iter().enumerate() {
                if x == 0 {
                    continue;
                }
                let t = gen_of.iter().position(|&q| q == s).ok_or_else(|| {
                    Error::arg(format!("coordinate involves {} outside the generated subfield", k.gen_names()[s]))
                })?;
                e[t] = x;
            }
            terms.push((Monomial(e), *c));
        }
        Ok(sub.poly_ring().from_terms(terms))
    };
    let restrict = |x: &RatFunc| -> Result<RatFunc> {
        sub.frac(restrict_poly(x.num())?, restrict_poly(x.den())?).ok_or(Error::DivisionByZero)
    };
    let target = TruncRing::new(sub.clone(), g.level(), g.dim())?;
    let mut images = Vec::with_capacity(n);
    for t in 0..n {
        let mut terms = Vec::with_capacity(p_len);
        for (r, i) in index.iter().enumerate() {
            terms.push((crate::trunc::pack(i), restrict(&b[t * p_len + r])?));
        }
        images.push(target.from_keys(terms));
    }
    let derivation = HSDerivation::with_target(sub, target, images)?;
    if let Some(v) = v {
        let jet = JetRing::with_arity(&HSDerivation::trivial(k.clone(), g.level(), g.dim())?, n)?;
        let nv = nabla_ideal(v, &jet)?;
        if !nv.contains(b)? {
            return Err(Error::Precondition("point is not on the prolongation of V".into()));
        }
    }
    let iterativity = derivation.check_iterativity(g)?;
    Ok(PointDerivation { derivation, iterativity })
}

#[cfg(test)]
mod tests;
