//! Constructions on derivations: amalgamation, transport, reconstruction,
//! p-th root extensions and level chains.

use super::{HSDerivation, IterVerdict};
use crate::algebra::generated::GeneratedAlgebra;
use crate::algebra::gf::{Fe, Gf};
use crate::algebra::linalg::solve;
use crate::algebra::poly::PolyRing;
use crate::algebra::ratfunc::{RatFunc, RatFuncField};
use crate::algebra::ring::Ring;
use crate::error::{Error, Result};
use crate::formal_group::{FormalGroupLaw, TruncatedGroupLaw};
use crate::trunc::{fmt_index, pack, IndexSet, TruncRing};

/// Rings that can be enlarged by further free generators.
pub trait Extendable: GeneratedAlgebra {
    fn extend(&self, extra: &[String]) -> Result<Self>;
}

fn joined_names(old: &[String], extra: &[String]) -> Result<Vec<String>> {
    if let Some(dup) = extra.iter().find(|n| old.contains(n)) {
        return Err(Error::arg(format!("generator name {dup} already in use")));
    }
    Ok(old.iter().chain(extra).cloned().collect())
}

impl Extendable for PolyRing<Gf> {
    fn extend(&self, extra: &[String]) -> Result<Self> {
        Ok(PolyRing::new(self.base().clone(), joined_names(self.names(), extra)?).with_order(self.order()))
    }
}

impl Extendable for RatFuncField {
    fn extend(&self, extra: &[String]) -> Result<Self> {
        Ok(RatFuncField::new(self.poly_ring().extend(extra)?))
    }
}

fn embed_into<A: GeneratedAlgebra>(src: &A, dst: &A, offset: usize, x: &A::Elem) -> Result<A::Elem> {
    let images: Vec<A::Elem> = (0..src.num_gens()).map(|i| dst.gen(offset + i)).collect();
    src.eval_hom(x, dst, &images, &|c| dst.from_base(c))
}

/// The derivation on the joint ring whose images are those of both inputs.
pub fn tensor_derivation<A: Extendable>(dr: &HSDerivation<A>, ds: &HSDerivation<A>) -> Result<HSDerivation<A>> {
    if dr.level() != ds.level() || dr.dim() != ds.dim() || dr.ring().base_field() != ds.ring().base_field() {
        return Err(Error::arg("derivations differ in level, dimension or field"));
    }
    let joint = dr.ring().extend(ds.ring().gen_names())?;
    let target = TruncRing::new(joint.clone(), dr.level(), dr.dim())?;
    let mut images = Vec::with_capacity(joint.num_gens());
    for (d, offset) in [(dr, 0), (ds, dr.ring().num_gens())] {
        for im in d.images() {
            let mut terms = Vec::new();
            for (k, c) in im.terms() {
                terms.push((k, embed_into(d.ring(), &joint, offset, c)?));
            }
            images.push(target.from_keys(terms));
        }
    }
    HSDerivation::with_target(joint, target, images)
}

fn frob_inverse(field: &Gf, i: u32) -> u32 {
    let n = field.degree();
    (n - i % n) % n
}

fn semilinear<A: GeneratedAlgebra>(ring: &A, images: &[A::Elem], frob: u32, x: &A::Elem) -> Result<A::Elem> {
    let f = ring.base_field().clone();
    ring.eval_hom(x, ring, images, &|c| ring.from_base(f.frobenius(c, frob)))
}

/// Inverse of an affine semilinear substitution `t ↦ M t + b`.
fn affine_inverse<A: GeneratedAlgebra>(ring: &A, phi: &[A::Elem], frob: u32) -> Result<Vec<A::Elem>> {
    let field = ring.base_field();
    let n = ring.num_gens();
    let mut mat = vec![vec![Fe(0); n]; n];
    let mut shift = vec![Fe(0); n];
    for (s, img) in phi.iter().enumerate() {
        let coords = ring
            .poly_coords(img)
            .ok_or_else(|| Error::arg("substitution is not polynomial; supply its inverse"))?;
        for (m, c) in coords {
            match m.degree() {
                0 => shift[s] = c,
                1 => mat[s][m.0.iter().position(|&x| x == 1).unwrap()] = c,
                _ => return Err(Error::arg("substitution is not affine; supply its inverse")),
            }
        }
    }
    let fi = frob_inverse(field, frob);
    let mut inv_cols = Vec::with_capacity(n);
    for r in 0..n {
        let unit: Vec<Fe> = (0..n).map(|k| Fe((k == r) as u32)).collect();
        inv_cols.push(solve(field, &mat, &unit).ok_or_else(|| Error::arg("substitution is not invertible"))?);
    }
    // inv[s][r] = inv_cols[r][s]
    let minus_b: Vec<Fe> = shift.iter().map(|&x| field.neg_fe(x)).collect();
    let d = solve(field, &mat, &minus_b).unwrap();
    Ok((0..n)
        .map(|s| {
            let lin = (0..n).fold(ring.zero(), |acc, r| {
                ring.add(&acc, &ring.scale(field.frobenius(inv_cols[r][s], fi), &ring.gen(r)))
            });
            ring.add(&lin, &ring.from_base(field.frobenius(d[s], fi)))
        })
        .collect())
}

/// `𝔻^φ = φ[v] ∘ 𝔻 ∘ φ^{-1}` for the substitution `t_s ↦ phi[s]`, semilinear
/// over the Frobenius power `x ↦ x^(p^frob)`.
pub fn transport_derivation<A: GeneratedAlgebra>(
    d: &HSDerivation<A>,
    phi: &[A::Elem],
    frob: u32,
    inverse: Option<Vec<A::Elem>>,
) -> Result<HSDerivation<A>> {
    let ring = d.ring();
    if phi.len() != ring.num_gens() {
        return Err(Error::arg("substitution must give one image per generator"));
    }
    let psi = match inverse {
        Some(psi) if psi.len() == ring.num_gens() => psi,
        Some(_) => return Err(Error::arg("inverse must give one image per generator")),
        None => affine_inverse(ring, phi, frob)?,
    };
    let fi = frob_inverse(ring.base_field(), frob);
    for s in 0..ring.num_gens() {
        let t = ring.gen(s);
        let there = semilinear(ring, phi, frob, &semilinear(ring, &psi, fi, &t)?)?;
        let back = semilinear(ring, &psi, fi, &semilinear(ring, phi, frob, &t)?)?;
        if there != t || back != t {
            return Err(Error::arg("substitution is not invertible"));
        }
    }
    let target = d.target();
    let mut images = Vec::with_capacity(ring.num_gens());
    for p in &psi {
        let img = d.apply(p)?;
        let mut terms = Vec::new();
        for (k, c) in img.terms() {
            terms.push((k, semilinear(ring, phi, frob, c)?));
        }
        images.push(target.from_keys(terms));
    }
    HSDerivation::with_target(ring.clone(), target.clone(), images)
}

/// Rebuild an `e`-dimensional iterative derivation from its axis components.
pub fn reconstruct_from_components<A: GeneratedAlgebra>(
    components: &[HSDerivation<A>],
    g: &TruncatedGroupLaw,
) -> Result<HSDerivation<A>> {
    let e = g.dim();
    if components.len() != e {
        return Err(Error::arg(format!("need {e} component derivations")));
    }
    let ring = components[0].ring().clone();
    let m = g.level();
    if components.iter().any(|d| d.dim() != 1 || d.level() != m) {
        return Err(Error::arg("components must be one-dimensional at the law's level"));
    }
    let c = g.structure_constants()?;
    let target = TruncRing::new(ring.clone(), m, e)?;
    let idx = target.index_set();
    let ngens = ring.num_gens();
    let mut vals: Vec<Vec<A::Elem>> = (0..ngens).map(|s| vec![ring.gen(s)]).collect();
    for nr in 1..idx.len() {
        let n = idx.get(nr).to_vec();
        let axis = n.iter().position(|&x| x > 0).unwrap();
        let mut i = vec![0; e];
        i[axis] = n[axis];
        let j: Vec<u32> = n.iter().zip(&i).map(|(a, b)| a - b).collect();
        let partial: Vec<_> = vals
            .iter()
            .map(|row| target.from_keys(row.iter().enumerate().map(|(k, x)| (pack(idx.get(k)), x.clone()))))
            .collect();
        for s in 0..ngens {
            let value = if j.iter().all(|&x| x == 0) {
                components[axis].component(&[n[axis]], &ring.gen(s))?
            } else {
                let (ir, jr) = (idx.rank_of(&i).unwrap(), idx.rank_of(&j).unwrap());
                let di = vals[s][ir].clone();
                let img = ring.eval_hom(&di, &target, &partial, &|x| target.from_base(x))?;
                let mut acc = target.coeff_at(&img, pack(&j));
                for &(k, ck) in c.row(ir, jr) {
                    if k == nr {
                        if ck != Fe(1) {
                            return Err(Error::Inconsistent(format!("c[{}][{}][{}] is not 1", fmt_index(&i), fmt_index(&j), fmt_index(&n))));
                        }
                        continue;
                    }
                    debug_assert!(k < nr);
                    acc = ring.sub(&acc, &ring.scale(ck, &vals[s][k]));
                }
                acc
            };
            vals[s].push(value);
        }
    }
    let images = vals
        .into_iter()
        .map(|row| target.from_keys(row.into_iter().enumerate().map(|(k, x)| (pack(idx.get(k)), x))))
        .collect();
    HSDerivation::with_target(ring, target, images)
}

/// The values `D'_i(a) = λ(D_{p·i}(s))`, `i ≠ 0`, of the unique extension
/// to `a = s^(1/p)` at one level lower.
pub fn strict_extension_values(d: &HSDerivation<RatFuncField>, s: &RatFunc) -> Result<Vec<(Vec<u32>, RatFunc)>> {
    let k = d.ring();
    let m = d.level();
    if m < 2 {
        return Err(Error::arg("the extension needs a derivation of level at least 2"));
    }
    let p = k.base_field().p() as u32;
    let img = d.apply(s)?;
    for a in 0..d.dim() {
        let mut unit = vec![0; d.dim()];
        unit[a] = 1;
        if !k.is_zero(&d.target().coeff(&img, &unit)?) {
            return Err(Error::Precondition(format!("{} is not a constant", k.fmt_elem(s))));
        }
    }
    let lower = IndexSet::new(p.pow(m - 1), d.dim());
    let mut out = Vec::new();
    for i in lower.iter().skip(1) {
        let pi: Vec<u32> = i.iter().map(|x| x * p).collect();
        let val = d.target().coeff(&img, &pi)?;
        let root = k.lambda(&val);
        if !k.is_zero(&val) && k.is_zero(&root) {
            return Err(Error::Inconsistent(format!(
                "D_({})({}) = {} has no p-th root",
                fmt_index(&pi),
                k.fmt_elem(s),
                k.fmt_elem(&val)
            )));
        }
        out.push((i.to_vec(), root));
    }
    Ok(out)
}

/// Result of adjoining `a = s^(1/p)` for a generator `s`.
#[derive(Clone, Debug)]
pub struct StrictExtension {
    pub values: Vec<(Vec<u32>, RatFunc)>,
    pub derivation: HSDerivation<RatFuncField>,
    pub verdict: IterVerdict,
}

/// Replace generator `s` of `K` by `a` with `a^p = s` and extend `d` one
/// level down; the verdict checks iterativity for `law` at that level.
pub fn adjoin_pth_root(
    d: &HSDerivation<RatFuncField>,
    law: &FormalGroupLaw,
    s_index: usize,
    root_name: &str,
) -> Result<StrictExtension> {
    let k = d.ring();
    if s_index >= k.num_gens() {
        return Err(Error::arg("generator index out of range"));
    }
    let s = k.gen(s_index);
    let values = strict_extension_values(d, &s)?;
    let mut names = k.gen_names().to_vec();
    if names.iter().any(|n| n == root_name) {
        return Err(Error::arg(format!("generator name {root_name} already in use")));
    }
    names[s_index] = root_name.to_string();
    let l = RatFuncField::new(PolyRing::new(k.base_field().clone(), names).with_order(k.poly_ring().order()));
    let p = k.base_field().p();
    let a = l.gen(s_index);
    let iota_images: Vec<RatFunc> =
        (0..k.num_gens()).map(|r| if r == s_index { l.pow(&a, p) } else { l.gen(r) }).collect();
    let iota = |x: &RatFunc| k.eval_hom(x, &l, &iota_images, &|c| l.from_base(c));
    let lower = d.truncate(d.level() - 1)?;
    let target = TruncRing::new(l.clone(), lower.level(), d.dim())?;
    let mut images = Vec::with_capacity(k.num_gens());
    for (r, im) in lower.images().iter().enumerate() {
        if r == s_index {
            let mut terms = vec![(0u128, a.clone())];
            for (i, v) in &values {
                terms.push((pack(i), iota(v)?));
            }
            images.push(target.from_keys(terms));
        } else {
            let mut terms = Vec::new();
            for (key, c) in im.terms() {
                terms.push((key, iota(c)?));
            }
            images.push(target.from_keys(terms));
        }
    }
    let derivation = HSDerivation::with_target(l, target, images)?;
    let verdict = derivation.check_iterativity(&law.truncate(lower.level())?)?;
    Ok(StrictExtension { values, derivation, verdict })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChainVerdict {
    pub passed: bool,
    pub detail: Option<String>,
}

/// Level `m` of `family` (index `m - 1`) truncates to every lower level and
/// is iterative for the level-`m` truncation of `law`.
pub fn chain_compatibility_check<A: GeneratedAlgebra>(family: &[HSDerivation<A>], law: &FormalGroupLaw) -> Result<ChainVerdict> {
    for (pos, d) in family.iter().enumerate() {
        let m = pos as u32 + 1;
        if d.level() != m {
            return Err(Error::arg(format!("family entry {pos} has level {} instead of {m}", d.level())));
        }
    }
    for (pos, d) in family.iter().enumerate() {
        let m = pos as u32 + 1;
        for lower in 1..m {
            if d.truncate(lower)?.images() != family[lower as usize - 1].images() {
                return Ok(ChainVerdict { passed: false, detail: Some(format!("level {m} does not truncate to level {lower}")) });
            }
        }
        let v = d.check_iterativity(&law.truncate(m)?)?;
        if !v.passed() {
            return Ok(ChainVerdict { passed: false, detail: Some(format!("level {m}: {}", v.describe())) });
        }
    }
    Ok(ChainVerdict { passed: true, detail: None })
}
