//! Truncated multi-dimensional Hasse-Schmidt derivations.
//!
//! A derivation is stored as the images `t ↦ Σ_i D_i(t) v^i` of the
//! generators of its ring; every operator value is computed on demand from
//! the unique extension to a ring homomorphism `A → A[v_m]`.

mod canonical;
mod constants;
mod ops;
mod wronskian;

pub use canonical::{canonical_derivation, canonical_family, canonical_group_derivation, canonical_on};
pub use constants::{absolute_constants_basis, constants_basis, constants_closed_under, slice_monomials, ConstantsReport};
pub use ops::{
    adjoin_pth_root, chain_compatibility_check, reconstruct_from_components, strict_extension_values, tensor_derivation,
    transport_derivation, ChainVerdict, Extendable, StrictExtension,
};
pub use wronskian::{dependence_over_constants, wronskian_matrix};

use rayon::prelude::*;

use crate::algebra::generated::GeneratedAlgebra;
use crate::algebra::ring::Ring;
use crate::algebra::series::PowerSeriesRing;
use crate::error::{Error, Result};
use crate::formal_group::{StructureConstants, TruncatedGroupLaw};
use crate::trunc::{fmt_index, pack, unpack, IndexSet, TruncRing, TruncSeries};

#[derive(Clone, Debug)]
pub struct HSDerivation<A: GeneratedAlgebra> {
    ring: A,
    target: TruncRing<A>,
    images: Vec<TruncSeries<A::Elem>>,
}

impl<A: GeneratedAlgebra + PartialEq> PartialEq for HSDerivation<A> {
    fn eq(&self, other: &Self) -> bool {
        self.ring == other.ring && self.target == other.target && self.images == other.images
    }
}

/// Outcome of a generator-wise check.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Verdict {
    pub passed: bool,
    pub detail: Option<String>,
}

impl Verdict {
    fn pass() -> Self {
        Verdict { passed: true, detail: None }
    }

    fn fail(detail: String) -> Self {
        Verdict { passed: false, detail: Some(detail) }
    }
}

/// First violation of `D_j ∘ D_i = Σ_k c[i][j][k] D_k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IterFailure {
    pub generator: String,
    pub i: Vec<u32>,
    pub j: Vec<u32>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IterVerdict {
    pub failure: Option<IterFailure>,
}

impl IterVerdict {
    pub fn passed(&self) -> bool {
        self.failure.is_none()
    }

    pub fn describe(&self) -> String {
        match &self.failure {
            None => "pass".into(),
            Some(f) => format!("fails on {} at i=({}) j=({})", f.generator, fmt_index(&f.i), fmt_index(&f.j)),
        }
    }
}

impl<A: GeneratedAlgebra> HSDerivation<A> {
    pub fn new(ring: A, m: u32, e: usize, images: Vec<TruncSeries<A::Elem>>) -> Result<Self> {
        let target = TruncRing::new(ring.clone(), m, e)?;
        Self::with_target(ring, target, images)
    }

    pub fn with_target(ring: A, target: TruncRing<A>, images: Vec<TruncSeries<A::Elem>>) -> Result<Self> {
        if images.len() != ring.num_gens() {
            return Err(Error::arg(format!("{} generators but {} images", ring.num_gens(), images.len())));
        }
        for im in &images {
            target.validate(im)?;
        }
        Ok(HSDerivation { ring, target, images })
    }

    /// Images given as `(generator index, exponent, value)` triples on top of `t ↦ t`.
    pub fn from_components(ring: A, m: u32, e: usize, parts: &[(usize, Vec<u32>, A::Elem)]) -> Result<Self> {
        let target = TruncRing::new(ring.clone(), m, e)?;
        let mut images: Vec<_> = (0..ring.num_gens()).map(|s| target.constant(ring.gen(s))).collect();
        for (s, i, x) in parts {
            let s = *s;
            if s >= images.len() {
                return Err(Error::arg(format!("generator index {s} out of range")));
            }
            target.coeff(&images[s], i)?;
            images[s] = target.add(&images[s], &target.monomial(i, x.clone()));
        }
        Self::with_target(ring, target, images)
    }

    /// The derivation with every `D_i`, `i ≠ 0`, equal to zero.
    pub fn trivial(ring: A, m: u32, e: usize) -> Result<Self> {
        Self::from_components(ring, m, e, &[])
    }

    pub fn ring(&self) -> &A {
        &self.ring
    }

    pub fn target(&self) -> &TruncRing<A> {
        &self.target
    }

    pub fn images(&self) -> &[TruncSeries<A::Elem>] {
        &self.images
    }

    pub fn level(&self) -> u32 {
        self.target.level().expect("derivation targets carry a level")
    }

    pub fn dim(&self) -> usize {
        self.target.arity()
    }

    pub fn index_set(&self) -> IndexSet {
        self.target.index_set()
    }

    /// The homomorphic image `𝔻(x)`.
    pub fn apply(&self, x: &A::Elem) -> Result<TruncSeries<A::Elem>> {
        let t = &self.target;
        self.ring.eval_hom(x, t, &self.images, &|c| t.from_base(c))
    }

    /// The operator value `D_i(x)`.
    pub fn component(&self, i: &[u32], x: &A::Elem) -> Result<A::Elem> {
        let img = self.apply(x)?;
        self.target.coeff(&img, i)
    }

    /// All values `D_i(x)` indexed by rank in the level's index set.
    pub fn all_components(&self, x: &A::Elem) -> Result<Vec<A::Elem>> {
        let img = self.apply(x)?;
        Ok(self.index_set().iter().map(|i| self.target.coeff_at(&img, pack(i))).collect())
    }

    /// `D_i(t_s)` for every generator and index.
    pub fn generator_table(&self) -> Vec<Vec<A::Elem>> {
        let idx = self.index_set();
        self.images.iter().map(|im| idx.iter().map(|i| self.target.coeff_at(im, pack(i))).collect()).collect()
    }

    pub fn truncate(&self, m: u32) -> Result<Self> {
        let target = self.target.at_level(m)?;
        let images = self.images.iter().map(|im| self.target.truncate_into(&target, im)).collect::<Result<_>>()?;
        Ok(HSDerivation { ring: self.ring.clone(), target, images })
    }

    /// The one-dimensional derivations along each coordinate axis.
    pub fn component_derivations(&self) -> Result<Vec<HSDerivation<A>>> {
        let e = self.dim();
        (0..e)
            .map(|a| {
                let target = TruncRing::new(self.ring.clone(), self.level(), 1)?;
                let images = self
                    .images
                    .iter()
                    .map(|im| {
                        target.from_keys(im.terms().filter_map(|(k, c)| {
                            let ex = unpack(k, e);
                            ex.iter().enumerate().all(|(b, &x)| b == a || x == 0).then(|| (pack(&[ex[a]]), c.clone()))
                        }))
                    })
                    .collect();
                HSDerivation::with_target(self.ring.clone(), target, images)
            })
            .collect()
    }

    /// `D_{(i_1..i_e)} = D_{1,i_1} ∘ … ∘ D_{e,i_e}` for pairwise commuting inputs.
    pub fn compose_one_dimensional(parts: &[HSDerivation<A>]) -> Result<Self> {
        let first = parts.first().ok_or_else(|| Error::arg("no derivations to compose"))?;
        let (ring, m) = (first.ring.clone(), first.level());
        if parts.iter().any(|d| d.dim() != 1 || d.level() != m) {
            return Err(Error::arg("composition needs one-dimensional derivations of equal level"));
        }
        let b = first.target.bound();
        for (x, dx) in parts.iter().enumerate() {
            for dy in &parts[x + 1..] {
                for s in 0..ring.num_gens() {
                    let t = ring.gen(s);
                    for i in 1..b {
                        for j in 1..b {
                            let xy = dx.component(&[i], &dy.component(&[j], &t)?)?;
                            let yx = dy.component(&[j], &dx.component(&[i], &t)?)?;
                            if xy != yx {
                                return Err(Error::Precondition(format!(
                                    "component derivations do not commute on {}",
                                    ring.gen_names()[s]
                                )));
                            }
                        }
                    }
                }
            }
        }
        let e = parts.len();
        let target = TruncRing::new(ring.clone(), m, e)?;
        let idx = target.index_set();
        let mut images = Vec::with_capacity(ring.num_gens());
        for s in 0..ring.num_gens() {
            let mut terms = Vec::with_capacity(idx.len());
            for i in idx.iter() {
                let mut val = ring.gen(s);
                for a in (0..e).rev() {
                    if i[a] > 0 {
                        val = parts[a].component(&[i[a]], &val)?;
                    }
                }
                terms.push((pack(i), val));
            }
            images.push(target.from_keys(terms));
        }
        HSDerivation::with_target(ring, target, images)
    }

    /// Every generator image must have the generator as constant term.
    pub fn check_hs_homomorphism(&self) -> Verdict {
        for (s, im) in self.images.iter().enumerate() {
            if let Err(e) = self.target.validate(im) {
                return Verdict::fail(e.to_string());
            }
            if self.target.constant_term(im) != self.ring.gen(s) {
                return Verdict::fail(format!(
                    "constant term of the image of {} is {}",
                    self.ring.gen_names()[s],
                    self.ring.fmt_elem(&self.target.constant_term(im))
                ));
            }
        }
        Verdict::pass()
    }

    fn check_law(&self, g: &TruncatedGroupLaw) -> Result<()> {
        if g.level() != self.level() || g.dim() != self.dim() || g.field() != self.ring.base_field() {
            return Err(Error::arg(format!(
                "law of level {} and dimension {} does not match derivation of level {} and dimension {}",
                g.level(),
                g.dim(),
                self.level(),
                self.dim()
            )));
        }
        Ok(())
    }

    /// The iterativity diagram: both composites `A → A[w, v]` agree on generators.
    pub fn check_iterativity(&self, g: &TruncatedGroupLaw) -> Result<IterVerdict> {
        self.check_law(g)?;
        let e = self.dim();
        let ring2 = TruncRing::two_block(self.ring.clone(), self.level(), e)?;
        let w_positions: Vec<usize> = (0..e).collect();
        let results: Vec<Result<Option<IterFailure>>> = (0..self.images.len())
            .into_par_iter()
            .map(|s| {
                let im = &self.images[s];
                let lhs = g.comultiplication_map(&self.target, &ring2, im)?;
                let mut rhs = ring2.zero();
                for (k, c) in im.terms() {
                    let inner = self.apply(c)?;
                    let inner = self.target.embed(&ring2, &inner, &w_positions);
                    let vk = ring2.from_keys([(crate::formal_group::two_block_key(&unpack(k, e), &vec![0; e]), self.ring.one())]);
                    rhs = ring2.add(&rhs, &ring2.mul(&inner, &vk));
                }
                let diff = ring2.sub(&lhs, &rhs);
                let first = diff.terms().next().map(|(key, _)| key);
                Ok(first.map(|key| {
                    let ex = unpack(key, 2 * e);
                    IterFailure { generator: self.ring.gen_names()[s].clone(), i: ex[e..].to_vec(), j: ex[..e].to_vec() }
                }))
            })
            .collect();
        for r in results {
            if let Some(f) = r? {
                return Ok(IterVerdict { failure: Some(f) });
            }
        }
        Ok(IterVerdict { failure: None })
    }

    /// The same condition read off the structure constants:
    /// `D_j(D_i(t)) = Σ_k c[i][j][k] D_k(t)` for every generator `t`.
    pub fn check_iterativity_constants(&self, c: &StructureConstants) -> Result<IterVerdict> {
        let idx = self.index_set();
        if c.index_set().len() != idx.len() || c.field() != self.ring.base_field() {
            return Err(Error::arg("structure constants do not match the derivation"));
        }
        for (s, row) in self.generator_table().iter().enumerate() {
            for (ir, di) in row.iter().enumerate() {
                let applied = self.all_components(di)?;
                for (jr, lhs) in applied.iter().enumerate() {
                    let rhs = c
                        .row(ir, jr)
                        .iter()
                        .fold(self.ring.zero(), |acc, &(k, ck)| self.ring.add(&acc, &self.ring.scale(ck, &row[k])));
                    if *lhs != rhs {
                        let failure = IterFailure {
                            generator: self.ring.gen_names()[s].clone(),
                            i: idx.get(ir).to_vec(),
                            j: idx.get(jr).to_vec(),
                        };
                        return Ok(IterVerdict { failure: Some(failure) });
                    }
                }
            }
        }
        Ok(IterVerdict { failure: None })
    }

    pub fn fmt_images(&self) -> Vec<String> {
        self.images
            .iter()
            .enumerate()
            .map(|(s, im)| format!("{} -> {}", self.ring.gen_names()[s], self.target.fmt_elem(im)))
            .collect()
    }
}

impl HSDerivation<PowerSeriesRing> {
    /// X-precision to which `D_i(x)` is exact when `x` is exact.
    pub fn guaranteed_precision(&self, i: &[u32]) -> u32 {
        self.ring.precision().saturating_sub(i.iter().sum())
    }
}

#[cfg(test)]
mod tests;
