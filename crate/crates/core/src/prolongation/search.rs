use rayon::prelude::*;

use super::{cv_compatibility, nabla_point, AffineVariety, CompatMode, CompatVerdict, JetRing};
use crate::algebra::gf::Fe;
use crate::algebra::poly::Monomial;
use crate::algebra::ratfunc::RatFunc;
use crate::algebra::ring::Ring;
use crate::error::{Error, Result};
use crate::formal_group::TruncatedGroupLaw;
use crate::trunc::IndexSet;

/// Finite candidate sets for `a ∈ K^n`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SearchSpace {
    /// Constants of the base field `F_q`.
    BaseField,
    /// Polynomials in the generators of `K` of total degree at most `d`.
    DegreeBound(u32),
}

#[derive(Clone, Debug, PartialEq)]
pub struct AxiomReport {
    pub compatibility: CompatVerdict,
    pub witness: Option<Vec<RatFunc>>,
    pub jet: Option<Vec<RatFunc>>,
    pub space_size: u64,
    pub checked: u64,
    pub irreducible_asserted: bool,
    pub generic_projection_asserted: bool,
}

impl AxiomReport {
    pub fn exhausted(&self) -> bool {
        self.witness.is_none()
    }
}

/// Hypotheses of the axiom the caller vouches for.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Asserted {
    pub irreducible: bool,
    pub generic_projection: bool,
}

/// Search for `a ∈ V` with `𝔻_V(a) ∈ W ∖ Z`.
///
/// Candidates are numbered in base `q` with one digit per monomial slot,
/// slots ordered by coordinate and then by ascending monomial, so constant
/// terms are the least significant digits. The first witness in this order
/// is returned.
#[allow(clippy::too_many_arguments)]
pub fn axiom_instance_check(
    g: &TruncatedGroupLaw,
    jet: &JetRing,
    v: &AffineVariety,
    w: &AffineVariety,
    z: Option<&AffineVariety>,
    space: SearchSpace,
    asserted: Asserted,
    budget: u64,
) -> Result<AxiomReport> {
    let compatibility = cv_compatibility(g, jet, v, w, &CompatMode::Symbolic, budget)?;
    if !compatibility.compatible {
        return Err(Error::Precondition(format!(
            "W is not compatible with the comultiplication: {}",
            compatibility.witness.as_deref().unwrap_or("")
        )));
    }
    if let Some(z) = z {
        if z.ring != w.ring {
            return Err(Error::arg("Z must live in the same coordinates as W"));
        }
    }
    let k = jet.field();
    let kp = k.poly_ring();
    let field = k.base_field();
    let slots: Vec<Monomial> = match space {
        SearchSpace::BaseField => vec![Monomial::one(kp.nvars())],
        SearchSpace::DegreeBound(d) => {
            if kp.nvars() == 0 {
                vec![Monomial::one(0)]
            } else {
                let mut ms: Vec<Monomial> = IndexSet::new(d + 1, kp.nvars())
                    .iter()
                    .filter(|i| i.iter().sum::<u32>() <= d)
                    .map(|i| Monomial(i.to_vec()))
                    .collect();
                ms.sort_by(|a, b| kp.order().cmp(a, b));
                ms
            }
        }
    };
    let n = v.arity();
    let digits = (slots.len() * n) as u32;
    let q = field.order();
    let space_size = q.checked_pow(digits).filter(|&s| s <= budget).ok_or_else(|| {
        Error::Budget(format!("{q}^{digits} candidates exceed the search budget {budget}"))
    })?;
    let candidate = |idx: u64| -> Vec<RatFunc> {
        let mut x = idx;
        (0..n)
            .map(|_| {
                let terms: Vec<(Monomial, Fe)> = slots
                    .iter()
                    .map(|m| {
                        let d = x % q;
                        x /= q;
                        (m.clone(), Fe(d as u32))
                    })
                    .collect();
                k.from_poly(kp.from_terms(terms))
            })
            .collect()
    };
    let d = jet.derivation();
    let test = |a: &[RatFunc]| -> Result<Option<Vec<RatFunc>>> {
        if !v.contains(a)? {
            return Ok(None);
        }
        let b = nabla_point(d, a)?;
        if !w.contains(&b)? {
            return Ok(None);
        }
        match z {
            Some(z) if z.contains(&b)? => Ok(None),
            _ => Ok(Some(b)),
        }
    };
    let found = (0..space_size).into_par_iter().find_first(|&idx| !matches!(test(&candidate(idx)), Ok(None)));
    let (witness, jet_point, checked) = match found {
        None => (None, None, space_size),
        Some(idx) => {
            let a = candidate(idx);
            let b = test(&a)?.expect("found candidate is a witness");
            (Some(a), Some(b), idx + 1)
        }
    };
    Ok(AxiomReport {
        compatibility,
        witness,
        jet: jet_point,
        space_size,
        checked,
        irreducible_asserted: asserted.irreducible,
        generic_projection_asserted: asserted.generic_projection,
    })
}
