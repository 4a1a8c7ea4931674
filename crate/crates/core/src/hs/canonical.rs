//! Canonical derivations `f ↦ f(F(v, X))` attached to a group law.

use super::HSDerivation;
use crate::algebra::generated::GeneratedAlgebra;
use crate::algebra::poly::PolyRing;
use crate::algebra::series::PowerSeriesRing;
use crate::algebra::ring::Ring;
use crate::algebra::Gf;
use crate::error::{Error, Result};
use crate::formal_group::FormalGroupLaw;
use crate::trunc::TruncRing;

/// Images `t_s ↦ F_s(v, t)` on any ring with `e` generators.
pub fn canonical_on<A: GeneratedAlgebra>(law: &FormalGroupLaw, ring: A, m: u32) -> Result<HSDerivation<A>> {
    let e = law.dim();
    if ring.num_gens() != e {
        return Err(Error::arg(format!("a law of dimension {e} needs a ring with {e} generators")));
    }
    if ring.base_field() != law.field() {
        return Err(Error::arg("law and ring are over different fields"));
    }
    let target = TruncRing::new(ring.clone(), m, e)?;
    let args: Vec<_> = (0..e).map(|t| target.var(t)).chain((0..e).map(|t| target.constant(ring.gen(t)))).collect();
    let images = law
        .series()
        .iter()
        .map(|f| law.ring().compose(&target, f, &args, |c| target.from_base(*c)))
        .collect();
    HSDerivation::with_target(ring, target, images)
}

/// The canonical derivation on `k[[X_1..X_e]]` at X-precision `precision`.
pub fn canonical_derivation(law: &FormalGroupLaw, precision: u32, m: u32) -> Result<HSDerivation<PowerSeriesRing>> {
    let bound = crate::trunc::level_bound(law.field().p(), m)?;
    if precision < bound {
        return Err(Error::Precondition(format!("precision {precision} is below p^m = {bound}")));
    }
    let ring = PowerSeriesRing::new(law.field().clone(), law.dim(), precision)?;
    canonical_on(law, ring, m)
}

/// Levels `1..=max_level` of the canonical derivation.
pub fn canonical_family(law: &FormalGroupLaw, precision: u32, max_level: u32) -> Result<Vec<HSDerivation<PowerSeriesRing>>> {
    (1..=max_level).map(|m| canonical_derivation(law, precision, m)).collect()
}

/// The canonical derivation on the coordinate ring `k[t]` (or `k[t1..te]`).
pub fn canonical_group_derivation(law: &FormalGroupLaw, m: u32) -> Result<HSDerivation<PolyRing<Gf>>> {
    canonical_on(law, coordinate_ring(law), m)
}

pub(crate) fn coordinate_ring(law: &FormalGroupLaw) -> PolyRing<Gf> {
    let e = law.dim();
    let names = if e == 1 { vec!["t".to_string()] } else { (1..=e).map(|i| format!("t{i}")).collect() };
    PolyRing::new(law.field().clone(), names)
}
