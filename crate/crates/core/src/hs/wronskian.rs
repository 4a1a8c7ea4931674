//! Wronskian matrices and linear dependence over the constants.

use super::HSDerivation;
use crate::algebra::generated::GeneratedAlgebra;
use crate::algebra::linalg::rank;
use crate::algebra::ring::Field;
use crate::error::{Error, Result};
use crate::formal_group::TruncatedGroupLaw;

/// Rows `(D_i(x_1), ..., D_i(x_l))` for `i ∈ [p]^e`, after checking that the
/// level-1 truncation of `d` is iterative for `g`.
pub fn wronskian_matrix<A: GeneratedAlgebra + Field>(
    d: &HSDerivation<A>,
    g: &TruncatedGroupLaw,
    xs: &[A::Elem],
) -> Result<Vec<Vec<A::Elem>>> {
    let d1 = d.truncate(1)?;
    let g1 = g.law().truncate(1)?;
    let v = d1.check_iterativity(&g1)?;
    if !v.passed() {
        return Err(Error::Precondition(format!("derivation is not iterative at level 1: {}", v.describe())));
    }
    let cols: Vec<Vec<A::Elem>> = xs.iter().map(|x| d1.all_components(x)).collect::<Result<_>>()?;
    let n = d1.index_set().len();
    Ok((0..n).map(|r| cols.iter().map(|c| c[r].clone()).collect()).collect())
}

/// Linear dependence over the constants: the Wronskian has rank below `l`.
pub fn dependence_over_constants<A: GeneratedAlgebra + Field>(
    d: &HSDerivation<A>,
    g: &TruncatedGroupLaw,
    xs: &[A::Elem],
) -> Result<bool> {
    let w = wronskian_matrix(d, g, xs)?;
    Ok(rank(d.ring(), &w) < xs.len())
}
