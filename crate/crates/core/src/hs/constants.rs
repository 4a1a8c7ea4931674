//! Constants and absolute constants on a finite degree slice.

use std::collections::BTreeMap;

use super::HSDerivation;
use crate::algebra::generated::GeneratedAlgebra;
use crate::algebra::gf::{Fe, Gf};
use crate::algebra::linalg::{kernel, rank, rref};
use crate::algebra::poly::Monomial;
use crate::error::{Error, Result};

/// Kernel data on the span of monomials of total degree at most `degree`.
#[derive(Clone, Debug, PartialEq)]
pub struct ConstantsReport {
    pub degree: u32,
    /// Basis of the slice, graded lexicographic.
    pub monomials: Vec<Vec<u32>>,
    /// Reduced row echelon basis of the kernel, in slice coordinates.
    pub constants: Vec<Vec<Fe>>,
    /// Reduced row echelon basis of the p-th powers in the slice.
    pub pth_powers: Vec<Vec<Fe>>,
    /// The two subspaces coincide.
    pub strict: bool,
}

impl ConstantsReport {
    pub fn dim(&self) -> usize {
        self.constants.len()
    }

    pub fn elements<A: GeneratedAlgebra>(&self, ring: &A) -> Vec<A::Elem> {
        self.constants.iter().map(|v| self.element(ring, v)).collect()
    }

    fn element<A: GeneratedAlgebra>(&self, ring: &A, v: &[Fe]) -> A::Elem {
        v.iter()
            .zip(&self.monomials)
            .filter(|(c, _)| c.0 != 0)
            .fold(ring.zero(), |acc, (c, m)| ring.add(&acc, &ring.scale(*c, &ring.monomial(m))))
    }

    pub fn fmt_basis<A: GeneratedAlgebra>(&self, ring: &A) -> Vec<String> {
        self.elements(ring).iter().map(|x| ring.fmt_elem(x)).collect()
    }
}

/// Monomials in `n` variables of total degree at most `d`, graded lexicographic.
pub fn slice_monomials(n: usize, d: u32) -> Vec<Vec<u32>> {
    let mut out = Vec::new();
    for deg in 0..=d {
        let mut level = Vec::new();
        fill(n, deg, &mut vec![0; n], 0, &mut level);
        level.sort();
        out.extend(level);
    }
    out
}

fn fill(n: usize, left: u32, cur: &mut Vec<u32>, pos: usize, out: &mut Vec<Vec<u32>>) {
    if pos + 1 == n {
        cur[pos] = left;
        out.push(cur.clone());
        return;
    }
    if n == 0 {
        out.push(Vec::new());
        return;
    }
    for x in 0..=left {
        cur[pos] = x;
        fill(n, left - x, cur, pos + 1, out);
    }
}

fn coords<A: GeneratedAlgebra>(ring: &A, x: &A::Elem) -> Result<Vec<(Monomial, Fe)>> {
    ring.poly_coords(x).ok_or_else(|| Error::Unsupported("constants need a polynomial or power-series ring".into()))
}

fn kernel_report<A: GeneratedAlgebra>(d: &HSDerivation<A>, degree: u32, ops: &[Vec<u32>]) -> Result<ConstantsReport> {
    let ring = d.ring();
    let field: &Gf = ring.base_field();
    let monomials = slice_monomials(ring.num_gens(), degree);
    let mut rows: BTreeMap<(usize, Monomial), Vec<Fe>> = BTreeMap::new();
    for (col, m) in monomials.iter().enumerate() {
        let x = ring.monomial(m);
        let img = d.apply(&x)?;
        for (o, i) in ops.iter().enumerate() {
            let val = d.target().coeff(&img, i)?;
            for (mono, c) in coords(ring, &val)? {
                rows.entry((o, mono)).or_insert_with(|| vec![Fe(0); monomials.len()])[col] = c;
            }
        }
    }
    let matrix: Vec<Vec<Fe>> = rows.into_values().collect();
    let mut constants = kernel(field, &matrix, monomials.len());
    rref(field, &mut constants);
    let p = field.p() as u32;
    let mut pth_powers: Vec<Vec<Fe>> = monomials
        .iter()
        .enumerate()
        .filter(|(_, m)| m.iter().all(|e| e % p == 0))
        .map(|(c, _)| {
            let mut v = vec![Fe(0); monomials.len()];
            v[c] = Fe(1);
            v
        })
        .collect();
    rref(field, &mut pth_powers);
    let strict = constants == pth_powers;
    Ok(ConstantsReport { degree, monomials, constants, pth_powers, strict })
}

/// Joint kernel of the first-order operators `D_{e_1}, ..., D_{e_e}`.
pub fn constants_basis<A: GeneratedAlgebra>(d: &HSDerivation<A>, degree: u32) -> Result<ConstantsReport> {
    let e = d.dim();
    let ops: Vec<Vec<u32>> = (0..e)
        .map(|a| {
            let mut v = vec![0; e];
            v[a] = 1;
            v
        })
        .collect();
    kernel_report(d, degree, &ops)
}

/// Joint kernel of every `D_i` with `i ≠ 0`.
pub fn absolute_constants_basis<A: GeneratedAlgebra>(d: &HSDerivation<A>, degree: u32) -> Result<ConstantsReport> {
    let ops: Vec<Vec<u32>> = d.index_set().iter().skip(1).map(<[u32]>::to_vec).collect();
    kernel_report(d, degree, &ops)
}

/// Every `D_i` maps the constants of `report` back into their span.
pub fn constants_closed_under<A: GeneratedAlgebra>(d: &HSDerivation<A>, report: &ConstantsReport) -> Result<bool> {
    let ring = d.ring();
    let field = ring.base_field();
    let position: BTreeMap<&[u32], usize> = report.monomials.iter().enumerate().map(|(c, m)| (m.as_slice(), c)).collect();
    let base_rank = report.constants.len();
    for x in report.elements(ring) {
        for v in d.all_components(&x)?.iter().skip(1) {
            let mut row = vec![Fe(0); report.monomials.len()];
            for (m, c) in coords(ring, v)? {
                match position.get(m.0.as_slice()) {
                    Some(&col) => row[col] = c,
                    None => return Ok(false),
                }
            }
            let mut stacked = report.constants.clone();
            stacked.push(row);
            if rank(field, &stacked) != base_rank {
                return Ok(false);
            }
        }
    }
    Ok(true)
}
