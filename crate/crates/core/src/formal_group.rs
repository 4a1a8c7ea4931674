//! Polynomial formal group laws, their truncations, and the structure
//! constants of the induced comultiplication.
//!
//! A law of dimension `e` is a tuple of polynomials in `X1..Xe, Y1..Ye`.
//! The structure constant `c[i][j][k]` is the coefficient of `v^i w^j` in
//! `F(v, w)^k`; with this orientation an action satisfies
//! `D_j ∘ D_i = Σ_k c[i][j][k] D_k`.

use std::collections::HashMap;

use rayon::prelude::*;

use crate::algebra::gf::{Fe, Gf};
use crate::algebra::poly::{MultiPoly, PolyRing};
use crate::algebra::ring::Ring;
use crate::error::{Error, Result};
use crate::trunc::{fmt_index, level_bound, pack, unpack, IndexSet, TruncRing, TruncSeries, MAX_ARITY};

pub const BUILTINS: [&str; 4] = ["additive", "multiplicative", "witt2", "ga_semidirect_gm"];

#[derive(Clone, Debug, PartialEq)]
pub struct FormalGroupLaw {
    name: String,
    dim: usize,
    ring: PolyRing<Gf>,
    series: Vec<MultiPoly<Fe>>,
}

/// A law known to be a group law only modulo `p^m`-th powers.
#[derive(Clone, Debug, PartialEq)]
pub struct TruncatedGroupLaw {
    law: FormalGroupLaw,
    level: u32,
}

fn law_ring(field: &Gf, e: usize) -> PolyRing<Gf> {
    let names = (1..=e).map(|i| format!("X{i}")).chain((1..=e).map(|i| format!("Y{i}"))).collect();
    PolyRing::new(field.clone(), names)
}

impl FormalGroupLaw {
    pub fn new(name: impl Into<String>, field: &Gf, dim: usize, series: Vec<MultiPoly<Fe>>) -> Result<Self> {
        if dim == 0 || series.len() != dim {
            return Err(Error::arg(format!("a law of dimension {dim} needs {dim} components")));
        }
        let ring = law_ring(field, dim);
        if let Some(bad) = series.iter().flat_map(|f| f.terms()).find(|(m, _)| m.0.len() != 2 * dim) {
            return Err(Error::arg(format!("monomial of arity {} in a law of dimension {dim}", bad.0 .0.len())));
        }
        Ok(FormalGroupLaw { name: name.into(), dim, ring, series })
    }

    /// Built-in laws: `additive` (any `e`), `multiplicative`, `witt2` and
    /// `ga_semidirect_gm`.
    pub fn builtin(name: &str, field: &Gf, e: usize) -> Result<Self> {
        let r2 = |e| law_ring(field, e);
        match name {
            "additive" => {
                if e == 0 {
                    return Err(Error::arg("additive law needs e >= 1"));
                }
                let r = r2(e);
                let s = (0..e).map(|t| r.add(&r.var(t), &r.var(e + t))).collect();
                Self::new(name, field, e, s)
            }
            "multiplicative" => {
                let r = r2(1);
                let (x, y) = (r.var(0), r.var(1));
                Self::new(name, field, 1, vec![r.add(&r.add(&x, &y), &r.mul(&x, &y))])
            }
            "witt2" => {
                let r = r2(2);
                let (x1, x2, y1, y2) = (r.var(0), r.var(1), r.var(2), r.var(3));
                let first = r.add(&x1, &y1);
                let second = r.add(&r.add(&x2, &y2), &witt_cocycle(&r, field.p(), 0, 2));
                Self::new(name, field, 2, vec![first, second])
            }
            "ga_semidirect_gm" => {
                let r = r2(2);
                let (x1, x2, y1, y2) = (r.var(0), r.var(1), r.var(2), r.var(3));
                let first = r.add(&r.add(&x1, &y1), &r.mul(&x2, &y1));
                let second = r.add(&r.add(&x2, &y2), &r.mul(&x2, &y2));
                Self::new(name, field, 2, vec![first, second])
            }
            _ => Err(Error::arg(format!("unknown group law {name:?}; expected one of {}", BUILTINS.join(", ")))),
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn field(&self) -> &Gf {
        self.ring.base()
    }

    /// The polynomial ring in `X1..Xe, Y1..Ye`.
    pub fn ring(&self) -> &PolyRing<Gf> {
        &self.ring
    }

    pub fn series(&self) -> &[MultiPoly<Fe>] {
        &self.series
    }

    /// Largest total degree of a component.
    pub fn degree(&self) -> u32 {
        self.series.iter().filter_map(MultiPoly::total_degree).max().unwrap_or(0)
    }

    pub fn check_axioms(&self, m: u32) -> Result<AxiomVerdict> {
        check_axioms(self, m)
    }

    pub fn truncate(&self, m: u32) -> Result<TruncatedGroupLaw> {
        let bound = level_bound(self.field().p(), m)?;
        let series = self
            .series
            .iter()
            .map(|f| self.ring.from_terms(f.terms().filter(|(mo, _)| mo.0.iter().all(|&x| x < bound)).map(|(mo, c)| (mo.clone(), *c))))
            .collect();
        let law = FormalGroupLaw { name: self.name.clone(), dim: self.dim, ring: self.ring.clone(), series };
        Ok(TruncatedGroupLaw { law, level: m })
    }

    /// Block product: the first factor occupies the first coordinates.
    pub fn product(&self, other: &FormalGroupLaw) -> Result<FormalGroupLaw> {
        if self.field() != other.field() {
            return Err(Error::arg("product of laws over different fields"));
        }
        let (e1, e2) = (self.dim, other.dim);
        let e = e1 + e2;
        let ring = law_ring(self.field(), e);
        let map1: Vec<usize> = (0..e1).chain(e..e + e1).collect();
        let map2: Vec<usize> = (e1..e).chain(e + e1..2 * e).collect();
        let mut series: Vec<_> = self.series.iter().map(|f| self.ring.remap_vars(&ring, f, &map1)).collect();
        series.extend(other.series.iter().map(|f| other.ring.remap_vars(&ring, f, &map2)));
        FormalGroupLaw::new(format!("{}*{}", self.name, other.name), self.field(), e, series)
    }

    /// Apply `x ↦ x^(p^i)` to every coefficient.
    pub fn frobenius_twist(&self, i: u32) -> FormalGroupLaw {
        let f = self.field().clone();
        let series = self.series.iter().map(|s| self.ring.map_base(s, &|c| f.frobenius(c, i))).collect();
        FormalGroupLaw { name: format!("{}^(p^{i})", self.name), dim: self.dim, ring: self.ring.clone(), series }
    }

    pub fn fmt_law(&self) -> Vec<String> {
        self.series.iter().map(|f| self.ring.fmt_poly(f)).collect()
    }
}

/// `((X_a + Y_a)^p - X_a^p - Y_a^p) / p` reduced mod p, in variables `a` and `b`.
fn witt_cocycle(r: &PolyRing<Gf>, p: u64, a: usize, b: usize) -> MultiPoly<Fe> {
    let n = r.nvars();
    let f = r.base();
    let mut binom: u128 = 1;
    let mut terms = Vec::new();
    for i in 1..p {
        binom = binom * (p - i + 1) as u128 / i as u128;
        let c = (binom / p as u128) % p as u128;
        let mut e = vec![0; n];
        e[a] = i as u32;
        e[b] = (p - i) as u32;
        terms.push((crate::algebra::Monomial(e), f.from_int(c as i64)));
    }
    r.from_terms(terms)
}

impl TruncatedGroupLaw {
    /// A level-`m` law given directly; it must satisfy the axioms at level `m`.
    pub fn new(law: FormalGroupLaw, m: u32) -> Result<Self> {
        let t = law.truncate(m)?;
        let v = check_axioms(&t.law, m)?;
        if !v.passed() {
            return Err(Error::Precondition(format!("not a group law at level {m}: {}", v.describe())));
        }
        Ok(t)
    }

    pub fn law(&self) -> &FormalGroupLaw {
        &self.law
    }

    pub fn level(&self) -> u32 {
        self.level
    }

    pub fn dim(&self) -> usize {
        self.law.dim
    }

    pub fn field(&self) -> &Gf {
        self.law.field()
    }

    pub fn bound(&self) -> u32 {
        self.field().p().pow(self.level) as u32
    }

    pub fn index_set(&self) -> IndexSet {
        IndexSet::new(self.bound(), self.dim())
    }

    /// `F(v, w)` in the two-block ring over `coeff` (`w` block first).
    pub fn in_two_block<R: Ring>(&self, ring2: &TruncRing<R>) -> Result<Vec<TruncSeries<R::Elem>>> {
        let e = self.dim();
        self.check_two_block(ring2)?;
        let coeff = ring2.coeff_ring();
        let images: Vec<_> = (0..e).map(|t| ring2.var(e + t)).chain((0..e).map(|t| ring2.var(t))).collect();
        Ok(self
            .law
            .series
            .iter()
            .map(|f| self.law.ring.compose(ring2, f, &images, |c| ring2.constant(coeff.from_base(*c))))
            .collect())
    }

    fn check_two_block<R: Ring>(&self, ring2: &TruncRing<R>) -> Result<()> {
        if ring2.arity() != 2 * self.dim() || ring2.bound() != self.bound() {
            return Err(Error::arg(format!(
                "two-block ring of arity {} and bound {} does not match a level-{} law of dimension {}",
                ring2.arity(),
                ring2.bound(),
                self.level,
                self.dim()
            )));
        }
        if ring2.base_field() != self.field() {
            return Err(Error::arg("coefficient ring is over a different field"));
        }
        Ok(())
    }

    /// The comultiplication `v^k ↦ F(v, w)^k`, extended linearly.
    pub fn comultiplication_map<R: Ring>(
        &self,
        ring1: &TruncRing<R>,
        ring2: &TruncRing<R>,
        a: &TruncSeries<R::Elem>,
    ) -> Result<TruncSeries<R::Elem>> {
        if ring1.arity() != self.dim() || ring1.bound() != self.bound() {
            return Err(Error::arg("series ring does not match the law"));
        }
        ring1.validate(a)?;
        let f = self.in_two_block(ring2)?;
        Ok(crate::trunc::compose_generic(ring2, a, &f, |c| ring2.constant(c.clone()), self.dim()))
    }

    pub fn structure_constants(&self) -> Result<StructureConstants> {
        StructureConstants::compute(self)
    }
}

/// Outcome of checking unit and associativity axioms.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AxiomVerdict {
    pub level: u32,
    pub unit_ok: bool,
    pub associativity_ok: bool,
    /// First failing axiom, component and monomial.
    pub first_failure: Option<AxiomFailure>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AxiomFailure {
    pub axiom: &'static str,
    pub component: usize,
    pub monomial: String,
}

impl AxiomVerdict {
    pub fn passed(&self) -> bool {
        self.unit_ok && self.associativity_ok
    }

    pub fn describe(&self) -> String {
        match &self.first_failure {
            None => "pass".into(),
            Some(f) => format!("{} fails in component {} at {}", f.axiom, f.component + 1, f.monomial),
        }
    }
}

/// Unit and associativity modulo `p^m`-th powers of all variables.
pub fn check_axioms(law: &FormalGroupLaw, m: u32) -> Result<AxiomVerdict> {
    let e = law.dim;
    if 3 * e > MAX_ARITY {
        return Err(Error::Unsupported(format!("axiom check for dimension {e} exceeds the arity limit")));
    }
    let bound = level_bound(law.field().p(), m)?;
    let names = ["X", "Y", "Z"].iter().flat_map(|b| (1..=e).map(move |i| format!("{b}{i}"))).collect();
    let r3 = TruncRing::with_bound(law.field().clone(), names, bound)?;
    let block = |b: usize| -> Vec<TruncSeries<Fe>> { (0..e).map(|t| r3.var(b * e + t)).collect() };
    let (x, y, z) = (block(0), block(1), block(2));
    let zero = vec![r3.zero(); e];
    let eval = |a: &[TruncSeries<Fe>], b: &[TruncSeries<Fe>]| -> Vec<TruncSeries<Fe>> {
        let args: Vec<_> = a.iter().chain(b).cloned().collect();
        law.series.iter().map(|f| law.ring.compose(&r3, f, &args, |c| r3.constant(*c))).collect()
    };
    let mut failure: Option<AxiomFailure> = None;
    let mut compare = |axiom: &'static str, lhs: &[TruncSeries<Fe>], rhs: &[TruncSeries<Fe>]| -> bool {
        let mut ok = true;
        for (t, (a, b)) in lhs.iter().zip(rhs).enumerate() {
            let d = r3.sub(a, b);
            let first = d.terms().next().map(|(k, _)| k);
            if let Some(k) = first {
                ok = false;
                if failure.is_none() {
                    let mono = r3.fmt_elem(&r3.from_keys([(k, Fe(1))]));
                    failure = Some(AxiomFailure { axiom, component: t, monomial: mono });
                }
            }
        }
        ok
    };
    let unit_ok = compare("right unit", &eval(&x, &zero), &x) & compare("left unit", &eval(&zero, &x), &x);
    let xy = eval(&x, &y);
    let yz = eval(&y, &z);
    let associativity_ok = compare("associativity", &eval(&xy, &z), &eval(&x, &yz));
    Ok(AxiomVerdict { level: m, unit_ok, associativity_ok, first_failure: failure })
}

/// The tensor `c[i][j][k]`, indices by rank in the graded lexicographic
/// listing of `[p^m]^e`.
#[derive(Clone, Debug)]
pub struct StructureConstants {
    field: Gf,
    level: u32,
    index: IndexSet,
    by_pair: HashMap<(usize, usize), Vec<(usize, Fe)>>,
}

impl StructureConstants {
    fn compute(g: &TruncatedGroupLaw) -> Result<Self> {
        let e = g.dim();
        let field = g.field().clone();
        let ring2 = TruncRing::two_block(field.clone(), g.level, e)?;
        let f = g.in_two_block(&ring2)?;
        let index = g.index_set();
        let b = g.bound() as usize;
        let axis_powers: Vec<Vec<TruncSeries<Fe>>> = f
            .iter()
            .map(|ft| {
                let mut pw = vec![ring2.one()];
                for _ in 1..b {
                    pw.push(ring2.mul(pw.last().unwrap(), ft));
                }
                pw
            })
            .collect();
        let per_k: Vec<Vec<((usize, usize), usize, Fe)>> = (0..index.len())
            .into_par_iter()
            .map(|kr| {
                let k = index.get(kr);
                let mut pw = ring2.one();
                for (t, &kt) in k.iter().enumerate() {
                    if kt > 0 {
                        pw = ring2.mul(&pw, &axis_powers[t][kt as usize]);
                    }
                }
                pw.terms()
                    .map(|(key, c)| {
                        let ex = unpack(key, 2 * e);
                        let j = index.rank_of(&ex[..e]).unwrap();
                        let i = index.rank_of(&ex[e..]).unwrap();
                        ((i, j), kr, *c)
                    })
                    .collect()
            })
            .collect();
        let mut by_pair: HashMap<(usize, usize), Vec<(usize, Fe)>> = HashMap::new();
        for (ij, k, c) in per_k.into_iter().flatten() {
            by_pair.entry(ij).or_default().push((k, c));
        }
        for v in by_pair.values_mut() {
            v.sort_by_key(|x| x.0);
        }
        Ok(StructureConstants { field, level: g.level, index, by_pair })
    }

    pub fn field(&self) -> &Gf {
        &self.field
    }

    pub fn level(&self) -> u32 {
        self.level
    }

    pub fn index_set(&self) -> &IndexSet {
        &self.index
    }

    pub fn get(&self, i: usize, j: usize, k: usize) -> Fe {
        self.by_pair
            .get(&(i, j))
            .and_then(|v| v.binary_search_by_key(&k, |x| x.0).ok().map(|pos| v[pos].1))
            .unwrap_or(Fe(0))
    }

    pub fn get_vec(&self, i: &[u32], j: &[u32], k: &[u32]) -> Result<Fe> {
        let r = |x: &[u32]| self.index.rank_of(x).ok_or_else(|| Error::arg(format!("index ({}) out of range", fmt_index(x))));
        Ok(self.get(r(i)?, r(j)?, r(k)?))
    }

    /// Nonzero `(k, c[i][j][k])` in increasing `k`.
    pub fn row(&self, i: usize, j: usize) -> &[(usize, Fe)] {
        self.by_pair.get(&(i, j)).map_or(&[], Vec::as_slice)
    }

    /// All nonzero entries ordered by `(i, j, k)` rank.
    pub fn nonzero(&self) -> Vec<(usize, usize, usize, Fe)> {
        let mut out: Vec<_> =
            self.by_pair.iter().flat_map(|(&(i, j), v)| v.iter().map(move |&(k, c)| (i, j, k, c))).collect();
        out.sort_by_key(|x| (x.0, x.1, x.2));
        out
    }

    /// Table line such as `c[1][1][2] = 2` or `c[1,0][0,1][1,1] = 1`.
    pub fn fmt_entry(&self, i: usize, j: usize, k: usize, c: Fe) -> String {
        let f = |r| fmt_index(self.index.get(r));
        format!("c[{}][{}][{}] = {}", f(i), f(j), f(k), self.field.fmt_fe(c))
    }
}

/// Packed key of `(w^j, v^i)` in the two-block ring.
pub fn two_block_key(i: &[u32], j: &[u32]) -> u128 {
    let v: Vec<u32> = j.iter().chain(i).copied().collect();
    pack(&v)
}
