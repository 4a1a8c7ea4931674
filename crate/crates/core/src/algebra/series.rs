//! Power series `F_q[[X_1, ..., X_e]]` at finite precision.

use std::fmt;

use super::generated::GeneratedAlgebra;
use super::gf::{Fe, Gf};
use super::poly::Monomial;
use super::ring::Ring;
use crate::error::Result;
use crate::trunc::{compose_generic, unpack, TruncRing, TruncSeries};

/// Series modulo `(X_1^N, ..., X_e^N)`.
#[derive(Clone, PartialEq)]
pub struct PowerSeriesRing {
    inner: TruncRing<Gf>,
}

impl fmt::Debug for PowerSeriesRing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}[[{}]]/({})", self.inner.coeff_ring(), self.inner.names().join(","), self.precision())
    }
}

impl PowerSeriesRing {
    pub fn new(field: Gf, e: usize, precision: u32) -> Result<Self> {
        let names = (1..=e).map(|i| format!("X{i}")).collect();
        Ok(PowerSeriesRing { inner: TruncRing::with_bound(field, names, precision)? })
    }

    pub fn precision(&self) -> u32 {
        self.inner.bound()
    }

    pub fn dim(&self) -> usize {
        self.inner.arity()
    }

    pub fn as_trunc(&self) -> &TruncRing<Gf> {
        &self.inner
    }
}

impl Ring for PowerSeriesRing {
    type Elem = TruncSeries<Fe>;

    fn zero(&self) -> Self::Elem {
        self.inner.zero()
    }
    fn one(&self) -> Self::Elem {
        self.inner.one()
    }
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        self.inner.add(a, b)
    }
    fn neg(&self, a: &Self::Elem) -> Self::Elem {
        self.inner.neg(a)
    }
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        self.inner.mul(a, b)
    }
    fn is_zero(&self, a: &Self::Elem) -> bool {
        a.is_zero()
    }
    fn inv(&self, a: &Self::Elem) -> Option<Self::Elem> {
        self.inner.inv(a)
    }
    fn base_field(&self) -> &Gf {
        self.inner.coeff_ring()
    }
    fn from_base(&self, c: Fe) -> Self::Elem {
        self.inner.from_base(c)
    }
    fn map_base(&self, a: &Self::Elem, f: &dyn Fn(Fe) -> Fe) -> Self::Elem {
        self.inner.map_base(a, f)
    }
    fn fmt_elem(&self, a: &Self::Elem) -> String {
        self.inner.fmt_elem(a)
    }
}

impl GeneratedAlgebra for PowerSeriesRing {
    fn gen_names(&self) -> &[String] {
        self.inner.names()
    }

    fn gen(&self, i: usize) -> Self::Elem {
        self.inner.var(i)
    }

    fn eval_hom<T: Ring>(
        &self,
        x: &Self::Elem,
        target: &T,
        images: &[T::Elem],
        coeff: &dyn Fn(Fe) -> T::Elem,
    ) -> Result<T::Elem> {
        if images.len() != self.dim() {
            return Err(crate::Error::arg("image count does not match generator count"));
        }
        Ok(compose_generic(target, x, images, |c| coeff(*c), self.dim()))
    }

    fn monomial(&self, exps: &[u32]) -> Self::Elem {
        self.inner.monomial(exps, Fe(1))
    }

    fn poly_coords(&self, x: &Self::Elem) -> Option<Vec<(Monomial, Fe)>> {
        Some(x.terms().map(|(k, c)| (Monomial(unpack(k, self.dim())), *c)).collect())
    }
}
