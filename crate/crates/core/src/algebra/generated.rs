//! Rings presented by named generators over a finite field.

use super::gf::{Fe, Gf};
use super::poly::{Monomial, MultiPoly, PolyRing};
use super::ratfunc::{RatFunc, RatFuncField};
use super::ring::Ring;
use crate::error::{Error, Result};

/// A ring in which every element is determined by polynomial data in the
/// generators, so that homomorphisms out of it are fixed by generator images.
pub trait GeneratedAlgebra: Ring {
    fn gen_names(&self) -> &[String];

    fn gen(&self, i: usize) -> Self::Elem;

    fn num_gens(&self) -> usize {
        self.gen_names().len()
    }

    /// Image of `x` under the homomorphism into `target` sending generator
    /// `i` to `images[i]` and base-field scalars through `coeff`.
    fn eval_hom<T: Ring>(
        &self,
        x: &Self::Elem,
        target: &T,
        images: &[T::Elem],
        coeff: &dyn Fn(Fe) -> T::Elem,
    ) -> Result<T::Elem>;

    /// The monomial with the given exponents in the generators.
    fn monomial(&self, exps: &[u32]) -> Self::Elem {
        exps.iter().enumerate().fold(self.one(), |acc, (i, &e)| self.mul(&acc, &self.pow(&self.gen(i), e as u64)))
    }

    /// Base-field coordinates of a polynomial element; `None` otherwise.
    fn poly_coords(&self, x: &Self::Elem) -> Option<Vec<(Monomial, Fe)>>;
}

impl GeneratedAlgebra for PolyRing<Gf> {
    fn gen_names(&self) -> &[String] {
        self.names()
    }

    fn gen(&self, i: usize) -> Self::Elem {
        self.var(i)
    }

    fn eval_hom<T: Ring>(
        &self,
        x: &Self::Elem,
        target: &T,
        images: &[T::Elem],
        coeff: &dyn Fn(Fe) -> T::Elem,
    ) -> Result<T::Elem> {
        if images.len() != self.nvars() {
            return Err(Error::arg("image count does not match generator count"));
        }
        Ok(self.compose(target, x, images, |c| coeff(*c)))
    }

    fn monomial(&self, exps: &[u32]) -> Self::Elem {
        self.term(Monomial(exps.to_vec()), Fe(1))
    }

    fn poly_coords(&self, x: &Self::Elem) -> Option<Vec<(Monomial, Fe)>> {
        Some(x.terms().map(|(m, c)| (m.clone(), *c)).collect())
    }
}

impl GeneratedAlgebra for RatFuncField {
    fn gen_names(&self) -> &[String] {
        self.poly_ring().names()
    }

    fn gen(&self, i: usize) -> RatFunc {
        self.var(i)
    }

    fn eval_hom<T: Ring>(
        &self,
        x: &RatFunc,
        target: &T,
        images: &[T::Elem],
        coeff: &dyn Fn(Fe) -> T::Elem,
    ) -> Result<T::Elem> {
        let p = self.poly_ring();
        let num = p.eval_hom(x.num(), target, images, coeff)?;
        if p.is_one(x.den()) {
            return Ok(num);
        }
        let den = p.eval_hom(x.den(), target, images, coeff)?;
        let inv = target
            .inv(&den)
            .ok_or_else(|| Error::NotUnit(format!("image of denominator {} is not a unit", p.fmt_poly(x.den()))))?;
        Ok(target.mul(&num, &inv))
    }

    fn monomial(&self, exps: &[u32]) -> RatFunc {
        self.from_poly(self.poly_ring().monomial(exps))
    }

    fn poly_coords(&self, x: &RatFunc) -> Option<Vec<(Monomial, Fe)>> {
        self.as_poly(x).and_then(|f| self.poly_ring().poly_coords(&f))
    }
}

/// Convenience: the image of a polynomial generator-wise.
pub fn poly_to<A: GeneratedAlgebra>(ring: &A, src: &PolyRing<Gf>, f: &MultiPoly<Fe>) -> A::Elem {
    let gens: Vec<A::Elem> = (0..src.nvars()).map(|i| ring.gen(i)).collect();
    src.compose(ring, f, &gens, |c| ring.from_base(*c))
}
