//! The abstract commutative-ring interface shared by every coefficient ring.
//!
//! Rings are *context objects*: elements are plain data and all arithmetic
//! goes through the ring value, which carries whatever runtime parameters the
//! elements need (characteristic, modulus, variable count, truncation level).
//! Every ring here is an algebra over a finite field [`Gf`].

use std::fmt::Debug;

use super::gf::{Fe, Gf};

pub trait Ring: Clone + Debug + Send + Sync {
    type Elem: Clone + PartialEq + Debug + Send + Sync;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn is_zero(&self, a: &Self::Elem) -> bool;

    /// Inverse of a unit, `None` for non-units.
    fn inv(&self, a: &Self::Elem) -> Option<Self::Elem>;

    /// The finite field this ring is an algebra over.
    fn base_field(&self) -> &Gf;

    /// Structure map from the base field.
    fn from_base(&self, c: Fe) -> Self::Elem;

    /// Apply a base-field map to every base-field coefficient of `a`.
    ///
    /// Used with Frobenius powers, which are ring automorphisms of `Gf`.
    fn map_base(&self, a: &Self::Elem, f: &dyn Fn(Fe) -> Fe) -> Self::Elem;

    fn fmt_elem(&self, a: &Self::Elem) -> String;

    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        self.add(a, &self.neg(b))
    }

    fn is_one(&self, a: &Self::Elem) -> bool {
        *a == self.one()
    }

    fn from_int(&self, n: i64) -> Self::Elem {
        self.from_base(self.base_field().from_int(n))
    }

    fn scale(&self, c: Fe, a: &Self::Elem) -> Self::Elem {
        self.mul(&self.from_base(c), a)
    }

    fn characteristic(&self) -> u64 {
        self.base_field().p()
    }

    fn pow(&self, a: &Self::Elem, mut e: u64) -> Self::Elem {
        let mut base = a.clone();
        let mut acc = self.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            e >>= 1;
            if e > 0 {
                base = self.mul(&base, &base);
            }
        }
        acc
    }

    fn sum<'a, I>(&self, items: I) -> Self::Elem
    where
        I: IntoIterator<Item = &'a Self::Elem>,
        Self::Elem: 'a,
    {
        items.into_iter().fold(self.zero(), |acc, x| self.add(&acc, x))
    }
}

/// Marker for rings in which every nonzero element is a unit.
pub trait Field: Ring {
    fn div(&self, a: &Self::Elem, b: &Self::Elem) -> Option<Self::Elem> {
        self.inv(b).map(|bi| self.mul(a, &bi))
    }
}
