//! The rational function field `F_q(t_1, ..., t_r)`.

use std::fmt;

use super::gcd::gcd;
use super::gf::{Fe, Gf};
use super::poly::{Monomial, MultiPoly, PolyRing};
use super::ring::{Field, Ring};

/// A reduced fraction with monic denominator.
#[derive(Clone, PartialEq, Debug)]
pub struct RatFunc {
    num: MultiPoly<Fe>,
    den: MultiPoly<Fe>,
}

impl RatFunc {
    pub fn num(&self) -> &MultiPoly<Fe> {
        &self.num
    }

    pub fn den(&self) -> &MultiPoly<Fe> {
        &self.den
    }
}

#[derive(Clone, PartialEq)]
pub struct RatFuncField {
    poly: PolyRing<Gf>,
}

impl fmt::Debug for RatFuncField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}({})", self.poly.base(), self.poly.names().join(","))
    }
}

impl RatFuncField {
    pub fn new(poly: PolyRing<Gf>) -> Self {
        RatFuncField { poly }
    }

    pub fn poly_ring(&self) -> &PolyRing<Gf> {
        &self.poly
    }

    /// Build `num / den` in lowest terms; `None` if `den` is zero.
    pub fn frac(&self, num: MultiPoly<Fe>, den: MultiPoly<Fe>) -> Option<RatFunc> {
        if den.is_zero() {
            return None;
        }
        if num.is_zero() {
            return Some(self.zero());
        }
        let g = gcd(&self.poly, &num, &den);
        let (n, d) = if self.poly.is_one(&g) {
            (num, den)
        } else {
            (self.poly.exact_div(&num, &g).unwrap(), self.poly.exact_div(&den, &g).unwrap())
        };
        let lc = self.poly.leading_coeff(&d).unwrap();
        let li = self.poly.base().inv(&lc).unwrap();
        Some(RatFunc { num: self.poly.scale_elem(&li, &n), den: self.poly.scale_elem(&li, &d) })
    }

    /// `num / den` for coprime inputs; only the denominator is made monic.
    fn normalized(&self, num: MultiPoly<Fe>, den: MultiPoly<Fe>) -> RatFunc {
        let lc = self.poly.leading_coeff(&den).unwrap();
        if lc == Fe(1) {
            return RatFunc { num, den };
        }
        let li = self.poly.base().inv(&lc).unwrap();
        RatFunc { num: self.poly.scale_elem(&li, &num), den: self.poly.scale_elem(&li, &den) }
    }

    pub fn from_poly(&self, p: MultiPoly<Fe>) -> RatFunc {
        RatFunc { num: p, den: self.poly.one() }
    }

    pub fn var(&self, i: usize) -> RatFunc {
        self.from_poly(self.poly.var(i))
    }

    pub fn as_poly(&self, x: &RatFunc) -> Option<MultiPoly<Fe>> {
        self.poly.is_one(&x.den).then(|| x.num.clone())
    }

    /// True iff `x` is a p-th power.
    pub fn is_pth_power(&self, x: &RatFunc) -> bool {
        let p = self.poly.base().p() as u32;
        [&x.num, &x.den].iter().all(|f| f.terms().all(|(m, _)| m.0.iter().all(|e| e % p == 0)))
    }

    /// The p-th root of `x` when it exists, otherwise zero.
    pub fn lambda(&self, x: &RatFunc) -> RatFunc {
        if !self.is_pth_power(x) {
            return self.zero();
        }
        let field = self.poly.base();
        let p = field.p() as u32;
        let root = |f: &MultiPoly<Fe>| {
            self.poly.from_terms(
                f.terms().map(|(m, c)| (Monomial(m.0.iter().map(|e| e / p).collect()), field.pth_root(*c))),
            )
        };
        RatFunc { num: root(&x.num), den: root(&x.den) }
    }
}

impl Ring for RatFuncField {
    type Elem = RatFunc;

    fn zero(&self) -> RatFunc {
        RatFunc { num: self.poly.zero(), den: self.poly.one() }
    }

    fn one(&self) -> RatFunc {
        self.from_poly(self.poly.one())
    }

    fn add(&self, a: &RatFunc, b: &RatFunc) -> RatFunc {
        let p = &self.poly;
        if a.num.is_zero() {
            return b.clone();
        }
        if b.num.is_zero() {
            return a.clone();
        }
        if a.den == b.den {
            return self.frac(p.add(&a.num, &b.num), a.den.clone()).unwrap();
        }
        let d = gcd(p, &a.den, &b.den);
        if p.is_one(&d) {
            let num = p.add(&p.mul(&a.num, &b.den), &p.mul(&b.num, &a.den));
            return self.normalized(num, p.mul(&a.den, &b.den));
        }
        let (ad, bd) = (p.exact_div(&a.den, &d).unwrap(), p.exact_div(&b.den, &d).unwrap());
        let num = p.add(&p.mul(&a.num, &bd), &p.mul(&b.num, &ad));
        if num.is_zero() {
            return self.zero();
        }
        let g = gcd(p, &num, &d);
        let den = p.mul(&ad, &b.den);
        if p.is_one(&g) {
            return self.normalized(num, den);
        }
        self.normalized(p.exact_div(&num, &g).unwrap(), p.exact_div(&den, &g).unwrap())
    }

    fn neg(&self, a: &RatFunc) -> RatFunc {
        RatFunc { num: self.poly.neg(&a.num), den: a.den.clone() }
    }

    fn mul(&self, a: &RatFunc, b: &RatFunc) -> RatFunc {
        let p = &self.poly;
        if a.num.is_zero() || b.num.is_zero() {
            return self.zero();
        }
        let cancel = |n: &MultiPoly<Fe>, d: &MultiPoly<Fe>| {
            if p.is_one(d) {
                return (n.clone(), d.clone());
            }
            let g = gcd(p, n, d);
            if p.is_one(&g) {
                (n.clone(), d.clone())
            } else {
                (p.exact_div(n, &g).unwrap(), p.exact_div(d, &g).unwrap())
            }
        };
        let (an, bd) = cancel(&a.num, &b.den);
        let (bn, ad) = cancel(&b.num, &a.den);
        self.normalized(p.mul(&an, &bn), p.mul(&ad, &bd))
    }

    fn is_zero(&self, a: &RatFunc) -> bool {
        a.num.is_zero()
    }

    fn inv(&self, a: &RatFunc) -> Option<RatFunc> {
        self.frac(a.den.clone(), a.num.clone())
    }

    fn base_field(&self) -> &Gf {
        self.poly.base()
    }

    fn from_base(&self, c: Fe) -> RatFunc {
        self.from_poly(self.poly.constant(c))
    }

    fn map_base(&self, a: &RatFunc, f: &dyn Fn(Fe) -> Fe) -> RatFunc {
        self.frac(self.poly.map_base(&a.num, f), self.poly.map_base(&a.den, f)).unwrap()
    }

    fn fmt_elem(&self, a: &RatFunc) -> String {
        let n = self.poly.fmt_poly(&a.num);
        if self.poly.is_one(&a.den) {
            return n;
        }
        let d = self.poly.fmt_poly(&a.den);
        let wrap = |s: String| if s.contains(['+', '*']) { format!("({s})") } else { s };
        format!("{}/{}", wrap(n), wrap(d))
    }
}

impl Field for RatFuncField {}
