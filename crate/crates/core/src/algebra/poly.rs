//! Sparse multivariate polynomials over any [`Ring`].

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use super::gf::Fe;
use super::ring::{Field, Ring};
use crate::error::{Error, Result};

/// Exponent vector of a monomial.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct Monomial(pub Vec<u32>);

impl Monomial {
    pub fn one(nvars: usize) -> Self {
        Monomial(vec![0; nvars])
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        let mut e = vec![0; nvars];
        e[i] = 1;
        Monomial(e)
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&x| x == 0)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    /// `other / self`, assuming `self` divides `other`.
    pub fn quotient_of(&self, other: &Monomial) -> Monomial {
        Monomial(other.0.iter().zip(&self.0).map(|(a, b)| a - b).collect())
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| *a.max(b)).collect())
    }

    pub fn coprime(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| *a == 0 || *b == 0)
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, Default)]
pub enum MonomialOrder {
    Lex,
    #[default]
    GrLex,
    GrevLex,
}

impl MonomialOrder {
    pub fn cmp(&self, a: &Monomial, b: &Monomial) -> Ordering {
        match self {
            MonomialOrder::Lex => a.0.cmp(&b.0),
            MonomialOrder::GrLex => a.degree().cmp(&b.degree()).then_with(|| a.0.cmp(&b.0)),
            MonomialOrder::GrevLex => a.degree().cmp(&b.degree()).then_with(|| {
                for (x, y) in a.0.iter().zip(&b.0).rev() {
                    if x != y {
                        return y.cmp(x);
                    }
                }
                Ordering::Equal
            }),
        }
    }
}

/// A polynomial: sparse map from exponent vectors to nonzero coefficients.
#[derive(Clone, PartialEq, Debug)]
pub struct MultiPoly<C> {
    terms: BTreeMap<Monomial, C>,
}

impl<C> MultiPoly<C> {
    pub fn zero() -> Self {
        MultiPoly { terms: BTreeMap::new() }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &C)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, m: &Monomial) -> Option<&C> {
        self.terms.get(m)
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(Monomial::degree).max()
    }

    pub fn degree_in(&self, var: usize) -> u32 {
        self.terms.keys().map(|m| m.0[var]).max().unwrap_or(0)
    }

    pub fn into_terms(self) -> BTreeMap<Monomial, C> {
        self.terms
    }
}

#[derive(Clone)]
pub struct PolyRing<R: Ring> {
    base: R,
    names: Arc<Vec<String>>,
    order: MonomialOrder,
}

impl<R: Ring> fmt::Debug for PolyRing<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}[{}]", self.base, self.names.join(","))
    }
}

impl<R: Ring + PartialEq> PartialEq for PolyRing<R> {
    fn eq(&self, other: &Self) -> bool {
        self.base == other.base && self.names == other.names && self.order == other.order
    }
}

impl<R: Ring> PolyRing<R> {
    pub fn new(base: R, names: Vec<String>) -> Self {
        PolyRing { base, names: Arc::new(names), order: MonomialOrder::default() }
    }

    /// Variables named `prefix1 .. prefixN`.
    pub fn with_prefix(base: R, prefix: &str, nvars: usize) -> Self {
        Self::new(base, (1..=nvars).map(|i| format!("{prefix}{i}")).collect())
    }

    pub fn with_order(mut self, order: MonomialOrder) -> Self {
        self.order = order;
        self
    }

    pub fn base(&self) -> &R {
        &self.base
    }

    pub fn nvars(&self) -> usize {
        self.names.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn order(&self) -> MonomialOrder {
        self.order
    }

    pub fn var_index(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    pub fn from_terms<I>(&self, terms: I) -> MultiPoly<R::Elem>
    where
        I: IntoIterator<Item = (Monomial, R::Elem)>,
    {
        let mut acc: BTreeMap<Monomial, R::Elem> = BTreeMap::new();
        for (m, c) in terms {
            debug_assert_eq!(m.0.len(), self.nvars());
            self.accumulate(&mut acc, m, c);
        }
        MultiPoly { terms: acc }
    }

    fn accumulate(&self, acc: &mut BTreeMap<Monomial, R::Elem>, m: Monomial, c: R::Elem) {
        if self.base.is_zero(&c) {
            return;
        }
        match acc.entry(m) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let s = self.base.add(o.get(), &c);
                if self.base.is_zero(&s) {
                    o.remove();
                } else {
                    *o.get_mut() = s;
                }
            }
        }
    }

    pub fn constant(&self, c: R::Elem) -> MultiPoly<R::Elem> {
        self.from_terms([(Monomial::one(self.nvars()), c)])
    }

    pub fn term(&self, m: Monomial, c: R::Elem) -> MultiPoly<R::Elem> {
        self.from_terms([(m, c)])
    }

    pub fn var(&self, i: usize) -> MultiPoly<R::Elem> {
        self.term(Monomial::var(self.nvars(), i), self.base.one())
    }

    pub fn constant_coeff(&self, f: &MultiPoly<R::Elem>) -> R::Elem {
        f.coeff(&Monomial::one(self.nvars())).cloned().unwrap_or_else(|| self.base.zero())
    }

    /// Constant polynomials (including zero) as base-ring elements.
    pub fn as_constant(&self, f: &MultiPoly<R::Elem>) -> Option<R::Elem> {
        match f.num_terms() {
            0 => Some(self.base.zero()),
            1 => {
                let (m, c) = f.terms().next().unwrap();
                m.is_one().then(|| c.clone())
            }
            _ => None,
        }
    }

    pub fn leading_term<'a>(&self, f: &'a MultiPoly<R::Elem>) -> Option<(&'a Monomial, &'a R::Elem)> {
        f.terms.iter().max_by(|a, b| self.order.cmp(a.0, b.0))
    }

    pub fn leading_coeff(&self, f: &MultiPoly<R::Elem>) -> Option<R::Elem> {
        self.leading_term(f).map(|(_, c)| c.clone())
    }

    pub fn scale_elem(&self, c: &R::Elem, f: &MultiPoly<R::Elem>) -> MultiPoly<R::Elem> {
        self.from_terms(f.terms().map(|(m, x)| (m.clone(), self.base.mul(c, x))))
    }

    pub fn mul_term(&self, f: &MultiPoly<R::Elem>, m: &Monomial, c: &R::Elem) -> MultiPoly<R::Elem> {
        self.from_terms(f.terms().map(|(fm, x)| (fm.mul(m), self.base.mul(c, x))))
    }

    pub fn map_coeffs<S: Ring>(
        &self,
        target: &PolyRing<S>,
        f: &MultiPoly<R::Elem>,
        map: impl Fn(&R::Elem) -> S::Elem,
    ) -> MultiPoly<S::Elem> {
        target.from_terms(f.terms().map(|(m, c)| (m.clone(), map(c))))
    }

    /// Re-index variables into `target`: variable `i` becomes `index_map[i]`.
    pub fn remap_vars(&self, target: &PolyRing<R>, f: &MultiPoly<R::Elem>, index_map: &[usize]) -> MultiPoly<R::Elem> {
        let n = target.nvars();
        target.from_terms(f.terms().map(|(m, c)| {
            let mut e = vec![0; n];
            for (i, &x) in m.0.iter().enumerate() {
                e[index_map[i]] += x;
            }
            (Monomial(e), c.clone())
        }))
    }

    /// Evaluate at a point of the coefficient ring.
    pub fn evaluate(&self, f: &MultiPoly<R::Elem>, point: &[R::Elem]) -> R::Elem {
        self.compose(&self.base, f, point, |c| c.clone())
    }

    /// The image of `f` under the homomorphism into `target` that sends
    /// variable `i` to `images[i]` and maps coefficients through `embed`.
    pub fn compose<T: Ring>(
        &self,
        target: &T,
        f: &MultiPoly<R::Elem>,
        images: &[T::Elem],
        embed: impl Fn(&R::Elem) -> T::Elem,
    ) -> T::Elem {
        assert_eq!(images.len(), self.nvars(), "image count must match variable count");
        let mut powers: Vec<Vec<T::Elem>> = images.iter().map(|x| vec![target.one(), x.clone()]).collect();
        let mut acc = target.zero();
        for (m, c) in f.terms() {
            let mut t = embed(c);
            for (i, &e) in m.0.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                let cache = &mut powers[i];
                while cache.len() <= e as usize {
                    let next = target.mul(cache.last().unwrap(), &images[i]);
                    cache.push(next);
                }
                t = target.mul(&t, &cache[e as usize]);
            }
            acc = target.add(&acc, &t);
        }
        acc
    }

    /// Formal partial derivative.
    pub fn partial(&self, f: &MultiPoly<R::Elem>, var: usize) -> MultiPoly<R::Elem> {
        self.from_terms(f.terms().filter(|(m, _)| m.0[var] > 0).map(|(m, c)| {
            let mut e = m.clone();
            let k = e.0[var];
            e.0[var] -= 1;
            (e, self.base.mul(&self.base.from_int(k as i64), c))
        }))
    }

    pub fn fmt_poly(&self, f: &MultiPoly<R::Elem>) -> String {
        if f.is_zero() {
            return "0".into();
        }
        let mut terms: Vec<_> = f.terms().collect();
        terms.sort_by(|a, b| self.order.cmp(b.0, a.0));
        let parts: Vec<String> = terms
            .into_iter()
            .map(|(m, c)| {
                let mut factors = Vec::new();
                let coeff = self.base.fmt_elem(c);
                if !(self.base.is_one(c) && !m.is_one()) {
                    if coeff.contains(['+', '/', ' ']) {
                        factors.push(format!("({coeff})"));
                    } else {
                        factors.push(coeff);
                    }
                }
                for (i, &e) in m.0.iter().enumerate() {
                    match e {
                        0 => {}
                        1 => factors.push(self.names[i].clone()),
                        _ => factors.push(format!("{}^{}", self.names[i], e)),
                    }
                }
                factors.join("*")
            })
            .collect();
        parts.join(" + ")
    }
}

impl<R: Field> PolyRing<R> {
    /// Multivariate division with respect to the ring's monomial order.
    ///
    /// Returns quotients `q_i` and remainder `r` with `f = sum q_i g_i + r`
    /// and no term of `r` divisible by any leading monomial of the divisors.
    pub fn divmod(
        &self,
        f: &MultiPoly<R::Elem>,
        divisors: &[MultiPoly<R::Elem>],
    ) -> Result<(Vec<MultiPoly<R::Elem>>, MultiPoly<R::Elem>)> {
        if divisors.is_empty() {
            return Err(Error::arg("empty divisor list"));
        }
        let leads: Vec<(Monomial, R::Elem)> = divisors
            .iter()
            .map(|g| {
                self.leading_term(g)
                    .map(|(m, c)| (m.clone(), self.base.inv(c).expect("field coefficient")))
                    .ok_or(Error::DivisionByZero)
            })
            .collect::<Result<_>>()?;
        let mut quots: Vec<BTreeMap<Monomial, R::Elem>> = vec![BTreeMap::new(); divisors.len()];
        let mut rem: BTreeMap<Monomial, R::Elem> = BTreeMap::new();
        let mut work = f.clone();
        while let Some((lm, lc)) = self.leading_term(&work).map(|(m, c)| (m.clone(), c.clone())) {
            let hit = leads.iter().position(|(m, _)| m.divides(&lm));
            match hit {
                Some(k) => {
                    let (m, inv) = &leads[k];
                    let qm = m.quotient_of(&lm);
                    let qc = self.base.mul(&lc, inv);
                    self.accumulate(&mut quots[k], qm.clone(), qc.clone());
                    let sub = self.mul_term(&divisors[k], &qm, &qc);
                    work = self.sub(&work, &sub);
                }
                None => {
                    work.terms.remove(&lm);
                    rem.insert(lm, lc);
                }
            }
        }
        Ok((quots.into_iter().map(|terms| MultiPoly { terms }).collect(), MultiPoly { terms: rem }))
    }

    /// Exact quotient `f / g`, or `None` when `g` does not divide `f`.
    pub fn exact_div(&self, f: &MultiPoly<R::Elem>, g: &MultiPoly<R::Elem>) -> Option<MultiPoly<R::Elem>> {
        let (mut q, r) = self.divmod(f, std::slice::from_ref(g)).ok()?;
        r.is_zero().then(|| q.pop().unwrap())
    }

    pub fn make_monic(&self, f: &MultiPoly<R::Elem>) -> MultiPoly<R::Elem> {
        match self.leading_coeff(f) {
            None => f.clone(),
            Some(c) => self.scale_elem(&self.base.inv(&c).unwrap(), f),
        }
    }
}

impl<R: Ring> Ring for PolyRing<R> {
    type Elem = MultiPoly<R::Elem>;

    fn zero(&self) -> Self::Elem {
        MultiPoly::zero()
    }

    fn one(&self) -> Self::Elem {
        self.constant(self.base.one())
    }

    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        let mut acc = a.terms.clone();
        for (m, c) in b.terms() {
            self.accumulate(&mut acc, m.clone(), c.clone());
        }
        MultiPoly { terms: acc }
    }

    fn neg(&self, a: &Self::Elem) -> Self::Elem {
        MultiPoly { terms: a.terms.iter().map(|(m, c)| (m.clone(), self.base.neg(c))).collect() }
    }

    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        let mut acc = BTreeMap::new();
        for (ma, ca) in a.terms() {
            for (mb, cb) in b.terms() {
                self.accumulate(&mut acc, ma.mul(mb), self.base.mul(ca, cb));
            }
        }
        MultiPoly { terms: acc }
    }

    fn is_zero(&self, a: &Self::Elem) -> bool {
        a.is_zero()
    }

    fn inv(&self, a: &Self::Elem) -> Option<Self::Elem> {
        let c = self.as_constant(a)?;
        self.base.inv(&c).map(|ci| self.constant(ci))
    }

    fn base_field(&self) -> &super::gf::Gf {
        self.base.base_field()
    }

    fn from_base(&self, c: Fe) -> Self::Elem {
        self.constant(self.base.from_base(c))
    }

    fn map_base(&self, a: &Self::Elem, f: &dyn Fn(Fe) -> Fe) -> Self::Elem {
        self.from_terms(a.terms().map(|(m, c)| (m.clone(), self.base.map_base(c, f))))
    }

    fn fmt_elem(&self, a: &Self::Elem) -> String {
        self.fmt_poly(a)
    }

    fn scale(&self, c: Fe, a: &Self::Elem) -> Self::Elem {
        let cc = self.base.from_base(c);
        self.scale_elem(&cc, a)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::gf::Gf;

    fn ring(p: u64, names: &[&str], order: MonomialOrder) -> PolyRing<Gf> {
        PolyRing::new(Gf::prime(p).unwrap(), names.iter().map(|s| s.to_string()).collect()).with_order(order)
    }

    #[test]
    fn divmod_hand_example() {
        // x*y + 1 divided by x under lex with x > y.
        let r = ring(5, &["x", "y"], MonomialOrder::Lex);
        let (x, y) = (r.var(0), r.var(1));
        let f = r.add(&r.mul(&x, &y), &r.one());
        let (q, rem) = r.divmod(&f, std::slice::from_ref(&x)).unwrap();
        assert_eq!(q, vec![y]);
        assert_eq!(rem, r.one());
    }

    #[test]
    fn divmod_trivial_cases() {
        let r = ring(3, &["x", "y"], MonomialOrder::GrLex);
        let g = r.add(&r.var(0), &r.mul(&r.var(1), &r.var(1)));
        let (q, rem) = r.divmod(&g, std::slice::from_ref(&g)).unwrap();
        assert_eq!(q, vec![r.one()]);
        assert!(rem.is_zero());
        let (q, rem) = r.divmod(&r.zero(), &[g.clone(), r.var(0)]).unwrap();
        assert!(q.iter().all(MultiPoly::is_zero) && rem.is_zero());
        assert!(r.divmod(&g, &[]).is_err());
    }

    #[test]
    fn grevlex_breaks_ties_from_the_last_variable() {
        let o = MonomialOrder::GrevLex;
        // x*z < y^2 in grevlex (x > y > z).
        assert_eq!(o.cmp(&Monomial(vec![1, 0, 1]), &Monomial(vec![0, 2, 0])), Ordering::Less);
        assert_eq!(MonomialOrder::GrLex.cmp(&Monomial(vec![1, 0, 1]), &Monomial(vec![0, 2, 0])), Ordering::Greater);
    }

    #[test]
    fn compose_and_partials() {
        let r = ring(2, &["x", "y"], MonomialOrder::GrLex);
        let (x, y) = (r.var(0), r.var(1));
        let xpy = r.add(&x, &y);
        // (x+y)^2 = x^2 + y^2 over F_2
        let sq = r.compose(&r, &r.mul(&x, &x), &[xpy.clone(), y.clone()], |c| r.constant(*c));
        assert_eq!(sq, r.add(&r.mul(&x, &x), &r.mul(&y, &y)));
        assert!(r.partial(&sq, 0).is_zero());
        assert_eq!(r.fmt_poly(&sq), "x^2 + y^2");
    }
}
