mod common;

use common::*;
use hsfield::algebra::{Gf, Ring};
use hsfield::trunc::TruncRing;
use proptest::prelude::*;

fn configs() -> Vec<TruncRing<Gf>> {
    let mut out = Vec::new();
    for p in [2, 3] {
        for e in [1, 2] {
            for m in [1, 2] {
                out.push(TruncRing::new(Gf::prime(p).unwrap(), m, e).unwrap());
            }
        }
    }
    out
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn ring_axioms(a in terms(2, 8, 4), b in terms(2, 8, 4), c in terms(2, 8, 4)) {
        for r in configs() {
            let e = r.arity();
            let cut = |t: &Terms| -> Terms { t.iter().map(|(x, c)| (x[..e].to_vec(), *c)).collect() };
            let (a, b, c) = (series(&r, &cut(&a)), series(&r, &cut(&b)), series(&r, &cut(&c)));
            prop_assert_eq!(r.mul(&r.mul(&a, &b), &c), r.mul(&a, &r.mul(&b, &c)));
            prop_assert_eq!(r.add(&r.add(&a, &b), &c), r.add(&a, &r.add(&b, &c)));
            prop_assert_eq!(r.mul(&a, &r.add(&b, &c)), r.add(&r.mul(&a, &b), &r.mul(&a, &c)));
            prop_assert_eq!(r.mul(&a, &b), r.mul(&b, &a));
            prop_assert_eq!(r.add(&a, &b), r.add(&b, &a));
            prop_assert!(r.is_zero(&r.sub(&a, &a)));
            prop_assert_eq!(r.mul(&a, &r.one()), a);
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn units_invert(a in terms(2, 8, 5), c0 in 1u32..5) {
        for r in configs() {
            let e = r.arity();
            let t: Terms = a.iter().map(|(x, c)| (x[..e].to_vec(), *c)).collect();
            let x = series(&r, &t);
            let f = r.coeff_ring();
            let c0 = f.from_int(i64::from(c0 % f.p() as u32).max(1));
            let x = r.add(&r.sub(&x, &r.constant(r.constant_term(&x))), &r.constant(c0));
            let inv = r.invert(&x).unwrap();
            prop_assert_eq!(r.ts_mul(&x, &inv).unwrap(), r.one());
            let nonunit = r.sub(&x, &r.constant(c0));
            prop_assert!(r.invert(&nonunit).is_err());
        }
    }

    #[test]
    fn truncation_is_a_homomorphism(a in terms(2, 8, 5), b in terms(2, 8, 5)) {
        for p in [2, 3] {
            for e in [1, 2] {
                let big = TruncRing::new(Gf::prime(p).unwrap(), 2, e).unwrap();
                let small = big.at_level(1).unwrap();
                let cut = |t: &Terms| -> Terms { t.iter().map(|(x, c)| (x[..e].to_vec(), *c)).collect() };
                let (a, b) = (series(&big, &cut(&a)), series(&big, &cut(&b)));
                let tr = |x: &_| big.truncate_into(&small, x).unwrap();
                let (ab, sum) = (big.mul(&a, &b), big.add(&a, &b));
                prop_assert_eq!(tr(&ab), small.mul(&tr(&a), &tr(&b)));
                prop_assert_eq!(tr(&sum), small.add(&tr(&a), &tr(&b)));
            }
        }
    }

    #[test]
    fn substitution_is_associative(f in terms(2, 4, 4), g in prop::collection::vec(terms(2, 4, 3), 2), h in prop::collection::vec(terms(1, 4, 3), 2)) {
        let field = Gf::prime(3).unwrap();
        let a = TruncRing::new(field.clone(), 1, 2).unwrap();
        let b = TruncRing::new(field.clone(), 1, 2).unwrap();
        let c = TruncRing::with_bound(field.clone(), vec!["u".into(), "s".into()], 3).unwrap();
        let nil = |r: &TruncRing<Gf>, t: &Terms| {
            let x = series(r, t);
            r.sub(&x, &r.constant(r.constant_term(&x)))
        };
        let f = series(&a, &f);
        let gs: Vec<_> = g.iter().map(|t| nil(&b, t)).collect();
        let hs: Vec<_> = h.iter().map(|t| nil(&c, &t.iter().map(|(x, k)| (vec![x[0], x[0] % 2], *k)).collect())).collect();
        let fg = b.substitute(&a, &f, &gs).unwrap();
        let left = c.substitute(&b, &fg, &hs).unwrap();
        let gh: Vec<_> = gs.iter().map(|g| c.substitute(&b, g, &hs).unwrap()).collect();
        let right = c.substitute(&a, &f, &gh).unwrap();
        prop_assert_eq!(left, right);
    }
}
