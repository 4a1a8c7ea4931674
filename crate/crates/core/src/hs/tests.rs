use super::*;
use crate::algebra::gf::{Fe, Gf};
use crate::algebra::poly::PolyRing;
use crate::algebra::ratfunc::{RatFunc, RatFuncField};
use crate::algebra::ring::Field;
use crate::formal_group::FormalGroupLaw;

fn f2t() -> RatFuncField {
    RatFuncField::new(PolyRing::new(Gf::prime(2).unwrap(), vec!["t".into()]))
}

fn d_dt(k: &RatFuncField, m: u32) -> HSDerivation<RatFuncField> {
    let add = FormalGroupLaw::builtin("additive", k.base_field(), 1).unwrap();
    canonical_on(&add, k.clone(), m).unwrap()
}

#[test]
fn apply_examples() {
    let k = f2t();
    let d = d_dt(&k, 1);
    let t = k.gen(0);
    assert_eq!(d.apply(&k.one()).unwrap(), d.target().one());
    let t2 = k.mul(&t, &t);
    assert_eq!(d.apply(&t2).unwrap(), d.target().constant(t2.clone()));
    let inv = k.inv(&t).unwrap();
    let expect = d.target().add(
        &d.target().constant(inv.clone()),
        &d.target().monomial(&[1], k.mul(&inv, &inv)),
    );
    assert_eq!(d.apply(&inv).unwrap(), expect);
}

#[test]
fn binomial_components() {
    let f = Gf::prime(3).unwrap();
    let add = FormalGroupLaw::builtin("additive", &f, 1).unwrap();
    let d = canonical_group_derivation(&add, 2).unwrap();
    let r = d.ring().clone();
    let t = r.var(0);
    for n in 0..12u64 {
        let x = r.pow(&t, n);
        for i in 0..9u32 {
            let expect = if (i as u64) <= n {
                let b = binom(n, i as u64) % 3;
                r.scale(Fe(b as u32), &r.pow(&t, n - i as u64))
            } else {
                r.zero()
            };
            assert_eq!(d.component(&[i], &x).unwrap(), expect, "n={n} i={i}");
        }
    }
}

fn binom(n: u64, k: u64) -> u64 {
    (0..k).fold(1u64, |acc, j| acc * (n - j) / (j + 1))
}

fn edimrem_map() -> HSDerivation<RatFuncField> {
    let k = f2t();
    HSDerivation::from_components(k.clone(), 1, 2, &[(0, vec![1, 1], k.one())]).unwrap()
}

#[test]
fn two_dimensional_map_with_zero_components() {
    let d = edimrem_map();
    let t = d.ring().gen(0);
    assert_eq!(d.component(&[1, 1], &t).unwrap(), d.ring().one());
    assert!(d.ring().is_zero(&d.component(&[1, 0], &t).unwrap()));
    assert!(d.ring().is_zero(&d.component(&[0, 1], &t).unwrap()));
    let comps = d.component_derivations().unwrap();
    let recomposed = HSDerivation::compose_one_dimensional(&comps).unwrap();
    assert_ne!(recomposed.images(), d.images());
    let g = FormalGroupLaw::builtin("additive", &Gf::prime(2).unwrap(), 2).unwrap().truncate(1).unwrap();
    let v = d.check_iterativity(&g).unwrap();
    assert!(!v.passed());
    let f = v.failure.unwrap();
    assert_eq!((f.i, f.j), (vec![1, 0], vec![0, 1]));
}

#[test]
fn composing_additive_components() {
    let f = Gf::prime(2).unwrap();
    let add2 = FormalGroupLaw::builtin("additive", &f, 2).unwrap();
    let ring = PolyRing::new(f.clone(), vec!["t1".into(), "t2".into()]);
    let d = canonical_on(&add2, ring, 2).unwrap();
    let comps = d.component_derivations().unwrap();
    assert_eq!(HSDerivation::compose_one_dimensional(&comps).unwrap(), d);
    assert_eq!(d.truncate(2).unwrap(), d);
}

#[test]
fn noncommuting_components_are_rejected() {
    let f = Gf::prime(2).unwrap();
    let k = RatFuncField::new(PolyRing::new(f, vec!["t".into()]));
    let a = d_dt(&k, 1);
    // t ↦ t + t v: the derivation t d/dt, which does not commute with d/dt.
    let b = HSDerivation::from_components(k.clone(), 1, 1, &[(0, vec![1], k.gen(0))]).unwrap();
    assert!(matches!(HSDerivation::compose_one_dimensional(&[a, b]), Err(crate::Error::Precondition(_))));
}

#[test]
fn hs_homomorphism_check() {
    let k = f2t();
    assert!(HSDerivation::trivial(k.clone(), 1, 1).unwrap().check_hs_homomorphism().passed);
    let target = crate::trunc::TruncRing::new(k.clone(), 1, 1).unwrap();
    let bad = target.constant(k.add(&k.gen(0), &k.one()));
    let d = HSDerivation::with_target(k.clone(), target, vec![bad]).unwrap();
    assert!(!d.check_hs_homomorphism().passed);
    assert!(d_dt(&k, 2).check_hs_homomorphism().passed);
}

#[test]
fn additive_iterativity_and_square_zero() {
    let k = f2t();
    let d = d_dt(&k, 1);
    let g = FormalGroupLaw::builtin("additive", k.base_field(), 1).unwrap().truncate(1).unwrap();
    assert!(d.check_iterativity(&g).unwrap().passed());
    let c = g.structure_constants().unwrap();
    assert!(c.row(1, 1).is_empty());
    let x = k.div(&k.one(), &k.add(&k.gen(0), &k.one())).unwrap();
    let d1 = d.component(&[1], &x).unwrap();
    assert!(k.is_zero(&d.component(&[1], &d1).unwrap()));
}

#[test]
fn semidirect_rules() {
    for p in [2u64, 3] {
        let f = Gf::prime(p).unwrap();
        let law = FormalGroupLaw::builtin("ga_semidirect_gm", &f, 2).unwrap();
        let ring = PolyRing::new(f.clone(), vec!["t1".into(), "t2".into()]);
        let d = canonical_on(&law, ring.clone(), 1).unwrap();
        let g = law.truncate(1).unwrap();
        assert!(d.check_iterativity(&g).unwrap().passed());
        assert!(d.check_iterativity_constants(&g.structure_constants().unwrap()).unwrap().passed());
        let x = ring.add(&ring.pow(&ring.var(0), 2), &ring.mul(&ring.var(0), &ring.pow(&ring.var(1), 2)));
        let comp = |i: &[u32], y: &crate::algebra::MultiPoly<Fe>| d.component(i, y).unwrap();
        let lhs = comp(&[1, 0], &comp(&[0, 1], &x));
        let rhs = ring.add(&comp(&[1, 1], &x), &comp(&[1, 0], &x));
        assert_eq!(lhs, rhs);
        assert_eq!(comp(&[0, 1], &comp(&[1, 0], &x)), comp(&[1, 1], &x));
    }
}

#[test]
fn canonical_first_order_examples() {
    let f = Gf::prime(2).unwrap();
    let mult = FormalGroupLaw::builtin("multiplicative", &f, 1).unwrap();
    let d = canonical_derivation(&mult, 16, 1).unwrap();
    let x = d.ring().gen(0);
    assert_eq!(d.component(&[1], &x).unwrap(), d.ring().add(&d.ring().one(), &x));
    let c = d.ring().from_base(Fe(1));
    assert_eq!(d.apply(&c).unwrap(), d.target().constant(c));
    assert_eq!(d.guaranteed_precision(&[1]), 15);
    assert!(canonical_derivation(&mult, 1, 1).is_err());
}

#[test]
fn canonical_group_derivations() {
    let f = Gf::prime(2).unwrap();
    let w = FormalGroupLaw::builtin("witt2", &f, 2).unwrap();
    let d = canonical_group_derivation(&w, 1).unwrap();
    assert_eq!(d.fmt_images(), vec!["t1 -> t1 + v1", "t2 -> t2 + v2 + t1*v1"]);
    let m = FormalGroupLaw::builtin("multiplicative", &f, 1).unwrap();
    for level in 1..=3 {
        let d = canonical_group_derivation(&m, level).unwrap();
        assert!(d.check_iterativity(&m.truncate(level).unwrap()).unwrap().passed());
    }
}

#[test]
fn constants_of_additive_series() {
    let f = Gf::prime(2).unwrap();
    let add = FormalGroupLaw::builtin("additive", &f, 1).unwrap();
    let d = canonical_derivation(&add, 16, 1).unwrap();
    let rep = constants_basis(&d, 6).unwrap();
    assert!(rep.strict);
    assert_eq!(rep.fmt_basis(d.ring()), vec!["1", "X1^2", "X1^4", "X1^6"]);
    let z = HSDerivation::trivial(d.ring().clone(), 1, 1).unwrap();
    let rz = constants_basis(&z, 3).unwrap();
    assert_eq!(rz.dim(), 4);
    assert!(!rz.strict);
    let d2 = canonical_derivation(&add, 16, 2).unwrap();
    let abs = absolute_constants_basis(&d2, 6).unwrap();
    assert_eq!(abs.fmt_basis(d2.ring()), vec!["1", "X1^4"]);
    assert!(constants_closed_under(&d2, &constants_basis(&d2, 6).unwrap()).unwrap());
}

#[test]
fn wronskian_examples() {
    let k = f2t();
    let d = d_dt(&k, 1);
    let g = FormalGroupLaw::builtin("additive", k.base_field(), 1).unwrap().truncate(1).unwrap();
    let t = k.gen(0);
    let w = wronskian_matrix(&d, &g, &[k.one(), t.clone()]).unwrap();
    assert_eq!(w, vec![vec![k.one(), t.clone()], vec![k.zero(), k.one()]]);
    assert!(!dependence_over_constants(&d, &g, &[k.one(), t.clone()]).unwrap());
    let t2 = k.mul(&t, &t);
    assert!(dependence_over_constants(&d, &g, &[k.one(), t2]).unwrap());
    let three = [k.one(), t.clone(), k.inv(&k.add(&t, &k.one())).unwrap()];
    assert!(dependence_over_constants(&d, &g, &three).unwrap());
    let bad = edimrem_map();
    let g2 = FormalGroupLaw::builtin("additive", k.base_field(), 2).unwrap().truncate(1).unwrap();
    assert!(wronskian_matrix(&bad, &g2, &[t]).is_err());
}

#[test]
fn tensor_examples() {
    let f = Gf::prime(2).unwrap();
    let add = FormalGroupLaw::builtin("additive", &f, 1).unwrap();
    let rt = PolyRing::new(f.clone(), vec!["t".into()]);
    let rs = PolyRing::new(f.clone(), vec!["s".into()]);
    let dt = canonical_on(&add, rt.clone(), 2).unwrap();
    let ds = canonical_on(&add, rs.clone(), 2).unwrap();
    let joint = tensor_derivation(&dt, &ds).unwrap();
    assert_eq!(joint.fmt_images(), vec!["t -> t + v1", "s -> s + v1"]);
    assert!(joint.check_iterativity(&add.truncate(2).unwrap()).unwrap().passed());
    let triv = HSDerivation::trivial(rs.clone(), 2, 1).unwrap();
    assert_eq!(tensor_derivation(&dt, &triv).unwrap().fmt_images(), vec!["t -> t + v1", "s -> s"]);
    let zt = HSDerivation::trivial(rt.clone(), 2, 1).unwrap();
    let zz = tensor_derivation(&zt, &triv).unwrap();
    assert_eq!(zz, HSDerivation::trivial(zz.ring().clone(), 2, 1).unwrap());
    assert!(tensor_derivation(&dt, &dt).is_err());
}

#[test]
fn transport_examples() {
    let f = Gf::prime(3).unwrap();
    let add = FormalGroupLaw::builtin("additive", &f, 1).unwrap();
    let r = PolyRing::new(f.clone(), vec!["t".into()]);
    let d = canonical_on(&add, r.clone(), 1).unwrap();
    let t = r.var(0);
    assert_eq!(transport_derivation(&d, std::slice::from_ref(&t), 0, None).unwrap(), d);
    let shifted = transport_derivation(&d, &[r.add(&t, &r.one())], 0, None).unwrap();
    assert_eq!(shifted, d);
    let scaled = transport_derivation(&d, &[r.scale(Fe(2), &t)], 0, None).unwrap();
    assert_eq!(scaled.fmt_images(), vec!["t -> t + 2*v1"]);
    assert!(transport_derivation(&d, &[r.zero()], 0, None).is_err());
    assert!(transport_derivation(&d, &[r.pow(&t, 3)], 0, None).is_err());

    let f4 = Gf::new(2, 2).unwrap();
    let law = FormalGroupLaw::new("scaled", &f4, 1, {
        let lr = law_ring_f4(&f4);
        vec![lr.add(&lr.add(&lr.var(0), &lr.var(1)), &lr.scale_elem(&f4.generator(), &lr.mul(&lr.var(0), &lr.var(1))))]
    })
    .unwrap();
    let r4 = PolyRing::new(f4.clone(), vec!["t".into()]);
    let d4 = canonical_on(&law, r4.clone(), 1).unwrap();
    let moved = transport_derivation(&d4, &[r4.var(0)], 1, None).unwrap();
    assert!(moved.check_iterativity(&law.frobenius_twist(1).truncate(1).unwrap()).unwrap().passed());
    assert!(!moved.check_iterativity(&law.truncate(1).unwrap()).unwrap().passed());
}

fn law_ring_f4(f4: &Gf) -> PolyRing<Gf> {
    PolyRing::new(f4.clone(), vec!["X1".into(), "Y1".into()])
}

#[test]
fn reconstruction_from_axes() {
    let f = Gf::prime(2).unwrap();
    for name in ["witt2", "ga_semidirect_gm", "additive"] {
        let law = FormalGroupLaw::builtin(name, &f, 2).unwrap();
        for m in 1..=2 {
            let d = canonical_derivation(&law, 8, m).unwrap();
            let comps = d.component_derivations().unwrap();
            let rebuilt = reconstruct_from_components(&comps, &law.truncate(m).unwrap()).unwrap();
            assert_eq!(rebuilt.images(), d.images(), "{name} m={m}");
        }
    }
}

fn f2st() -> RatFuncField {
    RatFuncField::new(PolyRing::new(Gf::prime(2).unwrap(), vec!["s".into(), "t".into()]))
}

#[test]
fn strict_extension_of_a_constant_generator() {
    let k = f2st();
    let add = FormalGroupLaw::builtin("additive", k.base_field(), 1).unwrap();
    let t = k.gen(1);
    let d = HSDerivation::from_components(k.clone(), 2, 1, &[(1, vec![1], k.one())]).unwrap();
    assert!(d.check_iterativity(&add.truncate(2).unwrap()).unwrap().passed());
    let ext = adjoin_pth_root(&d, &add, 0, "a").unwrap();
    assert!(ext.values.iter().all(|(_, v)| k.is_zero(v)));
    assert!(ext.verdict.passed());
    assert_eq!(ext.derivation.fmt_images(), vec!["a -> a", "t -> t + v1"]);
    // Elements already in K: the formula returns D_i(a).
    let a: RatFunc = k.add(&t, &k.gen(0));
    let vals = strict_extension_values(&d, &k.mul(&a, &a)).unwrap();
    let d1 = d.truncate(1).unwrap();
    for (i, v) in vals {
        assert_eq!(v, d1.component(&i, &a).unwrap());
    }
    assert!(matches!(strict_extension_values(&d, &t), Err(crate::Error::Precondition(_))));
}

#[test]
fn chain_checks() {
    let f = Gf::prime(2).unwrap();
    let law = FormalGroupLaw::builtin("multiplicative", &f, 1).unwrap();
    let fam = canonical_family(&law, 16, 3).unwrap();
    assert!(chain_compatibility_check(&fam, &law).unwrap().passed);
    assert!(chain_compatibility_check(&fam[..1], &law).unwrap().passed);
    let mut bad = fam.clone();
    let d2 = &bad[1];
    let x = d2.ring().gen(0);
    let corrupt = d2.target().add(&d2.images()[0], &d2.target().monomial(&[3], x));
    bad[1] = HSDerivation::with_target(d2.ring().clone(), d2.target().clone(), vec![corrupt]).unwrap();
    let v = chain_compatibility_check(&bad, &law).unwrap();
    assert!(!v.passed);
}
