use super::*;
use crate::formal_group::FormalGroupLaw;
use crate::hs::canonical_on;

fn ft(p: u64) -> RatFuncField {
    RatFuncField::new(PolyRing::new(Gf::prime(p).unwrap(), vec!["t".into()]))
}

fn ddt(k: &RatFuncField) -> HSDerivation<RatFuncField> {
    HSDerivation::from_components(k.clone(), 1, 1, &[(0, vec![1], k.one())]).unwrap()
}

fn law(name: &str, p: u64, m: u32) -> TruncatedGroupLaw {
    FormalGroupLaw::builtin(name, &Gf::prime(p).unwrap(), 1).unwrap().truncate(m).unwrap()
}

fn elems(k: &RatFuncField, xs: &[&RatFunc]) -> Vec<String> {
    xs.iter().map(|x| k.fmt_elem(x)).collect()
}

#[test]
fn jet_names_follow_index_order() {
    let k = ft(2);
    let d = HSDerivation::trivial(k.clone(), 1, 2).unwrap();
    let jet = JetRing::with_arity(&d, 2).unwrap();
    assert_eq!(jet.jets().names()[..5], ["X1_0_0", "X1_0_1", "X1_1_0", "X1_1_1", "X2_0_0"]);
}

#[test]
fn nabla_of_affine_space_and_square() {
    let k = ft(2);
    let d = HSDerivation::trivial(k.clone(), 1, 1).unwrap();
    let jet = JetRing::with_arity(&d, 1).unwrap();
    let a = nabla_ideal(&AffineVariety::affine_space(jet.base().clone()), &jet).unwrap();
    assert_eq!(a.arity(), 2);
    assert!(a.gens.is_empty());
    let x = jet.base().var(0);
    let v = AffineVariety::new(jet.base().clone(), vec![jet.base().mul(&x, &x)]);
    assert_eq!(nabla_ideal(&v, &jet).unwrap().fmt_gens(), ["X1_0^2"]);
}

#[test]
fn nabla_of_constant_point() {
    let k = ft(3);
    let d = ddt(&k);
    let jet = JetRing::with_arity(&d, 1).unwrap();
    let base = jet.base();
    let c = k.pow(&k.var(0), 3);
    let f = base.sub(&base.var(0), &base.constant(c));
    let nv = nabla_ideal(&AffineVariety::new(base.clone(), vec![f]), &jet).unwrap();
    assert_eq!(nv.fmt_gens(), ["X1_0 + 2*t^3", "X1_1", "X1_2"]);
}

#[test]
fn nabla_point_examples() {
    let k = ft(2);
    let a = k.add(&k.pow(&k.var(0), 2), &k.var(0));
    let b = nabla_point(&ddt(&k), std::slice::from_ref(&a)).unwrap();
    assert_eq!(elems(&k, &[&b[0], &b[1]]), ["t^2 + t", "1"]);
    let triv = HSDerivation::trivial(k.clone(), 2, 1).unwrap();
    let b = nabla_point(&triv, std::slice::from_ref(&a)).unwrap();
    assert_eq!(b.len(), 4);
    assert!(b[1..].iter().all(|x| k.is_zero(x)));
}

#[test]
fn c_n_examples() {
    let f2 = Gf::prime(2).unwrap();
    let c = law("additive", 2, 1).structure_constants().unwrap();
    let out = c_n_map(&c, &f2, &[Fe(1), Fe(1)]).unwrap();
    assert_eq!(out, [Fe(1), Fe(1), Fe(1), Fe(0)]);

    let k = ft(3);
    let c = law("multiplicative", 3, 1).structure_constants().unwrap();
    let b: Vec<RatFunc> = (0..3).map(|i| k.pow(&k.var(0), i)).collect();
    let out = c_n_map(&c, &k, &b).unwrap();
    assert_eq!(k.fmt_elem(&out[3 + 1]), "2*t^2 + t");
    for i in 0..3 {
        assert_eq!(out[i * 3], b[i]);
    }
    assert!(c_n_map(&c, &k, &b[..2]).is_err());
}

fn worked_example(p: u64) -> (JetRing, AffineVariety, AffineVariety) {
    let k = ft(p);
    let jet = JetRing::with_arity(&ddt(&k), 1).unwrap();
    let v = AffineVariety::affine_space(jet.base().clone());
    let j = jet.jets();
    let w = AffineVariety::new(j.clone(), vec![j.sub(&j.var(1), &j.one())]);
    (jet, v, w)
}

#[test]
fn worked_example_is_compatible() {
    let (jet, v, w) = worked_example(2);
    let g = law("additive", 2, 1);
    for mode in [CompatMode::Pointwise(Gf::prime(2).unwrap()), CompatMode::Pointwise(Gf::new(2, 2).unwrap()), CompatMode::Symbolic] {
        let r = cv_compatibility(&g, &jet, &v, &w, &mode, DEFAULT_POINT_BUDGET).unwrap();
        assert!(r.compatible, "{mode:?}");
    }
    let pw = cv_compatibility(&g, &jet, &v, &w, &CompatMode::Pointwise(Gf::new(2, 2).unwrap()), DEFAULT_POINT_BUDGET).unwrap();
    assert_eq!(pw.points_checked, 16);
}

#[test]
fn full_prolongation_is_compatible() {
    let (jet, v, _) = worked_example(3);
    let g = law("multiplicative", 3, 1);
    let w = AffineVariety::affine_space(jet.jets().clone());
    for mode in [CompatMode::Pointwise(Gf::prime(3).unwrap()), CompatMode::Symbolic] {
        assert!(cv_compatibility(&g, &jet, &v, &w, &mode, DEFAULT_POINT_BUDGET).unwrap().compatible);
    }
}

#[test]
fn diagonal_locus_is_incompatible() {
    let k = ft(2);
    let jet = JetRing::with_arity(&HSDerivation::trivial(k, 1, 1).unwrap(), 1).unwrap();
    let v = AffineVariety::affine_space(jet.base().clone());
    let j = jet.jets();
    let w = AffineVariety::new(j.clone(), vec![j.sub(&j.var(1), &j.var(0))]);
    let g = law("additive", 2, 1);
    let pw = cv_compatibility(&g, &jet, &v, &w, &CompatMode::Pointwise(Gf::prime(2).unwrap()), 1 << 10).unwrap();
    assert!(!pw.compatible);
    assert_eq!(pw.witness.as_deref(), Some("(1, 1)"));
    let sy = cv_compatibility(&g, &jet, &v, &w, &CompatMode::Symbolic, 1 << 10).unwrap();
    assert!(!sy.compatible);
}

#[test]
fn pointwise_budget_is_enforced() {
    let (jet, v, w) = worked_example(2);
    let g = law("additive", 2, 1);
    let r = cv_compatibility(&g, &jet, &v, &w, &CompatMode::Pointwise(Gf::prime(2).unwrap()), 3);
    assert!(matches!(r, Err(Error::Budget(_))));
}

#[test]
fn derivation_from_point_examples() {
    let k = ft(2);
    let t = k.var(0);
    let g = law("additive", 2, 1);
    let d = derivation_from_point(&k, &g, None, &[t.clone(), k.one()]).unwrap();
    assert_eq!(d.derivation, ddt(&k));
    assert!(d.iterativity.passed());
    let z = derivation_from_point(&k, &g, None, &[t.clone(), k.zero()]).unwrap();
    assert_eq!(z.derivation, HSDerivation::trivial(k.clone(), 1, 1).unwrap());

    for p in [2, 3] {
        let k = ft(p);
        let t = k.var(0);
        let g = law("multiplicative", p, 1);
        let mut b = vec![t.clone(), k.add(&k.one(), &t)];
        b.resize(p as usize, k.zero());
        let got = derivation_from_point(&k, &g, None, &b).unwrap();
        let want = canonical_on(g.law(), k.clone(), 1).unwrap();
        assert_eq!(got.derivation.images(), want.images());
        assert!(got.iterativity.passed());
    }
}

#[test]
fn derivation_from_point_rejects_foreign_coordinates() {
    let k = RatFuncField::new(PolyRing::new(Gf::prime(2).unwrap(), vec!["s".into(), "t".into()]));
    let g = law("additive", 2, 1);
    assert!(derivation_from_point(&k, &g, None, &[k.var(1), k.var(0)]).is_err());
    assert!(derivation_from_point(&k, &g, None, &[k.one(), k.one()]).is_err());
    let d = derivation_from_point(&k, &g, None, &[k.var(1), k.pow(&k.var(1), 2)]).unwrap();
    assert_eq!(d.derivation.ring().gen_names(), ["t"]);
}

#[test]
fn reconstruction_inverts_nabla_point() {
    let k = ft(3);
    let g = law("multiplicative", 3, 1);
    let d = canonical_on(g.law(), k.clone(), 1).unwrap();
    let b = nabla_point(&d, &[k.var(0)]).unwrap();
    let back = derivation_from_point(&k, &g, None, &b).unwrap();
    assert_eq!(back.derivation, d);
}

#[test]
fn search_examples() {
    let (jet, v, w) = worked_example(2);
    let g = law("additive", 2, 1);
    let r = axiom_instance_check(&g, &jet, &v, &w, None, SearchSpace::DegreeBound(1), Asserted::default(), 1 << 16).unwrap();
    let k = jet.field();
    assert_eq!(k.fmt_elem(&r.witness.unwrap()[0]), "t");
    assert_eq!(r.checked, 3);
    assert_eq!(r.space_size, 4);

    let j = jet.jets();
    let w0 = AffineVariety::new(j.clone(), vec![j.var(1)]);
    let z = AffineVariety::new(j.clone(), vec![j.var(0)]);
    let r = axiom_instance_check(&g, &jet, &v, &w0, Some(&z), SearchSpace::DegreeBound(1), Asserted { irreducible: true, generic_projection: true }, 1 << 16)
        .unwrap();
    assert_eq!(k.fmt_elem(&r.witness.unwrap()[0]), "1");
    assert!(r.irreducible_asserted);

    let triv = JetRing::with_arity(&HSDerivation::trivial(k.clone(), 1, 1).unwrap(), 1).unwrap();
    let r = axiom_instance_check(&g, &triv, &v, &w, None, SearchSpace::BaseField, Asserted::default(), 1 << 16).unwrap();
    assert!(r.exhausted());
    assert_eq!(r.checked, 2);
}

#[test]
fn incompatible_search_is_rejected() {
    let k = ft(2);
    let jet = JetRing::with_arity(&HSDerivation::trivial(k, 1, 1).unwrap(), 1).unwrap();
    let v = AffineVariety::affine_space(jet.base().clone());
    let j = jet.jets();
    let w = AffineVariety::new(j.clone(), vec![j.sub(&j.var(1), &j.var(0))]);
    let r = axiom_instance_check(&law("additive", 2, 1), &jet, &v, &w, None, SearchSpace::BaseField, Asserted::default(), 100);
    assert!(matches!(r, Err(Error::Precondition(_))));
}

#[test]
fn nabla_and_comultiplication_identities() {
    for p in [2u64, 3] {
        let k = ft(p);
        for name in ["additive", "multiplicative"] {
            let g = law(name, p, 1);
            let c = g.structure_constants().unwrap();
            let d = canonical_on(g.law(), k.clone(), 1).unwrap();
            let t = k.var(0);
            let a = vec![k.add(&k.pow(&t, 3), &k.one()), k.inv(&k.add(&t, &k.one())).unwrap()];
            let b = nabla_point(&d, &a).unwrap();
            let jet = JetRing::with_arity(&d, 2).unwrap();
            let x = jet.base().var(0);
            let y = jet.base().var(1);
            let f = jet.base().sub(&jet.base().mul(&x, &jet.base().add(&y, &jet.base().one())), &jet.base().constant(a[0].clone()));
            let f = jet.base().sub(&f, &jet.base().mul(&jet.base().constant(a[0].clone()), &y));
            let v = AffineVariety::new(jet.base().clone(), vec![f]);
            assert!(v.contains(&a).unwrap());
            assert!(nabla_ideal(&v, &jet).unwrap().contains(&b).unwrap());
            assert_eq!(nabla_point(&d, &b).unwrap(), c_n_map(&c, &k, &b).unwrap(), "{name} p={p}");
        }
    }
}
