mod common;

use common::{fields, ratfunc, terms, Terms};
use hsfield::algebra::{Fe, Gf, GeneratedAlgebra, RatFunc, Ring};
use hsfield::formal_group::FormalGroupLaw;
use hsfield::hs::HSDerivation;
use hsfield::prolongation::{
    c_n_map, cv_compatibility, derivation_from_point, nabla_point, AffineVariety, CompatMode, JetRing, DEFAULT_POINT_BUDGET,
};
use hsfield::suite::builtin_laws;
use proptest::prelude::*;

fn fe_vec(raw: &[u32], p: u64) -> Vec<Fe> {
    raw.iter().map(|x| Fe(x % p as u32)).collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn c_n_is_linear_with_counit(
        which in 0usize..20,
        n in 1usize..=2,
        a in any::<u32>(),
        x in prop::collection::vec(any::<u32>(), 512),
        y in prop::collection::vec(any::<u32>(), 512),
    ) {
        let p = if which % 2 == 0 { 2 } else { 3 };
        let laws = builtin_laws(p);
        let law = &laws[(which / 2) % laws.len()];
        let m = 1 + (which as u32 / 10) % 2;
        let g = law.truncate(m).unwrap();
        let c = g.structure_constants().unwrap();
        let f = g.field().clone();
        let pl = c.index_set().len();
        let xs = fe_vec(&x[..n * pl], p);
        let ys = fe_vec(&y[..n * pl], p);
        let a = Fe(a % p as u32);
        let combo: Vec<Fe> = xs.iter().zip(&ys).map(|(u, v)| f.add(&f.scale(a, u), v)).collect();
        let (cx, cy, cc) = (c_n_map(&c, &f, &xs).unwrap(), c_n_map(&c, &f, &ys).unwrap(), c_n_map(&c, &f, &combo).unwrap());
        for r in 0..cc.len() {
            prop_assert_eq!(cc[r], f.add(&f.scale(a, &cx[r]), &cy[r]));
        }
        for t in 0..n {
            for i in 0..pl {
                prop_assert_eq!(cx[(t * pl + i) * pl], xs[t * pl + i]);
                prop_assert_eq!(cx[(t * pl) * pl + i], xs[t * pl + i]);
            }
        }
    }

}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn point_derivation_recovers_its_point(
        p in prop::sample::select(vec![2u64, 3]),
        two in any::<bool>(),
        vals in prop::collection::vec((terms(2, 2, 3), terms(2, 1, 2)), 18),
    ) {
        let k = fields(p, &["s", "t"]);
        let e = if two { 2 } else { 1 };
        let g = FormalGroupLaw::builtin("additive", k.base_field(), e).unwrap().truncate(1).unwrap();
        let pl = g.index_set().len();
        let gens = if two { vec![1, 0] } else { vec![1] };
        let mut b = Vec::new();
        for (t, &s) in gens.iter().enumerate() {
            b.push(k.gen(s));
            for i in 1..pl {
                let (num, den) = &vals[t * pl + i];
                b.push(ratfunc(&k, &restrict_terms(num, &gens), &restrict_terms(den, &gens), 2));
            }
        }
        let pd = derivation_from_point(&k, &g, None, &b).unwrap();
        let d = &pd.derivation;
        let sub = d.ring().clone();
        let a: Vec<_> = (0..sub.num_gens()).map(|s| sub.gen(s)).collect();
        let back = nabla_point(d, &a).unwrap();
        let args: Vec<_> = gens.iter().map(|&s| k.poly_ring().var(s)).collect();
        let lift = |x: &RatFunc| {
            let up = |f| sub.poly_ring().compose(k.poly_ring(), f, &args, |c| k.poly_ring().constant(*c));
            k.frac(up(x.num()), up(x.den())).unwrap()
        };
        let lifted: Vec<RatFunc> = back.iter().map(lift).collect();
        prop_assert_eq!(lifted, b);
        prop_assert_eq!(pd.iterativity.passed(), d.check_iterativity(&g).unwrap().passed());
    }
}

fn restrict_terms(t: &Terms, gens: &[usize]) -> Terms {
    t.iter()
        .map(|(e, c)| ((0..2).map(|s| if gens.contains(&s) { e[s] } else { 0 }).collect(), *c))
        .collect()
}

#[test]
fn pointwise_and_symbolic_agree_on_linear_loci() {
    use rand::{Rng, SeedableRng};
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
    let f2 = Gf::prime(2).unwrap();
    let k = fields(2, &["t"]);
    let mut seen = [0usize; 2];
    for instance in 0..40 {
        let n = 1 + instance % 2;
        let law = if instance % 4 < 2 { "additive" } else { "multiplicative" };
        let g = FormalGroupLaw::builtin(law, &f2, 1).unwrap().truncate(1).unwrap();
        let d = if rng.gen_bool(0.5) {
            HSDerivation::trivial(k.clone(), 1, 1).unwrap()
        } else {
            HSDerivation::from_components(k.clone(), 1, 1, &[(0, vec![1], k.one())]).unwrap()
        };
        let jet = JetRing::with_arity(&d, n).unwrap();
        let v = AffineVariety::affine_space(jet.base().clone());
        let j = jet.jets();
        let gens: Vec<_> = (0..rng.gen_range(1..=2))
            .map(|_| {
                let start = if rng.gen_bool(0.3) { j.one() } else { j.zero() };
                let vars: Vec<usize> = (0..j.nvars()).filter(|_| rng.gen_bool(0.5)).collect();
                vars.into_iter().fold(start, |acc, x| j.add(&acc, &j.var(x)))
            })
            .collect();
        let w = AffineVariety::new(j.clone(), gens);
        let pw = cv_compatibility(&g, &jet, &v, &w, &CompatMode::Pointwise(f2.clone()), DEFAULT_POINT_BUDGET).unwrap();
        let sy = cv_compatibility(&g, &jet, &v, &w, &CompatMode::Symbolic, DEFAULT_POINT_BUDGET).unwrap();
        assert_eq!(pw.compatible, sy.compatible, "instance {instance}: {:?}", w.fmt_gens());
        seen[usize::from(sy.compatible)] += 1;
    }
    assert!(seen[0] > 0 && seen[1] > 0, "{seen:?}");
}

#[test]
fn symbolic_compatibility_implies_pointwise_over_extensions() {
    let k = fields(2, &["t"]);
    let f4 = Gf::new(2, 2).unwrap();
    for law in ["additive", "multiplicative"] {
        let g = FormalGroupLaw::builtin(law, k.base_field(), 1).unwrap().truncate(1).unwrap();
        let jet = JetRing::with_arity(&HSDerivation::trivial(k.clone(), 1, 1).unwrap(), 1).unwrap();
        let v = AffineVariety::affine_space(jet.base().clone());
        let j = jet.jets();
        let x = |i| j.var(i);
        for gens in [vec![x(1)], vec![j.mul(&x(0), &x(1))], vec![j.add(&j.mul(&x(1), &x(1)), &x(1))], vec![j.sub(&x(1), &x(0))]] {
            let w = AffineVariety::new(j.clone(), gens);
            let sy = cv_compatibility(&g, &jet, &v, &w, &CompatMode::Symbolic, DEFAULT_POINT_BUDGET).unwrap();
            let pw = cv_compatibility(&g, &jet, &v, &w, &CompatMode::Pointwise(f4.clone()), DEFAULT_POINT_BUDGET).unwrap();
            if sy.compatible {
                assert!(pw.compatible, "{law}: {:?}", w.fmt_gens());
            }
        }
    }
}
