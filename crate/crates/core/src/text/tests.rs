use super::*;
use crate::hs::canonical_group_derivation;

fn ring(p: u64, n: u32, names: &[&str]) -> PolyRing<Gf> {
    PolyRing::new(Gf::new(p, n).unwrap(), names.iter().map(|s| s.to_string()).collect())
}

#[test]
fn polynomial_grammar() {
    let r = ring(3, 1, &["x", "y"]);
    let f = parse_poly(&r, " 2*x^2*y - x + 4 - y*x^2 ").unwrap();
    assert_eq!(r.fmt_poly(&f), "x^2*y + 2*x + 1");
    assert_eq!(r.fmt_poly(&parse_poly(&r, "x*x*x - x^3").unwrap()), "0");
    assert_eq!(r.fmt_poly(&parse_poly(&r, "-1").unwrap()), "2");
    let f4 = ring(2, 2, &["x"]);
    let f = parse_poly(&f4, "g^2*x + g*g + 1").unwrap();
    assert_eq!(f4.fmt_poly(&f), "g^2*x + g^1");
}

#[test]
fn polynomial_errors_carry_positions() {
    let r = ring(2, 1, &["x"]);
    for (src, col) in [("x + z", 5), ("x +", 4), ("x ^", 4), ("2^3", 2), ("x $ 1", 3), ("", 1), ("x x", 3)] {
        match parse_poly(&r, src) {
            Err(Error::Parse { line: 1, col: c, .. }) => assert_eq!(c, col, "{src}"),
            other => panic!("{src}: {other:?}"),
        }
    }
    assert!(parse_poly(&r, "g").is_err());
    assert!(parse_poly(&r, "x^99999999999999999999").is_err());
}

#[test]
fn series_file_round_trip() {
    let text = "p=3 n=1 m=1 e=2\nv1*v2^2 + 2*v1 + 1\n";
    let (r, s) = parse_series(text).unwrap();
    assert_eq!(r.bound(), 3);
    let out = fmt_series(&r, &s);
    assert_eq!(parse_series(&out).unwrap(), (r, s));
    assert!(parse_series("p=3 m=1 e=1\nv1^3\n").is_err());
    assert!(parse_series("p=3 m=1 e=1\nv1\nv1\n").is_err());
    assert!(parse_series("p=4 m=1 e=1\nv1\n").is_err());
}

#[test]
fn derivation_file_round_trip() {
    let text = "# d/dt\ncontext p=2 n=1 m=1 e=1 gens=t\ngen t -> t + v1\n";
    let d = parse_derivation(text).unwrap();
    assert_eq!(d.fmt_images(), ["t -> t + v1"]);
    assert_eq!(parse_derivation(&fmt_derivation(&d)).unwrap(), d);

    let law = FormalGroupLaw::builtin("witt2", &Gf::prime(3).unwrap(), 2).unwrap();
    let d = canonical_group_derivation(&law, 1).unwrap();
    let out = fmt_derivation(&d);
    assert!(out.starts_with("context p=3 n=1 m=1 e=2 gens=t1,t2\n"));
    assert_eq!(parse_derivation(&out).unwrap(), d);
}

#[test]
fn derivation_file_errors() {
    assert!(parse_derivation("context p=2 m=1 e=1 gens=t\n").is_err());
    assert!(parse_derivation("context p=2 m=1 e=1 gens=t\ngen t -> t\ngen t -> t\n").is_err());
    assert!(parse_derivation("context p=2 m=1 e=1 gens=t\ngen s -> t\n").is_err());
    assert!(parse_derivation("context p=2 m=1 e=1 gens=v1\ngen v1 -> v1\n").is_err());
    match parse_derivation("context p=2 m=1 e=1 gens=t\ngen t -> t + q\n") {
        Err(Error::Parse { line: 2, col: 14, .. }) => {}
        other => panic!("{other:?}"),
    }
}

#[test]
fn group_law_file_round_trip() {
    for name in crate::formal_group::BUILTINS {
        let law = FormalGroupLaw::builtin(name, &Gf::prime(3).unwrap(), 1).unwrap();
        let back = parse_group_law(&fmt_group_law(&law)).unwrap();
        assert_eq!(back.series(), law.series());
        assert_eq!(back.name(), law.name());
    }
    let law = parse_group_law("law name=mult p=5 e=1\nF1 = X1 + Y1 + X1*Y1\n").unwrap();
    assert_eq!(law.fmt_law(), ["X1*Y1 + X1 + Y1"]);
    assert!(parse_group_law("law p=5 e=1\n").is_err());
    assert!(parse_group_law("law p=5 e=1\nF2 = X1\n").is_err());
}

#[test]
fn variety_file_round_trip() {
    let k = RatFuncField::new(ring(2, 1, &["t"]));
    let v = parse_variety(&k, "vars X1_0 X1_1\nX1_1 + 1\nt*X1_0^2 + t^2 + X1_0\n").unwrap();
    assert_eq!(v.arity(), 2);
    assert_eq!(v.fmt_gens(), ["X1_1 + 1", "t*X1_0^2 + X1_0 + t^2"]);
    let out = fmt_variety(&v).unwrap();
    assert_eq!(parse_variety(&k, &out).unwrap(), v);
    assert!(parse_variety(&k, "vars t\nt\n").is_err());
    assert!(parse_variety(&k, "vars\n").is_err());
}

#[test]
fn records_round_trip() {
    let r = Record::new("verdict").field("law", "witt2").field("detail", "fails on \"t\" at i=(1)").field("empty", "").field("nl", "a\nb");
    let line = r.to_string();
    assert_eq!(line.lines().count(), 1);
    assert_eq!(Record::parse(&line).unwrap(), r);
    assert_eq!(r.get("law"), Some("witt2"));
    assert_eq!(Record::parse("a b=1 c=\"x y\"").unwrap().get("c"), Some("x y"));
    for bad in ["", "a b", "a b=", "a b=\"x", "a b=1c=2", "a b=\"\\q\""] {
        assert!(Record::parse(bad).is_err(), "{bad}");
    }
}

#[test]
fn rational_elements() {
    let k = RatFuncField::new(ring(2, 1, &["t"]));
    let x = parse_ratfunc(&k, "t^2 + 1 / t").unwrap();
    assert_eq!(k.fmt_elem(&x), "(t^2 + 1)/t");
    assert_eq!(parse_ratfunc(&k, "t").unwrap(), k.var(0));
    assert!(matches!(parse_ratfunc(&k, "1 / 0"), Err(Error::Parse { col: 4, .. })));
    assert!(matches!(parse_ratfunc(&k, "1 / s"), Err(Error::Parse { col: 5, .. })));
    assert!(parse_ratfunc(&k, "1 / t / t").is_err());
}
