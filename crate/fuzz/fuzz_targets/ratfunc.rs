#![no_main]

use hsfield::algebra::{Gf, PolyRing, RatFuncField, Ring};
use hsfield::text::parse_ratfunc;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(src) = std::str::from_utf8(data) else { return };
    let k = RatFuncField::new(PolyRing::new(Gf::prime(2).unwrap(), vec!["s".into(), "t".into()]));
    if let Ok(x) = parse_ratfunc(&k, src) {
        let num = k.poly_ring().fmt_poly(x.num());
        let den = k.poly_ring().fmt_poly(x.den());
        assert_eq!(parse_ratfunc(&k, &format!("{num} / {den}")).unwrap(), x);
        let _ = k.fmt_elem(&x);
    }
});
