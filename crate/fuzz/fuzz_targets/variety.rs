#![no_main]

use hsfield::algebra::{Gf, PolyRing, RatFuncField};
use hsfield::text::{fmt_variety, parse_variety};
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(src) = std::str::from_utf8(data) else { return };
    let k = RatFuncField::new(PolyRing::new(Gf::prime(3).unwrap(), vec!["t".into()]));
    if let Ok(v) = parse_variety(&k, src) {
        let text = fmt_variety(&v).unwrap();
        assert_eq!(parse_variety(&k, &text).unwrap().gens, v.gens, "{text}");
    }
});
