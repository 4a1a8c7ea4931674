#![no_main]

use hsfield::algebra::{Gf, PolyRing};
use hsfield::text::parse_poly;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(src) = std::str::from_utf8(data) else { return };
    let ring = PolyRing::new(Gf::new(3, 2).unwrap(), vec!["x".into(), "y".into()]);
    if let Ok(f) = parse_poly(&ring, src) {
        let shown = ring.fmt_poly(&f);
        assert_eq!(parse_poly(&ring, &shown).unwrap(), f, "{shown}");
    }
});
