#![no_main]

use hsfield::text::{fmt_derivation, parse_derivation};
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(src) = std::str::from_utf8(data) else { return };
    if let Ok(d) = parse_derivation(src) {
        let text = fmt_derivation(&d);
        assert_eq!(parse_derivation(&text).unwrap(), d, "{text}");
    }
});
