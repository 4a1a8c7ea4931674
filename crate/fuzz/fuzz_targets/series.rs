#![no_main]

use hsfield::text::{fmt_series, parse_series};
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(src) = std::str::from_utf8(data) else { return };
    if let Ok((ring, s)) = parse_series(src) {
        let text = fmt_series(&ring, &s);
        assert_eq!(parse_series(&text).unwrap(), (ring, s), "{text}");
    }
});
