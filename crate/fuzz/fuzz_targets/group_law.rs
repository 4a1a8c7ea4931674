#![no_main]

use hsfield::text::{fmt_group_law, parse_group_law};
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(src) = std::str::from_utf8(data) else { return };
    if let Ok(law) = parse_group_law(src) {
        let text = fmt_group_law(&law);
        let back = parse_group_law(&text).unwrap();
        assert_eq!(back.series(), law.series(), "{text}");
        let _ = law.check_axioms(1);
    }
});
