#![no_main]

use hsfield::text::Record;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(src) = std::str::from_utf8(data) else { return };
    if let Ok(rec) = Record::parse(src) {
        let line = rec.to_string();
        assert_eq!(Record::parse(&line).unwrap(), rec, "{line}");
    }
});
