#![no_main]

use fanoturan::Certificate;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(s) = std::str::from_utf8(data) else { return };
    if let Ok(c) = Certificate::from_json(s) {
        assert!(c.visited <= c.space);
        assert_eq!(Certificate::from_json(&c.to_json()).expect("emitted json parses"), c);
    }
});
