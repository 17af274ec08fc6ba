#![no_main]

use fanoturan::io;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(s) = std::str::from_utf8(data) else { return };
    if let Ok(h) = io::from_text(s) {
        let again = io::from_text(&io::to_text(&h)).expect("emitted text parses");
        assert_eq!(h, again);
    }
});
