#![no_main]

use fanoturan::io;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(s) = std::str::from_utf8(data) else { return };
    let direct = io::from_json(s);
    if let Ok(h) = &direct {
        assert_eq!(&io::from_json(&io::to_json(h)).expect("emitted json parses"), h);
    }
    if s.trim_start().starts_with('{') {
        assert_eq!(io::parse_hypergraph(s).ok(), direct.ok());
    }
});
