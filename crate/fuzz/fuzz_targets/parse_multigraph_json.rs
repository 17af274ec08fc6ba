#![no_main]

use fanoturan::PMultigraph;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(s) = std::str::from_utf8(data) else { return };
    if let Ok(g) = PMultigraph::from_json(s) {
        assert_eq!(PMultigraph::from_json(&g.to_json()).expect("emitted json parses"), g);
        if let Some(w) = g.has_three_crossing_pairs() {
            assert!(w.is_valid_in(&g));
        }
    }
});
