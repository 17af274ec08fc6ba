#![no_main]

use fanoturan::search::checkpoint::Checkpoint;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    if let Ok(ck) = Checkpoint::decode(data) {
        assert_eq!(ck.encode(), data);
        for t in 0..=56u8 {
            let _ = ck.progress(t);
        }
    }
});
