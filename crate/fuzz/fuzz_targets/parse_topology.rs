#![no_main]
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    if let Ok(text) = std::str::from_utf8(data) {
        if let Ok((Some(space), _)) = tightspec::fintop::parse_topology_report(text, 16) {
            // exercise the downstream consumers of parsed spaces
            let _ = tightspec::fintop::classify(&space);
            let _ = tightspec::fintop::specialization_order(&space);
        }
    }
});
