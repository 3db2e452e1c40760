#![no_main]
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    if let Ok(text) = std::str::from_utf8(data) {
        if let Ok((Some(g), _)) = tightspec::gpd::parse_groupoid_report(text, 12) {
            let _ = g.units();
            let _ = tightspec::gpd::groupoid_dot(&g);
        }
    }
});
