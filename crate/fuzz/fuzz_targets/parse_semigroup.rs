#![no_main]
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    if let Ok(text) = std::str::from_utf8(data) {
        if let Ok((Some(s), _)) = tightspec::invsemi::parse_semigroup_report(text, 12) {
            let _ = s.validate_pseudobasic();
        }
    }
});
