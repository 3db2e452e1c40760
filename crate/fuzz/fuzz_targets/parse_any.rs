#![no_main]
use libfuzzer_sys::fuzz_target;

// The CLI's auto-detection path: classify the input shape, then hand it to
// the matching parser.
fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    let Ok(kind) = tightspec::io::detect_kind(text) else { return };
    match kind {
        tightspec::io::InputKind::Relation => {
            if let Ok(rel) = tightspec::rel::parse_relation(text, 12) {
                let _ = rel.validate_pseudobasis();
            }
        }
        tightspec::io::InputKind::Topology => {
            let _ = tightspec::fintop::parse_topology_report(text, 12);
        }
        tightspec::io::InputKind::Semigroup => {
            let _ = tightspec::invsemi::parse_semigroup_report(text, 12);
        }
        tightspec::io::InputKind::Groupoid => {
            let _ = tightspec::gpd::parse_groupoid_report(text, 12);
        }
    }
});
