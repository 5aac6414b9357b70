//! Fuzz target: point-set CSV parsing.

#![no_main]

use libfuzzer_sys::fuzz_target;
use matdec_cli::parse_pointset_csv;

fuzz_target!(|data: &[u8]| {
    if let Ok(text) = std::str::from_utf8(data) {
        if let Ok(set) = parse_pointset_csv(text) {
            assert!(set.dim() > 0 && set.len() > 0);
            assert!(set.points().iter().all(|p| p.len() == set.dim()));
            assert!(set
                .points()
                .iter()
                .all(|p| p.iter().all(|v| v.is_finite())));
        }
    }
});
