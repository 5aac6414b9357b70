//! Fuzz target: matrix CSV parsing.
//!
//! Arbitrary input must never panic, and a successful parse must uphold the
//! matrix invariants (rectangular, positive dimensions, finite entries).

#![no_main]

use libfuzzer_sys::fuzz_target;
use matdec_cli::parse_matrix_csv;

fuzz_target!(|data: &[u8]| {
    if let Ok(text) = std::str::from_utf8(data) {
        if let Ok(m) = parse_matrix_csv(text) {
            assert!(m.rows() > 0 && m.cols() > 0);
            assert_eq!(m.entries().len(), m.rows() * m.cols());
            assert!(m.entries().iter().all(|v| v.is_finite()));
        }
    }
});
