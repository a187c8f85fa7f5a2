#![no_main]

use libfuzzer_sys::fuzz_target;
use repshift_core::laurent::parse_matrix;

fuzz_target!(|text: &str| {
    if let Ok((m, _)) = parse_matrix(text) {
        assert!(m.rows() > 0);
        // Small matrices also go through both determinant routes.
        if m.is_square() && m.rows() <= 4 {
            if let (Ok(a), Ok(b)) = (m.det(), m.det_cofactor()) {
                assert_eq!(a, b);
            }
        }
    }
});
