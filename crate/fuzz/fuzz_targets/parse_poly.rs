#![no_main]

use libfuzzer_sys::fuzz_target;
use repshift_core::laurent::{format_poly, parse_poly};

fuzz_target!(|text: &str| {
    if let Ok((p, var)) = parse_poly(text) {
        let printed = format_poly(&p, var.unwrap_or('t'));
        assert_eq!(parse_poly(&printed).expect("printed form parses").0, p);
    }
});
