#![no_main]

use libfuzzer_sys::fuzz_target;
use repshift_core::zgroup::parse_presentation;

fuzz_target!(|text: &str| {
    // Anything that parses must print back to an equal presentation.
    if let Ok(p) = parse_presentation(text) {
        let again = parse_presentation(&p.to_string()).expect("printed form parses");
        assert_eq!(again, p);
    }
});
