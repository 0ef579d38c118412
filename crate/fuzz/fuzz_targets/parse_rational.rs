#![no_main]

use hodge_residue::scalar::{format_rational, parse_rational};
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(s) = std::str::from_utf8(data) else { return };
    if let Ok(r) = parse_rational(s) {
        let back = parse_rational(&format_rational(&r)).expect("formatted fractions parse");
        assert_eq!(back, r);
    }
});
