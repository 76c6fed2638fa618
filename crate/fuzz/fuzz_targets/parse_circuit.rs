#![no_main]

use libfuzzer_sys::fuzz_target;
use revsynth::io::{format_circuit, parse_circuit};

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    if let Ok(c) = parse_circuit(text) {
        assert_eq!(parse_circuit(&format_circuit(&c)).as_ref(), Ok(&c));
    }
});
