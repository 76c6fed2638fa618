#![no_main]

use libfuzzer_sys::fuzz_target;
use revsynth::io::{format_spec, parse_spec};

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    if let Ok(spec) = parse_spec(text) {
        assert_eq!(parse_spec(&format_spec(&spec)).as_ref(), Ok(&spec));
    }
});
