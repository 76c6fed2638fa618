#![no_main]

use libfuzzer_sys::fuzz_target;
use revsynth::io::parse_template;

fuzz_target!(|data: &[u8]| {
    if let Ok(text) = std::str::from_utf8(data) {
        // Must not panic; accepted templates are identities.
        if let Ok(t) = parse_template(text) {
            assert!(t.validate().unwrap_or(true));
        }
    }
});
