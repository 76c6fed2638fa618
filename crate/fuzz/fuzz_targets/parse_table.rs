#![no_main]

use libfuzzer_sys::fuzz_target;
use revsynth::embed;
use revsynth::io::{format_table, parse_table};

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    if let Ok(table) = parse_table(text) {
        assert_eq!(parse_table(&format_table(&table)).as_ref(), Ok(&table));
        // Small tables only; embedding is exponential in the line count.
        if table.inputs() + table.outputs() <= 10 {
            let _ = embed(&table);
        }
    }
});
