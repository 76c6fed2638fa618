#![no_main]

use libfuzzer_sys::fuzz_target;
use revsynth::io::{format_circuit, parse_circuit};
use revsynth::{optimize, realized_spec, Circuit, OptimizeConfig, ToffoliGate};

// Builds a circuit from raw bytes (4 per gate), then checks printing,
// parsing and optimization against simulation.
fuzz_target!(|data: &[u8]| {
    let Some((&w, rest)) = data.split_first() else { return };
    let width = (w as usize % 6) + 1;
    let all = (1u32 << width) - 1;
    let gates: Vec<ToffoliGate> = rest
        .chunks_exact(4)
        .take(32)
        .map(|b| {
            let target = b[0] as usize % width;
            let free = all & !(1 << target);
            let pos = b[1] as u32 & free;
            let neg = b[2] as u32 & free & !pos & (b[3] as u32);
            ToffoliGate::from_masks(width, target, pos, neg).unwrap()
        })
        .collect();
    let c = Circuit::new(width, gates).unwrap();
    let parsed = parse_circuit(&format_circuit(&c)).unwrap();
    assert_eq!(parsed, c);
    let opt = optimize(&c, &OptimizeConfig::default());
    assert!(opt.len() <= c.len());
    assert_eq!(realized_spec(&opt).unwrap(), realized_spec(&c).unwrap());
});
