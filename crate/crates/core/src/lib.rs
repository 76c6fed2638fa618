//! Reversible logic synthesis with multiple-control Toffoli gates.
//!
//! A reversible function on `n` lines is a permutation of `0..2^n`. It is
//! synthesized by sorting the output column with swaps between bit strings
//! at Hamming distance 1, each swap being one Toffoli gate whose controls
//! cover every other line.
//!
//! ```
//! use revsynth::{synthesize, realizes, ReversibleSpec, SynthesisOptions};
//!
//! let spec = ReversibleSpec::new(3, vec![1, 0, 3, 2, 5, 7, 4, 6]).unwrap();
//! let circuit = synthesize(&spec, &SynthesisOptions::default()).unwrap();
//! assert_eq!(circuit.len(), 5);
//! assert!(realizes(&circuit, &spec).unwrap());
//! ```
//!
//! Line 0 is named `a` and is the least significant bit.

pub mod bench;
pub mod bits;
pub mod circuit;
pub mod embedding;
pub mod error;
pub mod gate;
pub mod io;
pub mod optimizer;
pub mod rng;
pub mod simulator;
pub mod spec;
pub mod synthesis;

pub use bits::{hamming_distance, BitString, MAX_WIDTH};
pub use circuit::Circuit;
pub use embedding::{embed, min_garbage, EmbeddingReport, IrreversibleTable};
pub use error::{Error, Result};
pub use gate::{Control, ToffoliGate};
pub use optimizer::{optimize, OptimizeConfig, Template};
pub use rng::SplitMix64;
pub use simulator::{equivalent, realized_spec, realizes, realizes_function, IoBinding};
pub use spec::ReversibleSpec;
pub use synthesis::{synthesize, Method, Side, SynthesisOptions, TieRule};
