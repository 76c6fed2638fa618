//! Random-permutation benchmark producing CSV rows.

use std::io::Write;
use std::ops::RangeInclusive;
use std::time::Instant;

use crate::error::{Error, Result};
use crate::optimizer::{optimize, OptimizeConfig};
use crate::rng::SplitMix64;
use crate::simulator::realizes;
use crate::spec::ReversibleSpec;
use crate::synthesis::{synthesize, Method, Side, SynthesisOptions, TieRule};

pub const CSV_HEADER: &str = "n,trial,method,tie,side,gates_raw,gates_opt,cf,runtime_us,seed";

/// Multiplier of the per-trial seed schedule.
pub const SEED_STRIDE: u64 = 0x9E37_79B9_7F4A_7C15;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BenchConfig {
    pub widths: RangeInclusive<usize>,
    pub trials: usize,
    /// The seed inside `Method::Random` is replaced by each trial's seed.
    pub methods: Vec<Method>,
    pub ties: Vec<TieRule>,
    pub sides: Vec<Side>,
    pub base_seed: u64,
    /// Measure wall-clock time; otherwise `runtime_us` is written as 0 so
    /// reruns are byte-identical.
    pub timing: bool,
}

impl Default for BenchConfig {
    fn default() -> Self {
        BenchConfig {
            widths: 3..=6,
            trials: 10,
            methods: vec![Method::Bsssn, Method::Variant, Method::Random { seed: 0 }],
            ties: vec![TieRule::LowestValue, TieRule::HighestValue],
            sides: vec![Side::Output, Side::Input],
            base_seed: 0,
            timing: false,
        }
    }
}

impl BenchConfig {
    pub fn validate(&self) -> Result<()> {
        if self.widths.is_empty() || *self.widths.start() < 1 || *self.widths.end() > 10 {
            return Err(Error::InvalidOptions(format!(
                "bench widths {}..={} must lie within 1..=10",
                self.widths.start(),
                self.widths.end()
            )));
        }
        if self.trials == 0 {
            return Err(Error::InvalidOptions("bench needs at least one trial".into()));
        }
        if self.methods.is_empty() || self.ties.is_empty() || self.sides.is_empty() {
            return Err(Error::InvalidOptions("empty method, tie or side list".into()));
        }
        Ok(())
    }
}

pub fn trial_seed(base_seed: u64, index: u64) -> u64 {
    base_seed ^ index.wrapping_mul(SEED_STRIDE)
}

/// The permutation used for a trial: Fisher-Yates driven by SplitMix64.
pub fn trial_spec(width: usize, seed: u64) -> Result<ReversibleSpec> {
    ReversibleSpec::new(width, SplitMix64::new(seed).permutation(1 << width))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BenchRow {
    pub n: usize,
    pub trial: usize,
    pub method: Method,
    pub tie: TieRule,
    pub side: Side,
    /// `None` when a synthesized or optimized circuit failed verification.
    pub gates: Option<(usize, usize)>,
    pub cf: u64,
    pub runtime_us: u128,
    pub seed: u64,
}

impl BenchRow {
    pub fn to_csv(&self) -> String {
        let prefix = format!("{},{},{},{},{}", self.n, self.trial, self.method, self.tie, self.side);
        match self.gates {
            Some((raw, opt)) => format!(
                "{prefix},{raw},{opt},{},{},{}",
                self.cf, self.runtime_us, self.seed
            ),
            None => format!("{prefix},verify_failed,verify_failed,{},{},{}", self.cf, self.runtime_us, self.seed),
        }
    }
}

/// Synthesizes and optimizes one spec, checking both circuits against it.
pub fn bench_trial(
    spec: &ReversibleSpec,
    trial: usize,
    seed: u64,
    method: Method,
    tie: TieRule,
    side: Side,
    timing: bool,
) -> Result<BenchRow> {
    let method = match method {
        Method::Random { .. } => Method::Random { seed },
        m => m,
    };
    let options = SynthesisOptions::default()
        .with_method(method)
        .with_tie_rule(tie)
        .with_side(side);
    let start = Instant::now();
    let raw = synthesize(spec, &options)?;
    let opt = optimize(&raw, &OptimizeConfig::default());
    let runtime_us = if timing { start.elapsed().as_micros() } else { 0 };
    let ok = realizes(&raw, spec)? && realizes(&opt, spec)?;
    if !ok {
        log::error!("verification failed: n={} trial={trial} {method} {tie} {side}", spec.width());
    }
    Ok(BenchRow {
        n: spec.width(),
        trial,
        method,
        tie,
        side,
        gates: ok.then_some((raw.len(), opt.len())),
        cf: spec.complexity(),
        runtime_us,
        seed,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct BenchSummary {
    pub rows: usize,
    pub failures: usize,
}

/// Runs the sweep and writes the CSV (header included) to `out`.
pub fn run_bench(config: &BenchConfig, out: &mut dyn Write) -> Result<BenchSummary> {
    config.validate()?;
    let io_err = |e: std::io::Error| Error::InvalidOptions(format!("write failed: {e}"));
    writeln!(out, "{CSV_HEADER}").map_err(io_err)?;
    let mut summary = BenchSummary::default();
    let mut index = 0u64;
    for width in config.widths.clone() {
        for trial in 0..config.trials {
            let seed = trial_seed(config.base_seed, index);
            index += 1;
            let spec = trial_spec(width, seed)?;
            for &method in &config.methods {
                for &tie in &config.ties {
                    for &side in &config.sides {
                        let row = bench_trial(&spec, trial, seed, method, tie, side, config.timing)?;
                        if row.gates.is_none() {
                            summary.failures += 1;
                        }
                        summary.rows += 1;
                        writeln!(out, "{}", row.to_csv()).map_err(io_err)?;
                    }
                }
            }
        }
    }
    Ok(summary)
}
