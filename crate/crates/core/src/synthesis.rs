//! Bit-string swapping sorting networks.
//!
//! The specification's output column is treated as a set of bit strings to
//! be sorted into place (`slots[i] = i`). Two strings at Hamming distance 1
//! can be exchanged by a single Toffoli gate controlled on every other line
//! without disturbing any other string. Strings further apart are brought
//! together by a chain of such exchanges, each lowering the distance by one.
//!
//! Gates are discovered in sorting order. Sorting `f` yields a network for
//! `f^-1`, so output-side synthesis returns the discovered gates reversed;
//! input-side synthesis sorts `f^-1` and keeps discovery order.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use crate::bits::{distance, BitString};
use crate::circuit::Circuit;
use crate::error::{Error, Result};
use crate::gate::ToffoliGate;
use crate::rng::SplitMix64;
use crate::spec::ReversibleSpec;

/// How the next misplaced string is picked.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Method {
    /// The occupant of the lowest-index misplaced slot.
    Bsssn,
    /// The lowest misplaced value, scanning upward and wrapping around
    /// until everything is sorted.
    Variant,
    /// A misplaced value drawn uniformly by a seeded SplitMix64.
    Random { seed: u64 },
}

/// Tie-break among chain candidates at equal distance from the string being
/// placed.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum TieRule {
    #[default]
    LowestValue,
    HighestValue,
    PreferMisplacedThenLowest,
    /// Flip the most significant line on which the two strings differ.
    MostSignificantLine,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum Side {
    #[default]
    Output,
    Input,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SynthesisOptions {
    pub method: Method,
    pub tie_rule: TieRule,
    pub side: Side,
    pub reduce_controls: bool,
    /// Defaults to `4 * n * 2^n` when unset.
    pub max_gates: Option<usize>,
}

impl Default for SynthesisOptions {
    fn default() -> Self {
        SynthesisOptions {
            method: Method::Bsssn,
            tie_rule: TieRule::LowestValue,
            side: Side::Output,
            reduce_controls: false,
            max_gates: None,
        }
    }
}

impl SynthesisOptions {
    pub fn with_method(mut self, method: Method) -> Self {
        self.method = method;
        self
    }

    pub fn with_tie_rule(mut self, tie_rule: TieRule) -> Self {
        self.tie_rule = tie_rule;
        self
    }

    pub fn with_side(mut self, side: Side) -> Self {
        self.side = side;
        self
    }

    pub fn with_reduce_controls(mut self, reduce: bool) -> Self {
        self.reduce_controls = reduce;
        self
    }
}

pub fn default_gate_budget(width: usize) -> usize {
    4 * width * (1usize << width)
}

/// The working set being sorted: `slots[i]` is the value currently at
/// position `i`. Always a permutation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SortState {
    width: usize,
    slots: Vec<u32>,
    position: Vec<u32>,
    misplaced: BTreeSet<u32>,
}

impl SortState {
    pub fn new(spec: &ReversibleSpec) -> Self {
        let slots = spec.perm().to_vec();
        let inverse = spec.inverse();
        let misplaced = (0..slots.len() as u32)
            .filter(|&i| slots[i as usize] != i)
            .collect();
        SortState {
            width: spec.width(),
            slots,
            position: inverse.perm().to_vec(),
            misplaced,
        }
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn slots(&self) -> &[u32] {
        &self.slots
    }

    pub fn is_sorted(&self) -> bool {
        self.misplaced.is_empty()
    }

    /// Whether value `v` sits in its intended place.
    pub fn is_placed(&self, v: u32) -> bool {
        self.slots[v as usize] == v
    }

    pub fn occupant(&self, slot: u32) -> u32 {
        self.slots[slot as usize]
    }

    /// Sum of Hamming distances between each slot and its occupant.
    pub fn complexity(&self) -> u64 {
        crate::spec::complexity_of(&self.slots)
    }

    /// Applies `gate` to every value in the set.
    pub fn apply(&mut self, gate: &ToffoliGate) {
        for (v, w) in firing_pairs(gate) {
            let pv = self.position[v as usize];
            let pw = self.position[w as usize];
            self.slots[pv as usize] = w;
            self.slots[pw as usize] = v;
            self.position[v as usize] = pw;
            self.position[w as usize] = pv;
            for p in [pv, pw] {
                if self.slots[p as usize] == p {
                    self.misplaced.remove(&p);
                } else {
                    self.misplaced.insert(p);
                }
            }
        }
    }

    /// Complexity after applying `gate`, without mutating the state.
    fn complexity_after(&self, gate: &ToffoliGate, current: u64) -> u64 {
        let mut total = current as i64;
        for (v, w) in firing_pairs(gate) {
            let pv = self.position[v as usize];
            let pw = self.position[w as usize];
            total += distance(w, pv) as i64 - distance(v, pv) as i64;
            total += distance(v, pw) as i64 - distance(w, pw) as i64;
        }
        total as u64
    }
}

/// Pairs `(v, v ^ target)` the gate exchanges, with the target bit of `v`
/// clear.
fn firing_pairs(gate: &ToffoliGate) -> impl Iterator<Item = (u32, u32)> {
    let all = (1u32 << gate.width()) - 1;
    let tbit = 1u32 << gate.target();
    let free = all & !gate.control_mask() & !tbit;
    let base = gate.pos_mask();
    // Enumerate every subset of `free` in increasing order.
    let mut sub = Some(0u32);
    std::iter::from_fn(move || {
        let s = sub?;
        sub = if s == free {
            None
        } else {
            Some((s.wrapping_sub(free)) & free)
        };
        let v = base | s;
        Some((v, v | tbit))
    })
}

/// The gate that exchanges `p` and `q` and fixes every other string: target
/// on the differing line, every other line a control with `p`'s polarity.
pub fn swap_gate(p: BitString, q: BitString) -> Result<ToffoliGate> {
    if p.width() != q.width() {
        return Err(Error::WidthMismatch {
            left: p.width(),
            right: q.width(),
        });
    }
    let diff = p.int_value() ^ q.int_value();
    if diff.count_ones() != 1 {
        return Err(Error::NotAdjacent {
            p: p.int_value(),
            q: q.int_value(),
        });
    }
    Ok(swap_gate_raw(p.width(), p.int_value(), q.int_value()))
}

fn swap_gate_raw(width: usize, p: u32, q: u32) -> ToffoliGate {
    let diff = p ^ q;
    let target = diff.trailing_zeros() as usize;
    let others = ((1u32 << width) - 1) & !diff;
    ToffoliGate::from_masks_unchecked(width, target, p & others, !p & others)
}

/// Next link of a chain: a neighbour `c` of `b` (distance 1) that is as
/// close as possible to `a`, which is always `δ(a, b) - 1`. Returns `None`
/// when `δ(a, b) < 2`, where `a` and `b` are swapped directly instead.
pub fn chain_step(a: BitString, b: BitString, state: &SortState, tie_rule: TieRule) -> Option<BitString> {
    if a.width() != b.width() || a.width() != state.width() {
        return None;
    }
    chain_step_raw(a.int_value(), b.int_value(), state, tie_rule)
        .map(|c| BitString::new_unchecked(c, a.width()))
}

fn chain_step_raw(a: u32, b: u32, state: &SortState, tie_rule: TieRule) -> Option<u32> {
    let diff = a ^ b;
    if diff.count_ones() < 2 {
        return None;
    }
    // Flipping any line where a and b differ is optimal.
    let candidates = (0..state.width())
        .filter(|l| diff >> l & 1 == 1)
        .map(|l| b ^ (1 << l));
    let c = match tie_rule {
        TieRule::LowestValue => candidates.min(),
        TieRule::HighestValue => candidates.max(),
        TieRule::PreferMisplacedThenLowest => candidates.min_by_key(|&c| (state.is_placed(c), c)),
        TieRule::MostSignificantLine => candidates.max_by_key(|&c| c ^ b),
    };
    debug_assert!(c.is_some());
    c
}

/// Greedily drops controls from a swap gate while no already placed string
/// (other than those the full gate moves) is disturbed and the post-gate
/// complexity does not increase. Ties go to the lowest line.
pub fn reduce_controls(gate: &ToffoliGate, state: &SortState) -> ToffoliGate {
    let admissible = |cand: &ToffoliGate| {
        firing_pairs(cand).all(|(v, w)| {
            gate.fires(v) || (!state.is_placed(v) && !state.is_placed(w))
        })
    };
    let base = state.complexity();
    let mut current = *gate;
    let mut current_cost = state.complexity_after(&current, base);
    loop {
        let mut best: Option<(ToffoliGate, u64)> = None;
        for c in current.controls() {
            let cand = current.without_control(c.line);
            if !admissible(&cand) {
                continue;
            }
            let cost = state.complexity_after(&cand, base);
            if cost <= current_cost && best.is_none_or(|(_, b)| cost < b) {
                best = Some((cand, cost));
            }
        }
        match best {
            Some((g, cost)) => {
                current = g;
                current_cost = cost;
            }
            None => return current,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StepKind {
    /// Moves the occupant of `a`'s slot one line closer to `a`.
    Chain,
    /// Exchanges `a` with the occupant of its slot, placing it.
    Place,
}

/// One emitted gate with the strings it was derived from.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SortStep {
    pub kind: StepKind,
    /// The string being placed.
    pub a: u32,
    /// Occupant of `a`'s slot before the gate.
    pub b: u32,
    /// Occupant of `a`'s slot after the gate.
    pub c: u32,
    pub gate: ToffoliGate,
}

fn pick_next(
    state: &SortState,
    method: Method,
    cursor: &mut u32,
    rng: &mut Option<SplitMix64>,
) -> Option<u32> {
    match method {
        Method::Bsssn => state.misplaced.first().map(|&slot| state.occupant(slot)),
        Method::Variant => {
            let v = state
                .misplaced
                .range(*cursor..)
                .next()
                .or_else(|| state.misplaced.first())
                .copied()?;
            *cursor = v;
            Some(v)
        }
        Method::Random { .. } => {
            let len = state.misplaced.len();
            if len == 0 {
                return None;
            }
            let rng = rng.as_mut().expect("random method carries a generator");
            let k = rng.below(len as u64) as usize;
            state.misplaced.iter().nth(k).copied()
        }
    }
}

/// Runs the sorting network and records every emitted gate with its
/// provenance, in discovery order.
pub fn sort_network_trace(spec: &ReversibleSpec, options: &SynthesisOptions) -> Result<Vec<SortStep>> {
    let width = spec.width();
    let budget = options.max_gates.unwrap_or_else(|| default_gate_budget(width));
    let mut state = SortState::new(spec);
    let mut steps = Vec::new();
    let mut cursor = 0u32;
    let mut rng = match options.method {
        Method::Random { seed } => Some(SplitMix64::new(seed)),
        _ => None,
    };

    while let Some(a) = pick_next(&state, options.method, &mut cursor, &mut rng) {
        loop {
            let b = state.occupant(a);
            let (kind, full) = match chain_step_raw(a, b, &state, options.tie_rule) {
                Some(c) => (StepKind::Chain, swap_gate_raw(width, b, c)),
                None => (StepKind::Place, swap_gate_raw(width, a, b)),
            };
            let gate = if options.reduce_controls {
                reduce_controls(&full, &state)
            } else {
                full
            };
            if steps.len() == budget {
                return Err(Error::GateBudgetExceeded(budget));
            }
            state.apply(&gate);
            steps.push(SortStep {
                kind,
                a,
                b,
                c: state.occupant(a),
                gate,
            });
            if kind == StepKind::Place {
                break;
            }
        }
    }
    Ok(steps)
}

/// Gates that sort `spec`'s output column to the identity, in discovery
/// order.
pub fn sort_network(spec: &ReversibleSpec, options: &SynthesisOptions) -> Result<Vec<ToffoliGate>> {
    Ok(sort_network_trace(spec, options)?
        .into_iter()
        .map(|s| s.gate)
        .collect())
}

/// A circuit, in application order, that realizes `spec`.
pub fn synthesize(spec: &ReversibleSpec, options: &SynthesisOptions) -> Result<Circuit> {
    let gates = match options.side {
        Side::Output => {
            let mut g = sort_network(spec, options)?;
            g.reverse();
            g
        }
        Side::Input => sort_network(&spec.inverse(), options)?,
    };
    Ok(Circuit::from_parts_unchecked(spec.width(), gates))
}

macro_rules! named_enum {
    ($ty:ty { $($variant:pat => $name:literal),+ $(,)? }) => {
        impl fmt::Display for $ty {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                #[allow(unused_variables)]
                let s = match self { $($variant => $name),+ };
                f.write_str(s)
            }
        }
    };
}

named_enum!(TieRule {
    TieRule::LowestValue => "lowest_value",
    TieRule::HighestValue => "highest_value",
    TieRule::PreferMisplacedThenLowest => "prefer_misplaced_then_lowest",
    TieRule::MostSignificantLine => "most_significant_line",
});

named_enum!(Side {
    Side::Output => "output",
    Side::Input => "input",
});

named_enum!(Method {
    Method::Bsssn => "bsssn",
    Method::Variant => "variant",
    Method::Random { .. } => "random",
});

impl FromStr for TieRule {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "lowest_value" | "lowest" => Ok(TieRule::LowestValue),
            "highest_value" | "highest" => Ok(TieRule::HighestValue),
            "prefer_misplaced_then_lowest" | "misplaced" => Ok(TieRule::PreferMisplacedThenLowest),
            "most_significant_line" | "msb" => Ok(TieRule::MostSignificantLine),
            _ => Err(format!("unknown tie rule `{s}`")),
        }
    }
}

impl FromStr for Side {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "output" => Ok(Side::Output),
            "input" => Ok(Side::Input),
            _ => Err(format!("unknown side `{s}`")),
        }
    }
}
