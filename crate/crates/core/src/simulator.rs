//! Exhaustive simulation. This is the verification oracle for every other
//! module, so it stays a direct fold over the gate list.

use crate::bits::{check_width, BitString};
use crate::circuit::Circuit;
use crate::embedding::IrreversibleTable;
use crate::error::{Error, Result};
use crate::gate::ToffoliGate;
use crate::spec::ReversibleSpec;

/// Wiring between a truth table and circuit lines. Lines that are neither
/// inputs nor constants are also loaded with 0.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IoBinding {
    /// `input_lines[i]` carries table input `i`.
    pub input_lines: Vec<usize>,
    pub constant_lines: Vec<usize>,
    /// `output_lines[j]` carries table output `j` (bit `j` of a row).
    pub output_lines: Vec<usize>,
}

pub fn apply_gate(gate: &ToffoliGate, x: BitString) -> Result<BitString> {
    gate.apply(x)
}

pub fn apply_circuit(circuit: &Circuit, x: BitString) -> Result<BitString> {
    if x.width() != circuit.width() {
        return Err(Error::WidthMismatch {
            left: circuit.width(),
            right: x.width(),
        });
    }
    Ok(BitString::new_unchecked(
        run_value(circuit.gates(), x.int_value()),
        x.width(),
    ))
}

#[inline]
pub(crate) fn run_value(gates: &[ToffoliGate], x: u32) -> u32 {
    gates.iter().fold(x, |v, g| g.apply_value(v))
}

pub fn realized_spec(circuit: &Circuit) -> Result<ReversibleSpec> {
    check_width(circuit.width())?;
    let perm = (0..1u32 << circuit.width())
        .map(|x| run_value(circuit.gates(), x))
        .collect();
    Ok(ReversibleSpec::from_perm_unchecked(circuit.width(), perm))
}

pub fn realizes(circuit: &Circuit, spec: &ReversibleSpec) -> Result<bool> {
    if circuit.width() != spec.width() {
        return Err(Error::WidthMismatch {
            left: circuit.width(),
            right: spec.width(),
        });
    }
    Ok(spec
        .perm()
        .iter()
        .enumerate()
        .all(|(x, &y)| run_value(circuit.gates(), x as u32) == y))
}

pub fn equivalent(c1: &Circuit, c2: &Circuit) -> Result<bool> {
    if c1.width() != c2.width() {
        return Err(Error::WidthMismatch {
            left: c1.width(),
            right: c2.width(),
        });
    }
    Ok(gates_equivalent(c1.gates(), c2.gates(), c1.width()))
}

/// Exhaustive comparison of two gate lists over `2^width` inputs.
pub(crate) fn gates_equivalent(g1: &[ToffoliGate], g2: &[ToffoliGate], width: usize) -> bool {
    (0..1u32 << width).all(|x| run_value(g1, x) == run_value(g2, x))
}

fn validate_binding(circuit: &Circuit, table: &IrreversibleTable, binding: &IoBinding) -> Result<()> {
    let width = circuit.width();
    if binding.input_lines.len() != table.inputs() {
        return Err(Error::BindingInvalid(format!(
            "{} input lines for a {}-input table",
            binding.input_lines.len(),
            table.inputs()
        )));
    }
    if binding.output_lines.len() != table.outputs() {
        return Err(Error::BindingInvalid(format!(
            "{} output lines for a {}-output table",
            binding.output_lines.len(),
            table.outputs()
        )));
    }
    let mut loaded = 0u32;
    for &l in binding.input_lines.iter().chain(&binding.constant_lines) {
        if l >= width {
            return Err(Error::BindingInvalid(format!("line {l} outside width {width}")));
        }
        if loaded >> l & 1 == 1 {
            return Err(Error::BindingInvalid(format!("line {l} bound twice on input")));
        }
        loaded |= 1 << l;
    }
    let mut read = 0u32;
    for &l in &binding.output_lines {
        if l >= width {
            return Err(Error::BindingInvalid(format!("line {l} outside width {width}")));
        }
        if read >> l & 1 == 1 {
            return Err(Error::BindingInvalid(format!("line {l} bound twice on output")));
        }
        read |= 1 << l;
    }
    Ok(())
}

/// True iff the circuit computes `table` under `binding` with constant
/// lines held at 0.
pub fn realizes_function(
    circuit: &Circuit,
    table: &IrreversibleTable,
    binding: &IoBinding,
) -> Result<bool> {
    validate_binding(circuit, table, binding)?;
    for (x, &expected) in table.rows().iter().enumerate() {
        let loaded = binding
            .input_lines
            .iter()
            .enumerate()
            .fold(0u32, |acc, (i, &l)| acc | (((x as u32) >> i & 1) << l));
        let out = run_value(circuit.gates(), loaded);
        let got = binding
            .output_lines
            .iter()
            .enumerate()
            .fold(0u32, |acc, (j, &l)| acc | ((out >> l & 1) << j));
        if got != expected {
            return Ok(false);
        }
    }
    Ok(true)
}
