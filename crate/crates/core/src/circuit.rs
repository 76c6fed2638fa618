use std::fmt;

use crate::bits::check_width;
use crate::error::{Error, Result};
use crate::gate::ToffoliGate;

/// A gate cascade stored in application order: `gates[0]` acts first.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Circuit {
    width: usize,
    gates: Vec<ToffoliGate>,
}

impl Circuit {
    pub fn new(width: usize, gates: Vec<ToffoliGate>) -> Result<Self> {
        check_width(width)?;
        if let Some(g) = gates.iter().find(|g| g.width() != width) {
            return Err(Error::WidthMismatch {
                left: width,
                right: g.width(),
            });
        }
        Ok(Circuit { width, gates })
    }

    pub fn empty(width: usize) -> Result<Self> {
        Self::new(width, Vec::new())
    }

    pub(crate) fn from_parts_unchecked(width: usize, gates: Vec<ToffoliGate>) -> Self {
        debug_assert!(gates.iter().all(|g| g.width() == width));
        Circuit { width, gates }
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn gates(&self) -> &[ToffoliGate] {
        &self.gates
    }

    pub fn into_gates(self) -> Vec<ToffoliGate> {
        self.gates
    }

    pub fn len(&self) -> usize {
        self.gates.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gates.is_empty()
    }

    pub fn push(&mut self, gate: ToffoliGate) -> Result<()> {
        if gate.width() != self.width {
            return Err(Error::WidthMismatch {
                left: self.width,
                right: gate.width(),
            });
        }
        self.gates.push(gate);
        Ok(())
    }

    /// The gate sequence in reverse. Every gate is self-inverse, so this is
    /// the inverse circuit.
    pub fn reversed(&self) -> Circuit {
        Circuit {
            width: self.width,
            gates: self.gates.iter().rev().copied().collect(),
        }
    }

    pub fn total_controls(&self) -> usize {
        self.gates.iter().map(ToffoliGate::control_count).sum()
    }

    /// `hist[k]` = number of gates with exactly `k` controls.
    pub fn control_histogram(&self) -> Vec<usize> {
        let mut hist = vec![0; self.width];
        for g in &self.gates {
            hist[g.control_count()] += 1;
        }
        hist
    }
}

impl fmt::Display for Circuit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, g) in self.gates.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{g}")?;
        }
        Ok(())
    }
}
