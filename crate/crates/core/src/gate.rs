//! Mixed-polarity multiple-control Toffoli gates.

use std::fmt;

use crate::bits::{check_width, line_name, BitString};
use crate::error::{Error, Result};

/// A control literal: a line and the value it must carry for the gate to fire.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Control {
    pub line: usize,
    pub positive: bool,
}

impl Control {
    pub fn pos(line: usize) -> Self {
        Control {
            line,
            positive: true,
        }
    }

    pub fn neg(line: usize) -> Self {
        Control {
            line,
            positive: false,
        }
    }
}

/// Flips `target` when every positive control reads 1 and every negative
/// control reads 0. Controls are stored as bit masks over the lines.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct ToffoliGate {
    width: u8,
    target: u8,
    pos: u32,
    neg: u32,
}

impl ToffoliGate {
    pub fn new(width: usize, target: usize, controls: &[Control]) -> Result<Self> {
        check_width(width)?;
        let mut pos = 0u32;
        let mut neg = 0u32;
        for c in controls {
            if c.line >= width {
                return Err(Error::InvalidGate(format!(
                    "control line {} outside width {width}",
                    c.line
                )));
            }
            let bit = 1u32 << c.line;
            if (pos | neg) & bit != 0 {
                return Err(Error::InvalidGate(format!(
                    "line {} listed twice as a control",
                    line_name(c.line)
                )));
            }
            if c.positive {
                pos |= bit;
            } else {
                neg |= bit;
            }
        }
        Self::from_masks(width, target, pos, neg)
    }

    /// An uncontrolled NOT on `target`.
    pub fn not(width: usize, target: usize) -> Result<Self> {
        Self::from_masks(width, target, 0, 0)
    }

    pub fn from_masks(width: usize, target: usize, pos: u32, neg: u32) -> Result<Self> {
        check_width(width)?;
        if target >= width {
            return Err(Error::InvalidGate(format!(
                "target line {target} outside width {width}"
            )));
        }
        let all = (1u32 << width) - 1;
        if (pos | neg) & !all != 0 {
            return Err(Error::InvalidGate(format!(
                "control outside width {width}"
            )));
        }
        if pos & neg != 0 {
            return Err(Error::InvalidGate(
                "line used as both positive and negative control".into(),
            ));
        }
        if (pos | neg) & (1 << target) != 0 {
            return Err(Error::InvalidGate(format!(
                "target {} is also a control",
                line_name(target)
            )));
        }
        Ok(ToffoliGate {
            width: width as u8,
            target: target as u8,
            pos,
            neg,
        })
    }

    pub(crate) fn from_masks_unchecked(width: usize, target: usize, pos: u32, neg: u32) -> Self {
        debug_assert!(Self::from_masks(width, target, pos, neg).is_ok());
        ToffoliGate {
            width: width as u8,
            target: target as u8,
            pos,
            neg,
        }
    }

    pub fn width(&self) -> usize {
        self.width as usize
    }

    pub fn target(&self) -> usize {
        self.target as usize
    }

    pub fn pos_mask(&self) -> u32 {
        self.pos
    }

    pub fn neg_mask(&self) -> u32 {
        self.neg
    }

    /// Lines used as controls of either polarity.
    pub fn control_mask(&self) -> u32 {
        self.pos | self.neg
    }

    /// Every line the gate reads or writes.
    pub fn support_mask(&self) -> u32 {
        self.pos | self.neg | (1 << self.target)
    }

    pub fn control_count(&self) -> usize {
        (self.pos | self.neg).count_ones() as usize
    }

    /// Controls in ascending line order.
    pub fn controls(&self) -> impl Iterator<Item = Control> + '_ {
        let mask = self.control_mask();
        (0..self.width()).filter(move |l| mask >> l & 1 == 1).map(|l| Control {
            line: l,
            positive: self.pos >> l & 1 == 1,
        })
    }

    pub fn polarity(&self, line: usize) -> Option<bool> {
        if self.pos >> line & 1 == 1 {
            Some(true)
        } else if self.neg >> line & 1 == 1 {
            Some(false)
        } else {
            None
        }
    }

    #[inline]
    pub fn fires(&self, x: u32) -> bool {
        x & self.pos == self.pos && x & self.neg == 0
    }

    #[inline]
    pub fn apply_value(&self, x: u32) -> u32 {
        if self.fires(x) {
            x ^ (1 << self.target)
        } else {
            x
        }
    }

    pub fn apply(&self, x: BitString) -> Result<BitString> {
        if x.width() != self.width() {
            return Err(Error::WidthMismatch {
                left: self.width(),
                right: x.width(),
            });
        }
        Ok(BitString::new_unchecked(self.apply_value(x.int_value()), x.width()))
    }

    /// The same gate with the control on `line` removed (no-op if absent).
    pub fn without_control(&self, line: usize) -> Self {
        let bit = !(1u32 << line);
        ToffoliGate {
            pos: self.pos & bit,
            neg: self.neg & bit,
            ..*self
        }
    }

    /// Same gate placed on a circuit with `width` lines.
    pub fn widened(&self, width: usize) -> Result<Self> {
        Self::from_masks(width, self.target(), self.pos, self.neg)
    }
}

impl fmt::Display for ToffoliGate {
    /// Canonical `T(b',c:a)` form, controls sorted by line index.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("T(")?;
        for (i, c) in self.controls().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{}", line_name(c.line))?;
            if !c.positive {
                f.write_str("'")?;
            }
        }
        write!(f, ":{})", line_name(self.target()))
    }
}
