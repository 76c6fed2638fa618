//! Bit strings over the circuit lines.
//!
//! Line 0 is the least significant bit and is printed as `a`, line 1 as
//! `b`, and so on.

use std::fmt;

use crate::error::{Error, Result};

/// Largest supported line count. Every verification path enumerates all
/// `2^width` patterns.
pub const MAX_WIDTH: usize = 16;

pub(crate) fn check_width(width: usize) -> Result<()> {
    if (1..=MAX_WIDTH).contains(&width) {
        Ok(())
    } else {
        Err(Error::WidthOutOfRange(width))
    }
}

/// Printable name of a line: `a`, `b`, ... `p`.
pub fn line_name(line: usize) -> char {
    debug_assert!(line < 26);
    (b'a' + line as u8) as char
}

/// Inverse of [`line_name`].
pub fn line_index(name: char) -> Option<usize> {
    if name.is_ascii_lowercase() {
        Some((name as u8 - b'a') as usize)
    } else {
        None
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BitString {
    width: u8,
    value: u32,
}

impl BitString {
    pub fn from_int(value: u64, width: usize) -> Result<Self> {
        check_width(width)?;
        if value >> width != 0 {
            return Err(Error::ValueOutOfRange { value, width });
        }
        Ok(BitString {
            width: width as u8,
            value: value as u32,
        })
    }

    /// Unchecked constructor for callers that already hold the invariant.
    pub(crate) fn new_unchecked(value: u32, width: usize) -> Self {
        debug_assert!(width <= MAX_WIDTH && (value as u64) >> width == 0);
        BitString {
            width: width as u8,
            value,
        }
    }

    pub fn width(self) -> usize {
        self.width as usize
    }

    pub fn int_value(self) -> u32 {
        self.value
    }

    pub fn bit(self, line: usize) -> bool {
        (self.value >> line) & 1 == 1
    }

    pub fn with_bit_flipped(self, line: usize) -> Self {
        debug_assert!(line < self.width());
        BitString {
            width: self.width,
            value: self.value ^ (1 << line),
        }
    }
}

/// Number of lines on which `p` and `q` differ.
pub fn hamming_distance(p: BitString, q: BitString) -> Result<u32> {
    if p.width != q.width {
        return Err(Error::WidthMismatch {
            left: p.width(),
            right: q.width(),
        });
    }
    Ok(distance(p.value, q.value))
}

#[inline]
pub(crate) fn distance(p: u32, q: u32) -> u32 {
    (p ^ q).count_ones()
}

impl fmt::Display for BitString {
    /// Most significant line first, matching truth-table column order.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for line in (0..self.width()).rev() {
            f.write_str(if self.bit(line) { "1" } else { "0" })?;
        }
        Ok(())
    }
}
