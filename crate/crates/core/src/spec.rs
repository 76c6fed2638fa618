//! Reversible specifications: a permutation of `0..2^n` read as the output
//! column of a truth table.

use std::fmt;

use crate::bits::{check_width, distance};
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ReversibleSpec {
    width: usize,
    perm: Vec<u32>,
}

impl ReversibleSpec {
    /// Validates that `perm` is a bijection on `0..2^width`.
    pub fn new(width: usize, perm: Vec<u32>) -> Result<Self> {
        check_width(width)?;
        let size = 1usize << width;
        if perm.len() != size {
            return Err(Error::PermLength {
                expected: size,
                found: perm.len(),
            });
        }
        let mut seen = vec![false; size];
        for &v in &perm {
            let slot = seen.get_mut(v as usize).ok_or(Error::ValueOutOfRange {
                value: v as u64,
                width,
            })?;
            if *slot {
                return Err(Error::NotAPermutation(v));
            }
            *slot = true;
        }
        Ok(ReversibleSpec { width, perm })
    }

    pub(crate) fn from_perm_unchecked(width: usize, perm: Vec<u32>) -> Self {
        debug_assert_eq!(perm.len(), 1 << width);
        ReversibleSpec { width, perm }
    }

    pub fn identity(width: usize) -> Result<Self> {
        check_width(width)?;
        Ok(ReversibleSpec {
            width,
            perm: (0..1u32 << width).collect(),
        })
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn perm(&self) -> &[u32] {
        &self.perm
    }

    pub fn len(&self) -> usize {
        self.perm.len()
    }

    pub fn is_empty(&self) -> bool {
        self.perm.is_empty()
    }

    /// `f(input)`.
    pub fn apply(&self, input: u32) -> u32 {
        self.perm[input as usize]
    }

    pub fn is_identity(&self) -> bool {
        self.perm.iter().enumerate().all(|(i, &v)| i as u32 == v)
    }

    pub fn inverse(&self) -> Self {
        let mut inv = vec![0u32; self.perm.len()];
        for (i, &v) in self.perm.iter().enumerate() {
            inv[v as usize] = i as u32;
        }
        ReversibleSpec {
            width: self.width,
            perm: inv,
        }
    }

    /// Sum of Hamming distances between each input and its output.
    pub fn complexity(&self) -> u64 {
        complexity_of(&self.perm)
    }
}

pub(crate) fn complexity_of(slots: &[u32]) -> u64 {
    slots
        .iter()
        .enumerate()
        .map(|(i, &v)| distance(i as u32, v) as u64)
        .sum()
}

impl fmt::Display for ReversibleSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, v) in self.perm.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{v}")?;
        }
        f.write_str("}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bits::hamming_distance;
    use crate::BitString;
    use proptest::prelude::*;

    fn sample() -> ReversibleSpec {
        ReversibleSpec::new(3, vec![1, 0, 3, 2, 5, 7, 4, 6]).unwrap()
    }

    #[test]
    fn complexity_values() {
        assert_eq!(sample().complexity(), 8);
        assert_eq!(ReversibleSpec::identity(4).unwrap().complexity(), 0);
        let swap34 = ReversibleSpec::new(3, vec![0, 1, 2, 4, 3, 5, 6, 7]).unwrap();
        assert_eq!(swap34.complexity(), 6);
    }

    #[test]
    fn inverse_of_sample() {
        assert_eq!(sample().inverse().perm(), &[1, 0, 3, 2, 6, 4, 7, 5]);
        let id = ReversibleSpec::identity(3).unwrap();
        assert_eq!(id.inverse(), id);
    }

    #[test]
    fn identity_specs() {
        assert_eq!(ReversibleSpec::identity(1).unwrap().perm(), &[0, 1]);
        assert_eq!(
            ReversibleSpec::identity(3).unwrap().perm(),
            &[0, 1, 2, 3, 4, 5, 6, 7]
        );
        assert_eq!(ReversibleSpec::identity(0), Err(Error::WidthOutOfRange(0)));
        assert_eq!(ReversibleSpec::identity(17), Err(Error::WidthOutOfRange(17)));
    }

    #[test]
    fn rejects_non_permutations() {
        assert_eq!(
            ReversibleSpec::new(2, vec![0, 0, 1, 2]),
            Err(Error::NotAPermutation(0))
        );
        assert_eq!(
            ReversibleSpec::new(2, vec![0, 1, 2]),
            Err(Error::PermLength {
                expected: 4,
                found: 3
            })
        );
        assert!(matches!(
            ReversibleSpec::new(2, vec![0, 1, 2, 4]),
            Err(Error::ValueOutOfRange { value: 4, .. })
        ));
    }

    fn perm_strategy() -> impl Strategy<Value = ReversibleSpec> {
        (1usize..=6).prop_flat_map(|w| {
            Just((0..1u32 << w).collect::<Vec<_>>())
                .prop_shuffle()
                .prop_map(move |p| ReversibleSpec::new(w, p).unwrap())
        })
    }

    proptest! {
        #[test]
        fn inverse_is_involution(spec in perm_strategy()) {
            let inv = spec.inverse();
            for i in 0..spec.len() as u32 {
                prop_assert_eq!(inv.apply(spec.apply(i)), i);
            }
            prop_assert_eq!(inv.inverse(), spec);
        }

        #[test]
        fn complexity_invariant_under_inverse(spec in perm_strategy()) {
            prop_assert_eq!(spec.complexity(), spec.inverse().complexity());
        }

        #[test]
        fn distinct_rows_within_distance_bounds(spec in perm_strategy()) {
            let w = spec.width();
            let rows: Vec<_> = spec
                .perm()
                .iter()
                .map(|&v| BitString::from_int(v as u64, w).unwrap())
                .collect();
            for (i, &p) in rows.iter().enumerate() {
                for &q in &rows[i + 1..] {
                    let d = hamming_distance(p, q).unwrap() as usize;
                    prop_assert!((1..=w).contains(&d));
                }
            }
        }
    }
}
