//! Embedding of irreversible truth tables into reversible specifications.
//!
//! An `n`-input `k`-output table whose most frequent output pattern occurs
//! `m` times needs at least `p = ceil(log2 m)` garbage outputs. The embedding
//! uses `max(n, p + k)` lines; the added lines are constant-0 inputs placed
//! above the original inputs, and the `k` outputs always occupy the top `k`
//! lines.
//!
//! When every output line is an added constant line, output `j` is XORed
//! onto its constant line and all inputs pass through unchanged. Otherwise
//! the lower lines keep the input bits where that stays injective, and
//! collisions and rows with non-zero constants are completed greedily.

use std::collections::HashMap;

use crate::bits::MAX_WIDTH;
use crate::error::{Error, Result};
use crate::simulator::IoBinding;
use crate::spec::ReversibleSpec;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IrreversibleTable {
    inputs: usize,
    outputs: usize,
    rows: Vec<u32>,
}

impl IrreversibleTable {
    /// `rows[x]` is the output pattern for input assignment `x`; output bit
    /// `j` of a row is output `j`.
    pub fn new(inputs: usize, outputs: usize, rows: Vec<u32>) -> Result<Self> {
        if !(1..=MAX_WIDTH).contains(&inputs) {
            return Err(Error::InvalidTable(format!("{inputs} inputs, expected 1..=16")));
        }
        if !(1..=MAX_WIDTH).contains(&outputs) {
            return Err(Error::InvalidTable(format!("{outputs} outputs, expected 1..=16")));
        }
        let expected = 1usize << inputs;
        if rows.len() != expected {
            return Err(Error::RowCountMismatch {
                expected,
                found: rows.len(),
            });
        }
        if let Some((x, &r)) = rows.iter().enumerate().find(|(_, &r)| r >> outputs != 0) {
            return Err(Error::InvalidTable(format!(
                "row {x} has value {r}, wider than {outputs} outputs"
            )));
        }
        Ok(IrreversibleTable {
            inputs,
            outputs,
            rows,
        })
    }

    pub fn inputs(&self) -> usize {
        self.inputs
    }

    pub fn outputs(&self) -> usize {
        self.outputs
    }

    pub fn rows(&self) -> &[u32] {
        &self.rows
    }

    /// Largest number of inputs sharing one output pattern.
    pub fn output_multiplicity(&self) -> usize {
        let mut counts: HashMap<u32, usize> = HashMap::new();
        for &r in &self.rows {
            *counts.entry(r).or_default() += 1;
        }
        counts.into_values().max().unwrap_or(0)
    }
}

/// `ceil(log2 m)`, the fewest garbage outputs that separate `m` inputs
/// sharing an output pattern.
pub fn min_garbage(m: usize) -> usize {
    assert!(m >= 1, "multiplicity is at least 1");
    (usize::BITS - (m - 1).leading_zeros()) as usize
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Construction {
    /// Inputs pass through; each output is XORed onto its constant line.
    XorOntoConstants,
    /// Lower lines keep input bits except for `reassigned` rows whose
    /// preferred garbage pattern collided; don't-care rows filled greedily.
    Greedy { reassigned: usize },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EmbeddingReport {
    pub inputs: usize,
    pub m: usize,
    pub p: usize,
    pub total_lines: usize,
    /// Added input lines, held at 0.
    pub constant_lines: Vec<usize>,
    /// `output_bindings[j]` is the line carrying output `j`.
    pub output_bindings: Vec<usize>,
    /// Lines whose outputs are not part of the function.
    pub garbage_lines: Vec<usize>,
    /// Input lines whose output always equals their input.
    pub preserved_inputs: Vec<usize>,
    pub construction: Construction,
}

impl EmbeddingReport {
    pub fn binding(&self) -> IoBinding {
        IoBinding {
            input_lines: (0..self.inputs).collect(),
            constant_lines: self.constant_lines.clone(),
            output_lines: self.output_bindings.clone(),
        }
    }
}

pub fn embed(table: &IrreversibleTable) -> Result<(ReversibleSpec, EmbeddingReport)> {
    let n = table.inputs();
    let k = table.outputs();
    let m = table.output_multiplicity();
    let p = min_garbage(m);
    let total = n.max(p + k);
    if total > MAX_WIDTH {
        return Err(Error::TooManyLines(total));
    }
    let garbage_width = total - k;
    let size = 1usize << total;

    let (perm, construction) = if garbage_width >= n {
        (xor_onto_constants(table, total, garbage_width), Construction::XorOntoConstants)
    } else {
        greedy(table, total, garbage_width)
    };
    debug_assert_eq!(perm.len(), size);
    let spec = ReversibleSpec::new(total, perm)?;

    let preserved_inputs = (0..n.min(garbage_width))
        .filter(|&l| {
            spec.perm()
                .iter()
                .enumerate()
                .all(|(x, &y)| (x as u32 ^ y) >> l & 1 == 0)
        })
        .collect();
    let report = EmbeddingReport {
        inputs: n,
        m,
        p,
        total_lines: total,
        constant_lines: (n..total).collect(),
        output_bindings: (garbage_width..total).collect(),
        garbage_lines: (0..garbage_width).collect(),
        preserved_inputs,
        construction,
    };
    Ok((spec, report))
}

fn xor_onto_constants(table: &IrreversibleTable, total: usize, garbage_width: usize) -> Vec<u32> {
    let n = table.inputs();
    let input_mask = (1u32 << n) - 1;
    (0..1u32 << total)
        .map(|x| x ^ (table.rows()[(x & input_mask) as usize] << garbage_width))
        .collect()
}

fn greedy(table: &IrreversibleTable, total: usize, garbage_width: usize) -> (Vec<u32>, Construction) {
    let n = table.inputs();
    let size = 1usize << total;
    let low_mask = (1u32 << garbage_width) - 1;
    let mut used = vec![false; size];
    let mut perm = vec![u32::MAX; size];
    let mut reassigned = 0;

    for (x, &f) in table.rows().iter().enumerate() {
        let hi = f << garbage_width;
        let preferred = hi | (x as u32 & low_mask);
        let y = if !used[preferred as usize] {
            preferred
        } else {
            reassigned += 1;
            // At most 2^p <= 2^garbage_width inputs share `f`, so a free
            // garbage pattern always exists.
            (0..=low_mask)
                .map(|g| hi | g)
                .find(|&y| !used[y as usize])
                .expect("multiplicity fits in the garbage lines")
        };
        used[y as usize] = true;
        perm[x] = y;
    }

    // Rows with a non-zero constant input are unconstrained.
    let mut free = (0..size as u32).filter(|&y| !used[y as usize]);
    for slot in perm.iter_mut().skip(1 << n) {
        *slot = free.next().expect("free outputs match free rows");
    }
    (perm, Construction::Greedy { reassigned })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::simulator::realizes_function;
    use crate::synthesis::{synthesize, SynthesisOptions};
    use proptest::prelude::*;

    fn table(n: usize, k: usize, rows: &[u32]) -> IrreversibleTable {
        IrreversibleTable::new(n, k, rows.to_vec()).unwrap()
    }

    #[test]
    fn multiplicities() {
        assert_eq!(table(2, 1, &[0, 0, 0, 1]).output_multiplicity(), 3);
        assert_eq!(table(2, 1, &[0, 1, 1, 0]).output_multiplicity(), 2);
        assert_eq!(table(1, 1, &[1, 0]).output_multiplicity(), 1);
    }

    #[test]
    fn garbage_bound() {
        assert_eq!(min_garbage(1), 0);
        assert_eq!(min_garbage(2), 1);
        assert_eq!(min_garbage(3), 2);
        assert_eq!(min_garbage(4), 2);
        assert_eq!(min_garbage(5), 3);
        assert_eq!(min_garbage(1 << 16), 16);
    }

    #[test]
    fn xor_embedding() {
        let (spec, report) = embed(&table(2, 1, &[0, 1, 1, 0])).unwrap();
        assert_eq!(spec.perm(), &[0, 3, 2, 1]);
        assert_eq!(report.p, 1);
        assert!(report.constant_lines.is_empty());
        assert_eq!(report.output_bindings, vec![1]);
        assert_eq!(report.preserved_inputs, vec![0]);
    }

    #[test]
    fn and_embedding() {
        let (spec, report) = embed(&table(2, 1, &[0, 0, 0, 1])).unwrap();
        assert_eq!(spec.perm(), &[0, 1, 2, 7, 4, 5, 6, 3]);
        assert_eq!(report.m, 3);
        assert_eq!(report.p, 2);
        assert_eq!(report.constant_lines, vec![2]);
        assert_eq!(report.output_bindings, vec![2]);
        assert_eq!(report.preserved_inputs, vec![0, 1]);
        assert_eq!(report.construction, Construction::XorOntoConstants);
    }

    #[test]
    fn full_adder_embedding() {
        let fa = table(3, 2, &[0, 1, 1, 2, 1, 2, 2, 3]);
        let (spec, report) = embed(&fa).unwrap();
        assert_eq!((report.m, report.p, report.total_lines), (3, 2, 4));
        assert_eq!(report.constant_lines, vec![3]);
        assert_eq!(report.output_bindings, vec![2, 3]);
        assert_eq!(report.construction, Construction::Greedy { reassigned: 0 });
        let c = synthesize(&spec, &SynthesisOptions::default()).unwrap();
        assert!(realizes_function(&c, &fa, &report.binding()).unwrap());
    }

    #[test]
    fn table_validation() {
        assert_eq!(
            IrreversibleTable::new(2, 1, vec![0, 1, 1]),
            Err(Error::RowCountMismatch {
                expected: 4,
                found: 3
            })
        );
        assert!(IrreversibleTable::new(1, 1, vec![0, 2]).is_err());
        assert!(IrreversibleTable::new(0, 1, vec![0]).is_err());
    }

    #[test]
    fn too_many_lines() {
        // 16 inputs, constant output: m = 2^16, p = 16, 17 lines.
        let t = IrreversibleTable::new(16, 1, vec![0; 1 << 16]).unwrap();
        assert_eq!(embed(&t), Err(Error::TooManyLines(17)));
    }

    fn table_strategy() -> impl Strategy<Value = IrreversibleTable> {
        (1usize..=4, 1usize..=3).prop_flat_map(|(n, k)| {
            proptest::collection::vec(0u32..(1 << k), 1 << n)
                .prop_map(move |rows| IrreversibleTable::new(n, k, rows).unwrap())
        })
    }

    proptest! {
        #[test]
        fn embedding_is_faithful(t in table_strategy()) {
            let (spec, report) = embed(&t).unwrap();
            let n = t.inputs();
            prop_assert_eq!(report.total_lines, spec.width());
            prop_assert_eq!(report.constant_lines.len(), report.total_lines - n);
            prop_assert_eq!(
                report.total_lines - n,
                (report.p + t.outputs()).saturating_sub(n)
            );
            prop_assert!(report.garbage_lines.len() >= min_garbage(report.m));
            for (x, &f) in t.rows().iter().enumerate() {
                let y = spec.apply(x as u32);
                let got = report
                    .output_bindings
                    .iter()
                    .enumerate()
                    .fold(0u32, |acc, (j, &l)| acc | ((y >> l & 1) << j));
                prop_assert_eq!(got, f);
            }
        }
    }
}
