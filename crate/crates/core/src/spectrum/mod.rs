//! Cycle spectra: per-block closed forms, the predicted families, exact
//! enumeration on explicit graphs, and the verification report tying them
//! together.

mod enumerate;
mod predicted;
mod verify;

use std::collections::BTreeMap;

use serde::Serialize;

use crate::graph::Block;

pub use enumerate::{
    enumerate_cycles_exact, visit_cycles, CapExceeded, FoundCycle, DEFAULT_CYCLE_CAP,
};
pub use predicted::{
    compare_with_plan, predicted_spectrum5, predicted_spectrum6, Family, PredictedLength,
    PredictedSpectrum, PredictionMismatch, TEN_CHORD_TABLE,
};
pub use verify::{verify, verify_graph, Divisibility, VerificationReport, VerifyError, VerifyMode};

/// Multiset of cycle lengths, stored sorted.
#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize)]
pub struct CycleSpectrum {
    lengths: Vec<u64>,
}

impl CycleSpectrum {
    pub fn from_lengths(lengths: impl IntoIterator<Item = u64>) -> Self {
        let mut lengths: Vec<u64> = lengths.into_iter().collect();
        lengths.sort_unstable();
        CycleSpectrum { lengths }
    }

    pub fn lengths(&self) -> &[u64] {
        &self.lengths
    }

    /// Number of cycles counted with multiplicity.
    pub fn len(&self) -> usize {
        self.lengths.len()
    }

    pub fn is_empty(&self) -> bool {
        self.lengths.is_empty()
    }

    pub fn multiplicities(&self) -> BTreeMap<u64, usize> {
        let mut m = BTreeMap::new();
        for &l in &self.lengths {
            *m.entry(l).or_insert(0) += 1;
        }
        m
    }

    pub fn is_distinct(&self) -> bool {
        self.lengths.windows(2).all(|w| w[0] != w[1])
    }

    pub fn all_multiples_of(&self, m: u64) -> bool {
        m == 0 || self.lengths.iter().all(|l| l % m == 0)
    }

    pub fn min(&self) -> Option<u64> {
        self.lengths.first().copied()
    }

    pub fn max(&self) -> Option<u64> {
        self.lengths.last().copied()
    }
}

/// A length realized by more than one cycle, with the blocks it came from
/// (empty when the source graph carries no block structure).
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Collision {
    pub length: u64,
    pub count: usize,
    pub blocks: Vec<usize>,
}

/// Cycle lengths tagged with the plan block that produced them.
#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize)]
pub struct TaggedSpectrum {
    entries: Vec<(u64, Option<usize>)>,
}

impl TaggedSpectrum {
    pub fn from_entries(mut entries: Vec<(u64, Option<usize>)>) -> Self {
        entries.sort_unstable();
        TaggedSpectrum { entries }
    }

    pub fn entries(&self) -> &[(u64, Option<usize>)] {
        &self.entries
    }

    pub fn spectrum(&self) -> CycleSpectrum {
        CycleSpectrum {
            lengths: self.entries.iter().map(|e| e.0).collect(),
        }
    }

    /// Rows of `(length, count, blocks)`, one per distinct length.
    pub fn grouped(&self) -> Vec<Collision> {
        let mut out: Vec<Collision> = Vec::new();
        for &(length, block) in &self.entries {
            match out.last_mut() {
                Some(last) if last.length == length => {
                    last.count += 1;
                    last.blocks.extend(block);
                }
                _ => out.push(Collision {
                    length,
                    count: 1,
                    blocks: block.into_iter().collect(),
                }),
            }
        }
        out
    }

    pub fn collisions(&self) -> Vec<Collision> {
        self.grouped().into_iter().filter(|c| c.count > 1).collect()
    }
}

/// Closed-form cycle lengths of one block.
///
/// A chorded cycle with chords `(a_p, l_p)` sorted by position has exactly
/// `C(r+2, 2)` cycles: the rim, `a_p + l_p` and `L - a_p + l_p` for each
/// chord, and `l_p + l_q + a_q - a_p` for each pair.
pub fn block_spectrum(block: &Block) -> CycleSpectrum {
    CycleSpectrum::from_lengths(block_lengths(block))
}

pub(crate) fn block_lengths(block: &Block) -> Vec<u64> {
    match block {
        Block::Path { .. } => Vec::new(),
        Block::PlainCycle { len } => vec![*len],
        Block::ChordedCycle { cycle_len, chords } => {
            let r = chords.len();
            let mut out = Vec::with_capacity((r + 2) * (r + 1) / 2);
            out.push(*cycle_len);
            for c in chords {
                out.push(c.attach_pos + c.path_len);
                out.push(cycle_len - c.attach_pos + c.path_len);
            }
            for (p, cp) in chords.iter().enumerate() {
                for cq in &chords[p + 1..] {
                    out.push(cp.path_len + cq.path_len + cq.attach_pos - cp.attach_pos);
                }
            }
            out
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::ChordSpec;

    #[test]
    fn one_chord_block() {
        let b = Block::ChordedCycle {
            cycle_len: 20,
            chords: vec![ChordSpec::new(8, 4)],
        };
        assert_eq!(block_spectrum(&b).lengths(), &[12, 16, 20]);
    }

    #[test]
    fn three_chord_block() {
        let b = Block::ChordedCycle {
            cycle_len: 72,
            chords: vec![
                ChordSpec::new(18, 6),
                ChordSpec::new(32, 8),
                ChordSpec::new(46, 10),
            ],
        };
        assert_eq!(
            block_spectrum(&b).lengths(),
            &[24, 28, 32, 36, 40, 44, 48, 56, 60, 72]
        );
    }

    #[test]
    fn chordless_and_path() {
        let b = Block::ChordedCycle {
            cycle_len: 10,
            chords: vec![],
        };
        assert_eq!(
            block_spectrum(&b),
            block_spectrum(&Block::PlainCycle { len: 10 })
        );
        assert!(block_spectrum(&Block::Path { len: 4 }).is_empty());
    }

    #[test]
    fn collisions_group_blocks() {
        let t = TaggedSpectrum::from_entries(vec![(5, Some(1)), (3, Some(2)), (5, Some(0))]);
        assert_eq!(
            t.collisions(),
            vec![Collision {
                length: 5,
                count: 2,
                blocks: vec![0, 1]
            }]
        );
        assert!(!t.spectrum().is_distinct());
        assert_eq!(t.spectrum().multiplicities()[&5], 2);
    }
}
