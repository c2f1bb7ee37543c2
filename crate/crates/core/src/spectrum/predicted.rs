use std::collections::BTreeMap;

use num_bigint::BigInt;
use serde::Serialize;

use super::{block_lengths, CycleSpectrum, TaggedSpectrum};
use crate::constructions::theorem5::{self, Params5};
use crate::constructions::theorem6::{self, Layout6, Params6};
use crate::constructions::{BuildError, Violation};
use crate::graph::ConstructionPlan;
use crate::Rational;

/// Closed-form cycle lengths of one ten-chord block: `a t + c i + b` for
/// each `(a, c, b)`.
pub const TEN_CHORD_TABLE: [(u64, u64, i64); 66] = [
    (32, 1, -60),
    (33, 1, 4),
    (34, 1, 207),
    (35, 1, -3),
    (36, 1, -2),
    (37, 1, -3),
    (38, 1, -3),
    (39, 1, -8),
    (40, 1, 0),
    (41, 1, 0),
    (42, 1, 739),
    (43, 2, -54),
    (43, 2, 213),
    (45, 2, 206),
    (45, 2, -3),
    (47, 2, -3),
    (47, 2, -4),
    (49, 2, -9),
    (49, 2, -6),
    (51, 2, 2),
    (51, 2, 741),
    (53, 3, 155),
    (54, 3, 212),
    (55, 3, 206),
    (56, 3, -4),
    (57, 3, -4),
    (58, 3, -10),
    (59, 3, -7),
    (60, 3, -4),
    (61, 3, 743),
    (64, 4, 154),
    (64, 4, 212),
    (66, 4, 205),
    (66, 4, -5),
    (68, 4, -10),
    (68, 4, -8),
    (70, 4, -5),
    (70, 4, 737),
    (74, 5, 154),
    (75, 5, 211),
    (76, 5, 204),
    (77, 5, -11),
    (78, 5, -8),
    (79, 5, -6),
    (80, 5, 736),
    (85, 6, 153),
    (85, 6, 210),
    (87, 6, 198),
    (87, 6, -9),
    (89, 6, -6),
    (89, 6, 735),
    (95, 7, 152),
    (96, 7, 204),
    (97, 7, 200),
    (98, 7, -7),
    (99, 7, 735),
    (106, 8, 146),
    (106, 8, 206),
    (108, 8, 202),
    (108, 8, 734),
    (116, 9, 148),
    (117, 9, 208),
    (118, 9, 943),
    (127, 10, 150),
    (127, 10, 949),
    (137, 11, 891),
];

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum Family {
    /// Single cycle of the given length.
    Plain,
    /// Three-cycle one-chord block of the even-`m` construction.
    OneChord,
    /// `k`-chord block of the even-`m` construction.
    KChord,
    /// First one-chord family of the `m = 1` construction.
    FamilyA,
    /// Second one-chord family of the `m = 1` construction.
    FamilyB,
    /// Ten-chord block of the `m = 1` construction.
    TenChord,
}

/// One length from a closed-form family.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct PredictedLength {
    pub length: u64,
    pub family: Family,
    /// Block index `i` within its family.
    pub index: u64,
    /// Which formula of the family produced the length.
    pub row: usize,
    /// Plan block realizing it; `None` if the builder cannot realize it.
    pub block: Option<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize)]
pub struct PredictedSpectrum {
    entries: Vec<PredictedLength>,
}

impl PredictedSpectrum {
    fn new(mut entries: Vec<PredictedLength>) -> Self {
        entries.sort_unstable();
        PredictedSpectrum { entries }
    }

    pub fn entries(&self) -> &[PredictedLength] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn spectrum(&self) -> CycleSpectrum {
        CycleSpectrum::from_lengths(self.entries.iter().map(|e| e.length))
    }

    pub fn tagged(&self) -> TaggedSpectrum {
        TaggedSpectrum::from_entries(self.entries.iter().map(|e| (e.length, e.block)).collect())
    }

    /// The lengths that some plan block realizes.
    pub fn realizable(&self) -> CycleSpectrum {
        CycleSpectrum::from_lengths(
            self.entries
                .iter()
                .filter(|e| e.block.is_some())
                .map(|e| e.length),
        )
    }

    pub fn unrealizable(&self) -> Vec<PredictedLength> {
        self.entries
            .iter()
            .filter(|e| e.block.is_none())
            .copied()
            .collect()
    }
}

fn fits(v: i128) -> Result<u64, BuildError> {
    u64::try_from(v).map_err(|_| BuildError::Overflow(Rational::from_integer(BigInt::from(v))))
}

/// Every length listed by the even-`m` families, tagged with the block of
/// [`theorem5::build_theorem5`] that should realize it.
pub fn predicted_spectrum5(p: &Params5) -> Result<PredictedSpectrum, BuildError> {
    let violations = theorem5::validate5(p);
    if !violations.is_empty() {
        return Err(BuildError::Invalid(violations));
    }
    let offset = theorem5::path_offset(p)?;
    let (m, k, s1, s2, t) = (
        p.m as i128,
        p.k as i128,
        p.s1 as i128,
        p.s2 as i128,
        p.t as i128,
    );
    let mut out = Vec::with_capacity(p.cycle_count() as usize);
    let mut push =
        |length: i128, family, index: i128, row, block: usize| -> Result<(), BuildError> {
            out.push(PredictedLength {
                length: fits(length)?,
                family,
                index: index as u64,
                row,
                block: Some(block),
            });
            Ok(())
        };
    for i in 1..=s1 * t {
        push(m * i, Family::Plain, i, 0, offset + (i - 1) as usize)?;
    }
    let one_start = offset + (s1 * t) as usize;
    for i in 1..=s2 * t {
        let block = one_start + (i - 1) as usize;
        push(m * s1 * t + m * i, Family::OneChord, i, 0, block)?;
        push(
            m * s1 * t + m * s2 * t + m * i,
            Family::OneChord,
            i,
            1,
            block,
        )?;
        push(
            m * s1 * t + 2 * m * s2 * t + m * i,
            Family::OneChord,
            i,
            2,
            block,
        )?;
    }
    let k_start = one_start + (s2 * t) as usize;
    for i in 1..=t {
        let block = k_start + (i - 1) as usize;
        let mut row = 0;
        for h in 0..=k {
            for j in 1..=k + 1 - h {
                let len = m * s1 * t + 3 * m * s2 * t + m * k * h * t + (h + j - 1) * m * t + m * i;
                push(len, Family::KChord, i, row, block)?;
                row += 1;
            }
        }
    }
    Ok(PredictedSpectrum::new(out))
}

/// Every length listed by the `m = 1` families, including the plain lengths
/// 1 and 2 that no block realizes.
pub fn predicted_spectrum6(p: &Params6) -> Result<PredictedSpectrum, BuildError> {
    let violations: Vec<Violation> = theorem6::validate6(p);
    if !violations.is_empty() {
        return Err(BuildError::Invalid(violations));
    }
    let layout = Layout6::new(p, theorem6::has_path(p)?);
    let t = p.t as i128;
    let third = (t - 1) / 3;
    let two_thirds = (2 * t - 2) / 3;
    let mut out = Vec::new();
    let mut push = |length: i128, family, index: i128, row, block| -> Result<(), BuildError> {
        out.push(PredictedLength {
            length: fits(length)?,
            family,
            index: index as u64,
            row,
            block,
        });
        Ok(())
    };
    for i in 1..=22 * t {
        push(i, Family::Plain, i, 0, layout.plain_block(i as u64))?;
    }
    for i in 1..=p.one_chord_count() as i128 {
        let a = Some(layout.family_a + (i - 1) as usize);
        push(22 * t + i, Family::FamilyA, i, 0, a)?;
        push(25 * t + third + i - 1, Family::FamilyA, i, 1, a)?;
        push(28 * t + two_thirds + 2 * i - 2, Family::FamilyA, i, 2, a)?;
        let b = Some(layout.family_b + (i - 1) as usize);
        push(23 * t + two_thirds + i, Family::FamilyB, i, 0, b)?;
        push(27 * t + i - 1, Family::FamilyB, i, 1, b)?;
        push(28 * t + two_thirds + 2 * i - 1, Family::FamilyB, i, 2, b)?;
    }
    for (n, i) in p.ten_chord_range().enumerate() {
        let block = Some(layout.ten_chord + n);
        for (row, &(a, c, b)) in TEN_CHORD_TABLE.iter().enumerate() {
            let len = a as i128 * t + c as i128 * i as i128 + b as i128;
            push(len, Family::TenChord, i as i128, row, block)?;
        }
    }
    Ok(PredictedSpectrum::new(out))
}

/// Disagreement between a plan block's structural spectrum and the closed
/// forms predicted for it.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PredictionMismatch {
    pub block: usize,
    pub family: Option<Family>,
    pub index: Option<u64>,
    /// Predicted `(length, row)` pairs the block does not have.
    pub missing: Vec<(u64, usize)>,
    /// Structural lengths no formula predicted.
    pub unexpected: Vec<u64>,
}

/// Block-by-block multiset comparison of a plan against a prediction.
/// Unrealizable predictions (no block) are ignored.
pub fn compare_with_plan(
    plan: &ConstructionPlan,
    predicted: &PredictedSpectrum,
) -> Vec<PredictionMismatch> {
    let mut by_block: BTreeMap<usize, Vec<&PredictedLength>> = BTreeMap::new();
    for e in &predicted.entries {
        if let Some(b) = e.block {
            by_block.entry(b).or_default().push(e);
        }
    }
    let blocks = plan.blocks();
    let last = blocks
        .len()
        .max(by_block.keys().next_back().map_or(0, |b| b + 1));
    let mut out = Vec::new();
    for idx in 0..last {
        let mut actual = blocks.get(idx).map(block_lengths).unwrap_or_default();
        actual.sort_unstable();
        let mut expected: Vec<&PredictedLength> = by_block.remove(&idx).unwrap_or_default();
        expected.sort_by_key(|e| e.length);
        let (mut a, mut e) = (0, 0);
        let mut missing = Vec::new();
        let mut unexpected = Vec::new();
        while a < actual.len() || e < expected.len() {
            match (actual.get(a), expected.get(e)) {
                (Some(x), Some(y)) if *x == y.length => {
                    a += 1;
                    e += 1;
                }
                (Some(x), Some(y)) if *x < y.length => {
                    unexpected.push(*x);
                    a += 1;
                }
                (Some(x), None) => {
                    unexpected.push(*x);
                    a += 1;
                }
                (_, Some(y)) => {
                    missing.push((y.length, y.row));
                    e += 1;
                }
                (None, None) => unreachable!(),
            }
        }
        if !missing.is_empty() || !unexpected.is_empty() {
            let first = expected.first();
            out.push(PredictionMismatch {
                block: idx,
                family: first.map(|f| f.family),
                index: first.map(|f| f.index),
                missing,
                unexpected,
            });
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::{build_theorem5, build_theorem6};
    use crate::graph::{Block, ChordSpec};

    #[test]
    fn desk_prediction() {
        let p = Params5::new(4, 3, 2, 1, 1);
        let s = predicted_spectrum5(&p).unwrap();
        assert_eq!(
            s.spectrum().lengths(),
            &[4, 8, 12, 16, 20, 24, 28, 32, 36, 40, 44, 48, 56, 60, 72]
        );
        assert!(s.spectrum().is_distinct());
        assert_eq!(s.len() as u64, p.cycle_count());
        let plan = build_theorem5(&p).unwrap();
        assert!(compare_with_plan(&plan, &s).is_empty());
    }

    #[test]
    fn extremes_of_theorem5_families() {
        let p = Params5::new(6, 4, 4, 3, 2);
        let s = predicted_spectrum5(&p).unwrap().spectrum();
        let (m, k, s1, s2, t) = (6, 4, 4, 3, 2);
        assert_eq!(s.min(), Some(m));
        assert_eq!(
            s.max(),
            Some(m * s1 * t + 3 * m * s2 * t + m * k * (k + 1) * t + m * t)
        );
    }

    #[test]
    fn theorem6_family_a_first_block() {
        let s = predicted_spectrum6(&Params6::new(1429)).unwrap();
        let a1: Vec<u64> = s
            .entries()
            .iter()
            .filter(|e| e.family == Family::FamilyA && e.index == 1)
            .map(|e| e.length)
            .collect();
        assert_eq!(a1, vec![31_439, 36_201, 40_964]);
        assert_eq!(s.len(), 87_292);
        assert_eq!(s.unrealizable().len(), 2);
        let plan = build_theorem6(&Params6::new(1429)).unwrap();
        assert!(compare_with_plan(&plan, &s).is_empty());
    }

    #[test]
    fn mismatch_names_block_and_row() {
        let p = Params5::new(4, 3, 2, 1, 1);
        let s = predicted_spectrum5(&p).unwrap();
        let mut blocks = build_theorem5(&p).unwrap().blocks().to_vec();
        blocks[2] = Block::ChordedCycle {
            cycle_len: 20,
            chords: vec![ChordSpec::new(9, 4)],
        };
        let tampered = ConstructionPlan::new("tampered", blocks).unwrap();
        let mism = compare_with_plan(&tampered, &s);
        assert_eq!(mism.len(), 1);
        assert_eq!(mism[0].block, 2);
        assert_eq!(mism[0].family, Some(Family::OneChord));
        assert_eq!(mism[0].missing, vec![(12, 0), (16, 1)]);
        assert_eq!(mism[0].unexpected, vec![13, 15]);
    }
}
