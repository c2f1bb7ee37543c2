use std::cmp::Ordering;

use rayon::prelude::*;
use serde::Serialize;

use super::{ratio5, ratio5_feasible};
use crate::Rational;

/// A parameter triple of the even-`m` construction with its squared constant.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RatioPoint {
    pub k: u64,
    pub s1: u64,
    pub s2: u64,
    #[serde(serialize_with = "super::ser_display")]
    pub ratio: Rational,
    pub feasible: bool,
}

impl RatioPoint {
    pub fn evaluate(k: u64, s1: u64, s2: u64) -> Self {
        RatioPoint {
            k,
            s1,
            s2,
            ratio: ratio5(k, s1, s2),
            feasible: ratio5_feasible(k, s1, s2),
        }
    }

    pub fn triple(&self) -> (u64, u64, u64) {
        (self.k, self.s1, self.s2)
    }

    /// Higher ratio first, then the lexicographically smaller triple.
    fn better_than(&self, other: &RatioPoint) -> bool {
        match self.ratio.cmp(&other.ratio) {
            Ordering::Greater => true,
            Ordering::Less => false,
            Ordering::Equal => self.triple() < other.triple(),
        }
    }
}

/// Deterministic pattern search over feasible integer triples, seeded at
/// `(3, 6, 1) * scale`.
///
/// `budget` counts ratio evaluations, the seed included. Each round scores
/// the 26 moves `±step` per coordinate and accepts the best strict
/// improvement; without one the step halves. Heuristic: nothing is claimed
/// about optimality.
pub fn optimize_ratio(budget: u64, scale: u64) -> RatioPoint {
    let scale = scale.max(1);
    let mut best = RatioPoint::evaluate(3 * scale, 6 * scale, scale);
    let mut used = 1u64;
    let mut step = (scale / 2).max(1);
    while used < budget {
        let moves: Vec<(u64, u64, u64)> = neighbours(best.triple(), step)
            .take(usize::try_from(budget - used).unwrap_or(usize::MAX))
            .collect();
        if moves.is_empty() {
            if step == 1 {
                break;
            }
            step /= 2;
            continue;
        }
        used += moves.len() as u64;
        let candidate = moves
            .par_iter()
            .map(|&(k, s1, s2)| RatioPoint::evaluate(k, s1, s2))
            .reduce_with(|a, b| if b.better_than(&a) { b } else { a })
            .expect("nonempty neighbourhood");
        if candidate.ratio > best.ratio {
            best = candidate;
        } else if step == 1 {
            break;
        } else {
            step /= 2;
        }
    }
    best
}

fn neighbours((k, s1, s2): (u64, u64, u64), step: u64) -> impl Iterator<Item = (u64, u64, u64)> {
    let shift = move |v: u64, d: i8| match d {
        -1 => v.checked_sub(step).filter(|&x| x >= 1),
        0 => Some(v),
        _ => v.checked_add(step),
    };
    (0..27)
        .filter(|&c| c != 13)
        .filter_map(move |c: i32| {
            let d = [
                (c / 9) as i8 - 1,
                ((c / 3) % 3) as i8 - 1,
                (c % 3) as i8 - 1,
            ];
            Some((shift(k, d[0])?, shift(s1, d[1])?, shift(s2, d[2])?))
        })
        .filter(|&(k, s1, s2)| ratio5_feasible(k, s1, s2))
}
