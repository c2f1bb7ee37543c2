//! Construction for `m = 1`: plain cycles of every length up to `22t`, two
//! families of one-chord blocks, and ten-chord blocks with 66 cycles each.

use num_bigint::BigInt;
use serde::Serialize;

use super::{exact_u64, integral, BuildError, Violation};
use crate::graph::{Block, ChordSpec, ConstructionPlan, PlanSource};
use crate::{Rational, Scalar};

/// Chord `p` of a ten-chord block has `path_len = PATH_T[p] * t - 1`.
pub const TEN_CHORD_PATH_T: [u64; 10] = [11, 12, 12, 13, 13, 14, 14, 15, 15, 16];

/// Chord `p` attaches at `a * t + b + c * i` for `(a, b, c) = TEN_CHORD_ATTACH[p]`.
pub const TEN_CHORD_ATTACH: [(i64, i64, i64); 10] = [
    (21, -59, 1),
    (31, -53, 2),
    (41, 156, 3),
    (51, 155, 4),
    (61, 155, 5),
    (71, 154, 6),
    (81, 153, 7),
    (91, 147, 8),
    (101, 149, 9),
    (111, 151, 10),
];

/// First and last admissible index of the ten-chord family is `58..=t-742`.
pub const TEN_CHORD_FIRST: u64 = 58;
pub const TEN_CHORD_TAIL: u64 = 742;

/// Plain cycles shorter than this cannot be realized in a loopless graph
/// without parallel edges, so the builder skips them.
pub const SHORTEST_PLAIN: u64 = 3;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct Params6 {
    pub t: u64,
    /// Target order; `None` means `n_t`.
    pub n: Option<u64>,
}

impl Params6 {
    pub fn new(t: u64) -> Self {
        Params6 { t, n: None }
    }

    /// `t = 1260 r + 169`.
    pub fn from_r(r: u64) -> Self {
        Params6::new(1260 * r + 169)
    }

    pub fn with_n(self, n: u64) -> Self {
        Params6 { n: Some(n), ..self }
    }

    /// `Some(r)` when `t = 1260 r + 169` with `r >= 1`.
    pub fn r(&self) -> Option<u64> {
        (self.t >= 1429 && (self.t - 169).is_multiple_of(1260)).then(|| (self.t - 169) / 1260)
    }

    pub fn is_canonical(&self) -> bool {
        self.r().is_some()
    }

    pub fn label(&self) -> String {
        match self.n {
            Some(n) => format!("theorem6(t={},n={n})", self.t),
            None => format!("theorem6(t={})", self.t),
        }
    }

    /// Number of blocks in each one-chord family, `(5t - 8) / 3`.
    pub fn one_chord_count(&self) -> u64 {
        (5 * self.t - 8) / 3
    }

    /// `(2t - 2) / 3`.
    pub fn two_thirds(&self) -> u64 {
        (2 * self.t - 2) / 3
    }

    pub fn ten_chord_range(&self) -> std::ops::RangeInclusive<u64> {
        TEN_CHORD_FIRST..=self.t - TEN_CHORD_TAIL
    }
}

/// `[t^2, t^1, t^0]` coefficients of `n_t`.
pub fn nt_coefficients<T: Scalar>() -> [T; 3] {
    [
        T::frac(1309, 2),
        T::frac(-1_349_159, 6),
        T::frac(6_932_215, 3),
    ]
}

/// `[t^1, t^0]` coefficients of the claimed edge surplus over `n`.
pub fn bonus_coefficients<T: Scalar>() -> [T; 2] {
    [T::frac(119, 3), T::frac(-26399, 3)]
}

pub fn n_t_value<T: Scalar>(t: u64) -> T {
    let [a, b, c] = nt_coefficients::<T>();
    let t = T::from_i128(t as i128);
    a * t.clone() * t.clone() + b * t + c
}

pub fn bonus_value<T: Scalar>(t: u64) -> T {
    let [a, b] = bonus_coefficients::<T>();
    a * T::from_i128(t as i128) + b
}

pub fn n_t_theorem6(p: &Params6) -> Result<BigInt, BuildError> {
    integral(n_t_value::<Rational>(p.t))
}

pub fn validate6(p: &Params6) -> Vec<Violation> {
    let t = p.t as i128;
    let mut v = Vec::new();
    if 5 * t < 8 {
        v.push(Violation("(5t-8)/3 is negative".into()));
    }
    for (expr, num, den) in [
        ("(5t-8)/3", 5 * t - 8, 3),
        ("(2t-2)/3", 2 * t - 2, 3),
        ("(56t-2)/6", 56 * t - 2, 6),
        ("(76t-4)/6", 76 * t - 4, 6),
        ("(t-1)/3", t - 1, 3),
    ] {
        if num.rem_euclid(den) != 0 {
            v.push(Violation(format!("{expr} not integral")));
        }
    }
    if p.t < TEN_CHORD_FIRST + TEN_CHORD_TAIL {
        v.push(Violation(format!(
            "t >= {} required so that {TEN_CHORD_FIRST} <= i <= t-{TEN_CHORD_TAIL} is nonempty",
            TEN_CHORD_FIRST + TEN_CHORD_TAIL
        )));
    }
    match n_t_theorem6(p) {
        Err(e) => v.push(Violation(e.to_string())),
        Ok(nt) => {
            if let Some(n) = p.n {
                if BigInt::from(n) < nt {
                    v.push(Violation(format!("n = {n} is below n_t = {nt}")));
                }
            }
        }
    }
    v
}

/// Where each family starts inside a built plan.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Layout6 {
    pub path: usize,
    pub plain: usize,
    pub family_a: usize,
    pub family_b: usize,
    pub ten_chord: usize,
    pub end: usize,
}

impl Layout6 {
    pub fn new(p: &Params6, has_path: bool) -> Self {
        let path = usize::from(has_path);
        let plain = path;
        let family_a = plain + (22 * p.t + 1 - SHORTEST_PLAIN) as usize;
        let family_b = family_a + p.one_chord_count() as usize;
        let ten_chord = family_b + p.one_chord_count() as usize;
        let end = ten_chord + p.ten_chord_range().count();
        Layout6 {
            path,
            plain,
            family_a,
            family_b,
            ten_chord,
            end,
        }
    }

    /// Plan index of the plain cycle of length `len`, if it is built.
    pub fn plain_block(&self, len: u64) -> Option<usize> {
        (len >= SHORTEST_PLAIN).then(|| self.plain + (len - SHORTEST_PLAIN) as usize)
    }
}

pub(crate) fn has_path(p: &Params6) -> Result<bool, BuildError> {
    let nt = n_t_theorem6(p)?;
    Ok(matches!(p.n, Some(n) if BigInt::from(n) > nt))
}

/// One-chord block of family A (`second == false`) or B.
pub fn one_chord_block(p: &Params6, i: u64, second: bool) -> Result<Block, BuildError> {
    let t = p.t;
    let name = format!("{} i={i}", if second { "B" } else { "A" });
    let cycle_len = 28 * t + p.two_thirds() + 2 * i - if second { 1 } else { 2 };
    let path_len = if second { 11 * t } else { (56 * t - 2) / 6 + 1 };
    let attach = (76 * t - 4) / 6 + i;
    checked(&name, cycle_len, vec![ChordSpec::new(attach, path_len)])
}

pub fn ten_chord_block(p: &Params6, i: u64) -> Result<Block, BuildError> {
    let (t, ii) = (p.t as i128, i as i128);
    let name = format!("C i={i}");
    let cycle_len = exact_u64(
        &Rational::from_integer(BigInt::from(137 * t + 11 * ii + 891)),
        &name,
        "cycle length",
    )?;
    let mut chords = Vec::with_capacity(10);
    for (&(a, b, c), &len_t) in TEN_CHORD_ATTACH.iter().zip(&TEN_CHORD_PATH_T) {
        let attach = a as i128 * t + b as i128 + c as i128 * ii;
        let attach = exact_u64(
            &Rational::from_integer(BigInt::from(attach)),
            &name,
            "attach position",
        )?;
        chords.push(ChordSpec::new(attach, len_t * p.t - 1));
    }
    checked(&name, cycle_len, chords)
}

fn checked(name: &str, cycle_len: u64, chords: Vec<ChordSpec>) -> Result<Block, BuildError> {
    let block = Block::ChordedCycle { cycle_len, chords };
    block.validate().map_err(|reason| BuildError::Geometry {
        block: name.to_string(),
        reason,
    })?;
    Ok(block)
}

/// Blocks in order: pendant path (if `n > n_t`), plain cycles of length
/// `3..=22t`, family A and family B for `i <= (5t-8)/3`, ten-chord blocks
/// for `58 <= i <= t-742`.
pub fn build_theorem6(p: &Params6) -> Result<ConstructionPlan, BuildError> {
    let violations = validate6(p);
    if !violations.is_empty() {
        return Err(BuildError::Invalid(violations));
    }
    let nt = n_t_theorem6(p)?;
    let layout = Layout6::new(p, has_path(p)?);
    let mut blocks = Vec::with_capacity(layout.end);
    if let Some(n) = p.n {
        let extra = exact_u64(
            &Rational::from_integer(BigInt::from(n) - nt),
            "B0",
            "path length",
        )?;
        if extra > 0 {
            blocks.push(Block::Path { len: extra });
        }
    }
    for len in SHORTEST_PLAIN..=22 * p.t {
        blocks.push(Block::PlainCycle { len });
    }
    for second in [false, true] {
        for i in 1..=p.one_chord_count() {
            blocks.push(one_chord_block(p, i, second)?);
        }
    }
    for i in p.ten_chord_range() {
        blocks.push(ten_chord_block(p, i)?);
    }
    debug_assert_eq!(blocks.len(), layout.end);
    let mut plan = ConstructionPlan::new(p.label(), blocks)?.with_source(PlanSource::Theorem6(*p));
    plan.push_warning(
        "plain cycles of length 1 and 2 skipped (self-loop and digon are not simple): \
         1 vertex, 3 edges and 2 cycles fewer than the listed blocks"
            .into(),
    );
    if !p.is_canonical() {
        plan.push_warning(format!(
            "extended t={}: satisfies the integrality constraints but is not 1260r+169",
            p.t
        ));
    }
    Ok(plan)
}
