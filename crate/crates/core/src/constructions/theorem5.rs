//! Even-`m` construction: short plain cycles, one-chord blocks with three
//! cycles each, and `k`-chord blocks with `C(k+2, 2)` cycles each, all
//! lengths multiples of `m`.

use num_bigint::BigInt;
use serde::Serialize;

use super::{exact_u64, integral, q, BuildError, Violation};
use crate::graph::{Block, ChordSpec, ConstructionPlan, PlanSource};
use crate::{Rational, Scalar};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct Params5 {
    pub m: u64,
    pub k: u64,
    pub s1: u64,
    pub s2: u64,
    pub t: u64,
    /// Target order; `None` means the smallest admissible one, `n_t`.
    pub n: Option<u64>,
}

impl Params5 {
    pub fn new(m: u64, k: u64, s1: u64, s2: u64, t: u64) -> Self {
        Params5 {
            m,
            k,
            s1,
            s2,
            t,
            n: None,
        }
    }

    pub fn with_n(self, n: u64) -> Self {
        Params5 { n: Some(n), ..self }
    }

    pub fn label(&self) -> String {
        let mut s = format!(
            "theorem5(m={},k={},s1={},s2={},t={}",
            self.m, self.k, self.s1, self.s2, self.t
        );
        if let Some(n) = self.n {
            s.push_str(&format!(",n={n}"));
        }
        s.push(')');
        s
    }

    /// `(k + s1 + 2 s2 + 1) t`: the number of independent cycles, and one
    /// more than the claimed edge surplus over `n`.
    pub fn cycle_rank(&self) -> u64 {
        (self.k + self.s1 + 2 * self.s2 + 1) * self.t
    }

    /// Total number of cycles the construction has.
    pub fn cycle_count(&self) -> u64 {
        let chorded = (self.k + 2) * (self.k + 1) / 2;
        (self.s1 + 3 * self.s2 + chorded) * self.t
    }
}

/// Coefficients `[t^2, t^1, t^0]` of the `n_t` polynomial.
pub fn nt_coefficients<T: Scalar>(m: u64, k: u64, s1: u64, s2: u64) -> [T; 3] {
    let c = |v: u64| T::from_i128(v as i128);
    let f = |n: i128, d: i128| T::frac(n, d);
    let (m, k, s1, s2) = (c(m), c(k), c(s1), c(s2));
    let quad = f(3, 4) * m.clone() * k.clone() * k.clone()
        + f(1, 2) * m.clone() * k.clone() * s1.clone()
        + f(3, 2) * m.clone() * k.clone() * s2.clone()
        + f(1, 2) * m.clone() * s1.clone() * s1.clone()
        + f(3, 2) * m.clone() * s1.clone() * s2.clone()
        + f(9, 4) * m.clone() * s2.clone() * s2.clone()
        + m.clone() * k.clone()
        + m.clone() * s1.clone()
        + f(3, 1) * m.clone() * s2.clone()
        + f(1, 2) * m.clone();
    let lin = f(1, 4) * m.clone() * k.clone()
        + f(1, 2) * m.clone() * s1.clone()
        + f(3, 4) * m.clone() * s2.clone()
        - k
        - s1
        - f(2, 1) * s2
        + f(1, 2) * m
        - T::one();
    [quad, lin, T::one()]
}

pub fn n_t_value<T: Scalar>(p: &Params5) -> T {
    let [a, b, c] = nt_coefficients::<T>(p.m, p.k, p.s1, p.s2);
    let t = T::from_i128(p.t as i128);
    a * t.clone() * t.clone() + b * t + c
}

/// Exact integer `n_t`; a non-integral value is reported as an error.
pub fn n_t_theorem5(p: &Params5) -> Result<BigInt, BuildError> {
    integral(n_t_value::<Rational>(p))
}

pub fn validate5(p: &Params5) -> Vec<Violation> {
    let mut v = Vec::new();
    let mut fail = |msg: String| v.push(Violation(msg));
    if p.m < 2 {
        fail("m must be at least 2".into());
    }
    if !p.m.is_multiple_of(2) {
        fail("m not even".into());
    }
    for (name, value) in [("k", p.k), ("s1", p.s1), ("s2", p.s2), ("t", p.t)] {
        if value < 1 {
            fail(format!("{name} must be at least 1"));
        }
    }
    if p.s1 <= p.s2 {
        fail("s1 > s2 violated".into());
    }
    if p.s1 + 3 * p.s2 <= p.k {
        fail("s1 + 3*s2 > k violated".into());
    }
    if !v.is_empty() {
        return v;
    }
    // Half-integral chord data is linear in i and p, so checking the first two
    // values of each decides every block.
    for i in 1..=2u64.min(p.s2 * p.t) {
        if let Err(e) = one_chord_block(p, i) {
            v.push(Violation(e.to_string()));
        }
    }
    for i in 1..=2u64.min(p.t) {
        if let Err(e) = k_chord_block(p, i) {
            v.push(Violation(e.to_string()));
        }
    }
    match n_t_theorem5(p) {
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

fn one_chord_block(p: &Params5, i: u64) -> Result<Block, BuildError> {
    let (m, s1, s2, t, i) = (q(p.m), q(p.s1), q(p.s2), q(p.t), q(i));
    let two = q(2);
    let name = format!("one-chord i={i}");
    let cycle_len = &m * &s1 * &t + &two * &m * &s2 * &t + &m * &i;
    let path_len = (&m * &s1 * &t - &m * &s2 * &t + &m * &i) / &two;
    let attach = (&m * &s1 * &t + &m * &s2 * &t + &m * &i) / &two;
    chorded(
        &name,
        exact_u64(&cycle_len, &name, "cycle length")?,
        vec![(
            exact_u64(&attach, &name, "attach position")?,
            exact_u64(&path_len, &name, "path length")?,
        )],
    )
}

fn k_chord_block(p: &Params5, i: u64) -> Result<Block, BuildError> {
    let (m, k, s1, s2, t, iq) = (q(p.m), q(p.k), q(p.s1), q(p.s2), q(p.t), q(i));
    let two = q(2);
    let name = format!("k-chord i={i}");
    let base = &m * &s1 * &t + q(3) * &m * &s2 * &t + &m * &iq;
    let cycle_len = &base + &m * &k * (&k + q(1)) * &t;
    let mut chords = Vec::with_capacity(p.k as usize);
    for pp in 1..=p.k {
        let pq = q(pp);
        let shift = &m * (&pq - q(1)) * &t;
        let path_len = (&base - &m * &k * &t + &shift) / &two;
        let attach = (&base + &m * &k * (&two * &pq - q(1)) * &t + &shift) / &two;
        chords.push((
            exact_u64(&attach, &name, "attach position")?,
            exact_u64(&path_len, &name, "path length")?,
        ));
    }
    chorded(&name, exact_u64(&cycle_len, &name, "cycle length")?, chords)
}

fn chorded(name: &str, cycle_len: u64, chords: Vec<(u64, u64)>) -> Result<Block, BuildError> {
    let block = Block::ChordedCycle {
        cycle_len,
        chords: chords
            .into_iter()
            .map(|(a, l)| ChordSpec::new(a, l))
            .collect(),
    };
    block.validate().map_err(|reason| BuildError::Geometry {
        block: name.to_string(),
        reason,
    })?;
    Ok(block)
}

/// Plan index of the first plain cycle (1 when a pendant path is present).
pub(crate) fn path_offset(p: &Params5) -> Result<usize, BuildError> {
    let nt = n_t_theorem5(p)?;
    Ok(match p.n {
        Some(n) if BigInt::from(n) > nt => 1,
        _ => 0,
    })
}

/// Blocks in order: pendant path (if `n > n_t`), plain cycles `m i` for
/// `i <= s1 t`, one-chord blocks for `i <= s2 t`, `k`-chord blocks for `i <= t`.
pub fn build_theorem5(p: &Params5) -> Result<ConstructionPlan, BuildError> {
    let violations = validate5(p);
    if !violations.is_empty() {
        return Err(BuildError::Invalid(violations));
    }
    let nt = n_t_theorem5(p)?;
    let mut blocks = Vec::new();
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
    for i in 1..=p.s1 * p.t {
        blocks.push(Block::PlainCycle { len: p.m * i });
    }
    for i in 1..=p.s2 * p.t {
        blocks.push(one_chord_block(p, i)?);
    }
    for i in 1..=p.t {
        blocks.push(k_chord_block(p, i)?);
    }
    let plan = ConstructionPlan::new(p.label(), blocks)?;
    Ok(plan.with_source(PlanSource::Theorem5(*p)))
}
