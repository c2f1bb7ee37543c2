//! Closed-form bounds on the maximum edge count and the asymptotic constants
//! the constructions achieve, evaluated exactly.

mod optimize;

use num_bigint::BigInt;
use num_integer::Roots;
use num_traits::One;
use serde::Serialize;
use thiserror::Error;

use crate::constructions::{theorem5, theorem6};
use crate::{Rational, Scalar};

pub use optimize::{optimize_ratio, RatioPoint};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BoundsError {
    #[error("n = {0} is below the smallest order the bound applies to ({1})")]
    OrderTooSmall(u64, u64),
    #[error("r must be at least 1")]
    InvalidR,
}

/// `n + floor((sqrt(8n - 23) + 1) / 2)`, for `n >= 3`.
pub fn shi_lower(n: u64) -> Result<u64, BoundsError> {
    if n < 3 {
        return Err(BoundsError::OrderTooSmall(n, 3));
    }
    let radicand = 8 * u128::from(n) - 23;
    // floor((sqrt(x) + 1) / 2) == floor((isqrt(x) + 1) / 2) for every x >= 0
    let root = radicand.sqrt();
    Ok(n + root.div_ceil(2) as u64)
}

/// Rational interval known to contain an irrational value; degenerate when
/// the value is rational.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Enclosure {
    #[serde(serialize_with = "ser_display")]
    pub lower: Rational,
    #[serde(serialize_with = "ser_display")]
    pub upper: Rational,
}

fn ser_display<T: std::fmt::Display, S: serde::Serializer>(v: &T, s: S) -> Result<S::Ok, S::Error> {
    s.collect_str(v)
}

impl Enclosure {
    pub fn exact(v: Rational) -> Self {
        Enclosure {
            lower: v.clone(),
            upper: v,
        }
    }

    pub fn is_exact(&self) -> bool {
        self.lower == self.upper
    }

    pub fn contains(&self, v: &Rational) -> bool {
        &self.lower <= v && v <= &self.upper
    }
}

/// Denominator of the rational square-root brackets.
const SQRT_SCALE: u64 = 1_000_000_000_000;

/// Bracket of `sqrt(n)` of width at most `1 / SQRT_SCALE`.
pub fn sqrt_enclosure(n: u64) -> Enclosure {
    let root = n.sqrt();
    if root * root == n {
        return Enclosure::exact(Rational::from_integer(BigInt::from(root)));
    }
    let scale = BigInt::from(SQRT_SCALE);
    let scaled = (BigInt::from(n) * &scale * &scale).sqrt();
    Enclosure {
        lower: Rational::new(scaled.clone(), scale.clone()),
        upper: Rational::new(scaled + 1, scale),
    }
}

/// `n + 1.98 sqrt(n)`: exact for perfect squares, otherwise a certified
/// enclosure.
pub fn boros_upper(n: u64) -> Enclosure {
    let coeff = Rational::new(99.into(), 50.into());
    let root = sqrt_enclosure(n);
    let n = Rational::from_integer(BigInt::from(n));
    Enclosure {
        lower: &n + &coeff * root.lower,
        upper: &n + &coeff * root.upper,
    }
}

/// Either the bound `f(n) >= value`, or the threshold `n` has not reached.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub enum BoundOutcome {
    Bound(#[serde(serialize_with = "ser_display")] Rational),
    BelowThreshold {
        #[serde(serialize_with = "ser_display")]
        threshold: Rational,
    },
}

impl BoundOutcome {
    pub fn value(&self) -> Option<&Rational> {
        match self {
            BoundOutcome::Bound(v) => Some(v),
            BoundOutcome::BelowThreshold { .. } => None,
        }
    }
}

fn outcome(n: u64, threshold: Rational, bonus: Rational) -> BoundOutcome {
    let n = Rational::from_integer(BigInt::from(n));
    if n >= threshold {
        BoundOutcome::Bound(n + bonus)
    } else {
        BoundOutcome::BelowThreshold { threshold }
    }
}

/// `[t^2, t^1, t^0]` of the order threshold of the earlier `t = 1260r + 169` bound.
pub fn lai2017_threshold_coefficients<T: Scalar>() -> [T; 3] {
    [T::frac(2119, 4), T::from_i128(87978), T::frac(15957, 4)]
}

/// `[t^1, t^0]` of its edge surplus.
pub fn lai2017_bonus_coefficients<T: Scalar>() -> [T; 2] {
    [T::frac(107, 3), T::frac(7, 3)]
}

pub fn lai2017_threshold<T: Scalar>(t: u64) -> T {
    let [a, b, c] = lai2017_threshold_coefficients::<T>();
    let t = T::from_i128(t as i128);
    a * t.clone() * t.clone() + b * t + c
}

/// `f(n) >= n + (107t + 7)/3` for `t = 1260r + 169` once `n` reaches the threshold.
pub fn lai2017_lower(r: u64, n: u64) -> Result<BoundOutcome, BoundsError> {
    if r < 1 {
        return Err(BoundsError::InvalidR);
    }
    let t = 1260 * r + 169;
    let [a, b] = lai2017_bonus_coefficients::<Rational>();
    let bonus = a * Rational::from_integer(BigInt::from(t)) + b;
    Ok(outcome(n, lai2017_threshold(t), bonus))
}

/// `f(n) >= n + (119t - 26399)/3` once `n >= n_t`, evaluated from the same
/// coefficients the construction uses.
pub fn theorem6_lower(t: u64, n: u64) -> BoundOutcome {
    outcome(
        n,
        theorem6::n_t_value::<Rational>(t),
        theorem6::bonus_value::<Rational>(t),
    )
}

/// Squared liminf constant of a family with `n ~ a t^2` and surplus `~ b t`.
fn liminf_squared<T: Scalar>(bonus_slope: T, order_leading: T) -> T {
    bonus_slope.clone() * bonus_slope / order_leading
}

/// Squared constant reached by the `m = 1` construction: `238/99 = 2 + 40/99`.
pub fn liminf6_constant() -> Rational {
    let [slope, _] = theorem6::bonus_coefficients::<Rational>();
    let [leading, _, _] = theorem6::nt_coefficients::<Rational>();
    liminf_squared(slope, leading)
}

/// Squared constant of the earlier `t = 1260r + 169` construction.
pub fn lai2017_constant() -> Rational {
    let [slope, _] = lai2017_bonus_coefficients::<Rational>();
    let [leading, _, _] = lai2017_threshold_coefficients::<Rational>();
    liminf_squared(slope, leading)
}

/// `2.444`, the value the even-`m` construction beats.
pub fn theorem5_target() -> Rational {
    Rational::new(2444.into(), 1000.into())
}

/// `22/9`, the supremum of the homogeneous part of [`ratio5`].
pub fn ratio5_supremum() -> Rational {
    Rational::new(22.into(), 9.into())
}

/// `(99/50)^2`, the square of the upper-bound coefficient.
pub fn boros_constant_squared() -> Rational {
    let c = Rational::new(99.into(), 50.into());
    &c * &c
}

/// Squared liminf constant of the even-`m` construction at `(k, s1, s2)`:
/// `(k + s1 + 2 s2 + 1)^2` over the `t^2` coefficient of `n_t / m`.
pub fn ratio5<T: Scalar>(k: u64, s1: u64, s2: u64) -> T {
    let slope = T::from_i128(k as i128 + s1 as i128 + 2 * s2 as i128 + 1);
    let [leading, _, _] = theorem5::nt_coefficients::<T>(1, k, s1, s2);
    liminf_squared(slope, leading)
}

pub fn ratio5_feasible(k: u64, s1: u64, s2: u64) -> bool {
    k >= 1 && s2 >= 1 && s1 > s2 && s1 + 3 * s2 > k
}

/// Same value via the homogeneous quadratic form plus its linear correction,
/// written out independently of the `n_t` coefficients.
pub fn ratio5_direct(k: u64, s1: u64, s2: u64) -> Rational {
    let q = |v: u64| Rational::from_integer(BigInt::from(v));
    let f = |n: i64, d: i64| Rational::new(n.into(), d.into());
    let (k, s1, s2) = (q(k), q(s1), q(s2));
    let num = (&k + &s1 + f(2, 1) * &s2 + Rational::one()).pow(2);
    let den = f(3, 4) * &k * &k
        + f(1, 2) * &k * &s1
        + f(3, 2) * &k * &s2
        + f(1, 2) * &s1 * &s1
        + f(3, 2) * &s1 * &s2
        + f(9, 4) * &s2 * &s2
        + &k
        + &s1
        + f(3, 1) * &s2
        + f(1, 2);
    num / den
}

/// One row of the bounds table: best applicable bound of each kind at `n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoundsRow {
    pub n: u64,
    pub shi_lower: Option<u64>,
    /// Largest bound over `r >= 1` whose threshold `n` meets.
    pub lai2017: Option<(u64, Rational)>,
    /// Same for `t = 1260r + 169` in the `m = 1` construction.
    pub theorem6: Option<(u64, Rational)>,
    pub boros_upper: Enclosure,
}

/// Both lower bounds grow with `r` and so do their thresholds, so the best
/// applicable `r` is the largest one whose threshold is met.
fn best_over_r(eval: impl Fn(u64) -> BoundOutcome) -> Option<(u64, Rational)> {
    let mut best = None;
    for r in 1.. {
        match eval(r) {
            BoundOutcome::Bound(v) => best = Some((r, v)),
            BoundOutcome::BelowThreshold { .. } => break,
        }
    }
    best
}

pub fn bounds_row(n: u64) -> BoundsRow {
    BoundsRow {
        n,
        shi_lower: shi_lower(n).ok(),
        lai2017: best_over_r(|r| lai2017_lower(r, n).expect("r >= 1")),
        theorem6: best_over_r(|r| theorem6_lower(1260 * r + 169, n)),
        boros_upper: boros_upper(n),
    }
}

/// Whether `shi_lower(n) <= n + 1.98 sqrt(n)` is certified by the enclosure.
pub fn lower_below_upper(n: u64) -> Option<bool> {
    let lower = Rational::from_integer(BigInt::from(shi_lower(n).ok()?));
    let upper = boros_upper(n);
    if lower <= upper.lower {
        Some(true)
    } else if lower > upper.upper {
        Some(false)
    } else {
        None
    }
}
