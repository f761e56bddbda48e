//! Nested cascades of tight circumscriptions and their infinite limits.

use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::analytic::{self, ConstantName, ConstantResult, Truncation};
use crate::circumscribe::{code_angle, s_heuristic, tight_at_code};
use crate::error::{check_sides, Error, Result};
use crate::primes;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Sequence {
    ConsecutiveUp,
    ConsecutiveDown,
    PrimesUp,
    PrimesDown,
}

impl Sequence {
    pub fn as_str(self) -> &'static str {
        match self {
            Sequence::ConsecutiveUp => "consecutive-up",
            Sequence::ConsecutiveDown => "consecutive-down",
            Sequence::PrimesUp => "primes-up",
            Sequence::PrimesDown => "primes-down",
        }
    }

    fn ascending(self) -> bool {
        matches!(self, Sequence::ConsecutiveUp | Sequence::PrimesUp)
    }
}

impl FromStr for Sequence {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        [
            Sequence::ConsecutiveUp,
            Sequence::ConsecutiveDown,
            Sequence::PrimesUp,
            Sequence::PrimesDown,
        ]
        .into_iter()
        .find(|q| q.as_str() == s)
        .ok_or_else(|| Error::Domain(format!("unknown sequence `{s}`")))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Standard,
    Rotated,
}

impl FromStr for Mode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "standard" => Ok(Mode::Standard),
            "rotated" => Ok(Mode::Rotated),
            _ => Err(Error::Domain(format!("unknown mode `{s}`"))),
        }
    }
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Mode::Standard => "standard",
            Mode::Rotated => "rotated",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct CascadeSpec {
    pub sequence: Sequence,
    /// Side count of the innermost polygon.
    pub start: u32,
    /// Last side count, or the prime bound for prime sequences.
    pub end: u32,
    pub mode: Mode,
}

impl CascadeSpec {
    pub fn new(sequence: Sequence, start: u32, end: u32, mode: Mode) -> Self {
        Self { sequence, start, end, mode }
    }

    /// Side counts from the innermost polygon outwards.
    pub fn sides(&self) -> Result<Vec<u32>> {
        check_sides(self.start)?;
        check_sides(self.end)?;
        let (lo, hi) = (self.start.min(self.end), self.start.max(self.end));
        if self.start != self.end && self.sequence.ascending() != (self.end > self.start) {
            return Err(Error::Domain(format!(
                "{} needs end {} start, got {} → {}",
                self.sequence.as_str(),
                if self.sequence.ascending() { "≥" } else { "≤" },
                self.start,
                self.end
            )));
        }
        let mut sides: Vec<u32> = match self.sequence {
            Sequence::ConsecutiveUp | Sequence::ConsecutiveDown => (lo..=hi).collect(),
            Sequence::PrimesUp | Sequence::PrimesDown => {
                if !primes::is_odd_prime(self.start) {
                    return Err(Error::Domain(format!("{} is not an odd prime", self.start)));
                }
                primes::odd_primes_up_to(hi)
                    .into_iter()
                    .filter(|&p| p >= lo)
                    .collect()
            }
        };
        if !self.sequence.ascending() {
            sides.reverse();
        }
        Ok(sides)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CascadeResult {
    /// Side counts, innermost first.
    pub sides: Vec<u32>,
    /// `r_{k+1}/r_k` for each step.
    pub ratios: Vec<f64>,
    /// Outermost over innermost circumradius.
    pub cumulative: f64,
    /// Rotation of each outer polygon relative to the one inside it.
    pub angles: Vec<f64>,
    /// Sum of the step rotations, in radians.
    pub wrench: f64,
}

impl CascadeResult {
    /// Circumradius of each polygon with the innermost at 1.
    pub fn radii(&self) -> Vec<f64> {
        std::iter::once(1.0)
            .chain(self.ratios.iter().scan(1.0, |r, q| {
                *r *= q;
                Some(*r)
            }))
            .collect()
    }

    /// Absolute rotation of each polygon, the innermost at 0.
    pub fn absolute_angles(&self) -> Vec<f64> {
        std::iter::once(0.0)
            .chain(self.angles.iter().scan(0.0, |a, d| {
                *a += d;
                Some(*a)
            }))
            .collect()
    }
}

/// One circumscription step: ratio and rotation of the outer polygon.
pub fn step(n: u32, m: u32, mode: Mode) -> Result<(f64, f64)> {
    let s = match mode {
        Mode::Standard => 0,
        Mode::Rotated => s_heuristic(n, m)?,
    };
    Ok((tight_at_code(n, m, s)?.ratio, code_angle(n, m, s)))
}

pub fn cascade(spec: &CascadeSpec) -> Result<CascadeResult> {
    let sides = spec.sides()?;
    let mut ratios = Vec::with_capacity(sides.len().saturating_sub(1));
    let mut angles = Vec::with_capacity(ratios.capacity());
    for w in sides.windows(2) {
        let (ratio, alpha) = step(w[0], w[1], spec.mode)?;
        ratios.push(ratio);
        angles.push(alpha);
    }
    // log-sum keeps long cascades accurate
    let cumulative = ratios.iter().map(|r| r.ln()).sum::<f64>().exp();
    let wrench = angles.iter().rev().sum();
    Ok(CascadeResult { sides, ratios, cumulative, angles, wrench })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Direction {
    Up,
    Down,
}

/// Builds a result whose relative error is the sum of the parts' relative
/// errors.
fn combine(name: &str, value: f64, parts: &[ConstantResult]) -> ConstantResult {
    let rel: f64 = parts.iter().map(|p| p.error_estimate / p.value.abs()).sum();
    let truncation = parts.iter().fold(Truncation::default(), |acc, p| Truncation {
        taylor_order: acc.taylor_order.max(p.truncation.taylor_order),
        cutoff: acc.cutoff.max(p.truncation.cutoff),
        prime_bound: acc.prime_bound.max(p.truncation.prime_bound),
    });
    ConstantResult {
        name: name.to_string(),
        value,
        truncation,
        error_estimate: value.abs() * (rel + 4.0 * f64::EPSILON),
    }
}

fn get(name: ConstantName) -> ConstantResult {
    analytic::constant(name.as_str()).expect("built-in constant")
}

/// Outer radius of the infinite cascade 3, 4, 5, … over the innermost one:
/// `C_o / (2K')`.
pub fn limit_consecutive_up() -> ConstantResult {
    let (co, k) = (get(ConstantName::Co), get(ConstantName::KPrime));
    combine("limit_consecutive_up", co.value / (2.0 * k.value), &[co, k])
}

/// Limit of the descending cascade ∞ → 3, relative to the innermost circle:
/// the even quench product over `K'`.
pub fn limit_consecutive_down() -> ConstantResult {
    let (q, k) = (get(ConstantName::QuenchEven), get(ConstantName::KPrime));
    combine("limit_consecutive_down", q.value / k.value, &[q, k])
}

/// Prime cascade limits. Down is exactly twice up: reversing the order
/// replaces `1/(2K_p')` by `1/K_p'`, the prime-pair product being symmetric.
pub fn limit_primes(direction: Direction) -> ConstantResult {
    let (p, k) = (get(ConstantName::PPrimePairs), get(ConstantName::KpPrime));
    let (name, scale) = match direction {
        Direction::Up => ("limit_primes_up", 0.5),
        Direction::Down => ("limit_primes_down", 1.0),
    };
    combine(name, scale * p.value / k.value, &[p, k])
}

/// `C_e · P_2π / (√3 K')`.
///
/// This closed form assumes every odd-to-even step gains the doubled phase
/// `2π/(k(k+1))`. A concentric pair (k, k+1) can only reach phase 1, so the
/// realizable rotated cascade converges to [`limit_rotated_realized`]
/// instead.
pub fn limit_rotated_up() -> ConstantResult {
    let (ce, p2, k) = (get(ConstantName::Ce), get(ConstantName::P2piOdd), get(ConstantName::KPrime));
    let value = ce.value * p2.value / (3f64.sqrt() * k.value);
    combine("limit_rotated_up", value, &[ce, p2, k])
}

/// Limit of the rotated consecutive cascade as actually constructed:
/// every step reaches `cos(π/(n(n+1)))/cos(π/(n+1))`, giving `C / (√3 K')`.
pub fn limit_rotated_realized() -> ConstantResult {
    let (c, k) = (get(ConstantName::CFull), get(ConstantName::KPrime));
    combine("limit_rotated_realized", c.value / (3f64.sqrt() * k.value), &[c, k])
}

/// Total rotation of the infinite rotated cascade from the triangle up:
/// `Σ_{k≥2} π/(2k(2k+1)) = π(5/6 − log 2)` radians.
pub fn wrench_angle_limit() -> ConstantResult {
    let value = PI * (5.0 / 6.0 - std::f64::consts::LN_2);
    ConstantResult {
        name: "wrench_angle".into(),
        value,
        truncation: Truncation::default(),
        error_estimate: 4.0 * f64::EPSILON * value,
    }
}

/// Names accepted by [`named_constant`] in addition to the analytic ones.
pub const LIMIT_NAMES: [&str; 8] = [
    "limit_consecutive_up",
    "limit_consecutive_down",
    "limit_primes_up",
    "limit_primes_down",
    "limit_rotated_up",
    "limit_rotated_realized",
    "wrench_angle",
    "wrench_angle_deg",
];

/// Any named constant: the analytic products or a cascade limit.
pub fn named_constant(name: &str) -> Result<ConstantResult> {
    match name {
        "limit_consecutive_up" => Ok(limit_consecutive_up()),
        "limit_consecutive_down" => Ok(limit_consecutive_down()),
        "limit_primes_up" => Ok(limit_primes(Direction::Up)),
        "limit_primes_down" => Ok(limit_primes(Direction::Down)),
        "limit_rotated_up" => Ok(limit_rotated_up()),
        "limit_rotated_realized" => Ok(limit_rotated_realized()),
        "wrench_angle" => Ok(wrench_angle_limit()),
        "wrench_angle_deg" => {
            let rad = wrench_angle_limit();
            Ok(ConstantResult {
                name: name.into(),
                value: rad.value.to_degrees(),
                error_estimate: rad.error_estimate.to_degrees(),
                ..rad
            })
        }
        _ => analytic::constant(name),
    }
}
