//! Tight concentric circumscription of a regular n-gon by a regular m-gon.
//!
//! Both polygons share the origin. The inner n-gon has unit circumradius and
//! sits in standard position; the outer m-gon may be rotated by α. Vertex
//! `j_i` of the inner polygon touches edge `j_o` of the outer one at
//! parameter `t` along the edge, and the circumradius ratio is
//!
//! ```text
//! r_m / r_n = cos(j_i·φ_n − (j_o + ½)·φ_m − α) / cos(φ_m / 2)
//! ```
//!
//! maximized over all index pairs. With α = s·π/(nm) the numerator phase is
//! an integer multiple of π/(nm), namely `2·j_i·m − (2·j_o + 1)·n − s`, so
//! the maximization runs in exact integer arithmetic.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::error::{check_sides, Error, Result};
use crate::polygon::{contains, vertices, PolygonSpec};
use crate::primes;

/// Ties between contact pairs closer than this are broken by index order.
pub const TIE_TOLERANCE: f64 = 1e-12;

/// Tolerance used by the bisection oracle, both for containment and for the
/// final bracket width.
pub const ORACLE_TOLERANCE: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ContactSolution {
    pub n: u32,
    pub m: u32,
    /// r_m / r_n for the tight outer polygon.
    pub ratio: f64,
    pub j_i: u32,
    pub j_o: u32,
    /// Position of the contact along outer edge `j_o`, in [0, 1].
    pub t: f64,
    /// `2·j_i·m − (2·j_o + 1)·n − s` at the reported indices (s = 0 when the
    /// outer polygon is not rotated by an integer code).
    pub mismatch: i64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RotatedSolution {
    pub base: ContactSolution,
    pub s: i64,
    /// s·π/(nm).
    pub alpha: f64,
}

fn check_index(what: &'static str, index: u32, bound: u32) -> Result<()> {
    if index < bound {
        Ok(())
    } else {
        Err(Error::IndexOutOfRange { what, index, bound })
    }
}

fn phi(n: u32) -> f64 {
    2.0 * PI / f64::from(n)
}

/// Rotation angle encoded by the integer code `s`.
pub fn code_angle(n: u32, m: u32, s: i64) -> f64 {
    s as f64 * PI / (f64::from(n) * f64::from(m))
}

/// Signed contact ratio for one index pair; may be below 1 or negative for
/// pairs that are not in contact.
pub fn pair_ratio(n: u32, m: u32, j_i: u32, j_o: u32, alpha: f64) -> Result<f64> {
    check_sides(n)?;
    check_sides(m)?;
    check_index("inner vertex", j_i, n)?;
    check_index("outer edge", j_o, m)?;
    let phase = f64::from(j_i) * phi(n) - (f64::from(j_o) + 0.5) * phi(m) - alpha;
    Ok(phase.cos() / (PI / f64::from(m)).cos())
}

/// Angular mismatch `2·j_i·m − (2·j_o + 1)·n` in units of π/(nm).
pub fn mismatch(n: u32, m: u32, j_i: u32, j_o: u32) -> i64 {
    let (n, m, j_i, j_o) = (i64::from(n), i64::from(m), i64::from(j_i), i64::from(j_o));
    2 * j_i * m - (2 * j_o + 1) * n
}

/// Representative of `k` modulo `modulus` in (−modulus/2, modulus/2].
fn centered(k: i64, modulus: i64) -> i64 {
    let r = k.rem_euclid(modulus);
    if 2 * r > modulus {
        r - modulus
    } else {
        r
    }
}

/// Edge parameter from the imaginary part of the contact equation,
/// `t·sin φ_m = (r_n/r_m)·sin Δ`, with Δ = j_i·φ_n − j_o·φ_m − α.
fn edge_parameter(m: u32, ratio: f64, delta: f64) -> f64 {
    let t = delta.sin() / (ratio * phi(m).sin());
    debug_assert!(
        (-1e-9..=1.0 + 1e-9).contains(&t),
        "edge parameter {t} escaped [0, 1]"
    );
    t.clamp(0.0, 1.0)
}

/// Tight solution with the outer polygon rotated by s·π/(nm).
///
/// The phases `2·j_i·m − (2·j_o + 1)·n − s` of all index pairs cover the
/// residue class of `−n − s` modulo `2·gcd(n, m)`, so the smallest reduced
/// phase is known up front. The contact pair is the lexicographically
/// smallest `(j_i, j_o)` attaining it; for each `j_i` at most one `j_o`
/// matches a given phase, which keeps the search linear in `n`.
pub fn tight_at_code(n: u32, m: u32, s: i64) -> Result<ContactSolution> {
    check_sides(n)?;
    check_sides(m)?;
    let (ni, mi) = (i64::from(n), i64::from(m));
    let g2 = 2 * i64::from(gcd(n, m));
    let r = (-ni - s).rem_euclid(g2);
    let reduced_abs = r.min(g2 - r);

    let mut best: Option<(u32, u32, i64)> = None;
    for target in [reduced_abs, -reduced_abs] {
        if let Some((j_i, j_o)) = first_pair_with_phase(n, m, target + s) {
            if best.is_none_or(|(bi, bo, _)| (j_i, j_o) < (bi, bo)) {
                best = Some((j_i, j_o, target));
            }
        }
    }
    let (j_i, j_o, reduced) = best.expect("every residue of the class is attained");
    let k = mismatch(n, m, j_i, j_o) - s;
    debug_assert_eq!(centered(k, 2 * ni * mi).abs(), reduced_abs);

    let unit = PI / (f64::from(n) * f64::from(m));
    let ratio = (reduced_abs as f64 * unit).cos() / (PI / f64::from(m)).cos();
    let delta = (reduced + ni) as f64 * unit;
    Ok(ContactSolution {
        n,
        m,
        ratio,
        j_i,
        j_o,
        t: edge_parameter(m, ratio, delta),
        mismatch: k,
    })
}

/// Smallest `j_i`, with its unique `j_o`, such that
/// `2·j_i·m − (2·j_o + 1)·n ≡ phase (mod 2nm)`.
fn first_pair_with_phase(n: u32, m: u32, phase: i64) -> Option<(u32, u32)> {
    let (ni, mi) = (i64::from(n), i64::from(m));
    (0..n).find_map(|j_i| {
        // 2·j_o·n ≡ 2·j_i·m − n − phase (mod 2nm)
        let c = 2 * i64::from(j_i) * mi - ni - phase;
        (c.rem_euclid(2 * ni) == 0).then(|| (j_i, (c / (2 * ni)).rem_euclid(mi) as u32))
    })
}

/// Tight solution for an arbitrary real rotation of the outer polygon.
pub fn tight_at_angle(n: u32, m: u32, alpha: f64) -> Result<ContactSolution> {
    check_sides(n)?;
    check_sides(m)?;
    let mut best: Option<(f64, u32, u32, f64)> = None;
    for j_i in 0..n {
        for j_o in 0..m {
            let delta = f64::from(j_i) * phi(n) - f64::from(j_o) * phi(m) - alpha;
            let c = (delta - 0.5 * phi(m)).cos();
            if best.is_none_or(|(b, ..)| c > b + TIE_TOLERANCE) {
                best = Some((c, j_i, j_o, delta));
            }
        }
    }
    let (c, j_i, j_o, delta) = best.expect("polygons have at least three sides");
    let ratio = c / (PI / f64::from(m)).cos();
    Ok(ContactSolution {
        n,
        m,
        ratio,
        j_i,
        j_o,
        t: edge_parameter(m, ratio, delta),
        mismatch: mismatch(n, m, j_i, j_o),
    })
}

pub fn tight_standard(n: u32, m: u32) -> Result<ContactSolution> {
    tight_at_code(n, m, 0)
}

/// Every index pair that attains the tight ratio for rotation code `s`.
pub fn contact_set(n: u32, m: u32, s: i64) -> Result<Vec<(u32, u32)>> {
    let tight = tight_at_code(n, m, s)?;
    let limit = tight.ratio - TIE_TOLERANCE;
    let alpha = code_angle(n, m, s);
    let mut set = Vec::new();
    for j_i in 0..n {
        for j_o in 0..m {
            if pair_ratio(n, m, j_i, j_o, alpha)? >= limit {
                set.push((j_i, j_o));
            }
        }
    }
    Ok(set)
}

/// Rotation code from the empirical rules for concentric pairs.
///
/// Odd `n` never rotates. For even `n`, `m` is folded into `[0, n/2]` by
/// periodicity in `m` (period `n`) and the mirror symmetry about `n/2`, then:
/// `0 ↦ 0`, `n/2 ↦ n/2`, odd `m ↦ gcd(n/2, m)`, even `m ↦ 0` when `n ≡ 2
/// (mod 4)` and `2·gcd(n/2, m/2)` when `n ≡ 0 (mod 4)`.
pub fn s_heuristic(n: u32, m: u32) -> Result<i64> {
    check_sides(n)?;
    check_sides(m)?;
    if n % 2 == 1 {
        return Ok(0);
    }
    let half = n / 2;
    let mut r = m % n;
    if r > half {
        r = n - r;
    }
    let s = if r == 0 {
        0
    } else if r == half {
        half
    } else if r % 2 == 1 {
        gcd(half, r)
    } else if n % 4 == 2 {
        0
    } else {
        2 * gcd(half, r / 2)
    };
    Ok(i64::from(s))
}

pub(crate) fn gcd(mut a: u32, mut b: u32) -> u32 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

pub(crate) fn lcm(a: u32, b: u32) -> u64 {
    u64::from(a) / u64::from(gcd(a, b)) * u64::from(b)
}

/// Tight solution with the outer polygon turned by the heuristic code.
pub fn tight_rotated(n: u32, m: u32) -> Result<RotatedSolution> {
    let s = s_heuristic(n, m)?;
    rotated_with_code(n, m, s)
}

pub fn rotated_with_code(n: u32, m: u32, s: i64) -> Result<RotatedSolution> {
    Ok(RotatedSolution {
        base: tight_at_code(n, m, s)?,
        s,
        alpha: code_angle(n, m, s),
    })
}

/// Best rotation found by scanning every integer code in `[0, 2·lcm(n, m))`.
///
/// The phase residues of all index pairs are collected once; for each code
/// the tight phase is the circular distance to the nearest residue. The
/// smallest code with the largest such distance wins.
pub fn tight_rotated_search(n: u32, m: u32) -> Result<RotatedSolution> {
    check_sides(n)?;
    check_sides(m)?;
    let period = 2 * i64::from(n) * i64::from(m);
    let mut residues: Vec<i64> = (0..n)
        .flat_map(|j_i| (0..m).map(move |j_o| mismatch(n, m, j_i, j_o).rem_euclid(period)))
        .collect();
    residues.sort_unstable();
    residues.dedup();

    let nearest = |s: i64| -> i64 {
        let s = s.rem_euclid(period);
        let idx = residues.partition_point(|&r| r < s);
        let above = residues.get(idx).copied().unwrap_or(residues[0] + period);
        let below = if idx == 0 {
            residues[residues.len() - 1] - period
        } else {
            residues[idx - 1]
        };
        (above - s).min(s - below)
    };

    let span = 2 * lcm(n, m) as i64;
    let mut best_s = 0;
    let mut best_gap = nearest(0);
    for s in 1..span {
        let gap = nearest(s);
        if gap > best_gap {
            best_gap = gap;
            best_s = s;
        }
    }
    rotated_with_code(n, m, best_s)
}

/// Geometric oracle: bisection on the outer circumradius until every vertex
/// of the unit inner polygon passes the half-plane containment test.
pub fn oracle_min_ratio(n: u32, m: u32, alpha: f64) -> Result<f64> {
    check_sides(n)?;
    check_sides(m)?;
    let inner = vertices(&PolygonSpec::new(n, 1.0)?);
    let fits = |rho: f64| -> Result<bool> {
        let outer = PolygonSpec::new(m, rho)?.with_rotation(alpha);
        Ok(inner.iter().all(|&v| contains(&outer, v, ORACLE_TOLERANCE)))
    };
    // a polygon of circumradius 1/2 cannot hold a point at distance 1, and
    // the m-gon whose incircle is the unit circle always holds the n-gon
    let mut lo = 0.5;
    let mut hi = 1.0 / (PI / f64::from(m)).cos() + 1e-9;
    debug_assert!(fits(hi)?);
    while hi - lo > ORACLE_TOLERANCE {
        let mid = 0.5 * (lo + hi);
        if fits(mid)? {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    Ok(hi)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct PrimePairRow {
    pub n: u32,
    pub m: u32,
    pub j_i: u32,
    pub j_o: u32,
    pub mismatch: i64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PrimePairTable {
    pub rows: Vec<PrimePairRow>,
    /// Rows whose mismatch is not ±1.
    pub violations: Vec<PrimePairRow>,
}

fn prime_rows(pairs: impl Iterator<Item = (u32, u32)>) -> Result<PrimePairTable> {
    let mut rows = Vec::new();
    for (n, m) in pairs {
        let sol = tight_standard(n, m)?;
        rows.push(PrimePairRow {
            n,
            m,
            j_i: sol.j_i,
            j_o: sol.j_o,
            mismatch: sol.mismatch,
        });
    }
    let violations = rows.iter().copied().filter(|r| r.mismatch.abs() != 1).collect();
    Ok(PrimePairTable { rows, violations })
}

/// Contact indices for adjacent odd primes `n < m ≤ p_max`, inner polygon the
/// smaller prime.
pub fn prime_pair_table(p_max: u32) -> Result<PrimePairTable> {
    if p_max < 5 {
        return Err(Error::Domain(format!("prime bound {p_max} is below 5")));
    }
    let odd = primes::odd_primes_up_to(p_max);
    prime_rows(odd.windows(2).map(|w| (w[0], w[1])))
}

/// As [`prime_pair_table`] with the roles swapped: the larger prime is inner.
pub fn prime_pair_table_descending(p_max: u32) -> Result<PrimePairTable> {
    if p_max < 5 {
        return Err(Error::Domain(format!("prime bound {p_max} is below 5")));
    }
    let odd = primes::odd_primes_up_to(p_max);
    prime_rows(odd.windows(2).map(|w| (w[1], w[0])))
}
