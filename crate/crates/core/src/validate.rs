//! Grid campaigns checking the rotation rule against exhaustive search and
//! the closed-form ratios against the geometric oracle.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::circumscribe::{
    code_angle, oracle_min_ratio, s_heuristic, tight_at_code, tight_rotated_search,
};
use crate::error::{check_sides, Result};

/// A heuristic code is accepted when its ratio is within this of the best.
pub const HEURISTIC_TOLERANCE: f64 = 1e-10;

/// Allowed gap between the closed-form ratio and the bisection oracle.
pub const ORACLE_AGREEMENT: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct HeuristicCheck {
    pub n: u32,
    pub m: u32,
    pub s_heuristic: i64,
    pub s_search: i64,
    pub heuristic_ratio: f64,
    pub search_ratio: f64,
}

impl HeuristicCheck {
    pub fn is_discrepancy(&self) -> bool {
        self.heuristic_ratio - self.search_ratio > HEURISTIC_TOLERANCE
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct OracleCheck {
    pub n: u32,
    pub m: u32,
    pub s: i64,
    pub formula: f64,
    pub oracle: f64,
}

impl OracleCheck {
    pub fn deviation(&self) -> f64 {
        (self.formula - self.oracle).abs()
    }

    pub fn is_discrepancy(&self) -> bool {
        !(self.deviation() <= ORACLE_AGREEMENT)
    }
}

fn grid(max_n: u32) -> Result<Vec<(u32, u32)>> {
    check_sides(max_n)?;
    Ok((3..=max_n).flat_map(|n| (3..=max_n).map(move |m| (n, m))).collect())
}

/// `s_heuristic` against the exhaustive code search for all `3 ≤ n, m ≤ max_n`.
pub fn heuristic_campaign(max_n: u32) -> Result<Vec<HeuristicCheck>> {
    grid(max_n)?
        .into_par_iter()
        .map(|(n, m)| {
            let s = s_heuristic(n, m)?;
            let best = tight_rotated_search(n, m)?;
            Ok(HeuristicCheck {
                n,
                m,
                s_heuristic: s,
                s_search: best.s,
                heuristic_ratio: tight_at_code(n, m, s)?.ratio,
                search_ratio: best.base.ratio,
            })
        })
        .collect()
}

/// Closed-form ratio against bisection, unrotated and at the heuristic
/// rotation, for all `3 ≤ n, m ≤ max_n`. Two checks per pair, standard first.
pub fn oracle_campaign(max_n: u32) -> Result<Vec<OracleCheck>> {
    let per_pair: Vec<[OracleCheck; 2]> = grid(max_n)?
        .into_par_iter()
        .map(|(n, m)| {
            let check = |s: i64| -> Result<OracleCheck> {
                Ok(OracleCheck {
                    n,
                    m,
                    s,
                    formula: tight_at_code(n, m, s)?.ratio,
                    oracle: oracle_min_ratio(n, m, code_angle(n, m, s))?,
                })
            };
            Ok([check(0)?, check(s_heuristic(n, m)?)?])
        })
        .collect::<Result<_>>()?;
    Ok(per_pair.into_iter().flatten().collect())
}
