//! Deferred summation: sum the first `M` terms of `Σ log cos(π/g(n))`
//! explicitly and replace the rest by an asymptotic series in `1/n` whose
//! terms are incomplete ζ values.

use std::f64::consts::PI;

use super::log_cos::{coefficient, MAX_HALF_ORDER};
use super::zeta::{zeta_tail_with, DEFAULT_ZETA_TERMS};
use crate::error::{Error, Result};

/// `Σ_{n>M} Σ_j c_j n^{−p_j}` for `(p_j, c_j)` pairs.
pub fn deferred_tail(series: &[(u32, f64)], m: u32) -> Result<f64> {
    deferred_tail_with(series, m, DEFAULT_ZETA_TERMS)
}

pub(crate) fn deferred_tail_with(series: &[(u32, f64)], m: u32, zeta_terms: u32) -> Result<f64> {
    if m < 1 {
        return Err(Error::Domain("deferred summation needs M ≥ 1".into()));
    }
    if let Some(&(p, _)) = series.iter().find(|(p, _)| *p < 2) {
        return Err(Error::Domain(format!("power {p} gives a divergent tail")));
    }
    let mut sum = 0.0;
    // highest powers are smallest, add them first
    for &(p, c) in series.iter().rev() {
        if c != 0.0 {
            sum += c * zeta_tail_with(p, m, zeta_terms)?;
        }
    }
    Ok(sum)
}

fn mul_truncated(a: &[f64], b: &[f64], len: usize) -> Vec<f64> {
    let mut out = vec![0.0; len];
    for (i, &x) in a.iter().enumerate().take(len) {
        if x == 0.0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate().take(len - i) {
            out[i + j] += x * y;
        }
    }
    out
}

/// Expansion of `log cos(π/g(n))` in powers of `1/n`, for a polynomial
/// `g(n) = Σ_i g_i n^i` (coefficients in ascending order) of degree `d ≥ 1`.
///
/// Returns `(p, a_p)` for `p = 2d..=max_power`. With `x = 1/n`,
/// `π/g = π x^d q(x)` where `q = 1/(Σ_i g_{d−i} x^i)`, and the log-cos Taylor
/// series is composed with that.
pub fn log_cos_inverse_expansion(g: &[f64], max_power: u32) -> Result<Vec<(u32, f64)>> {
    let d = g.len().saturating_sub(1);
    if d == 0 || g[d] == 0.0 {
        return Err(Error::Domain("denominator must have degree ≥ 1".into()));
    }
    let len = max_power as usize + 1;
    let half = max_power as usize / (2 * d);
    if half > MAX_HALF_ORDER {
        return Err(Error::Domain(format!(
            "power {max_power} needs log-cos coefficient {half}, beyond {MAX_HALF_ORDER}"
        )));
    }

    let h: Vec<f64> = (0..=d).map(|i| g[d - i]).collect();
    let mut q = vec![0.0; len];
    q[0] = 1.0 / h[0];
    for k in 1..len {
        let acc: f64 = (1..=k.min(d)).map(|i| h[i] * q[k - i]).sum();
        q[k] = -acc / h[0];
    }

    // w = x^{2d} q², so that ε² = π² w
    let q2 = mul_truncated(&q, &q, len);
    let mut w = vec![0.0; len];
    for k in 2 * d..len {
        w[k] = q2[k - 2 * d];
    }

    let mut out = vec![0.0; len];
    let mut w_pow = w.clone();
    let pi2 = PI * PI;
    let mut pi_pow = pi2;
    for k in 1..=half {
        let c = coefficient(k)? * pi_pow;
        for (o, wp) in out.iter_mut().zip(&w_pow) {
            *o += c * wp;
        }
        w_pow = mul_truncated(&w_pow, &w, len);
        pi_pow *= pi2;
    }

    Ok((2 * d..len).map(|p| (p as u32, out[p])).collect())
}
