//! Taylor coefficients of `log cos ε`.
//!
//! `d/dε log cos ε = −tan ε`, so with the tangent numbers `T_{2k−1}`
//! (the coefficients of `tan x = Σ T_{2k−1} x^{2k−1} / (2k−1)!`) the series
//! is `log cos ε = −Σ_{k≥1} T_{2k−1} ε^{2k} / (2k)!`. The tangent numbers are
//! generated exactly in `u128`, which covers `k ≤ 17`.

use std::f64::consts::FRAC_PI_2;
use std::sync::OnceLock;

use crate::error::{Error, Result};

/// Largest `k` for which the coefficient of `ε^{2k}` is available.
pub const MAX_HALF_ORDER: usize = 17;

/// Tangent numbers `T_1, T_3, …, T_{2·MAX_HALF_ORDER−1}`.
pub fn tangent_numbers() -> &'static [u128; MAX_HALF_ORDER] {
    static TABLE: OnceLock<[u128; MAX_HALF_ORDER]> = OnceLock::new();
    TABLE.get_or_init(|| {
        // Brent & Zimmermann's in-place recurrence; entry k-1 ends as T_{2k−1}.
        let n = MAX_HALF_ORDER;
        let mut t = [0u128; MAX_HALF_ORDER];
        t[0] = 1;
        for k in 1..n {
            t[k] = k as u128 * t[k - 1];
        }
        for k in 1..n {
            for j in k..n {
                t[j] = (j - k) as u128 * t[j - 1] + (j - k + 2) as u128 * t[j];
            }
        }
        t
    })
}

pub(crate) fn factorial(n: usize) -> u128 {
    (1..=n as u128).product()
}

fn gcd(mut a: u128, mut b: u128) -> u128 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// `|c_k|` as a reduced fraction `(numerator, denominator)`, where
/// `log cos ε = Σ_k c_k ε^{2k}` and every `c_k` is negative.
pub fn coefficient_fraction(k: usize) -> Result<(u128, u128)> {
    if k == 0 || k > MAX_HALF_ORDER {
        return Err(Error::Domain(format!(
            "log-cos coefficient index {k} outside 1..={MAX_HALF_ORDER}"
        )));
    }
    let num = tangent_numbers()[k - 1];
    let den = factorial(2 * k);
    let g = gcd(num, den);
    Ok((num / g, den / g))
}

/// Signed coefficient `c_k` of `ε^{2k}`.
pub fn coefficient(k: usize) -> Result<f64> {
    let (num, den) = coefficient_fraction(k)?;
    Ok(-(num as f64 / den as f64))
}

/// Coefficients `c_1, …, c_{order/2}`.
pub fn coefficients(order: u32) -> Result<Vec<f64>> {
    check_order(order)?;
    (1..=(order / 2) as usize).map(coefficient).collect()
}

pub(crate) fn check_order(order: u32) -> Result<()> {
    if order < 2 || !order.is_multiple_of(2) || order as usize > 2 * MAX_HALF_ORDER {
        return Err(Error::Domain(format!(
            "Taylor order {order} must be even and within 2..={}",
            2 * MAX_HALF_ORDER
        )));
    }
    Ok(())
}

/// Truncated series `Σ_{k ≤ order/2} c_k ε^{2k}`.
pub fn log_cos_series(epsilon: f64, order: u32) -> Result<f64> {
    if !(epsilon.abs() < FRAC_PI_2) {
        return Err(Error::Domain(format!("|ε| = {} is not below π/2", epsilon.abs())));
    }
    let coeffs = coefficients(order)?;
    let e2 = epsilon * epsilon;
    // Horner in ε², then one more factor for the leading ε²
    let poly = coeffs.iter().rev().fold(0.0, |acc, c| acc * e2 + c);
    Ok(poly * e2)
}

/// `log cos x` evaluated as `log1p(−2 sin²(x/2))`, accurate for small `x`.
pub(crate) fn ln_cos(x: f64) -> f64 {
    (-2.0 * (0.5 * x).sin().powi(2)).ln_1p()
}
