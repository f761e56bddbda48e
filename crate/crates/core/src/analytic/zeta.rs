//! Riemann ζ at integer arguments, its tails, Dirichlet η and the prime ζ.

use std::f64::consts::{LN_2, PI};

use super::log_cos::{factorial, tangent_numbers, MAX_HALF_ORDER};
use crate::error::{Error, Result};

/// Terms summed explicitly before the Euler–Maclaurin remainder.
pub const DEFAULT_ZETA_TERMS: u32 = 10;

/// Number of Bernoulli correction terms in the Euler–Maclaurin remainder.
const EM_TERMS: usize = 8;

/// Bernoulli number `B_{2k}` for `1 ≤ k ≤ 17`, from
/// `T_{2k−1} = (−1)^{k−1} 2^{2k} (2^{2k} − 1) B_{2k} / (2k)`.
pub fn bernoulli_even(k: usize) -> f64 {
    assert!((1..=MAX_HALF_ORDER).contains(&k), "B_2k index {k} out of range");
    let t = tangent_numbers()[k - 1] as f64;
    let p = 4f64.powi(k as i32);
    let magnitude = 2.0 * k as f64 * t / (p * (p - 1.0));
    if k % 2 == 1 {
        magnitude
    } else {
        -magnitude
    }
}

/// `Σ_{n > m} n^{−t}` (the incomplete ζ tail) for integer `t ≥ 2`.
pub fn zeta_tail(t: u32, m: u32) -> Result<f64> {
    zeta_tail_with(t, m, DEFAULT_ZETA_TERMS)
}

/// As [`zeta_tail`], summing `explicit` terms before switching to the
/// Euler–Maclaurin remainder.
pub fn zeta_tail_with(t: u32, m: u32, explicit: u32) -> Result<f64> {
    if t < 2 {
        return Err(Error::Domain(format!("ζ({t}) diverges")));
    }
    let start = u64::from(m) + 1 + u64::from(explicit);
    let s = f64::from(t);

    // small terms first
    let mut sum = hurwitz_tail(t, start as f64);
    for n in (u64::from(m) + 1..start).rev() {
        sum += (n as f64).powf(-s);
    }
    Ok(sum)
}

/// `Σ_{k≥0} (q + k)^{−t}` by Euler–Maclaurin alone. Accurate to double
/// precision once `q` is a few times `t/(2π)` or more.
pub(crate) fn hurwitz_tail(t: u32, q: f64) -> f64 {
    let s = f64::from(t);
    let mut rem = q.powf(1.0 - s) / (s - 1.0) + 0.5 * q.powf(-s);
    // rising factorial s(s+1)…(s+2j−2), accumulated with 1/(2j)!
    let mut rising = s;
    let mut power = q.powf(-s - 1.0);
    for j in 1..=EM_TERMS {
        rem += bernoulli_even(j) / factorial(2 * j) as f64 * rising * power;
        rising *= (s + 2.0 * j as f64 - 1.0) * (s + 2.0 * j as f64);
        power /= q * q;
    }
    rem
}

/// ζ(t) for integer `t ≥ 2`. Even arguments use the Bernoulli closed form,
/// odd ones the tail summation above.
pub fn zeta_int(t: u32) -> Result<f64> {
    if t < 2 {
        return Err(Error::Domain(format!(
            "ζ({t}) is not evaluated; the pole at t = 1 is removed analytically"
        )));
    }
    if t.is_multiple_of(2) && (t / 2) as usize <= MAX_HALF_ORDER {
        let k = (t / 2) as usize;
        let two_pi = 2.0 * PI;
        return Ok(bernoulli_even(k).abs() * two_pi.powi(t as i32) / (2.0 * factorial(2 * k) as f64));
    }
    Ok(1.0 + zeta_tail(t, 1)?)
}

/// Dirichlet η(t) = (1 − 2^{1−t}) ζ(t), with η(1) = log 2.
pub fn dirichlet_eta(t: u32) -> Result<f64> {
    match t {
        0 => Err(Error::Domain("η(0) is not used".into())),
        1 => Ok(LN_2),
        _ => Ok((1.0 - 2f64.powi(1 - t as i32)) * zeta_int(t)?),
    }
}

fn mobius(mut k: u32) -> i32 {
    let mut sign = 1;
    let mut d = 2;
    while d * d <= k {
        if k.is_multiple_of(d) {
            k /= d;
            if k.is_multiple_of(d) {
                return 0;
            }
            sign = -sign;
        }
        d += 1;
    }
    if k > 1 {
        sign = -sign;
    }
    sign
}

/// Prime ζ function `P(s) = Σ_p p^{−s}` for integer `s ≥ 2`, from the Möbius
/// inversion `P(s) = Σ_k μ(k)/k · log ζ(k·s)`.
pub fn prime_zeta(s: u32) -> Result<f64> {
    if s < 2 {
        return Err(Error::Domain(format!("P({s}) diverges")));
    }
    // log ζ(ks) ≈ 2^{−ks}; stop once that is negligible against 2^{−s}
    let terms = 1 + 70 / s;
    let mut sum = 0.0;
    for k in (1..=terms).rev() {
        let mu = mobius(k);
        if mu == 0 {
            continue;
        }
        let log_zeta = zeta_tail(k * s, 1)?.ln_1p();
        sum += f64::from(mu) / f64::from(k) * log_zeta;
    }
    Ok(sum)
}
