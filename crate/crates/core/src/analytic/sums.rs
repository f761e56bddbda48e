//! Partial-fraction ζ sums over `1/(n(n+1))^{2s}` and the prime-pair sums.
//!
//! With `a = 2s`,
//! `1/(n^a (n+1)^a) = Σ_{t=1}^{a} b_t [(−1)^t n^{−t} + (n+1)^{−t}]`,
//! `b_t = binom(2a − t − 1, a − 1)`. Summing over all `n ≥ 1`, or over even
//! `n` only, turns each `t` into ζ or η values. The divergent `t = 1` parts
//! cancel between the two halves.
//!
//! The binomial weights grow like `4^a` while the sums shrink like `2^{−2a}`
//! or faster, so the closed forms lose about `4a` bits to cancellation and
//! carry a rounding bound. The plain sums [`t_even`] and [`t_all`] avoid
//! that: a short head is added directly and the tail is expanded around the
//! centre of each factor pair, where every term is positive.

use crate::error::{Error, Result};
use crate::primes;

use std::f64::consts::LN_2;

use super::zeta::{hurwitz_tail, zeta_tail};

/// Terms summed directly before the tail expansion.
const HEAD: u64 = 32;

/// Terms kept in the tail expansion; the next one is below `2^{−12·TAIL_TERMS}`
/// of the tail.
const TAIL_TERMS: u32 = 10;

/// Largest `s` accepted by the T sums.
pub const MAX_S: u32 = 8;

/// A closed-form value with a bound on its accumulated rounding error.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ClosedForm {
    pub value: f64,
    pub roundoff: f64,
}

fn binomial(n: u64, k: u64) -> u128 {
    let k = k.min(n - k);
    (0..k).fold(1u128, |acc, i| acc * u128::from(n - i) / u128::from(i + 1))
}

/// Weights `b_t = binom(4s − t − 1, 2s − 1)` for `t = 1..=2s`.
pub fn partial_fraction_weights(s: u32) -> Vec<u128> {
    let a = 2 * u64::from(s);
    (1..=a).map(|t| binomial(2 * a - t - 1, a - 1)).collect()
}

fn check_s(s: u32) -> Result<()> {
    if (1..=MAX_S).contains(&s) {
        Ok(())
    } else {
        Err(Error::Domain(format!("s = {s} outside 1..={MAX_S}")))
    }
}

fn closed_form(s: u32, bracket: impl Fn(u32) -> Result<f64>) -> Result<ClosedForm> {
    check_s(s)?;
    let mut value = 0.0;
    let mut scale = 0.0;
    for (i, &b) in partial_fraction_weights(s).iter().enumerate() {
        let term = b as f64 * bracket(i as u32 + 1)?;
        value += term;
        scale += term.abs();
    }
    Ok(ClosedForm {
        value,
        roundoff: 4.0 * f64::EPSILON * scale,
    })
}

/// Closed form of `Σ_{k≥1} 1/((2k)(2k+1))^{2s}`.
pub fn t_even_closed_form(s: u32) -> Result<ClosedForm> {
    closed_form(s, |t| {
        // even t: ζ(t) − 1; odd t: η(t) − 1, with η(1) = log 2. Both are
        // formed from ζ(t) − 1 directly to avoid subtracting from 1.
        Ok(match t {
            1 => LN_2 - 1.0,
            _ if t % 2 == 0 => zeta_tail(t, 1)?,
            _ => {
                let f = 2f64.powi(1 - t as i32);
                (1.0 - f) * zeta_tail(t, 1)? - f
            }
        })
    })
}

/// Closed form of `Σ_{n≥1} 1/(n(n+1))^{2s}`.
pub fn t_all_closed_form(s: u32) -> Result<ClosedForm> {
    // [1 + (−1)^t] ζ(t) − 1, where the bracket vanishes at t = 1
    closed_form(s, |t| Ok(if t % 2 == 0 { 2.0 * zeta_tail(t, 1)? + 1.0 } else { -1.0 }))
}

/// `Σ_{n ≥ from, n ≡ from (mod step)} 1/(n(n+1))^{2s}`, summed until the
/// terms no longer register.
pub(crate) fn direct_tail(s: u32, from: u64, step: u64) -> f64 {
    let term = |n: u64| {
        let x = n as f64 * (n + 1) as f64;
        x.powi(-2 * s as i32)
    };
    let mut last = from;
    while term(last) > term(from) * 1e-18 {
        last += step;
    }
    let mut sum = 0.0;
    let mut n = last;
    loop {
        sum += term(n);
        if n == from {
            break;
        }
        n -= step;
    }
    sum
}

/// `Σ_{n > HEAD} (n(n+1))^{−a}` (all `n`) or `Σ_{k > HEAD} (2k(2k+1))^{−a}`
/// (even `n = 2k`).
///
/// With `x = n + ½`, `n(n+1) = x² − ¼`, so the term is
/// `x^{−2a} Σ_j binom(a+j−1, j) (4x²)^{−j}`. For even `n` the same holds with
/// `2k(2k+1) = 4y² − ¼`, `y = k + ¼`. Each power of `x` or `y` then sums to
/// a Hurwitz tail.
fn centred_tail(a: u32, even: bool) -> f64 {
    let (q, scale, inner) = if even {
        (HEAD as f64 + 1.25, 4f64.powi(-(a as i32)), 16f64)
    } else {
        (HEAD as f64 + 1.5, 1.0, 4.0)
    };
    let mut sum = 0.0;
    for j in (0..TAIL_TERMS).rev() {
        let weight = binomial(u64::from(a + j - 1), u64::from(j)) as f64 / inner.powi(j as i32);
        sum += weight * hurwitz_tail(2 * (a + j), q);
    }
    scale * sum
}

fn pronic_sum(s: u32, even: bool) -> Result<f64> {
    check_s(s)?;
    let a = 2 * s;
    let step = if even { 2 } else { 1 };
    let head: f64 = (1..=HEAD)
        .rev()
        .map(|k| {
            let n = step * k;
            (n as f64 * (n + 1) as f64).powi(-(a as i32))
        })
        .sum();
    Ok(centred_tail(a, even) + head)
}

/// `T_e(2s) = Σ_{k≥1} 1/((2k)^{2s} (2k+1)^{2s})`.
pub fn t_even(s: u32) -> Result<f64> {
    pronic_sum(s, true)
}

/// `T(2s) = Σ_{n≥1} 1/(n^{2s} (n+1)^{2s})`.
pub fn t_all(s: u32) -> Result<f64> {
    pronic_sum(s, false)
}

/// `T_o(2s) = T(2s) − T_e(2s)`, the sum over odd `n`.
pub fn t_odd(s: u32) -> Result<f64> {
    Ok(t_all(s)? - t_even(s)?)
}

/// `Σ_j 1/(p_j p_{j+1})^{2s}` over consecutive odd primes, using the cached
/// sieve. The omitted tail is below `10^{6(1−4s)}`, under `10^{−18}` already
/// at `s = 1`.
pub fn prime_pair_sum(s: u32) -> Result<f64> {
    prime_pair_sum_from(s, 0)
}

/// Like [`prime_pair_sum`] but skipping the first `skip` pairs.
pub(crate) fn prime_pair_sum_from(s: u32, skip: usize) -> Result<f64> {
    if s == 0 {
        return Err(Error::Domain("prime-pair sum needs s ≥ 1".into()));
    }
    let odd = &primes::cached()[1..];
    let e = -2 * s as i32;
    Ok(odd
        .windows(2)
        .skip(skip)
        .rev()
        .map(|w| (f64::from(w[0]) * f64::from(w[1])).powi(e))
        .sum())
}
