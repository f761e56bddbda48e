//! Named cosine-product constants.
//!
//! Every product `∏ cos(π/g(n))` is evaluated as `exp Σ log cos(π/g(n))`:
//! the first terms explicitly, the rest through the log-cos Taylor series
//! with the inner sums over `g(n)^{−2s}` taken from ζ tails, closed-form
//! partial-fraction sums or prime sums.

use std::f64::consts::{FRAC_PI_6, PI};
use std::fmt;
use std::str::FromStr;
use std::sync::OnceLock;

use serde::{Deserialize, Serialize};

use super::deferred::{deferred_tail_with, log_cos_inverse_expansion};
use super::log_cos::{check_order, coefficient, ln_cos, MAX_HALF_ORDER};
use super::sums::{
    direct_tail, prime_pair_sum_from, t_all_closed_form, t_even_closed_form,
};
use super::zeta::{prime_zeta, zeta_tail_with, DEFAULT_ZETA_TERMS};
use super::{ConstantResult, SeriesConfig, Truncation};
use crate::error::{Error, Result};
use crate::primes;

/// Relative floor added to every error estimate for accumulated rounding.
const ROUNDOFF_FLOOR: f64 = 32.0 * f64::EPSILON;

/// Largest `s` whose inner sum comes from the partial-fraction closed form.
/// At `s = 3` the closed form already loses about 1e-14 absolute, which
/// the `π^6` weight lifts to 1e-13 in the logarithm; direct summation of the
/// residual after the explicit head is exact to rounding instead.
const PRODUCT_CLOSED_FORM_MAX_S: u32 = 2;

/// The omitted-term estimate is doubled: the omitted terms shrink at least
/// geometrically with ratio below one half for every admissible cutoff.
const GEOMETRIC_FACTOR: f64 = 2.0;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum ConstantName {
    /// `∏_{n≥3} cos(π/n)`
    KPrime,
    /// `∏_{p odd prime} cos(π/p)`
    KpPrime,
    /// `∏_{n≥2 even} cos(π/(n(n+1)))`
    Ce,
    /// `∏_{n≥2} cos(π/(n(n+1)))`
    CFull,
    /// `∏_{n≥3 odd} cos(π/(n(n+1)))`
    Co,
    /// `∏_{n≥1} cos(π/((2n+1)(n+1)))`
    P2piOdd,
    /// `∏_j cos(π/(p_j p_{j+1}))` over consecutive odd primes
    PPrimePairs,
    /// `∏_{n≥4 even} cos(π/(n(n+1)))`
    QuenchEven,
}

impl ConstantName {
    pub const ALL: [ConstantName; 8] = [
        ConstantName::KPrime,
        ConstantName::KpPrime,
        ConstantName::Ce,
        ConstantName::CFull,
        ConstantName::Co,
        ConstantName::P2piOdd,
        ConstantName::PPrimePairs,
        ConstantName::QuenchEven,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            ConstantName::KPrime => "K_prime",
            ConstantName::KpPrime => "K_p_prime",
            ConstantName::Ce => "C_e",
            ConstantName::CFull => "C_full",
            ConstantName::Co => "C_o",
            ConstantName::P2piOdd => "P_2pi_odd",
            ConstantName::PPrimePairs => "P_prime_pairs",
            ConstantName::QuenchEven => "quench_even",
        }
    }

    /// Configuration used by [`constant`].
    pub fn default_config(self) -> SeriesConfig {
        let taylor_order = match self {
            ConstantName::KPrime | ConstantName::KpPrime | ConstantName::P2piOdd => 30,
            _ => 12,
        };
        SeriesConfig {
            taylor_order,
            cutoff_m: 10,
            zeta_terms: DEFAULT_ZETA_TERMS,
        }
    }

    fn index(self) -> usize {
        Self::ALL.iter().position(|&c| c == self).unwrap()
    }
}

impl fmt::Display for ConstantName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for ConstantName {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Self::ALL
            .into_iter()
            .find(|c| c.as_str() == s)
            .ok_or_else(|| Error::UnknownConstant(s.to_string()))
    }
}

/// Value of a named constant under its default configuration. Results are
/// computed once per process.
pub fn constant(name: &str) -> Result<ConstantResult> {
    let name: ConstantName = name.parse()?;
    Ok(cached(name).clone())
}

pub(crate) fn cached(name: ConstantName) -> &'static ConstantResult {
    static CACHE: [OnceLock<ConstantResult>; 8] = [const { OnceLock::new() }; 8];
    CACHE[name.index()].get_or_init(|| {
        constant_with(name, &name.default_config())
            .expect("default configurations are valid")
    })
}

/// Value of a named constant under an explicit configuration.
pub fn constant_with(name: ConstantName, config: &SeriesConfig) -> Result<ConstantResult> {
    config.validate()?;
    let log = match name {
        ConstantName::KPrime => log_k_prime(config)?,
        ConstantName::KpPrime => log_kp_prime(config)?,
        ConstantName::Ce => log_c_even(config)?,
        ConstantName::CFull => log_c_full(config)?,
        ConstantName::Co => {
            let full = log_c_full(config)?;
            let even = log_c_even(config)?;
            LogValue {
                value: full.value - even.value,
                error: full.error + even.error,
                truncation: full.truncation,
            }
        }
        ConstantName::P2piOdd => log_two_pi(config)?,
        ConstantName::PPrimePairs => log_prime_pairs(config)?,
        ConstantName::QuenchEven => {
            let even = log_c_even(config)?;
            LogValue {
                value: even.value - FRAC_PI_6.cos().ln(),
                ..even
            }
        }
    };
    Ok(log.finish(name))
}

/// A logarithm with its absolute error bound.
struct LogValue {
    value: f64,
    error: f64,
    truncation: Truncation,
}

impl LogValue {
    fn finish(self, name: ConstantName) -> ConstantResult {
        let value = self.value.exp();
        ConstantResult {
            name: name.as_str().to_string(),
            value,
            truncation: self.truncation,
            error_estimate: value * (self.error.exp_m1() + ROUNDOFF_FLOOR),
        }
    }
}

fn pi_power(k: usize) -> f64 {
    PI.powi(2 * k as i32)
}

/// `Σ_{s ≤ S} c_s π^{2s} R(s)` together with the doubled first omitted term.
fn taylor_tail(order: u32, mut inner: impl FnMut(usize) -> Result<f64>) -> Result<(f64, f64)> {
    let half = order as usize / 2;
    let mut sum = 0.0;
    for k in (1..=half).rev() {
        sum += coefficient(k)? * pi_power(k) * inner(k)?;
    }
    let next = half + 1;
    let omitted = if next <= MAX_HALF_ORDER {
        (coefficient(next)? * pi_power(next) * inner(next)?).abs()
    } else {
        0.0
    };
    Ok((sum, GEOMETRIC_FACTOR * omitted))
}

fn log_k_prime(config: &SeriesConfig) -> Result<LogValue> {
    // n = 1, 2 are excluded from the product, so the tail starts at 3 or later
    let m = config.cutoff_m.max(2);
    let head: f64 = (3..=m).rev().map(|n| ln_cos(PI / f64::from(n))).sum();
    let (tail, omitted) = taylor_tail(config.taylor_order, |k| {
        zeta_tail_with(2 * k as u32, m, config.zeta_terms)
    })?;
    Ok(LogValue {
        value: head + tail,
        error: omitted,
        truncation: Truncation {
            taylor_order: Some(config.taylor_order),
            cutoff: Some(m),
            prime_bound: None,
        },
    })
}

fn log_kp_prime(config: &SeriesConfig) -> Result<LogValue> {
    let m = config.cutoff_m.max(2);
    let head_primes = primes::primes_up_to(m);
    let head: f64 = head_primes
        .iter()
        .skip(1)
        .rev()
        .map(|&p| ln_cos(PI / f64::from(p)))
        .sum();
    // Σ_{p > m} p^{−2k} = P(2k) − Σ_{p ≤ m} p^{−2k}
    let (tail, omitted) = taylor_tail(config.taylor_order, |k| {
        let e = -2 * k as i32;
        let partial: f64 = head_primes.iter().rev().map(|&p| f64::from(p).powi(e)).sum();
        Ok(prime_zeta(2 * k as u32)? - partial)
    })?;
    Ok(LogValue {
        value: head + tail,
        error: omitted,
        truncation: Truncation {
            taylor_order: Some(config.taylor_order),
            cutoff: Some(m),
            prime_bound: Some(m),
        },
    })
}

fn log_cos_over_pronic(n: u64) -> f64 {
    ln_cos(PI / (n as f64 * (n + 1) as f64))
}

fn pronic_power_sum(s: u32, from: u64, to: u64, step: u64) -> f64 {
    (from..=to)
        .rev()
        .filter(|n| (n - from).is_multiple_of(step))
        .map(|n| (n as f64 * (n + 1) as f64).powi(-2 * s as i32))
        .sum()
}

/// Shared recipe for the products over `n(n+1)`: explicit head over
/// `n = first..=last` stepping by `step`, Taylor tail with the inner sums
/// taken from the closed form minus the head for small `s`.
fn log_pronic_product(
    config: &SeriesConfig,
    first: u64,
    last: u64,
    step: u64,
    closed: fn(u32) -> Result<super::sums::ClosedForm>,
    closed_from: u64,
) -> Result<LogValue> {
    let head: f64 = (first..=last)
        .rev()
        .filter(|n| (n - first).is_multiple_of(step))
        .map(log_cos_over_pronic)
        .sum();
    let mut roundoff = 0.0;
    let (tail, omitted) = taylor_tail(config.taylor_order, |k| {
        let s = k as u32;
        if s <= PRODUCT_CLOSED_FORM_MAX_S {
            let cf = closed(s)?;
            roundoff += (coefficient(k)? * pi_power(k)).abs() * cf.roundoff;
            Ok(cf.value - pronic_power_sum(s, closed_from, last, step))
        } else {
            Ok(direct_tail(s, last + step, step))
        }
    })?;
    Ok(LogValue {
        value: head + tail,
        error: omitted + roundoff,
        truncation: Truncation {
            taylor_order: Some(config.taylor_order),
            cutoff: Some(config.cutoff_m),
            prime_bound: None,
        },
    })
}

fn log_c_even(config: &SeriesConfig) -> Result<LogValue> {
    let last = 2 * u64::from(config.cutoff_m);
    log_pronic_product(config, 2, last, 2, t_even_closed_form, 2)
}

fn log_c_full(config: &SeriesConfig) -> Result<LogValue> {
    // the n = 1 factor cos(π/2) is dropped; the closed form still includes it
    let last = u64::from(config.cutoff_m);
    log_pronic_product(config, 2, last, 1, t_all_closed_form, 1)
}

fn log_two_pi(config: &SeriesConfig) -> Result<LogValue> {
    let m = config.cutoff_m;
    let head: f64 = (1..=u64::from(m))
        .rev()
        .map(|n| ln_cos(PI / ((2 * n + 1) as f64 * (n + 1) as f64)))
        .sum();
    let order = config.taylor_order;
    let series = log_cos_inverse_expansion(&[1.0, 3.0, 2.0], order + 2)?;
    let (kept, dropped): (Vec<_>, Vec<_>) = series.into_iter().partition(|&(p, _)| p <= order);
    let tail = deferred_tail_with(&kept, m, config.zeta_terms)?;
    let omitted = dropped
        .iter()
        .map(|&(p, c)| Ok(c.abs() * zeta_tail_with(p, m, config.zeta_terms)?))
        .sum::<Result<f64>>()?;
    Ok(LogValue {
        value: head + tail,
        error: GEOMETRIC_FACTOR * omitted,
        truncation: Truncation {
            taylor_order: Some(order),
            cutoff: Some(m),
            prime_bound: None,
        },
    })
}

fn log_prime_pairs(config: &SeriesConfig) -> Result<LogValue> {
    let m = config.cutoff_m as usize;
    let odd = &primes::cached()[1..];
    let head: f64 = odd
        .windows(2)
        .take(m)
        .rev()
        .map(|w| ln_cos(PI / (f64::from(w[0]) * f64::from(w[1]))))
        .sum();
    let (tail, omitted) =
        taylor_tail(config.taylor_order, |k| prime_pair_sum_from(k as u32, m))?;
    // pairs beyond the sieve contribute below (10^6)^{−3}·π²/2
    let sieve_tail = PI * PI / 2.0 * f64::from(primes::CACHED_BOUND).powi(-3);
    Ok(LogValue {
        value: head + tail,
        error: omitted + sieve_tail,
        truncation: Truncation {
            taylor_order: Some(config.taylor_order),
            cutoff: Some(config.cutoff_m),
            prime_bound: Some(primes::CACHED_BOUND),
        },
    })
}

pub(crate) fn validate_order(order: u32) -> Result<()> {
    check_order(order)?;
    if order > 30 {
        return Err(Error::Domain(format!("Taylor order {order} exceeds 30")));
    }
    Ok(())
}
