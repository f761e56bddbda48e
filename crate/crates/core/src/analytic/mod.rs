//! Series evaluation of the cosine-product constants.

mod constants;
mod deferred;
mod log_cos;
mod sums;
mod zeta;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub use constants::{constant, constant_with, ConstantName};
pub use deferred::{deferred_tail, log_cos_inverse_expansion};
pub use log_cos::{
    coefficient as log_cos_coefficient, coefficient_fraction as log_cos_coefficient_fraction,
    log_cos_series, tangent_numbers, MAX_HALF_ORDER,
};
pub use sums::{
    partial_fraction_weights, prime_pair_sum, t_all, t_all_closed_form, t_even,
    t_even_closed_form, t_odd, ClosedForm,
};
pub use zeta::{
    bernoulli_even, dirichlet_eta, prime_zeta, zeta_int, zeta_tail, zeta_tail_with,
    DEFAULT_ZETA_TERMS,
};

/// Truncation parameters that produced a [`ConstantResult`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct Truncation {
    pub taylor_order: Option<u32>,
    pub cutoff: Option<u32>,
    pub prime_bound: Option<u32>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ConstantResult {
    pub name: String,
    pub value: f64,
    pub truncation: Truncation,
    /// Bound on the first omitted tail term plus accumulated rounding.
    pub error_estimate: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct SeriesConfig {
    /// Highest power of ε kept from the log-cos series (or of `1/n` for
    /// expansions in `1/n`). Even, within 2..=30.
    pub taylor_order: u32,
    /// Number of leading factors multiplied out explicitly.
    pub cutoff_m: u32,
    /// Explicit terms in each incomplete ζ evaluation.
    pub zeta_terms: u32,
}

impl SeriesConfig {
    pub fn validate(&self) -> Result<()> {
        constants::validate_order(self.taylor_order)?;
        if self.cutoff_m < 1 {
            return Err(Error::Domain("cutoff M must be at least 1".into()));
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn config_validation() {
        let ok = SeriesConfig { taylor_order: 12, cutoff_m: 10, zeta_terms: 10 };
        assert!(ok.validate().is_ok());
        for bad in [
            SeriesConfig { taylor_order: 13, ..ok },
            SeriesConfig { taylor_order: 0, ..ok },
            SeriesConfig { taylor_order: 32, ..ok },
            SeriesConfig { cutoff_m: 0, ..ok },
        ] {
            assert!(bad.validate().is_err(), "{bad:?}");
        }
    }

    #[test]
    fn names_round_trip() {
        for c in ConstantName::ALL {
            assert_eq!(c.as_str().parse::<ConstantName>().unwrap(), c);
        }
        assert_eq!(
            constant("K_double_prime"),
            Err(Error::UnknownConstant("K_double_prime".into()))
        );
    }
}
