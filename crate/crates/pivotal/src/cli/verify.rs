//! Verification harness: holds analytic power values against the
//! enumeration and Monte Carlo oracles.
//!
//! The enumeration check takes the analytic side as a closure so the
//! harness itself stays testable: handing it a deliberately corrupted
//! implementation must flip the outcome to a failure naming the first bad
//! size. That sensitivity is pinned by a test below.

use num::rational::Ratio;
use thiserror::Error;

use crate::combinatorics::BigCount;
use crate::oracle::{enumerate_pivot_probability, monte_carlo_pivot, McEstimate, OracleError};
use crate::power::VotingScheme;

/// Why an enumeration check did not pass.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum VerifyError {
    /// The requested range exceeds the enumeration caps.
    #[error(transparent)]
    Refused(#[from] OracleError),
    /// The analytic value disagreed with brute force.
    #[error("first divergence at N = {n_others}: analytic {analytic} != enumerated {enumerated}")]
    Diverged {
        n_others: u64,
        analytic: String,
        enumerated: String,
    },
}

/// Compare `analytic(n)` against full enumeration for every
/// `n` in `0..=max_n`, as exact rationals with zero tolerance.
/// The error names the first divergent size.
pub fn check_enumeration(
    scheme: VotingScheme,
    max_n: u64,
    analytic: impl Fn(u64) -> Ratio<BigCount>,
) -> Result<(), VerifyError> {
    for n in 0..=max_n {
        let enumerated = enumerate_pivot_probability(n, scheme)?;
        let claimed = analytic(n);
        if claimed != enumerated {
            return Err(VerifyError::Diverged {
                n_others: n,
                analytic: claimed.to_string(),
                enumerated: enumerated.to_string(),
            });
        }
    }
    Ok(())
}

/// Outcome of one Monte Carlo agreement check.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct McCheck {
    pub estimate: McEstimate,
    pub expected: f64,
    pub sigmas: f64,
}

impl McCheck {
    /// True when the estimate falls within `sigmas` standard errors of the
    /// expected value.
    pub fn passed(&self) -> bool {
        (self.estimate.mean - self.expected).abs() <= self.sigmas * self.estimate.std_error
    }

    /// Observed absolute deviation of the estimate.
    pub fn deviation(&self) -> f64 {
        (self.estimate.mean - self.expected).abs()
    }

    /// The acceptance band `sigmas * std_error`.
    pub fn tolerance(&self) -> f64 {
        self.sigmas * self.estimate.std_error
    }
}

/// Run one Monte Carlo estimate and compare it with `expected`.
pub fn check_monte_carlo(
    scheme: VotingScheme,
    n_others: u64,
    samples: u64,
    seed: u64,
    sigmas: f64,
    expected: f64,
) -> McCheck {
    McCheck {
        estimate: monte_carlo_pivot(n_others, scheme, samples, seed),
        expected,
        sigmas,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::power::{binary_power_exact, ternary_power_exact, PowerConfig, Probability};
    use num::bigint::BigUint;

    fn exact_rational(n: u64, scheme: VotingScheme) -> Ratio<BigCount> {
        let cfg = PowerConfig::default();
        let r = match scheme {
            VotingScheme::Binary => binary_power_exact(n, &cfg),
            VotingScheme::Ternary => ternary_power_exact(n, &cfg),
        }
        .unwrap();
        match r.value {
            Probability::Exact(v) => v,
            Probability::Real(_) => unreachable!(),
        }
    }

    #[test]
    fn real_implementation_passes() {
        check_enumeration(VotingScheme::Binary, 12, |n| {
            exact_rational(n, VotingScheme::Binary)
        })
        .unwrap();
        check_enumeration(VotingScheme::Ternary, 8, |n| {
            exact_rational(n, VotingScheme::Ternary)
        })
        .unwrap();
    }

    #[test]
    fn harness_catches_an_off_by_one() {
        // A corrupted power function: one extra decisive pattern at N = 5.
        let corrupted = |n: u64| {
            let true_value = exact_rational(n, VotingScheme::Binary);
            if n == 5 {
                Ratio::new(
                    true_value.numer() + BigUint::from(1u32),
                    true_value.denom().clone(),
                )
            } else {
                true_value
            }
        };
        let err = check_enumeration(VotingScheme::Binary, 12, corrupted).unwrap_err();
        match err {
            VerifyError::Diverged { n_others, .. } => assert_eq!(n_others, 5),
            other => panic!("expected divergence, got {other:?}"),
        }
    }

    #[test]
    fn over_cap_range_is_refused() {
        let err = check_enumeration(VotingScheme::Ternary, 15, |n| {
            exact_rational(n, VotingScheme::Ternary)
        })
        .unwrap_err();
        assert!(matches!(err, VerifyError::Refused(_)));
    }

    #[test]
    fn monte_carlo_check_brackets_truth() {
        use num::traits::ToPrimitive;
        let truth = exact_rational(100, VotingScheme::Ternary);
        let truth = truth.numer().to_f64().unwrap() / truth.denom().to_f64().unwrap();
        let check = check_monte_carlo(VotingScheme::Ternary, 100, 100_000, 42, 4.0, truth);
        assert!(check.passed(), "deviation {} tolerance {}", check.deviation(), check.tolerance());
        // An absurd expectation must fail.
        let bad = check_monte_carlo(VotingScheme::Ternary, 100, 100_000, 42, 4.0, 0.5);
        assert!(!bad.passed());
    }
}
