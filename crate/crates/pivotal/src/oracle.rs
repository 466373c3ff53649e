//! Independent cross-checks for the analytic power formulas: brute-force
//! enumeration and Monte Carlo simulation.
//!
//! Nothing in this module touches the closed forms in [`crate::power`] —
//! that is the point. Both routes start from the definition of being
//! pivotal and nothing else, so agreement with the analytic values is
//! evidence, not circularity.
//!
//! The decision rule lives in exactly one place (`is_pivotal`): with the
//! focal member voting yes the motion passes, and with the focal member
//! voting no it fails. Equivalently, the others' yes count equals their no
//! count or exceeds it by exactly one.

use num::bigint::BigUint;
use num::rational::Ratio;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Binomial, Distribution};
use rayon::prelude::*;
use thiserror::Error;

use crate::combinatorics::BigCount;
use crate::power::VotingScheme;

/// Largest `n_others` accepted for binary enumeration (`2^22` outcomes).
pub const ENUM_CAP_BINARY: u64 = 22;

/// Largest `n_others` accepted for ternary enumeration (`3^14` outcomes).
pub const ENUM_CAP_TERNARY: u64 = 14;

/// Samples per deterministic Monte Carlo shard; see [`monte_carlo_pivot`].
const SHARD_SIZE: u64 = 1 << 16;

/// Errors from the enumeration oracle.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OracleError {
    /// Enumeration grows exponentially; sizes above the cap are refused.
    #[error("enumeration refused for {n_others} others (cap {cap})")]
    EnumerationRefused { n_others: u64, cap: u64 },
}

/// The definition of pivotal, stated once: among the other members' votes,
/// the motion passes if the focal member votes yes (`yes + 1 > no`) and
/// fails if the focal member votes no (`!(yes > no + 1)`).
fn is_pivotal(yes_others: u64, no_others: u64) -> bool {
    let passes_if_yes = yes_others + 1 > no_others;
    let fails_if_no = yes_others <= no_others + 1;
    passes_if_yes && fails_if_no
}

/// Pivot probability by literal enumeration of every possible vote pattern
/// of the other members.
///
/// Exponential in `n_others`; refused above [`ENUM_CAP_BINARY`] /
/// [`ENUM_CAP_TERNARY`]. The result is an exact rational: decisive
/// patterns over total patterns.
pub fn enumerate_pivot_probability(
    n_others: u64,
    scheme: VotingScheme,
) -> Result<Ratio<BigCount>, OracleError> {
    let cap = match scheme {
        VotingScheme::Binary => ENUM_CAP_BINARY,
        VotingScheme::Ternary => ENUM_CAP_TERNARY,
    };
    if n_others > cap {
        return Err(OracleError::EnumerationRefused { n_others, cap });
    }
    let base = scheme.outcomes();
    let total = base.pow(n_others as u32);
    let mut decisive = 0u64;
    for pattern in 0..total {
        // Decode the pattern as n_others base-`base` digits:
        // 0 = yes, 1 = no, 2 = abstain.
        let mut rest = pattern;
        let mut yes = 0u64;
        let mut no = 0u64;
        for _ in 0..n_others {
            match rest % base {
                0 => yes += 1,
                1 => no += 1,
                _ => {}
            }
            rest /= base;
        }
        if is_pivotal(yes, no) {
            decisive += 1;
        }
    }
    Ok(Ratio::new(BigUint::from(decisive), BigUint::from(total)))
}

/// A Monte Carlo estimate of a pivot probability.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct McEstimate {
    /// Fraction of sampled vote patterns in which the focal member was
    /// pivotal.
    pub mean: f64,
    /// Standard error of `mean`: `sqrt(mean * (1 - mean) / samples)`.
    pub std_error: f64,
    /// Number of samples drawn.
    pub samples: u64,
    /// The seed the estimate was produced from.
    pub seed: u64,
}

/// Pivot probability by simulation.
///
/// Only the yes/no margin matters, so each sample draws counts directly:
/// binary draws `yes ~ Binomial(n, 1/2)`; ternary draws
/// `yes ~ Binomial(n, 1/3)` and then `no ~ Binomial(n - yes, 1/2)` (no and
/// abstain are equally likely among the remaining members). No per-member
/// loop, so sample cost is flat in `n_others`.
///
/// **Determinism:** the result is a pure function of the arguments. Work is
/// split into fixed-size shards; shard `i` uses a `ChaCha8` generator
/// seeded with `seed` on stream `i`, and shard counts are summed in
/// integers. Shards run in parallel under the current rayon pool, and the
/// estimate is bit-for-bit identical whatever the thread count, including
/// single-threaded.
///
/// # Panics
///
/// When `samples == 0`; an estimate from nothing is not meaningful.
pub fn monte_carlo_pivot(
    n_others: u64,
    scheme: VotingScheme,
    samples: u64,
    seed: u64,
) -> McEstimate {
    assert!(samples >= 1, "monte_carlo_pivot requires at least one sample");
    let shards = samples.div_ceil(SHARD_SIZE);
    let decisive: u64 = (0..shards)
        .into_par_iter()
        .map(|shard| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            rng.set_stream(shard);
            let in_shard = SHARD_SIZE.min(samples - shard * SHARD_SIZE);
            let mut count = 0u64;
            match scheme {
                VotingScheme::Binary => {
                    let yes_dist = Binomial::new(n_others, 0.5).expect("valid parameters");
                    for _ in 0..in_shard {
                        let yes = yes_dist.sample(&mut rng);
                        if is_pivotal(yes, n_others - yes) {
                            count += 1;
                        }
                    }
                }
                VotingScheme::Ternary => {
                    let yes_dist = Binomial::new(n_others, 1.0 / 3.0).expect("valid parameters");
                    for _ in 0..in_shard {
                        let yes = yes_dist.sample(&mut rng);
                        let no = Binomial::new(n_others - yes, 0.5)
                            .expect("valid parameters")
                            .sample(&mut rng);
                        if is_pivotal(yes, no) {
                            count += 1;
                        }
                    }
                }
            }
            count
        })
        .sum();
    let mean = decisive as f64 / samples as f64;
    McEstimate {
        mean,
        std_error: (mean * (1.0 - mean) / samples as f64).sqrt(),
        samples,
        seed,
    }
}
