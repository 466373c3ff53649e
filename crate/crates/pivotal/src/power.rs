//! Voting power: the probability that one member's vote decides the outcome.
//!
//! Every function here answers the same question for an assembly of
//! `n_others` *other* members, each voting independently and uniformly at
//! random over the allowed options:
//!
//! * **binary** voting (yes/no, probability 1/2 each): the focal member is
//!   pivotal when the yes count among the others is `floor(n/2)` for even
//!   `n` — more generally, whenever their own vote tips the majority. The
//!   probability is `C(n, floor(n/2)) / 2^n`.
//! * **ternary** voting (yes/no/abstain, probability 1/3 each): the focal
//!   member is pivotal when switching their vote between yes and no changes
//!   whether yes outnumbers no, i.e. when the others' yes and no counts are
//!   equal or differ by one in yes's favor. Summing over abstention counts
//!   reduces the probability to two trinomial coefficients:
//!   `(t(n, 0) + t(n, 1)) / 3^n` where `t(n, k)` is the coefficient of
//!   `x^(n+k)` in `(x^2 + x + 1)^n`.
//!
//! Three evaluation methods are offered, tagged on every result:
//!
//! * [`MethodTag::ExactRational`] — arbitrary-precision rationals, the
//!   ground truth, refused above a configurable size cap;
//! * [`MethodTag::ExactFloat`] — float evaluation of the same exact
//!   expressions (no square-root law involved), good to ~13 significant
//!   digits up to assembly sizes around 10^8;
//! * [`MethodTag::Asymptotic`] — the square-root laws
//!   `sqrt(2/pi) / sqrt(n+1)` and `sqrt(3/pi) / sqrt(n+1)`, each carrying a
//!   quantitative `error_hint`.
//!
//! [`power`] (or [`power_with`]) picks between exact and asymptotic per a
//! [`Strategy`].

use num::rational::Ratio;
use num::traits::{One, Pow, ToPrimitive, Zero};
use std::fmt;
use thiserror::Error;

use crate::combinatorics::{binomial, central_binomial_ratio, central_trinomial_pair, ln_big, BigCount};

/// How each member of the assembly may vote.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum VotingScheme {
    /// Yes or no, each with probability 1/2.
    Binary,
    /// Yes, no, or abstain, each with probability 1/3.
    Ternary,
}

impl VotingScheme {
    /// Number of outcomes a single vote can take.
    pub fn outcomes(self) -> u64 {
        match self {
            VotingScheme::Binary => 2,
            VotingScheme::Ternary => 3,
        }
    }
}

impl fmt::Display for VotingScheme {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            VotingScheme::Binary => write!(f, "binary"),
            VotingScheme::Ternary => write!(f, "ternary"),
        }
    }
}

/// How a [`PowerResult`] was obtained.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum MethodTag {
    /// Arbitrary-precision rational arithmetic; no approximation at all.
    ExactRational,
    /// Floating-point evaluation of the exact expression. Not an asymptotic
    /// law: the only error is roundoff, around `1e-13` relative.
    ExactFloat,
    /// Square-root law; see the `error_hint` on the result.
    Asymptotic,
}

impl fmt::Display for MethodTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MethodTag::ExactRational => write!(f, "exact"),
            MethodTag::ExactFloat => write!(f, "exact-float"),
            MethodTag::Asymptotic => write!(f, "asymptotic"),
        }
    }
}

/// Which evaluation route [`power`] should take.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Strategy {
    /// Exact rational arithmetic up to a size threshold, asymptotic beyond.
    Auto,
    /// Exact rational arithmetic or a refusal; never approximate.
    ForceExact,
    /// The square-root law even at sizes where exact would be cheap.
    ForceAsymptotic,
}

/// A probability, either as an exact rational or as a float.
#[derive(Debug, Clone, PartialEq)]
pub enum Probability {
    /// Exact value as numerator/denominator in lowest terms.
    Exact(Ratio<BigCount>),
    /// Floating-point value.
    Real(f64),
}

impl Probability {
    /// The value as an `f64`. Exact rationals whose parts are far outside
    /// the `f64` range are converted through logarithms, so this does not
    /// degrade into `inf/inf` for big assemblies.
    pub fn to_f64(&self) -> f64 {
        match self {
            Probability::Real(x) => *x,
            Probability::Exact(r) => {
                if r.numer().is_zero() {
                    return 0.0;
                }
                // Both parts well inside f64 range: convert directly.
                if r.numer().bits() <= 1000 && r.denom().bits() <= 1000 {
                    r.numer().to_f64().unwrap() / r.denom().to_f64().unwrap()
                } else {
                    self.ln().exp()
                }
            }
        }
    }

    /// Natural logarithm of the value; `-inf` for zero.
    pub fn ln(&self) -> f64 {
        match self {
            Probability::Real(x) => x.ln(),
            Probability::Exact(r) => {
                if r.numer().is_zero() {
                    return f64::NEG_INFINITY;
                }
                ln_big(r.numer()) - ln_big(r.denom())
            }
        }
    }
}

/// Voting power of one member, with provenance.
#[derive(Debug, Clone, PartialEq)]
pub struct PowerResult {
    /// Number of *other* members in the assembly.
    pub n_others: u64,
    /// Voting scheme the assembly uses.
    pub scheme: VotingScheme,
    /// The pivot probability.
    pub value: Probability,
    /// How the value was computed.
    pub method: MethodTag,
    /// Quantitative accuracy statement, when the method is not exact:
    /// an upper bound on the relative deviation from the exact value.
    /// Always present for [`MethodTag::Asymptotic`].
    pub error_hint: Option<f64>,
}

impl PowerResult {
    /// The power as an `f64`; see [`Probability::to_f64`].
    pub fn value_f64(&self) -> f64 {
        self.value.to_f64()
    }

    /// Natural log of the power; see [`Probability::ln`].
    pub fn ln_value(&self) -> f64 {
        self.value.ln()
    }
}

/// Size limits for exact evaluation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PowerConfig {
    /// Hard cap for exact rational evaluation: above this, exact calls are
    /// refused rather than ground out.
    pub exact_cap: u64,
    /// Where [`Strategy::Auto`] switches from exact to asymptotic.
    pub exact_threshold: u64,
}

impl Default for PowerConfig {
    fn default() -> Self {
        PowerConfig {
            exact_cap: 1_000_000,
            exact_threshold: 5_000,
        }
    }
}

/// Errors from evaluation-route limits.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PowerError {
    /// Exact rational evaluation was asked for above the configured cap.
    /// Use the asymptotic or float route instead.
    #[error(
        "exact evaluation refused for {n_others} others (cap {cap}); \
         use the asymptotic or float route"
    )]
    ExactRefused { n_others: u64, cap: u64 },
    /// The square-root laws divide by sqrt(n) and are undefined for an
    /// assembly with no other members.
    #[error("asymptotic form is undefined for 0 others; the exact value there is 1")]
    AsymptoticUndefined,
}

/// Relative-error coefficient for the binary square-root law: the deviation
/// from exact is below `0.25 / n`. Calibrated empirically: `n * err` was
/// measured as 0.24995 at `n = 4096` and grows toward this bound; at small
/// `n` the bound is slack by design.
pub const ASYMPTOTIC_ERROR_COEFF_BINARY: f64 = 0.25;

/// Relative-error coefficient for the one-term ternary square-root law:
/// deviation below `0.0625 / n`. Measured `n * err` at `n = 4096`: 0.062479.
pub const ASYMPTOTIC_ERROR_COEFF_TERNARY: f64 = 0.0625;

/// Relative-error coefficient for the two-term ternary form: deviation
/// below `0.3125 / n`. Measured `n * err` at `n = 4096`: 0.31244. Note the
/// two-term form is *less* accurate than the one-term form with `n + 1`
/// under the root, which is why the latter is the default.
pub const ASYMPTOTIC_ERROR_COEFF_TERNARY_TWO_TERM: f64 = 0.3125;

/// Relative-error bound quoted on [`MethodTag::ExactFloat`] results.
/// Observed roundoff is around `1e-13`; the hint is stated conservatively.
pub const FLOAT_EVAL_ERROR_HINT: f64 = 1e-11;

fn check_cap(n_others: u64, config: &PowerConfig) -> Result<(), PowerError> {
    if n_others > config.exact_cap {
        return Err(PowerError::ExactRefused {
            n_others,
            cap: config.exact_cap,
        });
    }
    Ok(())
}

/// Exact binary power: `C(n, floor(n/2)) / 2^n` as a reduced rational.
///
/// Refused (not attempted) when `n_others` exceeds `config.exact_cap`.
pub fn binary_power_exact(
    n_others: u64,
    config: &PowerConfig,
) -> Result<PowerResult, PowerError> {
    check_cap(n_others, config)?;
    let numer = binomial(n_others, (n_others / 2) as i64);
    let denom = BigCount::one() << n_others;
    Ok(PowerResult {
        n_others,
        scheme: VotingScheme::Binary,
        value: Probability::Exact(Ratio::new(numer, denom)),
        method: MethodTag::ExactRational,
        error_hint: None,
    })
}

/// The exact numerator of the ternary power: the sum of the central and
/// next-to-central trinomial coefficients, `t(n, 0) + t(n, 1)`.
///
/// This is the count of others' vote patterns (out of `3^n`) in which the
/// focal member is pivotal. Both coefficients come from one recurrence
/// sweep.
///
/// # Panics
///
/// When `n_others == 0`; the reduction to trinomials starts at one other
/// member (for an empty assembly the power is simply 1).
pub fn ternary_sum_via_trinomials(n_others: u64) -> BigCount {
    assert!(
        n_others >= 1,
        "ternary_sum_via_trinomials requires at least one other member"
    );
    let (central, next) = central_trinomial_pair(n_others);
    // central + (next - central) / 2; the difference is always even.
    &central + ((next - &central) >> 1)
}

/// Exact ternary power: `(t(n, 0) + t(n, 1)) / 3^n` as a reduced rational.
///
/// For `n_others == 0` the member always decides alone, so the power is 1.
/// Refused when `n_others` exceeds `config.exact_cap`.
pub fn ternary_power_exact(
    n_others: u64,
    config: &PowerConfig,
) -> Result<PowerResult, PowerError> {
    check_cap(n_others, config)?;
    let value = if n_others == 0 {
        Ratio::one()
    } else {
        let numer = ternary_sum_via_trinomials(n_others);
        let denom = BigCount::from(3u32).pow(n_others);
        Ratio::new(numer, denom)
    };
    Ok(PowerResult {
        n_others,
        scheme: VotingScheme::Ternary,
        value: Probability::Exact(value),
        method: MethodTag::ExactRational,
        error_hint: None,
    })
}

/// Binary square-root law: `sqrt(2/pi) / sqrt(n + 1)`.
///
/// Undefined for `n_others == 0`. The `error_hint` is
/// [`ASYMPTOTIC_ERROR_COEFF_BINARY`]` / n`.
pub fn binary_power_asymptotic(n_others: u64) -> Result<PowerResult, PowerError> {
    if n_others == 0 {
        return Err(PowerError::AsymptoticUndefined);
    }
    let value = (2.0 / std::f64::consts::PI).sqrt() / ((n_others + 1) as f64).sqrt();
    Ok(PowerResult {
        n_others,
        scheme: VotingScheme::Binary,
        value: Probability::Real(value),
        method: MethodTag::Asymptotic,
        error_hint: Some(ASYMPTOTIC_ERROR_COEFF_BINARY / n_others as f64),
    })
}

/// Ternary square-root law, one-term form: `sqrt(3/pi) / sqrt(n + 1)`.
///
/// This is the default ternary approximation; with `n + 1` under the root
/// it is noticeably closer to exact than the two-term form. Undefined for
/// `n_others == 0`. The `error_hint` is
/// [`ASYMPTOTIC_ERROR_COEFF_TERNARY`]` / n`.
pub fn ternary_power_asymptotic(n_others: u64) -> Result<PowerResult, PowerError> {
    if n_others == 0 {
        return Err(PowerError::AsymptoticUndefined);
    }
    let value = (3.0 / std::f64::consts::PI).sqrt() / ((n_others + 1) as f64).sqrt();
    Ok(PowerResult {
        n_others,
        scheme: VotingScheme::Ternary,
        value: Probability::Real(value),
        method: MethodTag::Asymptotic,
        error_hint: Some(ASYMPTOTIC_ERROR_COEFF_TERNARY / n_others as f64),
    })
}

/// Ternary square-root law, two-term form:
/// `(1/2) * sqrt(3/pi) * (1/sqrt(n) + 1/sqrt(n + 1))`.
///
/// Kept for comparison; the one-term form is more accurate (see the
/// error-coefficient constants) and is what [`Strategy::ForceAsymptotic`]
/// uses. Undefined for `n_others == 0`.
pub fn ternary_power_asymptotic_two_term(n_others: u64) -> Result<PowerResult, PowerError> {
    if n_others == 0 {
        return Err(PowerError::AsymptoticUndefined);
    }
    let n = n_others as f64;
    let value = 0.5 * (3.0 / std::f64::consts::PI).sqrt() * (1.0 / n.sqrt() + 1.0 / (n + 1.0).sqrt());
    Ok(PowerResult {
        n_others,
        scheme: VotingScheme::Ternary,
        value: Probability::Real(value),
        method: MethodTag::Asymptotic,
        error_hint: Some(ASYMPTOTIC_ERROR_COEFF_TERNARY_TWO_TERM / n_others as f64),
    })
}

/// Binary power evaluated in floating point, exactly (no square-root law).
///
/// For even `n = 2m` the value is the central binomial ratio
/// `C(2m, m) / 4^m`; odd `n` adds one rational factor. Works for any `n`
/// (validated to ~13 digits out to `n` around `10^8`) and never refuses.
pub fn binary_power_float(n_others: u64) -> PowerResult {
    let m = n_others / 2;
    let mut value = central_binomial_ratio(m);
    if n_others % 2 == 1 {
        value *= (2 * m + 1) as f64 / (2 * m + 2) as f64;
    }
    PowerResult {
        n_others,
        scheme: VotingScheme::Binary,
        value: Probability::Real(value),
        method: MethodTag::ExactFloat,
        error_hint: Some(FLOAT_EVAL_ERROR_HINT),
    }
}

/// Full-period rectangle rule node count for the small-`n` quadrature.
/// Exact (up to roundoff) for integrands whose trigonometric degree is
/// below this, i.e. for `n + 1 < TERNARY_QUAD_PERIOD_NODES`.
const TERNARY_QUAD_PERIOD_NODES: u64 = 8192;

/// Switch point between the full-period rule and the truncated rule.
const TERNARY_QUAD_SWITCH: u64 = 4000;

/// Ternary power evaluated in floating point, exactly (no square-root law).
///
/// The others' yes-minus-no margin `S` is a sum of `n` independent steps
/// uniform on {-1, 0, +1}, so `P[S = j]` is an explicit integral of
/// `((1 + 2 cos t) / 3)^n * cos(j t)` over a period, and the power is
/// `P[S = 0] + P[S = 1]`. For `n` below [`TERNARY_QUAD_SWITCH`] a
/// full-period rectangle rule integrates such trigonometric polynomials
/// without truncation error; beyond it the integrand is a sharp peak at the
/// origin and a truncated rule over the peak (in log space, to avoid
/// underflow in the tails) takes over. Works for any `n` (validated to ~13
/// digits out to `n` around `10^8`) and never refuses.
pub fn ternary_power_float(n_others: u64) -> PowerResult {
    let value = if n_others == 0 {
        1.0
    } else if n_others <= TERNARY_QUAD_SWITCH {
        let m = TERNARY_QUAD_PERIOD_NODES;
        let mut sum = 0.0f64;
        for i in 0..m {
            let theta = 2.0 * std::f64::consts::PI * i as f64 / m as f64;
            let phi = (1.0 + 2.0 * theta.cos()) / 3.0;
            sum += phi.powi(n_others as i32) * (1.0 + theta.cos());
        }
        sum / m as f64
    } else {
        let n = n_others as f64;
        let t_star = 34.0 / n.sqrt();
        let intervals = 300u32;
        let h = t_star / intervals as f64;
        let integrand = |theta: f64| {
            let s = (theta / 2.0).sin();
            let ln_phi = (-4.0 / 3.0 * s * s).ln_1p();
            (n * ln_phi).exp() * (1.0 + theta.cos())
        };
        let mut sum = 0.5 * (integrand(0.0) + integrand(t_star));
        for i in 1..intervals {
            sum += integrand(i as f64 * h);
        }
        sum * h / std::f64::consts::PI
    };
    PowerResult {
        n_others,
        scheme: VotingScheme::Ternary,
        value: Probability::Real(value),
        method: MethodTag::ExactFloat,
        error_hint: Some(FLOAT_EVAL_ERROR_HINT),
    }
}

/// Exact power ([`MethodTag::ExactFloat`] has its own entry points; this
/// routes between [`MethodTag::ExactRational`] and
/// [`MethodTag::Asymptotic`]) for `n_others` others under `scheme`,
/// with limits from `config`.
///
/// * [`Strategy::Auto`]: exact up to `config.exact_threshold`, the
///   square-root law beyond (one-term for ternary).
/// * [`Strategy::ForceExact`]: exact or [`PowerError::ExactRefused`].
/// * [`Strategy::ForceAsymptotic`]: the square-root law, or
///   [`PowerError::AsymptoticUndefined`] for `n_others == 0`.
pub fn power_with(
    n_others: u64,
    scheme: VotingScheme,
    strategy: Strategy,
    config: &PowerConfig,
) -> Result<PowerResult, PowerError> {
    let exact = |n| match scheme {
        VotingScheme::Binary => binary_power_exact(n, config),
        VotingScheme::Ternary => ternary_power_exact(n, config),
    };
    let asymptotic = |n| match scheme {
        VotingScheme::Binary => binary_power_asymptotic(n),
        VotingScheme::Ternary => ternary_power_asymptotic(n),
    };
    match strategy {
        Strategy::ForceExact => exact(n_others),
        Strategy::ForceAsymptotic => asymptotic(n_others),
        Strategy::Auto => {
            if n_others <= config.exact_threshold {
                exact(n_others)
            } else {
                asymptotic(n_others)
            }
        }
    }
}

/// [`power_with`] under the default [`PowerConfig`] (exact up to 5000
/// others, exact refusals above one million).
pub fn power(
    n_others: u64,
    scheme: VotingScheme,
    strategy: Strategy,
) -> Result<PowerResult, PowerError> {
    power_with(n_others, scheme, strategy, &PowerConfig::default())
}
