//! Voting power for committees that vote yes/no or yes/no/abstain.
//!
//! A member of an assembly is *pivotal* when their single vote decides the
//! outcome. For an assembly of `N` other members this crate computes the
//! probability of being pivotal — the member's a-priori voting power — in two
//! settings:
//!
//! * **binary** voting: every other member votes yes or no with probability
//!   1/2 each, and the focal member is pivotal when the others are tied or
//!   one short of a tie;
//! * **ternary** voting: every other member votes yes, no, or abstain with
//!   probability 1/3 each, and the focal member is pivotal when flipping
//!   their own vote between yes and no changes whether the motion passes.
//!
//! Both probabilities decay like `1/sqrt(N)`, which is the basis of
//! square-root voting-weight allocation for councils of delegates
//! (the Penrose square-root law): giving each delegate a weight proportional
//! to the square root of their population equalizes the indirect power of
//! individual citizens. The [`allocation`] module computes such weights and
//! demonstrates that the choice of voting model (binary vs. ternary) does not
//! change them.
//!
//! # Examples
//!
//! The `examples/` directory is the best starting point; each example is a
//! small runnable program exercising one capability:
//!
//! * `power_basics` — exact, float, and asymptotic power for a range of
//!   assembly sizes: `cargo run --release --example power_basics`
//! * `trinomial_identity` — the trinomial-coefficient identity behind the
//!   ternary closed form: `cargo run --release --example trinomial_identity`
//! * `square_root_law` — measured decay rate and the quality of the
//!   `1/sqrt(N)` approximations: `cargo run --release --example square_root_law`
//! * `monte_carlo_check` — simulation cross-check of the closed forms:
//!   `cargo run --release --example monte_carlo_check`
//! * `allocate_weights` — square-root weights for a council and the
//!   invariance of power-based weights: `cargo run --release --example allocate_weights`
//!
//! A thin command-line wrapper over the same APIs is provided by the
//! `pivotal` binary; see the [`cli`] module or run `pivotal --help`.
//!
//! # Quick start
//!
//! ```
//! use pivotal::power::{power, Strategy, VotingScheme};
//!
//! // Exact power of one member facing 2 others under ternary voting: 5/9.
//! let p = power(2, VotingScheme::Ternary, Strategy::Auto).unwrap();
//! assert!((p.value_f64() - 5.0 / 9.0).abs() < 1e-15);
//! ```

pub mod allocation;
pub mod cli;
pub mod combinatorics;
pub mod oracle;
pub mod power;

pub use allocation::{
    load_population_table, sqrt_weights, InvarianceReport, PopulationTable, WeightBasis,
};
pub use combinatorics::{binomial, central_trinomial, log_binomial, trinomial, BigCount};
pub use oracle::{enumerate_pivot_probability, monte_carlo_pivot, McEstimate};
pub use power::{power, MethodTag, PowerConfig, PowerResult, Strategy, VotingScheme};
