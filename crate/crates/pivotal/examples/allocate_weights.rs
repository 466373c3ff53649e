//! Square-root voting weights for a council of delegates.
//!
//! Each constituency sends one delegate; giving the delegate a weight
//! proportional to the square root of their population equalizes the
//! influence of individual citizens. The same weights fall out of taking
//! any per-citizen power measure and weighting each delegate by its
//! inverse — whether citizens vote yes/no or yes/no/abstain — which is the
//! invariance this example tabulates.
//!
//! Run with: cargo run --release --example allocate_weights

use pivotal::allocation::{invariance_report, load_population_table};
use std::io::Cursor;

fn main() {
    let csv = "\
name,population
Malta,400000
Cyprus,900000
Austria,8900000
Poland,38000000
Germany,82300000
";
    let table = load_population_table(Cursor::new(csv)).expect("well-formed table");
    let report = invariance_report(&table).expect("within exact-arithmetic caps");

    println!(
        "{:<10} {:>12}  {:>10}  {:>10}  {:>10}",
        "name", "population", "w_sqrt", "w_binary", "w_ternary"
    );
    for row in &report.rows {
        println!(
            "{:<10} {:>12}  {:>10.6}  {:>10.6}  {:>10.6}",
            row.name, row.population, row.weight_sqrt, row.weight_binary, row.weight_ternary
        );
    }

    println!();
    println!(
        "per-citizen power ratio ternary/binary: {:.6} everywhere (sqrt(3/2) = {:.6})",
        report.rows[0].power_ratio,
        (1.5f64).sqrt()
    );
    println!(
        "largest disagreement between any two weight columns: {:.2e}",
        report.max_deviation()
    );
    assert!(
        report.max_deviation() < 1e-6,
        "the three weight bases must agree"
    );

    // The ratio between two delegates' weights is the square root of the
    // ratio of their populations.
    let w = &report.rows;
    let germany_over_malta = w[4].weight_sqrt / w[0].weight_sqrt;
    println!(
        "Germany/Malta weight ratio: {:.4} = sqrt({:.2})",
        germany_over_malta,
        germany_over_malta * germany_over_malta
    );
}
