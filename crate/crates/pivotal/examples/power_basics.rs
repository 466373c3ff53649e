//! Exact, floating-point, and asymptotic voting power side by side.
//!
//! For each assembly size the probability that one member's vote decides the
//! outcome is printed under both voting models, first as an exact rational
//! (small assemblies), then as the float evaluation and the square-root law
//! for sizes where exact arithmetic stops being the tool of choice.
//!
//! Run with: cargo run --release --example power_basics

use pivotal::power::{
    binary_power_float, power_with, ternary_power_float, PowerConfig, Probability, Strategy,
    VotingScheme,
};

fn main() {
    let cfg = PowerConfig::default();

    println!("exact power of one member among n others");
    println!("{:>6}  {:>12} {:>14}  {:>12} {:>14}", "n", "binary", "", "ternary", "");
    for n in [0u64, 1, 2, 3, 4, 8, 20, 100] {
        let mut cells = Vec::new();
        for scheme in [VotingScheme::Binary, VotingScheme::Ternary] {
            let result = power_with(n, scheme, Strategy::ForceExact, &cfg).unwrap();
            let float = result.value_f64();
            let rational = match &result.value {
                Probability::Exact(r) if n <= 8 => format!("{r}"),
                _ => String::from("..."),
            };
            cells.push(format!("{rational:>12} {float:>14.8e}"));
        }
        println!("{:>6}  {}  {}", n, cells[0], cells[1]);
    }

    println!();
    println!("large assemblies: float evaluation vs the square-root law");
    println!(
        "{:>10}  {:>14}  {:>14}  {:>10}",
        "n", "float", "sqrt-law", "rel_dev"
    );
    for n in [1_000u64, 10_000, 100_000, 1_000_000] {
        let float = ternary_power_float(n).value_f64();
        let law = power_with(n, VotingScheme::Ternary, Strategy::ForceAsymptotic, &cfg)
            .unwrap()
            .value_f64();
        println!(
            "{:>10}  {:>14.8e}  {:>14.8e}  {:>10.2e}",
            n,
            float,
            law,
            (float / law - 1.0).abs()
        );
    }

    println!();
    println!("Auto strategy picks the method by size:");
    for n in [5_000u64, 5_001] {
        let result = power_with(n, VotingScheme::Binary, Strategy::Auto, &cfg).unwrap();
        println!("  n = {:>5} -> {}", n, result.method);
    }

    // The two float routes agree with each other at the crossover.
    let b = binary_power_float(5_000).value_f64();
    let exact = power_with(5_000, VotingScheme::Binary, Strategy::ForceExact, &cfg)
        .unwrap()
        .value_f64();
    assert!((b / exact - 1.0).abs() < 1e-10);
}
