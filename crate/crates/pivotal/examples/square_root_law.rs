//! How fast voting power approaches its square-root law.
//!
//! Under both voting models the power of a member facing N others behaves
//! like c/sqrt(N+1): c = sqrt(2/pi) for yes/no voting and c = sqrt(3/pi)
//! when abstention is allowed. This example measures the decay exponent
//! from exact values and tabulates how quickly the relative error of the
//! law shrinks — N times the error settles near a constant, so quadrupling
//! the assembly quarters the error.
//!
//! Run with: cargo run --release --example square_root_law

use pivotal::power::{
    binary_power_asymptotic, binary_power_exact, ternary_power_asymptotic, ternary_power_exact,
    PowerConfig,
};

fn main() {
    let cfg = PowerConfig::default();

    println!("relative error of the square-root law, and N x error");
    println!(
        "{:>6}  {:>12} {:>9}  {:>12} {:>9}",
        "N", "binary", "N*err", "ternary", "N*err"
    );
    for n in [16u64, 64, 256, 1024, 4096] {
        let eb = {
            let exact = binary_power_exact(n, &cfg).unwrap().value_f64();
            let law = binary_power_asymptotic(n).unwrap().value_f64();
            (exact / law - 1.0).abs()
        };
        let et = {
            let exact = ternary_power_exact(n, &cfg).unwrap().value_f64();
            let law = ternary_power_asymptotic(n).unwrap().value_f64();
            (exact / law - 1.0).abs()
        };
        println!(
            "{:>6}  {:>12.3e} {:>9.5}  {:>12.3e} {:>9.5}",
            n,
            eb,
            eb * n as f64,
            et,
            et * n as f64
        );
    }
    println!("(N*err approaches 1/4 for binary and 1/16 for ternary voting)");

    // Fit the decay exponent of exact ternary power on a log-log grid.
    let points = 13;
    let (mut xs, mut ys) = (Vec::new(), Vec::new());
    for i in 0..points {
        let t = i as f64 / (points - 1) as f64;
        let n = (100f64 * 100f64.powf(t)).round() as u64;
        let exact = ternary_power_exact(n, &cfg).unwrap();
        xs.push(((n + 1) as f64).ln());
        ys.push(exact.ln_value());
    }
    let x_mean = xs.iter().sum::<f64>() / xs.len() as f64;
    let y_mean = ys.iter().sum::<f64>() / ys.len() as f64;
    let slope = xs
        .iter()
        .zip(&ys)
        .map(|(x, y)| (x - x_mean) * (y - y_mean))
        .sum::<f64>()
        / xs.iter().map(|x| (x - x_mean) * (x - x_mean)).sum::<f64>();
    println!();
    println!("decay exponent fitted over N+1 in [1e2, 1e4]: {slope:.5} (law: -0.5)");
    assert!((slope + 0.5).abs() < 0.01);

    // The constants themselves, recovered from large assemblies.
    let n = 10_000_000u64;
    let scale = ((n + 1) as f64).sqrt();
    println!(
        "sqrt(2/pi) recovered: {:.6}   sqrt(3/pi) recovered: {:.6}",
        binary_power_asymptotic(n).unwrap().value_f64() * scale,
        ternary_power_asymptotic(n).unwrap().value_f64() * scale,
    );
}
