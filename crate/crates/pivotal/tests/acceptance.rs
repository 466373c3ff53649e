//! Acceptance suite: the eight checks that gate a release, one test per
//! criterion, each ending in a single PASS line (visible under
//! `cargo test --test acceptance -- --nocapture`).
//!
//! Reference values come from routes independent of the code under test:
//! brute-force enumeration, literal polynomial expansion, direct binomial
//! sums, and simulation.

use num::traits::{One, Zero};
use pivotal::allocation::{
    power_based_weights_with, sqrt_weights, PopulationEntry, PopulationTable,
};
use pivotal::combinatorics::{
    binomial, central_trinomial, next_central_trinomial, BigCount,
};
use pivotal::oracle::enumerate_pivot_probability;
use pivotal::power::{
    binary_power_asymptotic, binary_power_exact, ternary_power_asymptotic, ternary_power_exact,
    ternary_sum_via_trinomials, PowerConfig, Probability, Strategy, VotingScheme,
};

fn exact_rational(n: u64, scheme: VotingScheme) -> num::rational::Ratio<BigCount> {
    let cfg = PowerConfig::default();
    let result = match scheme {
        VotingScheme::Binary => binary_power_exact(n, &cfg),
        VotingScheme::Ternary => ternary_power_exact(n, &cfg),
    }
    .unwrap();
    match result.value {
        Probability::Exact(r) => r,
        Probability::Real(_) => unreachable!("exact path yields rationals"),
    }
}

/// Criterion 1: analytic exact power equals full enumeration as exact
/// rationals, zero tolerance, for every size the enumeration caps allow
/// the suite to demand.
#[test]
fn criterion_1_oracle_equivalence() {
    for n in 0..=20u64 {
        assert_eq!(
            exact_rational(n, VotingScheme::Binary),
            enumerate_pivot_probability(n, VotingScheme::Binary).unwrap(),
            "binary N = {n}"
        );
    }
    for n in 0..=13u64 {
        assert_eq!(
            exact_rational(n, VotingScheme::Ternary),
            enumerate_pivot_probability(n, VotingScheme::Ternary).unwrap(),
            "ternary N = {n}"
        );
    }
    println!(
        "ACCEPTANCE PASS 1: enumeration equals exact rationals \
         (binary N = 0..=20, ternary N = 0..=13, zero tolerance)"
    );
}

/// Criterion 2: the binomial double sum collapses to the two central
/// trinomial columns, exactly, for N = 1..=500.
#[test]
fn criterion_2_trinomial_identity() {
    for n in 1..=500u64 {
        let direct: BigCount = (0..=n)
            .map(|k| binomial(n, k as i64) * binomial(k, (k / 2) as i64))
            .sum();
        assert_eq!(
            direct,
            ternary_sum_via_trinomials(n),
            "identity failed at N = {n}"
        );
    }
    println!(
        "ACCEPTANCE PASS 2: sum of C(N,K)*C(K,floor(K/2)) equals the two \
         central trinomial columns exactly (N = 1..=500)"
    );
}

/// Criterion 3: the recurrence fast path reproduces literal polynomial
/// expansion for n = 0..=2000, exactly. The expansion here is maintained
/// incrementally and never calls the recurrence.
#[test]
fn criterion_3_fast_path_validation() {
    let mut row: Vec<BigCount> = vec![BigCount::one()];
    for n in 0..=2000u64 {
        if n > 0 {
            let mut next = vec![BigCount::zero(); row.len() + 2];
            for (i, c) in row.iter().enumerate() {
                next[i] += c;
                next[i + 1] += c;
                next[i + 2] += c;
            }
            row = next;
        }
        assert_eq!(central_trinomial(n), row[n as usize], "central at n = {n}");
        let expected_next = if n == 0 {
            BigCount::zero()
        } else {
            row[n as usize + 1].clone()
        };
        assert_eq!(
            next_central_trinomial(n),
            expected_next,
            "next-to-central at n = {n}"
        );
    }
    println!(
        "ACCEPTANCE PASS 3: recurrence equals polynomial expansion exactly \
         (n = 0..=2000)"
    );
}

/// Criterion 4: the square-root laws converge — quadrupling N shrinks the
/// relative error at N in {64, 256, 1024, 4096} for both schemes — and
/// exact ternary power decays with log-log slope −0.5 ± 0.005 over
/// N+1 in [10^3, 10^5].
#[test]
fn criterion_4_square_root_law() {
    let cfg = PowerConfig::default();
    let checkpoints = [64u64, 256, 1024, 4096, 16384];
    let err_binary: Vec<f64> = checkpoints
        .iter()
        .map(|&n| {
            let exact = binary_power_exact(n, &cfg).unwrap().value_f64();
            let asym = binary_power_asymptotic(n).unwrap().value_f64();
            (exact / asym - 1.0).abs()
        })
        .collect();
    let err_ternary: Vec<f64> = checkpoints
        .iter()
        .map(|&n| {
            let exact = ternary_power_exact(n, &cfg).unwrap().value_f64();
            let asym = ternary_power_asymptotic(n).unwrap().value_f64();
            (exact / asym - 1.0).abs()
        })
        .collect();
    for i in 0..4 {
        assert!(
            err_binary[i + 1] < err_binary[i],
            "binary err({}) = {} not below err({}) = {}",
            checkpoints[i + 1],
            err_binary[i + 1],
            checkpoints[i],
            err_binary[i]
        );
        assert!(
            err_ternary[i + 1] < err_ternary[i],
            "ternary err({}) = {} not below err({}) = {}",
            checkpoints[i + 1],
            err_ternary[i + 1],
            checkpoints[i],
            err_ternary[i]
        );
    }

    // Log-log slope of exact ternary power against N+1.
    let points = 21u64;
    let (mut xs, mut ys) = (Vec::new(), Vec::new());
    for i in 0..points {
        let t = i as f64 / (points - 1) as f64;
        let n_plus_1 = (1e3f64 * 1e2f64.powf(t)).round() as u64;
        let exact = ternary_power_exact(n_plus_1 - 1, &cfg).unwrap();
        xs.push((n_plus_1 as f64).ln());
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
    assert!(
        (slope + 0.5).abs() <= 0.005,
        "log-log slope {slope} outside -0.5 +/- 0.005"
    );

    println!(
        "ACCEPTANCE PASS 4: err(4N) < err(N) at N in {{64, 256, 1024, 4096}} \
         for both schemes; exact ternary log-log slope {slope:.6} within \
         -0.5 +/- 0.005"
    );
}

/// Criterion 5: the figure sweep at its defaults (populations 10^5 to 10^8,
/// 25 log-spaced points) keeps the square-root law within relative 1e-3 of
/// the computed power at every point. Driven through the real binary so the
/// shipped command is what is being accepted.
#[test]
fn criterion_5_figure_reproduction() {
    let output = std::process::Command::new(env!("CARGO_BIN_EXE_pivotal"))
        .args(["figure", "--format", "csv"])
        .output()
        .expect("figure command runs");
    assert!(output.status.success(), "figure exited nonzero");
    let stdout = String::from_utf8(output.stdout).unwrap();
    let mut lines = stdout.lines();
    assert_eq!(
        lines.next(),
        Some("population,scheme,method,power,approx,rel_dev"),
        "pinned CSV header"
    );
    let rows: Vec<&str> = lines.collect();
    assert_eq!(rows.len(), 25, "default point count");
    let mut saw_megaperson = false;
    for row in &rows {
        let fields: Vec<&str> = row.split(',').collect();
        assert_eq!(fields.len(), 6, "row: {row}");
        assert_eq!(fields[1], "ternary");
        let rel_dev: f64 = fields[5].parse().expect("rel_dev parses");
        assert!(
            rel_dev < 1e-3,
            "deviation {rel_dev} at population {} not below 1e-3",
            fields[0]
        );
        if fields[0] == "1000000" {
            saw_megaperson = true;
            assert_eq!(fields[4], "9.77205e-4", "square-root law at one million");
        }
    }
    assert!(saw_megaperson, "default grid includes population 10^6");
    println!(
        "ACCEPTANCE PASS 5: figure defaults (10^5..10^8, 25 points) keep \
         relative deviation below 1e-3 at every point"
    );
}

/// Criterion 6: the asymptotic constants themselves — sqrt(2/pi) and
/// sqrt(3/pi) to six significant digits, and their ratio sqrt(3/2) to 1e-6.
#[test]
fn criterion_6_asymptotic_constants() {
    let n = 1_000_000u64;
    let scale = ((n + 1) as f64).sqrt();
    let c_binary = binary_power_asymptotic(n).unwrap().value_f64() * scale;
    let c_ternary = ternary_power_asymptotic(n).unwrap().value_f64() * scale;
    assert!(
        (c_binary - 0.797885).abs() < 5e-7,
        "sqrt(2/pi) computed as {c_binary}"
    );
    assert!(
        (c_ternary - 0.977205).abs() < 5e-7,
        "sqrt(3/pi) computed as {c_ternary}"
    );
    let ratio = ternary_power_asymptotic(n).unwrap().value_f64()
        / binary_power_asymptotic(n).unwrap().value_f64();
    assert!(
        (ratio - 1.5f64.sqrt()).abs() < 1e-6,
        "scheme ratio {ratio} vs sqrt(3/2)"
    );
    println!(
        "ACCEPTANCE PASS 6: sqrt(2/pi) = 0.797885 and sqrt(3/pi) = 0.977205 \
         to 6 significant digits; scheme ratio equals sqrt(3/2) within 1e-6"
    );
}

/// Criterion 7: Monte Carlo lands within 4 standard errors of the exact
/// value at N = 10^4 (ternary, 10^6 samples) for at least 19 of 20 fixed
/// seeds.
#[test]
fn criterion_7_monte_carlo_consistency() {
    let exact = ternary_power_exact(10_000, &PowerConfig::default())
        .unwrap()
        .value_f64();
    let mut within = 0u32;
    for seed in 1..=20u64 {
        let est = pivotal::oracle::monte_carlo_pivot(10_000, VotingScheme::Ternary, 1_000_000, seed);
        if (est.mean - exact).abs() <= 4.0 * est.std_error {
            within += 1;
        }
    }
    assert!(
        within >= 19,
        "only {within}/20 seeds within 4 standard errors"
    );
    println!(
        "ACCEPTANCE PASS 7: Monte Carlo (N = 10^4, ternary, 10^6 samples) \
         within 4 standard errors for {within}/20 fixed seeds (need 19)"
    );
}

fn synthetic_table(rows: usize, pop_min: f64, pop_max: f64) -> PopulationTable {
    let entries = (0..rows)
        .map(|i| {
            let t = i as f64 / (rows - 1) as f64;
            PopulationEntry {
                name: format!("c{i:02}"),
                population: (pop_min * (pop_max / pop_min).powf(t)).round() as u64,
            }
        })
        .collect();
    PopulationTable { entries }
}

/// Criterion 8: allocation invariance. Binary- and ternary-derived weights
/// agree entrywise within 1e-12 under the forced-asymptotic method and
/// within relative 1e-3 under Auto; both agree with sqrt weights within
/// relative 1e-4.
#[test]
fn criterion_8_allocation_invariance() {
    let council = PopulationTable {
        entries: vec![
            PopulationEntry {
                name: "Malta".into(),
                population: 400_000,
            },
            PopulationEntry {
                name: "Germany".into(),
                population: 82_300_000,
            },
        ],
    };
    let synthetic = synthetic_table(27, 1e4, 1e8);
    let cfg = PowerConfig::default();

    for (label, table) in [("Malta/Germany", &council), ("27-row synthetic", &synthetic)] {
        let sqrt = sqrt_weights(table).weights();
        for strategy in [Strategy::ForceAsymptotic, Strategy::Auto] {
            let binary =
                power_based_weights_with(table, VotingScheme::Binary, strategy, &cfg)
                    .unwrap()
                    .weights();
            let ternary =
                power_based_weights_with(table, VotingScheme::Ternary, strategy, &cfg)
                    .unwrap()
                    .weights();
            for i in 0..binary.len() {
                match strategy {
                    Strategy::ForceAsymptotic => assert!(
                        (binary[i] - ternary[i]).abs() <= 1e-12,
                        "{label} entry {i}: forced-asymptotic schemes differ by {}",
                        (binary[i] - ternary[i]).abs()
                    ),
                    _ => assert!(
                        (binary[i] / ternary[i] - 1.0).abs() <= 1e-3,
                        "{label} entry {i}: Auto schemes differ relatively by {}",
                        (binary[i] / ternary[i] - 1.0).abs()
                    ),
                }
                for (scheme_label, weights) in [("binary", &binary), ("ternary", &ternary)] {
                    assert!(
                        (weights[i] / sqrt[i] - 1.0).abs() <= 1e-4,
                        "{label} entry {i}: {scheme_label} weight {} vs sqrt {}",
                        weights[i],
                        sqrt[i]
                    );
                }
            }
        }
    }
    println!(
        "ACCEPTANCE PASS 8: power-derived weights agree across schemes \
         (1e-12 forced-asymptotic, relative 1e-3 Auto) and with sqrt \
         weights (relative 1e-4) on both tables"
    );
}
