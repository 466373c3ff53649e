//! Square-root voting weights for a council of delegates.
//!
//! If each delegate casts a bloc vote on behalf of a constituency, giving
//! the delegate of a constituency of `p` members a weight proportional to
//! `sqrt(p)` equalizes the influence of individual constituents: each
//! member's power at home decays like `1 / sqrt(p)`, and the two factors
//! cancel.
//!
//! [`sqrt_weights`] applies that rule directly. [`power_based_weights`]
//! instead computes each constituency member's pivot probability from first
//! principles (weight proportional to `1 / power`, normalized) — and lands
//! on the same weights whether the constituencies vote yes/no or
//! yes/no/abstain, because the two power laws differ only by a constant
//! factor that normalization removes. [`invariance_report`] tabulates the
//! three weight vectors side by side to make that invariance visible.
//!
//! Population figures are taken at face value: entries are whatever measure
//! of constituency size the caller puts in the table (residents, voters,
//! electorate on some reference date), and nothing here depends on which.

use std::collections::HashSet;
use std::io::BufRead;

use thiserror::Error;

use crate::power::{power_with, PowerConfig, PowerError, Strategy, VotingScheme};

/// One constituency: a display name and its population.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PopulationEntry {
    pub name: String,
    pub population: u64,
}

/// A parsed population table.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PopulationTable {
    pub entries: Vec<PopulationEntry>,
}

/// Errors from [`load_population_table`]. Line numbers count from 1 and
/// include the header line, matching what an editor shows.
#[derive(Debug, Error)]
pub enum TableError {
    #[error("failed to read table: {0}")]
    Io(#[from] std::io::Error),
    #[error("expected header 'name,population', found '{found}'")]
    MissingHeader { found: String },
    #[error("line {line}: expected 'name,population', found '{found}'")]
    MalformedRow { line: usize, found: String },
    #[error("line {line}: population '{value}' is not an unsigned integer")]
    InvalidPopulation { line: usize, value: String },
    #[error("line {line}: population of '{name}' must be at least 1")]
    ZeroPopulation { line: usize, name: String },
    #[error("line {line}: duplicate constituency name '{name}'")]
    DuplicateName { line: usize, name: String },
    #[error("table has a header but no data rows")]
    Empty,
}

/// Parse a population table from CSV with the exact header
/// `name,population`.
///
/// Strict by design: every line must have exactly two comma-separated
/// fields, names must be non-empty and unique after trimming, and
/// populations must be plain unsigned integers of at least 1 (no signs, no
/// thousands separators — a separator would read as an extra field anyway).
/// Errors carry the offending line number. CRLF line endings are accepted.
pub fn load_population_table(reader: impl BufRead) -> Result<PopulationTable, TableError> {
    let mut entries = Vec::new();
    let mut seen = HashSet::new();
    for (idx, line) in reader.lines().enumerate() {
        let line = line?;
        let line = line.trim_end_matches('\r');
        let lineno = idx + 1;
        if lineno == 1 {
            if line.trim() != "name,population" {
                return Err(TableError::MissingHeader {
                    found: line.to_string(),
                });
            }
            continue;
        }
        let fields: Vec<&str> = line.split(',').collect();
        if fields.len() != 2 {
            return Err(TableError::MalformedRow {
                line: lineno,
                found: line.to_string(),
            });
        }
        let name = fields[0].trim();
        if name.is_empty() {
            return Err(TableError::MalformedRow {
                line: lineno,
                found: line.to_string(),
            });
        }
        let value = fields[1].trim();
        if value.is_empty() || !value.bytes().all(|b| b.is_ascii_digit()) {
            return Err(TableError::InvalidPopulation {
                line: lineno,
                value: value.to_string(),
            });
        }
        let population: u64 = value.parse().map_err(|_| TableError::InvalidPopulation {
            line: lineno,
            value: value.to_string(),
        })?;
        if population == 0 {
            return Err(TableError::ZeroPopulation {
                line: lineno,
                name: name.to_string(),
            });
        }
        if !seen.insert(name.to_string()) {
            return Err(TableError::DuplicateName {
                line: lineno,
                name: name.to_string(),
            });
        }
        entries.push(PopulationEntry {
            name: name.to_string(),
            population,
        });
    }
    if entries.is_empty() {
        return Err(TableError::Empty);
    }
    Ok(PopulationTable { entries })
}

/// What a weight vector was derived from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum WeightBasis {
    /// Square root of population, directly.
    SqrtPopulation,
    /// Reciprocal of each member's pivot probability under binary voting.
    InversePowerBinary,
    /// Reciprocal of each member's pivot probability under ternary voting.
    InversePowerTernary,
}

impl WeightBasis {
    /// The voting scheme behind a power-based basis, if any.
    pub fn scheme(self) -> Option<VotingScheme> {
        match self {
            WeightBasis::SqrtPopulation => None,
            WeightBasis::InversePowerBinary => Some(VotingScheme::Binary),
            WeightBasis::InversePowerTernary => Some(VotingScheme::Ternary),
        }
    }
}

/// One constituency's share of the council's voting weight.
#[derive(Debug, Clone, PartialEq)]
pub struct WeightEntry {
    pub name: String,
    pub population: u64,
    pub weight: f64,
}

/// Normalized voting weights, in the input table's order.
#[derive(Debug, Clone, PartialEq)]
pub struct WeightAllocation {
    pub entries: Vec<WeightEntry>,
    pub basis: WeightBasis,
}

impl WeightAllocation {
    /// Just the weight column, in table order.
    pub fn weights(&self) -> Vec<f64> {
        self.entries.iter().map(|e| e.weight).collect()
    }
}

fn normalized(table: &PopulationTable, raw: Vec<f64>, basis: WeightBasis) -> WeightAllocation {
    // Accumulate the normalizer in ascending value order so the result is
    // bit-for-bit independent of row order (permuting the table permutes
    // the weights exactly).
    let mut ordered = raw.clone();
    ordered.sort_by(f64::total_cmp);
    let total: f64 = ordered.iter().sum();
    WeightAllocation {
        entries: table
            .entries
            .iter()
            .zip(raw)
            .map(|(e, w)| WeightEntry {
                name: e.name.clone(),
                population: e.population,
                weight: w / total,
            })
            .collect(),
        basis,
    }
}

/// Normalized weights proportional to the square root of each population.
///
/// Scale-invariant: multiplying every population by a common factor leaves
/// the weights unchanged.
pub fn sqrt_weights(table: &PopulationTable) -> WeightAllocation {
    let raw = table
        .entries
        .iter()
        .map(|e| (e.population as f64).sqrt())
        .collect();
    normalized(table, raw, WeightBasis::SqrtPopulation)
}

/// Normalized weights proportional to `1 / power(p - 1, scheme)`: the
/// reciprocal of a constituency member's pivot probability among the other
/// `p - 1` members, evaluated with the given strategy and limits.
///
/// Note [`Strategy::ForceAsymptotic`] fails for a constituency of one
/// (there is no asymptotic value at zero others); [`Strategy::Auto`]
/// handles it exactly.
pub fn power_based_weights_with(
    table: &PopulationTable,
    scheme: VotingScheme,
    strategy: Strategy,
    config: &PowerConfig,
) -> Result<WeightAllocation, PowerError> {
    let raw = table
        .entries
        .iter()
        .map(|e| Ok(1.0 / power_with(e.population - 1, scheme, strategy, config)?.value_f64()))
        .collect::<Result<Vec<f64>, PowerError>>()?;
    let basis = match scheme {
        VotingScheme::Binary => WeightBasis::InversePowerBinary,
        VotingScheme::Ternary => WeightBasis::InversePowerTernary,
    };
    Ok(normalized(table, raw, basis))
}

/// [`power_based_weights_with`] under [`Strategy::Auto`] and the default
/// limits: exact pivot probabilities for small constituencies, the
/// square-root law for large ones.
pub fn power_based_weights(
    table: &PopulationTable,
    scheme: VotingScheme,
) -> Result<WeightAllocation, PowerError> {
    power_based_weights_with(table, scheme, Strategy::Auto, &PowerConfig::default())
}

/// One constituency's powers and weights under all three bases.
#[derive(Debug, Clone, PartialEq)]
pub struct InvarianceRow {
    pub name: String,
    pub population: u64,
    /// Pivot probability of one constituency member, binary voting.
    pub binary_power: f64,
    /// Pivot probability of one constituency member, ternary voting.
    pub ternary_power: f64,
    /// `ternary_power / binary_power`; approaches `sqrt(3/2)` for large
    /// populations.
    pub power_ratio: f64,
    pub weight_sqrt: f64,
    pub weight_binary: f64,
    pub weight_ternary: f64,
}

/// Side-by-side weight vectors demonstrating that the basis does not
/// matter.
#[derive(Debug, Clone, PartialEq)]
pub struct InvarianceReport {
    pub rows: Vec<InvarianceRow>,
    /// Largest |binary − ternary| weight difference over all rows.
    pub max_dev_binary_ternary: f64,
    /// Largest |sqrt − binary| weight difference over all rows.
    pub max_dev_sqrt_binary: f64,
    /// Largest |sqrt − ternary| weight difference over all rows.
    pub max_dev_sqrt_ternary: f64,
}

impl InvarianceReport {
    /// The largest entry deviation between any pair of weight bases.
    pub fn max_deviation(&self) -> f64 {
        self.max_dev_binary_ternary
            .max(self.max_dev_sqrt_binary)
            .max(self.max_dev_sqrt_ternary)
    }
}

/// Per-constituency pivot probabilities under both schemes, their ratio,
/// and all three weight vectors (power bases under [`Strategy::Auto`] with
/// the given limits), with maximum pairwise weight deviations.
pub fn invariance_report_with(
    table: &PopulationTable,
    config: &PowerConfig,
) -> Result<InvarianceReport, PowerError> {
    let sqrt = sqrt_weights(table).weights();
    let binary = power_based_weights_with(table, VotingScheme::Binary, Strategy::Auto, config)?
        .weights();
    let ternary = power_based_weights_with(table, VotingScheme::Ternary, Strategy::Auto, config)?
        .weights();
    let rows: Vec<InvarianceRow> = table
        .entries
        .iter()
        .enumerate()
        .map(|(i, e)| {
            let n_others = e.population - 1;
            let pb = power_with(n_others, VotingScheme::Binary, Strategy::Auto, config)?
                .value_f64();
            let pt = power_with(n_others, VotingScheme::Ternary, Strategy::Auto, config)?
                .value_f64();
            Ok(InvarianceRow {
                name: e.name.clone(),
                population: e.population,
                binary_power: pb,
                ternary_power: pt,
                power_ratio: pt / pb,
                weight_sqrt: sqrt[i],
                weight_binary: binary[i],
                weight_ternary: ternary[i],
            })
        })
        .collect::<Result<_, PowerError>>()?;
    let max_abs = |a: &[f64], b: &[f64]| {
        a.iter()
            .zip(b)
            .map(|(x, y)| (x - y).abs())
            .fold(0.0f64, f64::max)
    };
    Ok(InvarianceReport {
        max_dev_binary_ternary: max_abs(&binary, &ternary),
        max_dev_sqrt_binary: max_abs(&sqrt, &binary),
        max_dev_sqrt_ternary: max_abs(&sqrt, &ternary),
        rows,
    })
}

/// [`invariance_report_with`] under the default limits.
pub fn invariance_report(table: &PopulationTable) -> Result<InvarianceReport, PowerError> {
    invariance_report_with(table, &PowerConfig::default())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn table(rows: &[(&str, u64)]) -> PopulationTable {
        PopulationTable {
            entries: rows
                .iter()
                .map(|(name, population)| PopulationEntry {
                    name: name.to_string(),
                    population: *population,
                })
                .collect(),
        }
    }

    #[test]
    fn parses_well_formed_csv() {
        let csv = "name,population\nMalta,400000\nGermany,82300000\n";
        let t = load_population_table(csv.as_bytes()).unwrap();
        assert_eq!(t.entries.len(), 2);
        assert_eq!(t.entries[0].name, "Malta");
        assert_eq!(t.entries[0].population, 400_000);
        assert_eq!(t.entries[1].name, "Germany");
        assert_eq!(t.entries[1].population, 82_300_000);
    }

    #[test]
    fn parses_crlf_and_padding() {
        let csv = "name,population\r\n Malta , 400000 \r\nGermany,82300000";
        let t = load_population_table(csv.as_bytes()).unwrap();
        assert_eq!(t.entries[0].name, "Malta");
        assert_eq!(t.entries[0].population, 400_000);
    }

    #[test]
    fn rejects_bad_tables() {
        let wrong_header = load_population_table("country,people\nMalta,400000\n".as_bytes());
        assert!(matches!(wrong_header, Err(TableError::MissingHeader { .. })));

        let three_fields = load_population_table("name,population\nMalta,400,000\n".as_bytes());
        assert!(
            matches!(three_fields, Err(TableError::MalformedRow { line: 2, .. })),
            "thousands separators must not parse"
        );

        let bad_number = load_population_table("name,population\nMalta,4e5\n".as_bytes());
        assert!(matches!(
            bad_number,
            Err(TableError::InvalidPopulation { line: 2, .. })
        ));

        let negative = load_population_table("name,population\nMalta,-4\n".as_bytes());
        assert!(matches!(
            negative,
            Err(TableError::InvalidPopulation { line: 2, .. })
        ));

        let zero = load_population_table("name,population\nMalta,0\n".as_bytes());
        assert!(matches!(zero, Err(TableError::ZeroPopulation { line: 2, .. })));

        let dup = load_population_table("name,population\nMalta,400000\nMalta,5\n".as_bytes());
        assert!(matches!(dup, Err(TableError::DuplicateName { line: 3, .. })));

        let empty = load_population_table("name,population\n".as_bytes());
        assert!(matches!(empty, Err(TableError::Empty)));

        let blank_name = load_population_table("name,population\n ,5\n".as_bytes());
        assert!(matches!(
            blank_name,
            Err(TableError::MalformedRow { line: 2, .. })
        ));
    }

    #[test]
    fn error_messages_name_the_line() {
        let err =
            load_population_table("name,population\nMalta,400000\nGermany,eighty\n".as_bytes())
                .unwrap_err();
        assert!(err.to_string().contains("line 3"), "got: {err}");
    }

    #[test]
    fn sqrt_weights_match_known_council() {
        let t = table(&[("Malta", 400_000), ("Germany", 82_300_000)]);
        let alloc = sqrt_weights(&t);
        assert_eq!(alloc.basis, WeightBasis::SqrtPopulation);
        let w = alloc.weights();
        assert!((w[0] - 0.065_172_103_969_626_62).abs() < 1e-15);
        assert!((w[1] - 0.934_827_896_030_373_3).abs() < 1e-15);
        assert!((w[1] / w[0] - 205.75f64.sqrt()).abs() < 1e-12);
        assert!((w[0] + w[1] - 1.0).abs() < 1e-15);
        assert_eq!(alloc.entries[0].name, "Malta");
        assert_eq!(alloc.entries[1].population, 82_300_000);
    }

    #[test]
    fn sqrt_weights_are_scale_invariant() {
        let a = sqrt_weights(&table(&[("a", 100), ("b", 400)]));
        let b = sqrt_weights(&table(&[("a", 400), ("b", 1600)]));
        assert_eq!(a.weights(), b.weights());
        assert!((a.weights()[0] - 1.0 / 3.0).abs() < 1e-15);
        assert!((a.weights()[1] - 2.0 / 3.0).abs() < 1e-15);
    }

    #[test]
    fn equal_populations_split_evenly() {
        let w = sqrt_weights(&table(&[("a", 777), ("b", 777)])).weights();
        assert_eq!(w, vec![0.5, 0.5]);
    }

    #[test]
    fn permuting_rows_permutes_weights() {
        let forward = table(&[("a", 400_000), ("b", 7_000_000), ("c", 82_300_000)]);
        let reversed = table(&[("c", 82_300_000), ("b", 7_000_000), ("a", 400_000)]);
        for scheme in [VotingScheme::Binary, VotingScheme::Ternary] {
            let f = power_based_weights(&forward, scheme).unwrap().weights();
            let r = power_based_weights(&reversed, scheme).unwrap().weights();
            assert_eq!(f[0], r[2]);
            assert_eq!(f[1], r[1]);
            assert_eq!(f[2], r[0]);
        }
        let f = sqrt_weights(&forward).weights();
        let r = sqrt_weights(&reversed).weights();
        assert_eq!(f[0], r[2]);
    }

    #[test]
    fn power_weights_approach_sqrt_weights() {
        let t = table(&[("small", 101), ("large", 401)]);
        let sqrt = sqrt_weights(&t).weights();
        for scheme in [VotingScheme::Binary, VotingScheme::Ternary] {
            let pw = power_based_weights(&t, scheme).unwrap().weights();
            for i in 0..2 {
                assert!(
                    (pw[i] / sqrt[i] - 1.0).abs() < 1e-2,
                    "{scheme} weight {i}: {} vs {}",
                    pw[i],
                    sqrt[i]
                );
            }
        }
    }

    #[test]
    fn single_constituency_gets_full_weight() {
        let t = table(&[("alone", 1)]);
        assert_eq!(sqrt_weights(&t).weights(), vec![1.0]);
        for scheme in [VotingScheme::Binary, VotingScheme::Ternary] {
            assert_eq!(power_based_weights(&t, scheme).unwrap().weights(), vec![1.0]);
        }
        // The asymptotic law has no value at zero others, so forcing it
        // must fail rather than improvise.
        let forced = power_based_weights_with(
            &t,
            VotingScheme::Binary,
            Strategy::ForceAsymptotic,
            &PowerConfig::default(),
        );
        assert_eq!(forced.unwrap_err(), PowerError::AsymptoticUndefined);
    }

    #[test]
    fn weights_sum_to_one() {
        let t = table(&[("a", 3), ("b", 5_000), ("c", 412_345), ("d", 99_999_999)]);
        let sum: f64 = sqrt_weights(&t).weights().iter().sum();
        assert!((sum - 1.0).abs() < 1e-12);
        for scheme in [VotingScheme::Binary, VotingScheme::Ternary] {
            let sum: f64 = power_based_weights(&t, scheme).unwrap().weights().iter().sum();
            assert!((sum - 1.0).abs() < 1e-12, "{scheme}");
        }
    }

    #[test]
    fn invariance_report_on_large_council() {
        let t = table(&[("Malta", 400_000), ("Germany", 82_300_000)]);
        let report = invariance_report(&t).unwrap();
        assert_eq!(report.rows.len(), 2);
        assert_eq!(report.rows[0].name, "Malta");
        // Above the exact threshold all three bases collapse to sqrt up to
        // float rounding.
        assert!(report.max_deviation() < 1e-12, "{report:?}");
        assert!((report.rows[1].weight_ternary - 0.934_827_896_030_373_3).abs() < 1e-9);
        // Power ratio: sqrt(3/2) for every large constituency.
        for row in &report.rows {
            assert!(
                (row.power_ratio - 1.5f64.sqrt()).abs() < 1e-9,
                "{}: {}",
                row.name,
                row.power_ratio
            );
        }
    }
}
