//! Distribution CSV files and the bundled hardware/simulator measurements.
//!
//! A distribution file has the header `outcome,probability`, one row per
//! outcome, outcomes written as fixed-width bit strings.

use crate::bits::BitString;
use crate::error::{Error, Result};
use crate::grover::Distribution;

/// Published columns are rounded to three decimals and may miss one by this much.
pub const CSV_SUM_TOLERANCE: f64 = 5e-3;

pub const TABLE_SANTIAGO_VS_SIMULATOR: &str = include_str!("../data/santiago_vs_simulator.csv");
pub const TABLE_DEVICES_ONE_CALL: &str = include_str!("../data/devices_1call.csv");
pub const TABLE_DEVICES_TWO_CALLS: &str = include_str!("../data/devices_2call.csv");
pub const TABLE_QUALITY_ONE_CALL: &str = include_str!("../data/quality_1call.csv");
pub const TABLE_QUALITY_TWO_CALLS: &str = include_str!("../data/quality_2call.csv");

/// Outcome searched for in every bundled run, `|010>`.
pub const PUBLISHED_MARKED: usize = 2;

fn csv_error(row: usize, message: impl Into<String>) -> Error {
    Error::Csv { row, message: message.into() }
}

/// Parses an `outcome,probability` document. Rows may come in any order but
/// must cover every outcome of their common width exactly once.
pub fn read_distribution_csv(text: &str) -> Result<Distribution> {
    let mut reader = csv::ReaderBuilder::new().trim(csv::Trim::All).from_reader(text.as_bytes());
    let headers = reader.headers().map_err(|e| csv_error(1, e.to_string()))?.clone();
    if headers.len() != 2 || &headers[0] != "outcome" || &headers[1] != "probability" {
        return Err(csv_error(1, "expected header `outcome,probability`"));
    }
    let mut rows: Vec<(BitString, f64)> = Vec::new();
    for (k, record) in reader.records().enumerate() {
        let row = k + 2;
        let record = record.map_err(|e| csv_error(row, e.to_string()))?;
        if record.len() != 2 {
            return Err(csv_error(row, format!("expected 2 fields, found {}", record.len())));
        }
        let outcome: BitString =
            record[0].parse().map_err(|_| csv_error(row, format!("outcome {:?} is not a bit string", &record[0])))?;
        if outcome.is_empty() {
            return Err(csv_error(row, "empty outcome"));
        }
        let p: f64 =
            record[1].parse().map_err(|_| csv_error(row, format!("probability {:?} is not a number", &record[1])))?;
        if !(0.0..=1.0).contains(&p) {
            return Err(csv_error(row, format!("probability {p} outside [0, 1]")));
        }
        if let Some((first, _)) = rows.first() {
            if first.len() != outcome.len() {
                return Err(csv_error(row, format!("outcome {outcome} is not {} bits wide", first.len())));
            }
        }
        rows.push((outcome, p));
    }
    let width = rows.first().map(|(o, _)| o.len()).ok_or_else(|| csv_error(2, "no rows"))?;
    if width > 24 {
        return Err(csv_error(2, "outcomes wider than 24 bits are not supported"));
    }
    let size = 1usize << width;
    let mut probs = vec![None; size];
    for (k, (outcome, p)) in rows.iter().enumerate() {
        let slot = &mut probs[outcome.to_index() as usize];
        if slot.is_some() {
            return Err(csv_error(k + 2, format!("duplicate outcome {outcome}")));
        }
        *slot = Some(*p);
    }
    if let Some(i) = probs.iter().position(Option::is_none) {
        return Err(csv_error(rows.len() + 1, format!("missing outcome {}", BitString::from_index(i as u64, width))));
    }
    let probs = probs.into_iter().map(|p| p.unwrap()).collect();
    Distribution::with_tolerance(probs, CSV_SUM_TOLERANCE).map_err(|e| csv_error(rows.len() + 1, e.to_string()))
}

/// Writes `dist` in the `outcome,probability` format.
pub fn write_distribution_csv(dist: &Distribution) -> String {
    let width = dist.len().trailing_zeros() as usize;
    let mut out = String::from("outcome,probability\n");
    for (i, p) in dist.probabilities().iter().enumerate() {
        out.push_str(&format!("{},{}\n", BitString::from_index(i as u64, width), p));
    }
    out
}

/// A wide table keyed by outcome, one column per run configuration.
#[derive(Clone, Debug, PartialEq)]
pub struct PublishedTable {
    pub columns: Vec<String>,
    pub outcomes: Vec<String>,
    /// `values[row][column]`.
    pub values: Vec<Vec<f64>>,
}

impl PublishedTable {
    pub fn parse(text: &str) -> Result<Self> {
        let mut reader = csv::Reader::from_reader(text.as_bytes());
        let headers = reader.headers().map_err(|e| csv_error(1, e.to_string()))?.clone();
        let columns: Vec<String> = headers.iter().skip(1).map(str::to_string).collect();
        let mut outcomes = Vec::new();
        let mut values = Vec::new();
        for (k, record) in reader.records().enumerate() {
            let record = record.map_err(|e| csv_error(k + 2, e.to_string()))?;
            outcomes.push(record[0].to_string());
            let row = record
                .iter()
                .skip(1)
                .map(|v| v.parse::<f64>().map_err(|_| csv_error(k + 2, format!("bad value {v:?}"))))
                .collect::<Result<Vec<_>>>()?;
            values.push(row);
        }
        Ok(Self { columns, outcomes, values })
    }

    pub fn column(&self, name: &str) -> Option<Vec<f64>> {
        let c = self.columns.iter().position(|col| col == name)?;
        Some(self.values.iter().map(|row| row[c]).collect())
    }

    pub fn distribution(&self, name: &str) -> Option<Result<Distribution>> {
        self.column(name).map(|p| Distribution::with_tolerance(p, CSV_SUM_TOLERANCE))
    }
}

/// The three outcome tables shipped with the crate.
pub fn published_tables() -> Vec<(&'static str, PublishedTable)> {
    [
        ("santiago_vs_simulator", TABLE_SANTIAGO_VS_SIMULATOR),
        ("devices_one_call", TABLE_DEVICES_ONE_CALL),
        ("devices_two_calls", TABLE_DEVICES_TWO_CALLS),
    ]
    .into_iter()
    .map(|(name, text)| (name, PublishedTable::parse(text).expect("bundled table parses")))
    .collect()
}

/// Looks a run configuration such as `santiago_std_1call` up in the bundled tables.
pub fn published_distribution(name: &str) -> Option<Distribution> {
    published_tables()
        .into_iter()
        .find_map(|(_, t)| t.distribution(name))
        .map(|d| d.expect("bundled columns are valid distributions"))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reads_bundled_column() {
        let d = published_distribution("santiago_std_1call").unwrap();
        assert_eq!(d.len(), 8);
        assert_eq!(d.get(2), 0.644);
        assert!(published_distribution("nonexistent").is_none());
    }

    #[test]
    fn rows_in_any_order() {
        let d = read_distribution_csv("outcome,probability\n11,0.4\n00,0.1\n10,0.3\n01,0.2\n").unwrap();
        assert_eq!(d.probabilities(), &[0.1, 0.2, 0.3, 0.4]);
    }

    #[test]
    fn round_trip() {
        let d = Distribution::new(vec![0.125, 0.375, 0.25, 0.25]).unwrap();
        assert_eq!(read_distribution_csv(&write_distribution_csv(&d)).unwrap(), d);
    }

    #[test]
    fn diagnostics_name_the_row() {
        let cases = [
            ("outcome,probability\n00,0.5\n01,abc\n10,0.25\n11,0.25\n", "row 3"),
            ("outcome,probability\n00,0.5\n0x,0.1\n", "row 3"),
            ("outcome,probability\n00,0.5\n00,0.5\n", "row 3"),
            ("outcome,probability\n00,0.5\n011,0.5\n", "row 3"),
            ("outcome,prob\n00,1\n", "row 1"),
            ("outcome,probability\n0,0.7\n1,0.7\n", "sum"),
            ("outcome,probability\n00,0.5\n01,0.5\n", "missing outcome 10"),
        ];
        for (text, needle) in cases {
            let err = read_distribution_csv(text).unwrap_err().to_string();
            assert!(err.contains(needle), "{err:?} lacks {needle:?}");
        }
    }
}
