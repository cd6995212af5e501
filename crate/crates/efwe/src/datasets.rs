//! Lifetime datasets: validated in-memory samples, the classic embedded
//! device-failure data, and CSV import/export.

use std::path::Path;
use std::str::FromStr;

use crate::error::{Error, Result};

/// A validated sample of strictly positive lifetimes. Construction sorts a
/// copy for the estimators that need order statistics while preserving the
/// original observation order for round-tripping.
#[derive(Debug, Clone, PartialEq)]
pub struct Dataset {
    sorted: Vec<f64>,
    original: Vec<f64>,
    label: String,
}

impl Dataset {
    /// Validates that `values` is non-empty and strictly positive.
    pub fn new(values: Vec<f64>, label: impl Into<String>) -> Result<Self> {
        if values.is_empty() {
            return Err(Error::EmptyData);
        }
        for (i, &v) in values.iter().enumerate() {
            if !(v > 0.0) || !v.is_finite() {
                return Err(Error::domain(format!(
                    "observation {i} is {v}; lifetimes must be strictly positive and finite"
                )));
            }
        }
        let mut sorted = values.clone();
        sorted.sort_by(f64::total_cmp);
        Ok(Dataset {
            sorted,
            original: values,
            label: label.into(),
        })
    }

    /// Observations in ascending order.
    pub fn values(&self) -> &[f64] {
        &self.sorted
    }

    /// Observations in their original order.
    pub fn original_order(&self) -> &[f64] {
        &self.original
    }

    /// Number of observations.
    pub fn len(&self) -> usize {
        self.sorted.len()
    }

    /// True when the dataset holds no observations (never, by construction).
    pub fn is_empty(&self) -> bool {
        self.sorted.is_empty()
    }

    /// Short name used in reports.
    pub fn label(&self) -> &str {
        &self.label
    }

    /// Sample mean.
    pub fn mean(&self) -> f64 {
        self.sorted.iter().sum::<f64>() / self.len() as f64
    }

    /// Sample median (average of central order statistics for even n).
    pub fn median(&self) -> f64 {
        let n = self.len();
        if n % 2 == 1 {
            self.sorted[n / 2]
        } else {
            0.5 * (self.sorted[n / 2 - 1] + self.sorted[n / 2])
        }
    }

    /// True when every observation is identical, which defeats any scale
    /// estimation.
    pub fn is_degenerate(&self) -> bool {
        self.sorted.first() == self.sorted.last()
    }
}

/// The classic 50 device failure times widely used to benchmark
/// bathtub-shaped hazard models.
pub fn aarset() -> Dataset {
    let values = vec![
        0.1, 0.2, 1.0, 1.0, 1.0, 1.0, 1.0, 2.0, 3.0, 6.0, 7.0, 11.0, 12.0, 18.0, 18.0, 18.0, 18.0,
        18.0, 21.0, 32.0, 36.0, 40.0, 45.0, 46.0, 47.0, 50.0, 55.0, 60.0, 63.0, 63.0, 67.0, 67.0,
        67.0, 67.0, 72.0, 75.0, 79.0, 82.0, 82.0, 83.0, 84.0, 84.0, 84.0, 85.0, 85.0, 85.0, 85.0,
        85.0, 86.0, 86.0,
    ];
    Dataset::new(values, "aarset").expect("embedded data is valid")
}

/// Selects which CSV column holds the lifetimes: by zero-based position or
/// by header name.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Column {
    Index(usize),
    Name(String),
}

impl Default for Column {
    fn default() -> Self {
        Column::Index(0)
    }
}

impl FromStr for Column {
    type Err = std::convert::Infallible;

    /// A decimal string selects by position; anything else by header name.
    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        Ok(match s.trim().parse::<usize>() {
            Ok(i) => Column::Index(i),
            Err(_) => Column::Name(s.trim().to_string()),
        })
    }
}

/// Loads one column of lifetimes from a CSV file.
///
/// A header row is detected by attempting to parse the selected cell of the
/// first row: selection by name always requires a header. Data rows are
/// numbered from 1 (header excluded) in error reports. Values must parse as
/// strictly positive numbers.
pub fn load_csv(path: impl AsRef<Path>, column: &Column) -> Result<Dataset> {
    let path = path.as_ref();
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(false)
        .trim(csv::Trim::All)
        .flexible(true)
        .from_path(path)?;
    let records: Vec<csv::StringRecord> =
        reader.records().collect::<std::result::Result<_, _>>()?;
    if records.is_empty() {
        return Err(Error::EmptyData);
    }

    let (col_idx, data_start) = match column {
        Column::Name(name) => {
            let header = &records[0];
            let idx = header
                .iter()
                .position(|cell| cell.eq_ignore_ascii_case(name))
                .ok_or_else(|| Error::ColumnNotFound {
                    column: name.clone(),
                })?;
            (idx, 1)
        }
        Column::Index(idx) => {
            let first = records[0].get(*idx).ok_or_else(|| Error::ColumnNotFound {
                column: idx.to_string(),
            })?;
            let start = if first.parse::<f64>().is_ok() { 0 } else { 1 };
            (*idx, start)
        }
    };

    let mut values = Vec::with_capacity(records.len().saturating_sub(data_start));
    for (row_offset, record) in records[data_start..].iter().enumerate() {
        let row = row_offset + 1;
        let cell = record.get(col_idx).ok_or_else(|| Error::CsvParse {
            row,
            detail: format!(
                "row has only {} columns, wanted column {col_idx}",
                record.len()
            ),
        })?;
        if cell.is_empty() {
            continue;
        }
        let value: f64 = cell.parse().map_err(|e| Error::CsvParse {
            row,
            detail: format!("cannot parse {cell:?} as a number: {e}"),
        })?;
        if !(value > 0.0) || !value.is_finite() {
            return Err(Error::NonPositiveValue { row, value });
        }
        values.push(value);
    }
    if values.is_empty() {
        return Err(Error::EmptyData);
    }
    let label = path
        .file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_default();
    Dataset::new(values, label)
}

/// Writes a dataset to CSV with a single `time` column, preserving the
/// original observation order at full round-trip precision.
pub fn write_csv(dataset: &Dataset, path: impl AsRef<Path>) -> Result<()> {
    let mut writer = csv::Writer::from_path(path.as_ref())?;
    writer.write_record(["time"])?;
    for v in dataset.original_order() {
        writer.write_record([format!("{v}")])?;
    }
    writer.flush()?;
    Ok(())
}

// ======================================================================
// tests
// ======================================================================
