//! Relative-error tables between a reference series and an estimate.

use alloc::string::String;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::survey::SurveyCampaign;

/// `|reference - estimate| / |reference|`.
pub fn relative_error(reference: f64, estimate: f64) -> Result<f64> {
    if reference == 0.0 {
        return Err(Error::ZeroReference(String::new()));
    }
    Ok((reference - estimate).abs() / reference.abs())
}

#[derive(Debug, Clone, PartialEq)]
pub struct ErrorRow {
    pub label: String,
    pub reference: f64,
    pub estimate: f64,
    /// Fraction, not percent.
    pub relative_error: f64,
}

impl ErrorRow {
    /// Relative error as an integer percentage, rounded half away from zero.
    pub fn percent(&self) -> i64 {
        libm::round(self.relative_error * 100.0) as i64
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ErrorTable {
    pub rows: Vec<ErrorRow>,
    pub mean_relative_error: f64,
    pub max_relative_error: f64,
}

impl ErrorTable {
    /// Builds a table with one row per reference entry, in reference order.
    /// `estimates` may contain extra labels; every reference label must be
    /// present.
    pub fn from_pairs(references: &[(String, f64)], estimates: &[(String, f64)]) -> Result<Self> {
        let rows = references
            .iter()
            .map(|(label, reference)| {
                let estimate = estimates
                    .iter()
                    .find(|(l, _)| l == label)
                    .map(|&(_, e)| e)
                    .ok_or_else(|| Error::MissingEstimate(label.clone()))?;
                let relative_error = relative_error(*reference, estimate)
                    .map_err(|_| Error::ZeroReference(label.clone()))?;
                Ok(ErrorRow {
                    label: label.clone(),
                    reference: *reference,
                    estimate,
                    relative_error,
                })
            })
            .collect::<Result<Vec<_>>>()?;

        let (sum, max) = rows.iter().fold((0.0, 0.0_f64), |(s, m), r| {
            (s + r.relative_error, m.max(r.relative_error))
        });
        let mean_relative_error = if rows.is_empty() {
            0.0
        } else {
            sum / rows.len() as f64
        };
        Ok(ErrorTable {
            rows,
            mean_relative_error,
            max_relative_error: max,
        })
    }

    /// Rows with a relative error strictly below `threshold`.
    pub fn count_below(&self, threshold: f64) -> usize {
        self.rows
            .iter()
            .filter(|r| r.relative_error < threshold)
            .count()
    }
}

/// Error table with each point's mean RSSI as the reference.
pub fn error_table(campaign: &SurveyCampaign, estimates: &[(String, f64)]) -> Result<ErrorTable> {
    let references: Vec<(String, f64)> = campaign
        .points()
        .iter()
        .map(|p| (p.label().into(), p.mean()))
        .collect();
    ErrorTable::from_pairs(&references, estimates)
}

#[derive(Debug, Clone, PartialEq)]
pub struct ThresholdReport {
    pub threshold: f64,
    /// Labels whose relative error is above the threshold, in table order.
    pub exceeding: Vec<String>,
    pub total: usize,
}

impl ThresholdReport {
    pub fn count(&self) -> usize {
        self.exceeding.len()
    }
}

pub fn threshold_report(table: &ErrorTable, threshold: f64) -> Result<ThresholdReport> {
    if !(threshold > 0.0 && threshold < 1.0) {
        return Err(Error::InvalidThreshold(threshold));
    }
    let exceeding = table
        .rows
        .iter()
        .filter(|r| r.relative_error > threshold)
        .map(|r| r.label.clone())
        .collect();
    Ok(ThresholdReport {
        threshold,
        exceeding,
        total: table.rows.len(),
    })
}
