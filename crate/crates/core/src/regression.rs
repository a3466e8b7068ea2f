//! Logarithmic regression of signal strength on distance.
//!
//! Fits `y = a + b log(d)` by ordinary least squares. With base 10 the
//! slope is directly comparable to `-10 n` of the log-distance model.

use alloc::string::String;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::survey::SurveyCampaign;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum LogBase {
    #[default]
    Ten,
    Natural,
}

impl LogBase {
    fn apply(self, x: f64) -> f64 {
        match self {
            LogBase::Ten => libm::log10(x),
            LogBase::Natural => libm::log(x),
        }
    }
}

/// A labelled (distance, value) pair.
#[derive(Debug, Clone, PartialEq)]
pub struct Observation {
    pub label: String,
    pub distance: f64,
    pub value: f64,
}

impl Observation {
    pub fn new(label: impl Into<String>, distance: f64, value: f64) -> Self {
        Observation {
            label: label.into(),
            distance,
            value,
        }
    }

    /// One observation per point: distance and mean RSSI.
    pub fn from_campaign(campaign: &SurveyCampaign) -> Vec<Observation> {
        campaign
            .points()
            .iter()
            .map(|p| Observation::new(p.label(), p.distance(), p.mean()))
            .collect()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct RegressionResult {
    pub base: LogBase,
    pub intercept: f64,
    /// dB per unit of `log(d)` in `base`.
    pub slope: f64,
    pub r_squared: f64,
    pub ss_res: f64,
    pub ss_tot: f64,
    /// Fitted value at each input observation, in input order.
    pub fitted: Vec<Observation>,
}

impl RegressionResult {
    /// `intercept + slope log(d)`.
    pub fn predict(&self, d: f64) -> Result<f64> {
        if !(d.is_finite() && d > 0.0) {
            return Err(Error::InvalidDistance(d));
        }
        Ok(self.intercept + self.slope * self.base.apply(d))
    }

    /// Explained sum of squares.
    pub fn ss_reg(&self, observations: &[Observation]) -> f64 {
        let mean = observations.iter().map(|o| o.value).sum::<f64>() / observations.len() as f64;
        self.fitted
            .iter()
            .map(|f| (f.value - mean) * (f.value - mean))
            .sum()
    }
}

/// Base-10 logarithmic regression.
pub fn log_regression(observations: &[Observation]) -> Result<RegressionResult> {
    log_regression_with_base(observations, LogBase::Ten)
}

pub fn log_regression_with_base(
    observations: &[Observation],
    base: LogBase,
) -> Result<RegressionResult> {
    if let Some(o) = observations
        .iter()
        .find(|o| !(o.distance.is_finite() && o.distance > 0.0))
    {
        return Err(Error::InvalidDistance(o.distance));
    }
    let Some(first) = observations.first() else {
        return Err(Error::DegenerateGeometry);
    };
    if observations.iter().all(|o| o.distance == first.distance) {
        return Err(Error::DegenerateGeometry);
    }

    let count = observations.len() as f64;
    let xs: Vec<f64> = observations
        .iter()
        .map(|o| base.apply(o.distance))
        .collect();
    let x_mean = xs.iter().sum::<f64>() / count;
    let y_mean = observations.iter().map(|o| o.value).sum::<f64>() / count;

    let (sxy, sxx) = xs
        .iter()
        .zip(observations)
        .fold((0.0, 0.0), |(sxy, sxx), (&x, o)| {
            let dx = x - x_mean;
            (sxy + dx * (o.value - y_mean), sxx + dx * dx)
        });
    let slope = sxy / sxx;
    let intercept = y_mean - slope * x_mean;

    let fitted: Vec<Observation> = xs
        .iter()
        .zip(observations)
        .map(|(&x, o)| Observation::new(o.label.clone(), o.distance, intercept + slope * x))
        .collect();
    let ss_res: f64 = fitted
        .iter()
        .zip(observations)
        .map(|(f, o)| (o.value - f.value) * (o.value - f.value))
        .sum();
    let ss_tot: f64 = observations
        .iter()
        .map(|o| (o.value - y_mean) * (o.value - y_mean))
        .sum();
    // constant targets are reproduced exactly by the intercept
    let r_squared = if ss_tot == 0.0 {
        1.0
    } else {
        (1.0 - ss_res / ss_tot).clamp(0.0, 1.0)
    };

    Ok(RegressionResult {
        base,
        intercept,
        slope,
        r_squared,
        ss_res,
        ss_tot,
        fitted,
    })
}
