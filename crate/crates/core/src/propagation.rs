//! Free-space and log-distance path loss, and the RSSI predictions built on
//! them.
//!
//! Predicted strength is always `erp - loss`. For the log-distance model
//! with the engine-room radio (20 dB ERP, 20 dB loss at 1 m) this reduces
//! to `-10 n log10(d)`.

use alloc::vec::Vec;
use core::fmt;

use crate::error::{Error, Result};
use crate::log10;
use crate::survey::RadioConfig;

/// Friis constant for distance in kilometers and frequency in GHz.
pub const FSPL_CONSTANT_KM_GHZ: f64 = 92.44;

/// Log-distance propagation exponent. Always finite and positive.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub struct Exponent(f64);

impl Exponent {
    pub fn new(n: f64) -> Result<Self> {
        if n.is_finite() && n > 0.0 {
            Ok(Exponent(n))
        } else {
            Err(Error::InvalidExponent(n))
        }
    }

    pub fn get(self) -> f64 {
        self.0
    }
}

impl fmt::Display for Exponent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(&self.0, f)
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum PathLossModel {
    FreeSpace,
    LogDistance(Exponent),
}

impl PathLossModel {
    pub fn log_distance(n: f64) -> Result<Self> {
        Exponent::new(n).map(PathLossModel::LogDistance)
    }

    /// Path loss in dB at `distance` meters.
    pub fn loss(self, radio: &RadioConfig, distance: f64) -> Result<f64> {
        match self {
            PathLossModel::FreeSpace => fspl_loss(distance, radio),
            PathLossModel::LogDistance(n) => ldpl_loss(distance, n.get(), radio),
        }
    }
}

impl fmt::Display for PathLossModel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PathLossModel::FreeSpace => f.write_str("FSPL"),
            PathLossModel::LogDistance(n) => write!(f, "LDPL{n}"),
        }
    }
}

/// A single model evaluation. `rssi == erp - loss` for the radio that
/// produced it.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Prediction {
    pub distance: f64,
    pub loss: f64,
    pub rssi: f64,
}

fn check_distance(d: f64) -> Result<()> {
    if d.is_finite() && d > 0.0 {
        Ok(())
    } else {
        Err(Error::InvalidDistance(d))
    }
}

/// Log-distance path loss: `ref_loss + 10 n log10(d / ref_distance)`.
///
/// Distances inside the reference distance are accepted and give a loss
/// below `ref_loss`.
pub fn ldpl_loss(d: f64, n: f64, radio: &RadioConfig) -> Result<f64> {
    check_distance(d)?;
    let n = Exponent::new(n)?.get();
    Ok(radio.ref_loss + 10.0 * n * log10(d / radio.ref_distance))
}

/// Free-space (Friis) path loss with `d` in meters and the radio's
/// frequency in GHz, net of both antenna gains.
pub fn fspl_loss(d: f64, radio: &RadioConfig) -> Result<f64> {
    check_distance(d)?;
    if !(radio.frequency.is_finite() && radio.frequency > 0.0) {
        return Err(Error::InvalidRadio {
            field: "frequency",
            value: radio.frequency,
        });
    }
    let d_km = d / 1000.0;
    Ok(
        20.0 * log10(d_km) + 20.0 * log10(radio.frequency) + FSPL_CONSTANT_KM_GHZ
            - radio.tx_gain
            - radio.rx_gain,
    )
}

/// Received strength predicted by `model` at `d` meters.
pub fn predict_rssi(model: PathLossModel, radio: &RadioConfig, d: f64) -> Result<f64> {
    Ok(radio.erp - model.loss(radio, d)?)
}

pub fn predict_table(
    model: PathLossModel,
    radio: &RadioConfig,
    distances: &[f64],
) -> Result<Vec<Prediction>> {
    distances
        .iter()
        .map(|&distance| {
            let loss = model.loss(radio, distance)?;
            Ok(Prediction {
                distance,
                loss,
                rssi: radio.erp - loss,
            })
        })
        .collect()
}

/// Distance at which the log-distance prediction falls to `min_rssi`.
///
/// A threshold equal to the reference strength maps to the reference
/// distance; anything stronger is unreachable.
pub fn coverage_distance(model: PathLossModel, radio: &RadioConfig, min_rssi: f64) -> Result<f64> {
    let n = match model {
        PathLossModel::LogDistance(n) => n.get(),
        PathLossModel::FreeSpace => return Err(Error::NotInvertible),
    };
    let ceiling = radio.reference_rssi();
    if !min_rssi.is_finite() || min_rssi > ceiling {
        return Err(Error::Unreachable { min_rssi, ceiling });
    }
    Ok(radio.ref_distance * libm::pow(10.0, (ceiling - min_rssi) / (10.0 * n)))
}
