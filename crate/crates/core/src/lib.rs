//! Path-loss modelling and calibration for wireless site surveys.
//!
//! The crate predicts received signal strength with the free-space (Friis)
//! and log-distance path-loss models, calibrates the log-distance
//! propagation exponent against measured campaigns, fits a logarithmic
//! regression through the measured means and computes the relative-error
//! tables used to compare measurement, regression and model.
//!
//! Everything here is pure computation over immutable values. The crate is
//! `no_std` and only needs `alloc`; file formats and the command line live
//! in the `pathloss` companion crate.
//!
//! ```
//! use pathloss_core::{predict_rssi, PathLossModel, RadioConfig};
//!
//! let radio = RadioConfig::engine_room();
//! let model = PathLossModel::log_distance(4.0).unwrap();
//! let rssi = predict_rssi(model, &radio, 25.0).unwrap();
//! assert!((rssi - -55.92).abs() < 0.005);
//! ```

#![cfg_attr(not(feature = "std"), no_std)]

extern crate alloc;

pub mod calibration;
mod error;
pub mod metrics;
pub mod propagation;
pub mod regression;
pub mod survey;

pub use calibration::{
    classify_environment, fit_exponent_grid, fit_exponent_least_squares, select_best_exponent,
    EnvironmentClass, FitMethod, FitResult, GridRange, Residual, ENVIRONMENT_CLASSES,
};
pub use error::{Error, Result};
pub use metrics::{
    error_table, relative_error, threshold_report, ErrorRow, ErrorTable, ThresholdReport,
};
pub use propagation::{
    coverage_distance, fspl_loss, ldpl_loss, predict_rssi, predict_table, Exponent, PathLossModel,
    Prediction,
};
pub use regression::{
    log_regression, log_regression_with_base, LogBase, Observation, RegressionResult,
};
pub use survey::{MeasurementPoint, RadioConfig, SampleRecord, SurveyCampaign};

pub(crate) fn log10(x: f64) -> f64 {
    libm::log10(x)
}
