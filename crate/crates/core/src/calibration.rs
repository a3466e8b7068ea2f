//! Calibrating the log-distance exponent against a measured campaign.
//!
//! Three estimators share one objective: the root-mean-square difference,
//! in dB, between each point's mean RSSI and the log-distance prediction.
//!
//! * [`select_best_exponent`] picks the best of a discrete candidate list.
//! * [`fit_exponent_least_squares`] solves the objective in closed form.
//! * [`fit_exponent_grid`] scans a range exhaustively. It shares no code
//!   with the closed form and is used to cross-check it.

use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use crate::error::{Error, Result};
use crate::log10;
use crate::propagation::{predict_rssi, PathLossModel};
use crate::survey::SurveyCampaign;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FitMethod {
    DiscreteSelection,
    LeastSquares,
    GridSearch,
}

impl fmt::Display for FitMethod {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            FitMethod::DiscreteSelection => "discrete",
            FitMethod::LeastSquares => "continuous",
            FitMethod::GridSearch => "grid",
        })
    }
}

/// Per-point comparison of measurement and prediction.
#[derive(Debug, Clone, PartialEq)]
pub struct Residual {
    pub label: String,
    pub measured: f64,
    pub predicted: f64,
    /// `measured - predicted`, dB.
    pub residual: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct FitResult {
    pub exponent: f64,
    pub method: FitMethod,
    pub residuals: Vec<Residual>,
    /// Mean absolute residual, dB.
    pub mae: f64,
    /// Root-mean-square residual, dB.
    pub rmse: f64,
    /// Mean of `|residual| / |measured|`. `None` when a point's mean is
    /// exactly 0 dB.
    pub mean_relative_error: Option<f64>,
}

impl FitResult {
    /// Evaluates exponent `n` against the campaign's point means.
    pub fn evaluate(campaign: &SurveyCampaign, n: f64, method: FitMethod) -> Result<Self> {
        let model = PathLossModel::log_distance(n)?;
        let radio = campaign.radio();
        let residuals = campaign
            .points()
            .iter()
            .map(|p| {
                let measured = p.mean();
                let predicted = predict_rssi(model, radio, p.distance())?;
                Ok(Residual {
                    label: p.label().into(),
                    measured,
                    predicted,
                    residual: measured - predicted,
                })
            })
            .collect::<Result<Vec<_>>>()?;

        let count = residuals.len() as f64;
        let mae = residuals.iter().map(|r| r.residual.abs()).sum::<f64>() / count;
        let rmse = libm::sqrt(
            residuals
                .iter()
                .map(|r| r.residual * r.residual)
                .sum::<f64>()
                / count,
        );
        let mean_relative_error = if residuals.iter().any(|r| r.measured == 0.0) {
            None
        } else {
            Some(
                residuals
                    .iter()
                    .map(|r| r.residual.abs() / r.measured.abs())
                    .sum::<f64>()
                    / count,
            )
        };
        Ok(FitResult {
            exponent: n,
            method,
            residuals,
            mae,
            rmse,
            mean_relative_error,
        })
    }
}

/// Inclusive exponent range scanned by [`fit_exponent_grid`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GridRange {
    pub lo: f64,
    pub hi: f64,
    pub step: f64,
}

impl Default for GridRange {
    fn default() -> Self {
        GridRange {
            lo: 0.5,
            hi: 10.0,
            step: 1e-3,
        }
    }
}

impl GridRange {
    fn validate(&self) -> Result<()> {
        let GridRange { lo, hi, step } = *self;
        let ok = lo.is_finite()
            && hi.is_finite()
            && step.is_finite()
            && lo > 0.0
            && lo <= hi
            && step > 0.0;
        if ok {
            Ok(())
        } else {
            Err(Error::InvalidRange { lo, hi, step })
        }
    }

    /// Grid values `lo + i * step`, including `hi` when it falls on the grid.
    pub fn values(&self) -> impl Iterator<Item = f64> {
        let GridRange { lo, hi, step } = *self;
        let last = libm::floor((hi - lo) / step + 1e-9) as usize;
        (0..=last).map(move |i| lo + i as f64 * step)
    }
}

fn rmse_at(campaign: &SurveyCampaign, n: f64) -> f64 {
    let radio = campaign.radio();
    let base = radio.reference_rssi();
    let sum: f64 = campaign
        .points()
        .iter()
        .map(|p| {
            let predicted = base - 10.0 * n * log10(p.distance() / radio.ref_distance);
            let r = p.mean() - predicted;
            r * r
        })
        .sum();
    libm::sqrt(sum / campaign.points().len() as f64)
}

/// Best exponent of `candidates` by rmse. Ties go to the smaller exponent.
pub fn select_best_exponent(campaign: &SurveyCampaign, candidates: &[f64]) -> Result<FitResult> {
    let mut best: Option<FitResult> = None;
    for &n in candidates {
        let fit = FitResult::evaluate(campaign, n, FitMethod::DiscreteSelection)?;
        let better = match &best {
            None => true,
            Some(b) => fit.rmse < b.rmse || (fit.rmse == b.rmse && n < b.exponent),
        };
        if better {
            best = Some(fit);
        }
    }
    best.ok_or(Error::EmptyCandidates)
}

/// Closed-form least-squares exponent for the campaign's point means.
///
/// With `x = log10(d / d0)` and `c = erp - ref_loss`, the model is
/// `m = c - 10 n x`, so `n = sum(x (c - m)) / (10 sum(x^2))`.
pub fn fit_exponent_least_squares(campaign: &SurveyCampaign) -> Result<FitResult> {
    let radio = campaign.radio();
    let points = campaign.points();
    let first = points[0].distance();
    if points.iter().all(|p| p.distance() == first) {
        return Err(Error::DegenerateGeometry);
    }

    let c = radio.reference_rssi();
    let (num, den) = points.iter().fold((0.0, 0.0), |(num, den), p| {
        let x = log10(p.distance() / radio.ref_distance);
        (num + x * (c - p.mean()), den + x * x)
    });
    if den == 0.0 {
        return Err(Error::DegenerateGeometry);
    }
    let n = num / (10.0 * den);
    if !(n.is_finite() && n > 0.0) {
        return Err(Error::NonPhysicalFit(n));
    }
    FitResult::evaluate(campaign, n, FitMethod::LeastSquares)
}

/// Exhaustive rmse scan over `range`. The first minimum wins, so the
/// result does not depend on anything but the grid.
pub fn fit_exponent_grid(campaign: &SurveyCampaign, range: GridRange) -> Result<FitResult> {
    range.validate()?;
    let mut best = (f64::INFINITY, range.lo);
    for n in range.values() {
        let rmse = rmse_at(campaign, n);
        if rmse < best.0 {
            best = (rmse, n);
        }
    }
    FitResult::evaluate(campaign, best.1, FitMethod::GridSearch)
}

/// Typical exponent range for a kind of environment.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EnvironmentClass {
    pub name: &'static str,
    pub n_low: f64,
    pub n_high: f64,
}

impl EnvironmentClass {
    pub fn contains(&self, n: f64) -> bool {
        self.n_low <= n && n <= self.n_high
    }
}

pub const ENVIRONMENT_CLASSES: [EnvironmentClass; 6] = [
    EnvironmentClass {
        name: "Free space",
        n_low: 2.0,
        n_high: 2.0,
    },
    EnvironmentClass {
        name: "Cellular radio in urban area",
        n_low: 2.7,
        n_high: 3.5,
    },
    EnvironmentClass {
        name: "Cellular radio in urban area with fading",
        n_low: 3.0,
        n_high: 5.0,
    },
    EnvironmentClass {
        name: "Closed environment with line of sight",
        n_low: 1.6,
        n_high: 1.8,
    },
    EnvironmentClass {
        name: "Building with obstacles",
        n_low: 4.0,
        n_high: 6.0,
    },
    EnvironmentClass {
        name: "Factory with obstacles",
        n_low: 2.0,
        n_high: 3.0,
    },
];

/// Built-in environment classes whose range contains `n`.
pub fn classify_environment(n: f64) -> Vec<EnvironmentClass> {
    ENVIRONMENT_CLASSES
        .iter()
        .copied()
        .filter(|c| c.contains(n))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::survey::{MeasurementPoint, RadioConfig};
    use alloc::format;
    use alloc::vec;

    fn synthetic(n: f64, distances: &[f64]) -> SurveyCampaign {
        let radio = RadioConfig::engine_room();
        let points = distances
            .iter()
            .enumerate()
            .map(|(i, &d)| {
                let rssi = radio.reference_rssi() - 10.0 * n * log10(d);
                MeasurementPoint::new(format!("S{i}"), d, vec![rssi; 3]).unwrap()
            })
            .collect();
        SurveyCampaign::new("synthetic", radio, points).unwrap()
    }

    const DISTANCES: [f64; 6] = [2.0, 5.0, 11.0, 30.0, 64.0, 120.0];

    #[test]
    fn discrete_selection_recovers_generating_exponent() {
        let c = synthetic(5.0, &DISTANCES);
        let fit = select_best_exponent(&c, &[3.0, 4.0, 5.0, 6.0]).unwrap();
        assert_eq!(fit.exponent, 5.0);
        assert!(fit.rmse < 1e-12);
        assert_eq!(fit.method, FitMethod::DiscreteSelection);
    }

    #[test]
    fn discrete_selection_edge_cases() {
        let c = synthetic(5.0, &DISTANCES);
        assert_eq!(select_best_exponent(&c, &[3.0]).unwrap().exponent, 3.0);
        assert_eq!(select_best_exponent(&c, &[]), Err(Error::EmptyCandidates));
        assert_eq!(
            select_best_exponent(&c, &[4.0, -1.0]),
            Err(Error::InvalidExponent(-1.0))
        );
        // symmetric candidates around the true value tie; smaller wins
        let fit = select_best_exponent(&c, &[5.5, 4.5]).unwrap();
        assert_eq!(fit.exponent, 4.5);
    }

    #[test]
    fn least_squares_exact_recovery() {
        let c = synthetic(3.7, &DISTANCES);
        let fit = fit_exponent_least_squares(&c).unwrap();
        assert!((fit.exponent - 3.7).abs() < 1e-9);
        assert!(fit.rmse < 1e-9);
    }

    #[test]
    fn least_squares_degenerate_geometry() {
        let radio = RadioConfig::engine_room();
        let p = MeasurementPoint::new("A", 10.0, vec![-40.0]).unwrap();
        let c = SurveyCampaign::new("one", radio, vec![p]).unwrap();
        assert_eq!(
            fit_exponent_least_squares(&c),
            Err(Error::DegenerateGeometry)
        );

        let a = MeasurementPoint::new("A", 10.0, vec![-40.0]).unwrap();
        let b = MeasurementPoint::new("B", 10.0, vec![-41.0]).unwrap();
        let c = SurveyCampaign::new("same", radio, vec![a, b]).unwrap();
        assert_eq!(
            fit_exponent_least_squares(&c),
            Err(Error::DegenerateGeometry)
        );
    }

    #[test]
    fn least_squares_rejects_rising_signal() {
        let radio = RadioConfig::engine_room();
        let a = MeasurementPoint::new("A", 10.0, vec![-10.0]).unwrap();
        let b = MeasurementPoint::new("B", 100.0, vec![-5.0]).unwrap();
        let c = SurveyCampaign::new("up", radio, vec![a, b]).unwrap();
        // measured strength sits above the reference strength of -40 dB
        let mut r = radio;
        r.erp = 0.0;
        r.ref_loss = 40.0;
        let c = c.with_radio(r).unwrap();
        assert!(matches!(
            fit_exponent_least_squares(&c),
            Err(Error::NonPhysicalFit(_))
        ));
    }

    #[test]
    fn grid_examples() {
        let c = synthetic(5.0, &DISTANCES);
        let fit = fit_exponent_grid(
            &c,
            GridRange {
                lo: 1.0,
                hi: 8.0,
                step: 0.01,
            },
        )
        .unwrap();
        assert!((fit.exponent - 5.0).abs() < 1e-9);

        let fit = fit_exponent_grid(
            &c,
            GridRange {
                lo: 4.0,
                hi: 4.0,
                step: 0.1,
            },
        )
        .unwrap();
        let discrete = select_best_exponent(&c, &[4.0]).unwrap();
        assert_eq!(fit.exponent, 4.0);
        assert_eq!(fit.rmse, discrete.rmse);

        for bad in [
            GridRange {
                lo: 0.0,
                hi: 1.0,
                step: 0.1,
            },
            GridRange {
                lo: 2.0,
                hi: 1.0,
                step: 0.1,
            },
            GridRange {
                lo: 1.0,
                hi: 2.0,
                step: 0.0,
            },
        ] {
            assert!(matches!(
                fit_exponent_grid(&c, bad),
                Err(Error::InvalidRange { .. })
            ));
        }
    }

    #[test]
    fn grid_values_include_upper_bound() {
        let g = GridRange {
            lo: 1.0,
            hi: 2.0,
            step: 0.1,
        };
        let v: Vec<f64> = g.values().collect();
        assert_eq!(v.len(), 11);
        assert!((v[10] - 2.0).abs() < 1e-12);
        assert_eq!(GridRange::default().values().count(), 9501);
    }

    #[test]
    fn fit_statistics_are_consistent() {
        let radio = RadioConfig::engine_room();
        let points = vec![
            MeasurementPoint::new("A", 3.0, vec![-20.0, -22.0]).unwrap(),
            MeasurementPoint::new("B", 9.0, vec![-35.0, -31.0]).unwrap(),
            MeasurementPoint::new("C", 40.0, vec![-60.0, -58.0]).unwrap(),
        ];
        let c = SurveyCampaign::new("mix", radio, points).unwrap();
        let fit = FitResult::evaluate(&c, 3.5, FitMethod::LeastSquares).unwrap();
        assert!(fit.rmse >= fit.mae && fit.mae >= 0.0);
        for r in &fit.residuals {
            assert_eq!(r.residual, r.measured - r.predicted);
        }
        assert!(fit.mean_relative_error.unwrap() > 0.0);
    }

    #[test]
    fn relative_error_undefined_at_zero_mean() {
        let radio = RadioConfig::engine_room();
        let a = MeasurementPoint::new("A", 1.0, vec![0.0]).unwrap();
        let b = MeasurementPoint::new("B", 10.0, vec![-30.0]).unwrap();
        let c = SurveyCampaign::new("z", radio, vec![a, b]).unwrap();
        let fit = FitResult::evaluate(&c, 3.0, FitMethod::LeastSquares).unwrap();
        assert_eq!(fit.mean_relative_error, None);
    }

    #[test]
    fn environment_classes() {
        let names = |n| {
            classify_environment(n)
                .into_iter()
                .map(|c| c.name)
                .collect::<Vec<_>>()
        };
        let four = names(4.0);
        assert!(four.contains(&"Building with obstacles"));
        assert!(four.contains(&"Cellular radio in urban area with fading"));
        assert_eq!(four.len(), 2);
        let two = names(2.0);
        assert!(two.contains(&"Free space"));
        assert!(two.contains(&"Factory with obstacles"));
        assert!(names(10.0).is_empty());
        for class in ENVIRONMENT_CLASSES {
            assert!(0.0 < class.n_low && class.n_low <= class.n_high);
        }
    }
}
