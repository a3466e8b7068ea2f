//! Report tables, summaries and plot series.
//!
//! All output is plain text with fixed formatting: dB values to two
//! decimals, relative errors as integer percentages next to the
//! full-precision fraction. Nothing here reads the clock, so identical
//! inputs give byte-identical files.

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use pathloss_core::{
    classify_environment, fit_exponent_least_squares, log_regression, predict_rssi,
    select_best_exponent, threshold_report, EnvironmentClass, ErrorTable, FitMethod, FitResult,
    Observation, PathLossModel, RegressionResult, SurveyCampaign, ThresholdReport,
};

use crate::format::campaign_to_csv;
use crate::ToolError;

pub const VERSION_LINE: &str = concat!("pathloss ", env!("CARGO_PKG_VERSION"));

/// Exponents compared when none are given.
pub const DEFAULT_EXPONENTS: [f64; 4] = [3.0, 4.0, 5.0, 6.0];

pub const DEFAULT_THRESHOLD: f64 = 0.15;

/// Fixed-point dB with two decimals; never prints `-0.00`.
pub fn fmt_db(x: f64) -> String {
    let s = format!("{x:.2}");
    if s == "-0.00" {
        "0.00".into()
    } else {
        s
    }
}

/// `ldpl4`, `ldpl3.5`, ...
pub fn ldpl_column(n: f64) -> String {
    format!("ldpl{n}")
}

/// How a fitted exponent is printed: discrete picks as given, continuous
/// fits to three decimals.
pub fn fmt_exponent(fit: &FitResult) -> String {
    match fit.method {
        FitMethod::DiscreteSelection => fit.exponent.to_string(),
        FitMethod::LeastSquares | FitMethod::GridSearch => format!("{:.3}", fit.exponent),
    }
}

fn fmt_percent(fraction: f64) -> String {
    format!("{}%", (fraction * 100.0).round() as i64)
}

#[derive(Debug, Clone, PartialEq)]
pub struct PredictionRow {
    pub label: String,
    pub distance: f64,
    pub mean: f64,
    /// One entry per exponent column.
    pub predicted: Vec<f64>,
}

/// Measured means plus one log-distance column per exponent.
pub fn prediction_rows(
    campaign: &SurveyCampaign,
    exponents: &[f64],
) -> Result<Vec<PredictionRow>, ToolError> {
    let models = exponents
        .iter()
        .map(|&n| PathLossModel::log_distance(n))
        .collect::<Result<Vec<_>, _>>()?;
    campaign
        .points()
        .iter()
        .map(|p| {
            let predicted = models
                .iter()
                .map(|&m| predict_rssi(m, campaign.radio(), p.distance()))
                .collect::<Result<Vec<_>, _>>()?;
            Ok(PredictionRow {
                label: p.label().into(),
                distance: p.distance(),
                mean: p.mean(),
                predicted,
            })
        })
        .collect()
}

pub fn prediction_table_csv(rows: &[PredictionRow], exponents: &[f64]) -> String {
    let mut out = String::from("point,distance_m,mean_db");
    for &n in exponents {
        let _ = write!(out, ",{}_db", ldpl_column(n));
    }
    out.push('\n');
    for r in rows {
        let _ = write!(out, "{},{},{}", r.label, r.distance, fmt_db(r.mean));
        for &v in &r.predicted {
            let _ = write!(out, ",{}", fmt_db(v));
        }
        out.push('\n');
    }
    out
}

pub fn error_table_csv(table: &ErrorTable) -> String {
    let mut out = String::from("point,reference_db,estimate_db,relative_error,percent\n");
    for r in &table.rows {
        let _ = writeln!(
            out,
            "{},{},{},{:.6},{}",
            r.label,
            fmt_db(r.reference),
            fmt_db(r.estimate),
            r.relative_error,
            r.percent()
        );
    }
    out
}

fn environment_list(classes: &[EnvironmentClass]) -> String {
    if classes.is_empty() {
        return "none".into();
    }
    classes
        .iter()
        .map(|c| format!("{} ({} to {})", c.name, c.n_low, c.n_high))
        .collect::<Vec<_>>()
        .join("; ")
}

/// Text printed by `fit`.
pub fn fit_summary_text(fit: &FitResult) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "method: {}", fit.method);
    let _ = writeln!(out, "n = {}", fmt_exponent(fit));
    let _ = writeln!(out, "rmse = {} dB", fmt_db(fit.rmse));
    let _ = writeln!(out, "mae = {} dB", fmt_db(fit.mae));
    match fit.mean_relative_error {
        Some(e) => {
            let _ = writeln!(out, "mean relative error = {}", fmt_percent(e));
        }
        None => out.push_str("mean relative error = undefined (zero mean)\n"),
    }
    let _ = writeln!(
        out,
        "environment: {}",
        environment_list(&classify_environment(fit.exponent))
    );
    out
}

#[derive(Debug, Clone, PartialEq)]
pub struct ReportOptions {
    /// Exponents shown in the prediction table and offered to the discrete
    /// selection.
    pub exponents: Vec<f64>,
    /// Exponent for the error tables. `None` picks the discrete best.
    pub comparison: Option<f64>,
    pub threshold: f64,
}

impl Default for ReportOptions {
    fn default() -> Self {
        ReportOptions {
            exponents: DEFAULT_EXPONENTS.to_vec(),
            comparison: None,
            threshold: DEFAULT_THRESHOLD,
        }
    }
}

/// Everything `report` writes, computed up front.
#[derive(Debug, Clone)]
pub struct ReportBundle {
    pub campaign: SurveyCampaign,
    /// Exponents offered to the discrete selection.
    pub candidates: Vec<f64>,
    /// Prediction table columns: the candidates plus a forced exponent.
    pub exponents: Vec<f64>,
    pub predictions: Vec<PredictionRow>,
    /// Fit at the exponent used for the error tables.
    pub comparison: FitResult,
    pub comparison_forced: bool,
    pub least_squares: Result<FitResult, String>,
    pub regression: Result<RegressionResult, String>,
    pub real_errors: ErrorTable,
    pub regression_errors: Option<ErrorTable>,
    pub real_threshold: ThresholdReport,
    pub regression_threshold: Option<ThresholdReport>,
    pub environments: Vec<EnvironmentClass>,
    pub warnings: Vec<String>,
}

impl ReportBundle {
    pub fn build(campaign: &SurveyCampaign, options: &ReportOptions) -> Result<Self, ToolError> {
        let (comparison, comparison_forced) = match options.comparison {
            Some(n) => (
                FitResult::evaluate(campaign, n, FitMethod::DiscreteSelection)?,
                true,
            ),
            None => (select_best_exponent(campaign, &options.exponents)?, false),
        };
        let n = comparison.exponent;

        let mut exponents = options.exponents.clone();
        if !exponents.contains(&n) {
            exponents.push(n);
        }
        let predictions = prediction_rows(campaign, &exponents)?;

        let model = PathLossModel::log_distance(n)?;
        let estimates: Vec<(String, f64)> = campaign
            .points()
            .iter()
            .map(|p| {
                Ok((
                    p.label().to_string(),
                    predict_rssi(model, campaign.radio(), p.distance())?,
                ))
            })
            .collect::<Result<_, pathloss_core::Error>>()?;
        let real_errors = pathloss_core::error_table(campaign, &estimates)?;
        let real_threshold = threshold_report(&real_errors, options.threshold)?;

        let least_squares = fit_exponent_least_squares(campaign).map_err(|e| e.to_string());
        let regression =
            log_regression(&Observation::from_campaign(campaign)).map_err(|e| e.to_string());

        let (regression_errors, regression_threshold) = match &regression {
            Ok(reg) => {
                let references: Vec<(String, f64)> = reg
                    .fitted
                    .iter()
                    .map(|f| (f.label.clone(), f.value))
                    .collect();
                let table = ErrorTable::from_pairs(&references, &estimates)?;
                let report = threshold_report(&table, options.threshold)?;
                (Some(table), Some(report))
            }
            Err(_) => (None, None),
        };

        let radio = campaign.radio();
        let warnings = campaign
            .points_inside_reference()
            .map(|p| {
                format!(
                    "point {} at {} m is inside the reference distance of {} m; predictions there are extrapolated",
                    p.label(),
                    p.distance(),
                    radio.ref_distance
                )
            })
            .collect();

        Ok(ReportBundle {
            campaign: campaign.clone(),
            candidates: options.exponents.clone(),
            exponents,
            predictions,
            environments: classify_environment(n),
            comparison,
            comparison_forced,
            least_squares,
            regression,
            real_errors,
            regression_errors,
            real_threshold,
            regression_threshold,
            warnings,
        })
    }

    fn comparison_label(&self) -> String {
        ldpl_column(self.comparison.exponent)
    }

    pub fn summary_text(&self) -> String {
        let c = &self.campaign;
        let r = c.radio();
        let mut out = String::new();
        let _ = writeln!(out, "{VERSION_LINE}");
        let _ = writeln!(out, "campaign: {}", c.name());
        let _ = writeln!(
            out,
            "points: {}, runs per point: {}",
            c.points().len(),
            c.run_count()
        );
        let _ = writeln!(
            out,
            "radio: erp {} dB, reference loss {} dB at {} m, {} GHz, gains {}/{} dBi",
            fmt_db(r.erp),
            fmt_db(r.ref_loss),
            r.ref_distance,
            r.frequency,
            fmt_db(r.tx_gain),
            fmt_db(r.rx_gain)
        );
        out.push('\n');

        let how = if self.comparison_forced {
            "forced".to_string()
        } else {
            let list = self
                .candidates
                .iter()
                .map(f64::to_string)
                .collect::<Vec<_>>()
                .join(", ");
            format!("discrete selection over {list}")
        };
        let _ = writeln!(
            out,
            "comparison exponent: n = {} ({how})",
            fmt_exponent(&self.comparison)
        );
        write_fit_stats(&mut out, &self.comparison);
        let _ = writeln!(
            out,
            "  environment: {}",
            environment_list(&self.environments)
        );

        match &self.least_squares {
            Ok(fit) => {
                let _ = writeln!(out, "least-squares exponent: n = {}", fmt_exponent(fit));
                write_fit_stats(&mut out, fit);
                let envs = classify_environment(fit.exponent);
                let _ = writeln!(out, "  environment: {}", environment_list(&envs));
            }
            Err(reason) => {
                let _ = writeln!(out, "least-squares exponent: skipped ({reason})");
            }
        }
        out.push('\n');

        match &self.regression {
            Ok(reg) => {
                let _ = writeln!(
                    out,
                    "regression: y = {} + ({}) log10(d), R^2 = {:.4}",
                    fmt_db(reg.intercept),
                    fmt_db(reg.slope),
                    reg.r_squared
                );
            }
            Err(reason) => {
                let _ = writeln!(out, "regression: skipped ({reason})");
            }
        }
        out.push('\n');

        let label = self.comparison_label();
        let _ = writeln!(
            out,
            "relative error threshold: {}",
            fmt_percent(self.real_threshold.threshold)
        );
        write_threshold(
            &mut out,
            &format!("real vs {label}"),
            &self.real_errors,
            &self.real_threshold,
        );
        if let (Some(t), Some(rep)) = (&self.regression_errors, &self.regression_threshold) {
            write_threshold(&mut out, &format!("regression vs {label}"), t, rep);
        }

        if !self.warnings.is_empty() {
            out.push('\n');
            out.push_str("warnings:\n");
            for w in &self.warnings {
                let _ = writeln!(out, "  {w}");
            }
        }
        out
    }

    /// Plot-ready series, one file per curve family.
    pub fn series(&self) -> Vec<(&'static str, String)> {
        let mut measured = String::from("distance_m,point,mean_db\n");
        for r in &self.predictions {
            let _ = writeln!(measured, "{},{},{}", r.distance, r.label, fmt_db(r.mean));
        }

        let mut models = String::from("distance_m");
        for &n in &self.exponents {
            let _ = write!(models, ",{}_db", ldpl_column(n));
        }
        models.push('\n');
        for r in &self.predictions {
            let _ = write!(models, "{}", r.distance);
            for &v in &r.predicted {
                let _ = write!(models, ",{}", fmt_db(v));
            }
            models.push('\n');
        }

        let mut files = vec![
            ("samples.csv", campaign_to_csv(&self.campaign)),
            ("measured.csv", measured),
            ("models.csv", models),
        ];
        if let Ok(reg) = &self.regression {
            let mut s = String::from("distance_m,regression_db\n");
            for f in &reg.fitted {
                let _ = writeln!(s, "{},{}", f.distance, fmt_db(f.value));
            }
            files.push(("regression.csv", s));
        }
        files
    }

    /// Every output file as (relative path, contents).
    pub fn files(&self) -> Vec<(PathBuf, String)> {
        let label = self.comparison_label();
        let mut files = vec![
            (PathBuf::from("summary.txt"), self.summary_text()),
            (
                PathBuf::from("predictions.csv"),
                prediction_table_csv(&self.predictions, &self.exponents),
            ),
            (
                PathBuf::from(format!("errors_real_vs_{label}.csv")),
                error_table_csv(&self.real_errors),
            ),
        ];
        if let Some(t) = &self.regression_errors {
            files.push((
                PathBuf::from(format!("errors_regression_vs_{label}.csv")),
                error_table_csv(t),
            ));
        }
        for (name, contents) in self.series() {
            files.push((Path::new("series").join(name), contents));
        }
        files
    }

    pub fn write_to(&self, dir: &Path) -> Result<Vec<PathBuf>, ToolError> {
        let io_err = |path: &Path, source| ToolError::Write {
            path: path.to_path_buf(),
            source,
        };
        let series = dir.join("series");
        fs::create_dir_all(&series).map_err(|e| io_err(&series, e))?;
        let mut written = Vec::new();
        for (rel, contents) in self.files() {
            let path = dir.join(rel);
            fs::write(&path, contents).map_err(|e| io_err(&path, e))?;
            written.push(path);
        }
        Ok(written)
    }
}

fn write_fit_stats(out: &mut String, fit: &FitResult) {
    let rel = fit
        .mean_relative_error
        .map_or_else(|| "undefined".to_string(), fmt_percent);
    let _ = writeln!(
        out,
        "  rmse {} dB, mae {} dB, mean relative error {rel}",
        fmt_db(fit.rmse),
        fmt_db(fit.mae)
    );
}

fn write_threshold(out: &mut String, name: &str, table: &ErrorTable, report: &ThresholdReport) {
    let above = if report.exceeding.is_empty() {
        String::new()
    } else {
        format!(" ({})", report.exceeding.join(", "))
    };
    let _ = writeln!(
        out,
        "  {name}: {} of {} points above{above}; mean {}, max {}",
        report.count(),
        report.total,
        fmt_percent(table.mean_relative_error),
        fmt_percent(table.max_relative_error)
    );
}
