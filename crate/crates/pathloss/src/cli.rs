use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::error::ErrorKind;
use clap::{Parser, Subcommand, ValueEnum};
use pathloss_core::{
    coverage_distance, fit_exponent_grid, fit_exponent_least_squares, select_best_exponent,
    Error as CoreError, GridRange, PathLossModel, SurveyCampaign,
};

use crate::format::{load_campaign, load_radio_config};
use crate::report::{
    fit_summary_text, fmt_db, prediction_rows, prediction_table_csv, ReportBundle, ReportOptions,
    DEFAULT_EXPONENTS, DEFAULT_THRESHOLD,
};
use crate::ToolError;

#[derive(Debug, Parser)]
#[command(
    name = "pathloss",
    version,
    about = "Path-loss prediction and calibration for site surveys"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, clap::Args)]
struct Inputs {
    /// Campaign CSV (point,distance_m,run,rssi_db)
    #[arg(long)]
    campaign: PathBuf,
    /// Radio config JSON
    #[arg(long)]
    config: PathBuf,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Measured means next to log-distance predictions
    Predict {
        #[command(flatten)]
        inputs: Inputs,
        /// Comma-separated exponents; empty for means only
        #[arg(long, default_value = "3,4,5,6")]
        exponents: String,
        /// Also write predictions.csv into this directory
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Calibrate the propagation exponent
    Fit {
        #[command(flatten)]
        inputs: Inputs,
        #[arg(long, value_enum, default_value_t = Mode::Discrete)]
        mode: Mode,
        /// Candidates for discrete mode
        #[arg(long, default_value = "3,4,5,6")]
        exponents: String,
        /// Grid mode range as lo,hi,step
        #[arg(long, default_value = "0.5,10,0.001")]
        grid: String,
    },
    /// Write prediction and error tables, fit summary and plot series
    Report {
        #[command(flatten)]
        inputs: Inputs,
        #[arg(long)]
        out: PathBuf,
        #[arg(long, default_value = "3,4,5,6")]
        exponents: String,
        /// Use this exponent for the error tables instead of the best candidate
        #[arg(long)]
        exponent: Option<f64>,
        /// Relative error threshold as a fraction
        #[arg(long, default_value_t = DEFAULT_THRESHOLD)]
        threshold: f64,
    },
    /// Distance at which the predicted strength reaches a threshold
    Coverage {
        #[arg(long)]
        config: PathBuf,
        #[arg(long, allow_hyphen_values = true)]
        exponent: f64,
        #[arg(long, allow_hyphen_values = true)]
        min_rssi: f64,
    },
    /// Check a campaign and radio config without computing anything
    Validate {
        #[command(flatten)]
        inputs: Inputs,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Mode {
    Discrete,
    Continuous,
    Grid,
}

fn parse_list(s: &str) -> Result<Vec<f64>, ToolError> {
    s.split(',')
        .map(str::trim)
        .filter(|t| !t.is_empty())
        .map(|t| {
            t.parse::<f64>()
                .map_err(|_| ToolError::Usage(format!("not a number: `{t}`")))
        })
        .collect()
}

fn parse_grid(s: &str) -> Result<GridRange, ToolError> {
    match parse_list(s)?.as_slice() {
        &[lo, hi, step] => Ok(GridRange { lo, hi, step }),
        _ => Err(ToolError::Usage(format!(
            "--grid expects lo,hi,step, got `{s}`"
        ))),
    }
}

fn load(inputs: &Inputs) -> Result<SurveyCampaign, ToolError> {
    Ok(load_campaign(&inputs.campaign, &inputs.config)?)
}

fn write_out(out: &mut dyn Write, text: &str) -> Result<(), ToolError> {
    out.write_all(text.as_bytes())
        .map_err(|source| ToolError::Write {
            path: PathBuf::from("<stdout>"),
            source,
        })
}

/// Runs one command, writing its normal output to `out`.
pub fn run<I, T>(args: I, out: &mut dyn Write) -> Result<(), ToolError>
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = Cli::try_parse_from(args).map_err(|e| ToolError::Usage(e.render().to_string()))?;
    execute(cli.command, out)
}

fn execute(command: Command, out: &mut dyn Write) -> Result<(), ToolError> {
    match command {
        Command::Predict {
            inputs,
            exponents,
            out: dir,
        } => {
            let campaign = load(&inputs)?;
            let exponents = parse_list(&exponents)?;
            let table = prediction_table_csv(&prediction_rows(&campaign, &exponents)?, &exponents);
            write_out(out, &table)?;
            if let Some(dir) = dir {
                write_file(&dir, "predictions.csv", &table)?;
            }
        }
        Command::Fit {
            inputs,
            mode,
            exponents,
            grid,
        } => {
            let campaign = load(&inputs)?;
            let fit = match mode {
                Mode::Discrete => select_best_exponent(&campaign, &parse_list(&exponents)?)?,
                Mode::Continuous => fit_exponent_least_squares(&campaign)?,
                Mode::Grid => fit_exponent_grid(&campaign, parse_grid(&grid)?)?,
            };
            write_out(out, &fit_summary_text(&fit))?;
        }
        Command::Report {
            inputs,
            out: dir,
            exponents,
            exponent,
            threshold,
        } => {
            let campaign = load(&inputs)?;
            let exponents = parse_list(&exponents)?;
            let exponents = if exponents.is_empty() && exponent.is_none() {
                DEFAULT_EXPONENTS.to_vec()
            } else {
                exponents
            };
            let options = ReportOptions {
                exponents,
                comparison: exponent,
                threshold,
            };
            let bundle = ReportBundle::build(&campaign, &options)?;
            let written = bundle.write_to(&dir)?;
            write_out(out, &bundle.summary_text())?;
            write_out(
                out,
                &format!("\nwrote {} files to {}\n", written.len(), dir.display()),
            )?;
        }
        Command::Coverage {
            config,
            exponent,
            min_rssi,
        } => {
            let radio = load_radio_config(&config)?;
            let model = PathLossModel::log_distance(exponent)?;
            let d = coverage_distance(model, &radio, min_rssi)?;
            write_out(out, &format!("{} m\n", fmt_db(d)))?;
        }
        Command::Validate { inputs } => {
            let campaign = load(&inputs)?;
            let points = campaign.points();
            let text = format!(
                "ok: campaign {}, {} points x {} runs, {} to {} m\n",
                campaign.name(),
                points.len(),
                campaign.run_count(),
                points[0].distance(),
                points[points.len() - 1].distance()
            );
            write_out(out, &text)?;
            for p in campaign.points_inside_reference() {
                write_out(
                    out,
                    &format!(
                        "warning: point {} at {} m is inside the reference distance\n",
                        p.label(),
                        p.distance()
                    ),
                )?;
            }
        }
    }
    Ok(())
}

fn write_file(dir: &Path, name: &str, contents: &str) -> Result<(), ToolError> {
    let err = |path: &Path, source| ToolError::Write {
        path: path.to_path_buf(),
        source,
    };
    std::fs::create_dir_all(dir).map_err(|e| err(dir, e))?;
    let path = dir.join(name);
    std::fs::write(&path, contents).map_err(|e| err(&path, e))
}

/// Process entry point: runs the command and maps failures to exit codes.
pub fn main_with<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 1,
            };
        }
    };
    let stdout = std::io::stdout();
    let mut lock = stdout.lock();
    match execute(cli.command, &mut lock) {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("error: {e}");
            if let ToolError::Core(CoreError::DegenerateGeometry) = e {
                eprintln!("hint: a continuous fit needs points at two or more distinct distances; try --mode discrete");
            }
            e.exit_code()
        }
    }
}
