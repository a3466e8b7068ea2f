use alloc::string::String;
use core::fmt;

pub type Result<T> = core::result::Result<T, Error>;

/// Everything that can go wrong in the numeric core.
///
/// Variants fall in two families: validation failures on input data
/// (bad distances, malformed campaigns) and degenerate computations
/// (nothing to fit, no slope information). [`Error::is_degenerate`]
/// separates them.
#[derive(Debug, Clone, PartialEq)]
pub enum Error {
    /// A distance was zero, negative or not finite.
    InvalidDistance(f64),
    /// A propagation exponent was zero, negative or not finite.
    InvalidExponent(f64),
    /// A radio configuration field is out of range.
    InvalidRadio {
        field: &'static str,
        value: f64,
    },
    /// An RSSI sample was not finite or above the 0 dB reference.
    InvalidSample {
        label: String,
        value: f64,
    },
    /// The record at `row` repeats a (point, run) pair seen earlier.
    DuplicateRun {
        row: usize,
        label: String,
        run: u32,
    },
    /// The same point label was given two different distances.
    InconsistentDistance {
        row: usize,
        label: String,
    },
    /// Points were measured a different number of times.
    NonUniformRunCount {
        label: String,
        expected: usize,
        found: usize,
    },
    DuplicateLabel(String),
    EmptySamples(String),
    /// The campaign has no measurement points.
    NoPoints,
    EmptyCandidates,
    /// An exponent search range is empty or non-positive.
    InvalidRange {
        lo: f64,
        hi: f64,
        step: f64,
    },
    /// Too few distinct distances to estimate a slope.
    DegenerateGeometry,
    /// A least-squares fit produced a non-positive exponent.
    NonPhysicalFit(f64),
    /// Coverage threshold is above the strength at the reference distance.
    Unreachable {
        min_rssi: f64,
        ceiling: f64,
    },
    /// The model has no closed-form inverse here.
    NotInvertible,
    ZeroReference(String),
    /// An estimate list lacks an entry for a point.
    MissingEstimate(String),
    InvalidThreshold(f64),
}

impl Error {
    /// `true` for failures caused by the shape of otherwise valid data
    /// rather than by invalid values.
    pub fn is_degenerate(&self) -> bool {
        matches!(
            self,
            Error::DegenerateGeometry
                | Error::NonPhysicalFit(_)
                | Error::Unreachable { .. }
                | Error::NotInvertible
                | Error::ZeroReference(_)
        )
    }
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::InvalidDistance(d) => write!(f, "non-positive distance: {d}"),
            Error::InvalidExponent(n) => write!(f, "propagation exponent must be finite and > 0, got {n}"),
            Error::InvalidRadio { field, value } => write!(f, "invalid radio config: {field} = {value}"),
            Error::InvalidSample { label, value } => {
                write!(f, "point {label}: rssi sample {value} is not finite or is above 0 dB")
            }
            Error::DuplicateRun { row, label, run } => {
                write!(f, "row {row}: duplicate run {run} for point {label}")
            }
            Error::InconsistentDistance { row, label } => {
                write!(f, "row {row}: point {label} listed with a different distance")
            }
            Error::NonUniformRunCount { label, expected, found } => write!(
                f,
                "non-uniform run count: point {label} has {found} runs, expected {expected}"
            ),
            Error::DuplicateLabel(label) => write!(f, "duplicate point label {label}"),
            Error::EmptySamples(label) => write!(f, "point {label} has no samples"),
            Error::NoPoints => f.write_str("no measurement points"),
            Error::EmptyCandidates => f.write_str("no candidate exponents given"),
            Error::InvalidRange { lo, hi, step } => {
                write!(f, "invalid exponent range [{lo}, {hi}] with step {step}")
            }
            Error::DegenerateGeometry => f.write_str(
                "degenerate geometry: need at least two distinct distances away from the reference distance",
            ),
            Error::NonPhysicalFit(n) => {
                write!(f, "fitted exponent {n} is not positive; signal does not decay with distance")
            }
            Error::Unreachable { min_rssi, ceiling } => write!(
                f,
                "threshold {min_rssi} dB is unreachable: strength at the reference distance is {ceiling} dB"
            ),
            Error::NotInvertible => f.write_str("free-space model is not invertible in this toolkit"),
            Error::ZeroReference(label) => write!(f, "point {label}: reference value is zero"),
            Error::MissingEstimate(label) => write!(f, "no estimate for point {label}"),
            Error::InvalidThreshold(t) => write!(f, "threshold must lie in (0, 1), got {t}"),
        }
    }
}

impl core::error::Error for Error {}
