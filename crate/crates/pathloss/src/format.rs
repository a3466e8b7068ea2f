//! Campaign CSV and radio-config JSON.
//!
//! Campaign files have the header `point,distance_m,run,rssi_db` and one
//! row per RSSI reading. Radio configs are JSON objects with the keys
//! `erp_db`, `ref_loss_db`, `ref_distance_m`, `frequency_ghz` and the
//! optional `tx_gain_dbi` / `rx_gain_dbi` (default 0).

use std::fs;
use std::io;
use std::path::{Path, PathBuf};

use pathloss_core::{RadioConfig, SampleRecord, SurveyCampaign};
use serde::{Deserialize, Serialize};
use thiserror::Error;

pub const CAMPAIGN_HEADER: [&str; 4] = ["point", "distance_m", "run", "rssi_db"];

#[derive(Debug, Error)]
pub enum FormatError {
    #[error("{}: file not found", path.display())]
    NotFound { path: PathBuf },
    #[error("{}: {source}", path.display())]
    Io {
        path: PathBuf,
        #[source]
        source: io::Error,
    },
    #[error("bad header: expected `{}`, found `{found}`", CAMPAIGN_HEADER.join(","))]
    BadHeader { found: String },
    #[error("row {row}: {reason}")]
    MalformedRow { row: u64, reason: String },
    #[error("radio config: {0}")]
    Config(#[from] serde_json::Error),
    #[error(transparent)]
    Invalid(#[from] pathloss_core::Error),
}

impl FormatError {
    fn io(path: &Path, source: io::Error) -> Self {
        if source.kind() == io::ErrorKind::NotFound {
            FormatError::NotFound {
                path: path.to_path_buf(),
            }
        } else {
            FormatError::Io {
                path: path.to_path_buf(),
                source,
            }
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RadioConfigFile {
    erp_db: f64,
    ref_loss_db: f64,
    ref_distance_m: f64,
    frequency_ghz: f64,
    #[serde(default)]
    tx_gain_dbi: f64,
    #[serde(default)]
    rx_gain_dbi: f64,
}

pub fn parse_radio_config(text: &str) -> Result<RadioConfig, FormatError> {
    let f: RadioConfigFile = serde_json::from_str(text)?;
    Ok(RadioConfig::new(
        f.erp_db,
        f.ref_loss_db,
        f.ref_distance_m,
        f.frequency_ghz,
        f.tx_gain_dbi,
        f.rx_gain_dbi,
    )?)
}

pub fn radio_config_to_json(radio: &RadioConfig) -> String {
    let f = RadioConfigFile {
        erp_db: radio.erp,
        ref_loss_db: radio.ref_loss,
        ref_distance_m: radio.ref_distance,
        frequency_ghz: radio.frequency,
        tx_gain_dbi: radio.tx_gain,
        rx_gain_dbi: radio.rx_gain,
    };
    let mut s = serde_json::to_string_pretty(&f).expect("plain struct serializes");
    s.push('\n');
    s
}

fn malformed(row: u64, reason: impl Into<String>) -> FormatError {
    FormatError::MalformedRow {
        row,
        reason: reason.into(),
    }
}

/// Parses campaign CSV text into per-sample records. Row numbers are
/// 1-based file lines, the header being line 1.
pub fn parse_records(data: &str) -> Result<Vec<SampleRecord>, FormatError> {
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(false)
        .trim(csv::Trim::All)
        .flexible(true)
        .from_reader(data.as_bytes());
    let mut rows = reader.records();

    let header = match rows.next() {
        None => return Ok(Vec::new()),
        Some(h) => h.map_err(|e| malformed(1, e.to_string()))?,
    };
    if !header.iter().eq(CAMPAIGN_HEADER) {
        return Err(FormatError::BadHeader {
            found: header.iter().collect::<Vec<_>>().join(","),
        });
    }

    let mut out = Vec::new();
    for rec in rows {
        let rec = rec.map_err(|e| {
            let row = e.position().map_or(0, |p| p.line());
            malformed(row, e.to_string())
        })?;
        let row = rec.position().map_or(0, |p| p.line());
        if rec.len() == 1 && rec[0].is_empty() {
            continue;
        }
        if rec.len() != 4 {
            return Err(malformed(
                row,
                format!("expected 4 fields, found {}", rec.len()),
            ));
        }
        let label = rec[0].to_string();
        if label.is_empty() {
            return Err(malformed(row, "empty point label"));
        }
        let distance: f64 = rec[1]
            .parse()
            .map_err(|_| malformed(row, format!("bad distance `{}`", &rec[1])))?;
        let run: u32 = rec[2]
            .parse()
            .map_err(|_| malformed(row, format!("bad run index `{}`", &rec[2])))?;
        let rssi: f64 = rec[3]
            .parse()
            .map_err(|_| malformed(row, format!("bad rssi `{}`", &rec[3])))?;
        if !(distance.is_finite() && distance > 0.0) {
            return Err(malformed(row, format!("non-positive distance {distance}")));
        }
        if !rssi.is_finite() {
            return Err(malformed(row, format!("non-finite rssi {rssi}")));
        }
        out.push(SampleRecord {
            row: row as usize,
            label,
            distance,
            run,
            rssi,
        });
    }
    Ok(out)
}

/// Parses a radio config and campaign CSV into a validated campaign.
pub fn ingest_campaign(
    name: &str,
    config_text: &str,
    data_text: &str,
) -> Result<SurveyCampaign, FormatError> {
    let radio = parse_radio_config(config_text)?;
    let records = parse_records(data_text)?;
    Ok(SurveyCampaign::from_records(name, radio, records)?)
}

pub fn read_text(path: &Path) -> Result<String, FormatError> {
    fs::read_to_string(path).map_err(|e| FormatError::io(path, e))
}

/// Loads a campaign from disk. The campaign is named after the data file's
/// stem.
pub fn load_campaign(data_path: &Path, config_path: &Path) -> Result<SurveyCampaign, FormatError> {
    let config = read_text(config_path)?;
    let data = read_text(data_path)?;
    let name = data_path
        .file_stem()
        .and_then(|s| s.to_str())
        .unwrap_or("campaign");
    ingest_campaign(name, &config, &data)
}

pub fn load_radio_config(path: &Path) -> Result<RadioConfig, FormatError> {
    parse_radio_config(&read_text(path)?)
}

/// Serializes a campaign back to CSV, runs numbered from 1.
pub fn campaign_to_csv(campaign: &SurveyCampaign) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(CAMPAIGN_HEADER).expect("write to memory");
    for r in campaign.to_records() {
        w.write_record([
            r.label,
            r.distance.to_string(),
            r.run.to_string(),
            r.rssi.to_string(),
        ])
        .expect("write to memory");
    }
    String::from_utf8(w.into_inner().expect("flush to memory")).expect("csv output is utf-8")
}
