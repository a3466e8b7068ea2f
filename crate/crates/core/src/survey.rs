//! Radio configuration and measurement campaigns.

use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec::Vec;

use crate::error::{Error, Result};

/// Transmitter parameters shared by every prediction in a campaign.
///
/// All power quantities are on the same relative dB scale as the measured
/// RSSI samples; nothing converts between dB and dBm.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RadioConfig {
    /// Effective radiated power, dB.
    pub erp: f64,
    /// Path loss at `ref_distance`, dB.
    pub ref_loss: f64,
    /// Reference distance, meters.
    pub ref_distance: f64,
    /// Carrier frequency, GHz.
    pub frequency: f64,
    /// Transmit antenna gain, dBi.
    pub tx_gain: f64,
    /// Receive antenna gain, dBi.
    pub rx_gain: f64,
}

impl RadioConfig {
    pub fn new(
        erp: f64,
        ref_loss: f64,
        ref_distance: f64,
        frequency: f64,
        tx_gain: f64,
        rx_gain: f64,
    ) -> Result<Self> {
        let radio = RadioConfig {
            erp,
            ref_loss,
            ref_distance,
            frequency,
            tx_gain,
            rx_gain,
        };
        radio.validate()?;
        Ok(radio)
    }

    /// The 802.11g access point of the engine-room survey: 20 dB ERP,
    /// 20 dB of loss at 1 m, 2.4 GHz, no antenna gain terms.
    pub fn engine_room() -> Self {
        RadioConfig {
            erp: 20.0,
            ref_loss: 20.0,
            ref_distance: 1.0,
            frequency: 2.4,
            tx_gain: 0.0,
            rx_gain: 0.0,
        }
    }

    pub fn validate(&self) -> Result<()> {
        let finite = [
            ("erp", self.erp),
            ("ref_loss", self.ref_loss),
            ("tx_gain", self.tx_gain),
            ("rx_gain", self.rx_gain),
        ];
        for (field, value) in finite {
            if !value.is_finite() {
                return Err(Error::InvalidRadio { field, value });
            }
        }
        for (field, value) in [
            ("ref_distance", self.ref_distance),
            ("frequency", self.frequency),
        ] {
            if !(value.is_finite() && value > 0.0) {
                return Err(Error::InvalidRadio { field, value });
            }
        }
        Ok(())
    }

    /// Predicted strength at the reference distance for any log-distance
    /// exponent.
    pub fn reference_rssi(&self) -> f64 {
        self.erp - self.ref_loss
    }
}

/// One surveyed location with its per-run RSSI readings.
#[derive(Debug, Clone, PartialEq)]
pub struct MeasurementPoint {
    label: String,
    distance: f64,
    samples: Vec<f64>,
}

impl MeasurementPoint {
    pub fn new(label: impl Into<String>, distance: f64, samples: Vec<f64>) -> Result<Self> {
        let label = label.into();
        if !(distance.is_finite() && distance > 0.0) {
            return Err(Error::InvalidDistance(distance));
        }
        if samples.is_empty() {
            return Err(Error::EmptySamples(label));
        }
        if let Some(&value) = samples.iter().find(|s| !(s.is_finite() && **s <= 0.0)) {
            return Err(Error::InvalidSample { label, value });
        }
        Ok(MeasurementPoint {
            label,
            distance,
            samples,
        })
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    /// Distance from the transmitter, meters.
    pub fn distance(&self) -> f64 {
        self.distance
    }

    /// RSSI readings in run order, dB.
    pub fn samples(&self) -> &[f64] {
        &self.samples
    }

    /// Arithmetic mean of the samples.
    pub fn mean(&self) -> f64 {
        self.samples.iter().sum::<f64>() / self.samples.len() as f64
    }
}

/// One row of a campaign data file: a single RSSI reading.
///
/// `row` is the 1-based line number in the source, used in error messages.
#[derive(Debug, Clone, PartialEq)]
pub struct SampleRecord {
    pub row: usize,
    pub label: String,
    pub distance: f64,
    pub run: u32,
    pub rssi: f64,
}

/// A validated measurement campaign.
///
/// Labels are unique, every point has the same number of runs and points
/// are ordered by ascending distance.
#[derive(Debug, Clone, PartialEq)]
pub struct SurveyCampaign {
    name: String,
    radio: RadioConfig,
    points: Vec<MeasurementPoint>,
}

impl SurveyCampaign {
    pub fn new(
        name: impl Into<String>,
        radio: RadioConfig,
        mut points: Vec<MeasurementPoint>,
    ) -> Result<Self> {
        radio.validate()?;
        if points.is_empty() {
            return Err(Error::NoPoints);
        }
        let mut seen = BTreeMap::new();
        for p in &points {
            if seen.insert(p.label.as_str(), ()).is_some() {
                return Err(Error::DuplicateLabel(p.label.clone()));
            }
        }
        let expected = points[0].samples.len();
        if let Some(p) = points.iter().find(|p| p.samples.len() != expected) {
            return Err(Error::NonUniformRunCount {
                label: p.label.clone(),
                expected,
                found: p.samples.len(),
            });
        }
        // stable: equal distances keep their input order
        points.sort_by(|a, b| a.distance.total_cmp(&b.distance));
        Ok(SurveyCampaign {
            name: name.into(),
            radio,
            points,
        })
    }

    /// Groups per-run records into points and validates the result.
    ///
    /// Samples within a point are ordered by run index. Points are first
    /// collected in order of first appearance, then sorted by distance.
    pub fn from_records(
        name: impl Into<String>,
        radio: RadioConfig,
        records: impl IntoIterator<Item = SampleRecord>,
    ) -> Result<Self> {
        struct Group {
            distance: f64,
            runs: BTreeMap<u32, f64>,
        }

        let mut order: Vec<String> = Vec::new();
        let mut groups: BTreeMap<String, Group> = BTreeMap::new();
        for rec in records {
            if !(rec.distance.is_finite() && rec.distance > 0.0) {
                return Err(Error::InvalidDistance(rec.distance));
            }
            if !(rec.rssi.is_finite() && rec.rssi <= 0.0) {
                return Err(Error::InvalidSample {
                    label: rec.label,
                    value: rec.rssi,
                });
            }
            let group = match groups.get_mut(&rec.label) {
                Some(g) => g,
                None => {
                    order.push(rec.label.clone());
                    groups.entry(rec.label.clone()).or_insert(Group {
                        distance: rec.distance,
                        runs: BTreeMap::new(),
                    })
                }
            };
            if group.distance != rec.distance {
                return Err(Error::InconsistentDistance {
                    row: rec.row,
                    label: rec.label,
                });
            }
            if group.runs.insert(rec.run, rec.rssi).is_some() {
                return Err(Error::DuplicateRun {
                    row: rec.row,
                    label: rec.label,
                    run: rec.run,
                });
            }
        }

        let points = order
            .into_iter()
            .map(|label| {
                let group = groups.remove(&label).expect("grouped label");
                MeasurementPoint::new(label, group.distance, group.runs.into_values().collect())
            })
            .collect::<Result<Vec<_>>>()?;
        SurveyCampaign::new(name, radio, points)
    }

    /// Flattens the campaign back into records, runs numbered from 1.
    pub fn to_records(&self) -> Vec<SampleRecord> {
        let mut row = 1;
        let mut out = Vec::with_capacity(self.points.len() * self.run_count());
        for p in &self.points {
            for (i, &rssi) in p.samples.iter().enumerate() {
                row += 1;
                out.push(SampleRecord {
                    row,
                    label: p.label.clone(),
                    distance: p.distance,
                    run: i as u32 + 1,
                    rssi,
                });
            }
        }
        out
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn radio(&self) -> &RadioConfig {
        &self.radio
    }

    /// Same points measured under a different radio configuration.
    pub fn with_radio(&self, radio: RadioConfig) -> Result<Self> {
        radio.validate()?;
        Ok(SurveyCampaign {
            radio,
            ..self.clone()
        })
    }

    pub fn points(&self) -> &[MeasurementPoint] {
        &self.points
    }

    pub fn run_count(&self) -> usize {
        self.points[0].samples.len()
    }

    pub fn point(&self, label: &str) -> Option<&MeasurementPoint> {
        self.points.iter().find(|p| p.label == label)
    }

    pub fn distances(&self) -> Vec<f64> {
        self.points.iter().map(|p| p.distance).collect()
    }

    pub fn means(&self) -> Vec<f64> {
        self.points.iter().map(MeasurementPoint::mean).collect()
    }

    /// Points closer than the reference distance, where the log-distance
    /// model is extrapolated.
    pub fn points_inside_reference(&self) -> impl Iterator<Item = &MeasurementPoint> {
        self.points
            .iter()
            .filter(move |p| p.distance < self.radio.ref_distance)
    }
}
