#![allow(dead_code)]

use pathloss_core::{MeasurementPoint, RadioConfig, SurveyCampaign};

/// Engine-room survey: distance in meters and the five per-run readings.
pub const ENGINE_ROOM: [(f64, [f64; 5]); 20] = [
    (7.0, [-45.0, -43.0, -46.0, -45.0, -47.0]),
    (13.0, [-47.0, -53.0, -54.0, -54.0, -59.0]),
    (19.0, [-56.0, -55.0, -55.0, -57.0, -57.0]),
    (25.0, [-61.0, -58.0, -55.0, -57.0, -62.0]),
    (31.0, [-63.0, -60.0, -58.0, -61.0, -61.0]),
    (42.0, [-66.0, -57.0, -56.0, -57.0, -56.0]),
    (48.0, [-61.0, -58.0, -64.0, -64.0, -65.0]),
    (54.0, [-66.0, -64.0, -65.0, -66.0, -66.0]),
    (60.0, [-68.0, -63.0, -64.0, -68.0, -68.0]),
    (66.0, [-73.0, -69.0, -67.0, -68.0, -68.0]),
    (78.0, [-73.0, -62.0, -63.0, -70.0, -69.0]),
    (84.0, [-76.0, -67.0, -67.0, -75.0, -75.0]),
    (90.0, [-83.0, -76.0, -74.0, -77.0, -74.0]),
    (96.0, [-82.0, -76.0, -76.0, -78.0, -77.0]),
    (102.0, [-83.0, -78.0, -77.0, -79.0, -78.0]),
    (113.0, [-79.0, -79.0, -78.0, -74.0, -72.0]),
    (119.0, [-88.0, -77.0, -73.0, -84.0, -80.0]),
    (125.0, [-86.0, -84.0, -80.0, -84.0, -81.0]),
    (131.0, [-89.0, -88.0, -82.0, -84.0, -83.0]),
    (137.0, [-87.0, -84.0, -85.0, -82.0, -83.0]),
];

pub fn engine_room() -> SurveyCampaign {
    let points = ENGINE_ROOM
        .iter()
        .enumerate()
        .map(|(i, (d, s))| MeasurementPoint::new(format!("P{}", i + 1), *d, s.to_vec()).unwrap())
        .collect();
    SurveyCampaign::new("engine_room", RadioConfig::engine_room(), points).unwrap()
}

/// Campaign whose every sample lies exactly on the log-distance curve.
pub fn noiseless(n: f64, radio: RadioConfig, distances: &[f64], runs: usize) -> SurveyCampaign {
    let points = distances
        .iter()
        .enumerate()
        .map(|(i, &d)| {
            let rssi = radio.erp - radio.ref_loss - 10.0 * n * (d / radio.ref_distance).log10();
            MeasurementPoint::new(format!("S{i}"), d, vec![rssi; runs]).unwrap()
        })
        .collect();
    SurveyCampaign::new("synthetic", radio, points).unwrap()
}

/// Brute-force rmse scan; the independent oracle for the closed-form fit.
pub fn brute_force_exponent(campaign: &SurveyCampaign, lo: f64, hi: f64, step: f64) -> f64 {
    let radio = campaign.radio();
    let steps = ((hi - lo) / step).round() as usize;
    let mut best = (f64::INFINITY, lo);
    for i in 0..=steps {
        let n = lo + i as f64 * step;
        let sse: f64 = campaign
            .points()
            .iter()
            .map(|p| {
                let pred = radio.erp
                    - (radio.ref_loss + 10.0 * n * (p.distance() / radio.ref_distance).log10());
                (p.samples().iter().sum::<f64>() / p.samples().len() as f64 - pred).powi(2)
            })
            .sum();
        if sse < best.0 {
            best = (sse, n);
        }
    }
    best.1
}
