use serde::{Deserialize, Serialize};

use crate::stability::SimplificationLog;

/// Summary of one `simplify` run, one row of a results table.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RunReport {
    pub dataset: String,
    pub init_simplices: usize,
    pub contractions: usize,
    pub iterations: usize,
    pub remaining_simplices: usize,
    pub pct_reduction: f64,
    pub d_b: f64,
    pub epsilon: f64,
    pub p: usize,
    /// `iterations · epsilon`, the guaranteed bound on `d_b`.
    pub bound: f64,
    pub height_source: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
}

impl RunReport {
    pub fn new(dataset: &str, height_source: &str, init_simplices: usize, remaining_simplices: usize, log: &SimplificationLog, d_b: f64) -> Self {
        let pct_reduction = if init_simplices == 0 {
            0.0
        } else {
            100.0 * (1.0 - remaining_simplices as f64 / init_simplices as f64)
        };
        Self {
            dataset: dataset.to_string(),
            init_simplices,
            contractions: log.contraction_count(),
            iterations: log.stage_count(),
            remaining_simplices,
            pct_reduction,
            d_b,
            epsilon: log.epsilon,
            p: log.p,
            bound: log.distance_bound(),
            height_source: height_source.to_string(),
            seed: None,
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn percentages_and_json_round_trip() {
        let log = SimplificationLog {
            stages: Vec::new(),
            epsilon: 0.5,
            p: 1,
        };
        let r = RunReport::new("t", "z", 200, 50, &log, 0.25);
        assert_eq!(r.pct_reduction, 75.0);
        assert_eq!(r.bound, 0.0);
        let back: RunReport = serde_json::from_str(&r.to_json()).unwrap();
        assert_eq!(back, r);
        assert!(!r.to_json().contains("seed"));
    }
}
