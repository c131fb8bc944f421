//! On-disk schedule format.
//!
//! ```json
//! { "t0": 0.0, "omega0": 1000.0,
//!   "segments": [ { "duration": 0.01, "omega1": 100.0, "omega_rf": 1000.0, "phi": 1.57 } ] }
//! ```
//!
//! Frequencies in rad/s, times in seconds, phases in radians. `phi` is the
//! absolute-lab-time carrier phase, so a file replays without knowing which
//! algorithm produced it. Floats are written shortest-round-trip.

use std::fs;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::propagator::{PulseSegment, Schedule};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ScheduleFile {
    pub t0: f64,
    pub omega0: f64,
    pub segments: Vec<PulseSegment>,
}

impl ScheduleFile {
    pub fn new(omega0: f64, schedule: &Schedule) -> Self {
        Self {
            t0: schedule.t0,
            omega0,
            segments: schedule.segments.clone(),
        }
    }

    pub fn schedule(&self) -> Schedule {
        Schedule::new(self.t0, self.segments.clone())
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.omega0.is_finite() && self.omega0 > 0.0) {
            return Err(Error::InvalidSchedule(format!(
                "omega0 must be > 0, got {}",
                self.omega0
            )));
        }
        self.schedule().validate()
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let file: ScheduleFile = serde_json::from_str(text)?;
        file.validate()?;
        Ok(file)
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)?)
    }

    pub fn read(path: &Path) -> Result<Self> {
        Self::from_json(&fs::read_to_string(path)?)
    }

    pub fn write(&self, path: &Path) -> Result<()> {
        let mut text = self.to_json()?;
        text.push('\n');
        fs::write(path, text)?;
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_the_documented_layout() {
        let text = r#"{"t0": 0.5, "omega0": 1000.0,
            "segments": [{"duration": 0.01, "omega1": 100.0, "omega_rf": 1000.0, "phi": -500.0}]}"#;
        let f = ScheduleFile::from_json(text).unwrap();
        assert_eq!(f.t0, 0.5);
        assert_eq!(f.segments[0].phi, -500.0);
    }

    #[test]
    fn rejects_malformed_files() {
        assert!(ScheduleFile::from_json("{").is_err());
        assert!(
            ScheduleFile::from_json(r#"{"t0": 0, "omega0": 1, "segments": [], "x": 1}"#).is_err()
        );
        assert!(ScheduleFile::from_json(r#"{"t0": 0, "omega0": 0, "segments": []}"#).is_err());
        let neg = r#"{"t0": 0, "omega0": 1, "segments": [{"duration": -1, "omega1": 0, "omega_rf": 1, "phi": 0}]}"#;
        assert!(ScheduleFile::from_json(neg).is_err());
    }

    #[test]
    fn serialization_is_byte_stable() {
        let f = ScheduleFile {
            t0: 0.1,
            omega0: 5e8,
            segments: vec![PulseSegment {
                duration: 3.1422209721205115e-5,
                omega1: 49990.00199960008,
                omega_rf: 5e8,
                phi: std::f64::consts::FRAC_PI_2 - std::f64::consts::FRAC_PI_4 - 5e7,
            }],
        };
        let a = f.to_json().unwrap();
        let back = ScheduleFile::from_json(&a).unwrap();
        assert_eq!(back, f);
        assert_eq!(back.to_json().unwrap(), a);
    }
}
