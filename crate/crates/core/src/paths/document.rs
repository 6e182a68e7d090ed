//! The waypoint input document.
//!
//! ```json
//! { "dimension": 2, "closed": false, "points": [[0, 0], [1, 0], [1, 1]] }
//! ```
//!
//! Coordinates are in meters. See `docs/formats.md` for the full schema.

use serde::{Deserialize, Serialize};

use super::WaypointPath;
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct WaypointDocument {
    pub dimension: usize,
    #[serde(default)]
    pub closed: bool,
    pub points: Vec<Vec<f64>>,
}

impl WaypointDocument {
    pub fn parse(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Input(format!("waypoint document: {e}")))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("document serializes")
    }

    pub fn into_path(self) -> Result<WaypointPath> {
        if !(2..=3).contains(&self.dimension) {
            return Err(Error::Input(format!(
                "dimension must be 2 or 3, got {}",
                self.dimension
            )));
        }
        if self.points.is_empty() {
            return Err(Error::Input("no waypoints".into()));
        }
        if let Some((i, p)) = self.points.iter().enumerate().find(|(_, p)| p.len() != self.dimension) {
            return Err(Error::Input(format!(
                "point {i} has {} coordinates, expected {}",
                p.len(),
                self.dimension
            )));
        }
        WaypointPath::new(self.points, self.closed).map_err(|e| Error::Input(e.to_string()))
    }
}

impl From<&WaypointPath> for WaypointDocument {
    fn from(p: &WaypointPath) -> Self {
        Self {
            dimension: p.dimension(),
            closed: p.is_closed(),
            points: p.points().to_vec(),
        }
    }
}

/// Parses and validates a waypoint document in one step.
pub fn parse_waypoints(text: &str) -> Result<WaypointPath> {
    WaypointDocument::parse(text)?.into_path()
}
