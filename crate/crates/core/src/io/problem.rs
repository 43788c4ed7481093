use serde::{Deserialize, Serialize};

use crate::config_space::{ConfigurationQuery, FrameMode};
use crate::error::{Error, Issue, Result};
use crate::planner::PlanOptions;
use crate::point::Point;

/// Version tag written into, and required from, every document.
pub const FORMAT_VERSION: &str = "1";

/// Samples per sub-interval used by certificates unless a document says otherwise.
pub const DEFAULT_SAMPLES_PER_SEGMENT: usize = 64;

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProblemOptions {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub snap_tolerance: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub samples_per_segment: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
}

impl ProblemOptions {
    fn is_empty(&self) -> bool {
        *self == ProblemOptions::default()
    }
}

/// A planning problem as stored on disk.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProblemDocument {
    pub version: String,
    pub dim: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub mode: Option<String>,
    pub starts: Vec<Vec<f64>>,
    pub goals: Vec<Vec<f64>>,
    pub obstacles: Vec<Vec<f64>>,
    #[serde(default, skip_serializing_if = "ProblemOptions::is_empty")]
    pub options: ProblemOptions,
}

impl ProblemDocument {
    pub fn from_query(query: &ConfigurationQuery<f64>, mode: Option<FrameMode>) -> Self {
        let coords = |pts: &[Point<f64>]| pts.iter().map(|p| p.0.clone()).collect();
        ProblemDocument {
            version: FORMAT_VERSION.into(),
            dim: query.dim(),
            mode: mode.map(|m| m.as_str().to_string()),
            starts: coords(query.starts()),
            goals: coords(query.goals()),
            obstacles: coords(query.obstacles()),
            options: ProblemOptions::default(),
        }
    }

    fn raw_query(&self) -> ConfigurationQuery<f64> {
        let pts = |v: &[Vec<f64>]| v.iter().map(|c| Point(c.clone())).collect();
        ConfigurationQuery::from_parts(self.dim, pts(&self.starts), pts(&self.goals), pts(&self.obstacles))
    }

    /// Every problem with the document, each tagged with its field path.
    pub fn issues(&self) -> Vec<Issue> {
        let mut issues = Vec::new();
        if self.version != FORMAT_VERSION {
            issues.push(Issue::new(
                "version",
                format!("unsupported version \"{}\" (expected \"{FORMAT_VERSION}\")", self.version),
            ));
        }
        issues.extend(self.raw_query().issues());
        if let Some(mode) = &self.mode {
            match mode.parse::<FrameMode>() {
                Ok(FrameMode::ObstaclePair) => {
                    if !self.dim.is_multiple_of(2) {
                        issues.push(Issue::new("mode", format!("obstacle_pair needs an even dimension, got {}", self.dim)));
                    }
                    if self.obstacles.len() < 2 {
                        issues.push(Issue::new("mode", "obstacle_pair needs at least two obstacles"));
                    } else if self.obstacles[0] == self.obstacles[1] {
                        issues.push(Issue::new("mode", "obstacle_pair needs obstacles[0] != obstacles[1]"));
                    }
                }
                Ok(FrameMode::Fixed) => {}
                Err(e) => issues.push(Issue::new("mode", e)),
            }
        }
        if let Some(s) = self.options.snap_tolerance {
            if !(s >= 0.0 && s.is_finite()) {
                issues.push(Issue::new("options.snap_tolerance", format!("must be finite and non-negative, got {s}")));
            }
        }
        if let Some(k) = self.options.samples_per_segment {
            if k < 2 {
                issues.push(Issue::new("options.samples_per_segment", format!("must be at least 2, got {k}")));
            }
        }
        issues
    }

    pub fn query(&self) -> Result<ConfigurationQuery<f64>> {
        let issues = self.issues();
        if issues.is_empty() {
            Ok(self.raw_query())
        } else {
            Err(Error::InvalidQuery(issues))
        }
    }

    pub fn frame_mode(&self) -> Option<FrameMode> {
        self.mode.as_deref().and_then(|m| m.parse().ok())
    }

    pub fn plan_options(&self) -> PlanOptions<f64> {
        PlanOptions {
            mode: self.frame_mode(),
            snap_tolerance: self.options.snap_tolerance.unwrap_or(0.0),
        }
    }

    pub fn samples_per_segment(&self) -> usize {
        self.options.samples_per_segment.unwrap_or(DEFAULT_SAMPLES_PER_SEGMENT)
    }
}

pub(crate) fn syntax_error(e: serde_json::Error) -> Error {
    Error::Syntax {
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    }
}

/// Parses and validates a problem document.
///
/// Malformed JSON is reported with its line and column. Otherwise all
/// semantic problems are collected and reported together.
pub fn parse_problem(text: &str) -> Result<ProblemDocument> {
    let doc: ProblemDocument = serde_json::from_str(text).map_err(syntax_error)?;
    let issues = doc.issues();
    if issues.is_empty() {
        Ok(doc)
    } else {
        Err(Error::InvalidQuery(issues))
    }
}

pub fn serialize_problem(doc: &ProblemDocument) -> String {
    serde_json::to_string_pretty(doc).expect("problem documents serialize")
}
