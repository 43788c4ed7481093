use std::fmt::Write as _;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::config_space::{ConfigurationQuery, RegionLabel};
use crate::error::{Error, Result};
use crate::io::problem::{syntax_error, FORMAT_VERSION};
use crate::path::{PathSegment, PiecewisePath, SegmentKind, Time};
use crate::planner::PlanResult;
use crate::point::Point;

/// Exact time written as `"num/den"`; plain integers are accepted on input.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ExactTime(pub Time);

impl Serialize for ExactTime {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&format!("{}/{}", self.0.numer(), self.0.denom()))
    }
}

impl<'de> Deserialize<'de> for ExactTime {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let text = String::deserialize(d)?;
        let parse = |s: &str| s.trim().parse::<i64>().map_err(serde::de::Error::custom);
        let t = match text.split_once('/') {
            Some((n, den)) => {
                let den = parse(den)?;
                if den == 0 {
                    return Err(serde::de::Error::custom("zero denominator"));
                }
                Time::new(parse(n)?, den)
            }
            None => Time::from_integer(parse(&text)?),
        };
        Ok(ExactTime(t))
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum SegmentDocument {
    Linear {
        t0: ExactTime,
        t1: ExactTime,
        p_start: Vec<f64>,
        p_end: Vec<f64>,
    },
    Arc {
        t0: ExactTime,
        t1: ExactTime,
        center: Vec<f64>,
        radius: f64,
        basis_u: Vec<f64>,
        basis_v: Vec<f64>,
        angle_start: f64,
        angle_end: f64,
    },
}

impl SegmentDocument {
    fn from_segment(s: &PathSegment<f64>) -> Self {
        let (t0, t1) = (ExactTime(s.t0), ExactTime(s.t1));
        match &s.kind {
            SegmentKind::Linear { p_start, p_end } => SegmentDocument::Linear {
                t0,
                t1,
                p_start: p_start.0.clone(),
                p_end: p_end.0.clone(),
            },
            SegmentKind::Arc {
                center,
                radius,
                basis_u,
                basis_v,
                angle_start,
                angle_end,
            } => SegmentDocument::Arc {
                t0,
                t1,
                center: center.0.clone(),
                radius: *radius,
                basis_u: basis_u.0.clone(),
                basis_v: basis_v.0.clone(),
                angle_start: *angle_start,
                angle_end: *angle_end,
            },
        }
    }

    fn to_segment(&self, robot: usize) -> PathSegment<f64> {
        match self.clone() {
            SegmentDocument::Linear { t0, t1, p_start, p_end } => PathSegment {
                robot,
                t0: t0.0,
                t1: t1.0,
                kind: SegmentKind::linear(Point(p_start), Point(p_end)),
            },
            SegmentDocument::Arc {
                t0,
                t1,
                center,
                radius,
                basis_u,
                basis_v,
                angle_start,
                angle_end,
            } => PathSegment {
                robot,
                t0: t0.0,
                t1: t1.0,
                kind: SegmentKind::Arc {
                    center: Point(center),
                    radius,
                    basis_u: Point(basis_u),
                    basis_v: Point(basis_v),
                    angle_start,
                    angle_end,
                },
            },
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FrameDocument {
    pub e: Vec<f64>,
    pub e_perp: Vec<f64>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct OrderingDocument {
    pub sigma: String,
    pub sigma_prime: String,
}

/// A plan as stored on disk.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PlanDocument {
    pub version: String,
    pub mode: String,
    pub frame: FrameDocument,
    pub region: RegionLabel,
    pub domain_index: usize,
    pub swap_count: usize,
    pub desingularized: bool,
    pub orderings: OrderingDocument,
    pub dim: usize,
    pub starts: Vec<Vec<f64>>,
    pub goals: Vec<Vec<f64>>,
    pub obstacles: Vec<Vec<f64>>,
    /// One segment list per robot, in robot order.
    pub robots: Vec<Vec<SegmentDocument>>,
}

fn coords(pts: &[Point<f64>]) -> Vec<Vec<f64>> {
    pts.iter().map(|p| p.0.clone()).collect()
}

impl PlanDocument {
    pub fn from_result(result: &PlanResult<f64>) -> Self {
        let q = result.path.query();
        let sides = |tokens: &[crate::config_space::Token]| {
            let items: Vec<String> = tokens.iter().map(ToString::to_string).collect();
            format!("[{}]", items.join(" < "))
        };
        PlanDocument {
            version: FORMAT_VERSION.into(),
            mode: result.mode.as_str().into(),
            frame: FrameDocument {
                e: result.frame.e().0.clone(),
                e_perp: result.frame.e_perp().0.clone(),
            },
            region: result.region,
            domain_index: result.domain_index,
            swap_count: result.swap_count,
            desingularized: result.desingularized,
            orderings: OrderingDocument {
                sigma: sides(&result.ordering_pair.sigma),
                sigma_prime: sides(&result.ordering_pair.sigma_prime),
            },
            dim: q.dim(),
            starts: coords(q.starts()),
            goals: coords(q.goals()),
            obstacles: coords(q.obstacles()),
            robots: result
                .path
                .robots()
                .iter()
                .map(|segs| segs.iter().map(SegmentDocument::from_segment).collect())
                .collect(),
        }
    }

    /// Rebuilds (and re-validates) the path.
    pub fn to_path(&self) -> Result<PiecewisePath<f64>> {
        if self.version != FORMAT_VERSION {
            return Err(Error::Unsupported(format!("plan version \"{}\"", self.version)));
        }
        let pts = |v: &[Vec<f64>]| v.iter().map(|c| Point(c.clone())).collect();
        let query = ConfigurationQuery::new(self.dim, pts(&self.starts), pts(&self.goals), pts(&self.obstacles))?;
        let robots = self
            .robots
            .iter()
            .enumerate()
            .map(|(i, segs)| segs.iter().map(|s| s.to_segment(i)).collect())
            .collect();
        PiecewisePath::new(query, robots)
    }
}

pub fn serialize_plan(result: &PlanResult<f64>) -> String {
    serde_json::to_string_pretty(&PlanDocument::from_result(result)).expect("plans serialize")
}

pub fn parse_plan_document(text: &str) -> Result<PlanDocument> {
    serde_json::from_str(text).map_err(syntax_error)
}

pub fn parse_plan(text: &str) -> Result<PiecewisePath<f64>> {
    parse_plan_document(text)?.to_path()
}

/// Default CSV resolution, in samples per unit time.
pub const DEFAULT_CSV_SAMPLES: usize = 256;

/// Uniform samples `t = k / samples`, one row per robot (robots numbered from 1).
pub fn sample_csv(path: &PiecewisePath<f64>, samples: usize) -> String {
    let samples = samples.max(1);
    let mut out = String::from("t,robot");
    for k in 1..=path.dim() {
        write!(out, ",x_{k}").unwrap();
    }
    out.push('\n');
    for k in 0..=samples {
        let t = k as f64 / samples as f64;
        for r in 0..path.n() {
            write!(out, "{t},{}", r + 1).unwrap();
            for x in path.position(r, t).0 {
                write!(out, ",{x}").unwrap();
            }
            out.push('\n');
        }
    }
    out
}
