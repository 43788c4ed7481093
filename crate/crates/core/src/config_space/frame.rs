use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::point::Point;
use crate::scalar::{Field, Real};

use super::ConfigurationQuery;

/// How the projection line is chosen.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FrameMode {
    /// A single line for all queries: the first coordinate axis.
    Fixed,
    /// The line through the origin parallel to `o_2 - o_1`; even dimensions only.
    ObstaclePair,
}

impl FrameMode {
    /// `ObstaclePair` when it applies (even `d`, at least two obstacles), else `Fixed`.
    pub fn default_for(dim: usize, m: usize) -> Self {
        if dim.is_multiple_of(2) && m >= 2 {
            FrameMode::ObstaclePair
        } else {
            FrameMode::Fixed
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            FrameMode::Fixed => "fixed",
            FrameMode::ObstaclePair => "obstacle_pair",
        }
    }

    /// Smallest domain index this mode can produce.
    pub fn min_domain(self) -> usize {
        match self {
            FrameMode::Fixed => 1,
            FrameMode::ObstaclePair => 2,
        }
    }
}

impl fmt::Display for FrameMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for FrameMode {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "fixed" => Ok(FrameMode::Fixed),
            "obstacle_pair" | "obstacle-pair" => Ok(FrameMode::ObstaclePair),
            other => Err(format!("unknown mode '{other}' (expected fixed or obstacle_pair)")),
        }
    }
}

/// Oriented projection line `L` through the origin with unit direction `e`,
/// a unit normal `e_perp` used for swapping manoeuvres, and the tolerance
/// under which two projection values are treated as equal.
#[derive(Clone, Debug, PartialEq)]
pub struct Frame<T> {
    e: Point<T>,
    e_perp: Point<T>,
    mode: FrameMode,
    snap: T,
}

impl<T: Field> Frame<T> {
    /// The fixed frame: `e` is the first axis, `e_perp` the second.
    pub fn fixed(dim: usize) -> Self {
        assert!(dim >= 2, "frames need d >= 2");
        Frame {
            e: Point::axis(dim, 0),
            e_perp: Point::axis(dim, 1),
            mode: FrameMode::Fixed,
            snap: T::zero(),
        }
    }

    /// Absolute tolerance for projection equality (0 = exact comparison).
    pub fn with_snap(mut self, snap: T) -> Self {
        self.snap = snap;
        self
    }

    pub fn e(&self) -> &Point<T> {
        &self.e
    }

    pub fn e_perp(&self) -> &Point<T> {
        &self.e_perp
    }

    pub fn mode(&self) -> FrameMode {
        self.mode
    }

    pub fn snap(&self) -> &T {
        &self.snap
    }

    pub fn dim(&self) -> usize {
        self.e.dim()
    }

    /// Coordinate of the orthogonal projection of `x` onto `L`, i.e. `e . x`.
    pub fn project(&self, x: &Point<T>) -> Result<T> {
        if x.dim() != self.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                got: x.dim(),
            });
        }
        Ok(self.q(x))
    }

    /// Obstacle-pair frame along the unnormalized direction `o_2 - o_1`.
    ///
    /// Scaling `e` by a positive constant preserves every projection
    /// comparison, so this frame classifies exactly over fields without
    /// square roots. It is not suitable for building paths.
    pub fn exact_pair(o1: &Point<T>, o2: &Point<T>) -> Result<Self> {
        let dim = o1.dim();
        if !dim.is_multiple_of(2) {
            return Err(Error::ModeUnsupported {
                mode: "obstacle_pair",
                reason: format!("dimension {dim} is odd"),
            });
        }
        let e = o2.sub(o1);
        if e.norm_sq() == T::zero() {
            return Err(Error::ModeUnsupported {
                mode: "obstacle_pair",
                reason: "first two obstacles coincide".into(),
            });
        }
        Ok(Frame {
            e_perp: tangent_field(&e),
            e,
            mode: FrameMode::ObstaclePair,
            snap: T::zero(),
        })
    }

    pub(crate) fn q(&self, x: &Point<T>) -> T {
        self.e.dot(x)
    }

    /// The point of `L` with coordinate `s`.
    pub(crate) fn on_line(&self, s: T) -> Point<T> {
        self.e.scale(s)
    }

    /// Orthogonal projection of `x` onto the line through `anchor` parallel to `L`.
    pub(crate) fn project_onto_parallel(&self, x: &Point<T>, anchor: &Point<T>) -> Point<T> {
        anchor.offset(&self.e, self.q(x) - self.q(anchor))
    }
}

impl<T: Real> Frame<T> {
    /// Frame along `o_2 - o_1`, with `e_perp` given by the non-vanishing
    /// tangent field `(x1, x2, x3, x4, ...) -> (-x2, x1, -x4, x3, ...)`.
    pub fn obstacle_pair(o1: &Point<T>, o2: &Point<T>) -> Result<Self> {
        let dim = o1.dim();
        if !dim.is_multiple_of(2) {
            return Err(Error::ModeUnsupported {
                mode: "obstacle_pair",
                reason: format!("dimension {dim} is odd"),
            });
        }
        let diff = o2.sub(o1);
        let len = diff.norm();
        if len <= T::zero() {
            return Err(Error::ModeUnsupported {
                mode: "obstacle_pair",
                reason: "first two obstacles coincide".into(),
            });
        }
        let e = diff.scale(T::one() / len);
        let e_perp = tangent_field(&e);
        Ok(Frame {
            e,
            e_perp,
            mode: FrameMode::ObstaclePair,
            snap: T::zero(),
        })
    }
}

/// `tau(x) = (-x2, x1, -x4, x3, ..., -x_d, x_{d-1})`; orthogonal to `x` for even `d`.
pub fn tangent_field<T: Field>(x: &Point<T>) -> Point<T> {
    let mut out = Vec::with_capacity(x.dim());
    for pair in x.0.chunks(2) {
        out.push(-pair[1].clone());
        out.push(pair[0].clone());
    }
    Point(out)
}

/// Builds the frame for `query` in the requested mode.
pub fn make_frame<T: Real>(query: &ConfigurationQuery<T>, mode: FrameMode) -> Result<Frame<T>> {
    match mode {
        FrameMode::Fixed => Ok(Frame::fixed(query.dim())),
        FrameMode::ObstaclePair => {
            if query.m() < 2 {
                return Err(Error::ModeUnsupported {
                    mode: "obstacle_pair",
                    reason: format!("needs at least two obstacles, got {}", query.m()),
                });
            }
            if !query.dim().is_multiple_of(2) {
                return Err(Error::ModeUnsupported {
                    mode: "obstacle_pair",
                    reason: format!("dimension {} is odd", query.dim()),
                });
            }
            Frame::obstacle_pair(&query.obstacles()[0], &query.obstacles()[1])
        }
    }
}
