//! Exact piecewise trajectories: per-robot lists of linear segments and
//! circular arcs over global time `[0, 1]`, with rational time bounds.

use num_rational::Rational64;
use num_traits::{ToPrimitive, Zero};

use crate::config_space::ConfigurationQuery;
use crate::error::{Error, Result};
use crate::point::Point;
use crate::scalar::Real;

/// Exact global time.
pub type Time = Rational64;

pub(crate) fn time_to<T: Real>(t: Time) -> T {
    T::lit(t.to_f64().expect("finite rational"))
}

/// Absolute tolerance for positional agreement (joins, endpoints).
pub fn position_tolerance<T: Real>() -> T {
    T::lit(1e-9).max(T::epsilon() * T::lit(1e4))
}

/// Tolerance for orthonormality of arc bases.
pub fn basis_tolerance<T: Real>() -> T {
    T::lit(1e-12).max(T::epsilon() * T::lit(1e2))
}

/// Geometry of one segment, parametrized by local time `u` in `[0, 1]`.
#[derive(Clone, Debug, PartialEq)]
pub enum SegmentKind<T> {
    Linear {
        p_start: Point<T>,
        p_end: Point<T>,
    },
    /// `center + radius * (cos(theta) * basis_u + sin(theta) * basis_v)` with
    /// `theta` running linearly from `angle_start` to `angle_end`.
    Arc {
        center: Point<T>,
        radius: T,
        basis_u: Point<T>,
        basis_v: Point<T>,
        angle_start: T,
        angle_end: T,
    },
}

impl<T: Real> SegmentKind<T> {
    pub fn constant(p: Point<T>) -> Self {
        SegmentKind::Linear {
            p_start: p.clone(),
            p_end: p,
        }
    }

    pub fn linear(p_start: Point<T>, p_end: Point<T>) -> Self {
        SegmentKind::Linear { p_start, p_end }
    }

    /// Half circle from `center + radius * u` to `center - radius * u`, through `center + radius * v`.
    pub fn half_circle(center: Point<T>, radius: T, basis_u: Point<T>, basis_v: Point<T>) -> Self {
        SegmentKind::Arc {
            center,
            radius,
            basis_u,
            basis_v,
            angle_start: T::zero(),
            angle_end: T::PI(),
        }
    }

    pub fn at(&self, u: T) -> Point<T> {
        match self {
            SegmentKind::Linear { p_start, p_end } => Point::lerp(p_start, p_end, u),
            SegmentKind::Arc {
                center,
                radius,
                basis_u,
                basis_v,
                angle_start,
                angle_end,
            } => {
                let theta = *angle_start + (*angle_end - *angle_start) * u;
                let (s, c) = theta.sin_cos();
                Point(
                    center
                        .0
                        .iter()
                        .zip(&basis_u.0)
                        .zip(&basis_v.0)
                        .map(|((&o, &bu), &bv)| o + *radius * (c * bu + s * bv))
                        .collect(),
                )
            }
        }
    }

    pub fn start_point(&self) -> Point<T> {
        match self {
            SegmentKind::Linear { p_start, .. } => p_start.clone(),
            _ => self.at(T::zero()),
        }
    }

    pub fn end_point(&self) -> Point<T> {
        match self {
            SegmentKind::Linear { p_end, .. } => p_end.clone(),
            _ => self.at(T::one()),
        }
    }

    /// The same curve traversed backwards.
    pub fn reversed(&self) -> Self {
        match self {
            SegmentKind::Linear { p_start, p_end } => SegmentKind::Linear {
                p_start: p_end.clone(),
                p_end: p_start.clone(),
            },
            SegmentKind::Arc {
                center,
                radius,
                basis_u,
                basis_v,
                angle_start,
                angle_end,
            } => SegmentKind::Arc {
                center: center.clone(),
                radius: *radius,
                basis_u: basis_u.clone(),
                basis_v: basis_v.clone(),
                angle_start: *angle_end,
                angle_end: *angle_start,
            },
        }
    }

    /// Arc length; also the speed with respect to `u`.
    pub fn length(&self) -> T {
        match self {
            SegmentKind::Linear { p_start, p_end } => p_start.dist(p_end),
            SegmentKind::Arc {
                radius,
                angle_start,
                angle_end,
                ..
            } => *radius * (*angle_end - *angle_start).abs(),
        }
    }

    pub fn is_stationary(&self) -> bool {
        match self {
            SegmentKind::Linear { p_start, p_end } => p_start == p_end,
            SegmentKind::Arc {
                radius,
                angle_start,
                angle_end,
                ..
            } => *radius == T::zero() || angle_start == angle_end,
        }
    }

    pub fn dim(&self) -> usize {
        match self {
            SegmentKind::Linear { p_start, .. } => p_start.dim(),
            SegmentKind::Arc { center, .. } => center.dim(),
        }
    }

    fn check_basis(&self) -> Result<()> {
        if let SegmentKind::Arc {
            radius,
            basis_u,
            basis_v,
            ..
        } = self
        {
            let tol = basis_tolerance::<T>();
            let ok = (basis_u.norm_sq() - T::one()).abs() <= tol
                && (basis_v.norm_sq() - T::one()).abs() <= tol
                && basis_u.dot(basis_v).abs() <= tol
                && *radius > T::zero();
            if !ok {
                return Err(Error::Inconsistent("arc basis is not orthonormal".into()));
            }
        }
        Ok(())
    }
}

/// A segment of one robot's trajectory over `[t0, t1]`.
#[derive(Clone, Debug, PartialEq)]
pub struct PathSegment<T> {
    pub robot: usize,
    pub t0: Time,
    pub t1: Time,
    pub kind: SegmentKind<T>,
}

impl<T: Real> PathSegment<T> {
    /// Position at global time `t`, which should lie in `[t0, t1]`.
    pub fn at_time(&self, t: T) -> Point<T> {
        let (t0, t1) = (time_to::<T>(self.t0), time_to::<T>(self.t1));
        let u = ((t - t0) / (t1 - t0)).max(T::zero()).min(T::one());
        self.kind.at(u)
    }

    /// Maps the time interval through `t -> offset + scale * t`.
    pub(crate) fn remapped(&self, offset: Time, scale: Time) -> Self {
        PathSegment {
            robot: self.robot,
            t0: offset + scale * self.t0,
            t1: offset + scale * self.t1,
            kind: self.kind.clone(),
        }
    }
}

/// Robot positions (and the unchanged obstacles) at one instant.
#[derive(Clone, Debug, PartialEq)]
pub struct Snapshot<T> {
    pub robots: Vec<Point<T>>,
    pub obstacles: Vec<Point<T>>,
}

/// A motion of all robots from the query's starts to its goals, with the
/// obstacles held fixed.
#[derive(Clone, Debug, PartialEq)]
pub struct PiecewisePath<T> {
    query: ConfigurationQuery<T>,
    robots: Vec<Vec<PathSegment<T>>>,
}

impl<T: Real> PiecewisePath<T> {
    /// Checks tiling of `[0, 1]`, joins, endpoints and arc bases.
    pub fn new(query: ConfigurationQuery<T>, robots: Vec<Vec<PathSegment<T>>>) -> Result<Self> {
        if robots.len() != query.n() {
            return Err(Error::Inconsistent(format!(
                "{} segment lists for {} robots",
                robots.len(),
                query.n()
            )));
        }
        let tol = position_tolerance::<T>();
        for (i, segs) in robots.iter().enumerate() {
            let fail = |msg: String| Err(Error::Inconsistent(format!("robot {}: {msg}", i + 1)));
            let (Some(first), Some(last)) = (segs.first(), segs.last()) else {
                return fail("no segments".into());
            };
            if !first.t0.is_zero() || last.t1 != Time::from_integer(1) {
                return fail("segments do not cover [0, 1]".into());
            }
            for (k, s) in segs.iter().enumerate() {
                if s.robot != i {
                    return fail(format!("segment {k} is labelled robot {}", s.robot + 1));
                }
                if s.t0 >= s.t1 {
                    return fail(format!("segment {k} has empty time interval"));
                }
                if s.kind.dim() != query.dim() {
                    return fail(format!("segment {k} has wrong dimension"));
                }
                s.kind.check_basis()?;
                if k > 0 {
                    let prev = &segs[k - 1];
                    if prev.t1 != s.t0 {
                        return fail(format!("gap or overlap before segment {k}"));
                    }
                    let jump = prev.kind.end_point().dist(&s.kind.start_point());
                    if jump > tol {
                        return fail(format!("discontinuity of {jump} before segment {k}"));
                    }
                }
            }
            if first.kind.start_point().dist(&query.starts()[i]) > tol {
                return fail("does not begin at its start".into());
            }
            if last.kind.end_point().dist(&query.goals()[i]) > tol {
                return fail("does not end at its goal".into());
            }
        }
        Ok(PiecewisePath { query, robots })
    }

    /// Every robot sits at its start for all time; valid only if starts equal goals.
    pub fn stationary(query: ConfigurationQuery<T>) -> Result<Self> {
        let robots = query
            .starts()
            .iter()
            .enumerate()
            .map(|(i, p)| {
                vec![PathSegment {
                    robot: i,
                    t0: Time::zero(),
                    t1: Time::from_integer(1),
                    kind: SegmentKind::constant(p.clone()),
                }]
            })
            .collect();
        Self::new(query, robots)
    }

    pub fn query(&self) -> &ConfigurationQuery<T> {
        &self.query
    }

    pub fn obstacles(&self) -> &[Point<T>] {
        self.query.obstacles()
    }

    pub fn n(&self) -> usize {
        self.robots.len()
    }

    pub fn dim(&self) -> usize {
        self.query.dim()
    }

    pub fn segments(&self, robot: usize) -> &[PathSegment<T>] {
        &self.robots[robot]
    }

    pub fn robots(&self) -> &[Vec<PathSegment<T>>] {
        &self.robots
    }

    /// Sorted, deduplicated segment boundaries of all robots.
    pub fn breakpoints(&self) -> Vec<Time> {
        let mut ts: Vec<Time> = self
            .robots
            .iter()
            .flatten()
            .flat_map(|s| [s.t0, s.t1])
            .collect();
        ts.sort();
        ts.dedup();
        ts
    }

    /// Index of the segment of `robot` that is active at time `t`.
    pub fn segment_index(&self, robot: usize, t: T) -> usize {
        let segs = &self.robots[robot];
        let k = segs.partition_point(|s| time_to::<T>(s.t1) < t);
        k.min(segs.len() - 1)
    }

    pub fn position(&self, robot: usize, t: T) -> Point<T> {
        let k = self.segment_index(robot, t);
        self.robots[robot][k].at_time(t)
    }

    /// Closed-form evaluation of all robots at global time `t`.
    pub fn evaluate(&self, t: T) -> Result<Snapshot<T>> {
        if !(t >= T::zero() && t <= T::one()) {
            return Err(Error::TimeOutOfRange(t.to_f64().unwrap_or(f64::NAN)));
        }
        Ok(Snapshot {
            robots: (0..self.n()).map(|i| self.position(i, t)).collect(),
            obstacles: self.query.obstacles().to_vec(),
        })
    }

    /// Number of arc segments across all robots.
    pub fn arc_count(&self) -> usize {
        self.robots
            .iter()
            .flatten()
            .filter(|s| matches!(s.kind, SegmentKind::Arc { .. }))
            .count()
    }
}
