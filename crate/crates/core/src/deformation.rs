//! Elementary fibrewise motions: the affine section, the two swapping
//! deformations, desingularization, and the three-phase rule that turns a
//! deformation plus a section over its image into a section over its source.
//!
//! Obstacles never move in anything built here.

use num_traits::Zero;

use crate::config_space::{
    clearance_eta, min_gap, side_orderings, ConfigurationQuery, Frame, Ranks, Side,
};
use crate::error::{Error, Result};
use crate::path::{position_tolerance, time_to, PathSegment, PiecewisePath, SegmentKind, Time};
use crate::point::Point;
use crate::scalar::Real;

/// One stage of a deformation: a motion primitive for every start-side and
/// every goal-side robot, parametrized by stage-local time `[0, 1]`.
#[derive(Clone, Debug, PartialEq)]
pub struct Stage<T> {
    pub starts: Vec<SegmentKind<T>>,
    pub goals: Vec<SegmentKind<T>>,
}

impl<T: Real> Stage<T> {
    fn holding(config: &ConfigurationQuery<T>) -> Self {
        Stage {
            starts: config.starts().iter().cloned().map(SegmentKind::constant).collect(),
            goals: config.goals().iter().cloned().map(SegmentKind::constant).collect(),
        }
    }

    /// Start-side robots that move during this stage.
    pub fn start_movers(&self) -> Vec<usize> {
        movers(&self.starts)
    }

    /// Goal-side robots that move during this stage.
    pub fn goal_movers(&self) -> Vec<usize> {
        movers(&self.goals)
    }
}

fn movers<T: Real>(kinds: &[SegmentKind<T>]) -> Vec<usize> {
    kinds
        .iter()
        .enumerate()
        .filter(|(_, k)| !k.is_stationary())
        .map(|(i, _)| i)
        .collect()
}

/// A fibrewise deformation `h` of a configuration: stages of equal duration
/// played in order over local time `[0, 1]`.
#[derive(Clone, Debug, PartialEq)]
pub struct Deformation<T> {
    source: ConfigurationQuery<T>,
    target: ConfigurationQuery<T>,
    stages: Vec<Stage<T>>,
}

impl<T: Real> Deformation<T> {
    /// The constant deformation.
    pub fn identity(source: ConfigurationQuery<T>) -> Self {
        Deformation {
            target: source.clone(),
            source,
            stages: Vec::new(),
        }
    }

    fn from_stages(source: ConfigurationQuery<T>, target: ConfigurationQuery<T>, stages: Vec<Stage<T>>) -> Self {
        Deformation {
            source,
            target,
            stages,
        }
    }

    pub fn source(&self) -> &ConfigurationQuery<T> {
        &self.source
    }

    /// Configuration at local time 1, given by the exact closed-form endpoint.
    pub fn target(&self) -> &ConfigurationQuery<T> {
        &self.target
    }

    pub fn stages(&self) -> &[Stage<T>] {
        &self.stages
    }

    /// Concatenation: `self` then `next`, each stage keeping equal duration.
    pub fn then(mut self, next: Deformation<T>) -> Result<Self> {
        let tol = position_tolerance::<T>();
        let drift = self
            .target
            .points()
            .zip(next.source.points())
            .map(|(a, b)| a.dist(b))
            .fold(T::zero(), T::max);
        if drift > tol || self.target.obstacles() != next.source.obstacles() {
            return Err(Error::Inconsistent(format!(
                "deformations do not chain (mismatch {drift})"
            )));
        }
        self.stages.extend(next.stages);
        self.target = next.target;
        Ok(self)
    }

    /// Configuration at local time `t`; obstacles are returned unchanged.
    pub fn evaluate(&self, t: T) -> Result<ConfigurationQuery<T>> {
        if !(t >= T::zero() && t <= T::one()) {
            return Err(Error::TimeOutOfRange(t.to_f64().unwrap_or(f64::NAN)));
        }
        if self.stages.is_empty() || t == T::zero() {
            return Ok(self.source.clone());
        }
        if t == T::one() {
            return Ok(self.target.clone());
        }
        let count = self.stages.len();
        let scaled = t * T::lit(count as f64);
        let k = scaled.floor().to_usize().unwrap_or(0).min(count - 1);
        let u = scaled - T::lit(k as f64);
        let stage = &self.stages[k];
        Ok(ConfigurationQuery::from_parts(
            self.source.dim(),
            stage.starts.iter().map(|s| s.at(u)).collect(),
            stage.goals.iter().map(|s| s.at(u)).collect(),
            self.source.obstacles().to_vec(),
        ))
    }
}

/// Straight-line motion `z_i(t) = (1-t) z_i + t z'_i`. Applies when the
/// start-side and goal-side orderings coincide, which keeps every robot on
/// its side of every other robot and obstacle along `e`.
pub fn affine_section<T: Real>(query: &ConfigurationQuery<T>, frame: &Frame<T>) -> Result<PiecewisePath<T>> {
    let pair = side_orderings(query, frame)?;
    if !pair.is_order_preserving() {
        return Err(Error::NotApplicable(format!(
            "orderings differ: {pair}; straight-line motion would cross"
        )));
    }
    let robots = query
        .starts()
        .iter()
        .zip(query.goals())
        .enumerate()
        .map(|(i, (z, g))| {
            vec![PathSegment {
                robot: i,
                t0: Time::zero(),
                t1: Time::from_integer(1),
                kind: SegmentKind::linear(z.clone(), g.clone()),
            }]
        })
        .collect();
    PiecewisePath::new(query.clone(), robots)
}

fn with_starts<T: Real>(config: &ConfigurationQuery<T>, starts: Vec<Point<T>>) -> ConfigurationQuery<T> {
    ConfigurationQuery::from_parts(
        config.dim(),
        starts,
        config.goals().to_vec(),
        config.obstacles().to_vec(),
    )
}

fn check_robot<T: Real>(config: &ConfigurationQuery<T>, i: usize) -> Result<()> {
    if i >= config.n() {
        return Err(Error::Precondition(format!("robot index {i} out of range")));
    }
    Ok(())
}

/// Exchanges two start-side robots `i` and `j` that are adjacent along `e`
/// with `q(z_i) < q(z_j)`:
///
/// 1. both slide orthogonally onto `L`, to `a = q(z_i) e` and `b = q(z_j) e`;
/// 2. they turn half a circle about `(a + b) / 2` of radius `|b - a| / 2`,
///    antipodally, in the `(e, e_perp)` plane;
/// 3. `i` slides from `b` to the old `z_j`, `j` from `a` to the old `z_i`.
///
/// Goal-side robots and obstacles stay put.
pub fn swap_case_a<T: Real>(
    config: &ConfigurationQuery<T>,
    frame: &Frame<T>,
    i: usize,
    j: usize,
) -> Result<Deformation<T>> {
    check_robot(config, i)?;
    check_robot(config, j)?;
    if i == j {
        return Err(Error::Precondition("cannot swap a robot with itself".into()));
    }
    let ranks = Ranks::compute(config, frame);
    if !ranks.side_is_generic(&ranks.start_rank) {
        let label = ranks.label();
        return Err(Error::NotGeneric {
            j: label.j,
            expected: 2 * config.n(),
        });
    }
    let (ri, rj) = (ranks.start_rank[i], ranks.start_rank[j]);
    if ri >= rj {
        return Err(Error::Precondition(format!(
            "robot {} must lie below robot {} along e",
            i + 1,
            j + 1
        )));
    }
    let inside = |r: usize| ri < r && r < rj;
    if ranks.start_rank.iter().copied().any(inside) || ranks.obstacle_rank.iter().copied().any(inside) {
        return Err(Error::Precondition(format!(
            "robots {} and {} are not adjacent",
            i + 1,
            j + 1
        )));
    }

    let (qi, qj) = (ranks.start[i], ranks.start[j]);
    let (zi, zj) = (config.starts()[i].clone(), config.starts()[j].clone());
    let two = T::lit(2.0);
    let a = frame.on_line(qi);
    let b = frame.on_line(qj);
    let mid = frame.on_line((qi + qj) / two);
    let r = (qj - qi) / two;
    let e = frame.e().clone();
    let ep = frame.e_perp().clone();

    let mut approach = Stage::holding(config);
    approach.starts[i] = SegmentKind::linear(zi.clone(), a.clone());
    approach.starts[j] = SegmentKind::linear(zj.clone(), b.clone());

    let mut turn = Stage::holding(config);
    turn.starts[i] = SegmentKind::half_circle(mid.clone(), r, e.scale(-T::one()), ep.scale(-T::one()));
    turn.starts[j] = SegmentKind::half_circle(mid, r, e, ep);

    let mut depart = Stage::holding(config);
    depart.starts[i] = SegmentKind::linear(b, zj.clone());
    depart.starts[j] = SegmentKind::linear(a, zi.clone());

    let mut starts = config.starts().to_vec();
    starts[i] = zj;
    starts[j] = zi;
    Ok(Deformation::from_stages(
        config.clone(),
        with_starts(config, starts),
        vec![approach, turn, depart],
    ))
}

/// Carries start-side robot `i` across the obstacle block containing `o_j`.
/// For a robot on the `Right` of the block (the `Left` case is the mirror
/// image along `e`), with `eta = clearance_eta(..)`:
///
/// 1. slide orthogonally onto `L_j`, the line through `o_j` parallel to `L`;
/// 2. slide along `L_j` to `o_j + (eta/2) e`;
/// 3. half circle of radius `eta/2` about `o_j` in the `(e, e_perp)` plane,
///    ending at `o_j - (eta/2) e`.
pub fn swap_case_b<T: Real>(
    config: &ConfigurationQuery<T>,
    frame: &Frame<T>,
    i: usize,
    j: usize,
    side: Side,
) -> Result<Deformation<T>> {
    check_robot(config, i)?;
    let eta = clearance_eta(config, frame, i, j, side)?;
    // Also rejects NaN.
    #[allow(clippy::neg_cmp_op_on_partial_ord)]
    if !(eta > T::zero()) {
        return Err(Error::Precondition(format!("clearance {eta} is not positive")));
    }
    let s: T = side.sign();
    let half = eta / T::lit(2.0);
    let o = &config.obstacles()[j];
    let zi = config.starts()[i].clone();
    let on_line = frame.project_onto_parallel(&zi, o);
    let entry = o.offset(frame.e(), s * half);
    let exit = o.offset(frame.e(), -(s * half));

    let mut drop = Stage::holding(config);
    drop.starts[i] = SegmentKind::linear(zi, on_line.clone());
    let mut slide = Stage::holding(config);
    slide.starts[i] = SegmentKind::linear(on_line, entry);
    let mut orbit = Stage::holding(config);
    orbit.starts[i] = SegmentKind::half_circle(o.clone(), half, frame.e().scale(s), frame.e_perp().clone());

    let mut starts = config.starts().to_vec();
    starts[i] = exit;
    Ok(Deformation::from_stages(
        config.clone(),
        with_starts(config, starts),
        vec![drop, slide, orbit],
    ))
}

/// Step size for desingularization: the smallest positive gap between
/// projections of any two distinct symbols other than two obstacles. This is
/// `min_gap` further capped by the positive start-goal gaps, so that no
/// start can be shifted onto a goal's projection.
pub fn desingularization_step<T: Real>(config: &ConfigurationQuery<T>, frame: &Frame<T>) -> T {
    let mut step = min_gap(config, frame);
    let ranks = Ranks::compute(config, frame);
    for &a in &ranks.start {
        for &b in &ranks.goal {
            let gap = (a - b).abs();
            if gap > *frame.snap() {
                step = step.min(gap);
            }
        }
    }
    step
}

/// Shifts every robot along `e`: start `i` (1-based) by `i M / (2n+1)` and
/// goal `i` by `(n+i) M / (2n+1)`, with `M` from [`desingularization_step`].
/// The shifts are distinct, positive and below `M`, so coincident
/// projections separate and distinct ones never meet; the result is generic
/// with the same number of distinct obstacle projections.
pub fn desingularize<T: Real>(config: &ConfigurationQuery<T>, frame: &Frame<T>) -> Result<Deformation<T>> {
    let n = config.n();
    let step = desingularization_step(config, frame);
    let denom = T::lit((2 * n + 1) as f64);
    let shift = |k: usize| step * T::lit(k as f64) / denom;
    let e = frame.e();

    let shifted_starts: Vec<Point<T>> = config
        .starts()
        .iter()
        .enumerate()
        .map(|(i, z)| z.offset(e, shift(i + 1)))
        .collect();
    let shifted_goals: Vec<Point<T>> = config
        .goals()
        .iter()
        .enumerate()
        .map(|(i, z)| z.offset(e, shift(n + i + 1)))
        .collect();
    let stage = Stage {
        starts: config
            .starts()
            .iter()
            .zip(&shifted_starts)
            .map(|(a, b)| SegmentKind::linear(a.clone(), b.clone()))
            .collect(),
        goals: config
            .goals()
            .iter()
            .zip(&shifted_goals)
            .map(|(a, b)| SegmentKind::linear(a.clone(), b.clone()))
            .collect(),
    };
    let target = ConfigurationQuery::from_parts(
        config.dim(),
        shifted_starts,
        shifted_goals,
        config.obstacles().to_vec(),
    );
    Ok(Deformation::from_stages(config.clone(), target, vec![stage]))
}

/// Builds a section over the source of `h` from a section over its target:
/// the start side of `h` is played forward on `[0, 1/3]`, the inner path on
/// `[1/3, 2/3]`, and the goal side of `h` backward on `[2/3, 1]`.
pub fn compose_with_section<T: Real, F>(h: &Deformation<T>, inner: F) -> Result<PiecewisePath<T>>
where
    F: FnOnce(&ConfigurationQuery<T>) -> Result<PiecewisePath<T>>,
{
    let inner = inner(h.target())?;
    let tol = position_tolerance::<T>();
    for i in 0..h.source().n() {
        let begin = inner.segments(i)[0].kind.start_point();
        let end = inner.segments(i).last().expect("non-empty").kind.end_point();
        if begin.dist(&h.target().starts()[i]) > tol || end.dist(&h.target().goals()[i]) > tol {
            return Err(Error::Inconsistent(format!(
                "inner section for robot {} does not match the deformed configuration",
                i + 1
            )));
        }
    }

    let third = Time::new(1, 3);
    let stages = h.stages();
    let count = stages.len() as i64;
    let mut robots = Vec::with_capacity(h.source().n());
    for i in 0..h.source().n() {
        let mut segs = Vec::new();
        if stages.is_empty() {
            segs.push(PathSegment {
                robot: i,
                t0: Time::zero(),
                t1: third,
                kind: SegmentKind::constant(h.source().starts()[i].clone()),
            });
        }
        for (k, stage) in stages.iter().enumerate() {
            let k = k as i64;
            segs.push(PathSegment {
                robot: i,
                t0: Time::new(k, 3 * count),
                t1: Time::new(k + 1, 3 * count),
                kind: stage.starts[i].clone(),
            });
        }
        segs.extend(inner.segments(i).iter().map(|s| s.remapped(third, third)));
        if stages.is_empty() {
            segs.push(PathSegment {
                robot: i,
                t0: third * 2,
                t1: Time::from_integer(1),
                kind: SegmentKind::constant(h.source().goals()[i].clone()),
            });
        }
        for (k, stage) in stages.iter().enumerate().rev() {
            let k = k as i64;
            segs.push(PathSegment {
                robot: i,
                t0: Time::from_integer(1) - Time::new(k + 1, 3 * count),
                t1: Time::from_integer(1) - Time::new(k, 3 * count),
                kind: stage.goals[i].reversed(),
            });
        }
        robots.push(segs);
    }
    PiecewisePath::new(h.source().clone(), robots)
}

/// Start positions of a deformation's stage boundaries (for inspection).
pub fn stage_boundaries<T: Real>(h: &Deformation<T>) -> Vec<T> {
    let count = h.stages().len();
    (0..=count)
        .map(|k| time_to::<T>(Time::new(k as i64, count.max(1) as i64)))
        .collect()
}
