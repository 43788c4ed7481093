use serde::Serialize;

use crate::path::{PathSegment, PiecewisePath, SegmentKind, Time};
use crate::point::Point;
use crate::scalar::Real;

/// Cells narrower than this (in sub-interval units) are not split further.
const MIN_CELL: f64 = 1.0 / (1u64 << 40) as f64;
/// Per-cell cap on extra evaluations spent on refinement.
const CELL_BUDGET: usize = 4096;

/// Which two objects a bound refers to (0-based indices).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum PairKind {
    RobotRobot { a: usize, b: usize },
    RobotObstacle { robot: usize, obstacle: usize },
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PairBound<T> {
    pub pair: PairKind,
    /// Smallest distance observed at any sample.
    pub sampled_min: T,
    /// Proven lower bound on the distance over all of `[0, 1]`.
    pub certified_lower_bound: T,
    /// Number of distance evaluations made for this pair.
    pub evaluations: usize,
    pub pass: bool,
}

/// Lower bounds on every robot-robot and robot-obstacle distance along a path.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SeparationCertificate<T> {
    pub samples_per_segment: usize,
    pub pairs: Vec<PairBound<T>>,
    pub sampled_min: T,
    pub certified_lower_bound: T,
    pub pass: bool,
}

impl<T: Real> SeparationCertificate<T> {
    pub fn worst(&self) -> Option<&PairBound<T>> {
        self.pairs
            .iter()
            .min_by(|a, b| a.certified_lower_bound.partial_cmp(&b.certified_lower_bound).expect("finite"))
    }
}

/// A segment restricted to a sub-interval and reparametrized by `u` in `[0, 1]`.
struct Window<'a, T> {
    kind: &'a SegmentKind<T>,
    offset: T,
    scale: T,
}

impl<'a, T: Real> Window<'a, T> {
    fn new(seg: &'a PathSegment<T>, s0: Time, s1: Time) -> Self {
        let span = seg.t1 - seg.t0;
        Window {
            kind: &seg.kind,
            offset: crate::path::time_to((s0 - seg.t0) / span),
            scale: crate::path::time_to((s1 - s0) / span),
        }
    }

    fn at(&self, u: T) -> Point<T> {
        self.kind.at(self.offset + self.scale * u)
    }

    /// Speed with respect to `u`.
    fn speed(&self) -> T {
        self.kind.length() * self.scale
    }

    fn linear_velocity(&self) -> Option<Point<T>> {
        match self.kind {
            SegmentKind::Linear { p_start, p_end } => Some(p_end.sub(p_start).scale(self.scale)),
            SegmentKind::Arc { .. } => None,
        }
    }
}

fn segment_covering<T>(segs: &[PathSegment<T>], s0: Time, s1: Time) -> &PathSegment<T> {
    let k = segs.partition_point(|s| s.t1 <= s0);
    let seg = &segs[k.min(segs.len() - 1)];
    debug_assert!(seg.t0 <= s0 && s1 <= seg.t1);
    seg
}

struct PairState<T> {
    sampled_min: T,
    bound: T,
    evaluations: usize,
}

/// Lipschitz lower bound over cell `[u0, u1]`, refined by bisection while
/// the bound is below half the smaller endpoint value.
#[allow(clippy::too_many_arguments)]
fn refine<T: Real>(
    f: &dyn Fn(T) -> T,
    lip: T,
    u0: T,
    u1: T,
    f0: T,
    f1: T,
    budget: &mut usize,
    state: &mut PairState<T>,
) -> T {
    let half = T::lit(0.5);
    let width = u1 - u0;
    let bound = (f0 + f1) * half - lip * width * half;
    let floor = f0.min(f1) * half;
    if bound >= floor || width <= T::lit(MIN_CELL) || *budget == 0 || f0.min(f1) <= T::zero() {
        return bound;
    }
    *budget -= 1;
    let um = u0 + width * half;
    let fm = f(um);
    state.evaluations += 1;
    state.sampled_min = state.sampled_min.min(fm);
    let left = refine(f, lip, u0, um, f0, fm, budget, state);
    let right = refine(f, lip, um, u1, fm, f1, budget, state);
    left.min(right)
}

fn certify_pair<T: Real>(
    path: &PiecewisePath<T>,
    a: usize,
    other: Option<usize>,
    fixed: Option<&Point<T>>,
    samples: usize,
) -> PairState<T> {
    let mut cuts: Vec<Time> = path.segments(a).iter().flat_map(|s| [s.t0, s.t1]).collect();
    if let Some(b) = other {
        cuts.extend(path.segments(b).iter().flat_map(|s| [s.t0, s.t1]));
    }
    cuts.sort();
    cuts.dedup();

    let mut state = PairState {
        sampled_min: T::infinity(),
        bound: T::infinity(),
        evaluations: 0,
    };
    let n = T::lit(samples as f64);
    for w in cuts.windows(2) {
        let (s0, s1) = (w[0], w[1]);
        let wa = Window::new(segment_covering(path.segments(a), s0, s1), s0, s1);
        let wb = other.map(|b| Window::new(segment_covering(path.segments(b), s0, s1), s0, s1));
        let lip = match &wb {
            None => wa.speed(),
            Some(wb) => match (wa.linear_velocity(), wb.linear_velocity()) {
                (Some(va), Some(vb)) => va.sub(&vb).norm(),
                _ => wa.speed() + wb.speed(),
            },
        };
        let f = |u: T| -> T {
            let pa = wa.at(u);
            match (&wb, fixed) {
                (Some(wb), _) => pa.dist(&wb.at(u)),
                (None, Some(o)) => pa.dist(o),
                (None, None) => unreachable!("pair needs a second object"),
            }
        };
        let values: Vec<T> = (0..=samples).map(|k| f(T::lit(k as f64) / n)).collect();
        state.evaluations += values.len();
        for &v in &values {
            state.sampled_min = state.sampled_min.min(v);
        }
        for k in 0..samples {
            let mut budget = CELL_BUDGET;
            let u0 = T::lit(k as f64) / n;
            let u1 = T::lit((k + 1) as f64) / n;
            let b = refine(&f, lip, u0, u1, values[k], values[k + 1], &mut budget, &mut state);
            state.bound = state.bound.min(b);
        }
    }
    state
}

/// Certifies that no robot meets another robot or an obstacle.
///
/// Each robot pair (and robot-obstacle pair) is examined on the common
/// refinement of its segment boundaries. On every such sub-interval the
/// distance is sampled at `samples_per_segment + 1` uniform points and is
/// Lipschitz with a constant derived from the segments' speeds (the exact
/// relative speed when both move linearly). Between neighbouring samples the
/// distance is at least their mean minus half the Lipschitz constant times
/// the spacing; cells where that bound is weak are bisected.
pub fn certify_separation<T: Real>(path: &PiecewisePath<T>, samples_per_segment: usize) -> SeparationCertificate<T> {
    let samples = samples_per_segment.max(2);
    let mut pairs = Vec::new();
    for a in 0..path.n() {
        for b in a + 1..path.n() {
            let s = certify_pair(path, a, Some(b), None, samples);
            pairs.push(PairBound {
                pair: PairKind::RobotRobot { a, b },
                sampled_min: s.sampled_min,
                certified_lower_bound: s.bound,
                evaluations: s.evaluations,
                pass: s.bound > T::zero(),
            });
        }
        for (j, o) in path.obstacles().iter().enumerate() {
            let s = certify_pair(path, a, None, Some(o), samples);
            pairs.push(PairBound {
                pair: PairKind::RobotObstacle { robot: a, obstacle: j },
                sampled_min: s.sampled_min,
                certified_lower_bound: s.bound,
                evaluations: s.evaluations,
                pass: s.bound > T::zero(),
            });
        }
    }
    let sampled_min = pairs.iter().map(|p| p.sampled_min).fold(T::infinity(), T::min);
    let certified_lower_bound = pairs
        .iter()
        .map(|p| p.certified_lower_bound)
        .fold(T::infinity(), T::min);
    SeparationCertificate {
        samples_per_segment: samples,
        pass: pairs.iter().all(|p| p.pass),
        pairs,
        sampled_min,
        certified_lower_bound,
    }
}

/// Plain uniform resampling: smallest distance seen at `samples_per_segment`
/// points per sub-interval, without any Lipschitz argument.
pub fn sampled_min_distance<T: Real>(path: &PiecewisePath<T>, samples_per_segment: usize) -> T {
    let mut best = T::infinity();
    let bps = path.breakpoints();
    let n = T::lit(samples_per_segment as f64);
    for w in bps.windows(2) {
        let (t0, t1): (T, T) = (crate::path::time_to(w[0]), crate::path::time_to(w[1]));
        for k in 0..=samples_per_segment {
            let t = t0 + (t1 - t0) * T::lit(k as f64) / n;
            let snap = path.evaluate(t.min(T::one())).expect("t in range");
            for a in 0..snap.robots.len() {
                for b in a + 1..snap.robots.len() {
                    best = best.min(snap.robots[a].dist(&snap.robots[b]));
                }
                for o in &snap.obstacles {
                    best = best.min(snap.robots[a].dist(o));
                }
            }
        }
    }
    best
}
