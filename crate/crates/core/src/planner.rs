//! The complete planner: classify a query into its domain `W_c`, move it into
//! the generic stratum if necessary, sort the start ordering into the goal
//! ordering by elementary swaps, and finish with straight-line motion.

use std::collections::HashMap;

use crate::config_space::{
    classify, make_frame, orderings, ConfigurationQuery, Frame, FrameMode, OrderingPair, PatternKey,
    RegionLabel, Side, Token,
};
use crate::deformation::{
    affine_section, compose_with_section, desingularize, swap_case_a, swap_case_b, Deformation,
};
use crate::error::{Error, Result};
use crate::path::PiecewisePath;
use crate::scalar::Real;

/// One adjacent transposition of the start-side ordering.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Swap {
    /// Robots `left` and `right` trade places (`left` is lower along `e`).
    CaseA { left: usize, right: usize },
    /// Robot `robot` crosses the obstacle block `block`; `side` is where it starts.
    CaseB {
        robot: usize,
        block: Vec<usize>,
        side: Side,
    },
}

/// Adjacent transpositions turning `sigma`'s pattern into `sigma_prime`'s.
///
/// Bubble-sort discipline: always swap the leftmost adjacent pair that is out
/// of order relative to `sigma_prime`. Obstacle blocks keep their relative
/// order, so the sequence length equals the number of inversions, which is
/// the minimal number of adjacent transpositions.
pub fn transposition_sequence(pair: &OrderingPair) -> Result<Vec<Swap>> {
    pair.validate()?;
    let target: HashMap<PatternKey, usize> = pair
        .sigma_prime_keys()
        .into_iter()
        .enumerate()
        .map(|(pos, key)| (key, pos))
        .collect();
    let mut current: Vec<Token> = pair.sigma.clone();
    let rank = |t: &Token| target[&t.key()];
    let mut swaps = Vec::new();
    while let Some(k) = (0..current.len().saturating_sub(1)).find(|&k| rank(&current[k]) > rank(&current[k + 1])) {
        let swap = match (&current[k], &current[k + 1]) {
            (Token::Start(a), Token::Start(b)) => Swap::CaseA { left: *a, right: *b },
            (Token::Start(r), Token::Block(b)) => Swap::CaseB {
                robot: *r,
                block: b.clone(),
                side: Side::Left,
            },
            (Token::Block(b), Token::Start(r)) => Swap::CaseB {
                robot: *r,
                block: b.clone(),
                side: Side::Right,
            },
            (x, y) => {
                return Err(Error::InvalidPair(format!("cannot transpose {x} and {y}")));
            }
        };
        swaps.push(swap);
        current.swap(k, k + 1);
    }
    Ok(swaps)
}

/// The generic-stratum section together with the data used to build it.
#[derive(Clone, Debug)]
pub struct GenericSection<T> {
    pub path: PiecewisePath<T>,
    pub ordering_pair: OrderingPair,
    pub swaps: Vec<Swap>,
}

/// Section over `A_{2n,t}`: straight lines when the orderings agree,
/// otherwise the chained swap deformations followed by straight lines.
/// Only start-side robots take part in the swaps.
pub fn generic_section<T: Real>(config: &ConfigurationQuery<T>, frame: &Frame<T>) -> Result<PiecewisePath<T>> {
    generic_section_detailed(config, frame).map(|g| g.path)
}

pub fn generic_section_detailed<T: Real>(
    config: &ConfigurationQuery<T>,
    frame: &Frame<T>,
) -> Result<GenericSection<T>> {
    let pair = orderings(config, frame)?;
    if pair.is_order_preserving() {
        return Ok(GenericSection {
            path: affine_section(config, frame)?,
            ordering_pair: pair,
            swaps: Vec::new(),
        });
    }
    let swaps = transposition_sequence(&pair)?;
    let mut h = Deformation::identity(config.clone());
    for swap in &swaps {
        let current = h.target().clone();
        let step = match swap {
            Swap::CaseA { left, right } => swap_case_a(&current, frame, *left, *right)?,
            Swap::CaseB { robot, block, side } => swap_case_b(&current, frame, *robot, block[0], *side)?,
        };
        h = h.then(step)?;
    }
    let path = compose_with_section(&h, |sorted| affine_section(sorted, frame))?;
    Ok(GenericSection {
        path,
        ordering_pair: pair,
        swaps,
    })
}

/// Planner settings.
#[derive(Clone, Debug, PartialEq)]
pub struct PlanOptions<T> {
    /// `None` picks [`FrameMode::default_for`] the query.
    pub mode: Option<FrameMode>,
    /// Absolute tolerance under which projections count as equal.
    pub snap_tolerance: T,
}

impl<T: Real> Default for PlanOptions<T> {
    fn default() -> Self {
        PlanOptions {
            mode: None,
            snap_tolerance: T::zero(),
        }
    }
}

impl<T: Real> PlanOptions<T> {
    pub fn with_mode(mode: FrameMode) -> Self {
        PlanOptions {
            mode: Some(mode),
            ..Self::default()
        }
    }
}

/// Output of [`plan`].
#[derive(Clone, Debug)]
pub struct PlanResult<T> {
    pub path: PiecewisePath<T>,
    pub frame: Frame<T>,
    pub region: RegionLabel,
    /// Orderings of the generic configuration the swaps were computed on
    /// (after desingularization, if any).
    pub ordering_pair: OrderingPair,
    pub domain_index: usize,
    pub swap_count: usize,
    pub swaps: Vec<Swap>,
    pub mode: FrameMode,
    pub desingularized: bool,
}

/// Plans a collision-free motion for `query` with the obstacles fixed.
pub fn plan<T: Real>(query: &ConfigurationQuery<T>, options: &PlanOptions<T>) -> Result<PlanResult<T>> {
    let issues = query.issues();
    if !issues.is_empty() {
        return Err(Error::InvalidQuery(issues));
    }
    let mode = options
        .mode
        .unwrap_or_else(|| FrameMode::default_for(query.dim(), query.m()));
    let frame = make_frame(query, mode)?.with_snap(options.snap_tolerance);
    let region = classify(query, &frame);
    let n = query.n();

    let (generic, desingularized) = if region.is_generic(n) {
        (generic_section_detailed(query, &frame)?, false)
    } else {
        let h = desingularize(query, &frame)?;
        let lifted = classify(h.target(), &frame);
        if !lifted.is_generic(n) || lifted.t != region.t {
            return Err(Error::Inconsistent(format!(
                "desingularization reached {lifted} from {region}"
            )));
        }
        let mut inner = None;
        let path = compose_with_section(&h, |c| {
            let g = generic_section_detailed(c, &frame)?;
            let path = g.path.clone();
            inner = Some(g);
            Ok(path)
        })?;
        let inner = inner.expect("inner section built");
        (
            GenericSection {
                path,
                ordering_pair: inner.ordering_pair,
                swaps: inner.swaps,
            },
            true,
        )
    };

    Ok(PlanResult {
        path: generic.path,
        frame,
        region,
        domain_index: region.c,
        swap_count: generic.swaps.len(),
        ordering_pair: generic.ordering_pair,
        swaps: generic.swaps,
        mode,
        desingularized,
    })
}

/// Stateless planner handle carrying fixed options.
#[derive(Clone, Debug)]
pub struct Planner<T> {
    pub options: PlanOptions<T>,
}

impl<T: Real> Default for Planner<T> {
    fn default() -> Self {
        Planner {
            options: PlanOptions::default(),
        }
    }
}

impl<T: Real> Planner<T> {
    pub fn new(options: PlanOptions<T>) -> Self {
        Planner { options }
    }

    pub fn plan(&self, query: &ConfigurationQuery<T>) -> Result<PlanResult<T>> {
        plan(query, &self.options)
    }
}
