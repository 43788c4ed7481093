use std::collections::BTreeMap;

use serde::Serialize;

use crate::config_space::{classify, make_frame, ConfigurationQuery, FrameMode};
use crate::error::{Error, Result};
use crate::path::{time_to, PiecewisePath, Snapshot};
use crate::planner::{plan, PlanOptions, PlanResult};
use crate::scalar::Real;
use crate::verification::sampling::{random_query, seeded_rng, stratum_query, StratumSpec, DEFAULT_RANGE};

/// Positions of all robots and obstacles at time `t`.
pub fn evaluate_path<T: Real>(path: &PiecewisePath<T>, t: T) -> Result<Snapshot<T>> {
    path.evaluate(t)
}

/// Outcome of classifying many queries.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct PartitionReport {
    pub trials: usize,
    /// Realized domain index `c` and how often it occurred.
    pub histogram: BTreeMap<usize, usize>,
    /// Queries whose label broke `0 <= j <= 2n`, `t_min <= t <= m` or `c = j + t`.
    pub out_of_range: usize,
}

impl PartitionReport {
    pub fn realized(&self) -> Vec<usize> {
        self.histogram.keys().copied().collect()
    }

    fn record(&mut self, query: &ConfigurationQuery<f64>, mode: FrameMode) -> Result<()> {
        let frame = make_frame(query, mode)?;
        let label = classify(query, &frame);
        let (n, m) = (query.n(), query.m());
        self.trials += 1;
        let ok = label.j <= 2 * n
            && label.t >= mode.min_domain()
            && label.t <= m
            && label.c == label.j + label.t
            && label.c >= mode.min_domain()
            && label.c <= 2 * n + m;
        if !ok {
            self.out_of_range += 1;
        }
        *self.histogram.entry(label.c).or_default() += 1;
        Ok(())
    }
}

/// Classifies `trials` uniformly random queries.
pub fn check_partition(n: usize, m: usize, dim: usize, mode: FrameMode, trials: usize, seed: u64) -> Result<PartitionReport> {
    let mut rng = seeded_rng(seed);
    let mut report = PartitionReport::default();
    for _ in 0..trials {
        let q = random_query(&mut rng, n, m, dim, DEFAULT_RANGE);
        report.record(&q, mode)?;
    }
    Ok(report)
}

/// Classifies `per_stratum` constructed witnesses of every stratum `A_{j,t}`
/// the mode admits.
pub fn check_strata(n: usize, m: usize, dim: usize, mode: FrameMode, per_stratum: usize, seed: u64) -> Result<PartitionReport> {
    let mut rng = seeded_rng(seed);
    let mut report = PartitionReport::default();
    for t in mode.min_domain()..=m {
        for j in 0..=2 * n {
            for _ in 0..per_stratum {
                let spec = StratumSpec { n, m, dim, j, t, mode };
                let q = stratum_query(&mut rng, spec, DEFAULT_RANGE)?;
                report.record(&q, mode)?;
            }
        }
    }
    Ok(report)
}

/// Local parameters at which each segment is compared.
const PROBE_SAMPLES: usize = 16;

fn same_piece<T: Real>(a: &PlanResult<T>, b: &PlanResult<T>) -> Option<String> {
    if a.region != b.region {
        return Some(format!("region {} became {}", a.region, b.region));
    }
    if a.ordering_pair != b.ordering_pair {
        return Some(format!("orderings {} became {}", a.ordering_pair, b.ordering_pair));
    }
    if a.swaps != b.swaps {
        return Some("swap sequence changed".into());
    }
    if a.path.breakpoints() != b.path.breakpoints() {
        return Some("segment breakpoints changed".into());
    }
    None
}

/// Sup-distance between the plan for `query` and the plan for
/// `query + eps * direction`, for each `eps`.
///
/// `direction` is in the flattened coordinates of
/// [`ConfigurationQuery::to_flat`]. Both paths are compared at a fixed set
/// of sample times inside every segment. A perturbation that leaves the
/// piece of the partition the base query lies in gives
/// [`Error::Inconclusive`].
pub fn continuity_probe<T: Real>(
    query: &ConfigurationQuery<T>,
    direction: &[T],
    epsilons: &[T],
    options: &PlanOptions<T>,
) -> Result<Vec<T>> {
    let flat = query.to_flat();
    if direction.len() != flat.len() {
        return Err(Error::DimensionMismatch {
            expected: flat.len(),
            got: direction.len(),
        });
    }
    let base = plan(query, options)?;
    let breakpoints = base.path.breakpoints();
    let mut times = Vec::new();
    for w in breakpoints.windows(2) {
        let (t0, t1): (T, T) = (time_to(w[0]), time_to(w[1]));
        for k in 0..=PROBE_SAMPLES {
            times.push(t0 + (t1 - t0) * T::lit(k as f64) / T::lit(PROBE_SAMPLES as f64));
        }
    }

    let mut out = Vec::with_capacity(epsilons.len());
    for &eps in epsilons {
        let moved: Vec<T> = flat.iter().zip(direction).map(|(&x, &v)| x + eps * v).collect();
        let perturbed = query.from_flat(&moved)?;
        if !perturbed.issues().is_empty() {
            return Err(Error::Inconclusive(format!("perturbation by {eps} is not admissible")));
        }
        let other = plan(&perturbed, options).map_err(|e| Error::Inconclusive(format!("perturbed plan failed: {e}")))?;
        if let Some(why) = same_piece(&base, &other) {
            return Err(Error::Inconclusive(format!("eps = {eps}: {why}")));
        }
        let mut d = T::zero();
        for &t in &times {
            let t = t.min(T::one());
            for r in 0..base.path.n() {
                d = d.max(base.path.position(r, t).dist(&other.path.position(r, t)));
            }
        }
        out.push(d);
    }
    Ok(out)
}
