use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::config_space::{ConfigurationQuery, FrameMode};
use crate::error::{Error, Result};
use crate::point::Point;

/// Coordinates are drawn from `[-DEFAULT_RANGE, DEFAULT_RANGE]`.
pub const DEFAULT_RANGE: f64 = 10.0;

pub fn seeded_rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn random_point<R: Rng + ?Sized>(rng: &mut R, dim: usize, range: f64) -> Point<f64> {
    Point((0..dim).map(|_| rng.random_range(-range..=range)).collect())
}

/// Uniform random admissible query; inadmissible draws are rejected and redrawn.
pub fn random_query<R: Rng + ?Sized>(rng: &mut R, n: usize, m: usize, dim: usize, range: f64) -> ConfigurationQuery<f64> {
    loop {
        let starts = (0..n).map(|_| random_point(rng, dim, range)).collect();
        let goals = (0..n).map(|_| random_point(rng, dim, range)).collect();
        let obstacles = (0..m).map(|_| random_point(rng, dim, range)).collect();
        if let Ok(q) = ConfigurationQuery::new(dim, starts, goals, obstacles) {
            return q;
        }
    }
}

/// Requested shape for [`stratum_query`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct StratumSpec {
    pub n: usize,
    pub m: usize,
    pub dim: usize,
    pub j: usize,
    pub t: usize,
    pub mode: FrameMode,
}

/// Random query lying in the stratum `A_{j,t}` of the given mode's frame.
///
/// The frame is the first coordinate axis in both modes: in obstacle-pair
/// mode the first two obstacles differ only in their first coordinate. Every
/// projection value is drawn on an integer grid in `[-range, range]` so
/// that coincidences are exact; the remaining coordinates are continuous.
pub fn stratum_query<R: Rng + ?Sized>(rng: &mut R, spec: StratumSpec, range: f64) -> Result<ConfigurationQuery<f64>> {
    let StratumSpec { n, m, dim, j, t, mode } = spec;
    let min_t = match mode {
        FrameMode::Fixed => 1,
        FrameMode::ObstaclePair => 2,
    };
    if n == 0 || m == 0 || dim < 2 || j > 2 * n || t < min_t || t > m {
        return Err(Error::Unsupported(format!(
            "no stratum A({j},{t}) for n={n}, m={m}, d={dim}, mode {mode}"
        )));
    }
    if mode == FrameMode::ObstaclePair && dim % 2 != 0 {
        return Err(Error::ModeUnsupported {
            mode: "obstacle_pair",
            reason: format!("dimension {dim} is odd"),
        });
    }
    let grid = range.floor() as i64;
    if grid * 2 + 1 < (j + t) as i64 {
        return Err(Error::Unsupported("range too small for the requested stratum".into()));
    }
    loop {
        let mut values: Vec<i64> = (-grid..=grid).collect();
        values.shuffle(rng);
        let (obstacle_values, robot_values) = (&values[..t], &values[t..t + j]);

        let mut obstacle_q: Vec<i64> = obstacle_values.to_vec();
        for _ in t..m {
            obstacle_q.push(obstacle_values[rng.random_range(0..t)]);
        }
        obstacle_q[..t].shuffle(rng);
        if mode == FrameMode::ObstaclePair && obstacle_q[0] == obstacle_q[1] {
            continue;
        }

        let used: Vec<i64> = obstacle_values.iter().chain(robot_values).copied().collect();
        let mut slots: Vec<i64> = robot_values.to_vec();
        for _ in j..2 * n {
            slots.push(used[rng.random_range(0..used.len())]);
        }
        slots.shuffle(rng);

        let mut point = |q: i64| {
            let mut p = random_point(rng, dim, range);
            p.0[0] = q as f64;
            p
        };
        let starts: Vec<Point<f64>> = slots[..n].iter().map(|&q| point(q)).collect();
        let goals: Vec<Point<f64>> = slots[n..].iter().map(|&q| point(q)).collect();
        let mut obstacles: Vec<Point<f64>> = obstacle_q.iter().map(|&q| point(q)).collect();
        if mode == FrameMode::ObstaclePair {
            let mut o2 = obstacles[0].clone();
            o2.0[0] = obstacle_q[1] as f64;
            obstacles[1] = o2;
        }
        if let Ok(q) = ConfigurationQuery::new(dim, starts, goals, obstacles) {
            return Ok(q);
        }
    }
}
