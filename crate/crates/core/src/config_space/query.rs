use serde::{Deserialize, Serialize};

use crate::error::{Error, Issue, Result};
use crate::point::Point;
use crate::scalar::Field;

/// A point of the parametrized configuration space: start and goal positions
/// of `n` robots together with the positions of `m` obstacles shared by both.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ConfigurationQuery<T> {
    dim: usize,
    starts: Vec<Point<T>>,
    goals: Vec<Point<T>>,
    obstacles: Vec<Point<T>>,
}

impl<T: Field> ConfigurationQuery<T> {
    /// Validates every invariant and reports all violations at once.
    pub fn new(
        dim: usize,
        starts: Vec<Point<T>>,
        goals: Vec<Point<T>>,
        obstacles: Vec<Point<T>>,
    ) -> Result<Self> {
        let query = ConfigurationQuery {
            dim,
            starts,
            goals,
            obstacles,
        };
        let issues = query.issues();
        if issues.is_empty() {
            Ok(query)
        } else {
            Err(Error::InvalidQuery(issues))
        }
    }

    /// Builds a configuration known to be admissible (deformation outputs).
    pub(crate) fn from_parts(
        dim: usize,
        starts: Vec<Point<T>>,
        goals: Vec<Point<T>>,
        obstacles: Vec<Point<T>>,
    ) -> Self {
        ConfigurationQuery {
            dim,
            starts,
            goals,
            obstacles,
        }
    }

    pub fn issues(&self) -> Vec<Issue> {
        let mut issues = Vec::new();
        if self.dim < 2 {
            issues.push(Issue::new("dim", format!("must be at least 2, got {}", self.dim)));
        }
        if self.starts.len() != self.goals.len() {
            issues.push(Issue::new(
                "goals",
                format!(
                    "expected {} goals to match starts, got {}",
                    self.starts.len(),
                    self.goals.len()
                ),
            ));
        }
        if self.starts.is_empty() {
            issues.push(Issue::new("starts", "at least one robot is required"));
        }
        if self.obstacles.is_empty() {
            issues.push(Issue::new("obstacles", "at least one obstacle is required"));
        }

        let groups = [
            ("starts", &self.starts),
            ("goals", &self.goals),
            ("obstacles", &self.obstacles),
        ];
        let mut dims_ok = true;
        for (name, pts) in groups {
            for (i, p) in pts.iter().enumerate() {
                if p.dim() != self.dim {
                    dims_ok = false;
                    issues.push(Issue::new(
                        format!("{name}[{i}]"),
                        format!("expected {} coordinates, got {}", self.dim, p.dim()),
                    ));
                }
            }
        }
        if !dims_ok {
            return issues;
        }

        for (name, pts) in groups {
            for i in 0..pts.len() {
                for k in i + 1..pts.len() {
                    if pts[i] == pts[k] {
                        issues.push(Issue::new(
                            format!("{name}[{k}]"),
                            format!("coincides with {name}[{i}]"),
                        ));
                    }
                }
            }
        }
        for (name, pts) in [("starts", &self.starts), ("goals", &self.goals)] {
            for (i, p) in pts.iter().enumerate() {
                for (k, o) in self.obstacles.iter().enumerate() {
                    if p == o {
                        issues.push(Issue::new(
                            format!("{name}[{i}]"),
                            format!("coincides with obstacles[{k}]"),
                        ));
                    }
                }
            }
        }
        issues
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Number of robots.
    pub fn n(&self) -> usize {
        self.starts.len()
    }

    /// Number of obstacles.
    pub fn m(&self) -> usize {
        self.obstacles.len()
    }

    pub fn starts(&self) -> &[Point<T>] {
        &self.starts
    }

    pub fn goals(&self) -> &[Point<T>] {
        &self.goals
    }

    pub fn obstacles(&self) -> &[Point<T>] {
        &self.obstacles
    }

    /// All `2n + m` points in the order starts, goals, obstacles.
    pub fn points(&self) -> impl Iterator<Item = &Point<T>> {
        self.starts.iter().chain(&self.goals).chain(&self.obstacles)
    }

    /// Same configuration with the start and goal sides exchanged.
    pub fn reversed(&self) -> Self {
        ConfigurationQuery {
            dim: self.dim,
            starts: self.goals.clone(),
            goals: self.starts.clone(),
            obstacles: self.obstacles.clone(),
        }
    }

    /// Applies `f` to every point; the result is revalidated.
    pub fn map_points(&self, mut f: impl FnMut(&Point<T>) -> Point<T>) -> Result<Self> {
        Self::new(
            self.dim,
            self.starts.iter().map(&mut f).collect(),
            self.goals.iter().map(&mut f).collect(),
            self.obstacles.iter().map(&mut f).collect(),
        )
    }

    /// Converts the scalar type, e.g. rationals to `f64`.
    pub fn convert<U: Field>(&self, mut f: impl FnMut(&T) -> U) -> Result<ConfigurationQuery<U>> {
        let mut conv = |p: &Point<T>| Point(p.0.iter().map(&mut f).collect());
        ConfigurationQuery::new(
            self.dim,
            self.starts.iter().map(&mut conv).collect(),
            self.goals.iter().map(&mut conv).collect(),
            self.obstacles.iter().map(&mut conv).collect(),
        )
    }

    /// Flattened coordinates: starts, then goals, then obstacles.
    pub fn to_flat(&self) -> Vec<T> {
        self.points().flat_map(|p| p.0.iter().cloned()).collect()
    }

    /// Inverse of [`to_flat`](Self::to_flat) for a query of the same shape.
    pub fn from_flat(&self, flat: &[T]) -> Result<Self> {
        let d = self.dim;
        if flat.len() != d * (2 * self.n() + self.m()) {
            return Err(Error::DimensionMismatch {
                expected: d * (2 * self.n() + self.m()),
                got: flat.len(),
            });
        }
        let mut chunks = flat.chunks(d).map(|c| Point(c.to_vec()));
        let starts = chunks.by_ref().take(self.n()).collect();
        let goals = chunks.by_ref().take(self.n()).collect();
        let obstacles = chunks.collect();
        Self::new(d, starts, goals, obstacles)
    }
}
