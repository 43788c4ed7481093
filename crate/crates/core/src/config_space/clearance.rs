use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::{abs, min, Field, Real};

use super::strata::Ranks;
use super::{ConfigurationQuery, Frame};

/// Which side of an obstacle block a robot currently sits on, along `e`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Side {
    /// Robot projection below the block's: it will move in the `+e` direction.
    Left,
    /// Robot projection above the block's: it will move in the `-e` direction.
    Right,
}

impl Side {
    /// `+1` for `Right`, `-1` for `Left`.
    pub fn sign<T: Field>(self) -> T {
        match self {
            Side::Right => T::one(),
            Side::Left => -T::one(),
        }
    }
}

/// The smallest positive gap `M(C)` among start-start, goal-goal,
/// start-obstacle and goal-obstacle projection differences. Start-goal gaps
/// are not part of the family. Falls back to `1` when no gap is positive.
pub fn min_gap<T: Field>(query: &ConfigurationQuery<T>, frame: &Frame<T>) -> T {
    let ranks = Ranks::compute(query, frame);
    let mut best: Option<T> = None;
    let mut consider = |a: &T, b: &T| {
        let gap = abs(a.clone() - b.clone());
        if gap > *frame.snap() {
            best = Some(match best.take() {
                Some(cur) => min(cur, gap),
                None => gap,
            });
        }
    };
    for side in [&ranks.start, &ranks.goal] {
        for i in 0..side.len() {
            for k in i + 1..side.len() {
                consider(&side[i], &side[k]);
            }
            for o in &ranks.obstacle {
                consider(&side[i], o);
            }
        }
    }
    best.unwrap_or_else(T::one)
}

/// Clearance `eta` for carrying robot `robot` around obstacle `obstacle`
/// (start side). It is the minimum of
///
/// * the distance from `q(o_j)` to the nearest projection (start, goal or
///   obstacle outside the block) strictly beyond the block,
/// * the distance from `o_j` to the other members of its block,
/// * `|q(z_i) - q(o_j)|`.
///
/// Requires distinct start projections, off the obstacles', with the robot's start token
/// adjacent to the block containing `obstacle`, on the stated side.
pub fn clearance_eta<T: Real>(
    query: &ConfigurationQuery<T>,
    frame: &Frame<T>,
    robot: usize,
    obstacle: usize,
    side: Side,
) -> Result<T> {
    if robot >= query.n() || obstacle >= query.m() {
        return Err(Error::Precondition(format!(
            "robot {robot} or obstacle {obstacle} out of range"
        )));
    }
    let ranks = Ranks::compute(query, frame);
    if !ranks.side_is_generic(&ranks.start_rank) {
        let label = ranks.label();
        return Err(Error::NotGeneric {
            j: label.j,
            expected: 2 * query.n(),
        });
    }
    let r_robot = ranks.start_rank[robot];
    let r_block = ranks.obstacle_rank[obstacle];
    let actual = if r_robot > r_block { Side::Right } else { Side::Left };
    if actual != side {
        return Err(Error::Precondition(format!(
            "robot {} is on the {:?} of obstacle {}, not the {:?}",
            robot + 1,
            actual,
            obstacle + 1,
            side
        )));
    }
    let (lo, hi) = (r_robot.min(r_block), r_robot.max(r_block));
    let between = |r: usize| lo < r && r < hi;
    if ranks.start_rank.iter().copied().any(between) || ranks.obstacle_rank.iter().copied().any(between) {
        return Err(Error::Precondition(format!(
            "robot {} is not adjacent to the block of obstacle {}",
            robot + 1,
            obstacle + 1
        )));
    }

    let q_o = ranks.obstacle[obstacle];
    let mut eta = (ranks.start[robot] - q_o).abs();

    // Nearest projection beyond the block, on the side the robot moves toward.
    let beyond = |r: usize| match side {
        Side::Right => r < r_block,
        Side::Left => r > r_block,
    };
    let values = ranks
        .start
        .iter()
        .zip(&ranks.start_rank)
        .chain(ranks.goal.iter().zip(&ranks.goal_rank))
        .chain(ranks.obstacle.iter().zip(&ranks.obstacle_rank));
    for (&v, &r) in values {
        if beyond(r) {
            eta = eta.min((v - q_o).abs());
        }
    }

    let o_j = &query.obstacles()[obstacle];
    for k in ranks.block_of(obstacle) {
        if k != obstacle {
            eta = eta.min(o_j.dist(&query.obstacles()[k]));
        }
    }
    Ok(eta)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::point::Point;

    fn q(starts: &[[f64; 2]], goals: &[[f64; 2]], obstacles: &[[f64; 2]]) -> ConfigurationQuery<f64> {
        let pts = |v: &[[f64; 2]]| v.iter().map(|c| Point(c.to_vec())).collect();
        ConfigurationQuery::new(2, pts(starts), pts(goals), pts(obstacles)).unwrap()
    }

    #[test]
    fn min_gap_examples() {
        let f = Frame::fixed(2);
        assert_eq!(min_gap(&q(&[[0., 1.]], &[[2., 1.]], &[[3., 0.]]), &f), 1.0);
        // |q(z) - q(z')| = 0 is not in the family; only the obstacle gaps count.
        assert_eq!(min_gap(&q(&[[0., 1.]], &[[0., 2.]], &[[5., 0.]]), &f), 5.0);
        assert_eq!(min_gap(&q(&[[0., 1.]], &[[0., 2.]], &[[0., 0.]]), &f), 1.0);
    }

    #[test]
    fn eta_examples() {
        let f = Frame::fixed(2);
        // Far side projection at -3 (a goal), robot at q = 2.
        let c = q(&[[2., 1.]], &[[-3., 1.]], &[[0., 0.]]);
        assert_eq!(clearance_eta(&c, &f, 0, 0, Side::Right).unwrap(), 2.0);

        // Nothing beyond the block, robot 0.5 away.
        let c = q(&[[0.5, 1.]], &[[0.7, 1.]], &[[0., 0.]]);
        assert_eq!(clearance_eta(&c, &f, 0, 0, Side::Right).unwrap(), 0.5);

        // A coincident obstacle 0.1 away dominates.
        let c = q(&[[2., 1.]], &[[3., 1.]], &[[0., 0.], [0., 0.1], [-4., 0.]]);
        let eta = clearance_eta(&c, &f, 0, 0, Side::Right).unwrap();
        assert!((eta - 0.1).abs() < 1e-15);
    }

    #[test]
    fn eta_mirrored_side() {
        let f = Frame::fixed(2);
        let c = q(&[[-2., 1.]], &[[1.5, 1.]], &[[0., 0.]]);
        assert_eq!(clearance_eta(&c, &f, 0, 0, Side::Left).unwrap(), 1.5);
        assert!(clearance_eta(&c, &f, 0, 0, Side::Right).is_err());
    }

    #[test]
    fn eta_requires_adjacency() {
        let f = Frame::fixed(2);
        let c = q(&[[3., 1.], [1., 1.]], &[[4., 1.], [5., 1.]], &[[0., 0.]]);
        assert!(matches!(
            clearance_eta(&c, &f, 0, 0, Side::Right),
            Err(Error::Precondition(_))
        ));
        // Goals in between do not break adjacency.
        let c = q(&[[3., 1.]], &[[1., 1.]], &[[0., 0.]]);
        assert_eq!(clearance_eta(&c, &f, 0, 0, Side::Right).unwrap(), 3.0);
    }
}
