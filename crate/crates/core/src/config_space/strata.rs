use std::cmp::Ordering;
use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::Field;

use super::{ConfigurationQuery, Frame};

/// The stratum `A_{j,t}` a query falls into: `t` distinct obstacle
/// projections and `j + t` distinct projections overall. `c = j + t` is the
/// index of the continuity domain.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct RegionLabel {
    pub j: usize,
    pub t: usize,
    pub c: usize,
}

impl RegionLabel {
    pub fn new(j: usize, t: usize) -> Self {
        RegionLabel { j, t, c: j + t }
    }

    pub fn is_generic(&self, n: usize) -> bool {
        self.j == 2 * n
    }
}

impl fmt::Display for RegionLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "A(j={}, t={}) c={}", self.j, self.t, self.c)
    }
}

/// One symbol of a generalized ordering along the projection line.
/// Indices are 0-based; `Display` uses the 1-based labels of the usual notation.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Token {
    Start(usize),
    Goal(usize),
    /// Obstacles sharing one projection value, sorted by index.
    Block(Vec<usize>),
}

/// A token with start/goal identified, used to compare the two sides.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum PatternKey {
    Robot(usize),
    Block(usize),
}

impl Token {
    pub fn key(&self) -> PatternKey {
        match self {
            Token::Start(i) | Token::Goal(i) => PatternKey::Robot(*i),
            Token::Block(b) => PatternKey::Block(b[0]),
        }
    }

    pub fn robot(&self) -> Option<usize> {
        match self {
            Token::Start(i) | Token::Goal(i) => Some(*i),
            Token::Block(_) => None,
        }
    }
}

impl fmt::Display for Token {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Token::Start(i) => write!(f, "R{}", i + 1),
            Token::Goal(i) => write!(f, "G{}", i + 1),
            Token::Block(b) => {
                let members: Vec<String> = b.iter().map(|k| (k + 1).to_string()).collect();
                write!(f, "O{{{}}}", members.join(","))
            }
        }
    }
}

impl Serialize for Token {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// Orderings of the start-side and goal-side symbols along `L`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct OrderingPair {
    pub sigma: Vec<Token>,
    pub sigma_prime: Vec<Token>,
}

impl OrderingPair {
    pub fn sigma_keys(&self) -> Vec<PatternKey> {
        self.sigma.iter().map(Token::key).collect()
    }

    pub fn sigma_prime_keys(&self) -> Vec<PatternKey> {
        self.sigma_prime.iter().map(Token::key).collect()
    }

    /// True when both sides have the same left-to-right pattern (`sigma = sigma'`).
    pub fn is_order_preserving(&self) -> bool {
        self.sigma_keys() == self.sigma_prime_keys()
    }

    /// Obstacle blocks in left-to-right order as seen on the start side.
    pub fn blocks(&self) -> Vec<&[usize]> {
        blocks_of(&self.sigma)
    }

    /// Checks the structural invariants of a pair.
    pub fn validate(&self) -> Result<()> {
        let (bs, bg) = (blocks_of(&self.sigma), blocks_of(&self.sigma_prime));
        if bs != bg {
            return Err(Error::InvalidPair(
                "obstacle blocks differ between the two orderings".into(),
            ));
        }
        let robots = |seq: &[Token], want_start: bool| -> Result<BTreeSet<usize>> {
            let mut seen = BTreeSet::new();
            for tok in seq {
                match (tok, want_start) {
                    (Token::Start(i), true) | (Token::Goal(i), false) => {
                        if !seen.insert(*i) {
                            return Err(Error::InvalidPair(format!("robot {} appears twice", i + 1)));
                        }
                    }
                    (Token::Block(_), _) => {}
                    _ => return Err(Error::InvalidPair(format!("unexpected token {tok}"))),
                }
            }
            Ok(seen)
        };
        if robots(&self.sigma, true)? != robots(&self.sigma_prime, false)? {
            return Err(Error::InvalidPair("robot sets differ".into()));
        }
        let mut members: Vec<usize> = bs.iter().flat_map(|b| b.iter().copied()).collect();
        members.sort_unstable();
        if members.iter().enumerate().any(|(k, &o)| k != o) {
            return Err(Error::InvalidPair("blocks do not partition the obstacles".into()));
        }
        Ok(())
    }
}

fn blocks_of(seq: &[Token]) -> Vec<&[usize]> {
    seq.iter()
        .filter_map(|t| match t {
            Token::Block(b) => Some(b.as_slice()),
            _ => None,
        })
        .collect()
}

impl fmt::Display for OrderingPair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let show = |seq: &[Token]| seq.iter().map(ToString::to_string).collect::<Vec<_>>().join(" < ");
        write!(f, "[{}] / [{}]", show(&self.sigma), show(&self.sigma_prime))
    }
}

/// Projection values of a configuration together with the rank of each
/// value among the distinct values (equal within the frame's snap tolerance).
#[derive(Clone, Debug)]
pub(crate) struct Ranks<T> {
    pub start: Vec<T>,
    pub goal: Vec<T>,
    pub obstacle: Vec<T>,
    pub start_rank: Vec<usize>,
    pub goal_rank: Vec<usize>,
    pub obstacle_rank: Vec<usize>,
    pub distinct: usize,
}

impl<T: Field> Ranks<T> {
    pub fn compute(query: &ConfigurationQuery<T>, frame: &Frame<T>) -> Self {
        let start: Vec<T> = query.starts().iter().map(|p| frame.q(p)).collect();
        let goal: Vec<T> = query.goals().iter().map(|p| frame.q(p)).collect();
        let obstacle: Vec<T> = query.obstacles().iter().map(|p| frame.q(p)).collect();

        let all: Vec<&T> = start.iter().chain(&goal).chain(&obstacle).collect();
        let mut order: Vec<usize> = (0..all.len()).collect();
        order.sort_by(|&a, &b| all[a].partial_cmp(all[b]).unwrap_or(Ordering::Equal));

        // Single-linkage grouping: a gap larger than the snap tolerance opens a new rank.
        let mut rank = vec![0; all.len()];
        let mut current = 0;
        for w in 1..order.len() {
            let gap = all[order[w]].clone() - all[order[w - 1]].clone();
            if gap > *frame.snap() {
                current += 1;
            }
            rank[order[w]] = current;
        }
        let n = start.len();
        Ranks {
            start_rank: rank[..n].to_vec(),
            goal_rank: rank[n..2 * n].to_vec(),
            obstacle_rank: rank[2 * n..].to_vec(),
            distinct: if all.is_empty() { 0 } else { current + 1 },
            start,
            goal,
            obstacle,
        }
    }

    pub fn obstacle_ranks(&self) -> BTreeSet<usize> {
        self.obstacle_rank.iter().copied().collect()
    }

    pub fn label(&self) -> RegionLabel {
        let t = self.obstacle_ranks().len();
        RegionLabel::new(self.distinct - t, t)
    }

    /// Robot projections on one side pairwise distinct and off every obstacle projection.
    pub fn side_is_generic(&self, robot_ranks: &[usize]) -> bool {
        let obstacles = self.obstacle_ranks();
        let mut seen = BTreeSet::new();
        robot_ranks.iter().all(|r| !obstacles.contains(r) && seen.insert(*r))
    }

    /// Obstacles sharing obstacle `j`'s projection value.
    pub fn block_of(&self, j: usize) -> Vec<usize> {
        let r = self.obstacle_rank[j];
        (0..self.obstacle_rank.len())
            .filter(|&k| self.obstacle_rank[k] == r)
            .collect()
    }

    fn side(&self, robot_ranks: &[usize], robot_token: fn(usize) -> Token) -> Vec<Token> {
        let mut items: Vec<(usize, Token)> = robot_ranks
            .iter()
            .enumerate()
            .map(|(i, &r)| (r, robot_token(i)))
            .collect();
        for r in self.obstacle_ranks() {
            let block: Vec<usize> = (0..self.obstacle_rank.len())
                .filter(|&k| self.obstacle_rank[k] == r)
                .collect();
            items.push((r, Token::Block(block)));
        }
        items.sort_by_key(|(r, _)| *r);
        items.into_iter().map(|(_, t)| t).collect()
    }
}

/// Determines the stratum `A_{j,t}` containing `query`.
pub fn classify<T: Field>(query: &ConfigurationQuery<T>, frame: &Frame<T>) -> RegionLabel {
    Ranks::compute(query, frame).label()
}

/// The generalized ordering pair `(sigma, sigma')` of a generic query
/// (all robot projections distinct from each other and from the obstacles').
pub fn orderings<T: Field>(query: &ConfigurationQuery<T>, frame: &Frame<T>) -> Result<OrderingPair> {
    let ranks = Ranks::compute(query, frame);
    let label = ranks.label();
    if !label.is_generic(query.n()) {
        return Err(Error::NotGeneric {
            j: label.j,
            expected: 2 * query.n(),
        });
    }
    Ok(OrderingPair {
        sigma: ranks.side(&ranks.start_rank, Token::Start),
        sigma_prime: ranks.side(&ranks.goal_rank, Token::Goal),
    })
}

/// Orderings of each side taken on its own: starts with obstacles, goals
/// with obstacles. Unlike [`orderings`], a start may share its projection
/// with a goal.
pub fn side_orderings<T: Field>(query: &ConfigurationQuery<T>, frame: &Frame<T>) -> Result<OrderingPair> {
    let ranks = Ranks::compute(query, frame);
    if !ranks.side_is_generic(&ranks.start_rank) || !ranks.side_is_generic(&ranks.goal_rank) {
        let label = ranks.label();
        return Err(Error::NotGeneric {
            j: label.j,
            expected: 2 * query.n(),
        });
    }
    Ok(OrderingPair {
        sigma: ranks.side(&ranks.start_rank, Token::Start),
        sigma_prime: ranks.side(&ranks.goal_rank, Token::Goal),
    })
}
