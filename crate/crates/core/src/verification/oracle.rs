use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{FromPrimitive, Zero};
use rand::Rng;

use crate::config_space::{ConfigurationQuery, FrameMode, RegionLabel};
use crate::error::{Error, Result};
use crate::point::Point;

pub type Rational = BigRational;

fn dot(a: &[Rational], b: &[Rational]) -> Rational {
    a.iter().zip(b).fold(Rational::zero(), |acc, (x, y)| acc + x * y)
}

fn count_distinct(mut values: Vec<Rational>) -> usize {
    values.sort();
    values.dedup();
    values.len()
}

/// Stratum of a rational query computed with exact arithmetic.
///
/// Written independently of the planner's classifier: projections are exact
/// dot products with the axis `(1, 0, ..., 0)` or with `o_2 - o_1`, and the
/// counts come from sorting and deduplicating.
pub fn classify_oracle(query: &ConfigurationQuery<Rational>, mode: FrameMode) -> Result<RegionLabel> {
    let d = query.dim();
    let direction: Vec<Rational> = match mode {
        FrameMode::Fixed => (0..d)
            .map(|k| if k == 0 { Rational::from_integer(1.into()) } else { Rational::zero() })
            .collect(),
        FrameMode::ObstaclePair => {
            if !d.is_multiple_of(2) || query.m() < 2 {
                return Err(Error::ModeUnsupported {
                    mode: "obstacle_pair",
                    reason: format!("needs even d and m >= 2 (d = {d}, m = {})", query.m()),
                });
            }
            let (o1, o2) = (&query.obstacles()[0].0, &query.obstacles()[1].0);
            let v: Vec<Rational> = o1.iter().zip(o2).map(|(a, b)| b - a).collect();
            if v.iter().all(Zero::is_zero) {
                return Err(Error::ModeUnsupported {
                    mode: "obstacle_pair",
                    reason: "first two obstacles coincide".into(),
                });
            }
            v
        }
    };
    let proj = |p: &Point<Rational>| dot(&p.0, &direction);
    let obstacles: Vec<Rational> = query.obstacles().iter().map(proj).collect();
    let everything: Vec<Rational> = query.points().map(proj).collect();
    let t = count_distinct(obstacles);
    let total = count_distinct(everything);
    Ok(RegionLabel::new(total - t, t))
}

/// Exact rational copy of a floating-point query (every finite float is rational).
pub fn to_rational(query: &ConfigurationQuery<f64>) -> Result<ConfigurationQuery<Rational>> {
    if let Some(x) = query.to_flat().into_iter().find(|x| !x.is_finite()) {
        return Err(Error::Unsupported(format!("non-finite coordinate {x}")));
    }
    query.convert(|x| Rational::from_f64(*x).expect("finite"))
}

/// Random admissible query with coordinates `a/b`, `|a| <= 6`, `1 <= b <= 4`.
///
/// The coarse grid makes coincident projections common, so every stratum
/// is exercised.
pub fn random_rational_query<R: Rng + ?Sized>(rng: &mut R, n: usize, m: usize, dim: usize) -> ConfigurationQuery<Rational> {
    let point = |rng: &mut R| {
        Point(
            (0..dim)
                .map(|_| {
                    let a: i64 = rng.random_range(-6..=6);
                    let b: i64 = rng.random_range(1..=4);
                    Rational::new(BigInt::from(a), BigInt::from(b))
                })
                .collect(),
        )
    };
    loop {
        let starts = (0..n).map(|_| point(rng)).collect();
        let goals = (0..n).map(|_| point(rng)).collect();
        let obstacles = (0..m).map(|_| point(rng)).collect();
        if let Ok(q) = ConfigurationQuery::new(dim, starts, goals, obstacles) {
            return q;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::config_space::{classify, Frame};
    use crate::verification::seeded_rng;

    fn r(a: i64) -> Rational {
        Rational::from_integer(a.into())
    }

    #[test]
    fn all_coincident_projections() {
        let q = ConfigurationQuery::new(
            2,
            vec![Point(vec![r(0), r(1)])],
            vec![Point(vec![r(0), r(2)])],
            vec![Point(vec![r(0), r(3)])],
        )
        .unwrap();
        assert_eq!(classify_oracle(&q, FrameMode::Fixed).unwrap(), RegionLabel::new(0, 1));
    }

    #[test]
    fn distinct_rationals_are_generic() {
        let q = ConfigurationQuery::new(
            2,
            vec![Point(vec![r(1), r(0)]), Point(vec![r(2), r(0)])],
            vec![Point(vec![r(3), r(0)]), Point(vec![r(4), r(0)])],
            vec![Point(vec![r(5), r(0)])],
        )
        .unwrap();
        let label = classify_oracle(&q, FrameMode::Fixed).unwrap();
        assert_eq!(label.j, 4);
        assert_eq!(label.c, 5);
    }

    #[test]
    fn agrees_with_classify_on_a_small_batch() {
        let mut rng = seeded_rng(3);
        for _ in 0..200 {
            let q = random_rational_query(&mut rng, 2, 2, 2);
            let fixed = classify(&q, &Frame::fixed(2));
            assert_eq!(fixed, classify_oracle(&q, FrameMode::Fixed).unwrap());
            let pair = Frame::exact_pair(&q.obstacles()[0], &q.obstacles()[1]).unwrap();
            assert_eq!(classify(&q, &pair), classify_oracle(&q, FrameMode::ObstaclePair).unwrap());
        }
    }

    #[test]
    fn floats_convert_exactly() {
        let q = ConfigurationQuery::new(2, vec![Point(vec![0.1, 0.0])], vec![Point(vec![0.3, 0.0])], vec![Point(vec![0.2, 1.0])])
            .unwrap();
        let exact = to_rational(&q).unwrap();
        assert_eq!(exact.starts()[0].0[0], Rational::from_f64(0.1).unwrap());
        assert_ne!(exact.starts()[0].0[0], Rational::new(1.into(), 10.into()));
    }
}
