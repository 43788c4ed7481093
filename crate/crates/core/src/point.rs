use std::ops::Index;

use serde::{Deserialize, Serialize};

use crate::scalar::{Field, Real};

/// A point (or vector) in `R^d` with runtime dimension.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Point<T>(pub Vec<T>);

impl<T> Point<T> {
    pub fn new(coords: Vec<T>) -> Self {
        Point(coords)
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn coords(&self) -> &[T] {
        &self.0
    }
}

impl<T: Field> Point<T> {
    pub fn zeros(dim: usize) -> Self {
        Point(vec![T::zero(); dim])
    }

    /// Unit vector along coordinate axis `axis`.
    pub fn axis(dim: usize, axis: usize) -> Self {
        let mut p = Self::zeros(dim);
        p.0[axis] = T::one();
        p
    }

    pub fn dot(&self, other: &Self) -> T {
        debug_assert_eq!(self.dim(), other.dim());
        self.0
            .iter()
            .zip(&other.0)
            .fold(T::zero(), |acc, (a, b)| acc + a.clone() * b.clone())
    }

    pub fn add(&self, other: &Self) -> Self {
        Point(
            self.0
                .iter()
                .zip(&other.0)
                .map(|(a, b)| a.clone() + b.clone())
                .collect(),
        )
    }

    pub fn sub(&self, other: &Self) -> Self {
        Point(
            self.0
                .iter()
                .zip(&other.0)
                .map(|(a, b)| a.clone() - b.clone())
                .collect(),
        )
    }

    pub fn scale(&self, s: T) -> Self {
        Point(self.0.iter().map(|a| a.clone() * s.clone()).collect())
    }

    /// `self + s * dir`
    pub fn offset(&self, dir: &Self, s: T) -> Self {
        Point(
            self.0
                .iter()
                .zip(&dir.0)
                .map(|(a, b)| a.clone() + b.clone() * s.clone())
                .collect(),
        )
    }

    pub fn norm_sq(&self) -> T {
        self.dot(self)
    }
}

impl<T: Real> Point<T> {
    pub fn norm(&self) -> T {
        self.norm_sq().sqrt()
    }

    pub fn dist(&self, other: &Self) -> T {
        self.0
            .iter()
            .zip(&other.0)
            .fold(T::zero(), |acc, (a, b)| acc + (*a - *b) * (*a - *b))
            .sqrt()
    }

    /// Linear interpolation `(1-s) a + s b`, exact at both ends and in
    /// coordinates where `a` and `b` agree.
    pub fn lerp(a: &Self, b: &Self, s: T) -> Self {
        if s == T::zero() {
            return a.clone();
        }
        if s == T::one() {
            return b.clone();
        }
        Point(
            a.0.iter()
                .zip(&b.0)
                .map(|(x, y)| if x == y { *x } else { (T::one() - s) * *x + s * *y })
                .collect(),
        )
    }
}

impl<T> Index<usize> for Point<T> {
    type Output = T;

    fn index(&self, i: usize) -> &T {
        &self.0[i]
    }
}

impl<T> From<Vec<T>> for Point<T> {
    fn from(v: Vec<T>) -> Self {
        Point(v)
    }
}
