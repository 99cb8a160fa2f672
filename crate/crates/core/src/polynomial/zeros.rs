use std::cmp::Ordering;
use std::fmt;
use std::ops::Index;

use crate::error::{Error, Result};
use crate::scalar::{max_of, Scalar};

/// A finite multiset of reals kept in descending order, `w₁ ≥ w₂ ≥ … ≥ wₙ`.
///
/// Index 0 of the slice is the largest zero, which carries the odd index 1
/// in the parity conventions used by the criteria.
#[derive(Clone, Debug, PartialEq)]
pub struct Zeros<T>(Vec<T>);

impl<T: Scalar> Zeros<T> {
    /// Wraps values that are already sorted descending.
    pub fn new(values: Vec<T>) -> Result<Self> {
        for (index, pair) in values.windows(2).enumerate() {
            match pair[0].partial_cmp(&pair[1]) {
                None => return Err(Error::Unordered),
                Some(Ordering::Less) => return Err(Error::Unsorted { index: index + 1 }),
                _ => {}
            }
        }
        if values.iter().any(|v| v.partial_cmp(v).is_none()) {
            return Err(Error::Unordered);
        }
        Ok(Self(values))
    }

    /// Sorts arbitrary input into descending order.
    pub fn from_unsorted(mut values: Vec<T>) -> Result<Self> {
        if values.iter().any(|v| v.partial_cmp(v).is_none()) {
            return Err(Error::Unordered);
        }
        values.sort_by(|a, b| b.partial_cmp(a).expect("values are comparable"));
        Ok(Self(values))
    }

    pub fn empty() -> Self {
        Self(Vec::new())
    }

    pub fn as_slice(&self) -> &[T] {
        &self.0
    }

    pub fn into_vec(self) -> Vec<T> {
        self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn iter(&self) -> std::slice::Iter<'_, T> {
        self.0.iter()
    }

    /// Distances between adjacent zeros, `wⱼ − wⱼ₊₁`; all nonnegative.
    pub fn gaps(&self) -> Vec<T> {
        self.0
            .windows(2)
            .map(|w| w[0].clone() - w[1].clone())
            .collect()
    }

    /// Image under `x ↦ a·x + b`, re-sorted (a negative `a` reverses the order).
    pub fn affine(&self, a: &T, b: &T) -> Self {
        let mapped = self
            .0
            .iter()
            .map(|w| a.clone() * w.clone() + b.clone())
            .collect();
        Self::from_unsorted(mapped).expect("affine image of ordered values is ordered")
    }

    /// `max |wₖ|`, zero for the empty set.
    pub fn max_abs(&self) -> T {
        self.0.iter().fold(T::zero(), |acc, w| max_of(acc, w.abs()))
    }

    /// Converts every entry to another scalar type, keeping the order.
    pub fn convert<U: Scalar>(&self, f: impl Fn(&T) -> U) -> Zeros<U> {
        Zeros::from_unsorted(self.0.iter().map(f).collect()).expect("converted values are ordered")
    }
}

impl<T> Index<usize> for Zeros<T> {
    type Output = T;

    fn index(&self, index: usize) -> &T {
        &self.0[index]
    }
}

impl<'a, T> IntoIterator for &'a Zeros<T> {
    type Item = &'a T;
    type IntoIter = std::slice::Iter<'a, T>;

    fn into_iter(self) -> Self::IntoIter {
        self.0.iter()
    }
}

impl<T: fmt::Display> fmt::Display for Zeros<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (i, w) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{w}")?;
        }
        f.write_str(")")
    }
}
