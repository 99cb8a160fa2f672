//! Deciding whether a hyperbolic polynomial, given by its zeros, has a
//! hyperbolic antiderivative.
//!
//! With `P` the antiderivative of `p = ∏(x − wₖ)` vanishing at the origin, a
//! shift `P − c` is real-rooted exactly when `c` lies between the largest
//! critical value at an odd-indexed zero and the smallest at an even-indexed
//! one. Pairs of neighbouring indices can never violate this, so only pairs
//! `(j even, k odd)` with `|j − k| ≥ 3` have to be checked.

mod quartic;

pub use quartic::{
    gap_closed_form, normalize_quartic, quartic_a_form, quartic_b_form, quartic_closed_form,
    quartic_feasible, quartic_feasible_with, quartic_st_test, quartic_st_test_with, st_statistic,
    QuarticNormalization, QuarticReport, A_MATRIX, B_MATRIX,
};

use crate::error::{Error, Result};
use crate::polynomial::{Poly, Zeros};
use crate::scalar::{max_of, min_of, Scalar};

/// Outcome of the general criterion.
///
/// Indices in `violated_pairs` are 1-based, `(j, k)` with `j` even, `k` odd.
#[derive(Clone, Debug, PartialEq)]
pub struct CriterionReport<T> {
    pub feasible: bool,
    /// Some pair inequality holds with equality (within tolerance in floating mode).
    pub boundary: bool,
    /// `P(w₁), …, P(wₙ)` with `P(0) = 0`.
    pub critical_values: Vec<T>,
    /// `max { P(wₖ) : k odd }`.
    pub c_lo: T,
    /// `min { P(wₖ) : k even }`; `None` (unbounded above) when `n = 1`.
    pub c_hi: Option<T>,
    pub violated_pairs: Vec<(usize, usize)>,
}

impl<T: Scalar> CriterionReport<T> {
    /// The admissible constants `[c_lo, c_hi]`, or `None` when infeasible.
    pub fn interval(&self) -> Option<(T, Option<T>)> {
        self.feasible
            .then(|| (self.c_lo.clone(), self.c_hi.clone()))
    }

    /// Whether `c` is admissible, with `slack` allowed on either side.
    pub fn admits(&self, c: &T, slack: &T) -> bool {
        self.feasible
            && *c >= self.c_lo.clone() - slack.clone()
            && self
                .c_hi
                .as_ref()
                .is_none_or(|hi| *c <= hi.clone() + slack.clone())
    }
}

/// The antiderivative of `∏(x − wₖ)` normalized by `P(0) = 0`.
pub fn antiderivative_of_zeros<T: Scalar>(zeros: &Zeros<T>) -> Poly<T> {
    Poly::from_zeros(zeros).antiderivative(T::zero())
}

/// `(P(w₁), …, P(wₙ))` with `P(0) = 0`.
pub fn critical_values<T: Scalar>(zeros: &Zeros<T>) -> Result<Vec<T>> {
    if zeros.is_empty() {
        return Err(Error::EmptyZeros);
    }
    let p = antiderivative_of_zeros(zeros);
    Ok(zeros.iter().map(|w| p.eval(w)).collect())
}

/// All `(j, k)`, 1-based, with `j` even, `k` odd and `|j − k| ≥ 3`.
///
/// Ordered by `j`, then `k`.
pub fn inequality_pairs(n: usize) -> Vec<(usize, usize)> {
    (2..=n)
        .step_by(2)
        .flat_map(|j| {
            (1..=n)
                .step_by(2)
                .filter(move |&k| j.abs_diff(k) >= 3)
                .map(move |k| (j, k))
        })
        .collect()
}

/// `⌊(n/2 − 1)²⌋`, the number of pair inequalities for `n` zeros.
pub fn inequality_count(n: usize) -> usize {
    let d = n.abs_diff(2);
    d * d / 4
}

pub fn feasibility_general<T: Scalar>(zeros: &Zeros<T>) -> Result<CriterionReport<T>> {
    feasibility_general_with(zeros, &T::default_tolerance())
}

/// Evaluates the pair criterion.
///
/// In floating mode, sign decisions are made on the zero set rescaled to
/// `max |wₖ| = 1` (the verdict is scale invariant) against the absolute
/// tolerance `tol`; a difference within `tol` counts as satisfied and sets
/// the `boundary` flag. Reported values are always in the original scale.
pub fn feasibility_general_with<T: Scalar>(
    zeros: &Zeros<T>,
    tol: &T,
) -> Result<CriterionReport<T>> {
    let values = critical_values(zeros)?;
    let n = values.len();
    let decision_values = if T::EXACT || zeros.max_abs().is_zero() {
        values.clone()
    } else {
        let inv = T::one() / zeros.max_abs();
        critical_values(&zeros.affine(&inv, &T::zero()))?
    };

    let mut violated_pairs = Vec::new();
    let mut boundary = false;
    for (j, k) in inequality_pairs(n) {
        let diff = decision_values[j - 1].clone() - decision_values[k - 1].clone();
        if diff.is_negligible(tol) {
            boundary = true;
        } else if diff.is_negative() {
            violated_pairs.push((j, k));
        }
    }

    let c_lo = values
        .iter()
        .step_by(2)
        .cloned()
        .reduce(max_of)
        .expect("at least one odd index");
    let c_hi = values.iter().skip(1).step_by(2).cloned().reduce(min_of);

    Ok(CriterionReport {
        feasible: violated_pairs.is_empty(),
        boundary,
        critical_values: values,
        c_lo,
        c_hi,
        violated_pairs,
    })
}
