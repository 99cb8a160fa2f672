//! Explicit hyperbolic antiderivatives and their verification.

use std::fmt;

use rayon::prelude::*;
use thiserror::Error;

use crate::criterion::{antiderivative_of_zeros, feasibility_general_with, CriterionReport};
use crate::error::Error;
use crate::polynomial::{float_roots_from_critical, root_multiplicity, Poly, RootCounter, Zeros};
use crate::scalar::{max_of, Scalar};

/// A real-rooted antiderivative `q = P − c` of `∏(x − wₖ)`.
#[derive(Clone, Debug, PartialEq)]
pub struct Witness<T> {
    /// The zeros `w` of `q′`.
    pub zeros: Zeros<T>,
    pub c: T,
    pub q: Poly<T>,
    /// The `n + 1` real roots of `q`, with multiplicity.
    pub roots: Zeros<T>,
}

/// Successive lifts: the roots of level `i` are the zeros of level `i + 1`.
///
/// In exact mode an irrational root is carried to the next level as its
/// rational approximation, so deeper levels certify lifts of that
/// approximation.
#[derive(Clone, Debug, PartialEq)]
pub struct WitnessChain<T> {
    pub levels: Vec<Witness<T>>,
}

impl<T: Scalar> WitnessChain<T> {
    /// The chain as true iterated antiderivatives `Q₀ = q₀`, `Q′ᵢ₊₁ = Qᵢ`.
    ///
    /// Each level's `q` is the antiderivative of the *monic* polynomial on
    /// the previous roots; rescaling by the previous leading coefficient
    /// turns it into an antiderivative of the previous `Q` itself.
    pub fn antiderivatives(&self) -> Vec<Poly<T>> {
        let mut out: Vec<Poly<T>> = Vec::with_capacity(self.levels.len());
        for level in &self.levels {
            let factor = out
                .last()
                .and_then(|prev| prev.leading().cloned())
                .unwrap_or_else(T::one);
            out.push(level.q.scale(&factor));
        }
        out
    }
}

/// A lift together with the criterion on its roots (skipped at the last level).
type Attempt<T> = (Witness<T>, Option<CriterionReport<T>>);

/// Result of the bounded multi-level search.
#[derive(Clone, Debug, PartialEq)]
pub enum LiftOutcome<T> {
    /// A chain of the requested depth.
    Complete(WitnessChain<T>),
    /// The search stalled; holds the deepest chain found. Says nothing about
    /// whether a longer chain exists.
    Indeterminate(WitnessChain<T>),
}

impl<T> LiftOutcome<T> {
    pub fn chain(&self) -> &WitnessChain<T> {
        match self {
            Self::Complete(chain) | Self::Indeterminate(chain) => chain,
        }
    }

    pub fn is_complete(&self) -> bool {
        matches!(self, Self::Complete(_))
    }
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum WitnessError<T: Scalar> {
    #[error("no hyperbolic antiderivative exists (violated pairs {:?})", .0.violated_pairs)]
    Infeasible(Box<CriterionReport<T>>),
    #[error("c = {c} is outside the valid interval {}", IntervalDisplay(.lo, .hi.as_ref()))]
    OutOfRange { c: T, lo: T, hi: Option<T> },
    #[error("witness verification failed: {0}")]
    Verification(String),
    #[error(transparent)]
    Core(#[from] Error),
}

/// Renders `[lo, hi]`, or `[lo, +inf)` when unbounded above.
pub struct IntervalDisplay<'a, T>(pub &'a T, pub Option<&'a T>);

impl<T: fmt::Display> fmt::Display for IntervalDisplay<'_, T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.1 {
            Some(hi) => write!(f, "[{}, {}]", self.0, hi),
            None => write!(f, "[{}, +inf)", self.0),
        }
    }
}

pub fn lift<T: Scalar>(zeros: &Zeros<T>, c: &T) -> Result<Witness<T>, WitnessError<T>> {
    lift_with(zeros, c, &T::default_tolerance())
}

/// Builds `q = P − c` and its roots, then checks every witness invariant.
pub fn lift_with<T: Scalar>(
    zeros: &Zeros<T>,
    c: &T,
    tol: &T,
) -> Result<Witness<T>, WitnessError<T>> {
    let report = feasibility_general_with(zeros, tol)?;
    lift_checked(zeros, c, tol, &report, false)
}

fn lift_checked<T: Scalar>(
    zeros: &Zeros<T>,
    c: &T,
    tol: &T,
    report: &CriterionReport<T>,
    canonical: bool,
) -> Result<Witness<T>, WitnessError<T>> {
    if !report.feasible {
        return Err(WitnessError::Infeasible(Box::new(report.clone())));
    }
    let slack = constant_slack(report, tol);
    if !report.admits(c, &slack) {
        return Err(WitnessError::OutOfRange {
            c: c.clone(),
            lo: report.c_lo.clone(),
            hi: report.c_hi.clone(),
        });
    }
    let p = antiderivative_of_zeros(zeros);
    let q = p.shifted_down(c);
    let roots = if T::EXACT {
        q.real_roots(&T::root_tolerance())
    } else {
        centered_roots(zeros, &p, c, tol, canonical)
    };
    let roots = roots.map_err(|e| match e {
        Error::NotHyperbolic => WitnessError::Verification(format!("P - ({c}) is not real-rooted")),
        other => WitnessError::Core(other),
    })?;
    let witness = Witness {
        zeros: zeros.clone(),
        c: c.clone(),
        q,
        roots,
    };
    verify_witness(&witness, tol).map_err(WitnessError::Verification)?;
    Ok(witness)
}

/// Roots of `P − c` computed in coordinates fitted to the zeros.
///
/// A tight cluster far from the origin makes `P` nearly constant there, and
/// the floating evaluation of `P − c` loses most of its digits to
/// cancellation. With `x = m + h·u` mapping the zeros onto `[−1, 1]`,
/// `P(x) = P(m) + h^(n+1)·R(u)` where `R` is built from the mapped zeros, so
/// the roots are those of `R − (c − P(m))/h^(n+1)`. The canonical constant
/// is recomputed from the mapped critical values, so a collapsed interval
/// still lands exactly on a multiple root.
fn centered_roots<T: Scalar>(
    zeros: &Zeros<T>,
    p: &Poly<T>,
    c: &T,
    tol: &T,
    canonical: bool,
) -> Result<Zeros<T>, Error> {
    let (first, last) = (&zeros[0], &zeros[zeros.len() - 1]);
    let two = T::from_int(2);
    let m = (first.clone() + last.clone()) / two.clone();
    let mut h = (first.clone() - last.clone()) / two;
    if h.is_zero() {
        h = T::one();
    }
    let shifted = zeros.affine(&(T::one() / h.clone()), &(-m.clone() / h.clone()));
    let shifted_c = if canonical {
        canonical_constant(&feasibility_general_with(&shifted, tol)?)
    } else {
        let power = (0..=zeros.len()).fold(T::one(), |acc, _| acc * h.clone());
        (c.clone() - p.eval(&m)) / power
    };
    let q = antiderivative_of_zeros(&shifted).shifted_down(&shifted_c);
    // the critical points of q are the shifted zeros themselves
    let mut critical: Vec<(T, usize)> = Vec::new();
    for w in shifted.iter() {
        match critical.last_mut() {
            Some((v, m)) if v == w => *m += 1,
            _ => critical.push((w.clone(), 1)),
        }
    }
    let roots = float_roots_from_critical(&q, &critical, tol)?;
    Ok(roots.affine(&h, &m))
}

/// Tolerance on `c` in critical-value units (zero in exact mode).
fn constant_slack<T: Scalar>(report: &CriterionReport<T>, tol: &T) -> T {
    if T::EXACT {
        return T::zero();
    }
    let magnitude = report
        .critical_values
        .iter()
        .fold(T::one(), |acc, v| max_of(acc, v.abs()));
    tol.clone() * magnitude
}

/// The canonical admissible constant: the midpoint of `[c_lo, c_hi]`, or
/// `c_lo + 1` when the interval is unbounded above.
pub fn canonical_constant<T: Scalar>(report: &CriterionReport<T>) -> T {
    match &report.c_hi {
        Some(hi) => (report.c_lo.clone() + hi.clone()) / T::from_int(2),
        None => report.c_lo.clone() + T::one(),
    }
}

pub fn lift_any<T: Scalar>(zeros: &Zeros<T>) -> Result<Witness<T>, WitnessError<T>> {
    lift_any_with(zeros, &T::default_tolerance())
}

pub fn lift_any_with<T: Scalar>(zeros: &Zeros<T>, tol: &T) -> Result<Witness<T>, WitnessError<T>> {
    let report = feasibility_general_with(zeros, tol)?;
    if !report.feasible {
        return Err(WitnessError::Infeasible(Box::new(report)));
    }
    lift_checked(zeros, &canonical_constant(&report), tol, &report, true)
}

/// Checks the witness invariants: `q′ = ∏(x − wₖ)`, `n + 1` roots,
/// interlacing `z_{j+1} ≤ w_j ≤ z_j` and the sign pattern `q(w_j) ≤ 0` for
/// odd `j`, `q(w_j) ≥ 0` for even `j`.
///
/// Exact mode certifies interlacing by exact root counts on either side of
/// each `w_j` instead of relying on the (possibly approximate) roots.
/// Floating mode allows the sign pattern a slack of
/// `tol · max(1, Σ|aᵢ||w_j|ⁱ)`, the rounding scale of evaluating `q(w_j)`.
pub fn verify_witness<T: Scalar>(witness: &Witness<T>, tol: &T) -> Result<(), String> {
    let w = witness.zeros.as_slice();
    let n = w.len();
    let q = &witness.q;

    let p = Poly::from_zeros(&witness.zeros);
    let dq = q.derivative();
    if T::EXACT {
        if dq != p {
            return Err(format!("q' = {dq} differs from {p}"));
        }
    } else {
        let len = dq.coeffs().len().max(p.coeffs().len());
        for i in 0..len {
            let a = dq.coeffs().get(i).cloned().unwrap_or_else(T::zero);
            let b = p.coeffs().get(i).cloned().unwrap_or_else(T::zero);
            let allowed = tol.clone() * (T::one() + b.abs());
            if !(a.clone() - b.clone()).is_negligible(&allowed) {
                return Err(format!("coefficient {i} of q' is {a}, expected {b}"));
            }
        }
    }

    if q.degree() != Some(n + 1) || witness.roots.len() != n + 1 {
        return Err(format!(
            "expected {} roots of a degree-{} polynomial, found {}",
            n + 1,
            n + 1,
            witness.roots.len()
        ));
    }

    let z = witness.roots.as_slice();
    let spread = if T::EXACT {
        T::root_tolerance()
    } else {
        tol.clone()
            * max_of(
                T::one(),
                max_of(witness.zeros.max_abs(), witness.roots.max_abs()),
            )
    };
    for j in 0..n {
        if z[j + 1] > w[j].clone() + spread.clone() || w[j] > z[j].clone() + spread.clone() {
            return Err(format!(
                "interlacing fails at w_{}: z_{} = {}, w = {}, z_{} = {}",
                j + 1,
                j + 2,
                z[j + 1],
                w[j],
                j + 1,
                z[j]
            ));
        }
    }
    if T::EXACT {
        let counter = RootCounter::new(q).map_err(|e| e.to_string())?;
        for (j, wj) in w.iter().enumerate() {
            let index = j + 1;
            let above = counter.above(wj);
            let at = root_multiplicity(q, wj);
            // z_j >= w_j  <=>  #{roots >= w_j} >= j;  z_{j+1} <= w_j  <=>  #{roots > w_j} <= j
            if above + at < index || above > index {
                return Err(format!(
                    "certified interlacing fails at w_{index}: {above} roots above, multiplicity {at}"
                ));
            }
        }
    }

    for (j, wj) in w.iter().enumerate() {
        let value = q.eval(wj);
        let allowed = if T::EXACT {
            T::zero()
        } else {
            tol.clone() * max_of(T::one(), q.abs_eval(wj))
        };
        let odd = j % 2 == 0;
        let wrong = if odd {
            value > allowed
        } else {
            value < -allowed
        };
        if wrong {
            return Err(format!(
                "sign pattern fails at w_{}: q = {value} should be {}",
                j + 1,
                if odd { "<= 0" } else { ">= 0" }
            ));
        }
    }
    Ok(())
}

/// Midpoint first, then `samples` evenly spaced points from `c_lo` to
/// `c_hi` inclusive. An unbounded interval is sampled over `[c_lo, c_lo + 1]`.
pub fn candidate_constants<T: Scalar>(report: &CriterionReport<T>, samples: usize) -> Vec<T> {
    let lo = report.c_lo.clone();
    let hi = report.c_hi.clone().unwrap_or_else(|| lo.clone() + T::one());
    let mut out = vec![canonical_constant(report)];
    match samples {
        0 => {}
        1 => out.push(lo),
        _ => {
            let step = (hi - lo.clone()) / T::from_int(samples as i64 - 1);
            out.extend((0..samples).map(|i| lo.clone() + step.clone() * T::from_int(i as i64)));
        }
    }
    out
}

pub fn iterated_lift<T: Scalar>(
    zeros: &Zeros<T>,
    depth: usize,
    samples_per_level: usize,
) -> Result<LiftOutcome<T>, WitnessError<T>> {
    iterated_lift_with(zeros, depth, samples_per_level, &T::default_tolerance())
}

/// Greedy search for a chain of `depth` successive hyperbolic lifts.
///
/// At each level the candidate constants are tried in order and the first
/// one whose lifted roots are themselves liftable is kept (any valid lift is
/// accepted at the last level). Candidates are evaluated in parallel; the
/// choice depends only on candidate order.
pub fn iterated_lift_with<T: Scalar>(
    zeros: &Zeros<T>,
    depth: usize,
    samples_per_level: usize,
    tol: &T,
) -> Result<LiftOutcome<T>, WitnessError<T>> {
    if depth == 0 {
        return Err(Error::InvalidArgument("depth must be at least 1".into()).into());
    }
    let root_report = feasibility_general_with(zeros, tol)?;
    if !root_report.feasible {
        return Err(WitnessError::Infeasible(Box::new(root_report)));
    }

    let mut levels: Vec<Witness<T>> = Vec::with_capacity(depth);
    let mut current = zeros.clone();
    let mut report = root_report;
    for level in 0..depth {
        let last = level + 1 == depth;
        let attempts: Vec<Option<Attempt<T>>> = candidate_constants(&report, samples_per_level)
            .par_iter()
            .map(|c| {
                let witness = lift_checked(&current, c, tol, &report, false).ok()?;
                if last {
                    return Some((witness, None));
                }
                let next = feasibility_general_with(&witness.roots, tol).ok()?;
                Some((witness, Some(next)))
            })
            .collect();

        let chosen = attempts
            .iter()
            .flatten()
            .find(|(_, next)| next.as_ref().is_none_or(|r| r.feasible));
        match chosen {
            Some((witness, next)) => {
                levels.push(witness.clone());
                if let Some(next) = next {
                    current = witness.roots.clone();
                    report = next.clone();
                }
            }
            None => {
                if let Some((witness, _)) = attempts.into_iter().flatten().next() {
                    levels.push(witness);
                }
                return Ok(LiftOutcome::Indeterminate(WitnessChain { levels }));
            }
        }
    }
    Ok(LiftOutcome::Complete(WitnessChain { levels }))
}
