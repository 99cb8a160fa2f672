//! Closed-form tests for four zeros.
//!
//! For `w₁ ≥ w₂ ≥ w₃ ≥ w₄` the general criterion reduces to the single
//! inequality `P(w₄) ≥ P(w₁)`, which after mapping `w₁ ↦ 1`, `w₄ ↦ −1`
//! becomes `1 + 5st ≥ 0`. Two homogeneous quadratic forms express the same
//! condition, one in the zeros and one in the gaps between them.

use super::feasibility_general_with;
use crate::error::{Error, Result};
use crate::polynomial::Zeros;
use crate::scalar::{max_of, Scalar};

/// Quadratic form in `(w₁, w₂, w₃, w₄)`; every row sums to zero.
pub const A_MATRIX: [[i64; 4]; 4] = [
    [6, -5, -5, 4],
    [-5, 0, 10, -5],
    [-5, 10, 0, -5],
    [4, -5, -5, 6],
];

/// Quadratic form in the gaps `(w₁ − w₂, w₂ − w₃, w₃ − w₄)`.
pub const B_MATRIX: [[i64; 3]; 3] = [[6, 1, -4], [1, -4, 1], [-4, 1, 6]];

/// Interior zeros `s ≥ t` of the quartic rescaled onto `[−1, 1]`, together
/// with the map `x ↦ scale·x + shift` that takes them back.
#[derive(Clone, Debug, PartialEq)]
pub struct QuarticNormalization<T> {
    pub s: T,
    pub t: T,
    pub scale: T,
    pub shift: T,
}

impl<T: Scalar> QuarticNormalization<T> {
    /// `(1, s, t, −1)` mapped back to the original zeros.
    pub fn denormalize(&self) -> [T; 4] {
        [T::one(), self.s.clone(), self.t.clone(), -T::one()]
            .map(|x| self.scale.clone() * x + self.shift.clone())
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct QuarticReport<T> {
    /// `None` when all four zeros coincide.
    pub s: Option<T>,
    pub t: Option<T>,
    /// `1 + 5st` (zero in the degenerate case).
    pub st_statistic: T,
    pub a_form: T,
    pub b_form: T,
    pub feasible: bool,
    pub boundary: bool,
}

fn expect_arity<T>(values: &[T], expected: usize) -> Result<()> {
    if values.len() != expected {
        return Err(Error::Arity {
            expected,
            found: values.len(),
        });
    }
    Ok(())
}

fn quadratic_form<T: Scalar, const N: usize>(m: &[[i64; N]; N], v: &[T]) -> T {
    let mut acc = T::zero();
    for (i, row) in m.iter().enumerate() {
        for (j, &entry) in row.iter().enumerate() {
            if entry != 0 {
                acc = acc + T::from_int(entry) * v[i].clone() * v[j].clone();
            }
        }
    }
    acc
}

pub fn normalize_quartic<T: Scalar>(zeros: &Zeros<T>) -> Result<QuarticNormalization<T>> {
    let w = zeros.as_slice();
    expect_arity(w, 4)?;
    let width = w[0].clone() - w[3].clone();
    if width.is_zero() {
        return Err(Error::DegenerateQuartic);
    }
    let outer = w[0].clone() + w[3].clone();
    let two = T::from_int(2);
    Ok(QuarticNormalization {
        s: (two.clone() * w[1].clone() - outer.clone()) / width.clone(),
        t: (two.clone() * w[2].clone() - outer.clone()) / width.clone(),
        scale: width / two.clone(),
        shift: outer / two,
    })
}

/// `1 + 5st`.
pub fn st_statistic<T: Scalar>(s: &T, t: &T) -> T {
    T::one() + T::from_int(5) * s.clone() * t.clone()
}

/// `st ≥ −1/5`.
pub fn quartic_st_test<T: Scalar>(s: &T, t: &T) -> bool {
    quartic_st_test_with(s, t, &T::default_tolerance())
}

pub fn quartic_st_test_with<T: Scalar>(s: &T, t: &T, tol: &T) -> bool {
    let stat = st_statistic(s, t);
    !stat.is_negative() || stat.is_negligible(tol)
}

/// `wᵀAw`.
pub fn quartic_a_form<T: Scalar>(w: &[T]) -> Result<T> {
    expect_arity(w, 4)?;
    Ok(quadratic_form(&A_MATRIX, w))
}

/// `vᵀBv` on the gap vector.
pub fn quartic_b_form<T: Scalar>(gaps: &[T]) -> Result<T> {
    expect_arity(gaps, 3)?;
    if let Some(index) = gaps.iter().position(|g| g.is_negative()) {
        return Err(Error::NegativeGap { index });
    }
    Ok(quadratic_form(&B_MATRIX, gaps))
}

/// `5(2w₂ − w₁ − w₄)(2w₃ − w₁ − w₄) + (w₁ − w₄)²`.
pub fn quartic_closed_form<T: Scalar>(w: &[T]) -> Result<T> {
    expect_arity(w, 4)?;
    let two = T::from_int(2);
    let outer = w[0].clone() + w[3].clone();
    let width = w[0].clone() - w[3].clone();
    Ok(
        T::from_int(5)
            * (two.clone() * w[1].clone() - outer.clone())
            * (two * w[2].clone() - outer)
            + width.clone() * width,
    )
}

/// `5(g₃ − g₁)² − 5g₂² + (g₁ + g₂ + g₃)²`.
pub fn gap_closed_form<T: Scalar>(g: &[T]) -> Result<T> {
    expect_arity(g, 3)?;
    let five = T::from_int(5);
    let outer = g[2].clone() - g[0].clone();
    let total = g[0].clone() + g[1].clone() + g[2].clone();
    Ok(
        five.clone() * outer.clone() * outer - five * g[1].clone() * g[1].clone()
            + total.clone() * total,
    )
}

pub fn quartic_feasible<T: Scalar>(zeros: &Zeros<T>) -> Result<QuarticReport<T>> {
    quartic_feasible_with(zeros, &T::default_tolerance())
}

/// Evaluates all three quartic statistics, checks that they agree with each
/// other and with the general criterion, and reports the common verdict.
///
/// Disagreement is reported as [`Error::InternalDisagreement`]; it can only
/// arise from a defect, never from valid input.
pub fn quartic_feasible_with<T: Scalar>(zeros: &Zeros<T>, tol: &T) -> Result<QuarticReport<T>> {
    let w = zeros.as_slice();
    expect_arity(w, 4)?;
    let width = w[0].clone() - w[3].clone();
    let degenerate = if T::EXACT {
        width.is_zero()
    } else {
        width <= tol.clone() * max_of(T::one(), zeros.max_abs())
    };

    let report = if degenerate {
        QuarticReport {
            s: None,
            t: None,
            st_statistic: T::zero(),
            a_form: quartic_a_form(w)?,
            b_form: quartic_b_form(&zeros.gaps())?,
            feasible: true,
            boundary: true,
        }
    } else {
        let norm = normalize_quartic(zeros)?;
        let stat = st_statistic(&norm.s, &norm.t);
        let (a_form, b_form) = if T::EXACT {
            let a = quartic_a_form(w)?;
            let b = quartic_b_form(&zeros.gaps())?;
            let closed = quartic_closed_form(w)?;
            let scaled = width.clone() * width.clone() * stat.clone();
            if a != b || a != closed || a != scaled {
                return Err(Error::InternalDisagreement(format!(
                    "wᵀAw = {a}, vᵀBv = {b}, closed form = {closed}, (w₁−w₄)²(1+5st) = {scaled}"
                )));
            }
            (a, b)
        } else {
            // evaluate on the normalized zeros (1, s, t, -1), where wᵀAw = 4(1 + 5st)
            let u = [T::one(), norm.s.clone(), norm.t.clone(), -T::one()];
            let gaps: Vec<T> = u
                .windows(2)
                .map(|p| max_of(p[0].clone() - p[1].clone(), T::zero()))
                .collect();
            let a = quartic_a_form(&u)?;
            let b = quartic_b_form(&gaps)?;
            let four_stat = T::from_int(4) * stat.clone();
            let slack = T::from_int(64) * max_of(tol.clone(), T::default_tolerance());
            if !(a.clone() - b.clone()).is_negligible(&slack)
                || !(a.clone() - four_stat.clone()).is_negligible(&slack)
            {
                return Err(Error::InternalDisagreement(format!(
                    "normalized wᵀAw = {a}, vᵀBv = {b}, 4(1+5st) = {four_stat}"
                )));
            }
            let sq = norm.scale.clone() * norm.scale.clone();
            (sq.clone() * a, sq * b)
        };
        QuarticReport {
            feasible: quartic_st_test_with(&norm.s, &norm.t, tol),
            boundary: stat.is_negligible(tol),
            s: Some(norm.s),
            t: Some(norm.t),
            st_statistic: stat,
            a_form,
            b_form,
        }
    };

    let general = feasibility_general_with(zeros, tol)?;
    if general.feasible != report.feasible && !(report.boundary || general.boundary) {
        return Err(Error::InternalDisagreement(format!(
            "quartic verdict {} but pair criterion verdict {}",
            report.feasible, general.feasible
        )));
    }
    Ok(report)
}
