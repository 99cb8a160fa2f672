//! Dense univariate polynomials over a [`Scalar`] field.
//!
//! Coefficients are stored lowest degree first and trailing zeros are always
//! trimmed, so the last stored coefficient is the (nonzero) leading one and
//! the zero polynomial is the empty vector.

mod integer;
mod roots;
mod sturm;
mod zeros;

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

pub(crate) use roots::float_roots_from_critical;
pub use roots::{root_multiplicity, roots_above, RootCounter};
pub use sturm::SturmSequence;
pub use zeros::Zeros;

use crate::error::{Error, Result};
use crate::scalar::{max_of, Scalar};

#[derive(Clone, Debug, PartialEq)]
pub struct Poly<T> {
    coeffs: Vec<T>,
}

impl<T: Scalar> Poly<T> {
    /// Builds a polynomial from coefficients, lowest degree first.
    pub fn new(mut coeffs: Vec<T>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn zero() -> Self {
        Self { coeffs: Vec::new() }
    }

    pub fn constant(c: T) -> Self {
        Self::new(vec![c])
    }

    /// The monic polynomial `∏ (x − wₖ)`; the constant 1 for no zeros.
    pub fn from_zeros(zeros: &Zeros<T>) -> Self {
        let mut coeffs = vec![T::one()];
        for w in zeros {
            // multiply by (x - w)
            coeffs.push(T::zero());
            for i in (0..coeffs.len()).rev() {
                let lower = if i > 0 {
                    coeffs[i - 1].clone()
                } else {
                    T::zero()
                };
                coeffs[i] = lower - w.clone() * coeffs[i].clone();
            }
        }
        Self::new(coeffs)
    }

    pub fn coeffs(&self) -> &[T] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<T> {
        self.coeffs
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&T> {
        self.coeffs.last()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    /// Horner evaluation.
    pub fn eval(&self, x: &T) -> T {
        self.coeffs
            .iter()
            .rev()
            .fold(T::zero(), |acc, c| acc * x.clone() + c.clone())
    }

    /// `Σ |aᵢ|·|x|ⁱ`, the natural magnitude against which `|p(x)|` is judged
    /// in floating point.
    pub fn abs_eval(&self, x: &T) -> T {
        let ax = x.abs();
        self.coeffs
            .iter()
            .rev()
            .fold(T::zero(), |acc, c| acc * ax.clone() + c.abs())
    }

    pub fn derivative(&self) -> Self {
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| c.clone() * T::from_int(i as i64))
            .collect();
        Self::new(coeffs)
    }

    /// The antiderivative taking the value `value_at_zero` at the origin.
    pub fn antiderivative(&self, value_at_zero: T) -> Self {
        let mut coeffs = Vec::with_capacity(self.coeffs.len() + 1);
        coeffs.push(value_at_zero);
        coeffs.extend(
            self.coeffs
                .iter()
                .enumerate()
                .map(|(i, c)| c.clone() / T::from_int(i as i64 + 1)),
        );
        Self::new(coeffs)
    }

    /// `self − c`.
    pub fn shifted_down(&self, c: &T) -> Self {
        let mut coeffs = self.coeffs.clone();
        if coeffs.is_empty() {
            coeffs.push(T::zero());
        }
        coeffs[0] = coeffs[0].clone() - c.clone();
        Self::new(coeffs)
    }

    pub fn scale(&self, k: &T) -> Self {
        Self::new(self.coeffs.iter().map(|c| c.clone() * k.clone()).collect())
    }

    /// Divides through by the leading coefficient.
    pub fn monic(&self) -> Self {
        match self.leading() {
            Some(lead) => {
                let inv = T::one() / lead.clone();
                let mut out = self.scale(&inv);
                if T::EXACT {
                    *out.coeffs.last_mut().expect("nonzero") = T::one();
                }
                out
            }
            None => Self::zero(),
        }
    }

    pub fn max_abs_coeff(&self) -> T {
        self.coeffs
            .iter()
            .fold(T::zero(), |acc, c| max_of(acc, c.abs()))
    }

    /// Rescales by a positive factor: by `|lead|` in exact mode (keeps
    /// coefficients small), by the largest coefficient magnitude in floating
    /// mode (keeps them near unit size). Signs are preserved.
    pub(crate) fn normalize_positive(&self) -> Self {
        let factor = if T::EXACT {
            match self.leading() {
                Some(lead) => lead.abs(),
                None => return Self::zero(),
            }
        } else {
            let m = self.max_abs_coeff();
            if m.is_zero() {
                return Self::zero();
            }
            m
        };
        self.scale(&(T::one() / factor))
    }

    /// Zeroes coefficients with `|c| ≤ tol·reference` and re-trims.
    pub(crate) fn drop_negligible(self, tol: &T, reference: &T) -> Self {
        if tol.is_zero() {
            return self;
        }
        let cutoff = tol.clone() * reference.clone();
        Self::new(
            self.coeffs
                .into_iter()
                .map(|c| if c.abs() <= cutoff { T::zero() } else { c })
                .collect(),
        )
    }

    /// Euclidean division; panics on a zero divisor.
    pub fn div_rem(&self, divisor: &Self) -> (Self, Self) {
        let dlead = divisor
            .leading()
            .expect("division by the zero polynomial")
            .clone();
        let ddeg = divisor.coeffs.len() - 1;
        if self.coeffs.len() <= ddeg {
            return (Self::zero(), self.clone());
        }
        let mut rem = self.coeffs.clone();
        let mut quot = vec![T::zero(); rem.len() - ddeg];
        for top in (ddeg..rem.len()).rev() {
            let factor = rem[top].clone() / dlead.clone();
            if !factor.is_zero() {
                for (j, d) in divisor.coeffs.iter().enumerate() {
                    let k = top - ddeg + j;
                    rem[k] = rem[k].clone() - factor.clone() * d.clone();
                }
            }
            rem[top] = T::zero();
            quot[top - ddeg] = factor;
        }
        rem.truncate(ddeg);
        (Self::new(quot), Self::new(rem))
    }

    /// Monic greatest common divisor, remainders judged negligible against
    /// `tol` relative to the dividend (exact Euclid when `tol` is zero).
    pub fn gcd_with(&self, other: &Self, tol: &T) -> Self {
        let mut a = self.normalize_positive();
        let mut b = other.normalize_positive();
        if a.coeffs.len() < b.coeffs.len() {
            std::mem::swap(&mut a, &mut b);
        }
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b);
            let reference = a.max_abs_coeff();
            let r = r.drop_negligible(tol, &reference).normalize_positive();
            a = b;
            b = r;
        }
        a.monic()
    }

    pub fn gcd(&self, other: &Self) -> Self {
        self.gcd_with(other, &T::default_tolerance())
    }

    /// `p / gcd(p, p′)`: same roots, each simple.
    pub fn square_free_part_with(&self, tol: &T) -> Self {
        if self.is_constant() {
            return self.clone();
        }
        let g = self.gcd_with(&self.derivative(), tol);
        self.div_rem(&g).0
    }

    pub fn square_free_part(&self) -> Self {
        self.square_free_part_with(&T::default_tolerance())
    }

    /// Yun's square-free decomposition: pairs `(fᵢ, i)` with every `fᵢ`
    /// square-free, pairwise coprime and nonconstant, and
    /// `p = lead · ∏ fᵢⁱ`.
    pub fn square_free_decomposition_with(&self, tol: &T) -> Vec<(Self, usize)> {
        let mut out = Vec::new();
        if self.is_constant() {
            return out;
        }
        let f = self.monic();
        let df = f.derivative();
        let a0 = f.gcd_with(&df, tol);
        let mut b = f.div_rem(&a0).0;
        let c = df.div_rem(&a0).0;
        let mut d = &c - &b.derivative();
        let mut multiplicity = 1;
        while !b.is_constant() {
            let a = b.gcd_with(&d, tol);
            if !a.is_constant() {
                out.push((a.clone(), multiplicity));
            }
            let next_b = b.div_rem(&a).0;
            let c = d.div_rem(&a).0;
            d = &c - &next_b.derivative();
            b = next_b;
            multiplicity += 1;
        }
        out
    }

    pub fn square_free_decomposition(&self) -> Vec<(Self, usize)> {
        self.square_free_decomposition_with(&T::default_tolerance())
    }

    /// Cauchy bound `1 + max |aᵢ / a_lead|`: every complex root lies strictly
    /// inside it in absolute value.
    pub fn cauchy_bound(&self) -> Result<T> {
        let lead = self.leading().ok_or(Error::ZeroPolynomial)?.abs();
        let m = self.coeffs[..self.coeffs.len() - 1]
            .iter()
            .fold(T::zero(), |acc, c| max_of(acc, c.abs() / lead.clone()));
        Ok(T::one() + m)
    }

    /// Number of distinct real roots in the half-open interval `(lo, hi]`.
    pub fn sturm_distinct_root_count(&self, lo: &T, hi: &T) -> Result<usize> {
        self.sturm_distinct_root_count_with(lo, hi, &T::default_tolerance())
    }

    pub fn sturm_distinct_root_count_with(&self, lo: &T, hi: &T, tol: &T) -> Result<usize> {
        if lo >= hi {
            return Err(Error::DegenerateInterval);
        }
        if self.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        let sq = self.square_free_part_with(tol);
        Ok(SturmSequence::with_tolerance(&sq, tol).count(lo, hi))
    }

    /// Whether every complex root is real.
    pub fn is_hyperbolic(&self) -> Result<bool> {
        self.is_hyperbolic_with(&T::default_tolerance())
    }

    pub fn is_hyperbolic_with(&self, tol: &T) -> Result<bool> {
        if self.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        if let Some(ints) = T::integer_form(&self.coeffs) {
            let (real, total) = integer::root_census(&ints);
            return Ok(real == total);
        }
        let sq = self.square_free_part_with(tol);
        let degree = sq.degree().expect("nonzero");
        if degree == 0 {
            return Ok(true);
        }
        let m = sq.cauchy_bound()?;
        let count = SturmSequence::with_tolerance(&sq, tol).count(&-m.clone(), &m);
        Ok(count == degree)
    }

    /// All real roots with multiplicity, in descending order.
    ///
    /// Exact types recover rational roots exactly and approximate irrational
    /// ones to within `tolerance`; floating types return roots `r` with
    /// `|p(r)| ≤ tolerance · Σ|aᵢ|·max(1, |r|)ⁱ`. Fails with [`Error::NotHyperbolic`]
    /// if not every root is real.
    pub fn real_roots(&self, tolerance: &T) -> Result<Zeros<T>> {
        roots::real_roots(self, tolerance)
    }

    /// Converts every coefficient to another scalar type.
    pub fn convert<U: Scalar>(&self, f: impl Fn(&T) -> U) -> Poly<U> {
        Poly::new(self.coeffs.iter().map(f).collect())
    }
}

impl<T: Scalar> Add for &Poly<T> {
    type Output = Poly<T>;

    fn add(self, rhs: &Poly<T>) -> Poly<T> {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let coeffs = (0..n)
            .map(|i| {
                let a = self.coeffs.get(i).cloned().unwrap_or_else(T::zero);
                let b = rhs.coeffs.get(i).cloned().unwrap_or_else(T::zero);
                a + b
            })
            .collect();
        Poly::new(coeffs)
    }
}

impl<T: Scalar> Neg for &Poly<T> {
    type Output = Poly<T>;

    fn neg(self) -> Poly<T> {
        Poly::new(self.coeffs.iter().map(|c| -c.clone()).collect())
    }
}

impl<T: Scalar> Sub for &Poly<T> {
    type Output = Poly<T>;

    fn sub(self, rhs: &Poly<T>) -> Poly<T> {
        self + &(-rhs)
    }
}

impl<T: Scalar> Mul for &Poly<T> {
    type Output = Poly<T>;

    fn mul(self, rhs: &Poly<T>) -> Poly<T> {
        if self.is_zero() || rhs.is_zero() {
            return Poly::zero();
        }
        let mut coeffs = vec![T::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in rhs.coeffs.iter().enumerate() {
                coeffs[i + j] = coeffs[i + j].clone() + a.clone() * b.clone();
            }
        }
        Poly::new(coeffs)
    }
}

impl<T: Scalar> fmt::Display for Poly<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let negative = c.is_negative();
            let magnitude = c.abs();
            match (first, negative) {
                (true, true) => f.write_str("-")?,
                (false, true) => f.write_str(" - ")?,
                (false, false) => f.write_str(" + ")?,
                (true, false) => {}
            }
            first = false;
            let unit = magnitude.is_one();
            match i {
                0 => write!(f, "{magnitude}")?,
                1 if unit => f.write_str("x")?,
                1 => write!(f, "({magnitude})x")?,
                _ if unit => write!(f, "x^{i}")?,
                _ => write!(f, "({magnitude})x^{i}")?,
            }
        }
        Ok(())
    }
}
