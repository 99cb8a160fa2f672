//! Real-root isolation for hyperbolic polynomials.
//!
//! Exact mode: square-free decomposition, Sturm bisection of each factor,
//! then either exact rational recovery or refinement to the requested width.
//! Floating mode: roots of `p′` (found recursively) split the line into
//! monotone brackets, each holding at most one simple root; a critical point
//! where `p` vanishes within tolerance is a multiple root.

use super::{integer, Poly, SturmSequence, Zeros};
use crate::error::{Error, Result};
use crate::scalar::{max_of, Scalar};

const MAX_BISECTIONS: usize = 4096;

pub(super) fn real_roots<T: Scalar>(p: &Poly<T>, tol: &T) -> Result<Zeros<T>> {
    if p.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    if !tol.is_positive() {
        return Err(Error::InvalidArgument(
            "root tolerance must be positive".into(),
        ));
    }
    let roots = if T::EXACT {
        exact_roots(p, tol)?
    } else {
        float_roots_refining(p, tol)?
    };
    let mut expanded = Vec::with_capacity(p.degree().unwrap_or(0));
    for (r, m) in roots {
        expanded.extend(std::iter::repeat_n(r, m));
    }
    Zeros::from_unsorted(expanded)
}

fn exact_roots<T: Scalar>(p: &Poly<T>, tol: &T) -> Result<Vec<(T, usize)>> {
    let degree = p.degree().expect("nonzero");
    let tol = tol.to_rational().expect("exact scalars are rational");
    let mut out = Vec::new();
    for (factor, multiplicity) in p.square_free_decomposition() {
        let ints = T::integer_form(factor.coeffs()).expect("exact scalars have an integer form");
        for r in integer::square_free_roots(&ints, &tol) {
            out.push((T::from_rational(&r), multiplicity));
        }
    }
    let found: usize = out.iter().map(|(_, m)| m).sum();
    if found != degree {
        return Err(Error::NotHyperbolic);
    }
    Ok(out)
}

/// Critical values within `tol` of zero count as multiple roots. When two
/// genuinely distinct roots sit closer than that, the count overshoots the
/// degree; the search is then repeated with a tighter cutoff.
fn float_roots_refining<T: Scalar>(p: &Poly<T>, tol: &T) -> Result<Vec<(T, usize)>> {
    with_tightening(tol, |cutoff| float_roots(p, cutoff))
}

fn with_tightening<T: Scalar, R>(tol: &T, attempt: impl Fn(&T) -> Result<R>) -> Result<R> {
    let step = T::from_int(1000);
    let mut cutoff = tol.clone();
    let mut result = attempt(&cutoff);
    for _ in 0..2 {
        if result.is_ok() {
            break;
        }
        cutoff = cutoff / step.clone();
        result = attempt(&cutoff);
    }
    result
}

/// Floating-point roots of `p` when the roots of `p′` are already known,
/// given in descending order with multiplicities. Avoids recomputing
/// critical points that the caller has exactly.
pub(crate) fn float_roots_from_critical<T: Scalar>(
    p: &Poly<T>,
    critical: &[(T, usize)],
    tol: &T,
) -> Result<Zeros<T>> {
    if p.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let p = p.monic();
    let roots = with_tightening(tol, |cutoff| {
        roots_between_critical(&p, critical.to_vec(), cutoff)
    })?;
    let mut expanded = Vec::with_capacity(p.degree().unwrap_or(0));
    for (r, m) in roots {
        expanded.extend(std::iter::repeat_n(r, m));
    }
    Zeros::from_unsorted(expanded)
}

fn float_roots<T: Scalar>(p: &Poly<T>, tol: &T) -> Result<Vec<(T, usize)>> {
    let p = p.monic();
    let degree = p.degree().expect("nonzero");
    match degree {
        0 => return Ok(Vec::new()),
        1 => return Ok(vec![(-p.coeffs()[0].clone(), 1)]),
        _ => {}
    }
    let critical = float_roots(&p.derivative(), tol)?;
    roots_between_critical(&p, critical, tol)
}

/// `p` monic; `critical` the roots of `p′`, descending.
fn roots_between_critical<T: Scalar>(
    p: &Poly<T>,
    critical: Vec<(T, usize)>,
    tol: &T,
) -> Result<Vec<(T, usize)>> {
    let degree = p.degree().expect("nonzero");
    if degree == 0 {
        return Ok(Vec::new());
    }
    let bound = p.cauchy_bound()?;
    // relative to Σ|aᵢ|·max(1, |x|)ⁱ, so the cutoff does not vanish near the origin
    let on_root = |x: &T| {
        let reach = max_of(T::one(), x.abs());
        p.eval(x).is_negligible(&(tol.clone() * p.abs_eval(&reach)))
    };

    // descending breakpoints: +bound, critical points, -bound
    let mut points: Vec<(T, Option<usize>)> = Vec::with_capacity(critical.len() + 2);
    points.push((bound.clone(), None));
    points.extend(critical.into_iter().map(|(c, m)| (c, Some(m))));
    points.push((-bound, None));

    let mut out = Vec::new();
    let mut prev_is_root = false;
    for i in 0..points.len() {
        let (x, mult) = &points[i];
        let is_root = mult.is_some() && on_root(x);
        if i > 0 && !prev_is_root && !is_root {
            let hi = &points[i - 1].0;
            let (f_hi, f_lo) = (p.eval(hi), p.eval(x));
            if f_hi.is_negative() != f_lo.is_negative() && !f_hi.is_zero() && !f_lo.is_zero() {
                out.push((bisect(p, x.clone(), hi.clone()), 1));
            }
        }
        if is_root {
            out.push((x.clone(), mult.expect("critical point") + 1));
        }
        prev_is_root = is_root;
    }
    let found: usize = out.iter().map(|(_, m)| m).sum();
    if found != degree {
        return Err(Error::NotHyperbolic);
    }
    Ok(out)
}

fn bisect<T: Scalar>(p: &Poly<T>, mut lo: T, mut hi: T) -> T {
    let two = T::from_int(2);
    let hi_negative = p.eval(&hi).is_negative();
    for _ in 0..MAX_BISECTIONS {
        let mid = (lo.clone() + hi.clone()) / two.clone();
        if mid <= lo || mid >= hi {
            return mid;
        }
        let f_mid = p.eval(&mid);
        if f_mid.is_zero() {
            return mid;
        }
        if f_mid.is_negative() == hi_negative {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    (lo + hi) / two
}

/// Number of roots, counted with multiplicity, strictly greater than `x`.
pub fn roots_above<T: Scalar>(p: &Poly<T>, x: &T) -> Result<usize> {
    Ok(RootCounter::new(p)?.above(x))
}

/// Sturm chains of the square-free factors of a polynomial, built once for
/// repeated root counts.
#[derive(Clone, Debug)]
pub struct RootCounter<T> {
    factors: Vec<(FactorChain<T>, usize)>,
    bound: T,
}

#[derive(Clone, Debug)]
enum FactorChain<T> {
    Integer(integer::IntegerSturm),
    Generic(SturmSequence<T>),
}

impl<T: Scalar> RootCounter<T> {
    pub fn new(p: &Poly<T>) -> Result<Self> {
        if p.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        let bound = p.cauchy_bound()?;
        let factors = p
            .square_free_decomposition()
            .into_iter()
            .map(|(f, m)| {
                let chain = match T::integer_form(f.coeffs()) {
                    Some(ints) => FactorChain::Integer(integer::IntegerSturm::new(&ints)),
                    None => FactorChain::Generic(SturmSequence::new(&f)),
                };
                (chain, m)
            })
            .collect();
        Ok(Self { factors, bound })
    }

    /// Roots, with multiplicity, strictly greater than `x`.
    pub fn above(&self, x: &T) -> usize {
        if *x >= self.bound {
            return 0;
        }
        let lo = if *x > -self.bound.clone() {
            x.clone()
        } else {
            -self.bound.clone()
        };
        let rational = lo.to_rational().zip(self.bound.to_rational());
        self.factors
            .iter()
            .map(|(chain, m)| {
                m * match (chain, &rational) {
                    (FactorChain::Integer(sturm), Some((lo, hi))) => sturm.count(lo, hi),
                    (FactorChain::Generic(sturm), _) => sturm.count(&lo, &self.bound),
                    (FactorChain::Integer(_), None) => {
                        unreachable!("integer chains come from exact scalars")
                    }
                }
            })
            .sum()
    }
}

/// Multiplicity of `x` as a root of `p` (zero if `p(x) ≠ 0`).
pub fn root_multiplicity<T: Scalar>(p: &Poly<T>, x: &T) -> usize {
    let mut m = 0;
    let mut d = p.clone();
    while !d.is_zero() && d.eval(x).is_zero() {
        m += 1;
        d = d.derivative();
    }
    m
}
