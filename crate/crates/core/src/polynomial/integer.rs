//! Sturm chains over the integers for exact root counting and isolation.
//!
//! Rational remainder sequences pay for a gcd on every coefficient
//! operation. Here every member is a primitive integer polynomial and the
//! remainder is a pseudo-remainder with a positive multiplier, so signs, and
//! hence variation counts, match the rational chain.

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::scalar::Scalar;

fn trim(mut v: Vec<BigInt>) -> Vec<BigInt> {
    while v.last().is_some_and(Zero::is_zero) {
        v.pop();
    }
    v
}

fn primitive(v: Vec<BigInt>) -> Vec<BigInt> {
    let content = v.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c));
    if content.is_zero() || content.is_one() {
        return v;
    }
    v.into_iter().map(|c| c / &content).collect()
}

fn derivative(p: &[BigInt]) -> Vec<BigInt> {
    p.iter()
        .enumerate()
        .skip(1)
        .map(|(i, c)| c * BigInt::from(i))
        .collect()
}

/// `|lc(b)|^(δ+1) · a mod b`, with `δ = deg a − deg b`.
fn pseudo_remainder(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let db = b.len() - 1;
    let lead = b[db].clone();
    let lead_abs = lead.abs();
    let sign = if lead.is_negative() {
        -BigInt::one()
    } else {
        BigInt::one()
    };
    let mut rem = a.to_vec();
    while rem.len() > db {
        let top = rem.len() - 1;
        let factor = &rem[top] * &sign;
        for c in rem.iter_mut() {
            *c *= &lead_abs;
        }
        if !factor.is_zero() {
            for (j, d) in b.iter().enumerate() {
                rem[top - db + j] -= &factor * d;
            }
        }
        rem.pop();
        rem = trim(rem);
    }
    rem
}

fn lead_sign(p: &[BigInt]) -> bool {
    p.last().expect("nonzero").is_negative()
}

fn sturm_chain(p: Vec<BigInt>) -> Vec<Vec<BigInt>> {
    let dp = primitive(derivative(&p));
    let mut chain = vec![p];
    if !dp.is_empty() {
        chain.push(dp);
    }
    while chain.len() >= 2 {
        let n = chain.len();
        let rem = pseudo_remainder(&chain[n - 2], &chain[n - 1]);
        if rem.is_empty() {
            break;
        }
        chain.push(primitive(rem.into_iter().map(|c| -c).collect()));
    }
    chain
}

/// `(distinct real roots, distinct complex roots)` of a nonzero integer
/// polynomial, coefficients lowest degree first.
pub(crate) fn root_census(p: &[BigInt]) -> (usize, usize) {
    let p = primitive(trim(p.to_vec()));
    let degree = p.len().saturating_sub(1);
    if degree == 0 {
        return (0, 0);
    }
    let chain = sturm_chain(p);
    let gcd_degree = chain.last().expect("nonempty").len() - 1;

    let variations = |signs: Vec<bool>| signs.windows(2).filter(|w| w[0] != w[1]).count();
    let at_plus = variations(chain.iter().map(|f| lead_sign(f)).collect());
    let at_minus = variations(
        chain
            .iter()
            .map(|f| lead_sign(f) ^ ((f.len() - 1) % 2 == 1))
            .collect(),
    );
    (at_minus.saturating_sub(at_plus), degree - gcd_degree)
}

/// Sign of `p(x)`, by the homogenized integer evaluation
/// `Σ aᵢ · numerⁱ · denom^(n−i)`.
fn sign_at(p: &[BigInt], x: &BigRational) -> Ordering {
    let (num, den) = (x.numer(), x.denom());
    let mut acc = BigInt::zero();
    let mut den_power = BigInt::one();
    for c in p.iter().rev() {
        acc = acc * num + c * &den_power;
        den_power *= den;
    }
    acc.cmp(&BigInt::zero())
}

fn variations(chain: &[Vec<BigInt>], x: &BigRational) -> usize {
    let mut count = 0;
    let mut last = Ordering::Equal;
    for f in chain {
        let s = sign_at(f, x);
        if s == Ordering::Equal {
            continue;
        }
        if last != Ordering::Equal && last != s {
            count += 1;
        }
        last = s;
    }
    count
}

/// Sturm chain of a primitive integer polynomial.
#[derive(Clone, Debug)]
pub(crate) struct IntegerSturm {
    chain: Vec<Vec<BigInt>>,
}

impl IntegerSturm {
    pub(crate) fn new(p: &[BigInt]) -> Self {
        Self {
            chain: sturm_chain(primitive(trim(p.to_vec()))),
        }
    }

    /// Distinct roots in `(lo, hi]`, assuming the polynomial is square-free.
    pub(crate) fn count(&self, lo: &BigRational, hi: &BigRational) -> usize {
        variations(&self.chain, lo).saturating_sub(variations(&self.chain, hi))
    }
}

/// Roots of a square-free integer polynomial: rational roots exactly, the
/// others to within `tol`, in no particular order.
pub(crate) fn square_free_roots(f: &[BigInt], tol: &BigRational) -> Vec<BigRational> {
    let f = primitive(trim(f.to_vec()));
    if f.len() < 2 {
        return Vec::new();
    }
    let lead = f.last().expect("nonconstant").abs();
    let max = f[..f.len() - 1]
        .iter()
        .map(Signed::abs)
        .max()
        .unwrap_or_default();
    let bound = BigRational::from_integer(BigInt::one() + max.div_ceil(&lead));
    let separation = BigRational::new(BigInt::one(), &lead * &lead);

    let chain = sturm_chain(f.clone());
    let two = BigRational::from_integer(BigInt::from(2));
    let neg_bound = -bound.clone();
    let mut pending = vec![(
        neg_bound.clone(),
        variations(&chain, &neg_bound),
        bound.clone(),
        variations(&chain, &bound),
    )];
    let mut roots = Vec::new();
    while let Some((lo, v_lo, hi, v_hi)) = pending.pop() {
        match v_lo.saturating_sub(v_hi) {
            0 => {}
            1 => roots.push(refine(&f, lo, hi, tol, &separation)),
            _ => {
                let mid = (&lo + &hi) / &two;
                let v_mid = variations(&chain, &mid);
                pending.push((lo, v_lo, mid.clone(), v_mid));
                pending.push((mid, v_mid, hi, v_hi));
            }
        }
    }
    roots
}

/// The unique root of square-free `f` in `(lo, hi]`.
fn refine(
    f: &[BigInt],
    mut lo: BigRational,
    mut hi: BigRational,
    tol: &BigRational,
    separation: &BigRational,
) -> BigRational {
    let two = BigRational::from_integer(BigInt::from(2));
    let s_hi = sign_at(f, &hi);
    if s_hi == Ordering::Equal {
        return hi;
    }
    let mut tried_rational = false;
    loop {
        let width = &hi - &lo;
        if !tried_rational && width < *separation {
            // At most one rational root fits; if the root is rational it is
            // the least-denominator point of the bracket. `lo` may itself be a
            // neighbouring root, which by the same uniqueness argument means
            // this root is irrational.
            tried_rational = true;
            let candidate = BigRational::simplest_between(&lo, &hi);
            if candidate != lo && sign_at(f, &candidate) == Ordering::Equal {
                return candidate;
            }
        }
        if width <= *tol {
            break;
        }
        let mid = (&lo + &hi) / &two;
        match sign_at(f, &mid) {
            Ordering::Equal => return mid,
            s if s == s_hi => hi = mid,
            _ => lo = mid,
        }
    }
    // keep away from `lo`, which may be another root
    let quarter = (&hi - &lo) / BigRational::from_integer(BigInt::from(4));
    BigRational::simplest_between(&(lo + &quarter), &(hi - quarter))
}
