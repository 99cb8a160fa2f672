use super::Poly;
use crate::scalar::Scalar;

/// The Sturm chain `p, p′, −rem(p, p′), …` of a polynomial.
///
/// Each member is rescaled by a positive factor, which leaves every sign
/// (and so every variation count) unchanged.
#[derive(Clone, Debug)]
pub struct SturmSequence<T> {
    chain: Vec<Poly<T>>,
    tol: T,
}

impl<T: Scalar> SturmSequence<T> {
    pub fn new(p: &Poly<T>) -> Self {
        Self::with_tolerance(p, &T::default_tolerance())
    }

    /// Remainders whose coefficients are all within `tol` (relative to the
    /// dividend) terminate the chain.
    pub fn with_tolerance(p: &Poly<T>, tol: &T) -> Self {
        let mut chain = Vec::new();
        if !p.is_zero() {
            chain.push(p.normalize_positive());
            let dp = p.derivative();
            if !dp.is_zero() {
                chain.push(dp.normalize_positive());
            }
        }
        while chain.len() >= 2 {
            let n = chain.len();
            let (_, rem) = chain[n - 2].div_rem(&chain[n - 1]);
            let reference = chain[n - 2].max_abs_coeff();
            let next = (-&rem).drop_negligible(tol, &reference);
            if next.is_zero() {
                break;
            }
            chain.push(next.normalize_positive());
        }
        Self {
            chain,
            tol: tol.clone(),
        }
    }

    pub fn chain(&self) -> &[Poly<T>] {
        &self.chain
    }

    /// Sign changes along the chain evaluated at `x`, zeros skipped.
    pub fn variations(&self, x: &T) -> usize {
        let mut count = 0;
        let mut last: Option<bool> = None;
        for p in &self.chain {
            let v = p.eval(x);
            let negligible = if T::EXACT {
                v.is_zero()
            } else {
                v.is_negligible(&(self.tol.clone() * p.abs_eval(x)))
            };
            if negligible {
                continue;
            }
            let negative = v.is_negative();
            if last.is_some_and(|prev| prev != negative) {
                count += 1;
            }
            last = Some(negative);
        }
        count
    }

    /// Distinct roots in `(lo, hi]`, assuming the chain's head is square-free.
    pub fn count(&self, lo: &T, hi: &T) -> usize {
        self.variations(lo).saturating_sub(self.variations(hi))
    }
}
