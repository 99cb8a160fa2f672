use hyperlift::criterion::{gap_closed_form, quartic_closed_form};
use hyperlift::polynomial::RootCounter;
use hyperlift::witness::canonical_constant;
use hyperlift::{
    critical_values, feasibility_general, inequality_count, inequality_pairs, lift, lift_any,
    quartic_a_form, quartic_b_form, quartic_feasible, verify_witness, ExactPoly, ExactZeros,
    FloatZeros, Rational, Scalar,
};
use num_traits::{One, Signed, ToPrimitive, Zero};
use proptest::prelude::*;

fn rational() -> impl Strategy<Value = Rational> {
    (-40i64..=40, 1i64..=6).prop_map(|(n, d)| Rational::ratio(n, d))
}

/// Zero sets with frequent repeats, so boundary cases are common.
fn zero_set(min: usize, max: usize) -> impl Strategy<Value = ExactZeros> {
    prop::collection::vec(rational(), min..=max).prop_flat_map(|base| {
        let n = base.len();
        prop::collection::vec(0..n, n).prop_map(move |picks| {
            let values = picks
                .iter()
                .enumerate()
                .map(|(i, &j)| {
                    if j % 3 == 0 {
                        base[j].clone()
                    } else {
                        base[i].clone()
                    }
                })
                .collect();
            ExactZeros::from_unsorted(values).unwrap()
        })
    })
}

fn nonzero_rational() -> impl Strategy<Value = Rational> {
    rational().prop_filter("nonzero", |a| !a.is_zero())
}

fn to_float(zeros: &ExactZeros) -> FloatZeros {
    zeros.convert(Scalar::as_f64)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn roots_of_product_are_the_zeros(zeros in zero_set(1, 8)) {
        let p = ExactPoly::from_zeros(&zeros);
        prop_assert_eq!(p.real_roots(&Rational::root_tolerance()).unwrap(), zeros);
    }

    #[test]
    fn derivative_of_hyperbolic_is_hyperbolic(zeros in zero_set(2, 9)) {
        let p = ExactPoly::from_zeros(&zeros);
        prop_assert!(p.is_hyperbolic().unwrap());
        prop_assert!(p.derivative().is_hyperbolic().unwrap());
    }

    #[test]
    fn float_and_exact_evaluation_agree(zeros in zero_set(1, 8), x in rational()) {
        let exact = ExactPoly::from_zeros(&zeros);
        let float = exact.convert(Scalar::as_f64);
        let scale = exact.abs_eval(&x).as_f64().max(1.0);
        prop_assert!((exact.eval(&x).as_f64() - float.eval(&x.as_f64())).abs() <= 1e-12 * scale);
    }

    #[test]
    fn integration_constant_does_not_change_differences(zeros in zero_set(1, 8), k in rational()) {
        let values = critical_values(&zeros).unwrap();
        let shifted = ExactPoly::from_zeros(&zeros).antiderivative(k.clone());
        for (w, v) in zeros.iter().zip(&values) {
            prop_assert_eq!(shifted.eval(w) - &k, v.clone());
        }
    }

    #[test]
    fn neighbouring_pairs_hold_automatically(zeros in zero_set(2, 9)) {
        let values = critical_values(&zeros).unwrap();
        for j in (2..=values.len()).step_by(2) {
            for k in [j - 1, j + 1] {
                if k <= values.len() {
                    prop_assert!(values[j - 1] >= values[k - 1], "P(w_{}) < P(w_{})", j, k);
                }
            }
        }
    }

    #[test]
    fn verdict_is_affine_invariant(zeros in zero_set(1, 8), a in nonzero_rational(), b in rational()) {
        let before = feasibility_general(&zeros).unwrap();
        let after = feasibility_general(&zeros.affine(&a, &b)).unwrap();
        prop_assert_eq!(before.feasible, after.feasible);
        prop_assert_eq!(before.boundary, after.boundary);
    }

    #[test]
    fn pair_count_law(n in 1usize..=60) {
        let pairs = inequality_pairs(n);
        prop_assert_eq!(pairs.len(), inequality_count(n));
        let expected = if n < 2 { 0.0 } else { (n as f64 / 2.0 - 1.0).powi(2).floor() };
        prop_assert_eq!(pairs.len() as f64, expected);
        prop_assert!(pairs.iter().all(|&(j, k)| j % 2 == 0 && k % 2 == 1 && j.abs_diff(k) >= 3 && j.max(k) <= n));
    }

    #[test]
    fn normalized_quartic_identity(mut st in (rational(), rational())) {
        // keep the interior zeros inside [-1, 1]
        let clamp = |v: Rational| v / Rational::from_int(40);
        st = (clamp(st.0), clamp(st.1));
        let (s, t) = if st.0 >= st.1 { st } else { (st.1, st.0) };
        let zeros = ExactZeros::new(vec![Rational::one(), s.clone(), t.clone(), -Rational::one()]).unwrap();
        let p = ExactPoly::from_zeros(&zeros).antiderivative(Rational::zero());
        let lhs = Rational::from_int(60) * (p.eval(&Rational::one()) - p.eval(&-Rational::one()));
        let rhs = Rational::from_int(-16) * (Rational::one() + Rational::from_int(5) * s * t);
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn quartic_forms_agree(zeros in zero_set(4, 4)) {
        let w = zeros.as_slice();
        let a = quartic_a_form(w).unwrap();
        prop_assert_eq!(&a, &quartic_b_form(&zeros.gaps()).unwrap());
        prop_assert_eq!(&a, &quartic_closed_form(w).unwrap());
        prop_assert_eq!(&a, &gap_closed_form(&zeros.gaps()).unwrap());
        let report = quartic_feasible(&zeros).unwrap();
        prop_assert_eq!(report.feasible, !a.is_negative());
        prop_assert_eq!(report.feasible, feasibility_general(&zeros).unwrap().feasible);
    }

    #[test]
    fn a_form_under_affine_maps(zeros in zero_set(4, 4), a in nonzero_rational(), b in rational()) {
        let before = quartic_a_form(zeros.as_slice()).unwrap();
        let moved = quartic_a_form(zeros.affine(&Rational::one(), &b).as_slice()).unwrap();
        prop_assert_eq!(&moved, &before);
        let scaled = quartic_a_form(zeros.affine(&a, &Rational::zero()).as_slice()).unwrap();
        prop_assert_eq!(scaled, a.clone() * a * before);
    }

    #[test]
    fn interval_is_exactly_the_admissible_constants(zeros in zero_set(2, 7)) {
        let report = feasibility_general(&zeros).unwrap();
        let p = ExactPoly::from_zeros(&zeros).antiderivative(Rational::zero());
        let admissible = |c: &Rational| p.shifted_down(c).is_hyperbolic().unwrap();
        let one = Rational::one();
        // outside every candidate interval, never real-rooted
        prop_assert!(!admissible(&(report.c_lo.clone() - &one)));
        if let Some(hi) = &report.c_hi {
            prop_assert!(!admissible(&(hi.clone() + &one)));
        }
        if let Some((lo, hi)) = report.interval() {
            prop_assert!(admissible(&lo));
            let hi = hi.unwrap_or_else(|| lo.clone() + &one);
            prop_assert!(admissible(&hi));
            prop_assert!(admissible(&((lo.clone() + hi) / Rational::from_int(2))));
            // at an endpoint the constant hits a critical value: a repeated root
            let q = p.shifted_down(&lo);
            prop_assert!(!q.gcd(&q.derivative()).is_constant());
        } else {
            let c = canonical_constant(&report);
            prop_assert!(!admissible(&c));
        }
    }

    #[test]
    fn lifted_roots_interlace_the_zeros(zeros in zero_set(1, 7)) {
        let report = feasibility_general(&zeros).unwrap();
        match lift_any(&zeros) {
            Ok(witness) => {
                prop_assert!(report.feasible);
                prop_assert!(verify_witness(&witness, &Rational::zero()).is_ok());
                let counter = RootCounter::new(&witness.q).unwrap();
                let n = zeros.len();
                let lowest = witness.roots.as_slice()[n].clone() - Rational::one();
                prop_assert_eq!(counter.above(&lowest), n + 1);
                let r = witness.roots.as_slice();
                for (k, w) in zeros.iter().enumerate() {
                    prop_assert!(r[k] >= *w && *w >= r[k + 1]);
                    // roots strictly above w_k, certified from the Sturm chain
                    let strictly = r.iter().filter(|x| *x > w).count();
                    prop_assert_eq!(counter.above(w), strictly);
                }
            }
            Err(_) => prop_assert!(!report.feasible),
        }
    }

    #[test]
    fn lift_rejects_constants_outside(zeros in zero_set(2, 7)) {
        let report = feasibility_general(&zeros).unwrap();
        let below = report.c_lo.clone() - Rational::ratio(1, 7);
        prop_assert!(lift(&zeros, &below).is_err());
    }

    #[test]
    fn float_verdict_matches_exact_away_from_the_boundary(zeros in zero_set(1, 8)) {
        let exact = feasibility_general(&zeros).unwrap();
        let float = feasibility_general(&to_float(&zeros)).unwrap();
        if !exact.boundary && !float.boundary {
            prop_assert_eq!(exact.feasible, float.feasible);
        }
        for (e, f) in exact.critical_values.iter().zip(&float.critical_values) {
            prop_assert!((e.to_f64().unwrap() - f).abs() <= 1e-9 * e.abs().to_f64().unwrap().max(1.0));
        }
    }
}
