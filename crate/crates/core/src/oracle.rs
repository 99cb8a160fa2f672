//! Brute-force feasibility oracle and the seeded differential fuzz harness.
//!
//! The oracle never looks at the pair criterion: it builds `P` itself and
//! asks the Sturm-based real-rootedness test whether some shift `P − c` is
//! hyperbolic. Because the scan always includes every critical value `P(wₖ)`,
//! and the admissible set (when nonempty) is an interval whose endpoints are
//! critical values, the exact-mode scan is complete.

use num_rational::BigRational;
use num_traits::Signed;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::criterion::{feasibility_general, quartic_feasible};
use crate::error::{Error, Result};
use crate::polynomial::{Poly, Zeros};
use crate::scalar::{max_of, min_of, Scalar};
use crate::witness::lift_any;

pub const DEFAULT_GRID_POINTS: usize = 5;

pub fn oracle_feasible<T: Scalar>(zeros: &Zeros<T>, grid_points: usize) -> Result<bool> {
    Ok(oracle_accepting_constant(zeros, grid_points)?.is_some())
}

/// The first scanned `c` with `P − c` hyperbolic, if any.
///
/// Critical values are scanned first (in zero order), then `grid_points`
/// evenly spaced values spanning `[min P(wₖ) − 1, max P(wₖ) + 1]`.
pub fn oracle_accepting_constant<T: Scalar>(
    zeros: &Zeros<T>,
    grid_points: usize,
) -> Result<Option<T>> {
    if zeros.is_empty() {
        return Err(Error::EmptyZeros);
    }
    if grid_points < 3 {
        return Err(Error::InvalidArgument(
            "the oracle needs at least 3 grid points".into(),
        ));
    }
    let big_p = Poly::from_zeros(zeros).antiderivative(T::zero());
    let mut scan: Vec<T> = Vec::with_capacity(zeros.len() + grid_points);
    for w in zeros {
        let v = big_p.eval(w);
        if !scan.contains(&v) {
            scan.push(v);
        }
    }
    let lo = scan.iter().cloned().reduce(min_of).expect("nonempty") - T::one();
    let hi = scan.iter().cloned().reduce(max_of).expect("nonempty") + T::one();
    let step = (hi - lo.clone()) / T::from_int(grid_points as i64 - 1);
    scan.extend((0..grid_points).map(|i| lo.clone() + step.clone() * T::from_int(i as i64)));

    for c in scan {
        if big_p.shifted_down(&c).is_hyperbolic()? {
            return Ok(Some(c));
        }
    }
    Ok(None)
}

/// The families the generator draws zero sets from.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Family {
    Uniform,
    Clustered,
    Symmetric,
    Repeated,
}

const NUMERATOR_RANGE: i64 = 20;
const MAX_DENOMINATOR: i64 = 6;

fn random_rational(rng: &mut ChaCha8Rng, range: i64) -> BigRational {
    let den = rng.random_range(1..=MAX_DENOMINATOR);
    BigRational::ratio(rng.random_range(-range..=range), den)
}

/// One random zero set of the given size together with its family.
///
/// A quarter of all draws duplicate entries to create repeated zeros; the
/// rest are split evenly between uniform, clustered and symmetric sets.
pub fn random_zero_set(degree: usize, rng: &mut ChaCha8Rng) -> (Family, Zeros<BigRational>) {
    let family = if rng.random_bool(0.25) {
        Family::Repeated
    } else {
        [Family::Uniform, Family::Clustered, Family::Symmetric][rng.random_range(0..3)]
    };
    let values = match family {
        Family::Uniform => (0..degree)
            .map(|_| random_rational(rng, NUMERATOR_RANGE))
            .collect(),
        Family::Clustered => {
            let clusters = rng.random_range(1..=2usize);
            let centers: Vec<BigRational> = (0..clusters)
                .map(|_| random_rational(rng, NUMERATOR_RANGE))
                .collect();
            (0..degree)
                .map(|_| {
                    let center = centers[rng.random_range(0..clusters)].clone();
                    center + BigRational::ratio(rng.random_range(-3..=3), 12)
                })
                .collect()
        }
        Family::Symmetric => {
            let center = random_rational(rng, 4);
            let mut v: Vec<BigRational> = Vec::with_capacity(degree);
            for _ in 0..degree / 2 {
                let offset = random_rational(rng, NUMERATOR_RANGE).abs();
                v.push(center.clone() + offset.clone());
                v.push(center.clone() - offset);
            }
            if degree % 2 == 1 {
                v.push(center);
            }
            v
        }
        Family::Repeated => {
            let mut v: Vec<BigRational> = (0..degree)
                .map(|_| random_rational(rng, NUMERATOR_RANGE))
                .collect();
            let copies = rng.random_range(1..=degree.div_ceil(2));
            for _ in 0..copies {
                let from = rng.random_range(0..degree);
                let to = rng.random_range(0..degree);
                v[to] = v[from].clone();
            }
            v.shuffle(rng);
            v
        }
    };
    (
        family,
        Zeros::from_unsorted(values).expect("rationals are ordered"),
    )
}

/// The deterministic generator stream for one trial.
pub fn trial_rng(seed: u64, trial: usize) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(trial as u64);
    rng
}

/// The zero sets a fuzz run with these parameters examines, in trial order.
pub fn corpus(degree: usize, trials: usize, seed: u64) -> Vec<Zeros<BigRational>> {
    (0..trials)
        .map(|trial| random_zero_set(degree, &mut trial_rng(seed, trial)).1)
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FuzzConfig {
    pub degree: usize,
    pub trials: usize,
    pub seed: u64,
    pub grid_points: usize,
    /// Also construct and verify a witness for every feasible trial.
    pub check_witnesses: bool,
}

impl FuzzConfig {
    pub fn new(degree: usize, trials: usize, seed: u64) -> Self {
        Self {
            degree,
            trials,
            seed,
            grid_points: DEFAULT_GRID_POINTS,
            check_witnesses: false,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Disagreement {
    pub trial: usize,
    pub family: Family,
    pub zeros: Vec<String>,
    pub criterion: bool,
    pub oracle: bool,
    /// Verdict of the closed-form quartic test when `degree = 4`.
    pub quartic: Option<bool>,
    pub detail: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WitnessFailure {
    pub trial: usize,
    pub zeros: Vec<String>,
    pub message: String,
}

/// Aggregate of a fuzz run. `agreements + disagreements.len() == trials`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FuzzReport {
    pub degree: usize,
    pub seed: u64,
    pub trials: usize,
    pub agreements: usize,
    /// Trials the pair criterion judged feasible.
    pub feasible: usize,
    pub disagreements: Vec<Disagreement>,
    pub witnesses_checked: usize,
    pub witness_failures: Vec<WitnessFailure>,
}

impl FuzzReport {
    pub fn is_clean(&self) -> bool {
        self.disagreements.is_empty() && self.witness_failures.is_empty()
    }
}

pub fn fuzz(degree: usize, trials: usize, seed: u64) -> Result<FuzzReport> {
    fuzz_with(&FuzzConfig::new(degree, trials, seed))
}

struct TrialOutcome {
    feasible: bool,
    disagreement: Option<Disagreement>,
    witness: Option<std::result::Result<(), String>>,
}

fn run_trial(config: &FuzzConfig, trial: usize) -> Result<TrialOutcome> {
    let (family, zeros) = random_zero_set(config.degree, &mut trial_rng(config.seed, trial));
    let report = feasibility_general(&zeros)?;
    let accepting = oracle_accepting_constant(&zeros, config.grid_points)?;
    let oracle = accepting.is_some();

    let mut detail = None;
    let quartic = if config.degree == 4 {
        match quartic_feasible(&zeros) {
            Ok(r) => Some(r.feasible),
            Err(e) => {
                detail = Some(e.to_string());
                None
            }
        }
    } else {
        None
    };
    if let Some(c) = &accepting {
        if !report.admits(c, &BigRational::from_int(0)) {
            detail = Some(format!(
                "oracle accepted c = {c} outside the criterion interval"
            ));
        }
    }
    let agrees = report.feasible == oracle
        && detail.is_none()
        && (config.degree != 4 || quartic == Some(report.feasible));
    let disagreement = (!agrees).then(|| Disagreement {
        trial,
        family,
        zeros: zeros.iter().map(ToString::to_string).collect(),
        criterion: report.feasible,
        oracle,
        quartic,
        detail,
    });

    let witness = (config.check_witnesses && report.feasible)
        .then(|| lift_any(&zeros).map(|_| ()).map_err(|e| e.to_string()));
    Ok(TrialOutcome {
        feasible: report.feasible,
        disagreement,
        witness,
    })
}

/// Compares the pair criterion (and the quartic closed forms for degree 4)
/// against the oracle on seeded random zero sets, in exact arithmetic.
///
/// Trials run in parallel; results are gathered by trial index, so the
/// report depends only on the configuration.
pub fn fuzz_with(config: &FuzzConfig) -> Result<FuzzReport> {
    if !(2..=10).contains(&config.degree) {
        return Err(Error::InvalidArgument(format!(
            "fuzz degree must be in 2..=10, got {}",
            config.degree
        )));
    }
    let outcomes = (0..config.trials)
        .into_par_iter()
        .map(|trial| run_trial(config, trial))
        .collect::<Result<Vec<_>>>()?;

    let corpus_zeros = |trial: usize| -> Vec<String> {
        random_zero_set(config.degree, &mut trial_rng(config.seed, trial))
            .1
            .iter()
            .map(ToString::to_string)
            .collect()
    };
    let mut report = FuzzReport {
        degree: config.degree,
        seed: config.seed,
        trials: config.trials,
        agreements: 0,
        feasible: 0,
        disagreements: Vec::new(),
        witnesses_checked: 0,
        witness_failures: Vec::new(),
    };
    for (trial, outcome) in outcomes.into_iter().enumerate() {
        report.feasible += usize::from(outcome.feasible);
        match outcome.disagreement {
            Some(d) => report.disagreements.push(d),
            None => report.agreements += 1,
        }
        if let Some(result) = outcome.witness {
            report.witnesses_checked += 1;
            if let Err(message) = result {
                report.witness_failures.push(WitnessFailure {
                    trial,
                    zeros: corpus_zeros(trial),
                    message,
                });
            }
        }
    }
    Ok(report)
}
