//! Serializable reports. Every scalar is rendered as a string, `p/q` for
//! rationals, so JSON output is lossless.

use std::fmt::Write as _;

use hyperlift::{
    CriterionReport, LiftOutcome, QuarticReport, Scalar, Witness, WitnessChain, Zeros,
};
use serde::{Deserialize, Serialize};

fn strings<T: Scalar>(values: &[T]) -> Vec<String> {
    values.iter().map(ToString::to_string).collect()
}

fn verdict(feasible: bool) -> String {
    if feasible { "feasible" } else { "infeasible" }.to_string()
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct QuarticSection {
    pub s: Option<String>,
    pub t: Option<String>,
    pub st_statistic: String,
    pub a_form: String,
    pub b_form: String,
    pub feasible: bool,
    pub boundary: bool,
}

impl QuarticSection {
    pub fn new<T: Scalar>(report: &QuarticReport<T>) -> Self {
        Self {
            s: report.s.as_ref().map(ToString::to_string),
            t: report.t.as_ref().map(ToString::to_string),
            st_statistic: report.st_statistic.to_string(),
            a_form: report.a_form.to_string(),
            b_form: report.b_form.to_string(),
            feasible: report.feasible,
            boundary: report.boundary,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CheckReport {
    pub verdict: String,
    pub zeros: Vec<String>,
    /// `[lo, hi]`, `hi` null when unbounded; null when infeasible.
    pub c_interval: Option<(String, Option<String>)>,
    pub critical_values: Vec<String>,
    pub violated_pairs: Vec<(usize, usize)>,
    pub boundary: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub quartic: Option<QuarticSection>,
}

impl CheckReport {
    pub fn new<T: Scalar>(
        zeros: &Zeros<T>,
        report: &CriterionReport<T>,
        quartic: Option<&QuarticReport<T>>,
    ) -> Self {
        Self {
            verdict: verdict(report.feasible),
            zeros: strings(zeros.as_slice()),
            c_interval: report
                .interval()
                .map(|(lo, hi)| (lo.to_string(), hi.map(|h| h.to_string()))),
            critical_values: strings(&report.critical_values),
            violated_pairs: report.violated_pairs.clone(),
            boundary: report.boundary,
            quartic: quartic.map(QuarticSection::new),
        }
    }

    pub fn text(&self) -> String {
        let mut s = format!("{} zeros=({})", self.verdict, self.zeros.join(", "));
        match &self.c_interval {
            Some((lo, Some(hi))) => write!(s, " c_interval=[{lo}, {hi}]"),
            Some((lo, None)) => write!(s, " c_interval=[{lo}, +inf)"),
            None => Ok(()),
        }
        .expect("writing to a string");
        write!(s, " critical_values=({})", self.critical_values.join(", "))
            .expect("writing to a string");
        if !self.violated_pairs.is_empty() {
            let pairs: Vec<String> = self
                .violated_pairs
                .iter()
                .map(|(j, k)| format!("({j},{k})"))
                .collect();
            write!(s, " violated={}", pairs.join(",")).expect("writing to a string");
        }
        if self.boundary {
            s.push_str(" boundary");
        }
        if let Some(q) = &self.quartic {
            write!(s, " {}", q.text()).expect("writing to a string");
        }
        s
    }
}

impl QuarticSection {
    pub fn text(&self) -> String {
        let opt = |v: &Option<String>| v.clone().unwrap_or_else(|| "-".into());
        format!(
            "s={} t={} 1+5st={} a_form={} b_form={}",
            opt(&self.s),
            opt(&self.t),
            self.st_statistic,
            self.a_form,
            self.b_form
        )
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct QuarticOutput {
    pub verdict: String,
    pub zeros: Vec<String>,
    pub quartic: QuarticSection,
}

impl QuarticOutput {
    pub fn new<T: Scalar>(zeros: &Zeros<T>, report: &QuarticReport<T>) -> Self {
        Self {
            verdict: verdict(report.feasible),
            zeros: strings(zeros.as_slice()),
            quartic: QuarticSection::new(report),
        }
    }

    pub fn text(&self) -> String {
        let mut s = format!(
            "{} zeros=({}) {}",
            self.verdict,
            self.zeros.join(", "),
            self.quartic.text()
        );
        if self.quartic.boundary {
            s.push_str(" boundary");
        }
        s
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct WitnessLevel {
    pub zeros: Vec<String>,
    pub c: String,
    /// Coefficients of `q = P − c`, lowest degree first.
    pub q: Vec<String>,
    pub roots: Vec<String>,
}

impl WitnessLevel {
    pub fn new<T: Scalar>(w: &Witness<T>) -> Self {
        Self {
            zeros: strings(w.zeros.as_slice()),
            c: w.c.to_string(),
            q: strings(w.q.coeffs()),
            roots: strings(w.roots.as_slice()),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct WitnessOutput {
    /// `verified`, or `indeterminate` when a multi-level search stalled.
    pub verdict: String,
    pub depth: usize,
    pub levels: Vec<WitnessLevel>,
    /// The chain as iterated antiderivatives, each the derivative's antiderivative.
    pub antiderivatives: Vec<String>,
}

impl WitnessOutput {
    pub fn from_outcome<T: Scalar>(outcome: &LiftOutcome<T>, depth: usize) -> Self {
        Self::from_chain(outcome.chain(), depth, outcome.is_complete())
    }

    fn from_chain<T: Scalar>(chain: &WitnessChain<T>, depth: usize, complete: bool) -> Self {
        Self {
            verdict: if complete {
                "verified"
            } else {
                "indeterminate"
            }
            .to_string(),
            depth,
            levels: chain.levels.iter().map(WitnessLevel::new).collect(),
            antiderivatives: chain
                .antiderivatives()
                .iter()
                .map(ToString::to_string)
                .collect(),
        }
    }

    pub fn text<T: Scalar>(&self, chain: &WitnessChain<T>) -> String {
        let mut s = String::new();
        for (i, level) in chain.levels.iter().enumerate() {
            if self.levels.len() > 1 {
                writeln!(s, "level {}:", i + 1).expect("writing to a string");
            }
            let roots: Vec<String> = level
                .roots
                .iter()
                .map(|r| {
                    if !T::EXACT || level.q.eval(r).is_zero() {
                        r.to_string()
                    } else {
                        format!("~{}", r.as_f64())
                    }
                })
                .collect();
            writeln!(s, "zeros: {}", level.zeros).expect("writing to a string");
            writeln!(s, "c: {}", level.c).expect("writing to a string");
            writeln!(s, "q: {}", level.q).expect("writing to a string");
            writeln!(s, "roots: ({})", roots.join(", ")).expect("writing to a string");
        }
        if self.levels.len() > 1 {
            writeln!(s, "chain: {}", self.antiderivatives.join(", ")).expect("writing to a string");
        }
        write!(s, "{}", self.verdict).expect("writing to a string");
        s
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CountOutput {
    pub n: usize,
    pub count: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub pairs: Option<Vec<(usize, usize)>>,
}

impl CountOutput {
    pub fn text(&self) -> String {
        let mut s = self.count.to_string();
        for (j, k) in self.pairs.iter().flatten() {
            write!(s, "\nP(w_{j}) >= P(w_{k})").expect("writing to a string");
        }
        s
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ErrorOutput {
    pub verdict: String,
    pub error: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub c_interval: Option<(String, Option<String>)>,
}
