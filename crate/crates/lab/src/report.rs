//! Probe reports: sampled ratios, fitted constants, slope fits, pass/fail.

use serde::{Deserialize, Serialize};

pub const REPORT_SCHEMA: &str = "shrira-lab/report-v1";

/// Which estimate a report refers to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum EstimateId {
    StrichartzLocal,
    StrichartzGlobal,
    KernelSum,
    L1Linf,
    Commutator,
    Product,
    Energy,
    GrowthBootstrap,
    Lemma52,
    BonaSmithConvergence,
    FlowContinuity,
}

/// One measured data point: an input descriptor and both sides of the
/// inequality.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ProbeSample {
    pub descriptor: String,
    pub lhs: f64,
    pub rhs: f64,
    pub ratio: f64,
}

impl ProbeSample {
    /// Builds a sample with the `0/0 -> 0` convention for the ratio.
    pub fn new(descriptor: impl Into<String>, lhs: f64, rhs: f64) -> Self {
        let ratio = if lhs == 0.0 { 0.0 } else { lhs / rhs };
        Self {
            descriptor: descriptor.into(),
            lhs,
            rhs,
            ratio,
        }
    }
}

/// Least-squares exponent of a log-log scan.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SlopeFit {
    pub exponent: f64,
    pub intercept: f64,
    pub r2: f64,
    /// `(min x, max x)` of the fitted abscissae.
    pub range: (f64, f64),
}

/// Outcome of one probe run.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ProbeReport {
    pub schema: String,
    pub estimate_id: EstimateId,
    pub samples: Vec<ProbeSample>,
    /// Maximum ratio over the samples (not a quantile), except where a probe
    /// documents a different fitted quantity.
    pub fitted_constant: f64,
    pub slope_fit: Option<SlopeFit>,
    pub pass: bool,
    pub rng_seed: u64,
    /// The ceiling `fitted_constant` was judged against.
    pub ceiling: f64,
    /// The ceiling the slope exponent was judged against, when a slope fit is
    /// part of the pass criterion.
    pub slope_ceiling: Option<f64>,
}

impl ProbeReport {
    pub fn new(estimate_id: EstimateId, rng_seed: u64) -> Self {
        Self {
            schema: REPORT_SCHEMA.to_string(),
            estimate_id,
            samples: Vec::new(),
            fitted_constant: 0.0,
            slope_fit: None,
            pass: true,
            rng_seed,
            ceiling: f64::INFINITY,
            slope_ceiling: None,
        }
    }

    /// Sets `fitted_constant` to the max sample ratio and decides `pass`
    /// against the ceilings.
    pub fn finalize(mut self, ceiling: f64, slope_ceiling: Option<f64>) -> Self {
        self.fitted_constant = self.samples.iter().map(|s| s.ratio).fold(0.0, f64::max);
        self.ceiling = ceiling;
        self.slope_ceiling = slope_ceiling;
        self.decide_pass();
        self
    }

    /// Decides `pass` from `fitted_constant`, the ceilings and the slope fit
    /// already stored.
    pub fn decide_pass(&mut self) {
        let mut ok = self.fitted_constant.is_finite() && self.fitted_constant <= self.ceiling;
        if let (Some(fit), Some(cap)) = (&self.slope_fit, self.slope_ceiling) {
            ok = ok && fit.exponent <= cap;
        }
        self.pass = ok;
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    /// Raw samples as CSV (`descriptor,lhs,rhs,ratio`) for external plotting.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("descriptor,lhs,rhs,ratio\n");
        for s in &self.samples {
            out.push_str(&format!(
                "{},{:e},{:e},{:e}\n",
                s.descriptor.replace(',', ";"),
                s.lhs,
                s.rhs,
                s.ratio
            ));
        }
        out
    }
}

/// Ordinary least squares on `(log x, log y)`.
///
/// Needs at least 3 points, all strictly positive. A constant `y` gives
/// exponent 0 with `r² = 1`.
pub fn fit_slope(points: &[(f64, f64)]) -> SlopeFit {
    assert!(points.len() >= 3, "slope fit needs at least 3 points");
    assert!(
        points.iter().all(|&(x, y)| x > 0.0 && y > 0.0),
        "slope fit needs positive coordinates"
    );
    let logs: Vec<(f64, f64)> = points.iter().map(|&(x, y)| (x.ln(), y.ln())).collect();
    let n = logs.len() as f64;
    let mean_x = logs.iter().map(|p| p.0).sum::<f64>() / n;
    let mean_y = logs.iter().map(|p| p.1).sum::<f64>() / n;
    let sxx: f64 = logs.iter().map(|p| (p.0 - mean_x).powi(2)).sum();
    let sxy: f64 = logs.iter().map(|p| (p.0 - mean_x) * (p.1 - mean_y)).sum();
    assert!(sxx > 0.0, "slope fit needs at least two distinct abscissae");
    let exponent = sxy / sxx;
    let intercept = mean_y - exponent * mean_x;
    let ss_tot: f64 = logs.iter().map(|p| (p.1 - mean_y).powi(2)).sum();
    let ss_res: f64 = logs
        .iter()
        .map(|p| (p.1 - (intercept + exponent * p.0)).powi(2))
        .sum();
    let r2 = if ss_tot <= f64::EPSILON * n {
        1.0
    } else {
        1.0 - ss_res / ss_tot
    };
    let range = points
        .iter()
        .fold((f64::INFINITY, 0.0f64), |(lo, hi), &(x, _)| {
            (lo.min(x), hi.max(x))
        });
    SlopeFit {
        exponent,
        intercept,
        r2,
        range,
    }
}

/// Mann–Kendall trend statistic (normal approximation, continuity-corrected).
///
/// Positive `z` indicates an upward trend; `z > 1.645` rejects "no upward
/// trend" at the one-sided 95% level.
pub fn mann_kendall_z(values: &[f64]) -> f64 {
    let n = values.len();
    assert!(n >= 3, "trend test needs at least 3 values");
    let mut s: i64 = 0;
    for i in 0..n {
        for j in (i + 1)..n {
            s += match values[j].partial_cmp(&values[i]).expect("finite values") {
                std::cmp::Ordering::Greater => 1,
                std::cmp::Ordering::Less => -1,
                std::cmp::Ordering::Equal => 0,
            };
        }
    }
    let var = (n * (n - 1) * (2 * n + 5)) as f64 / 18.0;
    match s.cmp(&0) {
        std::cmp::Ordering::Greater => (s as f64 - 1.0) / var.sqrt(),
        std::cmp::Ordering::Less => (s as f64 + 1.0) / var.sqrt(),
        std::cmp::Ordering::Equal => 0.0,
    }
}
