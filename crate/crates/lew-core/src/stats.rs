//! Statistical comparisons for the experiment harness.
//!
//! p-values come from the Student-t and chi-square CDFs provided by the
//! `statrs` crate, which evaluates them through the regularized incomplete
//! beta/gamma functions (absolute error well below 1e-6 for df >= 3).

use statrs::distribution::{ChiSquared, ContinuousCDF, StudentsT};
use thiserror::Error;

#[derive(Debug, Clone, Error, PartialEq)]
pub enum StatsError {
    #[error("welch test needs at least 2 observations per sample (got {0} and {1})")]
    TooFewSamples(usize, usize),
    #[error("welch test is undefined when both samples have zero variance")]
    DegenerateVariance,
    #[error("chi-square test needs matching, non-empty observed/expected cells")]
    InvalidCells,
}

/// Result of a two-sided Welch t-test.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WelchTest {
    pub t: f64,
    /// Welch–Satterthwaite degrees of freedom.
    pub df: f64,
    /// Two-sided p-value.
    pub p: f64,
}

pub fn mean(xs: &[f64]) -> f64 {
    if xs.is_empty() {
        return 0.0;
    }
    xs.iter().sum::<f64>() / xs.len() as f64
}

/// Sample variance (n−1 denominator).
pub fn variance(xs: &[f64]) -> f64 {
    if xs.len() < 2 {
        return 0.0;
    }
    let m = mean(xs);
    xs.iter().map(|x| (x - m).powi(2)).sum::<f64>() / (xs.len() - 1) as f64
}

pub fn mean_sd(xs: &[f64]) -> (f64, f64) {
    (mean(xs), variance(xs).sqrt())
}

/// Welch's unequal-variances t-test of the difference in means, t computed
/// as (x̄−ȳ)/√(s²ₓ/nₓ + s²ᵧ/nᵧ).
pub fn welch_t_test(a: &[f64], b: &[f64]) -> Result<WelchTest, StatsError> {
    if a.len() < 2 || b.len() < 2 {
        return Err(StatsError::TooFewSamples(a.len(), b.len()));
    }
    let (na, nb) = (a.len() as f64, b.len() as f64);
    let (va, vb) = (variance(a), variance(b));
    let sea = va / na;
    let seb = vb / nb;
    let se = sea + seb;
    if se <= 0.0 {
        return Err(StatsError::DegenerateVariance);
    }
    let t = (mean(a) - mean(b)) / se.sqrt();
    let df = se * se / (sea * sea / (na - 1.0) + seb * seb / (nb - 1.0));
    Ok(WelchTest {
        t,
        df,
        p: student_t_two_sided_p(t, df),
    })
}

/// Two-sided p-value for a t statistic at the given degrees of freedom.
pub fn student_t_two_sided_p(t: f64, df: f64) -> f64 {
    if t == 0.0 {
        return 1.0;
    }
    let dist = StudentsT::new(0.0, 1.0, df).expect("valid degrees of freedom");
    (2.0 * dist.cdf(-t.abs())).min(1.0)
}

/// p-value of a chi-square goodness-of-fit test of observed counts against
/// expected counts. Degrees of freedom: number of cells − 1.
pub fn chi_square_gof_p(observed: &[u64], expected: &[f64]) -> Result<f64, StatsError> {
    if observed.is_empty() || observed.len() != expected.len() {
        return Err(StatsError::InvalidCells);
    }
    if expected.iter().any(|&e| e <= 0.0) {
        return Err(StatsError::InvalidCells);
    }
    if observed.len() == 1 {
        return Ok(1.0);
    }
    let stat: f64 = observed
        .iter()
        .zip(expected)
        .map(|(&o, &e)| {
            let d = o as f64 - e;
            d * d / e
        })
        .sum();
    let dist = ChiSquared::new((observed.len() - 1) as f64).expect("valid df");
    Ok(1.0 - dist.cdf(stat))
}
