//! Least-squares trendlines and Student t tests.

use serde::{Deserialize, Serialize};
use statrs::distribution::{ContinuousCDF, StudentsT};

use crate::{Error, Result};

/// CDF of Student's t distribution with `df` degrees of freedom.
pub fn student_t_cdf(t: f64, df: f64) -> f64 {
    StudentsT::new(0.0, 1.0, df)
        .expect("df must be positive")
        .cdf(t)
}

/// Ordinary least-squares line `y = slope · t + intercept`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TrendLine {
    pub slope: f64,
    pub intercept: f64,
    /// Coefficient of determination; 1 when `y` has no variance.
    pub r2: f64,
}

impl TrendLine {
    pub fn at(&self, t: f64) -> f64 {
        self.slope * t + self.intercept
    }
}

pub fn linear_fit(points: &[(f64, f64)]) -> Result<TrendLine> {
    if points.len() < 2 {
        return Err(Error::DegenerateInput("linear fit needs at least two points".into()));
    }
    let n = points.len() as f64;
    let mt = points.iter().map(|p| p.0).sum::<f64>() / n;
    let my = points.iter().map(|p| p.1).sum::<f64>() / n;
    let (mut stt, mut sty, mut syy) = (0.0, 0.0, 0.0);
    for &(t, y) in points {
        let (dt, dy) = (t - mt, y - my);
        stt += dt * dt;
        sty += dt * dy;
        syy += dy * dy;
    }
    if stt == 0.0 {
        return Err(Error::DegenerateInput("all t values are equal".into()));
    }
    let slope = sty / stt;
    let intercept = my - slope * mt;
    let r2 = if syy == 0.0 { 1.0 } else { (sty * sty / (stt * syy)).clamp(0.0, 1.0) };
    Ok(TrendLine { slope, intercept, r2 })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PairedT {
    pub t: f64,
    /// One-tailed probability in the direction of the observed `t`.
    pub p: f64,
    pub df: usize,
}

/// Paired t-test on `d = xs − ys`.
pub fn paired_t_one_tailed(xs: &[f64], ys: &[f64]) -> Result<PairedT> {
    if xs.len() != ys.len() {
        return Err(Error::DegenerateInput(format!("length mismatch {} vs {}", xs.len(), ys.len())));
    }
    let n = xs.len();
    if n < 2 {
        return Err(Error::DegenerateInput("paired t-test needs at least two pairs".into()));
    }
    let d: Vec<f64> = xs.iter().zip(ys).map(|(x, y)| x - y).collect();
    let mean = d.iter().sum::<f64>() / n as f64;
    let var = d.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / (n - 1) as f64;
    if var == 0.0 {
        return Err(Error::DegenerateInput("differences have zero variance".into()));
    }
    let t = mean / (var.sqrt() / (n as f64).sqrt());
    let df = n - 1;
    // lower tail of −|t| equals the tail beyond |t|
    let p = student_t_cdf(-t.abs(), df as f64);
    Ok(PairedT { t, p, df })
}
