//! Group comparison of trendline slopes between successful and unsuccessful
//! ideas.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::{
    average_trajectories, classify, linear_fit, paired_t_one_tailed, trajectories, Eviction, GridPoint, IdeaRecord,
    IdeaTrajectory, PairedT, Thinking, TrendLine, DEFAULT_CAPACITY, DEFAULT_GRID, DEFAULT_TOLERANCE,
};
use crate::measures::{IcFormula, MeasureConfig, SimFormula};
use crate::wordnet::LexicalGraph;
use crate::{Error, Result};

pub const PAIRING: &str = "per student: mean successful-idea slope vs mean unsuccessful-idea slope";

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BacktestOptions {
    pub config: MeasureConfig,
    pub capacity: usize,
    pub eviction: Eviction,
    pub grid: usize,
    pub tolerance: f64,
}

impl Default for BacktestOptions {
    fn default() -> Self {
        BacktestOptions {
            config: MeasureConfig::default(),
            capacity: DEFAULT_CAPACITY,
            eviction: Eviction::Fifo,
            grid: DEFAULT_GRID,
            tolerance: DEFAULT_TOLERANCE,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct IdeaSummary {
    pub idea_id: String,
    pub student_id: String,
    pub success: bool,
    pub points: usize,
    pub ic_trend: TrendLine,
    pub sim_trend: TrendLine,
    pub classification: Thinking,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GroupSlopes {
    pub successful: f64,
    pub unsuccessful: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReportMetadata {
    pub ic: IcFormula,
    pub sim: SimFormula,
    pub capacity: usize,
    pub eviction: Eviction,
    pub grid: usize,
    pub tolerance: f64,
    pub pairing: String,
    pub paired_students: usize,
    /// Students lacking one of the two labels.
    pub unpaired_students: usize,
    /// Ideas whose trajectory had too few points for a trendline.
    pub unfitted_ideas: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AverageCurve {
    pub points: Vec<GridPoint>,
    pub ic_trend: TrendLine,
    pub sim_trend: TrendLine,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BacktestReport {
    /// Sorted by student, then idea id.
    pub ideas: Vec<IdeaSummary>,
    pub ic_slopes: GroupSlopes,
    pub sim_slopes: GroupSlopes,
    /// Paired test on successful − unsuccessful IC slopes.
    pub ic_test: Option<PairedT>,
    /// Paired test on successful − unsuccessful similarity slopes.
    pub sim_test: Option<PairedT>,
    /// Set when a paired test could not be computed because the slope
    /// differences have no variance.
    pub degenerate: bool,
    pub successful_average: AverageCurve,
    pub unsuccessful_average: AverageCurve,
    pub metadata: ReportMetadata,
}

fn mean(xs: &[f64]) -> f64 {
    xs.iter().sum::<f64>() / xs.len() as f64
}

fn average_curve(ideas: &[IdeaTrajectory], success: bool, grid: usize) -> Result<AverageCurve> {
    let points = average_trajectories(ideas, success, grid)?;
    let ic: Vec<(f64, f64)> = points.iter().map(|p| (p.t, p.mean_ic)).collect();
    let sim: Vec<(f64, f64)> = points.iter().map(|p| (p.t, p.mean_sim)).collect();
    Ok(AverageCurve {
        ic_trend: linear_fit(&ic)?,
        sim_trend: linear_fit(&sim)?,
        points,
    })
}

fn paired(xs: &[f64], ys: &[f64]) -> Result<Option<PairedT>> {
    match paired_t_one_tailed(xs, ys) {
        Ok(t) => Ok(Some(t)),
        Err(Error::DegenerateInput(why)) => {
            log::warn!("paired t-test degenerate: {why}");
            Ok(None)
        }
        Err(e) => Err(e),
    }
}

/// Fits per-idea trendlines and compares successful against unsuccessful
/// slopes, pairing by student.
pub fn backtest(g: &LexicalGraph, records: &[IdeaRecord], opts: &BacktestOptions) -> Result<BacktestReport> {
    let mut ideas = trajectories(g, records, opts.config, opts.capacity, opts.eviction)?;
    ideas.sort_by(|a, b| (&a.student_id, &a.idea_id).cmp(&(&b.student_id, &b.idea_id)));

    let mut summaries = Vec::new();
    let mut unfitted = Vec::new();
    for idea in &ideas {
        let fits = linear_fit(&idea.trajectory.ic_points()).and_then(|ic| Ok((ic, linear_fit(&idea.trajectory.sim_points())?)));
        match fits {
            Ok((ic_trend, sim_trend)) => summaries.push(IdeaSummary {
                idea_id: idea.idea_id.clone(),
                student_id: idea.student_id.clone(),
                success: idea.success,
                points: idea.trajectory.points.len(),
                ic_trend,
                sim_trend,
                classification: classify(&sim_trend, opts.tolerance),
            }),
            Err(Error::DegenerateInput(why)) => {
                log::warn!("idea {} has no trendline: {why}", idea.idea_id);
                unfitted.push(idea.idea_id.clone());
            }
            Err(e) => return Err(e),
        }
    }

    // student → (success label → (ic slopes, sim slopes))
    let mut by_student: BTreeMap<&str, [(Vec<f64>, Vec<f64>); 2]> = BTreeMap::new();
    for s in &summaries {
        let slot = &mut by_student.entry(&s.student_id).or_default()[s.success as usize];
        slot.0.push(s.ic_trend.slope);
        slot.1.push(s.sim_trend.slope);
    }
    // per-student means first, then the mean over students
    let group_mean = |label: usize, sim: bool| {
        let per_student: Vec<f64> = by_student
            .values()
            .map(|v| if sim { &v[label].1 } else { &v[label].0 })
            .filter(|xs| !xs.is_empty())
            .map(|xs| mean(xs))
            .collect();
        mean(&per_student)
    };
    let ic_slopes = GroupSlopes {
        successful: group_mean(1, false),
        unsuccessful: group_mean(0, false),
    };
    let sim_slopes = GroupSlopes {
        successful: group_mean(1, true),
        unsuccessful: group_mean(0, true),
    };

    let (mut ic_s, mut ic_u, mut sim_s, mut sim_u) = (vec![], vec![], vec![], vec![]);
    let mut unpaired = 0;
    for [u, s] in by_student.values() {
        if s.0.is_empty() || u.0.is_empty() {
            unpaired += 1;
            continue;
        }
        ic_s.push(mean(&s.0));
        ic_u.push(mean(&u.0));
        sim_s.push(mean(&s.1));
        sim_u.push(mean(&u.1));
    }
    if ic_s.len() < 2 {
        return Err(Error::InsufficientData(format!(
            "{} student(s) have both successful and unsuccessful ideas; at least 2 are needed",
            ic_s.len()
        )));
    }
    let ic_test = paired(&ic_s, &ic_u)?;
    let sim_test = paired(&sim_s, &sim_u)?;

    Ok(BacktestReport {
        degenerate: ic_test.is_none() || sim_test.is_none(),
        successful_average: average_curve(&ideas, true, opts.grid)?,
        unsuccessful_average: average_curve(&ideas, false, opts.grid)?,
        ideas: summaries,
        ic_slopes,
        sim_slopes,
        ic_test,
        sim_test,
        metadata: ReportMetadata {
            ic: opts.config.ic,
            sim: opts.config.sim,
            capacity: opts.capacity,
            eviction: opts.eviction,
            grid: opts.grid,
            tolerance: opts.tolerance,
            pairing: PAIRING.into(),
            paired_students: ic_s.len(),
            unpaired_students: unpaired,
            unfitted_ideas: unfitted,
        },
    })
}
