//! Conversation dynamics: window trajectories of mean information content
//! and mean pairwise similarity, their trendlines, and the group back-test.

mod backtest;
pub mod fixture;
mod stats;
mod window;

use std::collections::BTreeMap;
use std::io::Write;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::measures::MeasureConfig;
use crate::wordnet::LexicalGraph;
use crate::{Error, Result};

pub use backtest::{backtest, BacktestOptions, BacktestReport, GroupSlopes, IdeaSummary, ReportMetadata};
pub use stats::{linear_fit, paired_t_one_tailed, student_t_cdf, PairedT, TrendLine};
pub use window::{window_stream, Eviction, MeterReading, NounEvent, Push, Window, WindowMeasures, WindowMeter, WindowStep};

pub const DEFAULT_CAPACITY: usize = 6;
pub const DEFAULT_GRID: usize = 101;
pub const DEFAULT_TOLERANCE: f64 = 1e-6;

/// One idea of one student, as an ordered noun stream.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct IdeaRecord {
    pub idea_id: String,
    pub student_id: String,
    pub success: bool,
    pub nouns: Vec<NounEvent>,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TrajectoryPoint {
    pub seq: usize,
    /// `seq` divided by the last sequence number of the stream.
    pub t: f64,
    pub mean_ic: f64,
    pub mean_sim: f64,
    pub changed: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Trajectory {
    pub points: Vec<TrajectoryPoint>,
    /// Window-pair similarities that failed and were left out of a mean.
    pub failed_pairs: usize,
}

impl Trajectory {
    pub fn ic_points(&self) -> Vec<(f64, f64)> {
        self.points.iter().map(|p| (p.t, p.mean_ic)).collect()
    }

    pub fn sim_points(&self) -> Vec<(f64, f64)> {
        self.points
            .iter()
            .filter(|p| p.mean_sim.is_finite())
            .map(|p| (p.t, p.mean_sim))
            .collect()
    }

    pub fn write_csv(&self, out: impl Write) -> Result<()> {
        let mut w = csv::Writer::from_writer(out);
        w.write_record(["t", "mean_ic", "mean_sim", "changed"])?;
        for p in &self.points {
            w.write_record([p.t.to_string(), p.mean_ic.to_string(), p.mean_sim.to_string(), p.changed.to_string()])?;
        }
        w.flush().map_err(|e| Error::io("trajectory csv", e))?;
        Ok(())
    }
}

/// Trajectory of a noun stream, one point per event from the first full
/// window onward. Measures are recomputed only when the window changes.
pub fn trajectory(
    g: &LexicalGraph,
    nouns: &[NounEvent],
    config: MeasureConfig,
    capacity: usize,
    eviction: Eviction,
) -> Result<Trajectory> {
    let distinct = {
        let mut seen: Vec<&str> = nouns.iter().map(|e| e.noun.as_str()).collect();
        seen.sort_unstable();
        seen.dedup();
        seen.len()
    };
    if distinct < capacity {
        return Err(Error::StreamTooShort { distinct, capacity });
    }
    let last_seq = nouns.last().map_or(0, |e| e.seq);
    let mut meter = WindowMeter::new(g, config, capacity, eviction)?;
    let mut points = Vec::new();
    let mut failed_pairs = 0;
    for ev in nouns {
        let reading = meter.push_at(ev.seq, &ev.noun)?;
        if let Some(m) = reading.measures {
            if reading.changed {
                failed_pairs += m.failed_pairs;
            }
            points.push(TrajectoryPoint {
                seq: ev.seq,
                t: if last_seq == 0 { 1.0 } else { ev.seq as f64 / last_seq as f64 },
                mean_ic: m.mean_ic,
                mean_sim: m.mean_sim,
                changed: reading.changed,
            });
        }
    }
    Ok(Trajectory { points, failed_pairs })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GridPoint {
    pub t: f64,
    pub mean_ic: f64,
    pub mean_sim: f64,
}

pub fn grid_times(grid: usize) -> Vec<f64> {
    (0..grid).map(|k| k as f64 / (grid - 1) as f64).collect()
}

/// Step interpolation onto `grid` uniform points of [0, 1]: each grid time
/// takes the last point at or before it, or the first point if none.
pub fn resample(traj: &Trajectory, grid: usize) -> Result<Vec<GridPoint>> {
    if traj.points.is_empty() {
        return Err(Error::DegenerateInput("empty trajectory".into()));
    }
    if grid < 2 {
        return Err(Error::InvalidConfig(format!("grid size {grid} < 2")));
    }
    let pts = &traj.points;
    let mut k = 0;
    Ok(grid_times(grid)
        .into_iter()
        .map(|t| {
            while k + 1 < pts.len() && pts[k + 1].t <= t + 1e-12 {
                k += 1;
            }
            GridPoint {
                t,
                mean_ic: pts[k].mean_ic,
                mean_sim: pts[k].mean_sim,
            }
        })
        .collect())
}

fn mean_curve<'a>(curves: impl ExactSizeIterator<Item = &'a [GridPoint]>) -> Vec<GridPoint> {
    let n = curves.len() as f64;
    let mut acc: Option<Vec<GridPoint>> = None;
    for c in curves {
        match &mut acc {
            None => acc = Some(c.to_vec()),
            Some(a) => {
                for (s, p) in a.iter_mut().zip(c) {
                    s.mean_ic += p.mean_ic;
                    s.mean_sim += p.mean_sim;
                }
            }
        }
    }
    let mut out = acc.unwrap_or_default();
    for p in &mut out {
        p.mean_ic /= n;
        p.mean_sim /= n;
    }
    out
}

/// A record paired with its computed trajectory.
#[derive(Debug, Clone, PartialEq)]
pub struct IdeaTrajectory {
    pub idea_id: String,
    pub student_id: String,
    pub success: bool,
    pub trajectory: Trajectory,
}

/// Computes every record's trajectory in parallel, keeping input order.
pub fn trajectories(
    g: &LexicalGraph,
    records: &[IdeaRecord],
    config: MeasureConfig,
    capacity: usize,
    eviction: Eviction,
) -> Result<Vec<IdeaTrajectory>> {
    records
        .par_iter()
        .map(|r| {
            let trajectory = trajectory(g, &r.nouns, config, capacity, eviction).map_err(|e| {
                log::error!("idea {}: {e}", r.idea_id);
                e
            })?;
            Ok(IdeaTrajectory {
                idea_id: r.idea_id.clone(),
                student_id: r.student_id.clone(),
                success: r.success,
                trajectory,
            })
        })
        .collect()
}

/// Two-stage average of the resampled trajectories labelled `success`:
/// first within each student, then across students with equal weight.
pub fn average_trajectories(ideas: &[IdeaTrajectory], success: bool, grid: usize) -> Result<Vec<GridPoint>> {
    let mut by_student: BTreeMap<&str, Vec<(&str, Vec<GridPoint>)>> = BTreeMap::new();
    for idea in ideas.iter().filter(|i| i.success == success) {
        by_student
            .entry(&idea.student_id)
            .or_default()
            .push((&idea.idea_id, resample(&idea.trajectory, grid)?));
    }
    if by_student.is_empty() {
        return Err(Error::NoMatchingRecords(success));
    }
    let per_student: Vec<Vec<GridPoint>> = by_student
        .into_values()
        .map(|mut v| {
            v.sort_by(|a, b| a.0.cmp(b.0));
            mean_curve(v.iter().map(|(_, c)| c.as_slice()))
        })
        .collect();
    Ok(mean_curve(per_student.iter().map(Vec::as_slice)))
}

/// Reading of a similarity trendline.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Thinking {
    Divergent,
    Convergent,
    Flat,
}

pub fn classify(sim_trend: &TrendLine, tolerance: f64) -> Thinking {
    if sim_trend.slope < -tolerance {
        Thinking::Divergent
    } else if sim_trend.slope > tolerance {
        Thinking::Convergent
    } else {
        Thinking::Flat
    }
}
