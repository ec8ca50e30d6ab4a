//! Back-test of trendline slopes on an idea-stream file.
//!
//! ```text
//! cargo run --release --example backtest [IDEAS_FILE]
//! ```

use std::path::PathBuf;

use semnet::dynamics::{backtest, BacktestOptions};
use semnet::ingest::{ingest, load_segments, IngestOptions};
use semnet::output::sig6;
use semnet::wordnet::{load_dict_dir, load_dict_exceptions, resolve_dict_dir};

fn main() -> semnet::Result<()> {
    let dir = resolve_dict_dir(None);
    let g = load_dict_dir(&dir)?;
    let exc = load_dict_exceptions(&dir)?;
    let path = std::env::args().nth(1).map_or_else(|| PathBuf::from("data/fixtures/synthetic_ideas.jsonl"), PathBuf::from);
    let (records, coverage) = ingest(&load_segments(&path)?, &g, &exc, None, IngestOptions::default())?;
    println!("coverage {} of {} nouns", sig6(coverage.coverage), coverage.total_nouns);

    let report = backtest(&g, &records, &BacktestOptions::default())?;
    for idea in &report.ideas {
        println!(
            "{:<14} success={:<5} ic slope {:<11} sim slope {:<11} {:?}",
            idea.idea_id,
            idea.success,
            sig6(idea.ic_trend.slope),
            sig6(idea.sim_trend.slope),
            idea.classification
        );
    }
    println!("IC slopes: successful {} unsuccessful {}", sig6(report.ic_slopes.successful), sig6(report.ic_slopes.unsuccessful));
    println!("sim slopes: successful {} unsuccessful {}", sig6(report.sim_slopes.successful), sig6(report.sim_slopes.unsuccessful));
    if let (Some(ic), Some(sim)) = (report.ic_test, report.sim_test) {
        println!("IC t = {} P = {} (df {})", sig6(ic.t), sig6(ic.p), ic.df);
        println!("sim t = {} P = {} (df {})", sig6(sim.t), sig6(sim.p), sim.df);
    }
    Ok(())
}
