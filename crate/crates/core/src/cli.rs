//! The `semnet` command line.

use std::io::{self, BufRead, Write};
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use serde::Serialize;

use crate::dynamics::fixture::{synthesize, FixtureSpec};
use crate::dynamics::{
    average_trajectories, backtest, classify, linear_fit, trajectories, BacktestOptions, Eviction, GridPoint, Thinking,
    WindowMeter, DEFAULT_TOLERANCE,
};
use crate::ingest::{ingest, load_segments, normalize_noun, write_segments, IngestOptions, Tagger, TranscriptSegment};
use crate::measures::{information_content, similarity};
use crate::output::{create, sig6, write_jsonl};
use crate::rg65::{correlation_distance_matrix, evaluate_all, hierarchical_cluster, load_rg65, Linkage};
use crate::wordnet::{graph_stats, load_dict_dir, load_exceptions, resolve_dict_dir};
use crate::{Error, IcFormula, LexicalGraph, MeasureConfig, MorphExceptions, Result, SimFormula};

const USAGE_ERROR: i32 = 1;
const DATA_ERROR: i32 = 2;

#[derive(Debug, Parser)]
#[command(name = "semnet", version, about = "Semantic measures over the WordNet noun taxonomy")]
pub struct Cli {
    #[command(flatten)]
    pub run: RunConfig,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Args)]
pub struct RunConfig {
    /// WordNet dict directory holding data.noun, index.noun and noun.exc.
    #[arg(long = "wordnet", global = true, env = crate::WORDNET_DIR_ENV, value_name = "DIR")]
    pub wordnet_dir: Option<PathBuf>,
    /// Information content formula.
    #[arg(long, global = true, default_value = "sanchez-batet", value_parser = parse_ic)]
    pub ic: IcFormula,
    /// Similarity formula; IC-based ids without a suffix use --ic.
    #[arg(long, global = true, default_value = "lin", value_name = "ID")]
    pub sim: String,
    /// Distinct nouns held by the moving window.
    #[arg(long, global = true, default_value_t = crate::dynamics::DEFAULT_CAPACITY, value_parser = parse_capacity)]
    pub window: usize,
    /// Points of the resampling grid on [0, 1].
    #[arg(long, global = true, default_value_t = crate::dynamics::DEFAULT_GRID, value_parser = parse_grid)]
    pub grid: usize,
    #[arg(long, global = true, default_value = "fifo", value_parser = parse_eviction)]
    pub evict: Eviction,
    /// Part-of-speech tagger command for segments given as raw text.
    #[arg(long, global = true, value_name = "CMD")]
    pub tagger: Option<String>,
    /// Join adjacent tagged nouns into underscore lemmas when listed.
    #[arg(long, global = true)]
    pub join_bigrams: bool,
    /// Directory for structured output files.
    #[arg(long, global = true, value_name = "DIR")]
    pub out: Option<PathBuf>,
    /// Seed for synthetic fixture generation.
    #[arg(long, global = true, default_value_t = 7)]
    pub seed: u64,
    #[arg(long, global = true, default_value = "average", value_parser = parse_linkage)]
    pub linkage: Linkage,
}

#[derive(Debug, Clone, Subcommand)]
pub enum Command {
    /// Global graph statistics.
    Stats,
    /// Information content of a word.
    Ic { word: String },
    /// Similarity of two words.
    Sim { w1: String, w2: String },
    /// Lowest common subsumer of two words.
    Lcs { w1: String, w2: String },
    /// Shortest word distance in meaning edges.
    Dist { w1: String, w2: String },
    /// Correlate all measures with an RG-65 file and cluster them.
    Rg65 { file: PathBuf },
    /// Trajectories and trendlines of every idea in an idea-stream file.
    Analyze { ideas: PathBuf },
    /// Full successful-vs-unsuccessful slope comparison.
    Backtest { ideas: PathBuf },
    /// Read nouns from stdin, one per line, and report each window update.
    Watch,
    /// Write the seeded synthetic idea-stream fixture.
    Synth {
        #[arg(long, default_value_t = 12)]
        students: usize,
    },
}

fn parse_ic(s: &str) -> std::result::Result<IcFormula, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

fn parse_eviction(s: &str) -> std::result::Result<Eviction, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

fn parse_linkage(s: &str) -> std::result::Result<Linkage, String> {
    serde_json::from_value(serde_json::Value::String(s.into())).map_err(|_| format!("unknown linkage '{s}'"))
}

fn parse_capacity(s: &str) -> std::result::Result<usize, String> {
    match s.parse::<usize>() {
        Ok(n) if n >= 2 => Ok(n),
        _ => Err(format!("window capacity must be an integer >= 2, got '{s}'")),
    }
}

fn parse_grid(s: &str) -> std::result::Result<usize, String> {
    match s.parse::<usize>() {
        Ok(n) if n >= 2 => Ok(n),
        _ => Err(format!("grid size must be an integer >= 2, got '{s}'")),
    }
}

impl RunConfig {
    pub fn sim_formula(&self) -> Result<SimFormula> {
        match self.sim.parse() {
            Ok(f) => Ok(f),
            Err(e) if !self.sim.contains(':') => format!("{}:{}", self.sim, self.ic.id()).parse().map_err(|_| e),
            Err(e) => Err(e),
        }
    }

    pub fn measures(&self) -> Result<MeasureConfig> {
        Ok(MeasureConfig {
            ic: self.ic,
            sim: self.sim_formula()?,
        })
    }

    fn dict_dir(&self) -> PathBuf {
        resolve_dict_dir(self.wordnet_dir.as_deref())
    }

    fn graph(&self) -> Result<LexicalGraph> {
        load_dict_dir(&self.dict_dir())
    }

    fn exceptions(&self) -> Result<MorphExceptions> {
        let path = self.dict_dir().join("noun.exc");
        if path.exists() {
            load_exceptions(&path)
        } else {
            log::warn!("{} not found; irregular plurals will not be normalised", path.display());
            Ok(MorphExceptions::new())
        }
    }

    fn out_file(&self, name: &str) -> Option<PathBuf> {
        self.out.as_ref().map(|d| d.join(name))
    }
}

fn write_json<T: Serialize>(path: &Path, value: &T) -> Result<()> {
    let mut f = create(path)?;
    serde_json::to_writer_pretty(&mut f, value)?;
    writeln!(f).and_then(|_| f.flush()).map_err(|e| Error::io(path, e))
}

fn print_grid(label: &str, points: &[GridPoint]) {
    let ic: Vec<(f64, f64)> = points.iter().map(|p| (p.t, p.mean_ic)).collect();
    let sim: Vec<(f64, f64)> = points.iter().map(|p| (p.t, p.mean_sim)).collect();
    if let (Ok(a), Ok(b)) = (linear_fit(&ic), linear_fit(&sim)) {
        println!("{label} average: ic slope {} sim slope {}", sig6(a.slope), sig6(b.slope));
    }
}

fn write_grid_csv(path: &Path, points: &[GridPoint]) -> Result<()> {
    let mut w = csv::Writer::from_writer(create(path)?);
    w.write_record(["t", "mean_ic", "mean_sim"])?;
    for p in points {
        w.write_record([p.t.to_string(), p.mean_ic.to_string(), p.mean_sim.to_string()])?;
    }
    w.flush().map_err(|e| Error::io(path, e))
}

#[derive(Debug, Serialize)]
struct WatchRecord<'a> {
    seq: usize,
    noun: &'a str,
    in_lexicon: bool,
    changed: bool,
    window: &'a [String],
    mean_ic: f64,
    mean_sim: f64,
    ic_slope: Option<f64>,
    sim_slope: Option<f64>,
    classification: Option<Thinking>,
}

fn watch(g: &LexicalGraph, exc: &MorphExceptions, run: &RunConfig, input: impl BufRead, mut out: impl Write) -> Result<()> {
    let mut meter = WindowMeter::new(g, run.measures()?, run.window, run.evict)?;
    let (mut ic_pts, mut sim_pts) = (Vec::new(), Vec::new());
    let mut seq = 0usize;
    for line in input.lines() {
        let line = line.map_err(|e| Error::io("stdin", e))?;
        let raw = line.trim();
        if raw.is_empty() {
            continue;
        }
        let normalized = normalize_noun(raw, g, exc);
        let (noun, changed, measures) = match &normalized {
            Some(n) => {
                let r = meter.push_at(seq, n)?;
                (n.as_str(), r.changed, r.measures)
            }
            None => {
                log::warn!("'{raw}' not in lexicon; window unchanged");
                (raw, false, meter.window().is_full().then(|| meter.current()).flatten())
            }
        };
        let this_seq = seq;
        seq += 1;
        let Some(m) = measures else { continue };
        ic_pts.push((this_seq as f64, m.mean_ic));
        if m.mean_sim.is_finite() {
            sim_pts.push((this_seq as f64, m.mean_sim));
        }
        let sim_trend = linear_fit(&sim_pts).ok();
        let rec = WatchRecord {
            seq: this_seq,
            noun,
            in_lexicon: normalized.is_some(),
            changed,
            window: &meter.window().members,
            mean_ic: m.mean_ic,
            mean_sim: m.mean_sim,
            ic_slope: linear_fit(&ic_pts).ok().map(|t| t.slope),
            sim_slope: sim_trend.map(|t| t.slope),
            classification: sim_trend.map(|t| classify(&t, DEFAULT_TOLERANCE)),
        };
        serde_json::to_writer(&mut out, &rec)?;
        writeln!(out).and_then(|_| out.flush()).map_err(|e| Error::io("stdout", e))?;
    }
    Ok(())
}

fn ingest_file(run: &RunConfig, g: &LexicalGraph, path: &Path) -> Result<Vec<crate::dynamics::IdeaRecord>> {
    let exc = run.exceptions()?;
    let tagger = run.tagger.as_ref().map(Tagger::new);
    let opts = IngestOptions {
        join_bigrams: run.join_bigrams,
    };
    let (records, coverage) = ingest(&load_segments(path)?, g, &exc, tagger.as_ref(), opts)?;
    println!(
        "coverage {} ({} of {} nouns in lexicon)",
        sig6(coverage.coverage),
        coverage.in_lexicon,
        coverage.total_nouns
    );
    if let Some(p) = run.out_file("coverage.json") {
        write_json(&p, &coverage)?;
    }
    Ok(records)
}

/// Runs one parsed command.
pub fn execute(cli: &Cli) -> Result<()> {
    let run = &cli.run;
    match &cli.command {
        Command::Stats => {
            let g = run.graph()?;
            let stats = graph_stats(&g);
            let value = serde_json::to_value(&stats)?;
            for (k, v) in value.as_object().expect("struct") {
                println!("{k} {}", v.as_f64().map_or_else(|| v.to_string(), sig6));
            }
            if let Some(p) = run.out_file("stats.json") {
                write_json(&p, &stats)?;
            }
        }
        Command::Ic { word } => {
            let g = run.graph()?;
            println!("{}", sig6(information_content(&g, word.as_str(), run.ic)?));
        }
        Command::Sim { w1, w2 } => {
            let g = run.graph()?;
            println!("{}", sig6(similarity(&g, w1, w2, run.sim_formula()?)?));
        }
        Command::Lcs { w1, w2 } => {
            let g = run.graph()?;
            let lcs = g.lcs(w1, w2)?;
            println!(
                "{} depth {} path {} [{}]",
                lcs.meaning,
                lcs.depth,
                lcs.path_length,
                g.synset_words(lcs.meaning)?.join(", ")
            );
        }
        Command::Dist { w1, w2 } => {
            let g = run.graph()?;
            println!("{}", g.word_distance(w1, w2)?);
        }
        Command::Rg65 { file } => {
            let g = run.graph()?;
            let table = evaluate_all(&g, load_rg65(file)?)?;
            for r in &table.rows {
                println!("{} {} {}", r.measure, sig6(r.pearson_r), sig6(r.p_value));
            }
            let (labels, vectors) = table.score_vectors();
            let matrix = correlation_distance_matrix(&vectors)?;
            let tree = hierarchical_cluster(&matrix, run.linkage)?;
            if let Some((a, b)) = tree.top_split() {
                let names = |ix: &[usize]| ix.iter().map(|&i| labels[i].as_str()).collect::<Vec<_>>().join(" ");
                println!("top split: [{}] | [{}]", names(&a), names(&b));
            }
            if let Some(dir) = &run.out {
                table.write_csv(create(&dir.join("correlations.csv"))?)?;
                table.write_jsonl(create(&dir.join("correlations.jsonl"))?)?;
                matrix.write_csv(&labels, create(&dir.join("distance_matrix.csv"))?)?;
                write_json(&dir.join("dendrogram.json"), &tree.tree(&labels))?;
                write_jsonl(create(&dir.join("excluded.jsonl"))?, &table.excluded)?;
            }
        }
        Command::Analyze { ideas } => {
            let g = run.graph()?;
            let records = ingest_file(run, &g, ideas)?;
            let all = trajectories(&g, &records, run.measures()?, run.window, run.evict)?;
            for idea in &all {
                let ic = linear_fit(&idea.trajectory.ic_points());
                let sim = linear_fit(&idea.trajectory.sim_points());
                match (ic, sim) {
                    (Ok(ic), Ok(sim)) => println!(
                        "{} success={} points={} ic_slope={} sim_slope={} {:?}",
                        idea.idea_id,
                        idea.success,
                        idea.trajectory.points.len(),
                        sig6(ic.slope),
                        sig6(sim.slope),
                        classify(&sim, DEFAULT_TOLERANCE)
                    ),
                    _ => println!("{} points={} (too few for a trendline)", idea.idea_id, idea.trajectory.points.len()),
                }
                if let Some(dir) = &run.out {
                    idea.trajectory.write_csv(create(&dir.join("trajectories").join(format!("{}.csv", idea.idea_id)))?)?;
                }
            }
            for (label, success) in [("successful", true), ("unsuccessful", false)] {
                match average_trajectories(&all, success, run.grid) {
                    Ok(points) => {
                        print_grid(label, &points);
                        if let Some(p) = run.out_file(&format!("average_{label}.csv")) {
                            write_grid_csv(&p, &points)?;
                        }
                    }
                    Err(Error::NoMatchingRecords(_)) => println!("{label}: no ideas"),
                    Err(e) => return Err(e),
                }
            }
        }
        Command::Backtest { ideas } => {
            let g = run.graph()?;
            let records = ingest_file(run, &g, ideas)?;
            let opts = BacktestOptions {
                config: run.measures()?,
                capacity: run.window,
                eviction: run.evict,
                grid: run.grid,
                tolerance: DEFAULT_TOLERANCE,
            };
            let report = backtest(&g, &records, &opts)?;
            let (ic, sim) = (report.ic_slopes, report.sim_slopes);
            println!("ic slopes: successful {} unsuccessful {}", sig6(ic.successful), sig6(ic.unsuccessful));
            println!("sim slopes: successful {} unsuccessful {}", sig6(sim.successful), sig6(sim.unsuccessful));
            for (name, test) in [("ic", report.ic_test), ("sim", report.sim_test)] {
                match test {
                    Some(t) => println!("{name} paired t {} P {} df {}", sig6(t.t), sig6(t.p), t.df),
                    None => println!("{name} paired t degenerate"),
                }
            }
            if let Some(dir) = &run.out {
                write_json(&dir.join("backtest.json"), &report)?;
                write_jsonl(create(&dir.join("ideas.jsonl"))?, &report.ideas)?;
                write_grid_csv(&dir.join("average_successful.csv"), &report.successful_average.points)?;
                write_grid_csv(&dir.join("average_unsuccessful.csv"), &report.unsuccessful_average.points)?;
            }
        }
        Command::Watch => {
            let g = run.graph()?;
            let exc = run.exceptions()?;
            let stdin = io::stdin();
            watch(&g, &exc, run, stdin.lock(), io::stdout().lock())?;
        }
        Command::Synth { students } => {
            let g = run.graph()?;
            let spec = FixtureSpec {
                seed: run.seed,
                students: *students,
                capacity: run.window,
                ic: run.ic,
                ..FixtureSpec::default()
            };
            let records = synthesize(&g, &spec)?;
            let path = run
                .out_file("synthetic_ideas.jsonl")
                .unwrap_or_else(|| PathBuf::from("synthetic_ideas.jsonl"));
            let segments: Vec<TranscriptSegment> = records.iter().map(TranscriptSegment::from_nouns).collect();
            write_segments(create(&path)?, &segments)?;
            println!("{} ideas written to {}", records.len(), path.display());
        }
    }
    Ok(())
}

fn is_usage_error(e: &Error) -> bool {
    matches!(e, Error::UnknownFormula(_) | Error::InvalidConfig(_))
}

/// Parses `args` and runs the command, returning the process exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { USAGE_ERROR } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    match execute(&cli) {
        Ok(()) => 0,
        // downstream reader went away, e.g. `semnet watch | head`
        Err(Error::Io { source, .. }) if source.kind() == std::io::ErrorKind::BrokenPipe => 0,
        Err(e) => {
            eprintln!("error: {e}");
            if is_usage_error(&e) {
                USAGE_ERROR
            } else {
                DATA_ERROR
            }
        }
    }
}

pub fn main() -> i32 {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    run(std::env::args_os())
}
