//! Writes the seeded synthetic idea-stream fixture.
//!
//! ```text
//! cargo run --release --example make_fixture [SEED] [OUT]
//! ```

use std::path::PathBuf;

use semnet::dynamics::fixture::{synthesize, FixtureSpec};
use semnet::ingest::{write_segments, TranscriptSegment};
use semnet::wordnet::{load_dict_dir, resolve_dict_dir};

fn main() -> semnet::Result<()> {
    env_logger::init();
    let g = load_dict_dir(&resolve_dict_dir(None))?;
    let mut args = std::env::args().skip(1);
    let mut spec = FixtureSpec::default();
    if let Some(seed) = args.next() {
        spec.seed = seed.parse().expect("seed must be an integer");
    }
    let out = args.next().map_or_else(|| PathBuf::from("data/fixtures/synthetic_ideas.jsonl"), PathBuf::from);
    let records = synthesize(&g, &spec)?;
    let segments: Vec<TranscriptSegment> = records.iter().map(TranscriptSegment::from_nouns).collect();
    write_segments(semnet::output::create(&out)?, &segments)?;
    let successful = records.iter().filter(|r| r.success).count();
    println!(
        "wrote {} ideas ({} successful, {} unsuccessful) from {} students to {}",
        records.len(),
        successful,
        records.len() - successful,
        spec.students,
        out.display()
    );
    Ok(())
}
