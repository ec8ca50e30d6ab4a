//! Loads the noun taxonomy and prints its global statistics next to the
//! WordNet 3.1 reference values.
//!
//! ```text
//! cargo run --release --example load_stats [WORDNET_DIR]
//! ```

use std::path::PathBuf;
use std::time::Instant;

use semnet::wordnet::{graph_stats, load_dict_dir, resolve_dict_dir};

fn main() -> semnet::Result<()> {
    env_logger::init();
    let dir = resolve_dict_dir(std::env::args().nth(1).map(PathBuf::from).as_deref());
    let start = Instant::now();
    let g = load_dict_dir(&dir)?;
    println!("loaded {} in {:.2?}", dir.display(), start.elapsed());

    let stats = graph_stats(&g);
    println!("{}", serde_json::to_string_pretty(&stats)?);
    println!("\nquantity               measured     reference    delta");
    for (name, measured, reference, delta) in stats.reference_deltas(0.0) {
        println!("{name:<22} {measured:<12} {reference:<12} {delta:+.4}");
    }
    Ok(())
}
