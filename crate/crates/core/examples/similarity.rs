//! Every similarity measure for one word pair.
//!
//! ```text
//! cargo run --release --example similarity [WORD1 WORD2]
//! ```

use semnet::measures::PairEvaluator;
use semnet::output::sig6;
use semnet::wordnet::{load_dict_dir, resolve_dict_dir};
use semnet::SimFormula;

fn main() -> semnet::Result<()> {
    let g = load_dict_dir(&resolve_dict_dir(None))?;
    let args: Vec<String> = std::env::args().skip(1).collect();
    let (w1, w2) = match &args[..] {
        [a, b] => (a.as_str(), b.as_str()),
        _ => ("car", "automobile"),
    };
    let pair = PairEvaluator::new(&g, w1, w2)?;
    println!("{w1} / {w2}: distance {}, lcs {}", pair.distance()?, pair.lcs()?.meaning);
    for f in SimFormula::all() {
        match pair.similarity(f) {
            Ok(v) => println!("{:<28} {}", f.to_string(), sig6(v)),
            Err(e) => println!("{:<28} error: {e}", f.to_string()),
        }
    }
    Ok(())
}
