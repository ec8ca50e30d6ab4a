//! Intrinsic information content of a few words under every IC formula.
//!
//! ```text
//! cargo run --release --example information_content [WORD ...]
//! ```

use semnet::measures::information_content;
use semnet::wordnet::{load_dict_dir, resolve_dict_dir};
use semnet::IcFormula;

fn main() -> semnet::Result<()> {
    let g = load_dict_dir(&resolve_dict_dir(None))?;
    let mut words: Vec<String> = std::env::args().skip(1).collect();
    if words.is_empty() {
        words = ["entity", "object", "animal", "horse", "workspace", "yellow"].map(String::from).to_vec();
    }
    print!("{:<12}", "word");
    for f in IcFormula::ALL {
        print!("{:>15}", f.id());
    }
    println!();
    for w in &words {
        print!("{w:<12}");
        for f in IcFormula::ALL {
            print!("{:>15}", semnet::output::sig6(information_content(&g, w.as_str(), f)?));
        }
        let p = g.profile(w.as_str())?;
        println!("   depth {} leaves {} subsumers {}", p.depth, p.leaves, p.subsumers);
    }
    Ok(())
}
