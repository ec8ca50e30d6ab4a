//! Shortest word distance, lowest common subsumer and polysemy, using the
//! workspace/yellow and horse examples.

use semnet::measures::polysemy;
use semnet::wordnet::{load_dict_dir, resolve_dict_dir};

fn main() -> semnet::Result<()> {
    let g = load_dict_dir(&resolve_dict_dir(None))?;

    let (a, b) = ("workspace", "yellow");
    let lcs = g.lcs(a, b)?;
    println!("distance({a}, {b}) = {}", g.word_distance(a, b)?);
    println!("lcs({a}, {b}) = {} {:?} at depth {}", lcs.meaning, g.synset_words(lcs.meaning)?, lcs.depth);
    println!("meaning edges through the lcs = {}", lcs.path_length);

    for w in [a, b] {
        let chain: Vec<String> = g.subsumers(w)?.iter().map(|m| m.to_string()).collect();
        println!("subsumers of {w}: {}", chain.join(" "));
    }

    println!("\npolysemy(horse) = {}", polysemy(&g, "horse")?);
    for m in g.adjacent_meanings("horse")? {
        println!("  {m} {:?}", g.synset_words(m)?);
    }
    Ok(())
}
