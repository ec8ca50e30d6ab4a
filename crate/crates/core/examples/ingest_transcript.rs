//! Normalises raw nouns and tags raw text through an external tagger.
//!
//! The default tagger is a small shell stand-in that marks every token as a
//! plural or singular noun by its ending; any command honouring the
//! `token<TAB>tag` protocol can replace it.

use semnet::ingest::{extract, normalize_noun, IngestOptions, Tagger, Text, TranscriptSegment};
use semnet::wordnet::{load_dict_dir, load_dict_exceptions, resolve_dict_dir};

const STAND_IN: &str = r#"tr -s ' ' '\n' | awk 'NF { print $0 "\t" ($0 ~ /s$/ ? "NNS" : "NN") }'"#;

fn main() -> semnet::Result<()> {
    let dir = resolve_dict_dir(None);
    let g = load_dict_dir(&dir)?;
    let exc = load_dict_exceptions(&dir)?;
    for raw in ["Horses", "teeth", "shelves", "churches", "women", "cities", "asdfgh"] {
        println!("{raw:<10} -> {:?}", normalize_noun(raw, &g, &exc));
    }

    let command = std::env::args().nth(1).unwrap_or_else(|| STAND_IN.to_string());
    let segment = TranscriptSegment {
        idea_id: "demo".into(),
        student_id: "s1".into(),
        success: true,
        nouns: None,
        text: Some(Text::One("storage shelves storage space ice cream qwzx".into())),
    };
    let ex = extract(&segment, &g, &exc, Some(&Tagger::new(command)), IngestOptions { join_bigrams: true })?;
    let nouns: Vec<&str> = ex.events.iter().map(|e| e.noun.as_str()).collect();
    println!("events {nouns:?}, dropped {:?}", ex.dropped);
    Ok(())
}
