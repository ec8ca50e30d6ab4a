//! Noun streams from curated noun lists or raw transcript text.

use std::fs::File;
use std::io::{BufRead, BufReader, Read, Write};
use std::path::Path;
use std::process::{Command, Stdio};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::dynamics::{IdeaRecord, NounEvent};
use crate::wordnet::{LexicalGraph, MorphExceptions};
use crate::{Error, Result};

/// Suffix detachment rules for nouns, tried in this order.
pub const DETACHMENT_RULES: [(&str, &str); 8] = [
    ("s", ""),
    ("ses", "s"),
    ("xes", "x"),
    ("zes", "z"),
    ("ches", "ch"),
    ("shes", "sh"),
    ("men", "man"),
    ("ies", "y"),
];

/// Maps a raw noun token to its lexicon base form.
///
/// The token is lowercased and inner whitespace joined with underscores.
/// The exception list wins, so irregular plurals that are also lemmas
/// ("teeth") still reduce to their singular; then an exact lexicon match,
/// then the detachment rules.
pub fn normalize_noun(raw: &str, g: &LexicalGraph, exc: &MorphExceptions) -> Option<String> {
    let word = raw.trim().to_lowercase().split_whitespace().collect::<Vec<_>>().join("_");
    if word.is_empty() {
        return None;
    }
    // follow chains such as "aciculae" -> "acicula" -> "aciculum"
    let mut base = None;
    for _ in 0..8 {
        let current = base.as_ref().unwrap_or(&word);
        match exc.bases(current).iter().find(|b| *b != current && g.contains_word(b)) {
            Some(next) => base = Some(next.clone()),
            None => break,
        }
    }
    if base.is_some() {
        return base;
    }
    if g.contains_word(&word) {
        return Some(word);
    }
    DETACHMENT_RULES.iter().find_map(|(suffix, ending)| {
        let stem = word.strip_suffix(suffix)?;
        let candidate = format!("{stem}{ending}");
        (!stem.is_empty() && g.contains_word(&candidate)).then_some(candidate)
    })
}

/// Raw text of a segment: one string or a list of utterances.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Text {
    One(String),
    Many(Vec<String>),
}

impl Text {
    pub fn joined(&self) -> String {
        match self {
            Text::One(s) => s.clone(),
            Text::Many(v) => v.join("\n"),
        }
    }
}

/// One idea as stored in an idea-stream file.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TranscriptSegment {
    pub idea_id: String,
    pub student_id: String,
    pub success: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub nouns: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub text: Option<Text>,
}

impl TranscriptSegment {
    pub fn from_nouns(record: &IdeaRecord) -> Self {
        TranscriptSegment {
            idea_id: record.idea_id.clone(),
            student_id: record.student_id.clone(),
            success: record.success,
            nouns: Some(record.nouns.iter().map(|e| e.noun.clone()).collect()),
            text: None,
        }
    }
}

/// Reads an idea-stream file with one JSON segment per line.
pub fn load_segments(path: &Path) -> Result<Vec<TranscriptSegment>> {
    let file = File::open(path).map_err(|e| Error::io(path, e))?;
    let mut out = Vec::new();
    for (i, line) in BufReader::new(file).lines().enumerate() {
        let line = line.map_err(|e| Error::io(path, e))?;
        if line.trim().is_empty() {
            continue;
        }
        let seg: TranscriptSegment =
            serde_json::from_str(&line).map_err(|e| Error::malformed(path, i + 1, e.to_string()))?;
        if seg.nouns.is_some() == seg.text.is_some() {
            return Err(Error::malformed(path, i + 1, "exactly one of 'nouns' and 'text' is required"));
        }
        out.push(seg);
    }
    Ok(out)
}

pub fn write_segments(out: impl Write, segments: &[TranscriptSegment]) -> Result<()> {
    crate::output::write_jsonl(out, segments)
}

/// External part-of-speech tagger run as `sh -c COMMAND`.
///
/// The child reads raw text on stdin and writes one `token<TAB>tag` line per
/// token on stdout. Tags starting with `NN` mark nouns.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Tagger {
    pub command: String,
}

impl Tagger {
    pub fn new(command: impl Into<String>) -> Self {
        Tagger { command: command.into() }
    }

    pub fn tag(&self, text: &str) -> Result<Vec<(String, String)>> {
        let unavailable = |why: String| Error::TaggerUnavailable(format!("{}: {why}", self.command));
        let mut child = Command::new("sh")
            .arg("-c")
            .arg(&self.command)
            .stdin(Stdio::piped())
            .stdout(Stdio::piped())
            .stderr(Stdio::inherit())
            .spawn()
            .map_err(|e| unavailable(e.to_string()))?;
        let mut stdin = child.stdin.take().expect("piped stdin");
        let input = text.to_string();
        let writer = std::thread::spawn(move || stdin.write_all(input.as_bytes()));
        let mut stdout = String::new();
        child
            .stdout
            .take()
            .expect("piped stdout")
            .read_to_string(&mut stdout)
            .map_err(|e| Error::TaggerProtocolError(format!("unreadable output: {e}")))?;
        let status = child.wait().map_err(|e| unavailable(e.to_string()))?;
        // a tagger may legitimately stop reading early; only its exit status matters
        let _ = writer.join();
        if !status.success() {
            return Err(unavailable(format!("exited with {status}")));
        }
        stdout
            .lines()
            .filter(|l| !l.trim().is_empty())
            .enumerate()
            .map(|(i, l)| match l.split_once('\t') {
                Some((tok, tag)) if !tok.is_empty() && !tag.is_empty() && !tag.contains('\t') => {
                    Ok((tok.to_string(), tag.trim().to_string()))
                }
                _ => Err(Error::TaggerProtocolError(format!("line {}: expected token<TAB>tag, got {l:?}", i + 1))),
            })
            .collect()
    }
}

pub fn is_noun_tag(tag: &str) -> bool {
    tag.starts_with("NN")
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct IngestOptions {
    /// Look up adjacent noun tokens joined by an underscore as one lemma.
    pub join_bigrams: bool,
}

/// Nouns of one segment after normalisation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Extraction {
    pub events: Vec<NounEvent>,
    /// Nouns offered for normalisation.
    pub total: usize,
    /// Raw forms with no lexicon match, in order.
    pub dropped: Vec<String>,
}

fn raw_nouns(segment: &TranscriptSegment, g: &LexicalGraph, tagger: Option<&Tagger>, opts: IngestOptions) -> Result<Vec<String>> {
    if let Some(nouns) = &segment.nouns {
        return Ok(nouns.clone());
    }
    let Some(text) = &segment.text else {
        return Ok(Vec::new());
    };
    let text = text.joined();
    if text.trim().is_empty() {
        return Ok(Vec::new());
    }
    let tagger = tagger.ok_or_else(|| Error::TaggerUnavailable("segment has raw text but no tagger is configured".into()))?;
    let tokens = tagger.tag(&text)?;
    let mut out: Vec<String> = Vec::new();
    let mut i = 0;
    while i < tokens.len() {
        let (tok, tag) = &tokens[i];
        if !is_noun_tag(tag) {
            i += 1;
            continue;
        }
        if opts.join_bigrams {
            if let Some((next, _)) = tokens.get(i + 1).filter(|(_, t)| is_noun_tag(t)) {
                let joined = format!("{}_{}", tok.to_lowercase(), next.to_lowercase());
                if g.contains_word(&joined) {
                    out.push(joined);
                    i += 2;
                    continue;
                }
            }
        }
        out.push(tok.clone());
        i += 1;
    }
    Ok(out)
}

pub fn extract(
    segment: &TranscriptSegment,
    g: &LexicalGraph,
    exc: &MorphExceptions,
    tagger: Option<&Tagger>,
    opts: IngestOptions,
) -> Result<Extraction> {
    let raw = raw_nouns(segment, g, tagger, opts)?;
    let mut kept = Vec::new();
    let mut dropped = Vec::new();
    for r in &raw {
        match normalize_noun(r, g, exc) {
            Some(n) => kept.push(n),
            None => dropped.push(r.clone()),
        }
    }
    Ok(Extraction {
        events: NounEvent::sequence(&kept),
        total: raw.len(),
        dropped,
    })
}

/// Normalised noun events of a segment, numbered from 0.
pub fn extract_noun_events(
    segment: &TranscriptSegment,
    g: &LexicalGraph,
    exc: &MorphExceptions,
    tagger: Option<&Tagger>,
) -> Result<Vec<NounEvent>> {
    Ok(extract(segment, g, exc, tagger, IngestOptions::default())?.events)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CoverageReport {
    pub total_nouns: usize,
    pub in_lexicon: usize,
    pub dropped: usize,
    /// `in_lexicon / total_nouns`, or 1 when there were no nouns.
    pub coverage: f64,
    /// Set when no nouns were seen at all.
    pub empty: bool,
}

impl CoverageReport {
    pub fn from_counts(total_nouns: usize, in_lexicon: usize) -> Self {
        CoverageReport {
            total_nouns,
            in_lexicon,
            dropped: total_nouns - in_lexicon,
            coverage: if total_nouns == 0 { 1.0 } else { in_lexicon as f64 / total_nouns as f64 },
            empty: total_nouns == 0,
        }
    }
}

/// Ingests segments in parallel into idea records plus lexicon coverage.
pub fn ingest(
    segments: &[TranscriptSegment],
    g: &LexicalGraph,
    exc: &MorphExceptions,
    tagger: Option<&Tagger>,
    opts: IngestOptions,
) -> Result<(Vec<IdeaRecord>, CoverageReport)> {
    let extracted = segments
        .par_iter()
        .map(|s| extract(s, g, exc, tagger, opts))
        .collect::<Result<Vec<_>>>()?;
    let (mut total, mut kept) = (0, 0);
    let mut records = Vec::with_capacity(segments.len());
    for (seg, ex) in segments.iter().zip(extracted) {
        total += ex.total;
        kept += ex.events.len();
        if !ex.dropped.is_empty() {
            log::warn!("idea {}: dropped {} noun(s) not in lexicon: {:?}", seg.idea_id, ex.dropped.len(), ex.dropped);
        }
        records.push(IdeaRecord {
            idea_id: seg.idea_id.clone(),
            student_id: seg.student_id.clone(),
            success: seg.success,
            nouns: ex.events,
        });
    }
    let report = CoverageReport::from_counts(total, kept);
    if report.coverage < 1.0 {
        log::warn!("lexicon coverage {:.4} ({} of {} nouns dropped)", report.coverage, report.dropped, total);
    }
    Ok((records, report))
}

/// Coverage of the lexicon over all segments.
pub fn coverage(segments: &[TranscriptSegment], g: &LexicalGraph, exc: &MorphExceptions, tagger: Option<&Tagger>) -> Result<CoverageReport> {
    Ok(ingest(segments, g, exc, tagger, IngestOptions::default())?.1)
}
