//! Loader for the WordNet 3.1 noun database (`data.noun`, `index.noun`,
//! `noun.exc`).
//!
//! Only the noun subnet is read. Hypernym (`@`) and instance hypernym (`@i`)
//! pointers both become meaning edges, oriented hypernym → hyponym. Lemmas
//! are lowercased on load, so `Equus_caballus` and `equus_caballus` are the
//! same word vertex.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::fs::File;
use std::io::{BufRead, BufReader, Write};
use std::path::{Path, PathBuf};
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::csr::Csr;
use crate::graph::cache::NodeCache;
use crate::{Error, Result, ROOT_OFFSET};

/// A noun synset, identified by its 8-digit offset in `data.noun`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(into = "String", try_from = "String")]
pub struct MeaningId(pub u32);

impl MeaningId {
    pub const ROOT: MeaningId = MeaningId(ROOT_OFFSET);

    pub fn offset(self) -> u32 {
        self.0
    }
}

impl fmt::Display for MeaningId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "M{:08}", self.0)
    }
}

impl FromStr for MeaningId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let digits = s.strip_prefix('M').unwrap_or(s);
        if digits.is_empty() || digits.len() > 8 || !digits.bytes().all(|b| b.is_ascii_digit()) {
            return Err(Error::UnknownMeaning(s.to_string()));
        }
        digits
            .parse()
            .map(MeaningId)
            .map_err(|_| Error::UnknownMeaning(s.to_string()))
    }
}

impl From<MeaningId> for String {
    fn from(id: MeaningId) -> String {
        id.to_string()
    }
}

impl TryFrom<String> for MeaningId {
    type Error = Error;

    fn try_from(s: String) -> Result<Self> {
        s.parse()
    }
}

/// One parsed `data.noun` record, reduced to what the taxonomy needs.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SynsetRecord {
    pub offset: u32,
    pub lemmas: Vec<String>,
    /// Offsets of noun hypernyms (`@` and `@i`).
    pub hypernyms: Vec<u32>,
}

/// Immutable composite graph of meanings (subgraph M) and words (subgraph W).
///
/// Meanings and words are stored under dense indices. Meanings are ordered by
/// synset offset, so "lowest index" and "lowest offset" coincide; words are
/// ordered lexicographically.
pub struct LexicalGraph {
    pub(crate) offsets: Vec<u32>,
    offset_index: HashMap<u32, u32>,
    pub(crate) lemmas: Vec<String>,
    lemma_index: HashMap<String, u32>,
    /// word -> meanings
    pub(crate) senses: Csr,
    /// meaning -> words
    pub(crate) synonyms: Csr,
    /// hypernym -> hyponyms
    pub(crate) children: Csr,
    /// hyponym -> hypernyms
    pub(crate) parents: Csr,
    pub(crate) root: u32,
    pub(crate) cache: NodeCache,
    stats: GraphStats,
}

impl fmt::Debug for LexicalGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("LexicalGraph")
            .field("meanings", &self.offsets.len())
            .field("words", &self.lemmas.len())
            .field("hyper_edges", &self.children.nnz())
            .field("sense_edges", &self.senses.nnz())
            .finish()
    }
}

impl PartialEq for LexicalGraph {
    fn eq(&self, other: &Self) -> bool {
        self.offsets == other.offsets
            && self.lemmas == other.lemmas
            && self.senses == other.senses
            && self.children == other.children
            && self.root == other.root
    }
}

impl LexicalGraph {
    /// Builds and validates the graph from synset records.
    pub fn from_synsets(records: Vec<SynsetRecord>) -> Result<Self> {
        let mut offsets: Vec<u32> = records.iter().map(|r| r.offset).collect();
        offsets.sort_unstable();
        offsets.dedup();
        let offset_index: HashMap<u32, u32> = offsets
            .iter()
            .enumerate()
            .map(|(i, &o)| (o, i as u32))
            .collect();
        let root = *offset_index.get(&ROOT_OFFSET).ok_or(Error::MissingRoot)?;

        let mut lemma_set: Vec<String> = records
            .iter()
            .flat_map(|r| r.lemmas.iter().map(|l| l.to_lowercase()))
            .collect();
        lemma_set.sort_unstable();
        lemma_set.dedup();
        let lemma_index: HashMap<String, u32> = lemma_set
            .iter()
            .enumerate()
            .map(|(i, l)| (l.clone(), i as u32))
            .collect();

        let mut sense_edges = Vec::new();
        let mut hyper_edges = Vec::new();
        for r in &records {
            let m = offset_index[&r.offset];
            for lemma in &r.lemmas {
                sense_edges.push((lemma_index[&lemma.to_lowercase()], m));
            }
            for h in &r.hypernyms {
                let parent = offset_index.get(h).ok_or_else(|| Error::DanglingPointer {
                    source_offset: MeaningId(r.offset).to_string(),
                    target: MeaningId(*h).to_string(),
                })?;
                hyper_edges.push((*parent, m));
            }
        }
        let senses = Csr::from_edges(lemma_set.len(), sense_edges);
        let synonyms = senses.transpose(offsets.len());
        let children = Csr::from_edges(offsets.len(), hyper_edges);
        let parents = children.transpose(offsets.len());

        let cache = NodeCache::build(root, &children, &parents, &senses)
            .map_err(|e| e.into_error(&offsets))?;

        let mut graph = LexicalGraph {
            offsets,
            offset_index,
            lemmas: lemma_set,
            lemma_index,
            senses,
            synonyms,
            children,
            parents,
            root,
            cache,
            stats: GraphStats::default(),
        };
        graph.stats = graph.compute_stats();
        Ok(graph)
    }

    pub fn root(&self) -> MeaningId {
        MeaningId(self.offsets[self.root as usize])
    }

    pub fn meaning_count(&self) -> usize {
        self.offsets.len()
    }

    pub fn word_count(&self) -> usize {
        self.lemmas.len()
    }

    pub fn hyper_edge_count(&self) -> usize {
        self.children.nnz()
    }

    pub fn sense_edge_count(&self) -> usize {
        self.senses.nnz()
    }

    pub fn contains_word(&self, word: &str) -> bool {
        self.lemma_index.contains_key(word)
    }

    pub fn contains_meaning(&self, id: MeaningId) -> bool {
        self.offset_index.contains_key(&id.0)
    }

    /// Meanings in ascending offset order.
    pub fn meanings(&self) -> impl Iterator<Item = MeaningId> + '_ {
        self.offsets.iter().map(|&o| MeaningId(o))
    }

    /// Words in lexicographic order.
    pub fn words(&self) -> impl Iterator<Item = &str> + '_ {
        self.lemmas.iter().map(String::as_str)
    }

    /// Words attached to a meaning (its synset, lowercased).
    pub fn synset_words(&self, id: MeaningId) -> Result<Vec<&str>> {
        let m = self.meaning_index(id)?;
        Ok(self
            .synonyms
            .row(m)
            .iter()
            .map(|&w| self.lemmas[w as usize].as_str())
            .collect())
    }

    /// Direct hypernyms of a meaning.
    pub fn hypernyms(&self, id: MeaningId) -> Result<Vec<MeaningId>> {
        let m = self.meaning_index(id)?;
        Ok(self.parents.row(m).iter().map(|&p| self.meaning_id(p)).collect())
    }

    /// Direct hyponyms of a meaning.
    pub fn hyponyms(&self, id: MeaningId) -> Result<Vec<MeaningId>> {
        let m = self.meaning_index(id)?;
        Ok(self.children.row(m).iter().map(|&c| self.meaning_id(c)).collect())
    }

    pub fn stats(&self) -> &GraphStats {
        &self.stats
    }

    pub(crate) fn word_index(&self, word: &str) -> Result<u32> {
        self.lemma_index
            .get(word)
            .copied()
            .ok_or_else(|| Error::NotInLexicon(word.to_string()))
    }

    pub(crate) fn meaning_index(&self, id: MeaningId) -> Result<u32> {
        self.offset_index
            .get(&id.0)
            .copied()
            .ok_or_else(|| Error::UnknownMeaning(id.to_string()))
    }

    pub(crate) fn meaning_id(&self, m: u32) -> MeaningId {
        MeaningId(self.offsets[m as usize])
    }

    fn compute_stats(&self) -> GraphStats {
        let words = &self.cache.words;
        GraphStats {
            meaning_count: self.meaning_count(),
            word_count: self.word_count(),
            hyper_edge_count: self.hyper_edge_count(),
            sense_edge_count: self.sense_edge_count(),
            max_meaning_depth: self.cache.depth.iter().copied().max().unwrap_or(0),
            max_word_depth: words.iter().map(|p| p.depth).max().unwrap_or(0),
            max_leaves: words.iter().map(|p| p.leaves).max().unwrap_or(0),
            max_subvertices: words.iter().map(|p| p.subvertices).max().unwrap_or(0),
            min_commonness: words
                .iter()
                .map(|p| p.commonness)
                .fold(f64::INFINITY, f64::min),
            max_commonness: words.iter().map(|p| p.commonness).fold(0.0, f64::max),
        }
    }

    /// Writes the graph back out as a minimal `data.noun` / `index.noun` pair.
    ///
    /// Only lemmas (lowercased) and hypernym pointers survive; parsing the
    /// output yields a graph equal to `self`.
    pub fn write_noun_database(&self, data: &mut impl Write, index: &mut impl Write) -> std::io::Result<()> {
        for m in 0..self.offsets.len() as u32 {
            write!(data, "{:08} 03 n {:02x}", self.offsets[m as usize], self.synonyms.row(m).len())?;
            for &w in self.synonyms.row(m) {
                write!(data, " {} 0", self.lemmas[w as usize])?;
            }
            let parents = self.parents.row(m);
            write!(data, " {:03}", parents.len())?;
            for &p in parents {
                write!(data, " @ {:08} n 0000", self.offsets[p as usize])?;
            }
            writeln!(data, " | ")?;
        }
        for (w, lemma) in self.lemmas.iter().enumerate() {
            let senses = self.senses.row(w as u32);
            write!(index, "{} n {} 0 {} 0", lemma, senses.len(), senses.len())?;
            for &m in senses {
                write!(index, " {:08}", self.offsets[m as usize])?;
            }
            writeln!(index, "  ")?;
        }
        Ok(())
    }
}

/// Structural constants of a loaded taxonomy.
///
/// Word depth counts edges from the root to the word vertex, which equals the
/// vertex depth of the word's shallowest sense.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct GraphStats {
    pub meaning_count: usize,
    pub word_count: usize,
    pub hyper_edge_count: usize,
    pub sense_edge_count: usize,
    pub max_meaning_depth: u32,
    pub max_word_depth: u32,
    pub max_leaves: u32,
    pub max_subvertices: u32,
    pub min_commonness: f64,
    pub max_commonness: f64,
}

/// Published WordNet 3.1 noun-taxonomy figures used to flag parsing drift.
pub const WORDNET_31_REFERENCE: [(&str, f64); 9] = [
    ("meaning_count", 82192.0),
    ("word_count", 158441.0),
    ("hyper_edge_count", 84505.0),
    ("sense_edge_count", 189555.0),
    ("max_word_depth", 19.0),
    ("max_leaves", 65031.0),
    ("max_subvertices", 82192.0),
    ("min_commonness", 1.0 / 35.0),
    ("max_commonness", 6863.6),
];

impl GraphStats {
    fn field(&self, name: &str) -> Option<f64> {
        Some(match name {
            "meaning_count" => self.meaning_count as f64,
            "word_count" => self.word_count as f64,
            "hyper_edge_count" => self.hyper_edge_count as f64,
            "sense_edge_count" => self.sense_edge_count as f64,
            "max_word_depth" => self.max_word_depth as f64,
            "max_leaves" => self.max_leaves as f64,
            "max_subvertices" => self.max_subvertices as f64,
            "min_commonness" => self.min_commonness,
            "max_commonness" => self.max_commonness,
            _ => return None,
        })
    }

    /// `(name, actual, reference, relative delta)` for every figure whose
    /// relative difference from the WordNet 3.1 reference exceeds `tolerance`.
    pub fn reference_deltas(&self, tolerance: f64) -> Vec<(&'static str, f64, f64, f64)> {
        WORDNET_31_REFERENCE
            .iter()
            .filter_map(|&(name, reference)| {
                let actual = self.field(name)?;
                let rel = (actual - reference) / reference;
                (rel.abs() > tolerance).then_some((name, actual, reference, rel))
            })
            .collect()
    }
}

/// Statistics of a loaded graph. Deviations from the WordNet 3.1 figures are
/// logged when the graph has the full 3.1 meaning count.
pub fn graph_stats(g: &LexicalGraph) -> GraphStats {
    let stats = g.stats().clone();
    if stats.meaning_count == 82192 {
        for (name, actual, reference, rel) in stats.reference_deltas(1e-4) {
            log::warn!("{name}: {actual} differs from reference {reference} ({:+.2}%)", rel * 100.0);
        }
    }
    stats
}

fn open(path: &Path) -> Result<BufReader<File>> {
    File::open(path)
        .map(BufReader::new)
        .map_err(|e| Error::io(path, e))
}

/// Parses `data.noun` records. License header lines (leading space) are skipped.
pub fn parse_data_noun(reader: impl BufRead, path: &Path) -> Result<Vec<SynsetRecord>> {
    let mut records = Vec::new();
    for (i, line) in reader.lines().enumerate() {
        let line = line.map_err(|e| Error::io(path, e))?;
        if line.is_empty() || line.starts_with(' ') {
            continue;
        }
        records.push(parse_data_line(&line).map_err(|reason| Error::malformed(path, i + 1, reason))?);
    }
    Ok(records)
}

fn parse_data_line(line: &str) -> std::result::Result<SynsetRecord, String> {
    let body = line.split_once(" | ").map_or(line, |(b, _)| b);
    let body = body.strip_suffix(" |").unwrap_or(body);
    let mut fields = body.split_ascii_whitespace();
    let mut next = |what: &str| fields.next().ok_or_else(|| format!("missing {what}"));

    let offset_field = next("offset")?;
    let offset: u32 = offset_field
        .parse()
        .map_err(|_| format!("bad offset '{offset_field}'"))?;
    next("lex_filenum")?;
    let ss_type = next("ss_type")?;
    if ss_type != "n" {
        return Err(format!("ss_type '{ss_type}' is not a noun"));
    }
    let w_cnt_field = next("w_cnt")?;
    let w_cnt = usize::from_str_radix(w_cnt_field, 16).map_err(|_| format!("bad w_cnt '{w_cnt_field}'"))?;
    if w_cnt == 0 {
        return Err("synset without words".into());
    }
    let mut lemmas = Vec::with_capacity(w_cnt);
    for _ in 0..w_cnt {
        let word = next("word")?;
        next("lex_id")?;
        lemmas.push(word.to_lowercase());
    }
    let p_cnt_field = next("p_cnt")?;
    let p_cnt: usize = p_cnt_field.parse().map_err(|_| format!("bad p_cnt '{p_cnt_field}'"))?;
    let mut hypernyms = Vec::new();
    for _ in 0..p_cnt {
        let symbol = next("pointer_symbol")?;
        let target = next("pointer offset")?;
        let pos = next("pointer pos")?;
        next("pointer source/target")?;
        if (symbol == "@" || symbol == "@i") && pos == "n" {
            hypernyms.push(target.parse().map_err(|_| format!("bad pointer offset '{target}'"))?);
        }
    }
    Ok(SynsetRecord {
        offset,
        lemmas,
        hypernyms,
    })
}

/// `(lemma, synset offsets)` from one `index.noun` line.
fn parse_index_line(line: &str) -> std::result::Result<(String, Vec<u32>), String> {
    let fields: Vec<&str> = line.split_ascii_whitespace().collect();
    let get = |i: usize| fields.get(i).copied().ok_or_else(|| format!("missing field {}", i + 1));
    let lemma = get(0)?.to_lowercase();
    let synset_cnt: usize = get(2)?.parse().map_err(|_| "bad synset_cnt".to_string())?;
    let p_cnt: usize = get(3)?.parse().map_err(|_| "bad p_cnt".to_string())?;
    let first = 4 + p_cnt + 2;
    let offsets = (first..first + synset_cnt)
        .map(|i| get(i)?.parse().map_err(|_| format!("bad offset in field {}", i + 1)))
        .collect::<std::result::Result<Vec<u32>, String>>()?;
    if fields.len() != first + synset_cnt {
        return Err("trailing fields".into());
    }
    Ok((lemma, offsets))
}

/// Loads `data.noun`, validating it against `index.noun`.
///
/// Index entries that disagree with the data file are logged; the data file
/// is authoritative.
pub fn load_noun_database(index_path: &Path, data_path: &Path) -> Result<LexicalGraph> {
    let records = parse_data_noun(open(data_path)?, data_path)?;
    let graph = LexicalGraph::from_synsets(records)?;

    let mut mismatches = 0usize;
    for (i, line) in open(index_path)?.lines().enumerate() {
        let line = line.map_err(|e| Error::io(index_path, e))?;
        if line.is_empty() || line.starts_with(' ') {
            continue;
        }
        let (lemma, offsets) = parse_index_line(&line).map_err(|r| Error::malformed(index_path, i + 1, r))?;
        let ok = match graph.word_index(&lemma) {
            Ok(w) => {
                let mut expected: Vec<u32> = graph.senses.row(w).iter().map(|&m| graph.offsets[m as usize]).collect();
                let mut got = offsets;
                expected.sort_unstable();
                got.sort_unstable();
                expected == got
            }
            Err(_) => false,
        };
        if !ok {
            mismatches += 1;
            log::debug!("index.noun entry '{lemma}' disagrees with data.noun");
        }
    }
    if mismatches > 0 {
        log::warn!("{mismatches} index.noun entries disagree with data.noun");
    }
    Ok(graph)
}

/// Loads `index.noun` and `data.noun` from a WordNet `dict` directory.
pub fn load_dict_dir(dir: &Path) -> Result<LexicalGraph> {
    load_noun_database(&dir.join("index.noun"), &dir.join("data.noun"))
}

/// Inflected noun forms mapped to their base forms (`noun.exc`).
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct MorphExceptions {
    map: BTreeMap<String, Vec<String>>,
}

impl MorphExceptions {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn insert(&mut self, inflected: &str, base: &str) {
        let bases = self.map.entry(inflected.to_string()).or_default();
        if !bases.iter().any(|b| b == base) {
            bases.push(base.to_string());
        }
    }

    pub fn bases(&self, inflected: &str) -> &[String] {
        self.map.get(inflected).map_or(&[], Vec::as_slice)
    }

    pub fn len(&self) -> usize {
        self.map.len()
    }

    pub fn is_empty(&self) -> bool {
        self.map.is_empty()
    }

    pub fn parse(reader: impl BufRead, path: &Path) -> Result<Self> {
        let mut exc = Self::new();
        for (i, line) in reader.lines().enumerate() {
            let line = line.map_err(|e| Error::io(path, e))?;
            let mut fields = line.split_ascii_whitespace();
            let Some(inflected) = fields.next() else {
                continue;
            };
            let bases: Vec<&str> = fields.collect();
            if bases.is_empty() {
                return Err(Error::malformed(path, i + 1, "exception without base form"));
            }
            for base in bases {
                exc.insert(&inflected.to_lowercase(), &base.to_lowercase());
            }
        }
        Ok(exc)
    }
}

/// Parses a `noun.exc` file.
pub fn load_exceptions(path: &Path) -> Result<MorphExceptions> {
    MorphExceptions::parse(open(path)?, path)
}

/// Parses `noun.exc` from a WordNet `dict` directory.
pub fn load_dict_exceptions(dir: &Path) -> Result<MorphExceptions> {
    load_exceptions(&dir.join("noun.exc"))
}

/// Resolves the WordNet directory from an explicit path, the
/// `SEMNET_WORDNET_DIR` variable, or `data/wordnet-3.1` under the current
/// directory, in that order.
pub fn resolve_dict_dir(explicit: Option<&Path>) -> PathBuf {
    if let Some(p) = explicit {
        return p.to_path_buf();
    }
    if let Some(p) = std::env::var_os(crate::WORDNET_DIR_ENV) {
        return PathBuf::from(p);
    }
    PathBuf::from("data/wordnet-3.1")
}
