//! Taxonomy queries over the composite graph.
//!
//! Word arguments are answered in the composed view the query calls for:
//! words hang below their senses for subsumers and depth, above them for
//! subvertices and leaves, and as undirected endpoints for shortest paths.
//! Word vertices never appear in returned meaning sets.

pub(crate) mod cache;
mod view;

use std::collections::VecDeque;

use fixedbitset::FixedBitSet;
use serde::{Deserialize, Serialize};

use crate::csr::intersection_len;
use crate::wordnet::{LexicalGraph, MeaningId};
use crate::{Error, Result};

pub use view::{GraphView, MeaningEdges, Node, WordEdges};

/// A query vertex: a meaning or a word.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Vertex<'a> {
    Meaning(MeaningId),
    Word(&'a str),
}

impl<'a> From<&'a str> for Vertex<'a> {
    fn from(w: &'a str) -> Self {
        Vertex::Word(w)
    }
}

impl<'a> From<&'a String> for Vertex<'a> {
    fn from(w: &'a String) -> Self {
        Vertex::Word(w)
    }
}

impl From<MeaningId> for Vertex<'_> {
    fn from(m: MeaningId) -> Self {
        Vertex::Meaning(m)
    }
}

/// Structural quantities of a vertex that the information content formulas
/// consume.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct TaxonomyProfile {
    /// Depth: vertices from the root for a meaning, edges from the root for
    /// a word (the vertex depth of its shallowest sense).
    pub depth: u32,
    /// Number of meaning subsumers.
    pub subsumers: u32,
    /// Number of meaning subvertices.
    pub subvertices: u32,
    /// Number of leaves among the subvertices.
    pub leaves: u32,
    /// Sum over leaves of the reciprocal size of their subsumer sets.
    pub commonness: f64,
    /// Sum over meaning hyponyms of reciprocal depth.
    pub hyponym_inverse_depth_sum: f64,
}

/// Lowest common subsumer of a word pair.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Lcs {
    pub meaning: MeaningId,
    /// Depth of the subsumer within subgraph M.
    pub depth: u32,
    /// Meaning edges on the shortest route w1 → K → w2 (the two word edges
    /// are not counted).
    pub path_length: u32,
}

/// Subsumer-set sizes of a word pair.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SubsumerOverlap {
    pub first: usize,
    pub second: usize,
    pub common: usize,
}

impl SubsumerOverlap {
    pub fn union(&self) -> usize {
        self.first + self.second - self.common
    }
}

enum Resolved {
    Meaning(u32),
    Word(u32),
}

impl LexicalGraph {
    fn resolve(&self, v: Vertex<'_>) -> Result<Resolved> {
        Ok(match v {
            Vertex::Meaning(id) => Resolved::Meaning(self.meaning_index(id)?),
            Vertex::Word(w) => Resolved::Word(self.word_index(w)?),
        })
    }

    fn ids(&self, dense: impl IntoIterator<Item = u32>) -> Vec<MeaningId> {
        dense.into_iter().map(|m| self.meaning_id(m)).collect()
    }

    fn start_set<'a>(&'a self, r: &'a Resolved) -> &'a [u32] {
        match r {
            Resolved::Meaning(m) => std::slice::from_ref(m),
            Resolved::Word(w) => self.senses.row(*w),
        }
    }

    pub(crate) fn word_senses(&self, w: u32) -> &[u32] {
        self.senses.row(w)
    }

    /// Senses of a word, ascending by offset.
    pub fn adjacent_meanings(&self, word: &str) -> Result<Vec<MeaningId>> {
        let w = self.word_index(word)?;
        Ok(self.ids(self.senses.row(w).iter().copied()))
    }

    /// All meanings with a directed path to `v`; a meaning is its own
    /// subsumer.
    pub fn subsumers<'a>(&self, v: impl Into<Vertex<'a>>) -> Result<Vec<MeaningId>> {
        let row = match self.resolve(v.into())? {
            Resolved::Meaning(m) => self.cache.ancestors.row(m),
            Resolved::Word(w) => self.cache.word_subsumers.row(w),
        };
        Ok(self.ids(row.iter().copied()))
    }

    /// All meanings reachable from `v`; a meaning is its own subvertex.
    pub fn subvertices<'a>(&self, v: impl Into<Vertex<'a>>) -> Result<Vec<MeaningId>> {
        let r = self.resolve(v.into())?;
        let mut visited = FixedBitSet::with_capacity(self.meaning_count());
        let members = cache::descendants(self.start_set(&r), &self.children, &mut visited);
        Ok(self.ids(members))
    }

    /// Subvertices of a word that are not its direct senses.
    pub fn hyponyms_of_word(&self, word: &str) -> Result<Vec<MeaningId>> {
        let w = self.word_index(word)?;
        let senses = self.senses.row(w);
        let mut visited = FixedBitSet::with_capacity(self.meaning_count());
        let members = cache::descendants(senses, &self.children, &mut visited);
        Ok(self.ids(members.into_iter().filter(|m| senses.binary_search(m).is_err())))
    }

    /// Subvertices without outgoing hypernym edges.
    pub fn leaves<'a>(&self, v: impl Into<Vertex<'a>>) -> Result<Vec<MeaningId>> {
        let r = self.resolve(v.into())?;
        let mut visited = FixedBitSet::with_capacity(self.meaning_count());
        let members = cache::descendants(self.start_set(&r), &self.children, &mut visited);
        Ok(self.ids(members.into_iter().filter(|&m| self.children.row(m).is_empty())))
    }

    /// Depth in the taxonomy. The root meaning has depth 1; a word's depth
    /// is the number of edges from the root to the word vertex.
    pub fn depth<'a>(&self, v: impl Into<Vertex<'a>>) -> Result<u32> {
        Ok(self.profile(v)?.depth)
    }

    pub fn commonness<'a>(&self, v: impl Into<Vertex<'a>>) -> Result<f64> {
        Ok(self.profile(v)?.commonness)
    }

    pub fn profile<'a>(&self, v: impl Into<Vertex<'a>>) -> Result<TaxonomyProfile> {
        Ok(match self.resolve(v.into())? {
            Resolved::Meaning(m) => self.cache.meanings[m as usize].clone(),
            Resolved::Word(w) => self.cache.words[w as usize].clone(),
        })
    }

    pub(crate) fn meaning_profile(&self, m: u32) -> &TaxonomyProfile {
        &self.cache.meanings[m as usize]
    }

    pub(crate) fn word_profile(&self, w: u32) -> &TaxonomyProfile {
        &self.cache.words[w as usize]
    }

    fn distinct_pair(&self, w1: &str, w2: &str) -> Result<(u32, u32)> {
        let a = self.word_index(w1)?;
        let b = self.word_index(w2)?;
        if a == b {
            return Err(Error::SelfPair(w1.to_string()));
        }
        Ok((a, b))
    }

    pub fn subsumer_overlap(&self, w1: &str, w2: &str) -> Result<SubsumerOverlap> {
        let (a, b) = self.distinct_pair(w1, w2)?;
        Ok(self.subsumer_overlap_dense(a, b))
    }

    pub(crate) fn subsumer_overlap_dense(&self, a: u32, b: u32) -> SubsumerOverlap {
        let sa = self.cache.word_subsumers.row(a);
        let sb = self.cache.word_subsumers.row(b);
        SubsumerOverlap {
            first: sa.len(),
            second: sb.len(),
            common: intersection_len(sa, sb),
        }
    }

    /// Shortest undirected path between two words, in meaning edges (the
    /// two word edges at the ends are not counted).
    pub fn word_distance(&self, w1: &str, w2: &str) -> Result<u32> {
        let (a, b) = self.distinct_pair(w1, w2)?;
        self.word_distance_dense(a, b)
            .ok_or_else(|| Error::Disconnected(w1.to_string(), w2.to_string()))
    }

    pub(crate) fn word_distance_dense(&self, a: u32, b: u32) -> Option<u32> {
        let n = self.meaning_count();
        let targets = self.senses.row(b);
        let mut dist = vec![u32::MAX; n];
        let mut queue = VecDeque::new();
        for &s in self.senses.row(a) {
            if targets.binary_search(&s).is_ok() {
                return Some(0);
            }
            dist[s as usize] = 0;
            queue.push_back(s);
        }
        while let Some(m) = queue.pop_front() {
            let d = dist[m as usize] + 1;
            for &next in self.children.row(m).iter().chain(self.parents.row(m)) {
                if dist[next as usize] == u32::MAX {
                    if targets.binary_search(&next).is_ok() {
                        return Some(d);
                    }
                    dist[next as usize] = d;
                    queue.push_back(next);
                }
            }
        }
        None
    }

    /// Directed distance from every subsumer of a word down to the word
    /// vertex, as sorted `(meaning, edges)` pairs.
    pub(crate) fn distances_to_word(&self, w: u32) -> Vec<(u32, u32)> {
        let subsumers = self.cache.word_subsumers.row(w);
        let mut dist = vec![u32::MAX; subsumers.len()];
        let slot = |m: u32| subsumers.binary_search(&m).expect("ancestor closure");
        let mut queue = VecDeque::new();
        for &s in self.senses.row(w) {
            dist[slot(s)] = 1;
            queue.push_back(s);
        }
        while let Some(m) = queue.pop_front() {
            let d = dist[slot(m)] + 1;
            for &p in self.parents.row(m) {
                let i = slot(p);
                if dist[i] == u32::MAX {
                    dist[i] = d;
                    queue.push_back(p);
                }
            }
        }
        subsumers.iter().copied().zip(dist).collect()
    }

    /// Lowest common subsumer: among common subsumers minimising the summed
    /// directed distance to both words, the deepest, then the lowest offset.
    pub fn lcs(&self, w1: &str, w2: &str) -> Result<Lcs> {
        let (a, b) = self.distinct_pair(w1, w2)?;
        self.lcs_dense(a, b)
            .ok_or_else(|| Error::Disconnected(w1.to_string(), w2.to_string()))
    }

    pub(crate) fn lcs_dense(&self, a: u32, b: u32) -> Option<Lcs> {
        let da = self.distances_to_word(a);
        let db = self.distances_to_word(b);
        let (mut i, mut j) = (0, 0);
        let mut best: Option<(u32, std::cmp::Reverse<u32>, u32)> = None;
        while i < da.len() && j < db.len() {
            match da[i].0.cmp(&db[j].0) {
                std::cmp::Ordering::Less => i += 1,
                std::cmp::Ordering::Greater => j += 1,
                std::cmp::Ordering::Equal => {
                    let m = da[i].0;
                    let key = (da[i].1 + db[j].1, std::cmp::Reverse(self.cache.depth[m as usize]), m);
                    if best.is_none_or(|b| key < b) {
                        best = Some(key);
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        best.map(|(sum, std::cmp::Reverse(depth), m)| Lcs {
            meaning: self.meaning_id(m),
            depth,
            path_length: sum - 2,
        })
    }
}
