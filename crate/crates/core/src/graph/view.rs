//! Composed views of subgraph M with word edges extracted from subgraph W.
//!
//! A view is a plain adjacency-list walk over the base graph with the
//! reversal (R) and undirection (U) operators applied on the fly. It is the
//! slow, literal route; the cached queries on [`LexicalGraph`] give the same
//! answers.

use std::collections::{HashMap, VecDeque};

use crate::wordnet::{LexicalGraph, MeaningId};
use crate::Result;

/// Dense vertex handle in a view.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Node {
    Meaning(u32),
    Word(u32),
}

/// Orientation of the extracted word edges.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum WordEdges {
    /// W as stored: word → meaning.
    WordToMeaning,
    /// R(W): meaning → word, words hang below their senses.
    MeaningToWord,
    /// U(W).
    Undirected,
}

/// Orientation of the hypernym edges.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MeaningEdges {
    /// M as stored: hypernym → hyponym.
    Directed,
    /// U(M).
    Undirected,
}

pub struct GraphView<'g> {
    base: &'g LexicalGraph,
    words: Vec<u32>,
    word_edges: WordEdges,
    meaning_edges: MeaningEdges,
}

impl<'g> GraphView<'g> {
    /// `M` (or `U(M)`) plus the word edges incident to `include`.
    pub fn new(base: &'g LexicalGraph, include: &[&str], word_edges: WordEdges, meaning_edges: MeaningEdges) -> Result<Self> {
        let mut words = include
            .iter()
            .map(|w| base.word_index(w))
            .collect::<Result<Vec<_>>>()?;
        words.sort_unstable();
        words.dedup();
        Ok(GraphView {
            base,
            words,
            word_edges,
            meaning_edges,
        })
    }

    pub fn meaning_node(&self, id: MeaningId) -> Result<Node> {
        self.base.meaning_index(id).map(Node::Meaning)
    }

    pub fn word_node(&self, word: &str) -> Result<Node> {
        self.base.word_index(word).map(Node::Word)
    }

    fn includes(&self, w: u32) -> bool {
        self.words.binary_search(&w).is_ok()
    }

    fn attached_words(&self, m: u32) -> impl Iterator<Item = Node> + '_ {
        self.base
            .synonyms
            .row(m)
            .iter()
            .copied()
            .filter(move |&w| self.includes(w))
            .map(Node::Word)
    }

    fn neighbors(&self, node: Node, forward: bool) -> Vec<Node> {
        let g = self.base;
        let mut out = Vec::new();
        match node {
            Node::Meaning(m) => {
                let undirected = self.meaning_edges == MeaningEdges::Undirected;
                if forward || undirected {
                    out.extend(g.children.row(m).iter().map(|&c| Node::Meaning(c)));
                }
                if !forward || undirected {
                    out.extend(g.parents.row(m).iter().map(|&p| Node::Meaning(p)));
                }
                let words_below = match self.word_edges {
                    WordEdges::MeaningToWord => forward,
                    WordEdges::WordToMeaning => !forward,
                    WordEdges::Undirected => true,
                };
                if words_below {
                    out.extend(self.attached_words(m));
                }
            }
            Node::Word(w) => {
                let senses_reachable = match self.word_edges {
                    WordEdges::WordToMeaning => forward,
                    WordEdges::MeaningToWord => !forward,
                    WordEdges::Undirected => true,
                };
                if self.includes(w) && senses_reachable {
                    out.extend(g.senses.row(w).iter().map(|&m| Node::Meaning(m)));
                }
            }
        }
        out
    }

    pub fn out_neighbors(&self, node: Node) -> Vec<Node> {
        self.neighbors(node, true)
    }

    pub fn in_neighbors(&self, node: Node) -> Vec<Node> {
        self.neighbors(node, false)
    }

    fn bfs(&self, start: Node, forward: bool) -> HashMap<Node, u32> {
        let mut dist = HashMap::from([(start, 0)]);
        let mut queue = VecDeque::from([start]);
        while let Some(n) = queue.pop_front() {
            let d = dist[&n] + 1;
            for next in self.neighbors(n, forward) {
                dist.entry(next).or_insert_with(|| {
                    queue.push_back(next);
                    d
                });
            }
        }
        dist
    }

    /// Unweighted shortest-path distances from `start` along edge direction.
    pub fn distances_from(&self, start: Node) -> HashMap<Node, u32> {
        self.bfs(start, true)
    }

    /// Distances from every vertex that can reach `target`.
    pub fn distances_to(&self, target: Node) -> HashMap<Node, u32> {
        self.bfs(target, false)
    }

    pub fn distance(&self, from: Node, to: Node) -> Option<u32> {
        self.distances_from(from).get(&to).copied()
    }

    /// Meanings with a finite path from `node`, ascending by offset.
    pub fn meaning_subvertices(&self, node: Node) -> Vec<MeaningId> {
        self.meanings_of(self.distances_from(node).into_keys())
    }

    /// Meanings with a finite path to `node`, ascending by offset.
    pub fn meaning_subsumers(&self, node: Node) -> Vec<MeaningId> {
        self.meanings_of(self.distances_to(node).into_keys())
    }

    fn meanings_of(&self, nodes: impl Iterator<Item = Node>) -> Vec<MeaningId> {
        let mut dense: Vec<u32> = nodes
            .filter_map(|n| match n {
                Node::Meaning(m) => Some(m),
                Node::Word(_) => None,
            })
            .collect();
        dense.sort_unstable();
        dense.into_iter().map(|m| self.base.meaning_id(m)).collect()
    }

    /// Out-degree counting only meaning → meaning edges.
    pub fn meaning_out_degree(&self, node: Node) -> usize {
        self.out_neighbors(node)
            .into_iter()
            .filter(|n| matches!(n, Node::Meaning(_)))
            .count()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::wordnet::SynsetRecord;

    fn chain() -> LexicalGraph {
        let rec = |offset, lemma: &str, h: &[u32]| SynsetRecord {
            offset,
            lemmas: vec![lemma.to_string()],
            hypernyms: h.to_vec(),
        };
        LexicalGraph::from_synsets(vec![rec(1740, "entity", &[]), rec(5, "thing", &[1740]), rec(6, "widget", &[5])]).unwrap()
    }

    #[test]
    fn empty_word_set_is_plain_m() {
        let g = chain();
        let v = GraphView::new(&g, &[], WordEdges::MeaningToWord, MeaningEdges::Directed).unwrap();
        let root = v.meaning_node(MeaningId::ROOT).unwrap();
        assert_eq!(v.meaning_subvertices(root).len(), 3);
        assert!(v.out_neighbors(root).iter().all(|n| matches!(n, Node::Meaning(_))));
    }

    #[test]
    fn reversed_word_edges_hang_words_below() {
        let g = chain();
        let v = GraphView::new(&g, &["widget"], WordEdges::MeaningToWord, MeaningEdges::Directed).unwrap();
        let root = v.meaning_node(MeaningId::ROOT).unwrap();
        let w = v.word_node("widget").unwrap();
        assert_eq!(v.distance(root, w), Some(3));
        assert_eq!(v.meaning_subsumers(w).len(), 3);
        // words outside the extraction set are not vertices of the view
        let other = v.word_node("thing").unwrap();
        assert_eq!(v.distance(root, other), None);
    }

    #[test]
    fn undirected_view_connects_words() {
        let g = chain();
        let v = GraphView::new(&g, &["entity", "widget"], WordEdges::Undirected, MeaningEdges::Undirected).unwrap();
        let a = v.word_node("widget").unwrap();
        let b = v.word_node("entity").unwrap();
        assert_eq!(v.distance(a, b), Some(4));
        assert_eq!(v.distance(b, a), Some(4));
    }
}
