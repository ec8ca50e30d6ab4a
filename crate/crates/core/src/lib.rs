//! Semantic network analytics over the WordNet 3.1 noun taxonomy.
//!
//! The crate is organised bottom-up:
//!
//! * [`wordnet`] parses the flat-file noun database into an immutable
//!   [`LexicalGraph`] of meaning vertices, word vertices, hypernym edges and
//!   sense edges.
//! * [`graph`] answers taxonomy queries (subsumers, subvertices, leaves,
//!   depth, shortest word distance, lowest common subsumer, commonness) over
//!   composed views of that graph.
//! * [`measures`] turns those primitives into normalised information content
//!   and 46 word-pair similarity measures.
//! * [`rg65`] correlates every measure with human similarity ratings and
//!   clusters the measures by correlation distance.
//! * [`dynamics`] slides a window of distinct nouns over a conversation and
//!   fits trendlines to the resulting information content and similarity
//!   trajectories.
//! * [`ingest`] normalises raw nouns or tagged transcripts into noun streams.
//! * [`cli`] wires everything into the `semnet` executable.

pub mod cli;
pub mod dynamics;
mod csr;
mod error;
pub mod graph;
pub mod ingest;
pub mod measures;
pub mod output;
pub mod rg65;
pub mod wordnet;

pub use error::{Error, Result};
pub use graph::{Lcs, TaxonomyProfile, Vertex};
pub use measures::{IcFormula, MeasureConfig, SimFormula};
pub use wordnet::{GraphStats, LexicalGraph, MeaningId, MorphExceptions};

/// Offset of the `{entity}` synset, the root of the noun taxonomy.
pub const ROOT_OFFSET: u32 = 1740;

/// Environment variable consulted for the WordNet dictionary directory.
pub const WORDNET_DIR_ENV: &str = "SEMNET_WORDNET_DIR";
