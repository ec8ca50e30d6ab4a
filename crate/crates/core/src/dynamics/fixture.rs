//! Seeded synthetic idea streams with a known dynamic pattern.
//!
//! A *cluster* pool holds general sibling nouns (low information content,
//! high mutual similarity); a *scatter* pool holds deep leaf nouns drawn from
//! anywhere in the taxonomy (high information content, low similarity).
//! Successful ideas start in a cluster and drift into scattered nouns;
//! unsuccessful ideas do the reverse. Every window step therefore swaps a
//! low-IC member for a high-IC one or vice versa, which makes mean IC
//! monotone along each stream.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{IdeaRecord, NounEvent};
use crate::measures::{information_content, IcFormula};
use crate::wordnet::LexicalGraph;
use crate::{Error, MeaningId, Result};

#[derive(Debug, Clone, PartialEq)]
pub struct FixtureSpec {
    pub seed: u64,
    pub students: usize,
    /// Unsuccessful ideas per student, drawn uniformly from this range.
    pub unsuccessful_per_student: (usize, usize),
    pub capacity: usize,
    pub ic: IcFormula,
    /// Cluster nouns have IC at most this.
    pub cluster_ic_max: f64,
    /// Scatter nouns have IC at least this.
    pub scatter_ic_min: f64,
    /// Chance of repeating a current window member after each step.
    pub repeat_chance: f64,
}

impl Default for FixtureSpec {
    fn default() -> Self {
        FixtureSpec {
            seed: 7,
            students: 12,
            unsuccessful_per_student: (2, 5),
            capacity: 6,
            ic: IcFormula::SanchezBatet,
            cluster_ic_max: 0.7,
            scatter_ic_min: 0.95,
            repeat_chance: 0.25,
        }
    }
}

fn plain_monosemous(g: &LexicalGraph, id: MeaningId) -> Vec<&str> {
    g.synset_words(id)
        .unwrap_or_default()
        .into_iter()
        .filter(|w| w.chars().all(|c| c.is_ascii_lowercase()) && w.len() > 2)
        .filter(|w| g.adjacent_meanings(w).is_ok_and(|s| s.len() == 1))
        .collect()
}

fn ic(g: &LexicalGraph, w: &str, f: IcFormula) -> f64 {
    information_content(g, w, f).expect("lexicon word")
}

/// Sibling groups: for each meaning, the qualifying nouns among its children.
fn cluster_groups<'g>(g: &'g LexicalGraph, spec: &FixtureSpec) -> Vec<Vec<&'g str>> {
    let mut groups = Vec::new();
    for m in g.meanings() {
        let children = g.hyponyms(m).unwrap_or_default();
        if children.len() < spec.capacity {
            continue;
        }
        let mut group: Vec<&str> = Vec::new();
        for c in children {
            if let Some(w) = plain_monosemous(g, c).into_iter().find(|w| ic(g, w, spec.ic) <= spec.cluster_ic_max) {
                group.push(w);
            }
        }
        if group.len() >= spec.capacity {
            groups.push(group);
        }
    }
    groups
}

fn scatter_pool<'g>(g: &'g LexicalGraph, spec: &FixtureSpec) -> Vec<&'g str> {
    let mut pool = Vec::new();
    for m in g.meanings() {
        if !g.hyponyms(m).unwrap_or_default().is_empty() {
            continue;
        }
        if let Some(w) = plain_monosemous(g, m).into_iter().find(|w| ic(g, w, spec.ic) >= spec.scatter_ic_min) {
            pool.push(w);
        }
    }
    pool
}

/// Fills with `first`, then walks through `second`, one new noun per step,
/// sprinkling repeats of current members.
fn stream(first: &[&str], second: &[&str], capacity: usize, repeat_chance: f64, rng: &mut ChaCha8Rng) -> Vec<String> {
    let mut out: Vec<String> = Vec::new();
    let mut window: Vec<&str> = Vec::new();
    for &w in first.iter().chain(second) {
        out.push(w.to_string());
        window.push(w);
        if window.len() > capacity {
            window.remove(0);
        }
        if rng.gen_bool(repeat_chance) {
            out.push(window.choose(rng).expect("nonempty").to_string());
        }
    }
    out
}

/// Generates the idea records described by `spec`.
pub fn synthesize(g: &LexicalGraph, spec: &FixtureSpec) -> Result<Vec<IdeaRecord>> {
    let groups = cluster_groups(g, spec);
    let scatter = scatter_pool(g, spec);
    if groups.is_empty() || scatter.len() < 2 * spec.capacity {
        return Err(Error::InsufficientData(format!(
            "{} cluster groups and {} scatter nouns available",
            groups.len(),
            scatter.len()
        )));
    }
    log::info!("fixture pools: {} cluster groups, {} scatter nouns", groups.len(), scatter.len());
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    let k = spec.capacity;
    let mut records = Vec::new();
    let draw = |rng: &mut ChaCha8Rng| -> (Vec<&str>, Vec<&str>) {
        let group = groups.choose(rng).expect("nonempty");
        let cluster: Vec<&str> = group.choose_multiple(rng, k).copied().collect();
        let scattered: Vec<&str> = scatter.choose_multiple(rng, k).copied().collect();
        (cluster, scattered)
    };
    for s in 0..spec.students {
        let student_id = format!("s{:02}", s + 1);
        let (cluster, scattered) = draw(&mut rng);
        records.push(IdeaRecord {
            idea_id: format!("{student_id}-success"),
            student_id: student_id.clone(),
            success: true,
            nouns: NounEvent::sequence(&stream(&cluster, &scattered, k, spec.repeat_chance, &mut rng)),
        });
        let (lo, hi) = spec.unsuccessful_per_student;
        for u in 0..rng.gen_range(lo..hi) {
            let (cluster, scattered) = draw(&mut rng);
            records.push(IdeaRecord {
                idea_id: format!("{student_id}-fail{}", u + 1),
                student_id: student_id.clone(),
                success: false,
                nouns: NounEvent::sequence(&stream(&scattered, &cluster, k, spec.repeat_chance, &mut rng)),
            });
        }
    }
    Ok(records)
}
