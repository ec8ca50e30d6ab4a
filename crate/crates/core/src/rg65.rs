//! Correlation of the similarity measures with RG-65 human ratings, and
//! agglomerative clustering of the measures by correlation distance.

use std::fs::File;
use std::io::{BufRead, BufReader, Write};
use std::path::Path;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::dynamics::student_t_cdf;
use crate::measures::{IcFormula, PairEvaluator, SimFormula, SimGroup};
use crate::output;
use crate::wordnet::LexicalGraph;
use crate::{Error, Result};

/// Label of the human-evaluation vector in the distance matrix.
pub const HUMAN_LABEL: &str = "HE";

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RatedPair {
    pub w1: String,
    pub w2: String,
    /// Mean human similarity rating on the 0–4 scale.
    pub human_rating: f64,
}

pub fn parse_rg65(reader: impl BufRead, path: &Path) -> Result<Vec<RatedPair>> {
    let mut pairs = Vec::new();
    for (i, line) in reader.lines().enumerate() {
        let line = line.map_err(|e| Error::io(path, e))?;
        let fields: Vec<&str> = line.split_whitespace().collect();
        if fields.is_empty() {
            continue;
        }
        let bad = |why: &str| Error::malformed(path, i + 1, why);
        let [w1, w2, rating] = fields[..] else {
            return Err(bad("expected word1, word2, rating"));
        };
        let human_rating: f64 = rating.parse().map_err(|_| bad("rating is not a number"))?;
        if !(0.0..=4.0).contains(&human_rating) {
            return Err(bad("rating outside 0..4"));
        }
        let (w1, w2) = (w1.to_lowercase(), w2.to_lowercase());
        if w1 == w2 {
            return Err(bad("pair of identical words"));
        }
        pairs.push(RatedPair { w1, w2, human_rating });
    }
    if pairs.is_empty() {
        return Err(Error::EmptyDataset);
    }
    Ok(pairs)
}

/// Reads a `word1<TAB>word2<TAB>rating` file.
pub fn load_rg65(path: &Path) -> Result<Vec<RatedPair>> {
    let file = File::open(path).map_err(|e| Error::io(path, e))?;
    parse_rg65(BufReader::new(file), path)
}

/// A pair dropped because one of its words is not in the lexicon.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Exclusion {
    pub pair: RatedPair,
    pub missing: String,
}

/// Splits pairs into those fully in the lexicon and the excluded rest.
pub fn split_by_lexicon(g: &LexicalGraph, pairs: Vec<RatedPair>) -> (Vec<RatedPair>, Vec<Exclusion>) {
    let mut kept = Vec::new();
    let mut excluded = Vec::new();
    for pair in pairs {
        let missing = [&pair.w1, &pair.w2].into_iter().find(|w| !g.contains_word(w)).cloned();
        match missing {
            Some(missing) => {
                log::warn!("RG-65 pair ({}, {}) excluded: '{missing}' not in lexicon", pair.w1, pair.w2);
                excluded.push(Exclusion { pair, missing });
            }
            None => kept.push(pair),
        }
    }
    (kept, excluded)
}

/// Sample Pearson correlation.
pub fn pearson(xs: &[f64], ys: &[f64]) -> Result<f64> {
    if xs.len() != ys.len() {
        return Err(Error::DegenerateInput(format!("length mismatch {} vs {}", xs.len(), ys.len())));
    }
    if xs.len() < 3 {
        return Err(Error::DegenerateInput("pearson needs at least 3 points".into()));
    }
    let n = xs.len() as f64;
    let mx = xs.iter().sum::<f64>() / n;
    let my = ys.iter().sum::<f64>() / n;
    let (mut sxy, mut sxx, mut syy) = (0.0, 0.0, 0.0);
    for (x, y) in xs.iter().zip(ys) {
        let (dx, dy) = (x - mx, y - my);
        sxy += dx * dy;
        sxx += dx * dx;
        syy += dy * dy;
    }
    if sxx == 0.0 || syy == 0.0 {
        return Err(Error::DegenerateInput("zero variance".into()));
    }
    Ok((sxy / (sxx * syy).sqrt()).clamp(-1.0, 1.0))
}

/// Two-sided p-value of `r` over `n` pairs via `t = r √((n−2)/(1−r²))`.
pub fn correlation_p_value(r: f64, n: usize) -> f64 {
    let df = n as f64 - 2.0;
    if df <= 0.0 {
        return f64::NAN;
    }
    if r.abs() >= 1.0 {
        return 0.0;
    }
    let t = r * (df / (1.0 - r * r)).sqrt();
    2.0 * student_t_cdf(-t.abs(), df)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CorrelationRow {
    pub measure: SimFormula,
    pub group: SimGroup,
    pub pearson_r: f64,
    pub p_value: f64,
    /// Pairs the correlation was computed over.
    pub n: usize,
    /// Pairs skipped because the measure raised an error.
    pub skipped: usize,
}

#[derive(Debug, Clone, PartialEq)]
pub struct CorrelationTable {
    pub pairs: Vec<RatedPair>,
    pub excluded: Vec<Exclusion>,
    pub rows: Vec<CorrelationRow>,
    /// Per measure (row order), the score of every pair; `None` where the
    /// measure failed.
    pub scores: Vec<Vec<Option<f64>>>,
}

impl CorrelationTable {
    pub fn row(&self, measure: SimFormula) -> Option<&CorrelationRow> {
        self.rows.iter().find(|r| r.measure == measure)
    }

    fn mean_r(&self, keep: impl Fn(&CorrelationRow) -> bool) -> f64 {
        let rs: Vec<f64> = self.rows.iter().filter(|r| keep(r)).map(|r| r.pearson_r).collect();
        rs.iter().sum::<f64>() / rs.len() as f64
    }

    pub fn group_mean(&self, group: SimGroup) -> f64 {
        self.mean_r(|r| r.group == group)
    }

    /// Mean r of the five IC-based similarities built on `ic`.
    pub fn ic_mean(&self, ic: IcFormula) -> f64 {
        self.mean_r(|r| r.measure.ic() == Some(ic))
    }

    /// Human ratings followed by every measure's scores, restricted to pairs
    /// on which all measures are defined. Labels align with the vectors.
    pub fn score_vectors(&self) -> (Vec<String>, Vec<Vec<f64>>) {
        let complete: Vec<usize> = (0..self.pairs.len())
            .filter(|&i| self.scores.iter().all(|s| s[i].is_some()))
            .collect();
        let mut labels = vec![HUMAN_LABEL.to_string()];
        let mut vectors = vec![complete.iter().map(|&i| self.pairs[i].human_rating).collect()];
        for (row, scores) in self.rows.iter().zip(&self.scores) {
            labels.push(row.measure.to_string());
            vectors.push(complete.iter().map(|&i| scores[i].expect("complete pair")).collect());
        }
        (labels, vectors)
    }

    pub fn write_csv(&self, out: impl Write) -> Result<()> {
        let mut w = csv::Writer::from_writer(out);
        w.write_record(["measure", "group", "pearson_r", "p_value", "n", "skipped"])?;
        for r in &self.rows {
            w.write_record([
                r.measure.to_string(),
                serde_json::to_value(r.group)?.as_str().unwrap_or_default().to_string(),
                r.pearson_r.to_string(),
                r.p_value.to_string(),
                r.n.to_string(),
                r.skipped.to_string(),
            ])?;
        }
        w.flush().map_err(|e| Error::io("correlation csv", e))?;
        Ok(())
    }

    pub fn write_jsonl(&self, out: impl Write) -> Result<()> {
        output::write_jsonl(out, &self.rows)
    }
}

/// Correlates each measure in `measures` with the human ratings.
///
/// Pairs are evaluated in parallel; results are collected in pair order, so
/// the table does not depend on the thread count.
pub fn evaluate(g: &LexicalGraph, pairs: Vec<RatedPair>, measures: &[SimFormula]) -> Result<CorrelationTable> {
    let (pairs, excluded) = split_by_lexicon(g, pairs);
    if pairs.is_empty() {
        return Err(Error::EmptyDataset);
    }
    let per_pair: Vec<Vec<Option<f64>>> = pairs
        .par_iter()
        .map(|p| match PairEvaluator::new(g, &p.w1, &p.w2) {
            Ok(eval) => measures
                .iter()
                .map(|&f| match eval.similarity(f) {
                    Ok(v) => Some(v),
                    Err(e) => {
                        log::warn!("{f}({}, {}) skipped: {e}", p.w1, p.w2);
                        None
                    }
                })
                .collect(),
            Err(e) => {
                log::warn!("pair ({}, {}) skipped: {e}", p.w1, p.w2);
                vec![None; measures.len()]
            }
        })
        .collect();

    let mut rows = Vec::with_capacity(measures.len());
    let mut scores = Vec::with_capacity(measures.len());
    for (k, &measure) in measures.iter().enumerate() {
        let column: Vec<Option<f64>> = per_pair.iter().map(|s| s[k]).collect();
        let (xs, ys): (Vec<f64>, Vec<f64>) = column
            .iter()
            .zip(&pairs)
            .filter_map(|(s, p)| s.map(|v| (v, p.human_rating)))
            .unzip();
        let pearson_r = pearson(&xs, &ys)?;
        rows.push(CorrelationRow {
            measure,
            group: measure.group(),
            pearson_r,
            p_value: correlation_p_value(pearson_r, xs.len()),
            n: xs.len(),
            skipped: pairs.len() - xs.len(),
        });
        scores.push(column);
    }
    Ok(CorrelationTable {
        pairs,
        excluded,
        rows,
        scores,
    })
}

/// Correlates all 46 measures with the human ratings.
pub fn evaluate_all(g: &LexicalGraph, pairs: Vec<RatedPair>) -> Result<CorrelationTable> {
    evaluate(g, pairs, &SimFormula::all())
}

/// Symmetric matrix with zero diagonal.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DistanceMatrix {
    pub size: usize,
    data: Vec<f64>,
}

impl DistanceMatrix {
    pub fn from_fn(size: usize, mut f: impl FnMut(usize, usize) -> f64) -> Self {
        let mut data = vec![0.0; size * size];
        for i in 0..size {
            for j in i + 1..size {
                let d = f(i, j);
                data[i * size + j] = d;
                data[j * size + i] = d;
            }
        }
        DistanceMatrix { size, data }
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.data[i * self.size + j]
    }

    pub fn write_csv(&self, labels: &[String], out: impl Write) -> Result<()> {
        let mut w = csv::Writer::from_writer(out);
        let mut header = vec![String::new()];
        header.extend(labels.iter().cloned());
        w.write_record(&header)?;
        for i in 0..self.size {
            let mut rec = vec![labels[i].clone()];
            rec.extend((0..self.size).map(|j| self.get(i, j).to_string()));
            w.write_record(&rec)?;
        }
        w.flush().map_err(|e| Error::io("matrix csv", e))?;
        Ok(())
    }
}

/// `1 − r` between every pair of score vectors.
pub fn correlation_distance_matrix(vectors: &[Vec<f64>]) -> Result<DistanceMatrix> {
    let n = vectors.len();
    let mut r = vec![0.0; n * n];
    for i in 0..n {
        for j in i + 1..n {
            r[i * n + j] = pearson(&vectors[i], &vectors[j])?;
        }
    }
    Ok(DistanceMatrix::from_fn(n, |i, j| 1.0 - r[i * n + j]))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Linkage {
    Single,
    Complete,
    #[default]
    Average,
}

/// A merge step. Clusters `0..n` are leaves; step `i` creates cluster `n + i`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Merge {
    pub left: usize,
    pub right: usize,
    pub distance: f64,
    pub size: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Dendrogram {
    pub leaves: usize,
    pub linkage: Linkage,
    pub merges: Vec<Merge>,
}

/// Nested form of a dendrogram for serialisation.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum DendrogramNode {
    Leaf { index: usize, label: String },
    Branch { distance: f64, size: usize, children: Vec<DendrogramNode> },
}

impl Dendrogram {
    /// Leaf indices under cluster `id`, ascending.
    pub fn members(&self, id: usize) -> Vec<usize> {
        let mut out = Vec::new();
        let mut stack = vec![id];
        while let Some(c) = stack.pop() {
            if c < self.leaves {
                out.push(c);
            } else {
                let m = self.merges[c - self.leaves];
                stack.push(m.left);
                stack.push(m.right);
            }
        }
        out.sort_unstable();
        out
    }

    pub fn root(&self) -> usize {
        if self.merges.is_empty() {
            0
        } else {
            self.leaves + self.merges.len() - 1
        }
    }

    /// Leaf sets of the two clusters joined by the final merge.
    pub fn top_split(&self) -> Option<(Vec<usize>, Vec<usize>)> {
        let last = self.merges.last()?;
        Some((self.members(last.left), self.members(last.right)))
    }

    pub fn tree(&self, labels: &[String]) -> DendrogramNode {
        self.node(self.root(), labels)
    }

    fn node(&self, id: usize, labels: &[String]) -> DendrogramNode {
        if id < self.leaves {
            return DendrogramNode::Leaf {
                index: id,
                label: labels.get(id).cloned().unwrap_or_else(|| id.to_string()),
            };
        }
        let m = self.merges[id - self.leaves];
        DendrogramNode::Branch {
            distance: m.distance,
            size: m.size,
            children: vec![self.node(m.left, labels), self.node(m.right, labels)],
        }
    }
}

/// Agglomerative clustering with Lance–Williams updates.
///
/// Among equally close cluster pairs the one whose smallest leaf indices are
/// lowest merges first; the cluster holding the lower leaf goes left.
pub fn hierarchical_cluster(matrix: &DistanceMatrix, linkage: Linkage) -> Result<Dendrogram> {
    let n = matrix.size;
    for i in 0..n {
        for j in 0..n {
            let d = matrix.get(i, j);
            if !d.is_finite() || d < 0.0 || d != matrix.get(j, i) || (i == j && d != 0.0) {
                return Err(Error::DegenerateInput(format!("invalid distance at ({i}, {j})")));
            }
        }
    }
    // active clusters: (cluster id, smallest leaf, size)
    let mut active: Vec<(usize, usize, usize)> = (0..n).map(|i| (i, i, 1)).collect();
    let mut dist: Vec<Vec<f64>> = (0..n).map(|i| (0..n).map(|j| matrix.get(i, j)).collect()).collect();
    let mut merges = Vec::with_capacity(n.saturating_sub(1));
    while active.len() > 1 {
        let mut best: Option<(f64, usize, usize, usize, usize)> = None;
        for a in 0..active.len() {
            for b in a + 1..active.len() {
                let d = dist[a][b];
                let (la, lb) = (active[a].1.min(active[b].1), active[a].1.max(active[b].1));
                let better = match best {
                    None => true,
                    Some((bd, bla, blb, _, _)) => d < bd || (d == bd && (la, lb) < (bla, blb)),
                };
                if better {
                    best = Some((d, la, lb, a, b));
                }
            }
        }
        let (d, _, _, a, b) = best.expect("at least two clusters");
        let (ca, cb) = (active[a], active[b]);
        let (left, right) = if ca.1 < cb.1 { (ca, cb) } else { (cb, ca) };
        let size = ca.2 + cb.2;
        merges.push(Merge {
            left: left.0,
            right: right.0,
            distance: d,
            size,
        });
        // overwrite slot a with the merged cluster, drop slot b
        for k in 0..active.len() {
            if k == a || k == b {
                continue;
            }
            let (da, db) = (dist[a][k], dist[b][k]);
            let merged = match linkage {
                Linkage::Single => da.min(db),
                Linkage::Complete => da.max(db),
                Linkage::Average => (ca.2 as f64 * da + cb.2 as f64 * db) / size as f64,
            };
            dist[a][k] = merged;
            dist[k][a] = merged;
        }
        active[a] = (n + merges.len() - 1, ca.1.min(cb.1), size);
        active.remove(b);
        dist.remove(b);
        for row in &mut dist {
            row.remove(b);
        }
    }
    Ok(Dendrogram {
        leaves: n,
        linkage,
        merges,
    })
}
