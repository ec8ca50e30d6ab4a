//! Per-vertex quantities precomputed once at load.

use std::collections::VecDeque;

use fixedbitset::FixedBitSet;

use crate::csr::{union_sorted, Csr};
use crate::graph::TaxonomyProfile;
use crate::Error;

pub(crate) enum BuildError {
    Cycle(usize),
    Orphan(u32),
}

impl BuildError {
    pub(crate) fn into_error(self, offsets: &[u32]) -> Error {
        match self {
            BuildError::Cycle(n) => Error::CycleDetected { unsorted: n },
            BuildError::Orphan(m) => Error::OrphanMeaning(crate::MeaningId(offsets[m as usize]).to_string()),
        }
    }
}

pub(crate) struct NodeCache {
    /// Vertices on the shortest root path; the root has depth 1.
    pub(crate) depth: Vec<u32>,
    /// Sorted ancestor set of each meaning, including the meaning itself.
    pub(crate) ancestors: Csr,
    pub(crate) meanings: Vec<TaxonomyProfile>,
    pub(crate) words: Vec<TaxonomyProfile>,
    /// Sorted union of the ancestor sets of a word's senses.
    pub(crate) word_subsumers: Csr,
}

pub(crate) fn topological_order(children: &Csr, parents: &Csr) -> Result<Vec<u32>, BuildError> {
    let n = parents.rows();
    let mut indegree: Vec<usize> = (0..n as u32).map(|m| parents.row(m).len()).collect();
    let mut queue: VecDeque<u32> = (0..n as u32).filter(|&m| indegree[m as usize] == 0).collect();
    let mut order = Vec::with_capacity(n);
    while let Some(m) = queue.pop_front() {
        order.push(m);
        for &c in children.row(m) {
            indegree[c as usize] -= 1;
            if indegree[c as usize] == 0 {
                queue.push_back(c);
            }
        }
    }
    if order.len() != n {
        return Err(BuildError::Cycle(n - order.len()));
    }
    Ok(order)
}

pub(crate) fn bfs_depths(root: u32, children: &Csr) -> Vec<u32> {
    let mut depth = vec![0u32; children.rows()];
    depth[root as usize] = 1;
    let mut queue = VecDeque::from([root]);
    while let Some(m) = queue.pop_front() {
        for &c in children.row(m) {
            if depth[c as usize] == 0 {
                depth[c as usize] = depth[m as usize] + 1;
                queue.push_back(c);
            }
        }
    }
    depth
}

impl NodeCache {
    pub(crate) fn build(root: u32, children: &Csr, parents: &Csr, senses: &Csr) -> Result<Self, BuildError> {
        let n = children.rows();
        let order = topological_order(children, parents)?;
        let depth = bfs_depths(root, children);
        if let Some(orphan) = depth.iter().position(|&d| d == 0) {
            return Err(BuildError::Orphan(orphan as u32));
        }

        let mut ancestor_rows: Vec<Vec<u32>> = vec![Vec::new(); n];
        for &m in &order {
            let mut row = union_sorted(parents.row(m).iter().map(|&p| ancestor_rows[p as usize].as_slice()));
            if let Err(pos) = row.binary_search(&m) {
                row.insert(pos, m);
            }
            ancestor_rows[m as usize] = row;
        }
        let ancestors = Csr::from_rows(ancestor_rows);

        // Every (ancestor, descendant) pair is visited once, in ascending
        // descendant order, so float sums have a fixed order.
        let mut meanings: Vec<TaxonomyProfile> = (0..n)
            .map(|m| TaxonomyProfile {
                depth: depth[m],
                subsumers: ancestors.row(m as u32).len() as u32,
                ..TaxonomyProfile::default()
            })
            .collect();
        for i in 0..n as u32 {
            let anc = ancestors.row(i);
            let is_leaf = children.row(i).is_empty();
            let leaf_weight = 1.0 / anc.len() as f64;
            let inv_depth = 1.0 / depth[i as usize] as f64;
            for &a in anc {
                let p = &mut meanings[a as usize];
                p.subvertices += 1;
                if is_leaf {
                    p.leaves += 1;
                    p.commonness += leaf_weight;
                }
                if a != i {
                    p.hyponym_inverse_depth_sum += inv_depth;
                }
            }
        }

        let mut cache = NodeCache {
            depth,
            ancestors,
            meanings,
            words: Vec::new(),
            word_subsumers: Csr::default(),
        };
        let mut visited = FixedBitSet::with_capacity(n);
        let mut subsumer_rows = Vec::with_capacity(senses.rows());
        let mut words = Vec::with_capacity(senses.rows());
        for w in 0..senses.rows() as u32 {
            let row = senses.row(w);
            let union = union_sorted(row.iter().map(|&m| cache.ancestors.row(m)));
            let profile = if row.len() == 1 {
                cache.meanings[row[0] as usize].clone()
            } else {
                cache.union_profile(row, children, &mut visited)
            };
            debug_assert_eq!(profile.subsumers as usize, union.len());
            words.push(profile);
            subsumer_rows.push(union);
        }
        cache.words = words;
        cache.word_subsumers = Csr::from_rows(subsumer_rows);
        Ok(cache)
    }

    /// Profile of a set of meanings treated as one query vertex, as for a
    /// polysemous word: the union of their subvertices, without the
    /// meanings themselves counting as hyponyms.
    pub(crate) fn union_profile(&self, senses: &[u32], children: &Csr, visited: &mut FixedBitSet) -> TaxonomyProfile {
        let members = descendants(senses, children, visited);
        let subsumers = union_sorted(senses.iter().map(|&m| self.ancestors.row(m))).len() as u32;
        let mut p = TaxonomyProfile {
            depth: senses.iter().map(|&m| self.depth[m as usize]).min().unwrap_or(0),
            subsumers,
            subvertices: members.len() as u32,
            ..TaxonomyProfile::default()
        };
        for &i in &members {
            if children.row(i).is_empty() {
                p.leaves += 1;
                p.commonness += 1.0 / self.ancestors.row(i).len() as f64;
            }
            if senses.binary_search(&i).is_err() {
                p.hyponym_inverse_depth_sum += 1.0 / self.depth[i as usize] as f64;
            }
        }
        p
    }
}

/// Sorted set of all meanings reachable from `sources` (inclusive).
pub(crate) fn descendants(sources: &[u32], children: &Csr, visited: &mut FixedBitSet) -> Vec<u32> {
    let mut members = Vec::new();
    let mut stack: Vec<u32> = Vec::new();
    for &s in sources {
        if !visited.put(s as usize) {
            members.push(s);
            stack.push(s);
        }
    }
    while let Some(m) = stack.pop() {
        for &c in children.row(m) {
            if !visited.put(c as usize) {
                members.push(c);
                stack.push(c);
            }
        }
    }
    for &m in &members {
        visited.set(m as usize, false);
    }
    members.sort_unstable();
    members
}
