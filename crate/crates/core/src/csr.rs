/// Compressed sparse rows of dense `u32` indices.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub(crate) struct Csr {
    starts: Vec<u32>,
    items: Vec<u32>,
}

impl Csr {
    /// Rows are sorted and deduplicated.
    pub(crate) fn from_rows(rows: Vec<Vec<u32>>) -> Self {
        let mut starts = Vec::with_capacity(rows.len() + 1);
        let mut items = Vec::with_capacity(rows.iter().map(Vec::len).sum());
        starts.push(0);
        for mut row in rows {
            row.sort_unstable();
            row.dedup();
            items.extend_from_slice(&row);
            starts.push(items.len() as u32);
        }
        Csr { starts, items }
    }

    pub(crate) fn from_edges(rows: usize, edges: impl IntoIterator<Item = (u32, u32)>) -> Self {
        let mut buckets = vec![Vec::new(); rows];
        for (from, to) in edges {
            buckets[from as usize].push(to);
        }
        Self::from_rows(buckets)
    }

    pub(crate) fn row(&self, i: u32) -> &[u32] {
        let i = i as usize;
        &self.items[self.starts[i] as usize..self.starts[i + 1] as usize]
    }

    pub(crate) fn rows(&self) -> usize {
        self.starts.len().saturating_sub(1)
    }

    pub(crate) fn nnz(&self) -> usize {
        self.items.len()
    }

    pub(crate) fn transpose(&self, cols: usize) -> Self {
        let edges = (0..self.rows() as u32).flat_map(|r| self.row(r).iter().map(move |&c| (c, r)));
        Self::from_edges(cols, edges)
    }
}

/// Size of the intersection of two sorted slices.
pub(crate) fn intersection_len(a: &[u32], b: &[u32]) -> usize {
    let (mut i, mut j, mut n) = (0, 0, 0);
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            std::cmp::Ordering::Less => i += 1,
            std::cmp::Ordering::Greater => j += 1,
            std::cmp::Ordering::Equal => {
                n += 1;
                i += 1;
                j += 1;
            }
        }
    }
    n
}

/// Sorted union of several sorted slices.
pub(crate) fn union_sorted<'a>(rows: impl IntoIterator<Item = &'a [u32]>) -> Vec<u32> {
    let mut out: Vec<u32> = rows.into_iter().flatten().copied().collect();
    out.sort_unstable();
    out.dedup();
    out
}
