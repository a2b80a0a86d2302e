//! Cyclic edge orderings and their sequenceability metrics.
//!
//! An [`EdgeOrdering`] lists edge indices of some host [`Graph`]; position `p`
//! in the list is the label of that edge. The ordering is an ordering of the
//! subgraph formed by its edges, so metrics take the host graph only to look
//! up which edges share a vertex.

use crate::error::{Error, Result};
use crate::graph::{EdgeSet, Graph};

const ABSENT: usize = usize::MAX;

/// A bijection from a set of edges to `0..len`.
#[derive(Clone, Default, PartialEq, Eq)]
pub struct EdgeOrdering {
    seq: Vec<usize>,
    pos: Vec<usize>,
}

impl std::fmt::Debug for EdgeOrdering {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_tuple("EdgeOrdering").field(&self.seq).finish()
    }
}

impl EdgeOrdering {
    /// Orders the given edges by list position. Repeated edges are rejected.
    pub fn new(seq: Vec<usize>) -> Result<Self> {
        let cap = seq.iter().map(|&e| e + 1).max().unwrap_or(0);
        let mut pos = vec![ABSENT; cap];
        for (p, &e) in seq.iter().enumerate() {
            if pos[e] != ABSENT {
                return Err(Error::OverlappingEdges(e));
            }
            pos[e] = p;
        }
        Ok(EdgeOrdering { seq, pos })
    }

    pub fn empty() -> Self {
        Self::default()
    }

    /// An ordering of all of `g`: `seq` must be a permutation of `0..m`.
    pub fn of_graph(g: &Graph, seq: Vec<usize>) -> Result<Self> {
        if let Some(&e) = seq.iter().find(|&&e| e >= g.m()) {
            return Err(Error::EdgeNotInGraph(e));
        }
        if seq.len() != g.m() {
            return Err(Error::SizeMismatch(seq.len(), g.m()));
        }
        Self::new(seq)
    }

    /// Edges of `s` in ascending index order.
    pub fn from_set(s: &EdgeSet) -> Self {
        Self::new(s.to_vec()).expect("edge sets have no repeats")
    }

    pub fn len(&self) -> usize {
        self.seq.len()
    }

    pub fn is_empty(&self) -> bool {
        self.seq.is_empty()
    }

    /// The tuple `(l^-1(0), ..., l^-1(m-1))`.
    pub fn edges(&self) -> &[usize] {
        &self.seq
    }

    pub fn edge_set(&self) -> EdgeSet {
        self.seq.iter().copied().collect()
    }

    pub fn label(&self, e: usize) -> Option<usize> {
        self.pos.get(e).copied().filter(|&p| p != ABSENT)
    }

    pub fn contains(&self, e: usize) -> bool {
        self.label(e).is_some()
    }

    pub fn first(&self) -> Option<usize> {
        self.seq.first().copied()
    }

    pub fn last(&self) -> Option<usize> {
        self.seq.last().copied()
    }

    /// Smallest `d >= 1` with `l(e) + d = l(f)` modulo the length.
    pub fn forward_distance(&self, e: usize, f: usize) -> Result<usize> {
        if e == f {
            return Err(Error::SameEdge(e));
        }
        let a = self.label(e).ok_or(Error::EdgeNotInGraph(e))?;
        let b = self.label(f).ok_or(Error::EdgeNotInGraph(f))?;
        let m = self.len();
        Ok((b + m - a) % m)
    }

    /// The smaller of the two forward distances.
    pub fn distance(&self, e: usize, f: usize) -> Result<usize> {
        let d = self.forward_distance(e, f)?;
        Ok(d.min(self.len() - d))
    }

    /// Largest `s` such that every pair of adjacent edges is at cyclic
    /// distance at least `s`. Equals the length when no two edges are
    /// adjacent, and 0 for the empty ordering.
    pub fn cms(&self, g: &Graph) -> usize {
        self.tightest_pair(g, true)
            .map_or(self.len(), |(_, _, d)| d)
    }

    /// Non-cyclic analogue of [`EdgeOrdering::cms`]: the least label gap
    /// `l(f) - l(e)` over adjacent pairs with `l(e) < l(f)`.
    pub fn ms(&self, g: &Graph) -> usize {
        self.tightest_pair(g, false)
            .map_or(self.len(), |(_, _, d)| d)
    }

    /// The adjacent pair realising [`EdgeOrdering::cms`] (when `cyclic`) or
    /// [`EdgeOrdering::ms`], as `(earlier, later, distance)`.
    pub fn tightest_pair(&self, g: &Graph, cyclic: bool) -> Option<(usize, usize, usize)> {
        let m = self.len();
        let mut best: Option<(usize, usize, usize)> = None;
        for (p, &e) in self.seq.iter().enumerate() {
            for f in g.neighbors_of_edge(e) {
                let Some(q) = self.label(f) else { continue };
                if q <= p {
                    continue;
                }
                let gap = q - p;
                let d = if cyclic { gap.min(m - gap) } else { gap };
                if best.is_none_or(|(_, _, b)| d < b) {
                    best = Some((e, f, d));
                }
            }
        }
        best
    }

    /// `self ∨ other`: the edges of `other` follow those of `self`.
    pub fn concat(&self, other: &EdgeOrdering) -> Result<EdgeOrdering> {
        if let Some(&e) = other.seq.iter().find(|&&e| self.contains(e)) {
            return Err(Error::OverlappingEdges(e));
        }
        let mut seq = self.seq.clone();
        seq.extend_from_slice(&other.seq);
        EdgeOrdering::new(seq)
    }

    /// Concatenates orderings left to right.
    pub fn concat_all<'a>(parts: impl IntoIterator<Item = &'a EdgeOrdering>) -> Result<EdgeOrdering> {
        let mut seq = Vec::new();
        for part in parts {
            seq.extend_from_slice(&part.seq);
        }
        EdgeOrdering::new(seq)
    }

    /// The ordering induced on `sub`, preserving relative order.
    pub fn subordering(&self, sub: &EdgeSet) -> Result<EdgeOrdering> {
        if let Some(e) = sub.iter().find(|&e| !self.contains(e)) {
            return Err(Error::EdgeNotInGraph(e));
        }
        let seq = self.seq.iter().copied().filter(|&e| sub.contains(e)).collect();
        EdgeOrdering::new(seq)
    }

    /// Relabels `l(e) -> l(e) + r` modulo the length.
    pub fn rotated(&self, r: usize) -> EdgeOrdering {
        let mut seq = self.seq.clone();
        if !seq.is_empty() {
            let len = seq.len();
            seq.rotate_right(r % len);
        }
        EdgeOrdering::new(seq).expect("rotation keeps a bijection")
    }

    /// Relabels `l(e) -> -l(e)` modulo the length.
    pub fn reflected(&self) -> EdgeOrdering {
        let m = self.len();
        let seq = (0..m).map(|p| self.seq[(m - p) % m]).collect();
        EdgeOrdering::new(seq).expect("reflection keeps a bijection")
    }

    /// Cuts the ordering into consecutive blocks of the given sizes.
    pub fn split(&self, sizes: &[usize]) -> Result<Vec<EdgeOrdering>> {
        let total: usize = sizes.iter().sum();
        if total != self.len() {
            return Err(Error::SizeMismatch(total, self.len()));
        }
        let mut start = 0;
        let mut out = Vec::with_capacity(sizes.len());
        for &s in sizes {
            out.push(EdgeOrdering::new(self.seq[start..start + s].to_vec())?);
            start += s;
        }
        Ok(out)
    }

    /// Whether this orders exactly the edges of `g`.
    pub fn covers_graph(&self, g: &Graph) -> bool {
        self.len() == g.m() && self.seq.iter().all(|&e| e < g.m())
    }
}
