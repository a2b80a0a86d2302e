//! Simple undirected graphs with positional edge identity.
//!
//! Edge `i` of a [`Graph`] is the `i`-th pair passed to [`Graph::new`] and
//! keeps that index for the life of the value. Orderings, matchings and
//! decompositions are all expressed in terms of these indices.

use std::collections::{HashSet, VecDeque};
use std::fmt;

use crate::error::{Error, Result};

/// A set of edge indices with bit-set semantics.
#[derive(Clone, Default, PartialEq, Eq, Hash)]
pub struct EdgeSet {
    words: Vec<u64>,
}

impl EdgeSet {
    pub fn new() -> Self {
        Self::default()
    }

    /// The set `{0, 1, ..., m-1}`.
    pub fn full(m: usize) -> Self {
        (0..m).collect()
    }

    pub fn insert(&mut self, e: usize) -> bool {
        let (w, b) = (e / 64, e % 64);
        if w >= self.words.len() {
            self.words.resize(w + 1, 0);
        }
        let fresh = self.words[w] & (1 << b) == 0;
        self.words[w] |= 1 << b;
        fresh
    }

    pub fn remove(&mut self, e: usize) -> bool {
        let (w, b) = (e / 64, e % 64);
        match self.words.get_mut(w) {
            Some(word) if *word & (1 << b) != 0 => {
                *word &= !(1 << b);
                true
            }
            _ => false,
        }
    }

    pub fn contains(&self, e: usize) -> bool {
        self.words
            .get(e / 64)
            .is_some_and(|word| word & (1 << (e % 64)) != 0)
    }

    pub fn len(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    /// Members in ascending order.
    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(wi, &word)| {
            let mut rest = word;
            std::iter::from_fn(move || {
                if rest == 0 {
                    return None;
                }
                let b = rest.trailing_zeros() as usize;
                rest &= rest - 1;
                Some(wi * 64 + b)
            })
        })
    }

    pub fn to_vec(&self) -> Vec<usize> {
        self.iter().collect()
    }

    pub fn union(&self, other: &EdgeSet) -> EdgeSet {
        let len = self.words.len().max(other.words.len());
        let words = (0..len)
            .map(|i| self.word(i) | other.word(i))
            .collect();
        EdgeSet { words }
    }

    pub fn intersection(&self, other: &EdgeSet) -> EdgeSet {
        let len = self.words.len().min(other.words.len());
        let words = (0..len).map(|i| self.word(i) & other.word(i)).collect();
        EdgeSet { words }
    }

    pub fn difference(&self, other: &EdgeSet) -> EdgeSet {
        let words = (0..self.words.len())
            .map(|i| self.word(i) & !other.word(i))
            .collect();
        EdgeSet { words }
    }

    pub fn is_subset(&self, other: &EdgeSet) -> bool {
        (0..self.words.len()).all(|i| self.word(i) & !other.word(i) == 0)
    }

    pub fn is_disjoint(&self, other: &EdgeSet) -> bool {
        self.intersection(other).is_empty()
    }

    /// Smallest member, if any.
    pub fn first(&self) -> Option<usize> {
        self.iter().next()
    }

    fn word(&self, i: usize) -> u64 {
        self.words.get(i).copied().unwrap_or(0)
    }
}

impl FromIterator<usize> for EdgeSet {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        let mut set = EdgeSet::new();
        for e in iter {
            set.insert(e);
        }
        set
    }
}

impl Extend<usize> for EdgeSet {
    fn extend<I: IntoIterator<Item = usize>>(&mut self, iter: I) {
        for e in iter {
            self.insert(e);
        }
    }
}

impl fmt::Debug for EdgeSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

/// A simple undirected graph on vertices `0..n`.
#[derive(Clone, PartialEq, Eq)]
pub struct Graph {
    n: usize,
    edges: Vec<(usize, usize)>,
    incident: Vec<Vec<usize>>,
}

impl Graph {
    /// Builds a graph whose edge `i` is `pairs[i]`. Each pair is stored with
    /// its smaller endpoint first.
    pub fn new(n: usize, pairs: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        let mut edges = Vec::new();
        let mut seen = HashSet::new();
        let mut incident = vec![Vec::new(); n];
        for (u, v) in pairs {
            for vertex in [u, v] {
                if vertex >= n {
                    return Err(Error::VertexOutOfRange { vertex, n });
                }
            }
            if u == v {
                return Err(Error::LoopEdge(edges.len(), u));
            }
            let pair = (u.min(v), u.max(v));
            if !seen.insert(pair) {
                return Err(Error::DuplicateEdge(pair.0, pair.1));
            }
            incident[u].push(edges.len());
            incident[v].push(edges.len());
            edges.push(pair);
        }
        Ok(Graph { n, edges, incident })
    }

    /// Vertex count.
    pub fn n(&self) -> usize {
        self.n
    }

    /// Edge count.
    pub fn m(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn endpoints(&self, e: usize) -> (usize, usize) {
        self.edges[e]
    }

    /// Edge indices incident with `v`, in insertion order.
    pub fn incident(&self, v: usize) -> &[usize] {
        &self.incident[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.incident[v].len()
    }

    pub fn max_degree(&self) -> usize {
        self.incident.iter().map(Vec::len).max().unwrap_or(0)
    }

    /// `Some(k)` when every vertex has degree `k`.
    pub fn regular_degree(&self) -> Option<usize> {
        let k = self.incident.first().map_or(0, Vec::len);
        self.incident.iter().all(|inc| inc.len() == k).then_some(k)
    }

    pub fn all_edges(&self) -> EdgeSet {
        EdgeSet::full(self.m())
    }

    pub fn contains_edge_index(&self, e: usize) -> bool {
        e < self.m()
    }

    pub fn edge_index(&self, u: usize, v: usize) -> Option<usize> {
        if u >= self.n || v >= self.n {
            return None;
        }
        let pair = (u.min(v), u.max(v));
        self.incident[u].iter().copied().find(|&e| self.edges[e] == pair)
    }

    /// Whether distinct edges `e` and `f` share a vertex.
    pub fn are_adjacent(&self, e: usize, f: usize) -> bool {
        let (a, b) = self.edges[e];
        let (c, d) = self.edges[f];
        e != f && (a == c || a == d || b == c || b == d)
    }

    /// Iterates over the edges sharing a vertex with `e` (excluding `e`).
    pub fn neighbors_of_edge(&self, e: usize) -> impl Iterator<Item = usize> + '_ {
        let (u, v) = self.edges[e];
        self.incident[u]
            .iter()
            .chain(self.incident[v].iter())
            .copied()
            .filter(move |&f| f != e)
    }

    /// All edges sharing a vertex with `e`, excluding `e` itself.
    pub fn adjacent_edges(&self, e: usize) -> Result<EdgeSet> {
        if e >= self.m() {
            return Err(Error::EdgeNotInGraph(e));
        }
        Ok(self.neighbors_of_edge(e).collect())
    }

    /// Returns a pair of members of `s` that share a vertex, if any.
    pub fn matching_conflict(&self, s: &EdgeSet) -> Option<(usize, usize)> {
        let mut owner = vec![usize::MAX; self.n];
        for e in s.iter() {
            let (u, v) = self.edges[e];
            for x in [u, v] {
                if owner[x] != usize::MAX {
                    return Some((owner[x], e));
                }
                owner[x] = e;
            }
        }
        None
    }

    pub fn is_matching(&self, s: &EdgeSet) -> bool {
        self.matching_conflict(s).is_none()
    }

    /// Checks that every member of `s` is an edge index of this graph.
    pub fn check_edge_set(&self, s: &EdgeSet) -> Result<()> {
        match s.iter().find(|&e| e >= self.m()) {
            Some(e) => Err(Error::EdgeNotInGraph(e)),
            None => Ok(()),
        }
    }

    /// Vertices touched by the edges of `s`.
    pub fn vertices_of(&self, s: &EdgeSet) -> Vec<bool> {
        let mut touched = vec![false; self.n];
        for e in s.iter() {
            let (u, v) = self.edges[e];
            touched[u] = true;
            touched[v] = true;
        }
        touched
    }

    /// Maximum matching size together with one maximum matching.
    ///
    /// Edmonds' blossom algorithm, O(n^3).
    pub fn matching_number(&self) -> (usize, EdgeSet) {
        let adj: Vec<Vec<usize>> = (0..self.n)
            .map(|v| {
                self.incident[v]
                    .iter()
                    .map(|&e| {
                        let (a, b) = self.edges[e];
                        if a == v {
                            b
                        } else {
                            a
                        }
                    })
                    .collect()
            })
            .collect();
        let mate = Blossom::new(&adj).solve();
        let witness: EdgeSet = (0..self.n)
            .filter_map(|v| match mate[v] {
                Some(u) if u > v => self.edge_index(v, u),
                _ => None,
            })
            .collect();
        (witness.len(), witness)
    }

    /// Connected components (vertex lists, each ascending, ordered by their
    /// smallest vertex). Isolated vertices form singleton components.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let mut comp = vec![usize::MAX; self.n];
        let mut out = Vec::new();
        for start in 0..self.n {
            if comp[start] != usize::MAX {
                continue;
            }
            let id = out.len();
            let mut members = vec![start];
            comp[start] = id;
            let mut queue = VecDeque::from([start]);
            while let Some(v) = queue.pop_front() {
                for &e in &self.incident[v] {
                    let (a, b) = self.edges[e];
                    let w = if a == v { b } else { a };
                    if comp[w] == usize::MAX {
                        comp[w] = id;
                        members.push(w);
                        queue.push_back(w);
                    }
                }
            }
            members.sort_unstable();
            out.push(members);
        }
        out
    }

    /// Edge sets of the connected components that contain at least one edge.
    pub fn edge_components(&self, s: &EdgeSet) -> Vec<EdgeSet> {
        let mut seen = EdgeSet::new();
        let mut out = Vec::new();
        for start in s.iter() {
            if seen.contains(start) {
                continue;
            }
            let mut comp = EdgeSet::new();
            let mut stack = vec![start];
            seen.insert(start);
            while let Some(e) = stack.pop() {
                comp.insert(e);
                for f in self.neighbors_of_edge(e) {
                    if s.contains(f) && seen.insert(f) {
                        stack.push(f);
                    }
                }
            }
            out.push(comp);
        }
        out
    }

    /// Two-colouring of the vertices if the graph is bipartite.
    pub fn bipartition(&self) -> Option<Vec<bool>> {
        let mut side: Vec<Option<bool>> = vec![None; self.n];
        for start in 0..self.n {
            if side[start].is_some() {
                continue;
            }
            side[start] = Some(false);
            let mut queue = VecDeque::from([start]);
            while let Some(v) = queue.pop_front() {
                let sv = side[v].unwrap_or(false);
                for &e in &self.incident[v] {
                    let (a, b) = self.edges[e];
                    let w = if a == v { b } else { a };
                    match side[w] {
                        None => {
                            side[w] = Some(!sv);
                            queue.push_back(w);
                        }
                        Some(sw) if sw == sv => return None,
                        _ => {}
                    }
                }
            }
        }
        Some(side.into_iter().map(|s| s.unwrap_or(false)).collect())
    }

    /// The graph with vertex `v` renamed to `perm[v]` and edges listed in
    /// the same order.
    pub fn relabeled(&self, perm: &[usize]) -> Result<Graph> {
        Graph::new(self.n, self.edges.iter().map(|&(u, v)| (perm[u], perm[v])))
    }
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Graph")
            .field("n", &self.n)
            .field("edges", &self.edges)
            .finish()
    }
}

const NONE: usize = usize::MAX;

struct Blossom<'a> {
    adj: &'a [Vec<usize>],
    mate: Vec<usize>,
    parent: Vec<usize>,
    base: Vec<usize>,
    used: Vec<bool>,
    in_blossom: Vec<bool>,
}

impl<'a> Blossom<'a> {
    fn new(adj: &'a [Vec<usize>]) -> Self {
        let n = adj.len();
        Blossom {
            adj,
            mate: vec![NONE; n],
            parent: vec![NONE; n],
            base: (0..n).collect(),
            used: vec![false; n],
            in_blossom: vec![false; n],
        }
    }

    fn solve(mut self) -> Vec<Option<usize>> {
        let n = self.adj.len();
        // greedy start
        for v in 0..n {
            if self.mate[v] == NONE {
                if let Some(&u) = self.adj[v].iter().find(|&&u| self.mate[u] == NONE) {
                    self.mate[v] = u;
                    self.mate[u] = v;
                }
            }
        }
        for root in 0..n {
            if self.mate[root] != NONE {
                continue;
            }
            let mut v = self.find_path(root);
            while v != NONE {
                let pv = self.parent[v];
                let ppv = self.mate[pv];
                self.mate[v] = pv;
                self.mate[pv] = v;
                v = ppv;
            }
        }
        self.mate
            .into_iter()
            .map(|m| (m != NONE).then_some(m))
            .collect()
    }

    fn lca(&self, mut a: usize, mut b: usize) -> usize {
        let mut seen = vec![false; self.adj.len()];
        loop {
            a = self.base[a];
            seen[a] = true;
            if self.mate[a] == NONE {
                break;
            }
            a = self.parent[self.mate[a]];
        }
        loop {
            b = self.base[b];
            if seen[b] {
                return b;
            }
            b = self.parent[self.mate[b]];
        }
    }

    fn mark_path(&mut self, mut v: usize, b: usize, mut child: usize) {
        while self.base[v] != b {
            self.in_blossom[self.base[v]] = true;
            self.in_blossom[self.base[self.mate[v]]] = true;
            self.parent[v] = child;
            child = self.mate[v];
            v = self.parent[self.mate[v]];
        }
    }

    fn find_path(&mut self, root: usize) -> usize {
        let n = self.adj.len();
        self.used.iter_mut().for_each(|u| *u = false);
        self.parent.iter_mut().for_each(|p| *p = NONE);
        for (i, b) in self.base.iter_mut().enumerate() {
            *b = i;
        }
        self.used[root] = true;
        let mut queue = VecDeque::from([root]);
        while let Some(v) = queue.pop_front() {
            for idx in 0..self.adj[v].len() {
                let to = self.adj[v][idx];
                if self.base[v] == self.base[to] || self.mate[v] == to {
                    continue;
                }
                if to == root || (self.mate[to] != NONE && self.parent[self.mate[to]] != NONE) {
                    let cur = self.lca(v, to);
                    self.in_blossom.iter_mut().for_each(|b| *b = false);
                    self.mark_path(v, cur, to);
                    self.mark_path(to, cur, v);
                    for i in 0..n {
                        if self.in_blossom[self.base[i]] {
                            self.base[i] = cur;
                            if !self.used[i] {
                                self.used[i] = true;
                                queue.push_back(i);
                            }
                        }
                    }
                } else if self.parent[to] == NONE {
                    self.parent[to] = v;
                    if self.mate[to] == NONE {
                        return to;
                    }
                    let next = self.mate[to];
                    self.used[next] = true;
                    queue.push_back(next);
                }
            }
        }
        NONE
    }
}
