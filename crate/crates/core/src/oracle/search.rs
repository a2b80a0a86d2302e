use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::ordering::EdgeOrdering;

use super::lp::{fractional_chromatic_index, MATCHING_EDGE_CAP};

const NONE: usize = usize::MAX;

/// Limits for [`exact_cms`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CmsSearch {
    /// Placement attempts allowed over the whole run.
    pub node_budget: u64,
}

impl Default for CmsSearch {
    fn default() -> Self {
        CmsSearch {
            node_budget: 200_000_000,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExactCms {
    pub value: usize,
    /// An ordering with `cms = value`.
    pub witness: EdgeOrdering,
    pub nodes: u64,
}

/// Exact `cms(G)` for `m >= 1`.
///
/// Runs the decision search for `s = 2, 3, ...` until it fails. Orderings
/// are taken up to rotation (edge 0 sits at label 0) and reflection. When
/// the budget runs out the error carries the certified interval.
pub fn exact_cms(g: &Graph, search: CmsSearch) -> Result<ExactCms> {
    let m = g.m();
    if m == 0 {
        return Err(Error::PreconditionViolated("exact_cms needs at least one edge".into()));
    }
    let identity = EdgeOrdering::of_graph(g, (0..m).collect())?;
    if g.is_matching(&g.all_edges()) {
        return Ok(ExactCms {
            value: m,
            witness: identity,
            nodes: 0,
        });
    }
    let nu = g.matching_number().0;
    let trivial_hi = nu.min(m / 2);
    let mut best = identity;
    let mut value = 1;
    let mut nodes = 0;
    for s in 2..=trivial_hi {
        let mut decider = Decider::new(g, s, search.node_budget - nodes);
        let outcome = decider.run();
        nodes += decider.nodes;
        match outcome {
            Some(Some(seq)) => {
                best = EdgeOrdering::of_graph(g, seq)?;
                debug_assert!(best.cms(g) >= s);
                value = s;
            }
            Some(None) => break,
            None => {
                let mut hi = trivial_hi;
                if m <= MATCHING_EDGE_CAP {
                    let cf = fractional_chromatic_index(g)?.value;
                    let bound = (num_rational::BigRational::from_integer(m.into()) / cf).floor();
                    let bound: usize = bound.to_integer().try_into().unwrap_or(usize::MAX);
                    hi = hi.min(bound);
                }
                return Err(Error::BudgetExceeded { lo: value, hi });
            }
        }
    }
    let value = best.cms(g);
    Ok(ExactCms {
        value,
        witness: best,
        nodes,
    })
}

/// Whether some ordering of `g` has `cms >= s`; `Err` on budget exhaustion.
pub fn feasible_at(g: &Graph, s: usize, node_budget: u64) -> Result<Option<EdgeOrdering>> {
    if s <= 1 || g.is_matching(&g.all_edges()) && s <= g.m() {
        return Ok(Some(EdgeOrdering::of_graph(g, (0..g.m()).collect())?));
    }
    let mut decider = Decider::new(g, s, node_budget);
    match decider.run() {
        Some(Some(seq)) => Ok(Some(EdgeOrdering::of_graph(g, seq)?)),
        Some(None) => Ok(None),
        None => Err(Error::BudgetExceeded { lo: 0, hi: g.m() }),
    }
}

/// Slot-by-slot placement where every pair of adjacent edges must be at
/// cyclic distance at least `s`.
struct Decider<'g> {
    g: &'g Graph,
    m: usize,
    s: usize,
    seq: Vec<usize>,
    placed: Vec<bool>,
    first: Vec<usize>,
    last: Vec<usize>,
    left: Vec<usize>,
    nodes: u64,
    budget: u64,
}

impl<'g> Decider<'g> {
    fn new(g: &'g Graph, s: usize, budget: u64) -> Self {
        Decider {
            g,
            m: g.m(),
            s,
            seq: Vec::with_capacity(g.m()),
            placed: vec![false; g.m()],
            first: vec![NONE; g.n()],
            last: vec![NONE; g.n()],
            left: (0..g.n()).map(|v| g.degree(v)).collect(),
            nodes: 0,
            budget,
        }
    }

    /// `None` when the budget ran out, otherwise the decision.
    fn run(&mut self) -> Option<Option<Vec<usize>>> {
        // every vertex needs deg * s slots around the cycle
        if (0..self.g.n()).any(|v| self.g.degree(v) * self.s > self.m) {
            return Some(None);
        }
        self.put(0);
        let found = self.fill()?;
        Some(found.then(|| self.seq.clone()))
    }

    fn fits(&self, e: usize) -> bool {
        let p = self.seq.len();
        let (u, v) = self.g.endpoints(e);
        [u, v].into_iter().all(|w| {
            (self.last[w] == NONE || p - self.last[w] >= self.s)
                && (self.first[w] == NONE || self.first[w] + self.m - p >= self.s)
        })
    }

    fn put(&mut self, e: usize) {
        let p = self.seq.len();
        self.seq.push(e);
        self.placed[e] = true;
        let (u, v) = self.g.endpoints(e);
        for w in [u, v] {
            if self.first[w] == NONE {
                self.first[w] = p;
            }
            self.last[w] = p;
            self.left[w] -= 1;
        }
    }

    fn take(&mut self, e: usize, saved: [(usize, usize); 2]) {
        self.seq.pop();
        self.placed[e] = false;
        let (u, v) = self.g.endpoints(e);
        for (w, (first, last)) in [u, v].into_iter().zip(saved) {
            self.first[w] = first;
            self.last[w] = last;
            self.left[w] += 1;
        }
    }

    /// Each vertex must still have room for its unplaced edges.
    fn room(&self) -> bool {
        let next = self.seq.len();
        (0..self.g.n()).all(|v| {
            let r = self.left[v];
            if r == 0 || self.first[v] == NONE {
                return true;
            }
            let earliest = next.max(self.last[v] + self.s);
            let latest = self.first[v] + self.m - self.s;
            earliest + (r - 1) * self.s <= latest
        })
    }

    fn fill(&mut self) -> Option<bool> {
        let p = self.seq.len();
        if p == self.m {
            return Some(true);
        }
        for e in 0..self.m {
            if self.placed[e] || !self.fits(e) {
                continue;
            }
            // reflection: the label-1 edge is smaller than the last one
            if p == self.m - 1 && self.m > 2 && e < self.seq[1] {
                continue;
            }
            self.nodes += 1;
            if self.nodes > self.budget {
                return None;
            }
            let (u, v) = self.g.endpoints(e);
            let saved = [(self.first[u], self.last[u]), (self.first[v], self.last[v])];
            self.put(e);
            if self.room() && self.fill()? {
                return Some(true);
            }
            self.take(e, saved);
        }
        Some(false)
    }
}
