//! Orderings for unions of two matchings and for 2-regular graphs.

use crate::error::{Error, Result};
use crate::graph::{EdgeSet, Graph};
use crate::ordering::EdgeOrdering;

/// Orderings `l0`, `l1` of `h0`, `h1` with `cms(l0 ∨ l1) >= t - 1`, where
/// `h0 ∪ h1` is a single cycle or a union of vertex-disjoint paths.
///
/// Paths are chained end to end into one alternating cycle (an end lying
/// only in `h0` is glued to an end lying only in `h1`); the cycle gets the
/// standard two-sided labelling. Gluing only adds adjacencies, so the
/// bound carries back to the original paths.
pub fn order_cycle_or_paths(
    g: &Graph,
    h0: &EdgeSet,
    h1: &EdgeSet,
) -> Result<(EdgeOrdering, EdgeOrdering)> {
    check_pair(g, h0, h1)?;
    let union = h0.union(h1);
    let comps = g.edge_components(&union);
    let walks = comps
        .iter()
        .map(|c| alternating_walk(g, c, h0))
        .collect::<Result<Vec<_>>>()?;
    let closed = walks.iter().filter(|w| w.closed).count();
    if closed > 0 && walks.len() > 1 {
        return Err(Error::PreconditionViolated(
            "union of the matchings mixes a cycle with other components".into(),
        ));
    }
    let cycle = if closed == 1 {
        let mut edges = walks.into_iter().next().expect("one walk").edges;
        if !h0.contains(edges[0]) {
            edges.rotate_left(1);
        }
        edges
    } else {
        chain_paths(walks, h0)
    };
    Ok(label_alternating_cycle(&cycle))
}

/// Orderings `l0`, `l1` of equal-size matchings with `cms(l0 ∨ l1) >= t - 1`
/// for any component structure of `h0 ∪ h1`.
///
/// Pieces are peeled off one at a time: an even component when there is
/// one, otherwise an `h0`-heavy odd path paired with an `h1`-heavy one.
/// Each piece is ordered by [`order_cycle_or_paths`] and the pieces are
/// concatenated in the order they were peeled.
pub fn order_two_matchings(
    g: &Graph,
    h0: &EdgeSet,
    h1: &EdgeSet,
) -> Result<(EdgeOrdering, EdgeOrdering)> {
    check_pair(g, h0, h1)?;
    let mut comps = g.edge_components(&h0.union(h1));
    comps.sort_by_key(|c| c.first());
    let mut pieces: Vec<EdgeSet> = Vec::new();
    let mut heavy0 = Vec::new();
    let mut heavy1 = Vec::new();
    for c in comps {
        let a = c.intersection(h0).len();
        let b = c.len() - a;
        match a.cmp(&b) {
            std::cmp::Ordering::Equal => pieces.push(c),
            std::cmp::Ordering::Greater => heavy0.push(c),
            std::cmp::Ordering::Less => heavy1.push(c),
        }
    }
    if heavy0.len() != heavy1.len() {
        return Err(Error::SizeMismatch(h0.len(), h1.len()));
    }
    // odd paths differ by exactly one edge, so pairing them balances
    pieces.extend(heavy0.into_iter().zip(heavy1).map(|(a, b)| a.union(&b)));
    let mut l0 = EdgeOrdering::empty();
    let mut l1 = EdgeOrdering::empty();
    for piece in &pieces {
        let (p0, p1) = order_cycle_or_paths(g, &piece.intersection(h0), &piece.intersection(h1))?;
        l0 = l0.concat(&p0)?;
        l1 = l1.concat(&p1)?;
    }
    Ok((l0, l1))
}

/// An ordering `l0 ∨ l1 ∨ l2` of a 2-regular graph split into three
/// matching blocks of near-equal sizes (non-increasing), such that an edge
/// in block `j` is at forward distance at least `|l_j|` from any adjacent
/// edge in block `j + 1` (indices modulo 3).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ThreeBlocks {
    pub blocks: [EdgeOrdering; 3],
}

impl ThreeBlocks {
    pub fn ordering(&self) -> EdgeOrdering {
        EdgeOrdering::concat_all(&self.blocks).expect("blocks are disjoint")
    }

    pub fn sizes(&self) -> [usize; 3] {
        [self.blocks[0].len(), self.blocks[1].len(), self.blocks[2].len()]
    }

    /// Checks the block sizes, that blocks are matchings and the
    /// cross-block distance condition.
    pub fn check(&self, g: &Graph) -> Result<()> {
        let total: usize = self.sizes().iter().sum();
        if self.sizes() != third_sizes(total) {
            return Err(Error::Postcondition(format!(
                "block sizes {:?} are not {:?}",
                self.sizes(),
                third_sizes(total)
            )));
        }
        for block in &self.blocks {
            if let Some((a, b)) = g.matching_conflict(&block.edge_set()) {
                return Err(Error::Postcondition(format!(
                    "block holds adjacent edges {a} and {b}"
                )));
            }
        }
        let l = self.ordering();
        for j in 0..3 {
            let next = &self.blocks[(j + 1) % 3];
            for &e in self.blocks[j].edges() {
                for f in g.neighbors_of_edge(e).filter(|&f| next.contains(f)) {
                    let d = l.forward_distance(e, f)?;
                    if d < self.blocks[j].len() {
                        return Err(Error::Postcondition(format!(
                            "edges {e} and {f} in blocks {j} and {} are {d} apart",
                            (j + 1) % 3
                        )));
                    }
                }
            }
        }
        Ok(())
    }
}

/// `(m0, m1, m2)` with `⌈m/3⌉ >= m0 >= m1 >= m2 >= ⌊m/3⌋` summing to `m`.
pub fn third_sizes(m: usize) -> [usize; 3] {
    let q = m / 3;
    match m % 3 {
        0 => [q, q, q],
        1 => [q + 1, q, q],
        _ => [q + 1, q + 1, q],
    }
}

/// Cycles of a 2-regular graph, each as its edges in cyclic order.
pub fn cycles_of(g: &Graph) -> Result<Vec<Vec<usize>>> {
    if g.regular_degree() != Some(2) {
        return Err(Error::NotTwoRegular);
    }
    let mut seen = vec![false; g.m()];
    let mut out = Vec::new();
    for start in 0..g.n() {
        let first = g.incident(start).iter().copied().min().expect("degree 2");
        if seen[first] {
            continue;
        }
        let mut cycle = Vec::new();
        let mut e = first;
        let mut v = start;
        while !seen[e] {
            seen[e] = true;
            cycle.push(e);
            let (a, b) = g.endpoints(e);
            v = if a == v { b } else { a };
            e = *g.incident(v).iter().find(|&&f| f != e).expect("degree 2");
        }
        out.push(cycle);
    }
    Ok(out)
}

/// The three-block ordering for a 2-regular graph that does not have
/// exactly one 4-cycle.
pub fn order_no_single_4cycle(g: &Graph) -> Result<ThreeBlocks> {
    let cycles = cycles_of(g)?;
    if cycles.iter().filter(|c| c.len() == 4).count() == 1 {
        return Err(Error::PreconditionViolated(
            "graph has exactly one 4-cycle".into(),
        ));
    }
    three_blocks(g, &cycles)
}

fn three_blocks(g: &Graph, cycles: &[Vec<usize>]) -> Result<ThreeBlocks> {
    let m: usize = cycles.iter().map(Vec::len).sum();
    let sizes = third_sizes(m);
    let any_odd = cycles.iter().any(|c| c.len() % 2 == 1);
    let result = if cycles.len() == 1 || !any_odd {
        let l = if cycles.len() == 1 {
            order_single_cycle(&cycles[0])
        } else {
            let (h0, h1) = two_colour_even_cycles(cycles);
            let (l0, l1) = order_two_matchings(g, &h0, &h1)?;
            l0.concat(&l1)?
        };
        split_three(&l, sizes)?
    } else if let Some(i) = cycles.iter().position(|c| c.len() % 3 == 0) {
        let head = three_blocks(g, &cycles[i..=i])?;
        let rest: Vec<Vec<usize>> = without(cycles, i);
        let tail = three_blocks(g, &rest)?;
        merge_blocks(&head, &tail)?
    } else {
        let i = cycles
            .iter()
            .position(|c| c.len() % 2 == 1)
            .expect("an odd cycle exists");
        let rest = without(cycles, i);
        let head = three_blocks(g, &rest)?;
        let head_sizes = head.sizes();
        let tail_sizes = [
            sizes[0] - head_sizes[0],
            sizes[1] - head_sizes[1],
            sizes[2] - head_sizes[2],
        ];
        let tail = split_three(&order_single_cycle(&cycles[i]), tail_sizes)?;
        merge_blocks(&head, &tail)?
    };
    result.check(g)?;
    Ok(result)
}

/// An ordering of `g` (2-regular, `n >= 6`) with `cms >= ⌊n/3⌋`.
pub fn order_two_regular(g: &Graph) -> Result<EdgeOrdering> {
    if g.regular_degree() != Some(2) {
        return Err(Error::NotTwoRegular);
    }
    if g.n() < 6 {
        return Err(Error::TooSmall(g.n(), 6));
    }
    let cycles = cycles_of(g)?;
    let fours: Vec<usize> = (0..cycles.len()).filter(|&i| cycles[i].len() == 4).collect();
    let l = if fours.len() != 1 {
        three_blocks(g, &cycles)?.ordering()
    } else {
        let square = &cycles[fours[0]];
        let (e0, e1, e2, e3) = (square[0], square[1], square[2], square[3]);
        let rest = without(&cycles, fours[0]);
        let blocks = three_blocks(g, &rest)?;
        let [b0, b1, b2] = &blocks.blocks;
        let m_rest: usize = blocks.sizes().iter().sum();
        let mut seq: Vec<usize> = b0.edges().to_vec();
        seq.push(e0);
        if m_rest % 3 == 2 {
            let (&e_star, shortened) = b1.edges().split_last().expect("block 1 is nonempty");
            seq.extend_from_slice(shortened);
            seq.extend([e2, e_star]);
        } else {
            seq.extend_from_slice(b1.edges());
            seq.push(e2);
        }
        seq.extend_from_slice(b2.edges());
        seq.extend([e1, e3]);
        EdgeOrdering::of_graph(g, seq)?
    };
    let measured = l.cms(g);
    if measured < g.n() / 3 {
        return Err(Error::Postcondition(format!(
            "ordering has cms {measured} < {}",
            g.n() / 3
        )));
    }
    Ok(l)
}

/// `cms = ⌊(len - 1)/2⌋` ordering of one cycle given in cyclic order.
fn order_single_cycle(cycle: &[usize]) -> EdgeOrdering {
    let len = cycle.len();
    let seq = if len % 2 == 1 {
        // every other edge, twice round
        (0..len).step_by(2).chain((1..len).step_by(2)).map(|i| cycle[i]).collect()
    } else {
        let (l0, l1) = label_alternating_cycle(cycle);
        let mut seq = l0.edges().to_vec();
        seq.extend_from_slice(l1.edges());
        seq
    };
    EdgeOrdering::new(seq).expect("cycle edges are distinct")
}

/// Labels an alternating cycle `c_0, ..., c_{2t-1}` (even positions in the
/// first matching) by `l_j(c_i) = i` and `l_{j+1}(c_{2t-1-i}) = i` for
/// `j ≡ i (mod 2)`.
fn label_alternating_cycle(cycle: &[usize]) -> (EdgeOrdering, EdgeOrdering) {
    let t = cycle.len() / 2;
    let mut l0 = Vec::with_capacity(t);
    let mut l1 = Vec::with_capacity(t);
    for i in 0..t {
        let straight = cycle[i];
        let mirrored = cycle[2 * t - 1 - i];
        if i % 2 == 0 {
            l0.push(straight);
            l1.push(mirrored);
        } else {
            l1.push(straight);
            l0.push(mirrored);
        }
    }
    (
        EdgeOrdering::new(l0).expect("distinct"),
        EdgeOrdering::new(l1).expect("distinct"),
    )
}

struct Walk {
    edges: Vec<usize>,
    closed: bool,
}

/// Walks a path or cycle component edge by edge. Paths start at their
/// lowest end vertex.
fn alternating_walk(g: &Graph, comp: &EdgeSet, h0: &EdgeSet) -> Result<Walk> {
    let mut deg = std::collections::BTreeMap::<usize, usize>::new();
    for e in comp.iter() {
        let (u, v) = g.endpoints(e);
        *deg.entry(u).or_default() += 1;
        *deg.entry(v).or_default() += 1;
    }
    let ends: Vec<usize> = deg.iter().filter(|&(_, &d)| d == 1).map(|(&v, _)| v).collect();
    let closed = ends.is_empty();
    let start = if closed {
        *deg.keys().next().expect("nonempty component")
    } else {
        ends[0]
    };
    let mut edges = Vec::with_capacity(comp.len());
    let mut v = start;
    let mut prev = usize::MAX;
    loop {
        let next = g
            .incident(v)
            .iter()
            .copied()
            .filter(|&f| comp.contains(f) && f != prev && !edges.contains(&f))
            .min();
        let Some(f) = next else { break };
        edges.push(f);
        let (a, b) = g.endpoints(f);
        v = if a == v { b } else { a };
        prev = f;
    }
    debug_assert!(edges.windows(2).all(|w| h0.contains(w[0]) != h0.contains(w[1])));
    Ok(Walk { edges, closed })
}

/// Joins paths into one virtual alternating cycle starting with an `h0`
/// edge: balanced paths oriented `h0 .. h1`, then each `h0`-heavy path
/// followed by an `h1`-heavy one.
fn chain_paths(walks: Vec<Walk>, h0: &EdgeSet) -> Vec<usize> {
    let mut balanced = Vec::new();
    let mut heavy0 = Vec::new();
    let mut heavy1 = Vec::new();
    for w in walks {
        let mut edges = w.edges;
        let starts0 = h0.contains(edges[0]);
        let ends0 = h0.contains(*edges.last().expect("nonempty"));
        match (starts0, ends0) {
            (true, false) => balanced.push(edges),
            (false, true) => {
                edges.reverse();
                balanced.push(edges);
            }
            (true, true) => heavy0.push(edges),
            (false, false) => heavy1.push(edges),
        }
    }
    let mut cycle: Vec<usize> = balanced.into_iter().flatten().collect();
    for (a, b) in heavy0.into_iter().zip(heavy1) {
        cycle.extend(a);
        cycle.extend(b);
    }
    cycle
}

fn check_pair(g: &Graph, h0: &EdgeSet, h1: &EdgeSet) -> Result<()> {
    g.check_edge_set(h0)?;
    g.check_edge_set(h1)?;
    if h0.len() != h1.len() {
        return Err(Error::SizeMismatch(h0.len(), h1.len()));
    }
    if let Some(e) = h0.intersection(h1).first() {
        return Err(Error::OverlappingEdges(e));
    }
    for h in [h0, h1] {
        if let Some((a, b)) = g.matching_conflict(h) {
            return Err(Error::NotMatching(a, b));
        }
    }
    Ok(())
}

fn two_colour_even_cycles(cycles: &[Vec<usize>]) -> (EdgeSet, EdgeSet) {
    let mut h0 = EdgeSet::new();
    let mut h1 = EdgeSet::new();
    for c in cycles {
        for (i, &e) in c.iter().enumerate() {
            if i % 2 == 0 {
                h0.insert(e);
            } else {
                h1.insert(e);
            }
        }
    }
    (h0, h1)
}

fn split_three(l: &EdgeOrdering, sizes: [usize; 3]) -> Result<ThreeBlocks> {
    let parts = l.split(&sizes)?;
    let [a, b, c]: [EdgeOrdering; 3] = parts.try_into().expect("three parts");
    Ok(ThreeBlocks { blocks: [a, b, c] })
}

fn merge_blocks(head: &ThreeBlocks, tail: &ThreeBlocks) -> Result<ThreeBlocks> {
    Ok(ThreeBlocks {
        blocks: [
            head.blocks[0].concat(&tail.blocks[0])?,
            head.blocks[1].concat(&tail.blocks[1])?,
            head.blocks[2].concat(&tail.blocks[2])?,
        ],
    })
}

fn without(cycles: &[Vec<usize>], i: usize) -> Vec<Vec<usize>> {
    cycles
        .iter()
        .enumerate()
        .filter(|&(j, _)| j != i)
        .map(|(_, c)| c.clone())
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::{cycle, cycle_types, two_regular};

    fn alternate(g: &Graph) -> (EdgeSet, EdgeSet) {
        two_colour_even_cycles(&cycles_of(g).unwrap())
    }

    #[test]
    fn even_cycle_labelling() {
        let g = cycle(8).unwrap();
        let (h0, h1) = alternate(&g);
        let (l0, l1) = order_cycle_or_paths(&g, &h0, &h1).unwrap();
        assert_eq!(l0.concat(&l1).unwrap().cms(&g), 3);
        let c4 = cycle(4).unwrap();
        let (h0, h1) = alternate(&c4);
        let (l0, l1) = order_cycle_or_paths(&c4, &h0, &h1).unwrap();
        assert_eq!(l0.concat(&l1).unwrap().cms(&c4), 1);
    }

    #[test]
    fn paths() {
        // two paths with two edges each
        let g = Graph::new(6, [(0, 1), (1, 2), (3, 4), (4, 5)]).unwrap();
        let h0: EdgeSet = [0, 2].into_iter().collect();
        let h1: EdgeSet = [1, 3].into_iter().collect();
        let (l0, l1) = order_cycle_or_paths(&g, &h0, &h1).unwrap();
        assert!(l0.concat(&l1).unwrap().cms(&g) >= 1);
        // one-edge paths of each colour and a balanced 2-path
        let g = Graph::new(7, [(0, 1), (2, 3), (4, 5), (5, 6)]).unwrap();
        let h0: EdgeSet = [0, 2].into_iter().collect();
        let h1: EdgeSet = [1, 3].into_iter().collect();
        let (l0, l1) = order_cycle_or_paths(&g, &h0, &h1).unwrap();
        assert!(l0.concat(&l1).unwrap().cms(&g) >= 1);
        let bad: EdgeSet = [2, 3].into_iter().collect();
        assert!(matches!(
            order_cycle_or_paths(&g, &[0, 1].into_iter().collect(), &bad),
            Err(Error::NotMatching(..))
        ));
    }

    #[test]
    fn mixed_cycle_rejected() {
        let g = two_regular(&[4, 4]).unwrap();
        let (h0, h1) = alternate(&g);
        assert!(matches!(
            order_cycle_or_paths(&g, &h0, &h1),
            Err(Error::PreconditionViolated(_))
        ));
        let (l0, l1) = order_two_matchings(&g, &h0, &h1).unwrap();
        assert!(l0.concat(&l1).unwrap().cms(&g) >= 3);
    }

    #[test]
    fn two_matching_examples() {
        let g = cycle(6).unwrap();
        let (h0, h1) = alternate(&g);
        let (l0, l1) = order_two_matchings(&g, &h0, &h1).unwrap();
        assert!(l0.concat(&l1).unwrap().cms(&g) >= 2);
        let g = two_regular(&[4, 6]).unwrap();
        let (h0, h1) = alternate(&g);
        let (l0, l1) = order_two_matchings(&g, &h0, &h1).unwrap();
        assert!(l0.concat(&l1).unwrap().cms(&g) >= 4);
        let g = Graph::new(3, [(0, 1), (1, 2)]).unwrap();
        let (l0, l1) = order_two_matchings(&g, &[0].into_iter().collect(), &[1].into_iter().collect()).unwrap();
        assert_eq!(l0.concat(&l1).unwrap().len(), 2);
    }

    #[test]
    fn odd_paths_are_paired() {
        // paths 0-1 (h0), 2-3 (h1), 4-5-6-7 (h0 h1 h0), 8-9-10-11 (h1 h0 h1)
        let g = Graph::new(
            12,
            [(0, 1), (2, 3), (4, 5), (5, 6), (6, 7), (8, 9), (9, 10), (10, 11)],
        )
        .unwrap();
        let h0: EdgeSet = [0, 2, 4, 6].into_iter().collect();
        let h1: EdgeSet = [1, 3, 5, 7].into_iter().collect();
        let (l0, l1) = order_two_matchings(&g, &h0, &h1).unwrap();
        assert!(l0.concat(&l1).unwrap().cms(&g) >= 3);
        let (l0, l1) = order_cycle_or_paths(&g, &h0, &h1).unwrap();
        assert!(l0.concat(&l1).unwrap().cms(&g) >= 3);
    }

    #[test]
    fn three_block_examples() {
        let g = cycle(9).unwrap();
        let b = order_no_single_4cycle(&g).unwrap();
        assert!(b.ordering().cms(&g) >= 3);
        let g = two_regular(&[3, 3]).unwrap();
        assert!(order_no_single_4cycle(&g).unwrap().ordering().cms(&g) >= 2);
        let g = two_regular(&[4, 4, 5]).unwrap();
        assert!(order_no_single_4cycle(&g).unwrap().ordering().cms(&g) >= 4);
        let g = two_regular(&[4, 5]).unwrap();
        assert!(order_no_single_4cycle(&g).is_err());
    }

    #[test]
    fn small_two_regular_examples() {
        for (lengths, want) in [(vec![4, 5], 3), (vec![4, 3], 2), (vec![12], 4)] {
            let g = two_regular(&lengths).unwrap();
            assert!(order_two_regular(&g).unwrap().cms(&g) >= want, "{lengths:?}");
        }
        assert_eq!(order_two_regular(&cycle(5).unwrap()), Err(Error::TooSmall(5, 6)));
        let path = Graph::new(3, [(0, 1), (1, 2)]).unwrap();
        assert_eq!(order_two_regular(&path), Err(Error::NotTwoRegular));
    }

    #[test]
    fn all_cycle_types_up_to_30() {
        for n in 6..=30 {
            for lengths in cycle_types(n) {
                let g = two_regular(&lengths).unwrap();
                let l = order_two_regular(&g).unwrap();
                assert!(l.covers_graph(&g));
                assert!(l.cms(&g) >= n / 3, "{lengths:?}");
            }
        }
    }
}
