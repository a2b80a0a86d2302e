//! Proper edge colourings and matching decompositions.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::graph::{EdgeSet, Graph};

/// A partition of the edges of a graph into matchings `H_0, ..., H_{t-1}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MatchingDecomposition {
    classes: Vec<EdgeSet>,
}

impl MatchingDecomposition {
    /// Wraps `classes` after checking they partition `E(g)` into matchings.
    pub fn new(g: &Graph, classes: Vec<EdgeSet>) -> Result<Self> {
        let d = MatchingDecomposition { classes };
        d.validate(g)?;
        Ok(d)
    }

    /// Builds the decomposition whose class `i` holds the edges with
    /// colour `i`.
    pub fn from_colors(g: &Graph, colors: &[usize], t: usize) -> Result<Self> {
        if colors.len() != g.m() {
            return Err(Error::SizeMismatch(colors.len(), g.m()));
        }
        let mut classes = vec![EdgeSet::new(); t];
        for (e, &c) in colors.iter().enumerate() {
            if c >= t {
                return Err(Error::PreconditionViolated(format!(
                    "edge {e} has colour {c} outside 0..{t}"
                )));
            }
            classes[c].insert(e);
        }
        Self::new(g, classes)
    }

    pub fn validate(&self, g: &Graph) -> Result<()> {
        let mut seen = EdgeSet::new();
        for class in &self.classes {
            g.check_edge_set(class)?;
            if let Some(e) = class.intersection(&seen).first() {
                return Err(Error::OverlappingEdges(e));
            }
            if let Some((a, b)) = g.matching_conflict(class) {
                return Err(Error::NotMatching(a, b));
            }
            seen = seen.union(class);
        }
        if seen.len() != g.m() {
            return Err(Error::SizeMismatch(seen.len(), g.m()));
        }
        Ok(())
    }

    pub fn classes(&self) -> &[EdgeSet] {
        &self.classes
    }

    pub fn class(&self, i: usize) -> &EdgeSet {
        &self.classes[i]
    }

    /// Number of classes `t`.
    pub fn len(&self) -> usize {
        self.classes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.classes.is_empty()
    }

    pub fn sizes(&self) -> Vec<usize> {
        self.classes.iter().map(EdgeSet::len).collect()
    }

    /// Any two class sizes differ by at most one.
    pub fn is_equitable(&self) -> bool {
        let sizes = self.sizes();
        match (sizes.iter().min(), sizes.iter().max()) {
            (Some(lo), Some(hi)) => hi - lo <= 1,
            _ => true,
        }
    }

    /// Colour of each edge.
    pub fn colors(&self, m: usize) -> Vec<usize> {
        let mut colors = vec![usize::MAX; m];
        for (i, class) in self.classes.iter().enumerate() {
            for e in class.iter() {
                colors[e] = i;
            }
        }
        colors
    }
}

/// Edge colouring with at most `Δ + 1` colours (Misra–Gries fan recolouring).
pub fn edge_color_delta_plus_one(g: &Graph) -> MatchingDecomposition {
    let palette = g.max_degree() + 1;
    let mut state = ColorState::new(g, palette);
    for e in 0..g.m() {
        state.misra_gries_insert(e);
    }
    let t = state.colors_used();
    let colors: Vec<usize> = state.edge_color.iter().map(|c| c.expect("all coloured")).collect();
    MatchingDecomposition::from_colors(g, &colors, t).expect("fan recolouring is proper")
}

/// Edge colouring of a bipartite graph with `Δ` colours by alternating-path
/// swaps. Returns `None` if `g` is not bipartite.
pub fn edge_color_bipartite(g: &Graph) -> Option<MatchingDecomposition> {
    g.bipartition()?;
    let palette = g.max_degree();
    let mut state = ColorState::new(g, palette.max(1));
    for e in 0..g.m() {
        let (u, v) = g.endpoints(e);
        let a = state.free_color(u);
        let b = state.free_color(v);
        if !state.is_free(v, a) {
            // a is used at v and b is free there: flip the a/b path from v,
            // which cannot reach u in a bipartite graph
            state.invert_path(v, a, b);
        }
        state.set(e, a);
    }
    let colors: Vec<usize> = state.edge_color.iter().map(|c| c.expect("all coloured")).collect();
    Some(MatchingDecomposition::from_colors(g, &colors, palette).expect("bipartite colouring is proper"))
}

/// Limits for [`exact_chromatic_index`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ChromaticSearch {
    /// Graphs with more edges than this are refused (bipartite graphs and
    /// graphs of maximum degree at most one are exempt).
    pub edge_cap: usize,
    /// Backtracking nodes allowed per connected component.
    pub node_budget: u64,
}

impl Default for ChromaticSearch {
    fn default() -> Self {
        ChromaticSearch {
            edge_cap: 40,
            node_budget: 2_000_000,
        }
    }
}

/// Chromatic index with a witness colouring.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChromaticIndex {
    pub value: usize,
    pub max_degree: usize,
    pub witness: MatchingDecomposition,
}

impl ChromaticIndex {
    pub fn is_class_one(&self) -> bool {
        self.value == self.max_degree
    }
}

/// Decides between `Δ` and `Δ + 1` colours.
pub fn exact_chromatic_index(g: &Graph, search: ChromaticSearch) -> Result<ChromaticIndex> {
    let delta = g.max_degree();
    if delta <= 1 {
        let classes = if g.m() == 0 { Vec::new() } else { vec![g.all_edges()] };
        return Ok(ChromaticIndex {
            value: delta,
            max_degree: delta,
            witness: MatchingDecomposition::new(g, classes)?,
        });
    }
    if let Some(witness) = edge_color_bipartite(g) {
        return Ok(ChromaticIndex {
            value: delta,
            max_degree: delta,
            witness,
        });
    }
    if g.m() > search.edge_cap {
        return Err(Error::SearchCapExceeded(format!(
            "{} edges exceed the cap of {}",
            g.m(),
            search.edge_cap
        )));
    }
    let components = g.edge_components(&g.all_edges());
    if components.iter().any(|comp| is_overfull(g, comp, delta)) {
        return Ok(ChromaticIndex {
            value: delta + 1,
            max_degree: delta,
            witness: edge_color_delta_plus_one(g),
        });
    }
    let kempe = (0..KEMPE_RESTARTS)
        .find_map(|seed| kempe_delta_coloring(g, delta, 50 * g.m() as u64 + 1000, seed));
    if let Some(colors) = kempe {
        return Ok(ChromaticIndex {
            value: delta,
            max_degree: delta,
            witness: MatchingDecomposition::from_colors(g, &colors, delta)?,
        });
    }
    let mut colors = vec![usize::MAX; g.m()];
    for comp in components {
        let edges = comp.to_vec();
        let mut bt = Backtrack::new(g, &edges, delta, search.node_budget);
        match bt.run() {
            Some(true) => {
                for (&e, &c) in edges.iter().zip(&bt.color) {
                    colors[e] = c;
                }
            }
            Some(false) => {
                return Ok(ChromaticIndex {
                    value: delta + 1,
                    max_degree: delta,
                    witness: edge_color_delta_plus_one(g),
                });
            }
            None => {
                return Err(Error::SearchCapExceeded(format!(
                    "node budget {} exhausted",
                    search.node_budget
                )))
            }
        }
    }
    Ok(ChromaticIndex {
        value: delta,
        max_degree: delta,
        witness: MatchingDecomposition::from_colors(g, &colors, delta)?,
    })
}

const KEMPE_RESTARTS: u64 = 32;

/// Randomised Kempe-chain repair towards a `Δ`-colouring, starting from a
/// `Δ + 1` colouring with its smallest class uncoloured. Gives up after
/// `steps` repair attempts; a returned colouring is proper.
fn kempe_delta_coloring(g: &Graph, delta: usize, steps: u64, seed: u64) -> Option<Vec<usize>> {
    let start = edge_color_delta_plus_one(g);
    let colors = start.colors(g.m());
    if start.len() <= delta {
        return Some(colors);
    }
    let sizes = start.sizes();
    let drop = (0..sizes.len()).min_by_key(|&c| (sizes[c], c)).expect("non-empty");
    let mut st = ColorState::new(g, delta);
    let mut pending = Vec::new();
    for (e, &c) in colors.iter().enumerate() {
        match c.cmp(&drop) {
            std::cmp::Ordering::Equal => pending.push(e),
            std::cmp::Ordering::Less => st.set(e, c),
            std::cmp::Ordering::Greater => st.set(e, c - 1),
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..steps {
        if pending.is_empty() {
            break;
        }
        let idx = rng.gen_range(0..pending.len());
        let e = pending[idx];
        let (u, v) = g.endpoints(e);
        let free_u: Vec<usize> = (0..delta).filter(|&c| st.is_free(u, c)).collect();
        let free_v: Vec<usize> = (0..delta).filter(|&c| st.is_free(v, c)).collect();
        if let Some(&c) = free_u.iter().find(|c| free_v.contains(c)) {
            st.set(e, c);
            pending.swap_remove(idx);
            continue;
        }
        let a = free_u[rng.gen_range(0..free_u.len())];
        let b = free_v[rng.gen_range(0..free_v.len())];
        st.invert_path(v, a, b);
        if st.is_free(u, a) && st.is_free(v, a) {
            st.set(e, a);
            pending.swap_remove(idx);
            continue;
        }
        // the chain closed on u: move the hole to a random neighbour
        let around: Vec<usize> = g
            .neighbors_of_edge(e)
            .filter(|&f| st.edge_color[f].is_some())
            .collect();
        let f = around[rng.gen_range(0..around.len())];
        let c = st.edge_color[f].expect("coloured");
        st.unset(f);
        if st.is_free(u, c) && st.is_free(v, c) {
            st.set(e, c);
            pending[idx] = f;
        } else {
            st.set(f, c);
        }
    }
    if !pending.is_empty() {
        return None;
    }
    st.edge_color.into_iter().collect()
}

/// More than `Δ·⌊N/2⌋` edges on `N` vertices cannot fit in `Δ` matchings.
fn is_overfull(g: &Graph, edges: &EdgeSet, delta: usize) -> bool {
    let n = g.vertices_of(edges).iter().filter(|&&t| t).count();
    edges.len() > delta * (n / 2)
}

/// An equitable decomposition of `g` into exactly `t` matchings.
pub fn equitable_decomposition(g: &Graph, t: usize) -> Result<MatchingDecomposition> {
    let delta = g.max_degree();
    if t < delta || (t == 0 && g.m() > 0) {
        return Err(Error::TooFewClasses {
            requested: t,
            chromatic: delta.max(1),
        });
    }
    let start = if t > delta {
        edge_color_delta_plus_one(g)
    } else {
        let chi = exact_chromatic_index(g, ChromaticSearch::default())?;
        if chi.value > t {
            return Err(Error::TooFewClasses {
                requested: t,
                chromatic: chi.value,
            });
        }
        chi.witness
    };
    rebalance(g, &start, t)
}

/// Turns a proper colouring with at most `t` classes into an equitable one
/// with exactly `t` classes by swapping alternating paths.
pub fn rebalance(
    g: &Graph,
    decomposition: &MatchingDecomposition,
    t: usize,
) -> Result<MatchingDecomposition> {
    if decomposition.len() > t {
        let nonempty = decomposition.classes().iter().filter(|c| !c.is_empty()).count();
        if nonempty > t {
            return Err(Error::TooFewClasses {
                requested: t,
                chromatic: nonempty,
            });
        }
    }
    let mut classes: Vec<EdgeSet> = decomposition
        .classes()
        .iter()
        .filter(|c| !c.is_empty())
        .cloned()
        .collect();
    classes.resize(t, EdgeSet::new());
    loop {
        let sizes: Vec<usize> = classes.iter().map(EdgeSet::len).collect();
        let (big, &hi) = sizes
            .iter()
            .enumerate()
            .max_by_key(|&(i, s)| (*s, std::cmp::Reverse(i)))
            .expect("t > 0");
        let (small, &lo) = sizes
            .iter()
            .enumerate()
            .min_by_key(|&(i, s)| (*s, i))
            .expect("t > 0");
        if hi <= lo + 1 {
            break;
        }
        let union = classes[big].union(&classes[small]);
        let component = g
            .edge_components(&union)
            .into_iter()
            .find(|comp| {
                comp.intersection(&classes[big]).len() > comp.intersection(&classes[small]).len()
            })
            .expect("a larger class has a component where it dominates");
        let from_big = component.intersection(&classes[big]);
        let from_small = component.intersection(&classes[small]);
        classes[big] = classes[big].difference(&from_big).union(&from_small);
        classes[small] = classes[small].difference(&from_small).union(&from_big);
    }
    MatchingDecomposition::new(g, classes)
}

struct ColorState<'g> {
    g: &'g Graph,
    palette: usize,
    edge_color: Vec<Option<usize>>,
    /// `at[v][c]` is the edge of colour `c` at `v`.
    at: Vec<Vec<Option<usize>>>,
}

impl<'g> ColorState<'g> {
    fn new(g: &'g Graph, palette: usize) -> Self {
        ColorState {
            g,
            palette,
            edge_color: vec![None; g.m()],
            at: vec![vec![None; palette]; g.n()],
        }
    }

    fn other(&self, e: usize, v: usize) -> usize {
        let (a, b) = self.g.endpoints(e);
        if a == v {
            b
        } else {
            a
        }
    }

    fn is_free(&self, v: usize, c: usize) -> bool {
        self.at[v][c].is_none()
    }

    fn free_color(&self, v: usize) -> usize {
        (0..self.palette)
            .find(|&c| self.is_free(v, c))
            .expect("palette exceeds degree")
    }

    fn set(&mut self, e: usize, c: usize) {
        let (u, v) = self.g.endpoints(e);
        debug_assert!(self.is_free(u, c) && self.is_free(v, c));
        self.edge_color[e] = Some(c);
        self.at[u][c] = Some(e);
        self.at[v][c] = Some(e);
    }

    fn unset(&mut self, e: usize) {
        if let Some(c) = self.edge_color[e].take() {
            let (u, v) = self.g.endpoints(e);
            self.at[u][c] = None;
            self.at[v][c] = None;
        }
    }

    fn colors_used(&self) -> usize {
        self.edge_color
            .iter()
            .flatten()
            .map(|&c| c + 1)
            .max()
            .unwrap_or(0)
    }

    /// Swaps colours `a` and `b` on the maximal path leaving `start` along
    /// an edge of colour `a`.
    fn invert_path(&mut self, start: usize, a: usize, b: usize) {
        let mut path = Vec::new();
        let mut v = start;
        let mut want = a;
        while let Some(e) = self.at[v][want] {
            if path.contains(&e) {
                break;
            }
            path.push(e);
            v = self.other(e, v);
            want = if want == a { b } else { a };
        }
        let old: Vec<usize> = path.iter().map(|&e| self.edge_color[e].expect("coloured")).collect();
        for &e in &path {
            self.unset(e);
        }
        for (&e, &c) in path.iter().zip(&old) {
            self.set(e, if c == a { b } else { a });
        }
    }

    fn misra_gries_insert(&mut self, e: usize) {
        let (u, v) = self.g.endpoints(e);
        // maximal fan at u starting with v
        let mut fan = vec![v];
        loop {
            let last = *fan.last().expect("non-empty");
            let next = self.g.incident(u).iter().copied().find_map(|f| {
                let x = self.other(f, u);
                let c = self.edge_color[f]?;
                (!fan.contains(&x) && self.is_free(last, c)).then_some(x)
            });
            match next {
                Some(x) => fan.push(x),
                None => break,
            }
        }
        let c = self.free_color(u);
        let d = self.free_color(*fan.last().expect("non-empty"));
        if c != d {
            self.invert_path(u, d, c);
        }
        // first fan vertex w on which d is free and whose prefix is still a fan
        let mut end = 0;
        for i in 0..fan.len() {
            if i > 0 {
                let f = self.g.edge_index(u, fan[i]).expect("fan edge");
                let ok = self.edge_color[f].is_some_and(|col| self.is_free(fan[i - 1], col));
                if !ok {
                    break;
                }
            }
            if self.is_free(fan[i], d) {
                end = i;
                break;
            }
        }
        // rotate the fan prefix
        let fan_edges: Vec<usize> = fan[..=end]
            .iter()
            .map(|&x| self.g.edge_index(u, x).expect("fan edge"))
            .collect();
        let shifted: Vec<Option<usize>> = fan_edges[1..]
            .iter()
            .map(|&f| self.edge_color[f])
            .collect();
        for &f in &fan_edges {
            self.unset(f);
        }
        for (i, col) in shifted.into_iter().enumerate() {
            self.set(fan_edges[i], col.expect("fan edges beyond the first are coloured"));
        }
        self.set(fan_edges[end], d);
    }
}

/// Exhaustive `k`-edge-colouring of one component, most constrained edge
/// first, with new colours introduced in increasing order.
struct Backtrack<'g> {
    g: &'g Graph,
    edges: &'g [usize],
    k: usize,
    color: Vec<usize>,
    /// bitmask of colours used at each vertex
    used_at: Vec<u64>,
    uncolored_at: Vec<usize>,
    nodes: u64,
    budget: u64,
}

impl<'g> Backtrack<'g> {
    fn new(g: &'g Graph, edges: &'g [usize], k: usize, budget: u64) -> Self {
        let mut uncolored_at = vec![0; g.n()];
        for &e in edges {
            let (u, v) = g.endpoints(e);
            uncolored_at[u] += 1;
            uncolored_at[v] += 1;
        }
        Backtrack {
            g,
            edges,
            uncolored_at,
            k,
            color: vec![usize::MAX; edges.len()],
            used_at: vec![0; g.n()],
            nodes: 0,
            budget,
        }
    }

    /// `Some(found)` or `None` when the budget ran out.
    fn run(&mut self) -> Option<bool> {
        assert!(self.k <= 64, "colour masks hold at most 64 colours");
        self.search(0, 0)
    }

    fn search(&mut self, placed: usize, colors_open: usize) -> Option<bool> {
        if placed == self.edges.len() {
            return Some(true);
        }
        self.nodes += 1;
        if self.nodes > self.budget {
            return None;
        }
        let all = if self.k == 64 { u64::MAX } else { (1u64 << self.k) - 1 };
        // pick the uncoloured edge with the fewest available colours
        let mut pick = None;
        let mut pick_free = u32::MAX;
        for (i, &e) in self.edges.iter().enumerate() {
            if self.color[i] != usize::MAX {
                continue;
            }
            let (u, v) = self.g.endpoints(e);
            let free = (all & !(self.used_at[u] | self.used_at[v])).count_ones();
            if free < pick_free {
                pick_free = free;
                pick = Some(i);
                if free == 0 {
                    return Some(false);
                }
            }
        }
        for (v, &left) in self.uncolored_at.iter().enumerate() {
            if left > 0 && left > (all & !self.used_at[v]).count_ones() as usize {
                return Some(false);
            }
        }
        let i = pick.expect("an uncoloured edge remains");
        let e = self.edges[i];
        let (u, v) = self.g.endpoints(e);
        let blocked = self.used_at[u] | self.used_at[v];
        let limit = (colors_open + 1).min(self.k);
        for c in 0..limit {
            if blocked & (1 << c) != 0 {
                continue;
            }
            self.color[i] = c;
            self.used_at[u] |= 1 << c;
            self.used_at[v] |= 1 << c;
            self.uncolored_at[u] -= 1;
            self.uncolored_at[v] -= 1;
            match self.search(placed + 1, colors_open.max(c + 1)) {
                Some(false) => {}
                other => return other,
            }
            self.used_at[u] &= !(1 << c);
            self.used_at[v] &= !(1 << c);
            self.uncolored_at[u] += 1;
            self.uncolored_at[v] += 1;
            self.color[i] = usize::MAX;
        }
        Some(false)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn cycle(n: usize) -> Graph {
        Graph::new(n, (0..n).map(|i| (i, (i + 1) % n))).unwrap()
    }

    fn complete(n: usize) -> Graph {
        Graph::new(n, (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v)))).unwrap()
    }

    fn petersen() -> Graph {
        let mut pairs = Vec::new();
        for i in 0..5 {
            pairs.push((i, (i + 1) % 5));
            pairs.push((i, i + 5));
            pairs.push((5 + i, 5 + (i + 2) % 5));
        }
        Graph::new(10, pairs).unwrap()
    }

    fn b3() -> Graph {
        Graph::new(5, [(0, 1), (0, 2), (0, 4), (1, 2), (1, 3), (2, 3), (3, 4)]).unwrap()
    }

    #[test]
    fn delta_plus_one_small_cases() {
        assert_eq!(edge_color_delta_plus_one(&cycle(5)).len(), 3);
        assert!(edge_color_delta_plus_one(&cycle(6)).len() <= 3);
        assert!(edge_color_delta_plus_one(&complete(4)).len() <= 4);
        assert!(edge_color_bipartite(&cycle(6)).unwrap().len() == 2);
        assert!(edge_color_bipartite(&cycle(5)).is_none());
    }

    #[test]
    fn chromatic_index_examples() {
        let s = ChromaticSearch::default();
        let c6 = exact_chromatic_index(&cycle(6), s).unwrap();
        assert_eq!(c6.value, 2);
        assert!(c6.is_class_one());
        assert_eq!(exact_chromatic_index(&cycle(5), s).unwrap().value, 3);
        let k4 = exact_chromatic_index(&complete(4), s).unwrap();
        assert_eq!(k4.value, 3);
        assert_eq!(k4.witness.sizes(), vec![2, 2, 2]);
        let p = exact_chromatic_index(&petersen(), s).unwrap();
        assert_eq!(p.value, 4);
        assert!(!p.is_class_one());
        assert_eq!(exact_chromatic_index(&b3(), s).unwrap().value, 4);
        assert_eq!(exact_chromatic_index(&complete(5), s).unwrap().value, 5);
    }

    #[test]
    fn chromatic_cap() {
        let big = complete(11); // 55 edges, not bipartite
        let err = exact_chromatic_index(&big, ChromaticSearch::default()).unwrap_err();
        assert!(matches!(err, Error::SearchCapExceeded(_)));
    }

    #[test]
    fn equitable_examples() {
        let mut sizes = equitable_decomposition(&cycle(5), 3).unwrap().sizes();
        sizes.sort_unstable();
        assert_eq!(sizes, vec![1, 2, 2]);
        assert_eq!(equitable_decomposition(&cycle(6), 2).unwrap().sizes(), vec![3, 3]);
        assert_eq!(equitable_decomposition(&complete(4), 3).unwrap().sizes(), vec![2, 2, 2]);
        assert!(matches!(
            equitable_decomposition(&cycle(5), 2),
            Err(Error::TooFewClasses { .. })
        ));
        assert!(matches!(
            equitable_decomposition(&petersen(), 3),
            Err(Error::TooFewClasses { requested: 3, chromatic: 4 })
        ));
    }

    fn arb_graph() -> impl Strategy<Value = Graph> {
        (2usize..10).prop_flat_map(|n| {
            let pairs: Vec<(usize, usize)> = (0..n)
                .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
                .collect();
            proptest::sample::subsequence(pairs.clone(), 0..=pairs.len())
                .prop_shuffle()
                .prop_map(move |ps| Graph::new(n, ps).unwrap())
        })
    }

    proptest! {
        #[test]
        fn misra_gries_is_proper(g in arb_graph()) {
            let d = edge_color_delta_plus_one(&g);
            prop_assert!(d.validate(&g).is_ok());
            prop_assert!(d.len() <= g.max_degree() + 1);
        }

        #[test]
        fn equitable_invariants(g in arb_graph(), extra in 0usize..3) {
            let chi = exact_chromatic_index(&g, ChromaticSearch { edge_cap: 64, ..Default::default() }).unwrap();
            prop_assert!(chi.value == g.max_degree() || chi.value == g.max_degree() + 1);
            let t = chi.value.max(1) + extra;
            let d = equitable_decomposition(&g, t).unwrap();
            prop_assert_eq!(d.len(), t);
            prop_assert!(d.validate(&g).is_ok());
            prop_assert!(d.is_equitable());
            let (lo, hi) = (g.m() / t, g.m().div_ceil(t));
            for s in d.sizes() {
                prop_assert!(s == lo || s == hi);
            }
        }
    }
}
