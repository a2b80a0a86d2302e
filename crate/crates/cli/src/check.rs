//! A second cms measurement that shares no code with `EdgeOrdering::cms`.
//!
//! The library walks edge pairs; this walks vertices. Around each vertex the
//! labels of its edges sit on a circle of length `m`, and the closest pair
//! is always a pair of circular neighbours.

use cms_core::Graph;

/// `cms` of the ordering that puts edge `seq[i]` at label `i`. `seq` must
/// be a permutation of the edge indices of `g`.
pub fn cms_by_vertices(g: &Graph, seq: &[usize]) -> usize {
    let m = seq.len();
    let mut at_vertex: Vec<Vec<usize>> = vec![Vec::new(); g.n()];
    for (label, &e) in seq.iter().enumerate() {
        let (u, v) = g.edges()[e];
        at_vertex[u].push(label);
        at_vertex[v].push(label);
    }
    let mut best = m;
    for labels in &mut at_vertex {
        if labels.len() < 2 {
            continue;
        }
        labels.sort_unstable();
        let wrap = labels[0] + m - labels[labels.len() - 1];
        let gaps = labels.windows(2).map(|w| w[1] - w[0]).chain([wrap]);
        for gap in gaps {
            best = best.min(gap.min(m - gap));
        }
    }
    best
}
