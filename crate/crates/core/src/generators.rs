//! Graph families: cycles, complete graphs, unions of cycles, `B_k`,
//! `B'_k`, regular graphs containing them, and random regular graphs.

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::graph::Graph;

const PAIRING_ATTEMPTS: usize = 100_000;

/// `C_n` with `e_i = {i, i+1 mod n}`.
pub fn cycle(n: usize) -> Result<Graph> {
    if n < 3 {
        return Err(Error::LengthTooSmall(n));
    }
    Graph::new(n, (0..n).map(|i| (i, (i + 1) % n)))
}

pub fn complete(n: usize) -> Graph {
    Graph::new(n, (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v)))).expect("simple")
}

/// Vertex-disjoint union; vertices and edges of later graphs are shifted
/// past those of earlier ones.
pub fn disjoint_union(gs: &[Graph]) -> Graph {
    let mut n = 0;
    let mut pairs = Vec::new();
    for g in gs {
        pairs.extend(g.edges().iter().map(|&(u, v)| (u + n, v + n)));
        n += g.n();
    }
    Graph::new(n, pairs).expect("disjoint union of simple graphs is simple")
}

/// Union of cycles of the given lengths, each on a consecutive block of
/// vertices.
pub fn two_regular(lengths: &[usize]) -> Result<Graph> {
    let cycles = lengths.iter().map(|&l| cycle(l)).collect::<Result<Vec<_>>>()?;
    Ok(disjoint_union(&cycles))
}

/// All multisets of cycle lengths (each at least 3) summing to `n`, as
/// non-increasing sequences.
pub fn cycle_types(n: usize) -> Vec<Vec<usize>> {
    fn go(left: usize, max: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if left == 0 {
            out.push(cur.clone());
            return;
        }
        for part in (3..=max.min(left)).rev() {
            if left - part != 0 && left - part < 3 {
                continue;
            }
            cur.push(part);
            go(left - part, part, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(n, n, &mut Vec::new(), &mut out);
    out
}

/// Circulant graph on `n` vertices joining `i` to `i ± d` for each offset.
pub fn circulant(n: usize, offsets: &[usize]) -> Result<Graph> {
    let mut pairs = Vec::new();
    for &d in offsets {
        if d == 0 || d > n / 2 {
            return Err(Error::PreconditionViolated(format!(
                "offset {d} out of range for n = {n}"
            )));
        }
        for i in 0..n {
            let j = (i + d) % n;
            if 2 * d == n && j < i {
                continue;
            }
            pairs.push((i, j));
        }
    }
    Graph::new(n, pairs)
}

/// A deterministic `k`-regular circulant on `n` vertices.
pub fn regular_circulant(n: usize, k: usize) -> Result<Graph> {
    if k >= n || (n * k) % 2 == 1 {
        return Err(Error::PreconditionViolated(format!(
            "no {k}-regular graph on {n} vertices"
        )));
    }
    let mut offsets: Vec<usize> = (1..=k / 2).collect();
    if k % 2 == 1 {
        offsets.push(n / 2);
    }
    circulant(n, &offsets)
}

/// Prism `C_n □ K_2`: outer cycle `0..n`, inner cycle `n..2n`, rungs.
pub fn prism(n: usize) -> Result<Graph> {
    if n < 3 {
        return Err(Error::LengthTooSmall(n));
    }
    let mut pairs = Vec::new();
    for i in 0..n {
        pairs.push((i, (i + 1) % n));
        pairs.push((n + i, n + (i + 1) % n));
        pairs.push((i, n + i));
    }
    Graph::new(2 * n, pairs)
}

pub fn petersen() -> Graph {
    let mut pairs = Vec::new();
    for i in 0..5 {
        pairs.push((i, (i + 1) % 5));
        pairs.push((i, i + 5));
        pairs.push((5 + i, 5 + (i + 2) % 5));
    }
    Graph::new(10, pairs).expect("simple")
}

/// `B_k`. For even `k` this is `K_{k+1}`. For odd `k` it has vertices
/// `0..=k+1` and its complement is the path `1 - (k+1) - 2` together with
/// the matching `{0,3}, {4,5}, ..., {k-1,k}`; vertex `k+1` is the unique
/// vertex of degree `k-1`. Edges are listed lexicographically.
pub fn b_graph(k: usize) -> Result<Graph> {
    if k < 2 {
        return Err(Error::KTooSmall(k));
    }
    if k % 2 == 0 {
        return Ok(complete(k + 1));
    }
    let n = k + 2;
    let mut missing = vec![(1, k + 1), (2, k + 1), (0, 3)];
    missing.extend((4..k).step_by(2).map(|a| (a, a + 1)));
    let pairs = (0..n)
        .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
        .filter(|p| !missing.contains(p));
    Graph::new(n, pairs)
}

/// Degree-`(k-1)` vertex of `B_k` for odd `k`.
pub fn b_graph_low_vertex(k: usize) -> usize {
    k + 1
}

/// Two copies of `B_k` (odd `k`) joined by an edge between their
/// degree-`(k-1)` vertices. The first copy sits on `0..k+2`.
pub fn b_prime_graph(k: usize) -> Result<Graph> {
    if k % 2 == 0 {
        return Err(Error::KEven(k));
    }
    let b = b_graph(k)?;
    let two = disjoint_union(&[b.clone(), b]);
    let low = b_graph_low_vertex(k);
    let mut pairs = two.edges().to_vec();
    pairs.push((low, low + k + 2));
    Graph::new(2 * (k + 2), pairs)
}

/// A `k`-regular graph on `n` vertices containing `B_k`: `B_k` (even `k`)
/// or `B'_k` (odd `k`) on the first vertices, then a `k`-regular filler.
/// The filler is a circulant when `seed` is `None`, otherwise a seeded
/// random regular graph.
///
/// Odd `k` needs `n >= 3k + 5`; even `k` needs `n >= 2k + 2`.
pub fn bk_containing_regular(n: usize, k: usize, seed: Option<u64>) -> Result<Graph> {
    if k < 2 {
        return Err(Error::KTooSmall(k));
    }
    let (head, min_n) = if k % 2 == 0 {
        (b_graph(k)?, 2 * k + 2)
    } else {
        (b_prime_graph(k)?, 3 * k + 5)
    };
    if n < min_n || (n * k) % 2 == 1 {
        return Err(Error::PreconditionViolated(format!(
            "bk_containing_regular needs n >= {min_n} and nk even (n = {n}, k = {k})"
        )));
    }
    let rest = n - head.n();
    let filler = match seed {
        _ if rest == k + 1 => complete(rest),
        None => regular_circulant(rest, k)?,
        Some(s) => random_regular(rest, k, s)?,
    };
    Ok(disjoint_union(&[head, filler]))
}

/// Simple `k`-regular graph from the pairing model, rejecting loops and
/// repeated edges. Edges are sorted.
pub fn random_regular(n: usize, k: usize, seed: u64) -> Result<Graph> {
    if k >= n || (n * k) % 2 == 1 {
        return Err(Error::PreconditionViolated(format!(
            "no {k}-regular graph on {n} vertices"
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut points: Vec<usize> = (0..n).flat_map(|v| std::iter::repeat_n(v, k)).collect();
    'attempt: for _ in 0..PAIRING_ATTEMPTS {
        points.shuffle(&mut rng);
        let mut pairs: Vec<(usize, usize)> = points
            .chunks_exact(2)
            .map(|p| (p[0].min(p[1]), p[0].max(p[1])))
            .collect();
        pairs.sort_unstable();
        for w in pairs.windows(2) {
            if w[0] == w[1] {
                continue 'attempt;
            }
        }
        if pairs.iter().any(|&(u, v)| u == v) {
            continue;
        }
        return Graph::new(n, pairs);
    }
    Err(Error::GenerationFailed(PAIRING_ATTEMPTS))
}
