//! `(x, w)`-semipartitions and their extension to full `X/Y/Z` partitions.
//!
//! All constructions work against an equitable matching decomposition
//! `H_0, ..., H_{c-1}` and index classes modulo `c`.

use num_rational::Ratio;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::coloring::MatchingDecomposition;
use crate::error::{Error, Result};
use crate::graph::{EdgeSet, Graph};

/// Default number of samples drawn by [`semipartition_random`].
pub const DEFAULT_RETRIES: usize = 64;

/// Sets `X_i ⊆ E(H_i)` of a common size `x` with at least `w` vertices
/// `i`-covered for every `i`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Semipartition {
    pub decomposition: MatchingDecomposition,
    pub x_sets: Vec<EdgeSet>,
    pub x: usize,
    pub w: usize,
}

impl Semipartition {
    pub fn c(&self) -> usize {
        self.decomposition.len()
    }

    /// Checks containment, sizes and the covering condition.
    pub fn check(&self, g: &Graph) -> Result<()> {
        let c = self.c();
        if self.x_sets.len() != c {
            return Err(Error::SizeMismatch(self.x_sets.len(), c));
        }
        for (i, xs) in self.x_sets.iter().enumerate() {
            if !xs.is_subset(self.decomposition.class(i)) {
                return Err(Error::PreconditionViolated(format!("X_{i} is not inside H_{i}")));
            }
            if xs.len() != self.x {
                return Err(Error::PreconditionViolated(format!(
                    "|X_{i}| = {} but x = {}",
                    xs.len(),
                    self.x
                )));
            }
        }
        for i in 0..c {
            let covered = i_covered_vertices(g, &self.decomposition, &self.x_sets, i).len();
            if covered < self.w {
                return Err(Error::PreconditionViolated(format!(
                    "only {covered} vertices are {i}-covered, w = {}",
                    self.w
                )));
            }
        }
        Ok(())
    }
}

/// A partition of `E(H)` into `X_i, Y_i, Z_i` with `X_i ∪ Y_i ∪ Z_i = E(H_i)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct XyzPartition {
    pub decomposition: MatchingDecomposition,
    pub x_sets: Vec<EdgeSet>,
    pub y_sets: Vec<EdgeSet>,
    pub z_sets: Vec<EdgeSet>,
    pub x: usize,
    pub y: usize,
    pub w: usize,
}

impl XyzPartition {
    pub fn c(&self) -> usize {
        self.decomposition.len()
    }

    /// `Y'_i`: edges of `Y_i` meeting two edges of `X_{i-1}`.
    pub fn y_prime(&self, g: &Graph, i: usize) -> EdgeSet {
        let c = self.c();
        let prev = &self.x_sets[(i + c - 1) % c];
        let covered = g.vertices_of(prev);
        self.y_sets[i]
            .iter()
            .filter(|&e| hits(g, &covered, e) == 2)
            .collect()
    }
}

/// `y = ⌈3x − 3w/2⌉`, or `None` when `2w > 3x`.
pub fn y_for(x: usize, w: usize) -> Option<usize> {
    if 2 * w > 3 * x {
        return None;
    }
    Some((6 * x - 3 * w).div_ceil(2))
}

/// Which vertices of `g` are `i`-covered for `x_sets`: they meet `X_i` and
/// either meet `X_{i+1}` or miss `H_{i+1}` altogether.
pub fn i_covered_vertices(
    g: &Graph,
    d: &MatchingDecomposition,
    x_sets: &[EdgeSet],
    i: usize,
) -> Vec<usize> {
    let c = x_sets.len();
    if c == 0 {
        return Vec::new();
    }
    let i = i % c;
    let next = (i + 1) % c;
    let in_x = g.vertices_of(&x_sets[i]);
    let in_x_next = g.vertices_of(&x_sets[next]);
    let in_h_next = g.vertices_of(d.class(next));
    (0..g.n())
        .filter(|&v| in_x[v] && (in_x_next[v] || !in_h_next[v]))
        .collect()
}

/// Outcome of one property check.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Verdict {
    /// 1 through 6.
    pub property: u8,
    pub passed: bool,
    pub witness: Option<Witness>,
}

/// Why a property failed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Witness {
    /// Two edges that should not be adjacent, or a class pair that breaks
    /// the structure.
    EdgePair { class: usize, a: usize, b: usize },
    /// A count that overshot or undershot its limit.
    Count { class: usize, found: usize, limit: usize },
    Message(String),
}

impl std::fmt::Display for Witness {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Witness::EdgePair { class, a, b } => write!(f, "class {class}: edges {a} and {b}"),
            Witness::Count { class, found, limit } => {
                write!(f, "class {class}: found {found}, limit {limit}")
            }
            Witness::Message(s) => f.write_str(s),
        }
    }
}

fn verdict(property: u8, witness: Option<Witness>) -> Verdict {
    Verdict {
        property,
        passed: witness.is_none(),
        witness,
    }
}

/// Evaluates (P1) through (P6) independently.
pub fn verify_partition(g: &Graph, p: &XyzPartition) -> Vec<Verdict> {
    let c = p.c();
    let shapes_ok = p.x_sets.len() == c && p.y_sets.len() == c && p.z_sets.len() == c;
    if !shapes_ok {
        let w = Witness::Message(format!(
            "expected {c} sets of each kind, got {}/{}/{}",
            p.x_sets.len(),
            p.y_sets.len(),
            p.z_sets.len()
        ));
        return (1..=6).map(|k| verdict(k, Some(w.clone()))).collect();
    }
    let cap = if c == 0 { 0 } else { g.m() / c };

    let p1 = match y_for(p.x, p.w) {
        None => Some(Witness::Message(format!("w = {} exceeds 3x/2 with x = {}", p.w, p.x))),
        Some(y) if y != p.y => Some(Witness::Message(format!("y = {} but the formula gives {y}", p.y))),
        Some(y) if p.x + 2 * y > cap => Some(Witness::Count {
            class: 0,
            found: p.x + 2 * y,
            limit: cap,
        }),
        Some(_) => None,
    };

    let mut p2 = None;
    for i in 0..c {
        let (xs, ys, zs) = (&p.x_sets[i], &p.y_sets[i], &p.z_sets[i]);
        let overlap = xs
            .intersection(ys)
            .union(&xs.intersection(zs))
            .union(&ys.intersection(zs));
        if let Some(e) = overlap.first() {
            p2 = Some(Witness::Message(format!("edge {e} lies in two sets of class {i}")));
            break;
        }
        let h = xs.union(ys).union(zs);
        if &h != p.decomposition.class(i) {
            p2 = Some(Witness::Message(format!("X_{i} ∪ Y_{i} ∪ Z_{i} is not H_{i}")));
            break;
        }
    }
    if p2.is_none() {
        if let Err(e) = p.decomposition.validate(g) {
            p2 = Some(Witness::Message(e.to_string()));
        } else if !p.decomposition.is_equitable() {
            p2 = Some(Witness::Message(format!(
                "class sizes {:?} are not equitable",
                p.decomposition.sizes()
            )));
        }
    }

    let mut p3 = None;
    for i in 0..c {
        if p.x_sets[i].len() != p.x {
            p3 = Some(Witness::Count {
                class: i,
                found: p.x_sets[i].len(),
                limit: p.x,
            });
            break;
        }
        if p.y_sets[i].len() != p.y {
            p3 = Some(Witness::Count {
                class: i,
                found: p.y_sets[i].len(),
                limit: p.y,
            });
            break;
        }
    }

    let mut p4 = None;
    'p4: for i in 0..c {
        let z_next = &p.z_sets[(i + 1) % c];
        for a in p.x_sets[i].iter() {
            if let Some(b) = g.neighbors_of_edge(a).find(|&b| z_next.contains(b)) {
                p4 = Some(Witness::EdgePair { class: i, a, b });
                break 'p4;
            }
        }
    }

    let mut p5 = None;
    'p5: for i in 0..c {
        let yp = p.y_prime(g, i);
        if 3 * yp.len() > p.y {
            p5 = Some(Witness::Count {
                class: i,
                found: yp.len(),
                limit: p.y / 3,
            });
            break;
        }
        let z_next = &p.z_sets[(i + 1) % c];
        for a in yp.iter() {
            let zs: Vec<usize> = g.neighbors_of_edge(a).filter(|&b| z_next.contains(b)).collect();
            if zs.len() > 1 {
                p5 = Some(Witness::EdgePair {
                    class: i,
                    a,
                    b: zs[1],
                });
                break 'p5;
            }
        }
    }

    let mut p6 = None;
    for i in 0..c {
        let found = i_covered_vertices(g, &p.decomposition, &p.x_sets, i).len();
        if found < p.w {
            p6 = Some(Witness::Count {
                class: i,
                found,
                limit: p.w,
            });
            break;
        }
    }

    vec![
        verdict(1, p1),
        verdict(2, p2),
        verdict(3, p3),
        verdict(4, p4),
        verdict(5, p5),
        verdict(6, p6),
    ]
}

/// Number of endpoints of `e` marked in `covered`.
fn hits(g: &Graph, covered: &[bool], e: usize) -> usize {
    let (u, v) = g.endpoints(e);
    covered[u] as usize + covered[v] as usize
}

/// `at[j][v]`: the edge of class `j` at vertex `v`.
fn class_maps(g: &Graph, d: &MatchingDecomposition) -> Vec<Vec<Option<usize>>> {
    d.classes()
        .iter()
        .map(|class| {
            let mut at = vec![None; g.n()];
            for e in class.iter() {
                let (u, v) = g.endpoints(e);
                at[u] = Some(e);
                at[v] = Some(e);
            }
            at
        })
        .collect()
}

/// Adds lowest-index edges of `class` to `set` until it has `size` edges.
fn pad(set: &mut EdgeSet, class: &EdgeSet, size: usize) {
    for e in class.iter() {
        if set.len() >= size {
            break;
        }
        set.insert(e);
    }
}

fn regular_degree_with(g: &Graph, d: &MatchingDecomposition, classes: usize) -> Result<usize> {
    let k = g.regular_degree().ok_or_else(|| {
        Error::PreconditionViolated("the graph is not regular".into())
    })?;
    if d.len() != classes {
        return Err(Error::PreconditionViolated(format!(
            "decomposition has {} classes, expected {classes}",
            d.len()
        )));
    }
    if !d.is_equitable() {
        return Err(Error::PreconditionViolated("decomposition is not equitable".into()));
    }
    d.validate(g)?;
    Ok(k)
}

/// Greedy vertex-set construction for a `k`-regular graph split into `k`
/// perfect matchings; `w = x + ⌊(x − 1)/(k − 1)⌋`.
///
/// Grows `V_2 ⊆ ... ⊆ V_w`, each time feeding the class with the fewest
/// induced edges, then lets `X_j` be the `H_j` edges touching `V_w`.
pub fn semipartition_class1(
    g: &Graph,
    d: &MatchingDecomposition,
    x: usize,
) -> Result<Semipartition> {
    let k = g.regular_degree().unwrap_or(0);
    if k < 2 {
        return Err(Error::PreconditionViolated(format!("need a k-regular graph with k >= 2, got {k}")));
    }
    regular_degree_with(g, d, k)?;
    let n = g.n();
    if x == 0 || 2 * x > n {
        return Err(Error::PreconditionViolated(format!("x = {x} must lie in 1..={}", n / 2)));
    }
    let w = x + (x - 1) / (k - 1);
    let at = class_maps(g, d);
    let mut inside = vec![false; n];
    let mut counts = vec![0usize; k];

    let add = |v: usize, inside: &mut Vec<bool>, counts: &mut Vec<usize>| {
        for (j, map) in at.iter().enumerate() {
            let e = map[v].expect("class-1 regular: every vertex meets every class");
            let (a, b) = g.endpoints(e);
            let other = if a == v { b } else { a };
            if inside[other] {
                counts[j] += 1;
            }
        }
        inside[v] = true;
    };

    if w == 1 {
        add(0, &mut inside, &mut counts);
    } else {
        let (a, b) = g.endpoints(0);
        add(a, &mut inside, &mut counts);
        add(b, &mut inside, &mut counts);
        check_class1_counts(&counts, 2, k)?;
        for h in 2..w {
            let a1 = (h - 1) / k;
            let (j0, &low) = counts
                .iter()
                .enumerate()
                .min_by_key(|&(j, &cnt)| (cnt, j))
                .expect("k >= 2");
            let u = if low > a1 {
                (0..n).find(|&v| !inside[v])
            } else {
                (0..n).find(|&v| {
                    !inside[v] && {
                        let e = at[j0][v].expect("perfect matching");
                        let (p, q) = g.endpoints(e);
                        inside[p] || inside[q]
                    }
                })
            };
            let u = u.ok_or_else(|| Error::GrowthStuck {
                step: h,
                reason: format!("no vertex extends the induced H_{j0} edges"),
            })?;
            add(u, &mut inside, &mut counts);
            check_class1_counts(&counts, h + 1, k)?;
        }
    }

    let mut x_sets = Vec::with_capacity(k);
    for j in 0..k {
        let mut xs: EdgeSet = (0..n).filter(|&v| inside[v]).filter_map(|v| at[j][v]).collect();
        if xs.len() > x {
            return Err(Error::GrowthStuck {
                step: w,
                reason: format!("{} edges of H_{j} touch the grown set, x = {x}", xs.len()),
            });
        }
        pad(&mut xs, d.class(j), x);
        x_sets.push(xs);
    }
    let semi = Semipartition {
        decomposition: d.clone(),
        x_sets,
        x,
        w,
    };
    semi.check(g).map_err(|e| Error::Postcondition(e.to_string()))?;
    Ok(semi)
}

/// With `i - 1 = a k + b`, at least `b` classes hold `a + 1` induced edges and
/// the rest hold `a`.
fn check_class1_counts(counts: &[usize], i: usize, k: usize) -> Result<()> {
    let (a, b) = ((i - 1) / k, (i - 1) % k);
    let above = counts.iter().filter(|&&cnt| cnt > a).count();
    if counts.iter().all(|&cnt| cnt >= a) && above >= b {
        Ok(())
    } else {
        Err(Error::GrowthStuck {
            step: i,
            reason: format!("induced edge counts {counts:?} break the balance invariant"),
        })
    }
}

/// Edge-set construction for a `k`-regular graph split equitably into `k + 1`
/// matchings; `w = x + ⌊(x − 1)/k⌋`.
///
/// Grows `X(1) ⊆ ... ⊆ X(w)`, adding one edge to every class but one per
/// step so that each class gains a newly covered vertex.
pub fn semipartition_class2(
    g: &Graph,
    d: &MatchingDecomposition,
    x: usize,
) -> Result<Semipartition> {
    let k = g.regular_degree().unwrap_or(0);
    if k < 3 {
        return Err(Error::PreconditionViolated(format!("need a k-regular graph with k >= 3, got {k}")));
    }
    let c = k + 1;
    regular_degree_with(g, d, c)?;
    let n = g.n();
    if n < 6 * c {
        return Err(Error::TooSmall(n, 6 * c));
    }
    let x_max = n * k / (2 * c);
    if x == 0 || x > x_max {
        return Err(Error::PreconditionViolated(format!("x = {x} must lie in 1..={x_max}")));
    }
    let w = x + (x - 1) / k;
    let at = class_maps(g, d);
    let classes = d.classes();

    let missing = |j: usize| (0..n).find(|&v| at[j][v].is_none());
    let (Some(u), Some(v)) = (missing(0), missing(1)) else {
        return Err(Error::PreconditionViolated("every class is a perfect matching".into()));
    };
    let mut xs = vec![EdgeSet::new(); c];
    for j in 1..c {
        xs[j].insert(at[j][u].expect("u misses only H_0"));
    }
    xs[0].insert(at[0][v].expect("v misses only H_1"));
    check_class2(g, d, &xs, 1, k)?;

    for h in 1..w {
        let top = h - (h - 1) / c;
        let s = (0..c).find(|&j| xs[j].len() == top).ok_or_else(|| Error::GrowthStuck {
            step: h,
            reason: format!("no class has {top} edges"),
        })?;
        let mut next = xs.clone();
        let mut done = vec![false; c];
        done[s] = true;
        if i_covered_vertices(g, d, &xs, s).len() <= h {
            let covered = i_covered_vertices(g, d, &xs, s);
            let touched = g.vertices_of(&xs[s]);
            let v = (0..n)
                .find(|&v| touched[v] && covered.binary_search(&v).is_err())
                .ok_or_else(|| Error::GrowthStuck {
                    step: h,
                    reason: format!("every vertex of X_{s} is {s}-covered"),
                })?;
            for j in (0..c).filter(|&j| j != s) {
                if let Some(e) = at[j][v].filter(|&e| !xs[j].contains(e)) {
                    next[j].insert(e);
                    done[j] = true;
                }
            }
        }
        // walk backwards from classes already handled
        while let Some(q) = (0..c).find(|&q| !done[q] && done[(q + 1) % c]) {
            let q1 = (q + 1) % c;
            let e = if i_covered_vertices(g, d, &next, q).len() > h {
                classes[q].iter().find(|&e| !next[q].contains(e))
            } else {
                (0..n).find_map(|u| {
                    let eq = at[q][u].filter(|&e| !next[q].contains(e))?;
                    match at[q1][u] {
                        Some(f) if !next[q1].contains(f) => None,
                        _ => Some(eq),
                    }
                })
            };
            let e = e.ok_or_else(|| Error::GrowthStuck {
                step: h,
                reason: format!("no edge of H_{q} adds a {q}-covered vertex"),
            })?;
            next[q].insert(e);
            done[q] = true;
        }
        xs = next;
        check_class2(g, d, &xs, h + 1, k)?;
    }

    for (j, set) in xs.iter_mut().enumerate() {
        if set.len() > x {
            return Err(Error::GrowthStuck {
                step: w,
                reason: format!("|X_{j}(w)| = {} exceeds x = {x}", set.len()),
            });
        }
        pad(set, &classes[j], x);
    }
    let semi = Semipartition {
        decomposition: d.clone(),
        x_sets: xs,
        x,
        w,
    };
    semi.check(g).map_err(|e| Error::Postcondition(e.to_string()))?;
    Ok(semi)
}

/// Size, top-count and coverage invariants of the class-2 growth at step `i`.
fn check_class2(
    g: &Graph,
    d: &MatchingDecomposition,
    xs: &[EdgeSet],
    i: usize,
    k: usize,
) -> Result<()> {
    let c = k + 1;
    let top = i - (i - 1) / c;
    let stuck = |reason: String| Err(Error::GrowthStuck { step: i, reason });
    if let Some(j) = (0..c).find(|&j| xs[j].len() != top && xs[j].len() + 1 != top) {
        return stuck(format!("|X_{j}| = {} not in {{{}, {top}}}", xs[j].len(), top - 1));
    }
    let at_top = xs.iter().filter(|s| s.len() == top).count();
    if at_top != c - (i - 1) % c {
        return stuck(format!("{at_top} classes have {top} edges"));
    }
    if let Some(j) = (0..c).find(|&j| i_covered_vertices(g, d, xs, j).len() < i) {
        return stuck(format!("fewer than {i} vertices are {j}-covered"));
    }
    Ok(())
}

/// A sampled semipartition with the attempt that produced it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RandomSemipartition {
    pub semipartition: Semipartition,
    /// Zero-based attempt index.
    pub attempt: usize,
    /// The sampled vertex set.
    pub sample: Vec<usize>,
}

/// Samples each vertex with probability `alpha` and takes `X_i` to be the
/// `H_i` edges meeting the sample, padded to the largest such count.
///
/// `w` is the sample size when `c = k` and the least number of sampled
/// vertices met by a class when `c = k + 1`. Samples are redrawn until
/// `(x, w)` satisfy (P1); attempt `a` uses stream `a` of a ChaCha8 generator
/// seeded with `seed`.
pub fn semipartition_random(
    g: &Graph,
    d: &MatchingDecomposition,
    alpha: Ratio<u64>,
    seed: u64,
    retries: usize,
) -> Result<RandomSemipartition> {
    let k = g.regular_degree().unwrap_or(0);
    if k < 1 {
        return Err(Error::PreconditionViolated("need a k-regular graph with k >= 1".into()));
    }
    let c = d.len();
    if c != k && c != k + 1 {
        return Err(Error::PreconditionViolated(format!("c = {c} must be k or k + 1 with k = {k}")));
    }
    regular_degree_with(g, d, c)?;
    // 0 < alpha < k/c
    if *alpha.numer() == 0 || alpha * Ratio::from_integer(c as u64) >= Ratio::from_integer(k as u64) {
        return Err(Error::PreconditionViolated(format!("alpha = {alpha} must lie in (0, {k}/{c})")));
    }
    let p = *alpha.numer() as f64 / *alpha.denom() as f64;
    let n = g.n();
    let cap = g.m() / c;
    let at = class_maps(g, d);
    let mut best: Option<(usize, usize)> = None;

    for attempt in 0..retries {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(attempt as u64);
        let sample: Vec<usize> = (0..n).filter(|_| rng.gen_bool(p)).collect();
        if sample.is_empty() {
            continue;
        }
        let mut x_sets: Vec<EdgeSet> = (0..c)
            .map(|j| sample.iter().filter_map(|&v| at[j][v]).collect())
            .collect();
        let x = x_sets.iter().map(EdgeSet::len).max().unwrap_or(0);
        let w = (0..c)
            .map(|j| sample.iter().filter(|&&v| at[j][v].is_some()).count())
            .min()
            .unwrap_or(0);
        if best.is_none_or(|(bx, bw)| x + bw > bx + w) {
            best = Some((x, w));
        }
        let ok = matches!(y_for(x, w), Some(y) if x + 2 * y <= cap);
        if !ok {
            continue;
        }
        for (j, xs) in x_sets.iter_mut().enumerate() {
            pad(xs, d.class(j), x);
        }
        let semipartition = Semipartition {
            decomposition: d.clone(),
            x_sets,
            x,
            w,
        };
        semipartition.check(g).map_err(|e| Error::Postcondition(e.to_string()))?;
        return Ok(RandomSemipartition {
            semipartition,
            attempt,
            sample,
        });
    }
    let (best_x, best_w) = best.unwrap_or((0, 0));
    Err(Error::RetriesExhausted {
        attempts: retries,
        best_x,
        best_w,
    })
}

/// Completes a semipartition to an `(x, w)`-partition.
///
/// `Y_i` collects the edges of `E(H_i) \ X_i` meeting `X_{i-1}` once or
/// twice, plus one blocker per doubly-met edge of the previous class, and is
/// padded with lowest-index edges; `Z_i` takes what is left.
pub fn extend_to_partition(g: &Graph, semi: &Semipartition) -> Result<XyzPartition> {
    let (x, w) = (semi.x, semi.w);
    let c = semi.c();
    let cap = if c == 0 { 0 } else { g.m() / c };
    let y = match y_for(x, w) {
        Some(y) if x + 2 * y <= cap => y,
        y => {
            return Err(Error::P1Violated {
                x,
                w,
                y: y.unwrap_or(0),
                cap,
            })
        }
    };
    semi.check(g)?;
    let d = &semi.decomposition;
    let xs = &semi.x_sets;

    // T_i and T'_i
    let mut t1 = Vec::with_capacity(c);
    let mut t2 = Vec::with_capacity(c);
    for i in 0..c {
        let covered = g.vertices_of(&xs[(i + c - 1) % c]);
        let rest = d.class(i).difference(&xs[i]);
        let once: EdgeSet = rest.iter().filter(|&e| hits(g, &covered, e) == 1).collect();
        let twice: EdgeSet = rest.iter().filter(|&e| hits(g, &covered, e) == 2).collect();
        if w + once.len() + 2 * twice.len() > 2 * x {
            return Err(Error::Postcondition(format!(
                "class {i}: w + |T| + 2|T'| = {} exceeds 2x = {}",
                w + once.len() + 2 * twice.len(),
                2 * x
            )));
        }
        t1.push(once);
        t2.push(twice);
    }
    // T''_{i+1}: one blocker per edge of T'_i met by two free edges
    let mut t3 = vec![EdgeSet::new(); c];
    for i in 0..c {
        let j = (i + 1) % c;
        let free = d.class(j).difference(&xs[j]).difference(&t1[j]).difference(&t2[j]);
        for e in t2[i].iter() {
            let mut met: Vec<usize> = g.neighbors_of_edge(e).filter(|&f| free.contains(f)).collect();
            met.sort_unstable();
            if met.len() == 2 {
                t3[j].insert(met[0]);
            }
        }
    }
    let mut y_sets = Vec::with_capacity(c);
    let mut z_sets = Vec::with_capacity(c);
    for i in 0..c {
        let mut ys = t1[i].union(&t2[i]).union(&t3[i]);
        if ys.len() > y {
            return Err(Error::Postcondition(format!(
                "class {i} forces {} edges into Y, y = {y}",
                ys.len()
            )));
        }
        let rest = d.class(i).difference(&xs[i]);
        pad(&mut ys, &rest, y);
        z_sets.push(rest.difference(&ys));
        y_sets.push(ys);
    }
    let p = XyzPartition {
        decomposition: d.clone(),
        x_sets: xs.clone(),
        y_sets,
        z_sets,
        x,
        y,
        w,
    };
    if let Some(bad) = verify_partition(g, &p).into_iter().find(|v| !v.passed) {
        return Err(Error::PartitionInvalid(format!(
            "(P{}) fails: {}",
            bad.property,
            bad.witness.map(|w| w.to_string()).unwrap_or_default()
        )));
    }
    Ok(p)
}
