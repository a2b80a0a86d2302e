//! Property suites shared by the `properties` and `acceptance` targets.
//! Each suite runs [`CASES`] generated cases from a fixed seed and returns
//! the number of cases checked.

#![allow(dead_code)]

use cms_core::coloring::{
    edge_color_delta_plus_one, equitable_decomposition, exact_chromatic_index, rebalance, ChromaticSearch,
};
use cms_core::generators::{b_graph, complete, cycle, cycle_types, two_regular};
use cms_core::oracle::{cms_upper_bound_fractional, exact_cms, CmsSearch};
use cms_core::sequencer::{
    general_lower_bound_ordering, order_against_fixed, order_with_y2_last, two_regular_certificate, y1_y2,
    y2_last_bound,
};
use cms_core::{EdgeOrdering, EdgeSet, Error, Graph};
use proptest::collection::vec;
use proptest::prelude::*;
use proptest::test_runner::{Config, RngAlgorithm, TestCaseError, TestRng, TestRunner};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub const CASES: u32 = 1000;

fn runner() -> TestRunner {
    let config = Config {
        cases: CASES,
        failure_persistence: None,
        ..Config::default()
    };
    TestRunner::new_with_rng(config, TestRng::deterministic_rng(RngAlgorithm::ChaCha))
}

fn run<S: Strategy>(
    strategy: S,
    test: impl Fn(S::Value) -> Result<(), TestCaseError>,
) -> Result<usize, String> {
    runner().run(&strategy, test).map_err(|e| e.to_string())?;
    Ok(CASES as usize)
}

/// Random simple graph on `2..=max_n` vertices, keeping at most `max_m`
/// edges, plus a seed for the orderings built on top of it.
fn graph_and_seed(max_n: usize, max_m: usize) -> impl Strategy<Value = (Graph, u64)> {
    (2..=max_n)
        .prop_flat_map(move |n| (Just(n), vec(any::<bool>(), n * (n - 1) / 2), any::<u64>()))
        .prop_map(move |(n, mask, seed)| {
            let pairs = (0..n)
                .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
                .zip(mask)
                .filter_map(|(p, keep)| keep.then_some(p))
                .take(max_m);
            (Graph::new(n, pairs).expect("simple by construction"), seed)
        })
}

fn shuffled(s: &EdgeSet, rng: &mut ChaCha8Rng) -> EdgeOrdering {
    let mut v = s.to_vec();
    v.shuffle(rng);
    EdgeOrdering::new(v).expect("distinct edges")
}

/// Splits `g` into two disjoint matchings by random greedy assignment.
fn two_matchings(g: &Graph, rng: &mut ChaCha8Rng) -> (EdgeSet, EdgeSet) {
    let mut order: Vec<usize> = (0..g.m()).collect();
    order.shuffle(rng);
    let mut x = EdgeSet::new();
    let mut y = EdgeSet::new();
    for e in order {
        let target = match rng.gen_range(0..3) {
            0 => &mut x,
            1 => &mut y,
            _ => continue,
        };
        if target.iter().all(|f| !g.are_adjacent(e, f)) {
            target.insert(e);
        }
    }
    (x, y)
}

/// `ms(ℓ_X ∨ ℓ_Y ∨ ℓ_Z) >= min{ms(ℓ_X ∨ ℓ_Y), ms(ℓ_Y ∨ ℓ_Z), |Y| + ms(ℓ_X ∨ ℓ_Z)}`.
pub fn three_way_concatenation() -> Result<usize, String> {
    run(graph_and_seed(9, 16), |(g, seed)| {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut parts = [EdgeSet::new(), EdgeSet::new(), EdgeSet::new()];
        for e in 0..g.m() {
            parts[rng.gen_range(0..3)].insert(e);
        }
        let [lx, ly, lz] = parts.map(|p| shuffled(&p, &mut rng));
        let cat = |a: &EdgeOrdering, b: &EdgeOrdering| a.concat(b).unwrap();
        let whole = cat(&cat(&lx, &ly), &lz);
        let bound = cat(&lx, &ly)
            .ms(&g)
            .min(cat(&ly, &lz).ms(&g))
            .min(ly.len() + cat(&lx, &lz).ms(&g));
        prop_assert!(whole.ms(&g) >= bound, "ms {} < {}", whole.ms(&g), bound);
        Ok(())
    })
}

/// Four matchings with `M_i ∪ M_{i+1}` a matching for `i = 0, 1, 2`.
pub fn four_matching_concatenation() -> Result<usize, String> {
    run(graph_and_seed(10, 24), |(g, seed)| {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut classes: [EdgeSet; 4] = Default::default();
        for e in 0..g.m() {
            let i = rng.gen_range(0..4usize);
            let clash = |j: usize| classes[j].iter().any(|f| g.are_adjacent(e, f));
            let blocked = clash(i) || (i > 0 && clash(i - 1)) || (i < 3 && clash(i + 1));
            if !blocked {
                classes[i].insert(e);
            }
        }
        let l = classes.clone().map(|c| shuffled(&c, &mut rng));
        let m: Vec<usize> = l.iter().map(EdgeOrdering::len).collect();
        let ms_of = |parts: &[&EdgeOrdering]| EdgeOrdering::concat_all(parts.iter().copied()).unwrap().ms(&g);
        let whole = ms_of(&[&l[0], &l[1], &l[2], &l[3]]);
        let bound = (ms_of(&[&l[0], &l[2]]) + m[1])
            .min(ms_of(&[&l[1], &l[3]]) + m[2])
            .min(ms_of(&[&l[0], &l[3]]) + m[1] + m[2]);
        prop_assert!(whole >= bound, "ms {whole} < {bound}");
        Ok(())
    })
}

/// `order_against_fixed` reaches `⌈x/2⌉` against any fixed `ℓ_Y`.
pub fn against_fixed_half() -> Result<usize, String> {
    run(graph_and_seed(14, 40), |(g, seed)| {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let (x, y) = two_matchings(&g, &mut rng);
        let ly = shuffled(&y, &mut rng);
        let lx = order_against_fixed(&g, &x, &ly).unwrap();
        prop_assert_eq!(lx.edge_set(), x.clone());
        let ms = lx.concat(&ly).unwrap().ms(&g);
        prop_assert!(ms >= x.len().div_ceil(2), "ms {} with x = {}", ms, x.len());
        Ok(())
    })
}

/// `order_with_y2_last` reaches `min{x, x + y − y1 − 2·y2}`, and refuses an
/// `ℓ_Y` whose tail is not made of doubly adjacent edges.
pub fn y2_last() -> Result<usize, String> {
    run(graph_and_seed(14, 40), |(g, seed)| {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let (x, y) = two_matchings(&g, &mut rng);
        let met = g.vertices_of(&x);
        let doubly = |e: usize| {
            let (u, v) = g.endpoints(e);
            met[u] && met[v]
        };
        let mut seq = shuffled(&y, &mut rng).edges().to_vec();
        seq.sort_by_key(|&e| doubly(e));
        let ly = EdgeOrdering::new(seq.clone()).unwrap();
        let (y1, y2) = y1_y2(&g, &x, &ly);
        let lx = order_with_y2_last(&g, &x, &ly).unwrap();
        let ms = lx.concat(&ly).unwrap().ms(&g);
        let bound = y2_last_bound(x.len(), y.len(), y1, y2);
        prop_assert!(ms >= bound, "ms {} < {}", ms, bound);
        if y2 > 0 && y2 < seq.len() {
            // a single edge from the front moved last breaks the tail
            seq.rotate_left(1);
            let bad = EdgeOrdering::new(seq).unwrap();
            prop_assert!(matches!(order_with_y2_last(&g, &x, &bad), Err(Error::PreconditionViolated(_))));
        }
        Ok(())
    })
}

fn sandwich(g: &Graph) -> Result<(), String> {
    let exact = exact_cms(g, CmsSearch::default()).map_err(|e| e.to_string())?;
    if exact.witness.cms(g) != exact.value {
        return Err(format!("witness has cms {} but value is {}", exact.witness.cms(g), exact.value));
    }
    let general = general_lower_bound_ordering(g);
    if !general.verified || general.measured_cms > exact.value {
        return Err(format!("general construction {} vs exact {}", general.measured_cms, exact.value));
    }
    if g.regular_degree() == Some(2) && g.n() >= 6 {
        let cert = two_regular_certificate(g).map_err(|e| e.to_string())?;
        if !cert.verified || cert.measured_cms > exact.value {
            return Err(format!("two-regular construction {} vs exact {}", cert.measured_cms, exact.value));
        }
    }
    let nu = g.matching_number().0;
    let fractional = cms_upper_bound_fractional(g).map_err(|e| e.to_string())?;
    let by_cf: usize = fractional.floor().to_integer().try_into().unwrap();
    if exact.value > nu || exact.value > by_cf {
        return Err(format!("exact {} above bounds nu = {nu}, m/c_f = {fractional}", exact.value));
    }
    Ok(())
}

pub fn sandwich_fixtures() -> Vec<(String, Graph)> {
    let mut out = Vec::new();
    for n in 3..=12 {
        out.push((format!("C{n}"), cycle(n).unwrap()));
    }
    for n in 3..=5 {
        out.push((format!("K{n}"), complete(n)));
    }
    out.push(("B3".into(), b_graph(3).unwrap()));
    for n in 6..=12 {
        for lengths in cycle_types(n) {
            out.push((format!("{lengths:?}"), two_regular(&lengths).unwrap()));
        }
    }
    out
}

/// constructed <= exact <= upper bounds, on the fixtures and on random
/// graphs with at most 12 edges.
pub fn sandwich_invariant() -> Result<usize, String> {
    for (name, g) in sandwich_fixtures() {
        sandwich(&g).map_err(|e| format!("{name}: {e}"))?;
    }
    let fixtures = sandwich_fixtures().len();
    let strategy = graph_and_seed(8, 12).prop_filter("needs an edge", |(g, _)| g.m() > 0);
    run(strategy, |(g, _)| sandwich(&g).map_err(TestCaseError::fail)).map(|n| n + fixtures)
}

fn check_equitable(g: &Graph, d: &cms_core::coloring::MatchingDecomposition, t: usize) -> Result<(), TestCaseError> {
    d.validate(g).map_err(|e| TestCaseError::fail(e.to_string()))?;
    prop_assert_eq!(d.len(), t);
    let sizes = d.sizes();
    let (lo, hi) = (sizes.iter().min().unwrap(), sizes.iter().max().unwrap());
    prop_assert!(hi - lo <= 1, "sizes {:?}", sizes);
    prop_assert!(d.is_equitable());
    prop_assert_eq!(sizes.iter().sum::<usize>(), g.m());
    Ok(())
}

/// Equitable decompositions into `t >= Δ` classes exist exactly when the
/// chromatic index allows them, and are proper, complete and balanced.
pub fn equitable_invariants() -> Result<usize, String> {
    run((graph_and_seed(9, 20), 0..3usize), |((g, _), extra)| {
        let delta = g.max_degree().max(1);
        let t = delta + extra;
        match equitable_decomposition(&g, t) {
            Ok(d) => check_equitable(&g, &d, t)?,
            Err(Error::TooFewClasses { .. }) => {
                let chi = exact_chromatic_index(&g, ChromaticSearch::default()).unwrap();
                prop_assert!(chi.value > t, "refused t = {} with chromatic index {}", t, chi.value);
            }
            Err(e) => return Err(TestCaseError::fail(e.to_string())),
        }
        let start = edge_color_delta_plus_one(&g);
        let t = start.len().max(1) + extra;
        let d = rebalance(&g, &start, t).map_err(|e| TestCaseError::fail(e.to_string()))?;
        check_equitable(&g, &d, t)
    })
}
