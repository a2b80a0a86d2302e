//! Acceptance run: one line per criterion, non-zero exit if any fails.

mod common;

use std::process::ExitCode;
use std::time::Instant;

use cms_core::coloring::edge_color_bipartite;
use cms_core::generators::{
    b_graph, b_prime_graph, bk_containing_regular, complete, cycle, cycle_types, prism, random_regular, two_regular,
};
use cms_core::oracle::{cms_upper_bound_subgraph, exact_cms, CmsSearch};
use cms_core::partition::{extend_to_partition, semipartition_class1, verify_partition, DEFAULT_RETRIES};
use cms_core::sequencer::{
    general_lower_bound_ordering, pipeline_decomposition, partition_pipeline, two_regular_certificate, CmsCertificate,
    Pipeline,
};
use cms_core::two_regular::order_two_matchings;
use cms_core::{Error, Graph};
use num_rational::{BigRational, Ratio};

type Outcome = Result<String, String>;

fn exact(g: &Graph) -> Result<usize, String> {
    exact_cms(g, CmsSearch::default()).map(|r| r.value).map_err(|e| e.to_string())
}

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn cycles() -> Outcome {
    for n in 3..=12 {
        let v = exact(&cycle(n).unwrap())?;
        ensure(v == (n - 1) / 2, || format!("cms(C{n}) = {v}, expected {}", (n - 1) / 2))?;
    }
    Ok("n = 3..12 exact".into())
}

fn complete_graphs() -> Outcome {
    for n in [4, 5] {
        let v = exact(&complete(n))?;
        ensure(v == 1, || format!("cms(K{n}) = {v}"))?;
    }
    Ok("K4 = K5 = 1".into())
}

fn check_two_regular_cert(g: &Graph, n: usize) -> Result<(), String> {
    let cert = two_regular_certificate(g).map_err(|e| e.to_string())?;
    let measured = cert.ordering.cms(g);
    ensure(cert.verified && measured >= n / 3 && cert.claimed_bound >= n / 3, || {
        format!("n = {n}: claimed {} measured {measured}", cert.claimed_bound)
    })
}

fn two_regular_minimum() -> Outcome {
    for n in 6..=10 {
        let mut least = usize::MAX;
        for lengths in cycle_types(n) {
            least = least.min(exact(&two_regular(&lengths).unwrap())?);
        }
        ensure(least == n / 3, || format!("n = {n}: minimum {least}, expected {}", n / 3))?;
    }
    let mut graphs = 0;
    for n in 6..=30 {
        for lengths in cycle_types(n) {
            check_two_regular_cert(&two_regular(&lengths).unwrap(), n).map_err(|e| format!("{lengths:?}: {e}"))?;
            graphs += 1;
        }
    }
    Ok(format!("oracle minimum on n = 6..10, {graphs} certificates up to n = 30"))
}

fn even_cycles() -> Outcome {
    let mut graphs = 0;
    for n in (4..=12).step_by(2) {
        let target = (n - 2) / 2;
        for lengths in cycle_types(n).into_iter().filter(|ls| ls.iter().all(|l| l % 2 == 0)) {
            let g = two_regular(&lengths).unwrap();
            let d = edge_color_bipartite(&g).ok_or("even cycles are bipartite")?;
            let (l0, l1) = order_two_matchings(&g, d.class(0), d.class(1)).map_err(|e| e.to_string())?;
            let got = l0.concat(&l1).map_err(|e| e.to_string())?.cms(&g);
            ensure(got >= target, || format!("{lengths:?}: cms {got} < {target}"))?;
            graphs += 1;
        }
        let v = exact(&cycle(n).unwrap())?;
        ensure(v == target, || format!("cms(C{n}) = {v}, expected {target}"))?;
    }
    Ok(format!("{graphs} graphs, tight on C4..C12"))
}

fn bk_family() -> Outcome {
    for k in 2..=10 {
        let m = b_graph(k).map_err(|e| e.to_string())?.m();
        let formula = if k % 2 == 0 { k * (k + 1) / 2 } else { (k * k + 2 * k - 1) / 2 };
        ensure(m == formula, || format!("|E(B{k})| = {m}, expected {formula}"))?;
    }
    let b3 = b_graph(3).unwrap();
    let v = exact(&b3)?;
    ensure(v == 1, || format!("cms(B3) = {v}"))?;
    let bp = b_prime_graph(3).unwrap();
    let bound = cms_upper_bound_subgraph(bp.m(), &b3, v).map_err(|e| e.to_string())?;
    let expected = BigRational::new(15.into(), 4.into());
    ensure(bound.by_subgraph_cms == expected, || format!("subgraph bound {}", bound.by_subgraph_cms))?;
    ensure(bound.by_subgraph_cms.floor() == BigRational::from_integer(3.into()), || "floor is not 3".into())?;
    let hi = match exact_cms(&bp, CmsSearch { node_budget: 50_000_000 }) {
        Ok(r) => r.value,
        Err(Error::BudgetExceeded { hi, .. }) => hi,
        Err(e) => return Err(e.to_string()),
    };
    ensure(hi <= 3, || format!("cms(B'3) search upper end {hi}"))?;
    Ok(format!("edge counts k = 2..10, cms(B3) = 1, B'3 bound 15/4, search gives <= {hi}"))
}

fn general_construction() -> Outcome {
    let mut done = 0;
    for i in 0..50u64 {
        let k = [3, 4, 5][i as usize % 3];
        let mut n = 12 + (i as usize * 7) % 29;
        if n * k % 2 == 1 {
            n += 1;
        }
        let n = n.min(40);
        let g = random_regular(n, k, i).map_err(|e| e.to_string())?;
        let cert = general_lower_bound_ordering(&g);
        let c = cert.graph.c;
        let expected = (g.m() / (2 * c)).saturating_sub(1);
        ensure(cert.graph.c_exact && (c == k || c == k + 1), || format!("seed {i}: c = {c} not settled"))?;
        ensure(cert.verified && cert.claimed_bound == expected, || {
            format!("seed {i} (n = {n}, k = {k}): claimed {}, expected {expected}, verified {}", cert.claimed_bound, cert.verified)
        })?;
        done += 1;
    }
    Ok(format!("{done}/50 verified"))
}

fn cert_ok(cert: &CmsCertificate) -> bool {
    cert.verified && cert.verdicts.len() == 6 && cert.verdicts.iter().all(|v| v.passed)
}

fn explicit_pipeline() -> Outcome {
    let g = prism(18).unwrap();
    let cert = partition_pipeline(&g, Pipeline::Explicit { x: Some(5) }).map_err(|e| e.to_string())?;
    let p = &cert.params;
    ensure((p.x, p.w, p.y) == (Some(5), Some(7), Some(5)), || format!("prism: {p:?}"))?;
    ensure(cert.graph.c == 3 && cert_ok(&cert) && cert.claimed_bound >= 9, || {
        format!("prism: claimed {} measured {}", cert.claimed_bound, cert.measured_cms)
    })?;
    // the partition on its own
    let (d, _) = pipeline_decomposition(&g);
    let semi = semipartition_class1(&g, &d, 5).map_err(|e| e.to_string())?;
    let part = extend_to_partition(&g, &semi).map_err(|e| e.to_string())?;
    let verdicts = verify_partition(&g, &part);
    ensure(verdicts.len() == 6 && verdicts.iter().all(|v| v.passed), || format!("{verdicts:?}"))?;
    let mut class2 = Vec::new();
    for n in [24, 30, 36, 42, 48] {
        let g = bk_containing_regular(n, 3, Some(n as u64)).map_err(|e| e.to_string())?;
        let cert = partition_pipeline(&g, Pipeline::Explicit { x: None }).map_err(|e| format!("n = {n}: {e}"))?;
        let (x, y) = (cert.params.x.unwrap_or(0), cert.params.y.unwrap_or(0));
        let formula = if x == 0 { 0 } else { x + y - 1 };
        let floor = (n / 4).saturating_sub(6);
        ensure(cert.graph.c == 4 && cert.graph.c_exact, || format!("n = {n}: c = {}", cert.graph.c))?;
        ensure(cert.verified && cert.claimed_bound == formula && cert.claimed_bound >= floor, || {
            format!("n = {n}: claimed {} (x = {x}, y = {y}), need {floor}", cert.claimed_bound)
        })?;
        ensure(x == 0 || cert_ok(&cert), || format!("n = {n}: partition verdicts failed"))?;
        class2.push(cert.claimed_bound);
    }
    Ok(format!("prism claimed {} measured {}; class 2 claimed {class2:?}", cert.claimed_bound, cert.measured_cms))
}

/// `|measured − centre| <= 5√n`, decided on exact rationals.
fn in_band(measured: usize, centre: Ratio<i128>, n: usize) -> bool {
    let d = Ratio::from_integer(measured as i128) - centre;
    d.clone() * d <= Ratio::from_integer(25 * n as i128)
}

fn randomized_pipeline() -> Outcome {
    let n = 300;
    let alpha = Ratio::new(1u64, 7);
    let a = Ratio::new(1i128, 7);
    let mut summary = Vec::new();
    for k in [3usize, 4] {
        let mut verified = 0;
        for seed in 0..20u64 {
            let g = random_regular(n, k, seed).map_err(|e| e.to_string())?;
            let Ok(cert) = partition_pipeline(&g, Pipeline::Randomized { alpha, seed, retries: DEFAULT_RETRIES }) else {
                continue;
            };
            if !cert.verified {
                continue;
            }
            let c = cert.graph.c as i128;
            let kn = (k * n) as i128;
            let x_centre = a * kn * (Ratio::from_integer(2) - a) / (2 * c);
            let w_centre = a * kn / c;
            let (x, w) = (cert.params.x.unwrap_or(0), cert.params.w.unwrap_or(0));
            ensure(in_band(x, x_centre, n), || format!("k = {k} seed {seed}: x = {x} outside {x_centre} +- 5 sqrt(n)"))?;
            ensure(in_band(w, w_centre, n), || format!("k = {k} seed {seed}: w = {w} outside {w_centre} +- 5 sqrt(n)"))?;
            verified += 1;
        }
        ensure(verified >= 18, || format!("k = {k}: only {verified}/20 verified"))?;
        summary.push(format!("k = {k}: {verified}/20"));
    }
    Ok(format!("{}; band 5 sqrt(n) is an implementation tolerance", summary.join(", ")))
}

fn property_suites() -> Outcome {
    let suites: [(&str, fn() -> Result<usize, String>); 6] = [
        ("three-way concatenation", common::three_way_concatenation),
        ("four-matching concatenation", common::four_matching_concatenation),
        ("order against fixed", common::against_fixed_half),
        ("y2 last", common::y2_last),
        ("sandwich", common::sandwich_invariant),
        ("equitable", common::equitable_invariants),
    ];
    let mut counts = Vec::new();
    for (name, suite) in suites {
        let cases = suite().map_err(|e| format!("{name}: {e}"))?;
        counts.push(format!("{name} {cases}"));
    }
    Ok(counts.join(", "))
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Outcome); 9] = [
        ("cycles", cycles),
        ("complete graphs", complete_graphs),
        ("2-regular minimum", two_regular_minimum),
        ("even cycle unions", even_cycles),
        ("B_k family", bk_family),
        ("general construction", general_construction),
        ("explicit pipeline", explicit_pipeline),
        ("randomized pipeline", randomized_pipeline),
        ("property suites", property_suites),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.into_iter().enumerate() {
        let start = Instant::now();
        let outcome = check();
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("criterion {} {name}: PASS ({detail}) [{secs:.2}s]", i + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {} {name}: FAIL ({why}) [{secs:.2}s]", i + 1);
            }
        }
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
