//! The work behind each subcommand. Every command returns a report and the
//! exit code it earned; hard errors come back as [`CliError`].

use std::fmt::Write as _;

use cms_core::coloring::{exact_chromatic_index, ChromaticSearch};
use cms_core::generators as gen;
use cms_core::oracle::{
    cms_upper_bound_fractional, cms_upper_bound_subgraph, exact_cms, fractional_chromatic_index, CmsSearch,
    MATCHING_EDGE_CAP,
};
use cms_core::partition::DEFAULT_RETRIES;
use cms_core::sequencer::{
    general_lower_bound_ordering, partition_pipeline, two_regular_certificate, CmsCertificate, Pipeline,
};
use cms_core::{Error, Graph};
use num_rational::Ratio;
use serde_json::{json, Value};

use crate::check::cms_by_vertices;
use crate::format::parse_ordering;
use crate::report::{certificate_json, ordering_pairs, InputDigest, Report};
use crate::CliError;

pub const DEFAULT_BUDGET: u64 = 20_000_000;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Family {
    Cycle(usize),
    Complete(usize),
    TwoRegular(Vec<usize>),
    Bk(usize),
    BkPrime(usize),
    Petersen,
    Prism(usize),
    RandomRegular { n: usize, k: usize, seed: u64 },
    BkRegular { n: usize, k: usize, seed: Option<u64> },
}

pub fn generate(family: &Family) -> Result<Graph, CliError> {
    let g = match family {
        Family::Cycle(n) => gen::cycle(*n),
        Family::Complete(n) => Ok(gen::complete(*n)),
        Family::TwoRegular(lengths) => gen::two_regular(lengths),
        Family::Bk(k) => gen::b_graph(*k),
        Family::BkPrime(k) => gen::b_prime_graph(*k),
        Family::Petersen => Ok(gen::petersen()),
        Family::Prism(n) => gen::prism(*n),
        Family::RandomRegular { n, k, seed } => gen::random_regular(*n, *k, *seed),
        Family::BkRegular { n, k, seed } => gen::bk_containing_regular(*n, *k, *seed),
    };
    g.map_err(|e| CliError::Param(e.to_string()))
}

pub struct Outcome {
    pub report: Report,
    pub code: i32,
}

pub fn exact(g: &Graph, budget: u64) -> Result<Outcome, CliError> {
    let mut report = Report::new("exact", Some(g)).param("budget", budget);
    match exact_cms(g, CmsSearch { node_budget: budget }) {
        Ok(found) => {
            report.result = json!({
                "cms": found.value,
                "nodes": found.nodes,
                "ordering": ordering_pairs(g, found.witness.edges()),
            });
            Ok(Outcome { report, code: 0 })
        }
        Err(Error::BudgetExceeded { lo, hi }) => {
            report.result = json!({ "cms_interval": [lo, hi] });
            Ok(Outcome { report, code: 3 })
        }
        Err(e) => Err(e.into()),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum ConstructMethod {
    TwoRegular,
    General,
    Explicit,
    Randomized,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConstructArgs {
    pub method: ConstructMethod,
    pub alpha: Option<Ratio<u64>>,
    pub seed: Option<u64>,
    pub x: Option<usize>,
    pub retries: Option<usize>,
}

/// `|measured − expected| <= factor·√n`, decided exactly by squaring.
pub fn within_root_band(measured: usize, expected: Ratio<i128>, n: usize, factor: i128) -> bool {
    let d = Ratio::from_integer(measured as i128) - expected;
    d.clone() * d <= Ratio::from_integer(factor * factor * n as i128)
}

fn widen(r: Ratio<u64>) -> Ratio<i128> {
    Ratio::new(*r.numer() as i128, *r.denom() as i128)
}

/// Centres of the randomized `x` and `w` bands with the 5√n tolerance.
/// The tolerance is an implementation choice, not a proven constant.
fn randomized_band(cert: &CmsCertificate, alpha: Ratio<u64>) -> Value {
    let n = cert.graph.n;
    let k = cert.graph.k.unwrap_or(0) as i128;
    let c = cert.graph.c as i128;
    let a = widen(alpha);
    let two = Ratio::from_integer(2);
    let x_centre = a * k * (two - a) * (n as i128) / (2 * c);
    let w_centre = a * k * (n as i128) / c;
    let x = cert.params.x.unwrap_or(0);
    let w = cert.params.w.unwrap_or(0);
    json!({
        "x_expected": x_centre.to_string(),
        "w_expected": w_centre.to_string(),
        "tolerance": "5*sqrt(n)",
        "x_in_band": within_root_band(x, x_centre, n, 5),
        "w_in_band": within_root_band(w, w_centre, n, 5),
        "note": "band width is an implementation tolerance",
    })
}

pub fn construct(g: &Graph, args: &ConstructArgs) -> Result<(Outcome, CmsCertificate), CliError> {
    let mut report = Report::new("construct", Some(g));
    let method = match args.method {
        ConstructMethod::TwoRegular => "two-regular",
        ConstructMethod::General => "general",
        ConstructMethod::Explicit => "explicit",
        ConstructMethod::Randomized => "randomized",
    };
    report = report.param("method", method);
    let cert = match args.method {
        ConstructMethod::TwoRegular => two_regular_certificate(g)?,
        ConstructMethod::General => general_lower_bound_ordering(g),
        ConstructMethod::Explicit => {
            if let Some(x) = args.x {
                report = report.param("x", x);
            }
            partition_pipeline(g, Pipeline::Explicit { x: args.x })?
        }
        ConstructMethod::Randomized => {
            let seed = args
                .seed
                .ok_or_else(|| CliError::Param("--seed is required for the randomized method".into()))?;
            let alpha = args.alpha.unwrap_or(Ratio::new(1, 7));
            if alpha <= Ratio::from_integer(0) || alpha > Ratio::from_integer(1) {
                return Err(CliError::Param(format!("alpha must lie in (0, 1], got {alpha}")));
            }
            let retries = args.retries.unwrap_or(DEFAULT_RETRIES);
            report = report
                .param("alpha", alpha.to_string())
                .param("seed", seed)
                .param("retries", retries);
            partition_pipeline(g, Pipeline::Randomized { alpha, seed, retries })?
        }
    };
    let mut result = certificate_json(g, &cert);
    if let (ConstructMethod::Randomized, Some(alpha)) = (args.method, cert.params.alpha) {
        result["band"] = randomized_band(&cert, alpha);
    }
    report.result = result;
    let code = if cert.verified { 0 } else { 1 };
    Ok((Outcome { report, code }, cert))
}

/// Claim carried by an earlier `construct` report.
pub struct ReportClaim {
    pub claimed_bound: usize,
    pub measured_cms: Option<usize>,
    pub input: Option<InputDigest>,
}

pub fn claim_from_report(text: &str) -> Result<ReportClaim, CliError> {
    let report = Report::from_json(text).map_err(|e| CliError::Parse(format!("report: {e}")))?;
    let claimed_bound = report.result["claimed_bound"]
        .as_u64()
        .ok_or_else(|| CliError::Parse("report has no result.claimed_bound".into()))?;
    Ok(ReportClaim {
        claimed_bound: claimed_bound as usize,
        measured_cms: report.result["measured_cms"].as_u64().map(|v| v as usize),
        input: report.input,
    })
}

pub fn verify(
    g: &Graph,
    ordering_text: &str,
    claim: Option<usize>,
    from_report: Option<&ReportClaim>,
) -> Result<Outcome, CliError> {
    let ordering = parse_ordering(g, ordering_text)?;
    let independent = cms_by_vertices(g, ordering.edges());
    let library = ordering.cms(g);
    let mut failures = Vec::new();
    if independent != library {
        failures.push(format!("vertex scan gives {independent}, pair scan gives {library}"));
    }
    let mut claims: Vec<usize> = claim.into_iter().collect();
    if let Some(r) = from_report {
        if let Some(input) = &r.input {
            if *input != InputDigest::of(g) {
                failures.push("report was produced for a different graph".into());
            }
        }
        if let Some(measured) = r.measured_cms {
            if measured != independent {
                failures.push(format!("report measured {measured}, ordering has cms {independent}"));
            }
        }
        claims.push(r.claimed_bound);
    }
    for &c in &claims {
        if independent < c {
            failures.push(format!("claimed {c}, ordering has cms {independent}"));
        }
    }
    let mut report = Report::new("verify", Some(g));
    if let Some(c) = claim {
        report = report.param("claim", c);
    }
    let passed = failures.is_empty();
    report.result = json!({
        "cms": independent,
        "library_cms": library,
        "claims": claims,
        "passed": passed,
        "failures": failures,
    });
    Ok(Outcome {
        report,
        code: if passed { 0 } else { 1 },
    })
}

pub fn bounds(g: &Graph) -> Result<Outcome, CliError> {
    let m = g.m();
    let nu = g.matching_number().0;
    let delta = g.max_degree();
    let chromatic = match exact_chromatic_index(g, ChromaticSearch::default()) {
        Ok(ci) => json!(ci.value),
        Err(Error::SearchCapExceeded(_)) => Value::Null,
        Err(e) => return Err(e.into()),
    };
    let (cf, by_cf) = if m > 0 && m <= MATCHING_EDGE_CAP {
        let cf = fractional_chromatic_index(g)?.value;
        let ratio = cms_upper_bound_fractional(g)?;
        (json!(cf.to_string()), json!(ratio.floor().to_integer().to_string()))
    } else {
        (Value::Null, Value::Null)
    };
    let mut result = json!({
        "m": m,
        "max_degree": delta,
        "matching_number": nu,
        "chromatic_index": chromatic,
        "fractional_chromatic_index": cf,
        "upper_by_fractional": by_cf,
    });
    if m > 0 {
        let general = general_lower_bound_ordering(g);
        result["lower_general"] = json!({
            "claimed_bound": general.claimed_bound,
            "measured_cms": general.measured_cms,
            "verified": general.verified,
        });
    }
    if g.regular_degree() == Some(2) && g.n() >= 6 {
        let cert = two_regular_certificate(g)?;
        result["lower_two_regular"] = json!({
            "claimed_bound": cert.claimed_bound,
            "measured_cms": cert.measured_cms,
            "verified": cert.verified,
        });
    }
    let mut report = Report::new("bounds", Some(g));
    report.result = result;
    Ok(Outcome { report, code: 0 })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Suite {
    Cycles,
    TwoRegular,
    Complete,
    Bk,
    General,
    Explicit,
    Randomized,
}

struct Table {
    rows: Vec<[String; 6]>,
}

impl Table {
    fn new() -> Self {
        let head = ["graph", "n", "m", "exact", "constructed", "bound"].map(String::from);
        Table { rows: vec![head] }
    }

    fn row(&mut self, graph: impl Into<String>, g: &Graph, exact: String, constructed: String, bound: String) {
        self.rows
            .push([graph.into(), g.n().to_string(), g.m().to_string(), exact, constructed, bound]);
    }

    fn render(&self) -> String {
        let mut widths = [0; 6];
        for row in &self.rows {
            for (w, cell) in widths.iter_mut().zip(row) {
                *w = (*w).max(cell.len());
            }
        }
        let mut out = String::new();
        for row in &self.rows {
            let cells: Vec<String> = row.iter().zip(widths).map(|(c, w)| format!("{c:<w$}")).collect();
            writeln!(out, "{}", cells.join("  ").trim_end()).expect("writing to a string");
        }
        out
    }
}

fn exact_cell(g: &Graph, budget: u64) -> Result<String, CliError> {
    match exact_cms(g, CmsSearch { node_budget: budget }) {
        Ok(found) => Ok(found.value.to_string()),
        Err(Error::BudgetExceeded { lo, hi }) => Ok(format!("[{lo},{hi}]")),
        Err(e) => Err(e.into()),
    }
}

fn cert_cell(cert: &CmsCertificate) -> String {
    let mark = if cert.verified { "" } else { " UNVERIFIED" };
    format!("{} (claimed {}){mark}", cert.measured_cms, cert.claimed_bound)
}

/// Desk-scale tables. Output depends only on the suite name.
pub fn bench(suite: Suite) -> Result<String, CliError> {
    let budget = DEFAULT_BUDGET;
    let mut t = Table::new();
    let dash = || "-".to_string();
    match suite {
        Suite::Cycles => {
            for n in 3..=12 {
                let g = gen::cycle(n)?;
                let built = general_lower_bound_ordering(&g);
                t.row(format!("C{n}"), &g, exact_cell(&g, budget)?, cert_cell(&built), format!("floor((n-1)/2) = {}", (n - 1) / 2));
            }
        }
        Suite::TwoRegular => {
            for n in 6..=10 {
                for lengths in gen::cycle_types(n) {
                    let g = gen::two_regular(&lengths)?;
                    let cert = two_regular_certificate(&g)?;
                    let name = lengths.iter().map(|l| format!("C{l}")).collect::<Vec<_>>().join("+");
                    t.row(name, &g, exact_cell(&g, budget)?, cert_cell(&cert), format!("floor(n/3) = {}", n / 3));
                }
            }
        }
        Suite::Complete => {
            for n in 3..=6 {
                let g = gen::complete(n);
                let built = general_lower_bound_ordering(&g);
                let upper = if g.m() <= MATCHING_EDGE_CAP {
                    format!("m/c_f = {}", cms_upper_bound_fractional(&g)?)
                } else {
                    dash()
                };
                t.row(format!("K{n}"), &g, exact_cell(&g, budget)?, cert_cell(&built), upper);
            }
        }
        Suite::Bk => {
            for k in 2..=6 {
                let g = gen::b_graph(k)?;
                let formula = if k % 2 == 0 { k * (k + 1) / 2 } else { (k * k + 2 * k - 1) / 2 };
                let exact = if k == 3 { exact_cell(&g, budget)? } else { dash() };
                t.row(format!("B{k}"), &g, exact, dash(), format!("m formula = {formula}"));
            }
            let b3 = gen::b_graph(3)?;
            let hint = exact_cms(&b3, CmsSearch { node_budget: budget })?.value;
            for k in [3, 5] {
                let g = gen::b_prime_graph(k)?;
                let upper = if k == 3 {
                    let b = cms_upper_bound_subgraph(g.m(), &b3, hint)?;
                    format!("via B3 = {}", b.by_subgraph_cms)
                } else {
                    dash()
                };
                let exact = if k == 3 { exact_cell(&g, budget)? } else { dash() };
                t.row(format!("B'{k}"), &g, exact, cert_cell(&general_lower_bound_ordering(&g)), upper);
            }
        }
        Suite::General => {
            for (i, (n, k)) in [(20, 3), (30, 3), (40, 3), (20, 4), (30, 4), (40, 4), (20, 5), (30, 5), (40, 5)]
                .into_iter()
                .enumerate()
            {
                let g = gen::random_regular(n, k, i as u64)?;
                let cert = general_lower_bound_ordering(&g);
                let c = cert.graph.c;
                t.row(
                    format!("rr({n},{k},seed {i})"),
                    &g,
                    dash(),
                    cert_cell(&cert),
                    format!("floor(m/2c)-1 = {}", (g.m() / (2 * c)).saturating_sub(1)),
                );
            }
        }
        Suite::Explicit => {
            let mut cases = vec![("prism(18)".to_string(), gen::prism(18)?)];
            for n in [24, 36, 48] {
                cases.push((format!("bk_regular({n},3)"), gen::bk_containing_regular(n, 3, Some(n as u64))?));
            }
            for (name, g) in cases {
                let cert = partition_pipeline(&g, Pipeline::Explicit { x: None })?;
                let p = &cert.params;
                t.row(
                    name,
                    &g,
                    dash(),
                    cert_cell(&cert),
                    format!("x={} y={} w={} c={}", p.x.unwrap_or(0), p.y.unwrap_or(0), p.w.unwrap_or(0), cert.graph.c),
                );
            }
        }
        Suite::Randomized => {
            let alpha = Ratio::new(1, 7);
            for k in [3, 4] {
                for seed in 0..5 {
                    let g = gen::random_regular(300, k, seed)?;
                    let run = partition_pipeline(&g, Pipeline::Randomized { alpha, seed, retries: DEFAULT_RETRIES });
                    let (cell, bound) = match run {
                        Ok(cert) => {
                            let band = randomized_band(&cert, alpha);
                            let p = &cert.params;
                            let bound = format!(
                                "x={} (in band {}) w={} (in band {})",
                                p.x.unwrap_or(0),
                                band["x_in_band"],
                                p.w.unwrap_or(0),
                                band["w_in_band"]
                            );
                            (cert_cell(&cert), bound)
                        }
                        Err(e) => (format!("failed: {e}"), dash()),
                    };
                    t.row(format!("rr(300,{k},seed {seed})"), &g, dash(), cell, bound);
                }
            }
        }
    }
    Ok(t.render())
}
