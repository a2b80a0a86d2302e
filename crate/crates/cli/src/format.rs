//! Edge-list and ordering files.
//!
//! Edge list: `p <n> <m>` followed by `m` lines `e <u> <v>`, vertices
//! 0-indexed, edges in index order. Ordering: one `<u> <v>` line per edge in
//! label order. Blank lines and `#` comments are ignored in both.

use std::fmt::Write as _;

use cms_core::{EdgeOrdering, Graph};

use crate::CliError;

fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines().enumerate().filter_map(|(i, line)| {
        let line = line.split('#').next().unwrap_or("").trim();
        (!line.is_empty()).then_some((i + 1, line))
    })
}

fn number(token: Option<&str>, line: usize) -> Result<usize, CliError> {
    let token = token.ok_or_else(|| CliError::Parse(format!("line {line}: missing number")))?;
    token
        .parse()
        .map_err(|_| CliError::Parse(format!("line {line}: bad number {token:?}")))
}

pub fn parse_edge_list(text: &str) -> Result<Graph, CliError> {
    let mut lines = content_lines(text);
    let (line, header) = lines
        .next()
        .ok_or_else(|| CliError::Parse("empty edge list".into()))?;
    let mut tokens = header.split_whitespace();
    if tokens.next() != Some("p") {
        return Err(CliError::Parse(format!("line {line}: expected `p <n> <m>`")));
    }
    let n = number(tokens.next(), line)?;
    let m = number(tokens.next(), line)?;
    if tokens.next().is_some() {
        return Err(CliError::Parse(format!("line {line}: trailing tokens")));
    }
    let mut pairs = Vec::with_capacity(m);
    for (line, text) in lines {
        let mut tokens = text.split_whitespace();
        if tokens.next() != Some("e") {
            return Err(CliError::Parse(format!("line {line}: expected `e <u> <v>`")));
        }
        let u = number(tokens.next(), line)?;
        let v = number(tokens.next(), line)?;
        if tokens.next().is_some() {
            return Err(CliError::Parse(format!("line {line}: trailing tokens")));
        }
        pairs.push((u, v));
    }
    if pairs.len() != m {
        return Err(CliError::Parse(format!("header promises {m} edges, found {}", pairs.len())));
    }
    Graph::new(n, pairs).map_err(|e| CliError::Parse(e.to_string()))
}

pub fn write_edge_list(g: &Graph) -> String {
    let mut out = format!("p {} {}\n", g.n(), g.m());
    for &(u, v) in g.edges() {
        writeln!(out, "e {u} {v}").expect("writing to a string");
    }
    out
}

/// Reads an ordering of `g`. Syntax problems are parse errors; pairs that
/// are not edges, repeats and missing edges are verification failures.
pub fn parse_ordering(g: &Graph, text: &str) -> Result<EdgeOrdering, CliError> {
    let mut seq = Vec::with_capacity(g.m());
    for (line, text) in content_lines(text) {
        let mut tokens = text.split_whitespace();
        let u = number(tokens.next(), line)?;
        let v = number(tokens.next(), line)?;
        if tokens.next().is_some() {
            return Err(CliError::Parse(format!("line {line}: trailing tokens")));
        }
        let e = g
            .edge_index(u, v)
            .ok_or_else(|| CliError::Verify(format!("line {line}: {{{u}, {v}}} is not an edge")))?;
        seq.push(e);
    }
    EdgeOrdering::of_graph(g, seq).map_err(|e| CliError::Verify(e.to_string()))
}

pub fn write_ordering(g: &Graph, ordering: &EdgeOrdering) -> String {
    let mut out = String::new();
    for &e in ordering.edges() {
        let (u, v) = g.endpoints(e);
        writeln!(out, "{u} {v}").expect("writing to a string");
    }
    out
}
