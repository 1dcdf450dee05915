//! Canonical serializations of a graph: edgelist, DOT, JSON.
//! Edgelist and JSON parse back to the identical graph.

use cergen::Graph;
use clap::ValueEnum;
use serde_json::{json, Value};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    /// "n m" header, then one sorted "u v" line per edge (1-based)
    Edgelist,
    /// undirected `graph { u -- v; }` for visual spot checks
    Dot,
    /// object with n, edges, model, params, seed
    Json,
}

/// Generation provenance carried into the JSON output.
pub struct Provenance {
    pub model: &'static str,
    pub params: Value,
    pub seed: u64,
}

pub fn render(graph: &Graph, format: OutputFormat, provenance: &Provenance) -> String {
    match format {
        OutputFormat::Edgelist => render_edgelist(graph),
        OutputFormat::Dot => render_dot(graph),
        OutputFormat::Json => render_json(graph, provenance),
    }
}

fn render_edgelist(graph: &Graph) -> String {
    let mut out = format!("{} {}\n", graph.n(), graph.edge_count());
    for &(u, v) in graph.edges() {
        out.push_str(&format!("{u} {v}\n"));
    }
    out
}

fn render_dot(graph: &Graph) -> String {
    let mut out = String::from("graph {\n");
    let mut degree = vec![0u64; graph.n() as usize + 1];
    for &(u, v) in graph.edges() {
        degree[u as usize] += 1;
        degree[v as usize] += 1;
        out.push_str(&format!("  {u} -- {v};\n"));
    }
    // vertices without incident edges (n = 1) would otherwise vanish
    for (v, &d) in degree.iter().enumerate().skip(1) {
        if d == 0 {
            out.push_str(&format!("  {v};\n"));
        }
    }
    out.push_str("}\n");
    out
}

fn render_json(graph: &Graph, provenance: &Provenance) -> String {
    let edges: Vec<Value> = graph.edges().iter().map(|&(u, v)| json!([u, v])).collect();
    let value = json!({
        "n": graph.n(),
        "edges": edges,
        "model": provenance.model,
        "params": provenance.params,
        "seed": provenance.seed,
    });
    let mut out = serde_json::to_string_pretty(&value).expect("serializable");
    out.push('\n');
    out
}

pub fn parse_edgelist(text: &str) -> Result<Graph, String> {
    let mut lines = text.lines();
    let header = lines.next().ok_or("empty input")?;
    let mut parts = header.split_whitespace();
    let n: u32 = parts
        .next()
        .ok_or("missing vertex count")?
        .parse()
        .map_err(|e| format!("bad vertex count: {e}"))?;
    let m: u64 = parts
        .next()
        .ok_or("missing edge count")?
        .parse()
        .map_err(|e| format!("bad edge count: {e}"))?;
    if parts.next().is_some() {
        return Err("trailing tokens in header".into());
    }
    let mut edges = Vec::with_capacity(m as usize);
    for line in lines {
        if line.is_empty() {
            continue;
        }
        let mut ends = line.split_whitespace();
        let u: u32 = ends
            .next()
            .ok_or("empty edge line")?
            .parse()
            .map_err(|e| format!("bad endpoint: {e}"))?;
        let v: u32 = ends
            .next()
            .ok_or_else(|| format!("edge line with one endpoint: {line:?}"))?
            .parse()
            .map_err(|e| format!("bad endpoint: {e}"))?;
        if ends.next().is_some() {
            return Err(format!("trailing tokens in edge line {line:?}"));
        }
        edges.push((u, v));
    }
    if edges.len() as u64 != m {
        return Err(format!("header says {m} edges, found {}", edges.len()));
    }
    Graph::from_edges(n, edges).map_err(|e| e.to_string())
}

pub fn parse_json(text: &str) -> Result<Graph, String> {
    let value: Value = serde_json::from_str(text).map_err(|e| e.to_string())?;
    let n = value.get("n").and_then(Value::as_u64).ok_or("missing n")? as u32;
    let edges = value
        .get("edges")
        .and_then(Value::as_array)
        .ok_or("missing edges")?;
    let mut pairs = Vec::with_capacity(edges.len());
    for edge in edges {
        let pair = edge.as_array().filter(|a| a.len() == 2).ok_or("bad edge")?;
        let u = pair[0].as_u64().ok_or("bad endpoint")? as u32;
        let v = pair[1].as_u64().ok_or("bad endpoint")? as u32;
        pairs.push((u, v));
    }
    Graph::from_edges(n, pairs).map_err(|e| e.to_string())
}
