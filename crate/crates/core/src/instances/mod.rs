//! Instance generation for the colouring specifications: a seeded parameter
//! grid, edge-list ingestion, and a few named graphs.

use std::collections::BTreeSet;
use std::fmt::Write as _;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::eval::Instance;
use crate::value::Value;

/// A directed, irreflexive edge set over vertices `0..n`.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct EdgeList {
    pub n: usize,
    pub edges: BTreeSet<(usize, usize)>,
}

impl EdgeList {
    /// Adds `(v, u)` for every stored `(u, v)`.
    pub fn symmetrized(&self) -> EdgeList {
        let edges = self.edges.iter().flat_map(|&(u, v)| [(u, v), (v, u)]).collect();
        EdgeList { n: self.n, edges }
    }

    pub fn is_symmetric(&self) -> bool {
        self.edges.iter().all(|&(u, v)| self.edges.contains(&(v, u)))
    }

    pub fn to_value(&self) -> Value {
        Value::int_relation(self.edges.iter().map(|&(u, v)| (u as i64, v as i64)))
    }

    /// `n <count>` header followed by one `u v` line per stored pair.
    pub fn to_text(&self) -> String {
        let mut s = format!("n {}\n", self.n);
        for (u, v) in &self.edges {
            let _ = writeln!(s, "{u} {v}");
        }
        s
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Orientation {
    /// Store both orientations of every line.
    #[default]
    Undirected,
    Directed,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum EdgeListError {
    #[error("line {line}: {message}")]
    ParseError { line: usize, message: String },
    #[error("line {line}: self-loop on vertex {vertex}")]
    SelfLoopError { line: usize, vertex: usize },
}

/// Reads an edge list, storing both orientations of each line.
pub fn read_edge_list(text: &str) -> Result<EdgeList, EdgeListError> {
    read_edge_list_with(text, Orientation::Undirected)
}

/// Lines are `u v`; an optional first `n <count>` header fixes the vertex
/// count (otherwise 1 + the largest id). Blank lines and `#` comments are
/// skipped; duplicates collapse.
pub fn read_edge_list_with(text: &str, orientation: Orientation) -> Result<EdgeList, EdgeListError> {
    let mut header: Option<usize> = None;
    let mut g = EdgeList::default();
    let mut seen_edge = false;
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let body = raw.split('#').next().unwrap().trim();
        if body.is_empty() {
            continue;
        }
        let err = |message: String| EdgeListError::ParseError { line, message };
        let fields: Vec<&str> = body.split_whitespace().collect();
        if fields[0] == "n" {
            if seen_edge || header.is_some() {
                return Err(err("the `n` header must come before any edge".into()));
            }
            let [_, count] = fields[..] else { return Err(err(format!("expected `n <count>`, found `{body}`"))) };
            header = Some(count.parse().map_err(|_| err(format!("invalid vertex count `{count}`")))?);
            continue;
        }
        let [a, b] = fields[..] else { return Err(err(format!("expected `u v`, found `{body}`"))) };
        let parse = |s: &str| s.parse::<usize>().map_err(|_| err(format!("invalid vertex id `{s}`")));
        let (u, v) = (parse(a)?, parse(b)?);
        if u == v {
            return Err(EdgeListError::SelfLoopError { line, vertex: u });
        }
        if let Some(n) = header {
            if u >= n || v >= n {
                return Err(err(format!("vertex {} is out of range for n = {n}", u.max(v))));
            }
        }
        seen_edge = true;
        g.edges.insert((u, v));
        if orientation == Orientation::Undirected {
            g.edges.insert((v, u));
        }
        g.n = g.n.max(u.max(v) + 1);
    }
    if let Some(n) = header {
        g.n = n;
    }
    Ok(g)
}

/// Binds `n`, `edges`, `numberColours` and `coloursPerNode`.
pub fn edge_list_to_param(g: &EdgeList, number_colours: i64, colours_per_node: i64) -> Instance {
    Instance::new([
        ("n", Value::Int(g.n as i64)),
        ("edges", g.to_value()),
        ("numberColours", Value::Int(number_colours)),
        ("coloursPerNode", Value::Int(colours_per_node)),
    ])
}

/// The dodecahedral graph: 20 vertices, 30 undirected edges (outer
/// pentagon 0–4, middle decagon 5–14, inner pentagram 15–19).
pub fn dodecahedral() -> EdgeList {
    let mut g = EdgeList { n: 20, edges: BTreeSet::new() };
    for i in 0..5 {
        g.edges.insert((i, (i + 1) % 5));
        g.edges.insert((i, 5 + 2 * i));
        g.edges.insert((5 + 2 * i + 1, 15 + i));
        g.edges.insert((15 + i, 15 + (i + 2) % 5));
    }
    for j in 0..10 {
        g.edges.insert((5 + j, 5 + (j + 1) % 10));
    }
    g.symmetrized()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GridConfig {
    pub n_values: Vec<usize>,
    pub edge_density_percents: Vec<u32>,
    pub cpn_values: Vec<i64>,
    /// numberColours = cpn · m.
    #[serde(default)]
    pub colours_multipliers: Vec<i64>,
    /// numberColours = cpn + o; used instead of multipliers when non-empty.
    #[serde(default)]
    pub colour_offsets: Vec<i64>,
    #[serde(default)]
    pub seed: u64,
    #[serde(default)]
    pub directed: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("invalid grid configuration: {0}")]
pub struct ConfigError(pub String);

/// One grid point.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GridInstance {
    pub n: usize,
    pub density: u32,
    pub cpn: i64,
    pub number_colours: i64,
    pub graph: EdgeList,
}

impl GridInstance {
    pub fn instance(&self) -> Instance {
        edge_list_to_param(&self.graph, self.number_colours, self.cpn)
    }

    /// Stable file stem, e.g. `n3-d50-cpn1-c2`.
    pub fn label(&self) -> String {
        format!("n{}-d{}-cpn{}-c{}", self.n, self.density, self.cpn, self.number_colours)
    }
}

impl GridConfig {
    /// The grid used in the original experiments.
    pub fn full() -> Self {
        GridConfig {
            n_values: vec![10, 20, 30, 40],
            edge_density_percents: (20..=80).step_by(5).collect(),
            cpn_values: (2..=5).collect(),
            colours_multipliers: vec![4, 5, 6],
            colour_offsets: vec![],
            seed: 0,
            directed: false,
        }
    }

    /// A tiny grid whose instances the brute-force evaluator can solve.
    pub fn desk() -> Self {
        GridConfig {
            n_values: vec![2, 3, 4],
            edge_density_percents: vec![25, 50, 75],
            cpn_values: vec![1, 2],
            colours_multipliers: vec![],
            colour_offsets: vec![0, 1, 2],
            seed: 0,
            directed: false,
        }
    }

    pub fn validate(&self) -> Result<(), ConfigError> {
        let err = |m: &str| Err(ConfigError(m.to_string()));
        if self.n_values.is_empty() || self.edge_density_percents.is_empty() || self.cpn_values.is_empty() {
            return err("n_values, edge_density_percents and cpn_values must be non-empty");
        }
        if self.colours_multipliers.is_empty() && self.colour_offsets.is_empty() {
            return err("one of colours_multipliers or colour_offsets must be non-empty");
        }
        if !self.colours_multipliers.is_empty() && !self.colour_offsets.is_empty() {
            return err("colours_multipliers and colour_offsets are mutually exclusive");
        }
        if self.edge_density_percents.iter().any(|&d| d == 0 || d > 100) {
            return err("densities must lie in (0, 100]");
        }
        if self.cpn_values.iter().any(|&c| c < 1) {
            return err("cpn values must be at least 1");
        }
        if self.colours_multipliers.iter().any(|&m| m < 1) || self.colour_offsets.iter().any(|&o| o < 0) {
            return err("multipliers must be positive and offsets non-negative");
        }
        Ok(())
    }

    fn colour_counts(&self, cpn: i64) -> Vec<i64> {
        if self.colour_offsets.is_empty() {
            self.colours_multipliers.iter().map(|m| cpn * m).collect()
        } else {
            self.colour_offsets.iter().map(|o| cpn + o).collect()
        }
    }
}

/// ⌊n²·d/100⌋ capped at n·(n−1).
pub fn target_edge_count(n: usize, density: u32) -> usize {
    (n * n * density as usize / 100).min(n * n.saturating_sub(1))
}

/// Samples the edge set for one (n, density) point. Directed mode takes a
/// prefix of a seeded shuffle of all ordered pairs; undirected mode walks
/// the same shuffle adding both orientations, stopping at the largest even
/// count not above the target.
pub fn sample_edges(n: usize, density: u32, seed: u64, directed: bool) -> EdgeList {
    let target = target_edge_count(n, density);
    let mut pairs: Vec<(usize, usize)> =
        (0..n).flat_map(|u| (0..n).filter(move |&v| v != u).map(move |v| (u, v))).collect();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(((n as u64) << 32) | density as u64);
    pairs.shuffle(&mut rng);
    let mut edges = BTreeSet::new();
    if directed {
        edges.extend(pairs.into_iter().take(target));
    } else {
        for (u, v) in pairs {
            if edges.len() + 2 > target {
                break;
            }
            if edges.insert((u, v)) {
                edges.insert((v, u));
            }
        }
    }
    EdgeList { n, edges }
}

/// Every point of the Cartesian product, in (n, density, cpn, colours)
/// order. Graphs depend only on (seed, n, density).
pub fn generate_grid(cfg: &GridConfig) -> Result<Vec<GridInstance>, ConfigError> {
    cfg.validate()?;
    let mut out = Vec::new();
    for &n in &cfg.n_values {
        for &density in &cfg.edge_density_percents {
            let graph = sample_edges(n, density, cfg.seed, cfg.directed);
            for &cpn in &cfg.cpn_values {
                for number_colours in cfg.colour_counts(cpn) {
                    out.push(GridInstance { n, density, cpn, number_colours, graph: graph.clone() });
                }
            }
        }
    }
    Ok(out)
}
