//! Undirected simple graphs with provenance-tagged vertices, plus the graph
//! text format and DOT export.

use std::collections::VecDeque;
use std::fmt::{self, Write};

use crate::error::{Error, Result};

/// Where a vertex came from.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum VertexTag {
    Plain,
    Variable(u32),
    Clause(usize),
    Element(usize),
    Set(usize),
    /// A vertex inside a gadget: `kind`, owning object, and local slot.
    Gadget {
        kind: &'static str,
        owner: usize,
        slot: usize,
    },
}

impl fmt::Display for VertexTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            VertexTag::Plain => write!(f, "v"),
            VertexTag::Variable(v) => write!(f, "x{v}"),
            VertexTag::Clause(j) => write!(f, "c{j}"),
            VertexTag::Element(e) => write!(f, "e{e}"),
            VertexTag::Set(s) => write!(f, "S{s}"),
            VertexTag::Gadget { kind, owner, slot } => write!(f, "{kind}[{owner}].{slot}"),
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct LabeledGraph {
    tags: Vec<VertexTag>,
    adj: Vec<Vec<usize>>,
    edges: Vec<(usize, usize)>,
}

impl LabeledGraph {
    pub fn new() -> Self {
        Self::default()
    }

    /// `n` untagged vertices and no edges.
    pub fn with_vertices(n: usize) -> Self {
        LabeledGraph {
            tags: vec![VertexTag::Plain; n],
            adj: vec![Vec::new(); n],
            edges: Vec::new(),
        }
    }

    /// Graph on `n` untagged vertices with the given 0-based edges.
    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut g = LabeledGraph::with_vertices(n);
        for &(u, v) in edges {
            g.add_edge(u, v)?;
        }
        Ok(g)
    }

    pub fn complete(n: usize) -> Self {
        let mut g = LabeledGraph::with_vertices(n);
        for u in 0..n {
            for v in u + 1..n {
                g.add_edge(u, v).unwrap();
            }
        }
        g
    }

    pub fn complete_bipartite(a: usize, b: usize) -> Self {
        let mut g = LabeledGraph::with_vertices(a + b);
        for u in 0..a {
            for v in a..a + b {
                g.add_edge(u, v).unwrap();
            }
        }
        g
    }

    pub fn add_vertex(&mut self, tag: VertexTag) -> usize {
        self.tags.push(tag);
        self.adj.push(Vec::new());
        self.tags.len() - 1
    }

    /// Adds edge `{u, v}` and returns its id. Self-loops and parallel edges
    /// are errors.
    pub fn add_edge(&mut self, u: usize, v: usize) -> Result<usize> {
        let n = self.num_vertices();
        if u >= n || v >= n {
            return Err(Error::InvalidGraph(format!("edge ({u},{v}) has an endpoint outside 0..{n}")));
        }
        if u == v {
            return Err(Error::InvalidGraph(format!("self-loop at {u}")));
        }
        if self.has_edge(u, v) {
            return Err(Error::InvalidGraph(format!("parallel edge ({u},{v})")));
        }
        self.adj[u].push(v);
        self.adj[v].push(u);
        self.edges.push((u, v));
        Ok(self.edges.len() - 1)
    }

    pub fn num_vertices(&self) -> usize {
        self.tags.len()
    }

    pub fn num_edges(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn tag(&self, v: usize) -> &VertexTag {
        &self.tags[v]
    }

    pub fn tags(&self) -> &[VertexTag] {
        &self.tags
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        let (a, b) = if self.adj[u].len() <= self.adj[v].len() { (u, v) } else { (v, u) };
        self.adj[a].contains(&b)
    }

    /// Neighbourhood bitmasks; only for graphs with at most 128 vertices.
    pub fn adjacency_masks(&self) -> Vec<u128> {
        assert!(self.num_vertices() <= 128);
        self.adj
            .iter()
            .map(|ns| ns.iter().fold(0u128, |m, &w| m | 1 << w))
            .collect()
    }

    /// 2-coloring by BFS, or `None` when an odd cycle exists.
    pub fn two_coloring(&self) -> Option<Vec<bool>> {
        let n = self.num_vertices();
        let mut color: Vec<Option<bool>> = vec![None; n];
        let mut queue = VecDeque::new();
        for s in 0..n {
            if color[s].is_some() {
                continue;
            }
            color[s] = Some(false);
            queue.push_back(s);
            while let Some(u) = queue.pop_front() {
                let cu = color[u].unwrap();
                for &w in &self.adj[u] {
                    match color[w] {
                        None => {
                            color[w] = Some(!cu);
                            queue.push_back(w);
                        }
                        Some(cw) if cw == cu => return None,
                        Some(_) => {}
                    }
                }
            }
        }
        Some(color.into_iter().map(Option::unwrap).collect())
    }

    pub fn is_bipartite(&self) -> bool {
        self.two_coloring().is_some()
    }

    /// Component id per vertex, numbered in order of first vertex.
    pub fn components(&self) -> Vec<usize> {
        let n = self.num_vertices();
        let mut comp = vec![usize::MAX; n];
        let mut next = 0;
        let mut stack = Vec::new();
        for s in 0..n {
            if comp[s] != usize::MAX {
                continue;
            }
            comp[s] = next;
            stack.push(s);
            while let Some(u) = stack.pop() {
                for &w in &self.adj[u] {
                    if comp[w] == usize::MAX {
                        comp[w] = next;
                        stack.push(w);
                    }
                }
            }
            next += 1;
        }
        comp
    }

    pub fn isolated_vertex(&self) -> Option<usize> {
        (0..self.num_vertices()).find(|&v| self.adj[v].is_empty())
    }

    /// True iff some 4 vertices are pairwise adjacent.
    pub fn has_k4(&self) -> bool {
        for &(u, v) in &self.edges {
            let common: Vec<usize> = self.adj[u]
                .iter()
                .copied()
                .filter(|&w| self.has_edge(v, w))
                .collect();
            for (i, &a) in common.iter().enumerate() {
                if common[i + 1..].iter().any(|&b| self.has_edge(a, b)) {
                    return true;
                }
            }
        }
        false
    }
}

/// Parses `g <n> <m>` followed by `m` lines `u v` with 1-based endpoints.
/// Blank lines and lines starting with `#` are ignored.
pub fn parse_graph(text: &str) -> Result<LabeledGraph> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));
    let perr = |line, message: &str| Error::Parse {
        line,
        message: message.to_string(),
    };
    let (hl, header) = lines.next().ok_or_else(|| perr(1, "missing header"))?;
    let parts: Vec<&str> = header.split_whitespace().collect();
    if parts.len() != 3 || parts[0] != "g" {
        return Err(perr(hl, "malformed header, expected `g <n> <m>`"));
    }
    let n: usize = parts[1].parse().map_err(|_| perr(hl, "bad vertex count"))?;
    let m: usize = parts[2].parse().map_err(|_| perr(hl, "bad edge count"))?;
    let mut g = LabeledGraph::with_vertices(n);
    let mut last = hl;
    for (ln, line) in lines {
        last = ln;
        let nums: Vec<usize> = line
            .split_whitespace()
            .map(|t| t.parse::<usize>())
            .collect::<std::result::Result<_, _>>()
            .map_err(|_| perr(ln, "bad vertex index"))?;
        if nums.len() != 2 {
            return Err(perr(ln, "edge line needs exactly two endpoints"));
        }
        let (u, v) = (nums[0], nums[1]);
        if u == 0 || v == 0 || u > n || v > n {
            return Err(perr(ln, "vertex index out of range"));
        }
        g.add_edge(u - 1, v - 1).map_err(|e| perr(ln, &e.to_string()))?;
    }
    if g.num_edges() != m {
        return Err(perr(last, &format!("header declares {m} edges, found {}", g.num_edges())));
    }
    Ok(g)
}

pub fn emit_graph(g: &LabeledGraph) -> String {
    let mut out = format!("g {} {}\n", g.num_vertices(), g.num_edges());
    for &(u, v) in g.edges() {
        writeln!(out, "{} {}", u + 1, v + 1).unwrap();
    }
    out
}

/// DOT text. With `positions`, each vertex gets a pinned `pos` attribute.
pub fn to_dot(g: &LabeledGraph, positions: Option<&[(f64, f64)]>) -> String {
    let mut out = String::from("graph G {\n");
    for v in 0..g.num_vertices() {
        write!(out, "  {v} [label=\"{}\"", g.tag(v)).unwrap();
        if let Some(p) = positions {
            write!(out, ", pos=\"{},{}!\"", p[v].0, p[v].1).unwrap();
        }
        out.push_str("];\n");
    }
    for &(u, v) in g.edges() {
        writeln!(out, "  {u} -- {v};").unwrap();
    }
    out.push_str("}\n");
    out
}
