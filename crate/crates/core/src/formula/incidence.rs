use super::CnfFormula;
use crate::graph::{LabeledGraph, VertexTag};

/// Bipartite variable/clause incidence structure.
///
/// Vertex numbering used by [`IncidenceGraph::to_graph`]: occurring variables
/// in ascending index order, then clauses in clause order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IncidenceGraph {
    /// Variables with at least one occurrence, ascending.
    pub variables: Vec<u32>,
    pub num_clauses: usize,
    /// `(variable, clause)` pairs, clause-major, in literal order.
    pub edges: Vec<(u32, usize)>,
}

pub fn incidence_graph(f: &CnfFormula) -> IncidenceGraph {
    let mut edges = Vec::new();
    for (j, c) in f.clauses().iter().enumerate() {
        let mut seen: Vec<u32> = Vec::with_capacity(c.len());
        for l in c.iter() {
            if !seen.contains(&l.var()) {
                seen.push(l.var());
                edges.push((l.var(), j));
            }
        }
    }
    let mut variables: Vec<u32> = edges.iter().map(|e| e.0).collect();
    variables.sort_unstable();
    variables.dedup();
    IncidenceGraph {
        variables,
        num_clauses: f.num_clauses(),
        edges,
    }
}

impl IncidenceGraph {
    pub fn num_vertices(&self) -> usize {
        self.variables.len() + self.num_clauses
    }

    pub fn num_edges(&self) -> usize {
        self.edges.len()
    }

    pub fn var_vertex(&self, var: u32) -> Option<usize> {
        self.variables.binary_search(&var).ok()
    }

    pub fn clause_vertex(&self, clause: usize) -> usize {
        self.variables.len() + clause
    }

    pub fn to_graph(&self) -> LabeledGraph {
        let mut g = LabeledGraph::new();
        for &v in &self.variables {
            g.add_vertex(VertexTag::Variable(v));
        }
        for j in 0..self.num_clauses {
            g.add_vertex(VertexTag::Clause(j));
        }
        for &(v, j) in &self.edges {
            let a = self.var_vertex(v).expect("variable listed");
            g.add_edge(a, self.clause_vertex(j))
                .expect("incidence edges are simple");
        }
        g
    }
}
