//! Direct solution checks, independent of the counters.

use crate::formula::Assignment;
use crate::graph::LabeledGraph;
use crate::reduction::{Instance, Problem, Solution};

fn covers_all_edges(g: &LabeledGraph, chosen: &[bool]) -> bool {
    g.edges().iter().all(|&(u, v)| chosen[u] || chosen[v])
}

fn dominates(g: &LabeledGraph, chosen: &[bool]) -> bool {
    (0..g.num_vertices()).all(|v| chosen[v] || g.neighbors(v).iter().any(|&u| chosen[u]))
}

/// True when deleting the chosen vertices leaves no cycle.
fn breaks_cycles(g: &LabeledGraph, chosen: &[bool]) -> bool {
    let mut parent: Vec<usize> = (0..g.num_vertices()).collect();
    fn find(p: &mut [usize], mut x: usize) -> usize {
        while p[x] != x {
            p[x] = p[p[x]];
            x = p[x];
        }
        x
    }
    for &(u, v) in g.edges() {
        if chosen[u] || chosen[v] {
            continue;
        }
        let (a, b) = (find(&mut parent, u), find(&mut parent, v));
        if a == b {
            return false;
        }
        parent[a] = b;
    }
    true
}

fn mask(n: usize, items: &[usize]) -> Option<Vec<bool>> {
    let mut m = vec![false; n];
    for &i in items {
        if i >= n || m[i] {
            return None;
        }
        m[i] = true;
    }
    Some(m)
}

fn is_triangle_partition(g: &LabeledGraph, parts: &[Vec<usize>]) -> bool {
    let all: Vec<usize> = parts.concat();
    mask(g.num_vertices(), &all).is_some_and(|m| m.iter().all(|&b| b))
        && parts.iter().all(|p| {
            p.len() == 3 && g.has_edge(p[0], p[1]) && g.has_edge(p[1], p[2]) && g.has_edge(p[0], p[2])
        })
}

fn is_claw(g: &LabeledGraph, part: &[usize]) -> bool {
    if part.len() != 3 {
        return false;
    }
    let e: Vec<(usize, usize)> = part.iter().map(|&i| g.edges()[i]).collect();
    [e[0].0, e[0].1].into_iter().any(|c| {
        let others: Option<Vec<usize>> = e
            .iter()
            .map(|&(u, v)| if u == c { Some(v) } else if v == c { Some(u) } else { None })
            .collect();
        others.is_some_and(|o| o[0] != o[1] && o[1] != o[2] && o[0] != o[2])
    })
}

fn is_claw_partition(g: &LabeledGraph, parts: &[Vec<usize>]) -> bool {
    let all: Vec<usize> = parts.concat();
    mask(g.num_edges(), &all).is_some_and(|m| m.iter().all(|&b| b)) && parts.iter().all(|p| is_claw(g, p))
}

fn assignment_fits(v: &Assignment, n: u32) -> bool {
    v.len() == n as usize
}

/// Whether `s` solves `problem` on `instance`. Assignments must cover the
/// instance's variables exactly.
pub fn is_solution(problem: Problem, instance: &Instance, s: &Solution) -> bool {
    match (problem, instance, s) {
        (Problem::Sat, Instance::Cnf(f), Solution::Assignment(v)) => {
            assignment_fits(v, f.num_vars()) && f.evaluate(v).unwrap_or(false)
        }
        (Problem::ExactlyOne, Instance::Cnf(f), Solution::Assignment(v)) => {
            assignment_fits(v, f.num_vars()) && f.evaluate_ex1(v).unwrap_or(false)
        }
        (Problem::IlpFeasible, Instance::Ilp(i), Solution::Assignment(v)) => {
            assignment_fits(v, i.num_vars()) && i.is_feasible(v).unwrap_or(false)
        }
        (Problem::ExactCover, Instance::Sets(sets), Solution::Selection(sel)) => sets.is_exact_cover(sel),
        (Problem::HittingSet(m), Instance::Sets(sets), Solution::Selection(sel)) => {
            m.admits(sel.len()) && mask(sets.ground_size(), sel).is_some() && sets.is_hitting_set(sel)
        }
        (Problem::VertexCover(m), Instance::Graph(g), Solution::Selection(sel)) => {
            m.admits(sel.len()) && mask(g.num_vertices(), sel).is_some_and(|c| covers_all_edges(g, &c))
        }
        (Problem::DominatingSet(m), Instance::Graph(g), Solution::Selection(sel)) => {
            m.admits(sel.len()) && mask(g.num_vertices(), sel).is_some_and(|c| dominates(g, &c))
        }
        (Problem::FeedbackVertexSet(m), Instance::Graph(g), Solution::Selection(sel)) => {
            m.admits(sel.len()) && mask(g.num_vertices(), sel).is_some_and(|c| breaks_cycles(g, &c))
        }
        (Problem::TrianglePartition, Instance::Graph(g), Solution::Partition(p)) => is_triangle_partition(g, p),
        (Problem::ClawPartition, Instance::Graph(g), Solution::Partition(p)) => is_claw_partition(g, p),
        _ => false,
    }
}

/// Turns an oracle support (true variables, or chosen items) into a
/// solution of `problem` on `instance`. Partition problems are not
/// supported as sources.
pub fn solution_from_support(problem: Problem, instance: &Instance, support: &[usize]) -> Option<Solution> {
    match (problem, instance) {
        (Problem::Sat | Problem::ExactlyOne, Instance::Cnf(f)) => {
            let mut v = Assignment::all(f.num_vars(), false);
            for &x in support {
                v.set(x as u32, true);
            }
            Some(Solution::Assignment(v))
        }
        (Problem::IlpFeasible, Instance::Ilp(i)) => {
            let mut v = Assignment::all(i.num_vars(), false);
            for &x in support {
                v.set(x as u32, true);
            }
            Some(Solution::Assignment(v))
        }
        (Problem::TrianglePartition | Problem::ClawPartition, _) => None,
        _ => Some(Solution::selection(support.to_vec())),
    }
}
