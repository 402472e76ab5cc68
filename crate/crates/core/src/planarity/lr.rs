//! Left-right planarity test (Brandes' formulation of de Fraysseix and
//! Rosenstiehl), with a combinatorial embedding for planar inputs.
//!
//! The three DFS passes are iterative so deep graphs do not overflow the
//! stack. Edge ids index the oriented edge list built by the first pass.

use std::collections::HashMap;

use crate::graph::LabeledGraph;

const NONE: usize = usize::MAX;

#[derive(Clone, Copy, Debug, Default)]
struct Interval {
    low: Option<usize>,
    high: Option<usize>,
}

impl Interval {
    fn is_empty(&self) -> bool {
        self.low.is_none() && self.high.is_none()
    }
}

#[derive(Clone, Copy, Debug, Default)]
struct ConflictPair {
    left: Interval,
    right: Interval,
}

impl ConflictPair {
    fn swap(&mut self) {
        std::mem::swap(&mut self.left, &mut self.right);
    }
}

/// Rotation system: clockwise neighbour order around every vertex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Embedding {
    pub rotation: Vec<Vec<usize>>,
}

impl Embedding {
    /// Number of faces traced from the rotation system, counting one face
    /// per isolated vertex.
    pub fn count_faces(&self) -> usize {
        let n = self.rotation.len();
        let mut pos: Vec<HashMap<usize, usize>> = Vec::with_capacity(n);
        for r in &self.rotation {
            pos.push(r.iter().enumerate().map(|(i, &w)| (w, i)).collect());
        }
        let mut seen: HashMap<(usize, usize), ()> = HashMap::new();
        let mut faces = 0;
        for u in 0..n {
            if self.rotation[u].is_empty() {
                faces += 1;
                continue;
            }
            for &v in &self.rotation[u] {
                if seen.contains_key(&(u, v)) {
                    continue;
                }
                faces += 1;
                let (mut a, mut b) = (u, v);
                while seen.insert((a, b), ()).is_none() {
                    let rb = &self.rotation[b];
                    let i = pos[b][&a];
                    let c = rb[(i + 1) % rb.len()];
                    a = b;
                    b = c;
                }
            }
        }
        faces
    }

    /// Checks that the rotation matches `g` and satisfies Euler's formula
    /// on every component.
    pub fn is_valid_for(&self, g: &LabeledGraph) -> bool {
        let n = g.num_vertices();
        if self.rotation.len() != n {
            return false;
        }
        for v in 0..n {
            let mut a = self.rotation[v].clone();
            let mut b = g.neighbors(v).to_vec();
            a.sort_unstable();
            b.sort_unstable();
            if a != b {
                return false;
            }
        }
        let comps = g.components();
        let c = comps.iter().copied().max().map_or(0, |m| m + 1);
        let isolated = (0..n).filter(|&v| g.degree(v) == 0).count();
        let faces = self.count_faces() - isolated;
        // V - E + F = 2 on each component that has an edge
        (n - isolated) as i64 - g.num_edges() as i64 + faces as i64 == 2 * (c - isolated) as i64
    }
}

struct Lr {
    adj: Vec<Vec<(usize, usize)>>,
    oriented: Vec<bool>,
    src: Vec<usize>,
    dst: Vec<usize>,
    out: Vec<Vec<usize>>,
    height: Vec<usize>,
    lowpt: Vec<usize>,
    lowpt2: Vec<usize>,
    nesting_depth: Vec<i64>,
    parent_edge: Vec<Option<usize>>,
    roots: Vec<usize>,
    ordered: Vec<Vec<usize>>,
    reference: Vec<Option<usize>>,
    side: Vec<i64>,
    stack: Vec<ConflictPair>,
    stack_bottom: Vec<usize>,
    lowpt_edge: Vec<usize>,
}

impl Lr {
    fn new(g: &LabeledGraph) -> Self {
        let n = g.num_vertices();
        let mut adj = vec![Vec::new(); n];
        for (id, &(u, v)) in g.edges().iter().enumerate() {
            adj[u].push((v, id));
            adj[v].push((u, id));
        }
        let m = g.num_edges();
        Lr {
            adj,
            oriented: vec![false; m],
            src: Vec::with_capacity(m),
            dst: Vec::with_capacity(m),
            out: vec![Vec::new(); n],
            height: vec![NONE; n],
            lowpt: Vec::with_capacity(m),
            lowpt2: Vec::with_capacity(m),
            nesting_depth: Vec::with_capacity(m),
            parent_edge: vec![None; n],
            roots: Vec::new(),
            ordered: Vec::new(),
            reference: vec![None; m],
            side: vec![1; m],
            stack: Vec::new(),
            stack_bottom: vec![0; m],
            lowpt_edge: vec![NONE; m],
        }
    }

    fn lowpt_of(&self, e: Option<usize>) -> usize {
        self.lowpt[e.expect("interval endpoint")]
    }

    fn conflicting(&self, i: &Interval, b: usize) -> bool {
        !i.is_empty() && self.lowpt_of(i.high) > self.lowpt[b]
    }

    fn lowest(&self, p: &ConflictPair) -> usize {
        if p.left.is_empty() {
            return self.lowpt_of(p.right.low);
        }
        if p.right.is_empty() {
            return self.lowpt_of(p.left.low);
        }
        self.lowpt_of(p.left.low).min(self.lowpt_of(p.right.low))
    }

    fn orient(&mut self, v: usize, w: usize) -> usize {
        let id = self.src.len();
        self.src.push(v);
        self.dst.push(w);
        self.out[v].push(id);
        self.lowpt.push(0);
        self.lowpt2.push(0);
        self.nesting_depth.push(0);
        id
    }

    fn dfs_orientation(&mut self, root: usize) {
        let mut stack = vec![root];
        let mut ind = vec![0usize; self.adj.len()];
        // oriented edge created from (v, position) and whose child is pending
        let mut pending: HashMap<(usize, usize), usize> = HashMap::new();
        while let Some(v) = stack.pop() {
            let e = self.parent_edge[v];
            while ind[v] < self.adj[v].len() {
                let (w, uid) = self.adj[v][ind[v]];
                let vw;
                if let Some(id) = pending.remove(&(v, ind[v])) {
                    vw = id;
                } else {
                    if self.oriented[uid] {
                        ind[v] += 1;
                        continue;
                    }
                    self.oriented[uid] = true;
                    vw = self.orient(v, w);
                    self.lowpt[vw] = self.height[v];
                    self.lowpt2[vw] = self.height[v];
                    if self.height[w] == NONE {
                        self.parent_edge[w] = Some(vw);
                        self.height[w] = self.height[v] + 1;
                        pending.insert((v, ind[v]), vw);
                        stack.push(v);
                        stack.push(w);
                        break;
                    } else {
                        self.lowpt[vw] = self.height[w];
                    }
                }
                self.nesting_depth[vw] = 2 * self.lowpt[vw] as i64;
                if self.lowpt2[vw] < self.height[v] {
                    self.nesting_depth[vw] += 1;
                }
                if let Some(e) = e {
                    if self.lowpt[vw] < self.lowpt[e] {
                        self.lowpt2[e] = self.lowpt[e].min(self.lowpt2[vw]);
                        self.lowpt[e] = self.lowpt[vw];
                    } else if self.lowpt[vw] > self.lowpt[e] {
                        self.lowpt2[e] = self.lowpt2[e].min(self.lowpt[vw]);
                    } else {
                        self.lowpt2[e] = self.lowpt2[e].min(self.lowpt2[vw]);
                    }
                }
                ind[v] += 1;
            }
        }
    }

    fn dfs_testing(&mut self, root: usize) -> bool {
        let mut stack = vec![root];
        let mut ind = vec![0usize; self.adj.len()];
        let mut resumed = vec![false; self.src.len()];
        while let Some(v) = stack.pop() {
            let e = self.parent_edge[v];
            let mut descended = false;
            while ind[v] < self.ordered[v].len() {
                let ei = self.ordered[v][ind[v]];
                let w = self.dst[ei];
                if !resumed[ei] {
                    self.stack_bottom[ei] = self.stack.len();
                    if self.parent_edge[w] == Some(ei) {
                        stack.push(v);
                        stack.push(w);
                        resumed[ei] = true;
                        descended = true;
                        break;
                    } else {
                        self.lowpt_edge[ei] = ei;
                        self.stack.push(ConflictPair {
                            left: Interval::default(),
                            right: Interval {
                                low: Some(ei),
                                high: Some(ei),
                            },
                        });
                    }
                }
                if self.lowpt[ei] < self.height[v] {
                    if ind[v] == 0 {
                        let e = e.expect("non-root has a parent edge");
                        self.lowpt_edge[e] = self.lowpt_edge[ei];
                    } else if !self.add_constraints(ei, e.expect("non-root has a parent edge")) {
                        return false;
                    }
                }
                ind[v] += 1;
            }
            if !descended {
                if let Some(e) = e {
                    self.remove_back_edges(e);
                }
            }
        }
        true
    }

    fn add_constraints(&mut self, ei: usize, e: usize) -> bool {
        let mut p = ConflictPair::default();
        loop {
            let mut q = self.stack.pop().expect("return edges of ei are on the stack");
            if !q.left.is_empty() {
                q.swap();
            }
            if !q.left.is_empty() {
                return false;
            }
            if self.lowpt_of(q.right.low) > self.lowpt[e] {
                if p.right.is_empty() {
                    p.right = q.right;
                } else {
                    self.reference[p.right.low.unwrap()] = q.right.high;
                }
                p.right.low = q.right.low;
            } else {
                self.reference[q.right.low.unwrap()] = Some(self.lowpt_edge[e]);
            }
            if self.stack.len() == self.stack_bottom[ei] {
                break;
            }
        }
        while let Some(top) = self.stack.last().copied() {
            if !(self.conflicting(&top.left, ei) || self.conflicting(&top.right, ei)) {
                break;
            }
            let mut q = self.stack.pop().unwrap();
            if self.conflicting(&q.right, ei) {
                q.swap();
            }
            if self.conflicting(&q.right, ei) {
                return false;
            }
            if let Some(l) = p.right.low {
                self.reference[l] = q.right.high;
            }
            if q.right.low.is_some() {
                p.right.low = q.right.low;
            }
            if p.left.is_empty() {
                p.left = q.left;
            } else if let Some(l) = p.left.low {
                self.reference[l] = q.left.high;
            }
            p.left.low = q.left.low;
        }
        if !(p.left.is_empty() && p.right.is_empty()) {
            self.stack.push(p);
        }
        true
    }

    fn remove_back_edges(&mut self, e: usize) {
        let u = self.src[e];
        while let Some(top) = self.stack.last() {
            if self.lowest(top) != self.height[u] {
                break;
            }
            let p = self.stack.pop().unwrap();
            if let Some(l) = p.left.low {
                self.side[l] = -1;
            }
        }
        if let Some(mut p) = self.stack.pop() {
            while let Some(h) = p.left.high {
                if self.dst[h] != u {
                    break;
                }
                p.left.high = self.reference[h];
            }
            if p.left.high.is_none() {
                if let Some(l) = p.left.low {
                    self.reference[l] = p.right.low;
                    self.side[l] = -1;
                    p.left.low = None;
                }
            }
            while let Some(h) = p.right.high {
                if self.dst[h] != u {
                    break;
                }
                p.right.high = self.reference[h];
            }
            if p.right.high.is_none() {
                if let Some(l) = p.right.low {
                    self.reference[l] = p.left.low;
                    self.side[l] = -1;
                    p.right.low = None;
                }
            }
            self.stack.push(p);
        }
        if self.lowpt[e] < self.height[u] {
            let top = *self.stack.last().expect("e has a return edge");
            let hl = top.left.high;
            let hr = top.right.high;
            self.reference[e] = match (hl, hr) {
                (Some(l), None) => Some(l),
                (Some(l), Some(r)) if self.lowpt[l] > self.lowpt[r] => Some(l),
                _ => hr,
            };
        }
    }

    fn sign(&mut self, e: usize) -> i64 {
        let mut stack = vec![e];
        let mut old_ref: HashMap<usize, usize> = HashMap::new();
        while let Some(x) = stack.pop() {
            if let Some(r) = self.reference[x] {
                stack.push(x);
                stack.push(r);
                old_ref.insert(x, r);
                self.reference[x] = None;
            } else if let Some(&r) = old_ref.get(&x) {
                self.side[x] *= self.side[r];
            }
        }
        self.side[e]
    }
}

/// Circular doubly linked rotation under construction.
struct RotationBuilder {
    cw: Vec<HashMap<usize, usize>>,
    ccw: Vec<HashMap<usize, usize>>,
    first: Vec<Option<usize>>,
}

impl RotationBuilder {
    fn new(n: usize) -> Self {
        RotationBuilder {
            cw: vec![HashMap::new(); n],
            ccw: vec![HashMap::new(); n],
            first: vec![None; n],
        }
    }

    /// Inserts `w` into `v`'s rotation clockwise after `reference`.
    fn add_cw(&mut self, v: usize, w: usize, reference: Option<usize>) {
        match reference {
            None => {
                self.cw[v].insert(w, w);
                self.ccw[v].insert(w, w);
                self.first[v] = Some(w);
            }
            Some(r) => {
                let next = self.cw[v][&r];
                self.cw[v].insert(r, w);
                self.cw[v].insert(w, next);
                self.ccw[v].insert(next, w);
                self.ccw[v].insert(w, r);
            }
        }
    }

    /// Inserts `w` counterclockwise before `reference`.
    fn add_ccw(&mut self, v: usize, w: usize, reference: Option<usize>) {
        match reference {
            None => self.add_cw(v, w, None),
            Some(r) => {
                let prev = self.ccw[v][&r];
                self.add_cw(v, w, Some(prev));
                if self.first[v] == Some(r) {
                    self.first[v] = Some(w);
                }
            }
        }
    }

    fn add_first(&mut self, v: usize, w: usize) {
        let r = self.first[v];
        self.add_ccw(v, w, r);
    }

    fn finish(self) -> Embedding {
        let n = self.first.len();
        let mut rotation = vec![Vec::new(); n];
        for (v, rot) in rotation.iter_mut().enumerate() {
            if let Some(f) = self.first[v] {
                let mut x = f;
                loop {
                    rot.push(x);
                    x = self.cw[v][&x];
                    if x == f {
                        break;
                    }
                }
            }
        }
        Embedding { rotation }
    }
}

/// Planarity decision; planar graphs also get a rotation system.
pub fn planar_embedding(g: &LabeledGraph) -> Option<Embedding> {
    let n = g.num_vertices();
    if n > 2 && g.num_edges() > 3 * n - 6 {
        return None;
    }
    let mut lr = Lr::new(g);
    for v in 0..n {
        if lr.height[v] == NONE {
            lr.height[v] = 0;
            lr.roots.push(v);
            lr.dfs_orientation(v);
        }
    }
    let sort_out = |lr: &Lr| -> Vec<Vec<usize>> {
        lr.out
            .iter()
            .map(|es| {
                let mut es = es.clone();
                es.sort_by_key(|&e| lr.nesting_depth[e]);
                es
            })
            .collect()
    };
    lr.ordered = sort_out(&lr);
    for r in lr.roots.clone() {
        if !lr.dfs_testing(r) {
            return None;
        }
    }

    for e in 0..lr.src.len() {
        let s = lr.sign(e);
        lr.nesting_depth[e] *= s;
    }
    lr.ordered = sort_out(&lr);
    let mut rot = RotationBuilder::new(n);
    for v in 0..n {
        let mut prev = None;
        for &e in &lr.ordered[v] {
            let w = lr.dst[e];
            rot.add_cw(v, w, prev);
            prev = Some(w);
        }
    }

    let mut left_ref = vec![NONE; n];
    let mut right_ref = vec![NONE; n];
    for &root in &lr.roots {
        let mut stack = vec![root];
        let mut ind = vec![0usize; n];
        while let Some(v) = stack.pop() {
            while ind[v] < lr.ordered[v].len() {
                let ei = lr.ordered[v][ind[v]];
                ind[v] += 1;
                let w = lr.dst[ei];
                if lr.parent_edge[w] == Some(ei) {
                    rot.add_first(w, v);
                    left_ref[v] = w;
                    right_ref[v] = w;
                    stack.push(v);
                    stack.push(w);
                    break;
                } else if lr.side[ei] == 1 {
                    rot.add_cw(w, v, Some(right_ref[w]));
                } else {
                    rot.add_ccw(w, v, Some(left_ref[w]));
                    left_ref[w] = v;
                }
            }
        }
    }
    Some(rot.finish())
}

pub fn is_planar(g: &LabeledGraph) -> bool {
    planar_embedding(g).is_some()
}
