use std::fmt::Write;

use crate::error::{Error, Result};
use crate::graph::{LabeledGraph, VertexTag};

/// A ground set `0..ground_size` and a family of subsets. Duplicate sets are
/// allowed and count as distinct members of the family.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SetSystem {
    ground_size: usize,
    sets: Vec<Vec<usize>>,
    element_tags: Vec<VertexTag>,
    set_tags: Vec<VertexTag>,
}

impl SetSystem {
    pub fn new(ground_size: usize) -> Self {
        SetSystem {
            ground_size,
            sets: Vec::new(),
            element_tags: vec![VertexTag::Plain; ground_size],
            set_tags: Vec::new(),
        }
    }

    /// Builds a system from 0-based element lists.
    pub fn from_sets(ground_size: usize, sets: &[&[usize]]) -> Result<Self> {
        let mut s = SetSystem::new(ground_size);
        for set in sets {
            s.add_set(set.to_vec(), VertexTag::Plain)?;
        }
        Ok(s)
    }

    pub fn add_element(&mut self, tag: VertexTag) -> usize {
        self.ground_size += 1;
        self.element_tags.push(tag);
        self.ground_size - 1
    }

    /// Adds a set; elements must be in range and distinct.
    pub fn add_set(&mut self, elements: Vec<usize>, tag: VertexTag) -> Result<usize> {
        for (i, &e) in elements.iter().enumerate() {
            if e >= self.ground_size {
                return Err(Error::InvalidSetSystem(format!(
                    "element {e} out of range (ground size {})",
                    self.ground_size
                )));
            }
            if elements[..i].contains(&e) {
                return Err(Error::InvalidSetSystem(format!("set repeats element {e}")));
            }
        }
        self.sets.push(elements);
        self.set_tags.push(tag);
        Ok(self.sets.len() - 1)
    }

    pub fn ground_size(&self) -> usize {
        self.ground_size
    }

    pub fn sets(&self) -> &[Vec<usize>] {
        &self.sets
    }

    pub fn num_sets(&self) -> usize {
        self.sets.len()
    }

    pub fn element_tag(&self, e: usize) -> &VertexTag {
        &self.element_tags[e]
    }

    pub fn set_tag(&self, s: usize) -> &VertexTag {
        &self.set_tags[s]
    }

    /// How many sets contain each element.
    pub fn element_degrees(&self) -> Vec<usize> {
        let mut deg = vec![0; self.ground_size];
        for s in &self.sets {
            for &e in s {
                deg[e] += 1;
            }
        }
        deg
    }

    /// Every set has three elements and the ground size is a multiple of 3.
    pub fn check_x3c(&self) -> Result<()> {
        if !self.ground_size.is_multiple_of(3) {
            return Err(Error::InvalidSetSystem(format!(
                "ground size {} is not a multiple of 3",
                self.ground_size
            )));
        }
        if let Some(i) = self.sets.iter().position(|s| s.len() != 3) {
            return Err(Error::InvalidSetSystem(format!(
                "set {i} has {} elements, expected 3",
                self.sets[i].len()
            )));
        }
        Ok(())
    }

    /// Whether `chosen` (set indices) covers every element exactly once.
    pub fn is_exact_cover(&self, chosen: &[usize]) -> bool {
        let mut seen = vec![false; self.ground_size];
        for &i in chosen {
            for &e in &self.sets[i] {
                if std::mem::replace(&mut seen[e], true) {
                    return false;
                }
            }
        }
        seen.into_iter().all(|b| b)
    }

    /// Whether `chosen` (elements) meets every set.
    pub fn is_hitting_set(&self, chosen: &[usize]) -> bool {
        let mut mark = vec![false; self.ground_size];
        for &e in chosen {
            mark[e] = true;
        }
        self.sets.iter().all(|s| s.iter().any(|&e| mark[e]))
    }

    /// Bipartite element/set graph: elements first, then sets.
    pub fn incidence_graph(&self) -> LabeledGraph {
        let mut g = LabeledGraph::new();
        for e in 0..self.ground_size {
            g.add_vertex(VertexTag::Element(e));
        }
        for (i, s) in self.sets.iter().enumerate() {
            let sv = g.add_vertex(VertexTag::Set(i));
            for &e in s {
                g.add_edge(e, sv).expect("sets have distinct elements");
            }
        }
        g
    }

    fn body(&self, out: &mut String) {
        for s in &self.sets {
            let items: Vec<String> = s.iter().map(|e| (e + 1).to_string()).collect();
            writeln!(out, "{}", items.join(" ")).unwrap();
        }
    }

    /// `x3c <n> <m>` then one line of 1-based elements per set.
    pub fn to_x3c_text(&self) -> String {
        let mut out = format!("x3c {} {}\n", self.ground_size, self.sets.len());
        self.body(&mut out);
        out
    }

    /// `hs <n> <m> <K>` then one line of 1-based elements per set.
    pub fn to_hitting_set_text(&self, k: usize) -> String {
        let mut out = format!("hs {} {} {k}\n", self.ground_size, self.sets.len());
        self.body(&mut out);
        out
    }
}

/// What a set-system file declared.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SetFileKind {
    X3c,
    HittingSet { k: usize },
}

/// Parses either text format. `#` lines and blank lines are skipped.
pub fn parse_set_system(text: &str) -> Result<(SetSystem, SetFileKind)> {
    let perr = |line, message: String| Error::Parse { line, message };
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));
    let (hl, header) = lines.next().ok_or_else(|| perr(1, "missing header".into()))?;
    let parts: Vec<&str> = header.split_whitespace().collect();
    let num = |s: &str| s.parse::<usize>().map_err(|_| perr(hl, format!("bad number `{s}`")));
    let (n, m, kind) = match parts.as_slice() {
        ["x3c", n, m] => (num(n)?, num(m)?, SetFileKind::X3c),
        ["hs", n, m, k] => (num(n)?, num(m)?, SetFileKind::HittingSet { k: num(k)? }),
        _ => return Err(perr(hl, "malformed header, expected `x3c <n> <m>` or `hs <n> <m> <K>`".into())),
    };
    let mut s = SetSystem::new(n);
    let mut last = hl;
    for (ln, line) in lines {
        last = ln;
        let mut elems = Vec::new();
        for t in line.split_whitespace() {
            let e: usize = t.parse().map_err(|_| perr(ln, format!("bad element `{t}`")))?;
            if e == 0 || e > n {
                return Err(perr(ln, format!("element {e} out of range 1..={n}")));
            }
            elems.push(e - 1);
        }
        s.add_set(elems, VertexTag::Plain).map_err(|e| perr(ln, e.to_string()))?;
    }
    if s.num_sets() != m {
        return Err(perr(last, format!("header declares {m} sets, found {}", s.num_sets())));
    }
    if kind == SetFileKind::X3c {
        s.check_x3c().map_err(|e| perr(hl, e.to_string()))?;
    }
    Ok((s, kind))
}
