//! Deterministic straight-line drawing of an incidence graph and exact
//! enumeration of its edge crossings.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::formula::IncidenceGraph;

pub type Q = BigRational;

/// Spine spacing between consecutive variables and clause rows.
pub const SPACING: i64 = 4;
/// Number of perturbation schedules tried before giving up.
pub const MAX_ATTEMPTS: u32 = 16;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Point {
    pub x: Q,
    pub y: Q,
}

impl Point {
    pub fn new(x: Q, y: Q) -> Self {
        Point { x, y }
    }

    pub fn from_ints(x: i64, y: i64) -> Self {
        Point::new(q(x), q(y))
    }

    pub fn to_f64(&self) -> (f64, f64) {
        (self.x.to_f64().unwrap_or(f64::NAN), self.y.to_f64().unwrap_or(f64::NAN))
    }
}

fn q(x: i64) -> Q {
    Q::from_integer(BigInt::from(x))
}

fn ratio(n: i64, d: i64) -> Q {
    Q::new(BigInt::from(n), BigInt::from(d))
}

/// Twice the signed area of triangle `(a, b, c)`.
pub fn orient(a: &Point, b: &Point, c: &Point) -> Q {
    (&b.x - &a.x) * (&c.y - &a.y) - (&b.y - &a.y) * (&c.x - &a.x)
}

/// True iff `p` lies on the closed segment `ab`.
pub fn on_segment(a: &Point, b: &Point, p: &Point) -> bool {
    orient(a, b, p).is_zero()
        && p.x >= a.x.clone().min(b.x.clone())
        && p.x <= a.x.clone().max(b.x.clone())
        && p.y >= a.y.clone().min(b.y.clone())
        && p.y <= a.y.clone().max(b.y.clone())
}

/// A straight-line drawing. Segments run from the variable endpoint to the
/// clause endpoint and share ids with the incidence graph's edges.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Layout {
    pub positions: Vec<Point>,
    pub segments: Vec<(usize, usize)>,
    /// Perturbation schedule that produced this layout.
    pub attempt: u32,
}

impl Layout {
    pub fn positions_f64(&self) -> Vec<(f64, f64)> {
        self.positions.iter().map(Point::to_f64).collect()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Crossing {
    pub edge_a: usize,
    pub edge_b: usize,
    pub point: Point,
    /// 1-based rank among the crossings on `edge_a`, from its variable end.
    pub order_on_a: usize,
    pub order_on_b: usize,
}

/// Layout for one perturbation schedule `attempt`.
///
/// Variable `v` sits at `(v·D, 0)`. Clause `j` (0-based) sits at the mean x of
/// its variables and at height `±((j+1)·D + δ)`, above the spine for even `j`
/// and below for odd `j`, with `δ = ((j+1)/(m+1))^(attempt+1)`. From the
/// second attempt on, clause x coordinates also shift by
/// `(j+1)²/(m+1)^(attempt+2)` to separate vertically stacked clauses.
pub fn spine_layout_attempt(g: &IncidenceGraph, attempt: u32) -> Layout {
    let m = g.num_clauses as i64;
    let mut positions = Vec::with_capacity(g.num_vertices());
    for &v in &g.variables {
        positions.push(Point::from_ints(v as i64 * SPACING, 0));
    }
    let mut clause_vars: Vec<Vec<u32>> = vec![Vec::new(); g.num_clauses];
    for &(v, j) in &g.edges {
        clause_vars[j].push(v);
    }
    let denom = BigInt::from(m + 1);
    for (j, vars) in clause_vars.iter().enumerate() {
        let jj = j as i64 + 1;
        let mut x = if vars.is_empty() {
            q(0)
        } else {
            ratio(vars.iter().map(|&v| v as i64 * SPACING).sum(), vars.len() as i64)
        };
        if attempt > 0 {
            x += Q::new(BigInt::from(jj * jj), denom.pow(attempt + 2));
        }
        let delta = Q::new(BigInt::from(jj).pow(attempt + 1), denom.pow(attempt + 1));
        let mut y = q(jj * SPACING) + delta;
        if j % 2 == 1 {
            y = -y;
        }
        positions.push(Point::new(x, y));
    }
    let segments = g
        .edges
        .iter()
        .map(|&(v, j)| (g.var_vertex(v).unwrap(), g.clause_vertex(j)))
        .collect();
    Layout {
        positions,
        segments,
        attempt,
    }
}

/// First perturbation schedule whose drawing is in general position.
pub fn spine_layout(g: &IncidenceGraph) -> Result<Layout> {
    let mut last = None;
    for attempt in 0..MAX_ATTEMPTS {
        let l = spine_layout_attempt(g, attempt);
        match enumerate_crossings(&l) {
            Ok(_) => return Ok(l),
            Err(e) => last = Some(e),
        }
    }
    Err(last.unwrap_or_else(|| Error::GeneralPosition("no attempt made".into())))
}

#[derive(Clone, Copy)]
struct BBox {
    lo: (f64, f64),
    hi: (f64, f64),
}

impl BBox {
    fn of(a: (f64, f64), b: (f64, f64)) -> Self {
        // widen slightly so rounding never hides a true contact
        let eps = 1e-7 * (1.0 + a.0.abs().max(a.1.abs()).max(b.0.abs()).max(b.1.abs()));
        BBox {
            lo: (a.0.min(b.0) - eps, a.1.min(b.1) - eps),
            hi: (a.0.max(b.0) + eps, a.1.max(b.1) + eps),
        }
    }

    fn contains(&self, p: (f64, f64)) -> bool {
        p.0 >= self.lo.0 && p.0 <= self.hi.0 && p.1 >= self.lo.1 && p.1 <= self.hi.1
    }

    fn overlaps(&self, o: &BBox) -> bool {
        self.lo.0 <= o.hi.0 && o.lo.0 <= self.hi.0 && self.lo.1 <= o.hi.1 && o.lo.1 <= self.hi.1
    }
}

/// All interior crossings between non-adjacent segments, sorted by
/// `(edge_a, edge_b)`. Fails when the drawing is not in general position.
pub fn enumerate_crossings(l: &Layout) -> Result<Vec<Crossing>> {
    let pts = &l.positions;
    let fp: Vec<(f64, f64)> = l.positions_f64();

    let mut seen: HashMap<&Point, usize> = HashMap::new();
    for (i, p) in pts.iter().enumerate() {
        if let Some(j) = seen.insert(p, i) {
            return Err(Error::GeneralPosition(format!("vertices {j} and {i} coincide")));
        }
    }

    let boxes: Vec<BBox> = l.segments.iter().map(|&(u, v)| BBox::of(fp[u], fp[v])).collect();

    // no vertex in the interior of a segment it is not an endpoint of
    let touching: Option<(usize, usize)> = (0..l.segments.len()).into_par_iter().find_map_first(|s| {
        let (u, v) = l.segments[s];
        (0..pts.len())
            .find(|&w| w != u && w != v && boxes[s].contains(fp[w]) && on_segment(&pts[u], &pts[v], &pts[w]))
            .map(|w| (w, s))
    });
    if let Some((w, s)) = touching {
        return Err(Error::GeneralPosition(format!("vertex {w} lies on segment {s}")));
    }

    let per_a: Vec<Vec<(usize, Point, Q, Q)>> = (0..l.segments.len())
        .into_par_iter()
        .map(|a| {
            let (p1, p2) = l.segments[a];
            let mut found = Vec::new();
            for b in a + 1..l.segments.len() {
                let (q1, q2) = l.segments[b];
                if p1 == q1 || p1 == q2 || p2 == q1 || p2 == q2 || !boxes[a].overlaps(&boxes[b]) {
                    continue;
                }
                let (pp1, pp2, qq1, qq2) = (&pts[p1], &pts[p2], &pts[q1], &pts[q2]);
                let d1 = orient(qq1, qq2, pp1);
                let d2 = orient(qq1, qq2, pp2);
                if d1.is_zero() || d2.is_zero() || d1.is_positive() == d2.is_positive() {
                    continue;
                }
                let d3 = orient(pp1, pp2, qq1);
                let d4 = orient(pp1, pp2, qq2);
                if d3.is_zero() || d4.is_zero() || d3.is_positive() == d4.is_positive() {
                    continue;
                }
                let t = &d1 / (&d1 - &d2);
                let s = &d3 / (&d3 - &d4);
                let point = Point::new(
                    &pp1.x + (&pp2.x - &pp1.x) * &t,
                    &pp1.y + (&pp2.y - &pp1.y) * &t,
                );
                found.push((b, point, t, s));
            }
            found
        })
        .collect();

    let mut raw: Vec<(usize, usize, Point, Q, Q)> = Vec::new();
    for (a, list) in per_a.into_iter().enumerate() {
        for (b, point, t, s) in list {
            raw.push((a, b, point, t, s));
        }
    }

    let mut at: HashMap<&Point, usize> = HashMap::new();
    for (i, c) in raw.iter().enumerate() {
        if let Some(j) = at.insert(&c.2, i) {
            let (a1, b1) = (raw[j].0, raw[j].1);
            return Err(Error::GeneralPosition(format!(
                "segments {a1},{b1} and {},{} cross at one point",
                c.0, c.1
            )));
        }
    }

    // ranks along each edge, measured from the variable endpoint
    let mut on_edge: Vec<Vec<(Q, usize)>> = vec![Vec::new(); l.segments.len()];
    for (i, c) in raw.iter().enumerate() {
        on_edge[c.0].push((c.3.clone(), i));
        on_edge[c.1].push((c.4.clone(), i));
    }
    let mut rank_a = vec![0; raw.len()];
    let mut rank_b = vec![0; raw.len()];
    for (e, list) in on_edge.iter_mut().enumerate() {
        list.sort();
        for (r, (_, i)) in list.iter().enumerate() {
            if raw[*i].0 == e {
                rank_a[*i] = r + 1;
            } else {
                rank_b[*i] = r + 1;
            }
        }
    }
    let crossings = raw
        .into_iter()
        .enumerate()
        .map(|(i, (a, b, point, _, _))| Crossing {
            edge_a: a,
            edge_b: b,
            point,
            order_on_a: rank_a[i],
            order_on_b: rank_b[i],
        })
        .collect();
    Ok(crossings)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::formula::{incidence_graph, CnfFormula};

    fn two_segments(a: (i64, i64, i64, i64), b: (i64, i64, i64, i64)) -> Layout {
        Layout {
            positions: vec![
                Point::from_ints(a.0, a.1),
                Point::from_ints(a.2, a.3),
                Point::from_ints(b.0, b.1),
                Point::from_ints(b.2, b.3),
            ],
            segments: vec![(0, 1), (2, 3)],
            attempt: 0,
        }
    }

    #[test]
    fn single_crossing() {
        let c = enumerate_crossings(&two_segments((0, 0, 2, 2), (0, 2, 2, 0))).unwrap();
        assert_eq!(c.len(), 1);
        assert_eq!((c[0].order_on_a, c[0].order_on_b), (1, 1));
        assert_eq!(c[0].point, Point::from_ints(1, 1));
    }

    #[test]
    fn shared_endpoint_is_not_a_crossing() {
        let l = Layout {
            positions: vec![Point::from_ints(0, 0), Point::from_ints(2, 2), Point::from_ints(2, -2)],
            segments: vec![(0, 1), (0, 2)],
            attempt: 0,
        };
        assert!(enumerate_crossings(&l).unwrap().is_empty());
    }

    #[test]
    fn vertex_on_segment_is_rejected() {
        let l = two_segments((0, 0, 4, 0), (2, 0, 2, 3));
        assert!(matches!(enumerate_crossings(&l), Err(Error::GeneralPosition(_))));
    }

    #[test]
    fn three_concurrent_segments_rejected() {
        let l = Layout {
            positions: vec![
                Point::from_ints(-1, 0),
                Point::from_ints(1, 0),
                Point::from_ints(0, -1),
                Point::from_ints(0, 1),
                Point::from_ints(-1, -1),
                Point::from_ints(1, 1),
            ],
            segments: vec![(0, 1), (2, 3), (4, 5)],
            attempt: 0,
        };
        assert!(enumerate_crossings(&l).is_err());
    }

    #[test]
    fn single_clause_star_has_no_crossings() {
        let f = CnfFormula::from_dimacs_clauses(3, &[&[1, 2, 3]]).unwrap();
        let l = spine_layout(&incidence_graph(&f)).unwrap();
        assert!(enumerate_crossings(&l).unwrap().is_empty());
    }

    #[test]
    fn stacked_vertical_clauses_need_a_retry() {
        // (x2) sits straight above x2 at the first attempt, and so does the
        // third clause over (x1, x2, x3): same side, same x
        let f = CnfFormula::from_dimacs_clauses(3, &[&[2], &[1, 3], &[1, 2, 3]]).unwrap();
        let g = incidence_graph(&f);
        assert!(enumerate_crossings(&spine_layout_attempt(&g, 0)).is_err());
        let l = spine_layout(&g).unwrap();
        assert!(l.attempt > 0);
    }
}
