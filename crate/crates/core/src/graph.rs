//! Drawn multigraphs and their oriented double.
//!
//! A graph is given by vertex positions and edges drawn as polylines
//! (`from` position, waypoints, `to` position). Each undirected edge `j`
//! of a graph with `m` edges yields two oriented edges: `j` (forward) and
//! `j + m` (its reversal), so `reverse(e) = (e + m) mod 2m`. All matrix
//! and walk machinery in the other modules works with this fixed labeling.

use std::collections::VecDeque;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::report::{Finding, ValidationReport};

/// A point of the drawing plane.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Point {
    pub x: f64,
    pub y: f64,
}

impl Point {
    pub fn new(x: f64, y: f64) -> Self {
        Point { x, y }
    }
}

/// A vertex with its drawing position.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct VertexSpec {
    pub id: usize,
    pub x: f64,
    pub y: f64,
}

/// An edge with its polyline drawing. Waypoints are interior bend points;
/// the drawn curve runs `from`-position, waypoints, `to`-position.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EdgeSpec {
    pub id: usize,
    pub from: usize,
    pub to: usize,
    #[serde(default)]
    pub waypoints: Vec<[f64; 2]>,
}

/// Serializable description of a drawn multigraph.
///
/// Invariants checked by [`build_graph`]: ids are distinct and contiguous
/// from 0, endpoints exist, the graph is connected, every vertex has degree
/// at least 2 (a loop adds 2), and every polyline is free of zero-length
/// segments and cusps.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GraphSpec {
    pub vertices: Vec<VertexSpec>,
    pub edges: Vec<EdgeSpec>,
}

impl GraphSpec {
    /// Parses the JSON interchange format. Unknown keys are rejected.
    pub fn from_json(text: &str) -> Result<Self> {
        Ok(serde_json::from_str(text)?)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("graph spec serializes")
    }
}

/// A validated drawn multigraph with its oriented double.
#[derive(Clone, Debug)]
pub struct EmbeddedGraph {
    spec: GraphSpec,
    /// Forward polyline per undirected edge, endpoints included.
    polylines: Vec<Vec<Point>>,
    /// Oriented edges leaving each vertex, ascending.
    out_edges: Vec<Vec<usize>>,
    degrees: Vec<usize>,
}

impl EmbeddedGraph {
    pub fn vertex_count(&self) -> usize {
        self.spec.vertices.len()
    }

    /// Number of undirected edges `m`.
    pub fn edge_count(&self) -> usize {
        self.spec.edges.len()
    }

    /// Number of oriented edges `2m`; the order of the walk matrices.
    pub fn oriented_count(&self) -> usize {
        2 * self.edge_count()
    }

    /// Undirected edge underlying an oriented edge.
    pub fn edge_of(&self, e: usize) -> usize {
        e % self.edge_count()
    }

    pub fn is_forward(&self, e: usize) -> bool {
        e < self.edge_count()
    }

    pub fn reverse(&self, e: usize) -> usize {
        (e + self.edge_count()) % self.oriented_count()
    }

    pub fn origin(&self, e: usize) -> usize {
        let spec = &self.spec.edges[self.edge_of(e)];
        if self.is_forward(e) {
            spec.from
        } else {
            spec.to
        }
    }

    pub fn end(&self, e: usize) -> usize {
        self.origin(self.reverse(e))
    }

    /// Oriented edges with origin `v`, ascending.
    pub fn out_edges(&self, v: usize) -> &[usize] {
        &self.out_edges[v]
    }

    /// Oriented edges that may follow `e` in a non-backtracking walk:
    /// everything leaving `end(e)` except the reversal of `e`.
    pub fn successors(&self, e: usize) -> impl Iterator<Item = usize> + '_ {
        let rev = self.reverse(e);
        self.out_edges[self.end(e)]
            .iter()
            .copied()
            .filter(move |&f| f != rev)
    }

    pub fn degree(&self, v: usize) -> usize {
        self.degrees[v]
    }

    pub fn is_loop(&self, edge: usize) -> bool {
        self.spec.edges[edge].from == self.spec.edges[edge].to
    }

    pub fn loop_count(&self) -> usize {
        (0..self.edge_count()).filter(|&j| self.is_loop(j)).count()
    }

    /// Dimension of the cycle space, `m - n + 1` for a connected graph.
    pub fn cycle_space_dim(&self) -> usize {
        self.edge_count() + 1 - self.vertex_count()
    }

    pub fn position(&self, v: usize) -> Point {
        Point::new(self.spec.vertices[v].x, self.spec.vertices[v].y)
    }

    /// Forward drawing of an undirected edge, endpoints included.
    pub fn polyline(&self, edge: usize) -> &[Point] {
        &self.polylines[edge]
    }

    /// Drawing of an oriented edge in traversal order.
    pub fn oriented_polyline(&self, e: usize) -> Vec<Point> {
        let mut pts = self.polylines[self.edge_of(e)].clone();
        if !self.is_forward(e) {
            pts.reverse();
        }
        pts
    }

    pub fn spec(&self) -> &GraphSpec {
        &self.spec
    }
}

const GEOM_EPS: f64 = 1e-12;

/// Validates a [`GraphSpec`] and wires up the oriented double.
pub fn build_graph(spec: &GraphSpec) -> Result<EmbeddedGraph> {
    let mut spec = spec.clone();
    normalize_ids(&mut spec)?;

    let n = spec.vertices.len();
    let m = spec.edges.len();

    for v in &spec.vertices {
        if !v.x.is_finite() || !v.y.is_finite() {
            return Err(Error::MalformedSpec(format!(
                "vertex {} has a non-finite coordinate",
                v.id
            )));
        }
    }
    for e in &spec.edges {
        if e.from >= n {
            return Err(Error::DanglingReference(format!(
                "edge {} starts at missing vertex {}",
                e.id, e.from
            )));
        }
        if e.to >= n {
            return Err(Error::DanglingReference(format!(
                "edge {} ends at missing vertex {}",
                e.id, e.to
            )));
        }
        for w in &e.waypoints {
            if !w[0].is_finite() || !w[1].is_finite() {
                return Err(Error::MalformedSpec(format!(
                    "edge {} has a non-finite waypoint",
                    e.id
                )));
            }
        }
    }

    // Connectivity over the undirected graph, before the degree check, so an
    // isolated vertex reports NotConnected.
    if n > 0 {
        let mut adjacency = vec![Vec::new(); n];
        for e in &spec.edges {
            adjacency[e.from].push(e.to);
            adjacency[e.to].push(e.from);
        }
        let mut seen = vec![false; n];
        let mut queue = VecDeque::from([0usize]);
        seen[0] = true;
        while let Some(v) = queue.pop_front() {
            for &w in &adjacency[v] {
                if !seen[w] {
                    seen[w] = true;
                    queue.push_back(w);
                }
            }
        }
        if seen.iter().any(|s| !s) {
            return Err(Error::NotConnected);
        }
    }

    let mut degrees = vec![0usize; n];
    for e in &spec.edges {
        degrees[e.from] += 1;
        degrees[e.to] += 1;
    }
    if let Some(v) = degrees.iter().position(|&d| d < 2) {
        return Err(Error::DegreeOneVertex {
            vertex: v,
            degree: degrees[v],
        });
    }

    let mut polylines = Vec::with_capacity(m);
    for e in &spec.edges {
        let mut pts = Vec::with_capacity(e.waypoints.len() + 2);
        pts.push(Point::new(spec.vertices[e.from].x, spec.vertices[e.from].y));
        pts.extend(e.waypoints.iter().map(|w| Point::new(w[0], w[1])));
        pts.push(Point::new(spec.vertices[e.to].x, spec.vertices[e.to].y));
        check_polyline(e.id, &pts)?;
        polylines.push(pts);
    }

    let mut out_edges = vec![Vec::new(); n];
    for (j, e) in spec.edges.iter().enumerate() {
        out_edges[e.from].push(j);
        out_edges[e.to].push(j + m);
    }
    for list in &mut out_edges {
        list.sort_unstable();
    }

    Ok(EmbeddedGraph {
        spec,
        polylines,
        out_edges,
        degrees,
    })
}

/// Sorts vertices and edges by id and insists the ids are 0..len.
fn normalize_ids(spec: &mut GraphSpec) -> Result<()> {
    spec.vertices.sort_by_key(|v| v.id);
    for (i, v) in spec.vertices.iter().enumerate() {
        if v.id != i {
            return Err(Error::MalformedSpec(format!(
                "vertex ids must be distinct and contiguous from 0; found {}",
                v.id
            )));
        }
    }
    spec.edges.sort_by_key(|e| e.id);
    for (i, e) in spec.edges.iter().enumerate() {
        if e.id != i {
            return Err(Error::MalformedSpec(format!(
                "edge ids must be distinct and contiguous from 0; found {}",
                e.id
            )));
        }
    }
    Ok(())
}

fn check_polyline(edge: usize, pts: &[Point]) -> Result<()> {
    let mut prev_dir: Option<(f64, f64)> = None;
    for (a, b) in pts.iter().zip(pts.iter().skip(1)) {
        let dx = b.x - a.x;
        let dy = b.y - a.y;
        let len = dx.hypot(dy);
        if len <= GEOM_EPS {
            return Err(Error::BadGeometry(format!(
                "edge {edge} has a zero-length segment"
            )));
        }
        let dir = (dx / len, dy / len);
        if let Some(p) = prev_dir {
            // Exactly opposite directions fold the curve back on itself.
            let dot = p.0 * dir.0 + p.1 * dir.1;
            let cross = p.0 * dir.1 - p.1 * dir.0;
            if dot < 0.0 && cross.abs() <= GEOM_EPS {
                return Err(Error::BadGeometry(format!(
                    "edge {edge} has a cusp at a waypoint"
                )));
            }
        }
        prev_dir = Some(dir);
    }
    Ok(())
}

/// Builtin graph families.
///
/// * `bouquet` with params `[R]`, `R >= 1`: one vertex carrying `R` loops
///   drawn as disjoint petals.
/// * `theta_chain` with params `[R]`, `R >= 1`: vertices `0..=R` on a line,
///   consecutive ones joined by a pair of parallel edges bowed up and down.
/// * `cycle` with params `[n]`, `n >= 3`: the regular `n`-gon.
/// * `k4` with no params: a triangle with a fourth vertex drawn inside and
///   joined to all corners.
/// * `triple_edge_cycle` with params `[n]`, `n >= 3`: the `n`-gon with two
///   extra parallel edges between vertices 0 and 1, bowed outward.
pub fn generate(name: &str, params: &[usize]) -> Result<GraphSpec> {
    match name {
        "bouquet" => {
            let r = one_param(name, params, "R")?;
            if r < 1 {
                return Err(bad_params(name, "R must be >= 1"));
            }
            Ok(bouquet(r))
        }
        "theta_chain" => {
            let r = one_param(name, params, "R")?;
            if r < 1 {
                return Err(bad_params(name, "R must be >= 1"));
            }
            Ok(theta_chain(r))
        }
        "cycle" => {
            let n = one_param(name, params, "n")?;
            if n < 3 {
                return Err(bad_params(name, "n must be >= 3"));
            }
            Ok(cycle(n))
        }
        "k4" => {
            if !params.is_empty() {
                return Err(bad_params(name, "takes no parameters"));
            }
            Ok(k4())
        }
        "triple_edge_cycle" => {
            let n = one_param(name, params, "n")?;
            if n < 3 {
                return Err(bad_params(name, "n must be >= 3"));
            }
            Ok(triple_edge_cycle(n))
        }
        other => Err(Error::UnknownFamily(other.to_string())),
    }
}

/// Generates a family member and builds it in one step.
pub fn generate_graph(name: &str, params: &[usize]) -> Result<EmbeddedGraph> {
    build_graph(&generate(name, params)?)
}

fn one_param(family: &str, params: &[usize], what: &str) -> Result<usize> {
    if params.len() != 1 {
        return Err(bad_params(family, &format!("expects exactly one parameter {what}")));
    }
    Ok(params[0])
}

fn bad_params(family: &str, reason: &str) -> Error {
    Error::BadParams {
        family: family.to_string(),
        reason: reason.to_string(),
    }
}

fn polar(r: f64, theta: f64) -> [f64; 2] {
    [r * theta.cos(), r * theta.sin()]
}

fn bouquet(r: usize) -> GraphSpec {
    let vertices = vec![VertexSpec { id: 0, x: 0.0, y: 0.0 }];
    // Petal k is a convex kite in the angular wedge around 2*pi*k/R, so
    // petals never meet away from the base vertex.
    let half_width = (std::f64::consts::PI / (2.0 * r as f64)).min(0.35);
    let edges = (0..r)
        .map(|k| {
            let phi = 2.0 * std::f64::consts::PI * k as f64 / r as f64;
            EdgeSpec {
                id: k,
                from: 0,
                to: 0,
                waypoints: vec![
                    polar(0.6, phi - half_width),
                    polar(1.1, phi),
                    polar(0.6, phi + half_width),
                ],
            }
        })
        .collect();
    GraphSpec { vertices, edges }
}

fn theta_chain(r: usize) -> GraphSpec {
    let vertices = (0..=r)
        .map(|i| VertexSpec {
            id: i,
            x: i as f64,
            y: 0.0,
        })
        .collect();
    let mut edges = Vec::with_capacity(2 * r);
    for i in 0..r {
        let mid = i as f64 + 0.5;
        edges.push(EdgeSpec {
            id: 2 * i,
            from: i,
            to: i + 1,
            waypoints: vec![[mid, 0.4]],
        });
        edges.push(EdgeSpec {
            id: 2 * i + 1,
            from: i,
            to: i + 1,
            waypoints: vec![[mid, -0.4]],
        });
    }
    GraphSpec { vertices, edges }
}

fn cycle(n: usize) -> GraphSpec {
    let vertices = (0..n)
        .map(|k| {
            let theta = 2.0 * std::f64::consts::PI * k as f64 / n as f64;
            VertexSpec {
                id: k,
                x: theta.cos(),
                y: theta.sin(),
            }
        })
        .collect();
    let edges = (0..n)
        .map(|k| EdgeSpec {
            id: k,
            from: k,
            to: (k + 1) % n,
            waypoints: Vec::new(),
        })
        .collect();
    GraphSpec { vertices, edges }
}

fn k4() -> GraphSpec {
    let outer = [
        polar(2.0, std::f64::consts::FRAC_PI_2),
        polar(2.0, std::f64::consts::FRAC_PI_2 + 2.0 * std::f64::consts::FRAC_PI_3),
        polar(2.0, std::f64::consts::FRAC_PI_2 + 4.0 * std::f64::consts::FRAC_PI_3),
    ];
    let mut vertices: Vec<VertexSpec> = outer
        .iter()
        .enumerate()
        .map(|(i, p)| VertexSpec {
            id: i,
            x: p[0],
            y: p[1],
        })
        .collect();
    vertices.push(VertexSpec { id: 3, x: 0.0, y: 0.0 });
    let pairs = [(0, 1), (1, 2), (2, 0), (0, 3), (1, 3), (2, 3)];
    let edges = pairs
        .iter()
        .enumerate()
        .map(|(id, &(from, to))| EdgeSpec {
            id,
            from,
            to,
            waypoints: Vec::new(),
        })
        .collect();
    GraphSpec { vertices, edges }
}

fn triple_edge_cycle(n: usize) -> GraphSpec {
    let mut spec = cycle(n);
    let a = Point::new(spec.vertices[0].x, spec.vertices[0].y);
    let b = Point::new(spec.vertices[1].x, spec.vertices[1].y);
    let mid = Point::new((a.x + b.x) / 2.0, (a.y + b.y) / 2.0);
    // Outward normal of the chord 0-1 for a polygon centered at the origin.
    let norm = mid.x.hypot(mid.y);
    let u = (mid.x / norm, mid.y / norm);
    for (offset, bow) in [(0.35, n), (0.7, n + 1)] {
        spec.edges.push(EdgeSpec {
            id: bow,
            from: 0,
            to: 1,
            waypoints: vec![[mid.x + offset * u.0, mid.y + offset * u.1]],
        });
    }
    spec
}

/// Checks a drawing for segment crossings, overlaps, near-cusps and loop
/// windings. Crossings are errors: the signed counting machinery assumes a
/// drawing without them. Touching segments are excluded only at a shared
/// endpoint.
pub fn validate_embedding(g: &EmbeddedGraph) -> ValidationReport {
    let mut findings = Vec::new();

    let mut segments = Vec::new();
    for j in 0..g.edge_count() {
        let pts = g.polyline(j);
        for i in 0..pts.len() - 1 {
            segments.push((j, i, pts[i], pts[i + 1]));
        }
    }

    for (a, &(ea, ia, p1, q1)) in segments.iter().enumerate() {
        for &(eb, ib, p2, q2) in segments.iter().skip(a + 1) {
            match segment_relation(p1, q1, p2, q2) {
                SegmentRelation::Disjoint => {}
                SegmentRelation::ProperCross => {
                    findings.push(Finding::error(
                        "crossing",
                        format!("edge {ea} segment {ia} crosses edge {eb} segment {ib}"),
                    ));
                }
                SegmentRelation::Overlap => {
                    findings.push(Finding::error(
                        "overlap",
                        format!("edge {ea} segment {ia} overlaps edge {eb} segment {ib}"),
                    ));
                }
                SegmentRelation::Touch(pt) => {
                    let shared = is_endpoint(pt, p1, q1) && is_endpoint(pt, p2, q2);
                    if !shared {
                        findings.push(Finding::error(
                            "crossing",
                            format!(
                                "edge {ea} segment {ia} touches the interior of edge {eb} segment {ib}"
                            ),
                        ));
                    }
                }
            }
        }
    }

    validate_turning(g, &mut findings);
    ValidationReport::new(findings)
}

/// Angle checks: warn near cusps, error on exact ones, and insist every loop
/// closes up with turning exactly +-2pi.
fn validate_turning(g: &EmbeddedGraph, findings: &mut Vec<Finding>) {
    use crate::geometry;

    const NEAR: f64 = 1e-9;
    let table = match geometry::TurningTable::new(g) {
        Ok(t) => t,
        Err(err) => {
            findings.push(Finding::error("geometry", err.to_string()));
            return;
        }
    };

    for e in 0..g.oriented_count() {
        for e2 in g.successors(e) {
            let turn = table.vertex_turn(e, e2);
            let gap = std::f64::consts::PI - turn.abs();
            if gap.abs() <= GEOM_EPS {
                findings.push(Finding::error(
                    "cusp",
                    format!("transition {e} -> {e2} reverses direction exactly at vertex {}", g.end(e)),
                ));
            } else if gap < NEAR {
                findings.push(Finding::warning(
                    "near-cusp",
                    format!(
                        "transition {e} -> {e2} turns within {gap:e} of a half-turn at vertex {}",
                        g.end(e)
                    ),
                ));
            }
        }
        // Loop drawn as a closed curve: turning must come to +-2pi.
        if g.end(e) == g.origin(e) && e < g.edge_count() {
            match table.walk_winding(g, &[e], geometry::DEFAULT_TOLERANCE) {
                Ok(w) if w.abs() == 1 => {}
                Ok(w) => findings.push(Finding::error(
                    "loop-winding",
                    format!("loop edge {e} closes with winding {w}, expected +-1"),
                )),
                Err(err) => findings.push(Finding::error("loop-winding", err.to_string())),
            }
        }
    }
}

enum SegmentRelation {
    Disjoint,
    ProperCross,
    Touch(Point),
    Overlap,
}

fn cross(o: Point, a: Point, b: Point) -> f64 {
    (a.x - o.x) * (b.y - o.y) - (a.y - o.y) * (b.x - o.x)
}

fn is_endpoint(p: Point, a: Point, b: Point) -> bool {
    let eps = 1e-9;
    (p.x - a.x).hypot(p.y - a.y) <= eps || (p.x - b.x).hypot(p.y - b.y) <= eps
}

fn within_box(p: Point, a: Point, b: Point) -> bool {
    let eps = 1e-9;
    p.x >= a.x.min(b.x) - eps
        && p.x <= a.x.max(b.x) + eps
        && p.y >= a.y.min(b.y) - eps
        && p.y <= a.y.max(b.y) + eps
}

fn segment_relation(p1: Point, q1: Point, p2: Point, q2: Point) -> SegmentRelation {
    let eps = 1e-9;
    let d1 = cross(p2, q2, p1);
    let d2 = cross(p2, q2, q1);
    let d3 = cross(p1, q1, p2);
    let d4 = cross(p1, q1, q2);

    if (d1 > eps && d2 < -eps || d1 < -eps && d2 > eps)
        && (d3 > eps && d4 < -eps || d3 < -eps && d4 > eps)
    {
        return SegmentRelation::ProperCross;
    }

    if d1.abs() <= eps && d2.abs() <= eps && d3.abs() <= eps && d4.abs() <= eps {
        // Collinear: measure the interval overlap along the carrier line.
        // Contact of length ~0 happens at an endpoint of both segments and
        // is the permitted shared-endpoint case.
        let dx = q1.x - p1.x;
        let dy = q1.y - p1.y;
        let t = |p: Point| (p.x - p1.x) * dx + (p.y - p1.y) * dy;
        let (hi1, lo1) = (t(q1).max(0.0), t(q1).min(0.0));
        let (ta, tb) = (t(p2), t(q2));
        let (lo2, hi2) = (ta.min(tb), ta.max(tb));
        let overlap = hi1.min(hi2) - lo1.max(lo2);
        if overlap > eps * (dx.hypot(dy)).max(1.0) {
            return SegmentRelation::Overlap;
        }
        return SegmentRelation::Disjoint;
    }

    // Non-collinear but some orientation vanishes: possible touch.
    let mut touch: Option<Point> = None;
    if d1.abs() <= eps && within_box(p1, p2, q2) {
        touch = Some(p1);
    } else if d2.abs() <= eps && within_box(q1, p2, q2) {
        touch = Some(q1);
    } else if d3.abs() <= eps && within_box(p2, p1, q1) {
        touch = Some(p2);
    } else if d4.abs() <= eps && within_box(q2, p1, q1) {
        touch = Some(q2);
    }
    match touch {
        Some(pt) => SegmentRelation::Touch(pt),
        None => SegmentRelation::Disjoint,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn build(name: &str, params: &[usize]) -> EmbeddedGraph {
        build_graph(&generate(name, params).unwrap()).unwrap()
    }

    #[test]
    fn triangle_has_six_oriented_edges() {
        let g = build("cycle", &[3]);
        assert_eq!(g.vertex_count(), 3);
        assert_eq!(g.edge_count(), 3);
        assert_eq!(g.oriented_count(), 6);
        assert_eq!(g.origin(0), 0);
        assert_eq!(g.end(0), 1);
        assert_eq!(g.origin(3), 1);
        assert_eq!(g.end(3), 0);
    }

    #[test]
    fn reverse_is_an_involution() {
        let g = build("k4", &[]);
        for e in 0..g.oriented_count() {
            assert_eq!(g.reverse(g.reverse(e)), e);
            assert_eq!(g.origin(g.reverse(e)), g.end(e));
        }
    }

    #[test]
    fn bouquet_two_loops() {
        let g = build("bouquet", &[2]);
        assert_eq!(g.vertex_count(), 1);
        assert_eq!(g.oriented_count(), 4);
        assert_eq!(g.loop_count(), 2);
        assert_eq!(g.degree(0), 4);
        for e in 0..4 {
            assert_eq!(g.origin(e), 0);
            assert_eq!(g.end(e), 0);
        }
    }

    #[test]
    fn out_degrees_sum_to_oriented_count() {
        for (name, params) in [("cycle", &[5][..]), ("k4", &[][..]), ("theta_chain", &[3][..])] {
            let g = build(name, params);
            let total: usize = (0..g.vertex_count()).map(|v| g.out_edges(v).len()).sum();
            assert_eq!(total, g.oriented_count());
        }
    }

    #[test]
    fn theta_chain_shape() {
        let g = build("theta_chain", &[3]);
        assert_eq!(g.vertex_count(), 4);
        assert_eq!(g.edge_count(), 6);
        assert_eq!(g.degree(0), 2);
        assert_eq!(g.degree(1), 4);
        assert_eq!(g.degree(2), 4);
        assert_eq!(g.degree(3), 2);
    }

    #[test]
    fn triple_edge_cycle_shape() {
        let g = build("triple_edge_cycle", &[4]);
        assert_eq!(g.vertex_count(), 4);
        assert_eq!(g.edge_count(), 6);
        assert_eq!(g.degree(0), 4);
        assert_eq!(g.degree(1), 4);
        assert_eq!(g.degree(2), 2);
        assert_eq!(g.degree(3), 2);
    }

    #[test]
    fn isolated_vertex_is_not_connected() {
        let spec = GraphSpec {
            vertices: vec![
                VertexSpec { id: 0, x: 0.0, y: 0.0 },
                VertexSpec { id: 1, x: 1.0, y: 0.0 },
                VertexSpec { id: 2, x: 2.0, y: 2.0 },
            ],
            edges: vec![
                EdgeSpec { id: 0, from: 0, to: 1, waypoints: vec![[0.5, 0.4]] },
                EdgeSpec { id: 1, from: 0, to: 1, waypoints: vec![[0.5, -0.4]] },
            ],
        };
        assert!(matches!(build_graph(&spec), Err(Error::NotConnected)));
    }

    #[test]
    fn degree_one_vertex_is_rejected() {
        let spec = GraphSpec {
            vertices: vec![
                VertexSpec { id: 0, x: 0.0, y: 0.0 },
                VertexSpec { id: 1, x: 1.0, y: 0.0 },
                VertexSpec { id: 2, x: 2.0, y: 0.0 },
            ],
            edges: vec![
                EdgeSpec { id: 0, from: 0, to: 1, waypoints: vec![[0.5, 0.4]] },
                EdgeSpec { id: 1, from: 0, to: 1, waypoints: vec![[0.5, -0.4]] },
                EdgeSpec { id: 2, from: 1, to: 2, waypoints: vec![] },
            ],
        };
        assert!(matches!(
            build_graph(&spec),
            Err(Error::DegreeOneVertex { vertex: 2, degree: 1 })
        ));
    }

    #[test]
    fn dangling_edge_reference_is_rejected() {
        let spec = GraphSpec {
            vertices: vec![VertexSpec { id: 0, x: 0.0, y: 0.0 }],
            edges: vec![EdgeSpec { id: 0, from: 0, to: 7, waypoints: vec![] }],
        };
        assert!(matches!(build_graph(&spec), Err(Error::DanglingReference(_))));
    }

    #[test]
    fn zero_length_segment_is_bad_geometry() {
        let spec = GraphSpec {
            vertices: vec![VertexSpec { id: 0, x: 0.0, y: 0.0 }],
            edges: vec![EdgeSpec { id: 0, from: 0, to: 0, waypoints: vec![] }],
        };
        assert!(matches!(build_graph(&spec), Err(Error::BadGeometry(_))));
    }

    #[test]
    fn waypoint_cusp_is_bad_geometry() {
        let spec = GraphSpec {
            vertices: vec![VertexSpec { id: 0, x: 0.0, y: 0.0 }],
            edges: vec![EdgeSpec { id: 0, from: 0, to: 0, waypoints: vec![[1.0, 0.0]] }],
        };
        assert!(matches!(build_graph(&spec), Err(Error::BadGeometry(_))));
    }

    #[test]
    fn unknown_family_and_bad_params() {
        assert!(matches!(generate("petersen", &[]), Err(Error::UnknownFamily(_))));
        assert!(matches!(generate("cycle", &[2]), Err(Error::BadParams { .. })));
        assert!(matches!(generate("bouquet", &[0]), Err(Error::BadParams { .. })));
        assert!(matches!(generate("k4", &[3]), Err(Error::BadParams { .. })));
        assert!(matches!(generate("theta_chain", &[]), Err(Error::BadParams { .. })));
    }

    #[test]
    fn all_builtin_families_build_and_validate() {
        for r in 1..=8 {
            for family in ["bouquet", "theta_chain"] {
                let g = build(family, &[r]);
                let report = validate_embedding(&g);
                assert!(report.ok, "{family}:{r}: {:?}", report.findings);
            }
        }
        for n in 3..=12 {
            for family in ["cycle", "triple_edge_cycle"] {
                let g = build(family, &[n]);
                let report = validate_embedding(&g);
                assert!(report.ok, "{family}:{n}: {:?}", report.findings);
            }
        }
        let g = build("k4", &[]);
        assert!(validate_embedding(&g).ok);
    }

    #[test]
    fn json_round_trip_and_unknown_keys() {
        let spec = generate("cycle", &[4]).unwrap();
        let text = spec.to_json();
        let back = GraphSpec::from_json(&text).unwrap();
        assert_eq!(back.vertices.len(), 4);
        assert_eq!(back.edges.len(), 4);

        let bad = r#"{"vertices": [], "edges": [], "comment": "hi"}"#;
        assert!(GraphSpec::from_json(bad).is_err());
    }

    #[test]
    fn crossing_drawing_is_flagged() {
        // A 4-cycle drawn with vertices ordered so two chords cross.
        let spec = GraphSpec {
            vertices: vec![
                VertexSpec { id: 0, x: 0.0, y: 0.0 },
                VertexSpec { id: 1, x: 1.0, y: 0.0 },
                VertexSpec { id: 2, x: 0.0, y: 1.0 },
                VertexSpec { id: 3, x: 1.0, y: 1.0 },
            ],
            edges: vec![
                EdgeSpec { id: 0, from: 0, to: 1, waypoints: vec![] },
                EdgeSpec { id: 1, from: 1, to: 2, waypoints: vec![] },
                EdgeSpec { id: 2, from: 2, to: 3, waypoints: vec![] },
                EdgeSpec { id: 3, from: 3, to: 0, waypoints: vec![] },
            ],
        };
        let g = build_graph(&spec).unwrap();
        let report = validate_embedding(&g);
        assert!(!report.ok);
        assert!(report.findings.iter().any(|f| f.code == "crossing"));
    }

    #[test]
    fn planar_drawings_validate_clean() {
        for (name, params) in [
            ("cycle", &[4][..]),
            ("k4", &[][..]),
            ("bouquet", &[3][..]),
            ("theta_chain", &[2][..]),
            ("triple_edge_cycle", &[4][..]),
        ] {
            let g = build(name, params);
            let report = validate_embedding(&g);
            assert!(report.ok, "{name}: {:?}", report.findings);
            assert!(report.findings.is_empty(), "{name}: {:?}", report.findings);
        }
    }
}
