//! Turning angles along drawn edges and winding numbers of closed walks.
//!
//! Every angle here is a signed turn in radians, positive anticlockwise.
//! The transition angle from oriented edge `e` into `e2` accumulates the
//! tangent turning from the arclength midpoint of `e` to the midpoint of
//! `e2`; it is never reduced modulo 2pi. Around a closed non-backtracking
//! walk the transition angles sum to an exact multiple of 2pi, which is the
//! walk's winding number.

use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::graph::{EmbeddedGraph, Point};

/// Default certification tolerance for winding residuals and trace rounding.
pub const DEFAULT_TOLERANCE: f64 = 1e-6;

const CUSP_EPS: f64 = 1e-12;

/// Turning data of one oriented edge: unit tangents at its two ends and the
/// interior turning split at the arclength midpoint.
///
/// `first_half_turn + second_half_turn` is the total turning of the drawn
/// curve, and the split obeys `first_half_turn(reverse(e)) =
/// -second_half_turn(e)` exactly (a turn sitting precisely on the midpoint
/// is shared half and half).
#[derive(Clone, Copy, Debug)]
pub struct EdgeTurning {
    pub start_dir: (f64, f64),
    pub end_dir: (f64, f64),
    pub first_half_turn: f64,
    pub second_half_turn: f64,
}

impl EdgeTurning {
    pub fn interior_turn(&self) -> f64 {
        self.first_half_turn + self.second_half_turn
    }

    fn reversed(&self) -> EdgeTurning {
        EdgeTurning {
            start_dir: (-self.end_dir.0, -self.end_dir.1),
            end_dir: (-self.start_dir.0, -self.start_dir.1),
            first_half_turn: -self.second_half_turn,
            second_half_turn: -self.first_half_turn,
        }
    }
}

/// Signed angle that rotates unit vector `a` onto `b`, in (-pi, pi].
fn signed_angle(a: (f64, f64), b: (f64, f64)) -> f64 {
    let cross = a.0 * b.1 - a.1 * b.0;
    let dot = a.0 * b.0 + a.1 * b.1;
    cross.atan2(dot)
}

fn forward_turning(pts: &[Point]) -> Result<EdgeTurning> {
    let nseg = pts.len() - 1;
    let mut dirs = Vec::with_capacity(nseg);
    let mut lens = Vec::with_capacity(nseg);
    for i in 0..nseg {
        let dx = pts[i + 1].x - pts[i].x;
        let dy = pts[i + 1].y - pts[i].y;
        let len = dx.hypot(dy);
        if len <= CUSP_EPS {
            return Err(Error::BadGeometry("zero-length segment".to_string()));
        }
        dirs.push((dx / len, dy / len));
        lens.push(len);
    }
    let mut turns = Vec::with_capacity(nseg.saturating_sub(1));
    for j in 1..nseg {
        let t = signed_angle(dirs[j - 1], dirs[j]);
        if PI - t.abs() <= CUSP_EPS {
            return Err(Error::BadGeometry("cusp at waypoint".to_string()));
        }
        turns.push(t);
    }

    let total: f64 = lens.iter().sum();
    let half = total / 2.0;
    let mut first = 0.0;
    let mut second: f64 = turns.iter().sum();
    let mut acc = 0.0;
    for i in 0..nseg {
        let next = acc + lens[i];
        if next > half || i + 1 == nseg {
            // Midpoint inside segment i: turns entering segments 1..=i stay
            // in the first half.
            break;
        }
        let t = turns[i];
        if next == half {
            // Midpoint exactly on the junction: split its turn evenly so the
            // reversed edge sees the mirror image.
            first += t / 2.0;
            second -= t / 2.0;
            break;
        }
        first += t;
        second -= t;
        acc = next;
    }

    Ok(EdgeTurning {
        start_dir: dirs[0],
        end_dir: dirs[nseg - 1],
        first_half_turn: first,
        second_half_turn: second,
    })
}

/// Turning data of one oriented edge of the graph.
pub fn edge_turning(g: &EmbeddedGraph, e: usize) -> Result<EdgeTurning> {
    let fwd = forward_turning(g.polyline(g.edge_of(e)))?;
    if g.is_forward(e) {
        Ok(fwd)
    } else {
        Ok(fwd.reversed())
    }
}

/// Precomputed turning data for all oriented edges.
pub struct TurningTable {
    turnings: Vec<EdgeTurning>,
}

impl TurningTable {
    pub fn new(g: &EmbeddedGraph) -> Result<Self> {
        let m = g.edge_count();
        let mut turnings = Vec::with_capacity(2 * m);
        for j in 0..m {
            turnings.push(forward_turning(g.polyline(j))?);
        }
        for j in 0..m {
            turnings.push(turnings[j].reversed());
        }
        Ok(TurningTable { turnings })
    }

    pub fn get(&self, e: usize) -> &EdgeTurning {
        &self.turnings[e]
    }

    /// Raw signed turn at the vertex between `end_dir(e)` and
    /// `start_dir(e2)`, without adjacency checks. In (-pi, pi].
    pub fn vertex_turn(&self, e: usize, e2: usize) -> f64 {
        signed_angle(self.turnings[e].end_dir, self.turnings[e2].start_dir)
    }

    /// Midpoint-to-midpoint transition angle; see [`transition_angle`].
    pub fn transition_angle(&self, g: &EmbeddedGraph, e: usize, e2: usize) -> Result<f64> {
        if g.end(e) != g.origin(e2) {
            return Err(Error::NotAdjacent { from: e, to: e2 });
        }
        if e2 == g.reverse(e) {
            return Err(Error::Backtrack(e));
        }
        let turn = self.vertex_turn(e, e2);
        if PI - turn.abs() <= CUSP_EPS {
            return Err(Error::BadGeometry(format!(
                "cusp between oriented edges {e} and {e2} at vertex {}",
                g.end(e)
            )));
        }
        Ok(self.turnings[e].second_half_turn + turn + self.turnings[e2].first_half_turn)
    }

    /// Winding number of a closed non-backtracking walk; see [`walk_winding`].
    pub fn walk_winding(&self, g: &EmbeddedGraph, word: &[usize], tolerance: f64) -> Result<i64> {
        assert!(!word.is_empty(), "winding of an empty walk");
        let mut total = 0.0;
        for (k, &e) in word.iter().enumerate() {
            let e2 = word[(k + 1) % word.len()];
            total += self.transition_angle(g, e, e2)?;
        }
        let ratio = total / (2.0 * PI);
        let winding = ratio.round();
        let residual = (ratio - winding).abs();
        if residual >= tolerance {
            return Err(Error::WindingNotIntegral {
                residual,
                tolerance,
            });
        }
        Ok(winding as i64)
    }
}

/// Net tangent turning accumulated from the midpoint of `e` to the midpoint
/// of the following oriented edge `e2`: second half of `e`, the turn at the
/// shared vertex, then the first half of `e2`. Errors if `e2` does not
/// continue `e`, backtracks, or meets it in a cusp.
pub fn transition_angle(g: &EmbeddedGraph, e: usize, e2: usize) -> Result<f64> {
    TurningTable::new(g)?.transition_angle(g, e, e2)
}

/// Winding number `n` of the closed non-backtracking walk `word`: the
/// transition angles summed around the walk divided by 2pi. The pre-rounding
/// residual must stay below `tolerance` or the walk is rejected.
pub fn walk_winding(g: &EmbeddedGraph, word: &[usize], tolerance: f64) -> Result<i64> {
    TurningTable::new(g)?.walk_winding(g, word, tolerance)
}

/// Sign of a cycle with winding number `n`: `(-1)^(1+n)`.
pub fn cycle_sign(winding: i64) -> i64 {
    if winding.rem_euclid(2) == 0 {
        -1
    } else {
        1
    }
}
