//! Census of even subgraphs (edge sets with all vertex degrees even),
//! tallied by edge count.
//!
//! Even subgraphs of a connected graph form a binary vector space spanned
//! by the fundamental cycles of any spanning tree, so the census walks all
//! `2^(m - n + 1)` combinations. A Gray code makes each step a single XOR.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::graph::EmbeddedGraph;
use crate::matrices::IntegerPolynomial;

/// Refuse to walk cycle spaces bigger than this many dimensions.
pub const DEFAULT_CYCLE_SPACE_CAP: usize = 24;

/// The even-subgraph census as a polynomial: coefficient `k` counts even
/// subgraphs with exactly `k` edges. Uses the default dimension cap.
pub fn euler_polynomial(g: &EmbeddedGraph) -> Result<IntegerPolynomial> {
    euler_polynomial_capped(g, DEFAULT_CYCLE_SPACE_CAP)
}

/// Census with an explicit cap on the cycle-space dimension.
pub fn euler_polynomial_capped(g: &EmbeddedGraph, cap: usize) -> Result<IntegerPolynomial> {
    let m = g.edge_count();
    if m > 128 {
        return Err(Error::TooLarge(format!("{m} edges exceed the 128-bit subset encoding")));
    }
    let dim = g.cycle_space_dim();
    if dim > cap {
        return Err(Error::TooLarge(format!("cycle space dimension {dim} exceeds cap {cap}")));
    }
    let basis = fundamental_cycle_masks(g);
    debug_assert_eq!(basis.len(), dim);

    let mut histogram = vec![BigInt::zero(); m + 1];
    let mut subset: u128 = 0;
    histogram[0] += 1;
    let mut gray_prev: u128 = 0;
    for step in 1u128..(1u128 << dim) {
        let gray = step ^ (step >> 1);
        let flipped = (gray ^ gray_prev).trailing_zeros() as usize;
        gray_prev = gray;
        subset ^= basis[flipped];
        histogram[subset.count_ones() as usize] += 1;
    }
    Ok(IntegerPolynomial::new(histogram))
}

/// Masks of the fundamental cycles of a BFS spanning tree: for each
/// non-tree edge, that edge plus the tree path between its endpoints.
fn fundamental_cycle_masks(g: &EmbeddedGraph) -> Vec<u128> {
    let n = g.vertex_count();
    let m = g.edge_count();
    let mut in_tree = vec![false; m];
    let mut path_to_root = vec![0u128; n];
    let mut seen = vec![false; n];
    let mut queue = std::collections::VecDeque::new();
    seen[0] = true;
    queue.push_back(0usize);
    while let Some(v) = queue.pop_front() {
        for &e in g.out_edges(v) {
            let j = g.edge_of(e);
            let w = g.end(e);
            if seen[w] || in_tree[j] {
                continue;
            }
            seen[w] = true;
            in_tree[j] = true;
            path_to_root[w] = path_to_root[v] ^ (1u128 << j);
            queue.push_back(w);
        }
    }
    (0..m)
        .filter(|&j| !in_tree[j])
        .map(|j| {
            let e = j;
            (1u128 << j) ^ path_to_root[g.origin(e)] ^ path_to_root[g.end(e)]
        })
        .collect()
}

/// Independent census by testing all `2^m` edge subsets directly.
/// Only sensible for small graphs; used to validate the spanned walk.
pub fn euler_polynomial_brute(g: &EmbeddedGraph) -> Result<IntegerPolynomial> {
    let m = g.edge_count();
    if m > 20 {
        return Err(Error::TooLarge(format!("{m} edges is too many for the subset census")));
    }
    let n = g.vertex_count();
    let mut histogram = vec![BigInt::zero(); m + 1];
    for subset in 0u64..(1u64 << m) {
        let mut degree_parity = vec![false; n];
        for j in 0..m {
            if subset >> j & 1 == 1 && !g.is_loop(j) {
                degree_parity[g.origin(j)] ^= true;
                degree_parity[g.end(j)] ^= true;
            }
        }
        if degree_parity.iter().all(|&odd| !odd) {
            histogram[subset.count_ones() as usize] += 1;
        }
    }
    Ok(IntegerPolynomial::new(histogram))
}

/// Total number of even subgraphs: `2^(m - n + 1)` for connected graphs.
pub fn even_subgraph_count(g: &EmbeddedGraph) -> BigInt {
    BigInt::one() << g.cycle_space_dim()
}
