//! Brute-force walk enumeration, kept deliberately independent of the
//! matrix route so the two can be compared in tests.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_traits::Zero;

use crate::error::Result;
use crate::geometry::{cycle_sign, TurningTable};
use crate::graph::EmbeddedGraph;

/// All closed non-backtracking walks of length `n`, as oriented-edge words
/// with a marked starting position. The count equals `Tr T^n`.
pub fn closed_walks(g: &EmbeddedGraph, n: usize) -> Vec<Vec<usize>> {
    assert!(n >= 1, "walks need positive length");
    let dim = g.oriented_count();
    let succ: Vec<Vec<usize>> = (0..dim).map(|e| g.successors(e).collect()).collect();
    let mut walks = Vec::new();
    let mut word = Vec::with_capacity(n);
    for start in 0..dim {
        word.push(start);
        extend(&succ, start, n, &mut word, &mut walks);
        word.pop();
    }
    walks
}

fn extend(
    succ: &[Vec<usize>],
    start: usize,
    n: usize,
    word: &mut Vec<usize>,
    walks: &mut Vec<Vec<usize>>,
) {
    let last = *word.last().expect("nonempty prefix");
    if word.len() == n {
        if succ[last].contains(&start) {
            walks.push(word.clone());
        }
        return;
    }
    for i in 0..succ[last].len() {
        let e = succ[last][i];
        word.push(e);
        extend(succ, start, n, word, walks);
        word.pop();
    }
}

/// Splits the closed walks of length `n` by winding sign, returning
/// `(plus, minus)`. Each winding is measured geometrically and must come
/// out integral.
pub fn signed_walk_counts(
    g: &EmbeddedGraph,
    n: usize,
    tolerance: f64,
) -> Result<(BigInt, BigInt)> {
    let table = TurningTable::new(g)?;
    let mut plus = BigInt::zero();
    let mut minus = BigInt::zero();
    for walk in closed_walks(g, n) {
        let winding = table.walk_winding(g, &walk, tolerance)?;
        if cycle_sign(winding) > 0 {
            plus += 1;
        } else {
            minus += 1;
        }
    }
    Ok((plus, minus))
}

/// An aperiodic cycle: a closed walk up to rotation, with its winding.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CycleClass {
    /// Lexicographically minimal rotation of the edge word.
    pub edges: Vec<usize>,
    pub winding: i64,
    /// `+1` when the winding is odd, `-1` when even.
    pub sign: i64,
}

/// Aperiodic cycles of length `n`: closed walks modulo rotation, with
/// walks that are repetitions of a shorter word dropped. Sorted by their
/// canonical edge words.
pub fn cycle_classes(g: &EmbeddedGraph, n: usize, tolerance: f64) -> Result<Vec<CycleClass>> {
    let table = TurningTable::new(g)?;
    let mut canonicals = BTreeSet::new();
    for walk in closed_walks(g, n) {
        if is_periodic(&walk) {
            continue;
        }
        canonicals.insert(minimal_rotation(&walk));
    }
    canonicals
        .into_iter()
        .map(|edges| {
            let winding = table.walk_winding(g, &edges, tolerance)?;
            Ok(CycleClass { winding, sign: cycle_sign(winding), edges })
        })
        .collect()
}

fn is_periodic(word: &[usize]) -> bool {
    let n = word.len();
    (1..n).filter(|d| n % d == 0).any(|d| (0..n).all(|i| word[i] == word[(i + d) % n]))
}

fn minimal_rotation(word: &[usize]) -> Vec<usize> {
    let n = word.len();
    let mut best = 0;
    for start in 1..n {
        for i in 0..n {
            let a = word[(start + i) % n];
            let b = word[(best + i) % n];
            if a != b {
                if a < b {
                    best = start;
                }
                break;
            }
        }
    }
    (0..n).map(|i| word[(best + i) % n]).collect()
}
