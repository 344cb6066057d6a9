//! Named example graphs used across tests and benchmarks.

use crate::error::Result;
use crate::graph::{generate_graph, EmbeddedGraph};

/// The standard test corpus: small graphs covering loops, multi-edges,
/// collinear chains, and a simple complete graph.
pub fn standard() -> Result<Vec<(String, EmbeddedGraph)>> {
    let specs: [(&str, &[usize]); 9] = [
        ("cycle", &[3]),
        ("cycle", &[4]),
        ("k4", &[]),
        ("bouquet", &[1]),
        ("bouquet", &[2]),
        ("bouquet", &[3]),
        ("theta_chain", &[2]),
        ("theta_chain", &[3]),
        ("triple_edge_cycle", &[4]),
    ];
    specs
        .iter()
        .map(|(name, params)| {
            let label = if params.is_empty() {
                (*name).to_string()
            } else {
                let joined: Vec<String> = params.iter().map(|p| p.to_string()).collect();
                format!("{name}({})", joined.join(","))
            };
            Ok((label, generate_graph(name, params)?))
        })
        .collect()
}

/// Two non-isomorphic graphs with the same even-subgraph census, hence the
/// same squared census and weighted zeta. Distinguishable by their edge
/// multiplicity profiles.
pub fn euler_equivalent_pair() -> Result<((String, EmbeddedGraph), (String, EmbeddedGraph))> {
    Ok((
        ("theta_chain(3)".to_string(), generate_graph("theta_chain", &[3])?),
        ("triple_edge_cycle(4)".to_string(), generate_graph("triple_edge_cycle", &[4])?),
    ))
}

/// Multiset of edge multiplicities between unordered vertex pairs (and
/// loops at single vertices): a cheap isomorphism invariant.
pub fn multiplicity_profile(g: &EmbeddedGraph) -> Vec<usize> {
    use std::collections::BTreeMap;
    let mut buckets: BTreeMap<(usize, usize), usize> = BTreeMap::new();
    for j in 0..g.edge_count() {
        let (a, b) = (g.origin(j), g.end(j));
        let key = (a.min(b), a.max(b));
        *buckets.entry(key).or_insert(0) += 1;
    }
    let mut profile: Vec<usize> = buckets.into_values().collect();
    profile.sort_unstable();
    profile
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn corpus_builds() {
        let graphs = standard().unwrap();
        assert_eq!(graphs.len(), 9);
        for (name, g) in &graphs {
            assert!(g.edge_count() >= 1, "{name}");
        }
    }

    #[test]
    fn pair_differs_in_multiplicity_profile() {
        let ((_, a), (_, b)) = euler_equivalent_pair().unwrap();
        assert_eq!(a.vertex_count(), b.vertex_count());
        assert_eq!(a.edge_count(), b.edge_count());
        assert_ne!(multiplicity_profile(&a), multiplicity_profile(&b));
    }
}
