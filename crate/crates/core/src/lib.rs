//! Plane-graph cycle analysis: winding-weighted walk matrices, even-subgraph
//! censuses, sign-refined cycle counting, and the product identities and
//! free Lie superalgebra dimensions that tie them together.
//!
//! The pipeline starts from a drawn multigraph ([`graph::GraphSpec`]),
//! measures turning angles along its edges ([`geometry`]), builds the two
//! transition matrices on oriented edges ([`matrices`]), refines their power
//! traces into aperiodic cycle counts ([`counting`]), and checks the
//! resulting determinant and product identities ([`zeta`], [`lie`]). Every
//! derived quantity has an independent route ([`oracle`], [`euler`]) it is
//! compared against.

pub mod corpus;
pub mod counting;
pub mod error;
pub mod euler;
pub mod geometry;
pub mod graph;
pub mod lie;
pub mod matrices;
pub mod oracle;
pub mod report;
pub mod series;
pub mod zeta;

pub use counting::{CountRow, CountTable};
pub use error::{Error, Result};
pub use graph::{
    build_graph, generate, generate_graph, EdgeSpec, EmbeddedGraph, GraphSpec, Point, VertexSpec,
};
pub use lie::{SuperdimensionRow, SuperdimensionTable};
pub use matrices::{
    EdgeAdjacencyMatrix, IntegerPolynomial, TraceTable, TransitionMatrix,
};
pub use report::{Finding, IdentityCheck, IdentityReport, Severity, ValidationReport};
pub use series::{RationalSeries, Sign};
pub use zeta::{analyze, verify_all, GraphAnalysis, VerifyOptions, ZetaKind};
