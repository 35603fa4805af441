//! Crystal graphs for rank-two and small higher-rank Cartan data.
//!
//! - [`cartan`]: index sets, generalized Cartan matrices, weights as pairings.
//! - [`graph`]: colored graphs, string statistics, goodness, weight assignment.
//! - [`pbw`]: the PBW-datum realization of `B(infinity)` and `B(lambda)` in type `B_2`.
//! - [`axioms`]: the local axioms and their violation reports.
//! - [`builder`]: layer-by-layer synthesis and isomorphism construction.
//! - [`oracle`]: Weyl dimensions and exhaustive re-verification suites.

pub mod axioms;
pub mod builder;
pub mod cartan;
pub mod graph;
pub mod oracle;
pub mod pbw;

pub use cartan::{CartanError, Color, Gcm, IndexSet, PairingVector, RankTwoType, RootCount};
pub use graph::{ColoredGraph, Direction, Edge, GraphError, Statistic, VertexId};
pub use pbw::{HighestWeightB2, MembershipRule, PbwElement};
