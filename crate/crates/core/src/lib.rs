//! Exhaustive inventory of low-dimensional pseudo-Boolean rank landscapes.
//!
//! A fitness function over `{0,1}^n` is reduced to its rank vector, rank
//! vectors are grouped into classes under the `2^n * n!` automorphisms of the
//! hypercube, and every class is characterised by its topology
//! ([`props`]) and by the exact behaviour of best- and first-improvement hill
//! climbers ([`climb`]). The [`atlas`] module ties these together into a
//! persistent, searchable catalog.

pub mod atlas;
pub mod canon;
pub mod climb;
pub mod error;
pub mod hypercube;
pub mod props;
pub mod rankspace;
pub mod rational;
pub mod sim;

pub use error::{Error, Result};
pub use hypercube::{Automorphism, Cap, Dimension, Node};
pub use rankspace::{Partition, RankVector};
