//! Sparse hop spanners for geometric intersection graphs.
//!
//! Every construction returns a [`graph::Spanner`] whose edges are edges of
//! the host intersection graph, together with a claimed hop bound `t` that
//! [`graph::verify_hop_spanner`] checks by truncated breadth-first search.

pub mod bench;
pub mod error;
pub mod fat_convex;
pub mod geom;
pub mod graph;
pub mod instances;
pub mod interval;
pub mod io;
pub mod lower_bound;
pub mod par;
pub mod rect;
pub mod slab;
pub mod svg;
pub mod translate;
pub mod udg;

pub use error::{Error, Result};
