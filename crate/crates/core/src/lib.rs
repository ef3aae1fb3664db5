//! Exact quantum cluster algebra machinery for quantum unipotent rings,
//! with Dynkin diagram folding for non-simply-laced types and an
//! independent shuffle-algebra oracle.

// Matrix code reads better with explicit indices.
#![allow(clippy::needless_range_loop)]

pub mod convexorder;
pub mod error;
pub mod folding;
pub mod initquiver;
pub mod laurent;
pub mod qcluster;
pub mod rootdata;
pub mod uqn;
pub mod verify;

pub use convexorder::{ConvexOrder, Counterexample};
pub use error::{Error, Result};
pub use folding::{FoldedCartan, QuiverWithAut, Violation};
pub use initquiver::{exchange_matrix, fold_exchange_matrix, initial_cluster_variables, ExchangeData, IceQuiver};
pub use laurent::{q_binomial, q_factorial, q_int, Coeff, Laurent};
pub use qcluster::{CompatiblePair, QuantumSeed, QuantumTorus, TorusElement};
pub use rootdata::{CartanDatum, Label, Root, Weight, WeylWord};
pub use uqn::{extremal_vector, minor_to_shuffle, FWord, Minor, MinorSpec, Shapovalov, ShuffleElement, Tensor};
pub use verify::{Catalog, CatalogEntry, CheckSpec, DatumSpec, Instance, InstanceSpec, Report, Status};
