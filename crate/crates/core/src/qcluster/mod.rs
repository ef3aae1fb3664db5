//! Quantum cluster calculus: compatible pairs, the based quantum torus,
//! normalized monomials, seed mutation and exchange graphs.

mod graph;
mod pair;
mod seed;
mod torus;

pub use graph::{enumerate_exchange_graph, ExchangeGraph};
pub use pair::{check_compatible, CompatiblePair};
pub use seed::{initial_lambda, QuantumSeed};
pub use torus::{specialize_classical, ClassicalLaurent, QuantumTorus, TorusElement};
