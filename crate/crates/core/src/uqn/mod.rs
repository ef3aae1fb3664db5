//! Small-rank quantum group oracle.
//!
//! Elements of the quantum unipotent coordinate ring are realized inside
//! the quantum shuffle algebra: a [`ShuffleElement`] assigns to each word
//! `[i_1, ..., i_n]` the value of the functional on the monomial
//! `theta_{i_1} ... theta_{i_n}`. Generalized minors are computed from the
//! q-Shapovalov form on a highest weight module.

mod minor;
mod shapovalov;
mod shuffle;

pub use minor::{extremal_vector, minor_to_shuffle, Minor, MinorSpec};
pub use shapovalov::{FWord, Shapovalov};
pub use shuffle::{ShuffleElement, Tensor};
