//! Computational toolkit for exact factorizations of finite groups, the
//! skew-morphisms they induce, and the rotary Cayley maps built from them.
//!
//! Everything is exact: group orders are big integers computed from
//! stabilizer chains, factorizations come with constructive decomposition
//! tables, and every derived object re-verifies its defining equations.

pub mod descriptor;
pub mod error;
pub mod factor;
pub mod field;
pub mod group;
pub mod maps;
pub mod numth;
pub mod perm;
pub mod skew;
pub mod verify;
pub mod zoo;

pub use descriptor::GroupDescriptor;
pub use error::{Error, Result};
pub use factor::{certify_factorization, Factorization};
pub use field::FiniteField;
pub use group::{coset_action, intersection_order, CosetAction, PermGroup};
pub use perm::Permutation;
