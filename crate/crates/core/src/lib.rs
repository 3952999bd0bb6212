//! Cluster product states re-entangled by virtual (near-)Clifford circuits.
//!
//! A qubit Hamiltonian is solved on a product of per-cluster states; the
//! correlation lost by the factorization is recovered by folding a circuit
//! `M` into the Hamiltonian, `H → M†HM`, and minimizing over the product
//! state again. Clifford circuits keep the number of Pauli terms fixed.

pub mod circuits;
pub mod error;
pub mod folding;
pub mod linalg;
pub mod optimizer;
pub mod pauli;
pub mod pipeline;
pub mod reference;
pub mod simulator;

pub use error::{Error, Result};
