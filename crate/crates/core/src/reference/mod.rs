//! Product-state reference solvers: the alternating shifted power method and
//! a parametrized cluster-circuit ansatz.

mod power;
mod reduced;
mod variational;

pub use power::{power_method, power_method_from, PowerMethodConfig, PowerMethodResult, Shift};
pub use reduced::reduced_hamiltonian;
pub use variational::{optimize_reference, VariationalConfig, VariationalReference};
