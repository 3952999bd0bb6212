//! Phase-tracked Pauli strings and their linear combinations.
//!
//! Strings use the symplectic `(x, z)` representation with the convention
//! `Y = i·X·Z`; products carry their phase exactly as a power of `i`.

mod io;
mod string;
mod sum;

pub use io::{parse_hamiltonian, read_hamiltonian, write_hamiltonian};
pub use string::{commutes, multiply, Pauli, PauliString, PauliTerm};
pub use sum::PauliSum;

use num_complex::Complex64;

/// Largest register supported by the bit-mask representation.
pub const MAX_QUBITS: usize = 64;

/// Coefficients with magnitude below this are dropped.
pub const PRUNE_TOL: f64 = 1e-12;

/// `i^k`.
#[inline]
pub fn phase_factor(k: u8) -> Complex64 {
    match k % 4 {
        0 => Complex64::new(1.0, 0.0),
        1 => Complex64::new(0.0, 1.0),
        2 => Complex64::new(-1.0, 0.0),
        _ => Complex64::new(0.0, -1.0),
    }
}
