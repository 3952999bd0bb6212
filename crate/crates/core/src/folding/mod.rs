//! Similarity transformations `H → U†HU` ("folding") on Pauli sums.
//!
//! Every gate class folds exactly: Clifford gates permute strings with signs,
//! rotations split anticommuting strings in two, excitation-like and general
//! gates are expanded symbolically or through a local spectral decomposition.

mod clifford;
mod excitation;
mod general;
mod rotation;

pub use clifford::conjugate_clifford;
pub use excitation::{fold_excitation_gate, qubit_excitation_generator};
pub use general::fold_general_gate;
pub use rotation::{fold_pauli_rotation, fold_projector_gate};

use std::fmt::Write as _;

use num_complex::Complex64;
use rayon::prelude::*;
use serde::Serialize;

use crate::circuits::{Circuit, Gate, GateKind};
use crate::error::{ensure_same, Result};
use crate::pauli::{PauliString, PauliSum};

/// Sums at least this large are mapped in parallel.
const PARALLEL_TERMS: usize = 512;

/// Map every term of `h` to a list of contributions and recombine.
///
/// Contributions are merged in canonical source order, so the result is
/// bit-identical for any thread count.
pub(crate) fn map_terms<F>(h: &PauliSum, f: F) -> PauliSum
where
    F: Fn(&PauliString, Complex64) -> Vec<(PauliString, Complex64)> + Sync,
{
    let terms: Vec<(PauliString, Complex64)> = h.iter().map(|(p, c)| (*p, *c)).collect();
    let mapped: Vec<Vec<(PauliString, Complex64)>> = if terms.len() >= PARALLEL_TERMS {
        terms.par_iter().map(|(p, c)| f(p, *c)).collect()
    } else {
        terms.iter().map(|(p, c)| f(p, *c)).collect()
    };
    let mut out = PauliSum::new(h.n_qubits()).expect("width already validated");
    for (p, c) in mapped.into_iter().flatten() {
        out.accumulate(p, c);
    }
    out.prune();
    out
}

/// Fold a single gate at its own angle.
pub fn fold_gate(h: &PauliSum, g: &Gate) -> Result<PauliSum> {
    match g {
        Gate::PauliRotation { generator, angle, .. } => {
            g.validate(h.n_qubits())?;
            Ok(rotation::fold_rotation_string(h, generator, *angle))
        }
        Gate::General { angle, .. } => fold_general_gate(h, g, *angle),
        _ => conjugate_clifford(h, g),
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FoldStep {
    pub gate_index: usize,
    pub kind: GateKind,
    pub cardinality: usize,
}

/// Term counts recorded while folding a circuit, in folding order.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FoldReport {
    pub cardinality_before: usize,
    pub cardinality_after: usize,
    pub steps: Vec<FoldStep>,
}

impl FoldReport {
    pub fn per_gate_cardinality(&self) -> Vec<usize> {
        self.steps.iter().map(|s| s.cardinality).collect()
    }

    /// `gate_index,kind,cardinality`
    pub fn to_csv(&self) -> String {
        let mut out = String::from("gate_index,kind,cardinality\n");
        for s in &self.steps {
            let _ = writeln!(out, "{},{},{}", s.gate_index, s.kind, s.cardinality);
        }
        out
    }
}

/// `M†·h·M` for `M = V_N ⋯ V_1` (gate 1 acts on the state first).
///
/// The innermost conjugation is by the last gate, so gates are folded from
/// the end of the circuit towards the start.
pub fn fold_circuit(h: &PauliSum, m: &Circuit) -> Result<(PauliSum, FoldReport)> {
    ensure_same(h.n_qubits(), m.n_qubits)?;
    let before = h.cardinality();
    let mut cur = h.clone();
    let mut steps = Vec::with_capacity(m.len());
    for (idx, g) in m.gates.iter().enumerate().rev() {
        cur = fold_gate(&cur, g)?;
        steps.push(FoldStep {
            gate_index: idx,
            kind: g.kind(),
            cardinality: cur.cardinality(),
        });
    }
    let report = FoldReport {
        cardinality_before: before,
        cardinality_after: cur.cardinality(),
        steps,
    };
    Ok((cur, report))
}

/// Folded Hamiltonian only.
pub fn fold(h: &PauliSum, m: &Circuit) -> Result<PauliSum> {
    Ok(fold_circuit(h, m)?.0)
}
