use std::fmt::Write as _;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::circuits::Circuit;
use crate::error::{ensure_same, Error, Result};
use crate::linalg::{eigh, CMatrix};
use crate::pauli::PauliSum;

use super::{dense, ClusterState};

/// Largest register handled by dense diagonalization.
pub const DENSE_QUBIT_CAP: usize = 14;
/// Eigenvalues closer than this to a group's first member share the group.
pub const DEGENERACY_TOL: f64 = 1e-8;

/// Full spectrum with eigenvectors as columns and degeneracy groups.
#[derive(Debug, Clone)]
pub struct SpectrumSlice {
    pub eigenvalues: Vec<f64>,
    pub eigenvectors: CMatrix,
    pub degeneracy_groups: Vec<Vec<usize>>,
}

impl SpectrumSlice {
    pub fn ground_energy(&self) -> f64 {
        self.eigenvalues[0]
    }
}

pub(crate) fn check_cap(n_qubits: usize) -> Result<()> {
    if n_qubits > DENSE_QUBIT_CAP {
        return Err(Error::FeasibilityCap {
            n_qubits,
            cap: DENSE_QUBIT_CAP,
        });
    }
    Ok(())
}

pub fn group_degenerate(values: &[f64], tol: f64) -> Vec<Vec<usize>> {
    let mut groups: Vec<Vec<usize>> = Vec::new();
    for (i, &v) in values.iter().enumerate() {
        match groups.last_mut() {
            Some(g) if (v - values[g[0]]).abs() < tol => g.push(i),
            _ => groups.push(vec![i]),
        }
    }
    groups
}

pub fn exact_ground(h: &PauliSum) -> Result<SpectrumSlice> {
    check_cap(h.n_qubits())?;
    let eig = eigh(&h.to_matrix())?;
    let degeneracy_groups = group_degenerate(&eig.values, DEGENERACY_TOL);
    Ok(SpectrumSlice {
        eigenvalues: eig.values,
        eigenvectors: eig.vectors,
        degeneracy_groups,
    })
}

/// Apply a circuit to a full register state (gate 0 first).
pub fn apply_circuit_dense(psi: &mut [Complex64], c: &Circuit) -> Result<()> {
    ensure_same(psi.len(), 1usize << c.n_qubits)?;
    for g in &c.gates {
        dense::apply_gate(psi, g, |q| q)?;
    }
    Ok(())
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GroupFidelity {
    pub group_index: usize,
    pub eigenvalue: f64,
    pub fidelity: f64,
}

/// Overlap of `M·(⊗ψ_j)` with each eigenvector, summed over degenerate groups.
pub fn fidelity_table(s: &ClusterState, m: &Circuit, spectrum: &SpectrumSlice) -> Result<Vec<GroupFidelity>> {
    check_cap(s.n_qubits())?;
    ensure_same(s.n_qubits(), m.n_qubits)?;
    ensure_same(1usize << s.n_qubits(), spectrum.eigenvectors.nrows())?;
    let mut psi = s.to_dense();
    apply_circuit_dense(&mut psi, m)?;
    let dim = psi.len();
    let v = &spectrum.eigenvectors;
    let overlaps: Vec<f64> = (0..v.ncols())
        .map(|k| {
            let mut acc = Complex64::default();
            for r in 0..dim {
                acc += v[(r, k)].conj() * psi[r];
            }
            acc.norm_sqr()
        })
        .collect();
    Ok(spectrum
        .degeneracy_groups
        .iter()
        .enumerate()
        .map(|(group_index, g)| GroupFidelity {
            group_index,
            eigenvalue: spectrum.eigenvalues[g[0]],
            fidelity: g.iter().map(|&k| overlaps[k]).sum::<f64>().clamp(0.0, 1.0),
        })
        .collect())
}

/// `group_index,eigenvalue,fidelity`
pub fn fidelity_csv(rows: &[GroupFidelity]) -> String {
    let mut out = String::from("group_index,eigenvalue,fidelity\n");
    for r in rows {
        let _ = writeln!(out, "{},{:?},{:?}", r.group_index, r.eigenvalue, r.fidelity);
    }
    out
}

/// Dense `⟨ψ|h|ψ⟩` for a full register vector.
pub fn dense_expectation(h: &PauliSum, psi: &[Complex64]) -> Result<f64> {
    ensure_same(psi.len(), 1usize << h.n_qubits())?;
    let hpsi = h.apply(psi);
    Ok(psi.iter().zip(&hpsi).map(|(a, b)| a.conj() * b).sum::<Complex64>().re)
}
