//! State-vector kernels shared by cluster-local and full-register simulation.

use num_complex::Complex64;

use crate::circuits::Gate;
use crate::error::Result;
use crate::linalg::CMatrix;
use crate::pauli::PauliString;

/// Apply a `2^k × 2^k` matrix to the bits `positions` of `psi` (local bit `m` ↔ `positions[m]`).
pub(crate) fn apply_local(psi: &mut [Complex64], positions: &[usize], m: &CMatrix) {
    let k = positions.len();
    let dim = 1usize << k;
    let mask: usize = positions.iter().map(|&p| 1usize << p).sum();
    let offsets: Vec<usize> = (0..dim)
        .map(|l| positions.iter().enumerate().map(|(b, &p)| ((l >> b) & 1) << p).sum())
        .collect();
    let mut buf = vec![Complex64::default(); dim];
    for base in 0..psi.len() {
        if base & mask != 0 {
            continue;
        }
        for (l, off) in offsets.iter().enumerate() {
            buf[l] = psi[base | off];
        }
        for (r, off) in offsets.iter().enumerate() {
            let mut acc = Complex64::default();
            for (c, v) in buf.iter().enumerate() {
                acc += m[(r, c)] * v;
            }
            psi[base | off] = acc;
        }
    }
}

/// `psi ← exp(−i·angle/2·P)·psi`.
pub(crate) fn apply_pauli_rotation(psi: &mut [Complex64], p: &PauliString, angle: f64) {
    let (s, c) = (angle / 2.0).sin_cos();
    let old = psi.to_vec();
    psi.iter_mut().for_each(|v| *v *= c);
    for (j, amp) in old.iter().enumerate() {
        let (i, a) = p.apply_to_basis(j);
        psi[i] += Complex64::new(0.0, -s) * a * amp;
    }
}

/// Apply `g` to a register whose bit `positions[m]` holds the gate's `m`-th qubit,
/// where `position_of` maps global qubit indices to bit positions.
pub(crate) fn apply_gate(psi: &mut [Complex64], g: &Gate, position_of: impl Fn(usize) -> usize) -> Result<()> {
    match g {
        Gate::PauliRotation { generator, angle, .. } => {
            let qubits = g.qubits();
            let positions: Vec<usize> = qubits.iter().map(|&q| position_of(q)).collect();
            let local = generator.restrict(&qubits).embed(&positions);
            apply_pauli_rotation(psi, &local, *angle);
        }
        _ => {
            let positions: Vec<usize> = g.qubits().iter().map(|&q| position_of(q)).collect();
            apply_local(psi, &positions, &g.local_matrix()?);
        }
    }
    Ok(())
}

pub(crate) fn norm(psi: &[Complex64]) -> f64 {
    psi.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt()
}

pub(crate) fn normalize(psi: &mut [Complex64]) {
    let n = norm(psi);
    if n > 0.0 {
        psi.iter_mut().for_each(|a| *a /= n);
    }
}

/// `⟨ψ|P|ψ⟩` for a string acting on the bits of `psi` (phase included).
pub(crate) fn string_expectation(p: &PauliString, psi: &[Complex64]) -> Complex64 {
    let mut acc = Complex64::default();
    for (j, amp) in psi.iter().enumerate() {
        let (i, a) = p.apply_to_basis(j);
        acc += psi[i].conj() * a * amp;
    }
    acc
}
