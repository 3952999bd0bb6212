//! General gates through the spectral decomposition of a small generator.

use std::collections::BTreeMap;

use num_complex::Complex64;

use crate::circuits::Gate;
use crate::error::{Error, Result};
use crate::linalg::{unitary_from_generator, CMatrix};
use crate::pauli::{PauliString, PauliSum, PRUNE_TOL};

use super::map_terms;

/// Expand a `2^k × 2^k` operator in the local Pauli basis (Hilbert–Schmidt).
fn pauli_expand(m: &CMatrix, k: usize) -> Vec<(PauliString, Complex64)> {
    let dim = 1usize << k;
    let mut out = Vec::new();
    let full = (1u64 << k) - 1;
    for x in 0..=full {
        for z in 0..=full {
            let p = PauliString::new(x, z);
            // Tr(P·M) = Σ_j <j|P M|j>; P is Hermitian
            let mut tr = Complex64::default();
            for j in 0..dim {
                let (i, a) = p.apply_to_basis(j);
                // P|j> = a|i>  =>  <j|P = conj(a) <i|
                tr += a.conj() * m[(i, j)];
            }
            let c = tr / dim as f64;
            if c.norm() >= PRUNE_TOL * 1e-3 {
                out.push((p, c));
            }
        }
    }
    out
}

/// `U†·h·U` for `U = exp(−i·τ/2·G)`, `G` a Hermitian matrix on at most three qubits.
pub fn fold_general_gate(h: &PauliSum, g: &Gate, tau: f64) -> Result<PauliSum> {
    let (targets, generator) = match g {
        Gate::General { targets, generator, .. } => (targets, generator),
        other => return Err(Error::InvalidGate(format!("{other} is not a general gate"))),
    };
    g.validate(h.n_qubits())?;
    let k = targets.len();
    let u = unitary_from_generator(generator, tau)?;
    let u_dag = u.adjoint();
    let mask = g.support_mask();

    let mut images: BTreeMap<PauliString, Vec<(PauliString, Complex64)>> = BTreeMap::new();
    for p in h.strings() {
        let local = p.restrict(targets);
        images.entry(local).or_insert_with(|| {
            let conj = &u_dag * local.to_matrix(k) * &u;
            pauli_expand(&conj, k)
                .into_iter()
                .map(|(b, c)| (b.embed(targets), c))
                .collect()
        });
    }
    Ok(map_terms(h, |p, c| {
        let outer = PauliString::new(p.x & !mask, p.z & !mask);
        images[&p.restrict(targets)]
            .iter()
            .map(|(b, a)| (PauliString::new(outer.x | b.x, outer.z | b.z), c * a))
            .collect()
    }))
}
