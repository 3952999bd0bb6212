use num_complex::Complex64;

use crate::error::{ensure_same, Error, Result};
use crate::pauli::PauliSum;
use crate::simulator::{ClusterState, FactorTable};

/// `H_A = ⟨·ψ_B|H|·ψ_B⟩`: every other cluster is contracted against its
/// current vector. The result acts on the cluster's qubits in local order.
pub fn reduced_hamiltonian(h: &PauliSum, s: &ClusterState, cluster: usize) -> Result<PauliSum> {
    ensure_same(h.n_qubits(), s.n_qubits())?;
    let partition = s.partition();
    if cluster >= partition.n_clusters() {
        return Err(Error::InvalidPartition(format!(
            "cluster {cluster} does not exist ({} clusters)",
            partition.n_clusters()
        )));
    }
    let qubits = partition.cluster(cluster);
    let masks: Vec<u64> = (0..partition.n_clusters()).map(|j| partition.cluster_mask(j)).collect();
    let mut table = FactorTable::new(s);
    let mut out = PauliSum::new(qubits.len())?;
    for (p, c) in h.iter() {
        let mut f: Complex64 = *c;
        for (j, &m) in masks.iter().enumerate() {
            if j != cluster && p.support() & m != 0 {
                f *= table.factor(j, p);
            }
        }
        out.accumulate(p.restrict(qubits), f);
    }
    out.prune();
    Ok(out)
}
