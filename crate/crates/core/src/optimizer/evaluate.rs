use crate::circuits::{Circuit, Partition};
use crate::error::{ensure_same, Result};
use crate::folding::fold;
use crate::pauli::PauliSum;
use crate::reference::{optimize_reference, power_method, power_method_from, VariationalReference};
use crate::simulator::ClusterState;

use super::ReferenceBackend;

#[derive(Debug, Clone)]
pub struct Evaluation {
    pub energy: f64,
    pub state: ClusterState,
    pub cardinality: usize,
}

/// Solve the product-state reference for `h` with `backend`. A warm start,
/// when given, competes with the backend's own random restarts.
pub fn solve_reference(
    h: &PauliSum,
    partition: &Partition,
    backend: &ReferenceBackend,
    warm: Option<&ClusterState>,
) -> Result<(ClusterState, f64)> {
    match backend {
        ReferenceBackend::PowerMethod(cfg) => {
            let mut best = power_method(h, partition, cfg)?;
            if let Some(w) = warm {
                let r = power_method_from(h, w.clone(), cfg)?;
                if r.energy < best.energy {
                    best = r;
                }
            }
            Ok((best.state, best.energy))
        }
        ReferenceBackend::Variational { layers, config } => {
            let reference = VariationalReference::ry_ansatz(partition, *layers)?;
            let (theta, energy) = optimize_reference(&reference, h, config)?;
            Ok((reference.state(&theta)?, energy))
        }
    }
}

/// Fold `m` into `h` and re-solve the reference on the result.
pub fn evaluate_candidate(
    h: &PauliSum,
    m: &Circuit,
    partition: &Partition,
    backend: &ReferenceBackend,
    warm: Option<&ClusterState>,
) -> Result<Evaluation> {
    ensure_same(h.n_qubits(), partition.n_qubits())?;
    let folded = fold(h, m)?;
    let (state, energy) = solve_reference(&folded, partition, backend, warm)?;
    Ok(Evaluation {
        energy,
        state,
        cardinality: folded.cardinality(),
    })
}
