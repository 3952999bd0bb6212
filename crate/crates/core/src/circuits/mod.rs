//! Gates, circuits, qubit clusters and the operator pool.

mod gate;
mod io;
mod partition;
mod pool;
mod template;

pub use gate::{is_clifford_angle, Gate, GateKind, MAX_GENERAL_QUBITS};
pub use io::{parse_circuit, read_circuit, write_circuit, GateRecord, GeneratorRecord};
pub use partition::Partition;
pub use pool::{sample_on_qubits, sample_pool_gate, sample_replacement, Element, PoolConfig, PoolKind};
pub use template::{
    expand_excitation_template, is_pool_rotation_angle, Excitation, ExcitationKind, Wrapper, POOL_ROTATION_ANGLES,
};

pub(crate) use gate::mask_to_qubits;

use crate::error::{Error, Result};

/// Ordered gate list; the first gate acts on the state first.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct Circuit {
    pub n_qubits: usize,
    pub gates: Vec<Gate>,
}

impl Circuit {
    pub fn new(n_qubits: usize, gates: Vec<Gate>) -> Result<Self> {
        for g in &gates {
            g.validate(n_qubits)?;
        }
        Ok(Self { n_qubits, gates })
    }

    pub fn empty(n_qubits: usize) -> Self {
        Self {
            n_qubits,
            gates: Vec::new(),
        }
    }

    pub fn len(&self) -> usize {
        self.gates.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gates.is_empty()
    }

    pub fn is_clifford(&self) -> bool {
        self.gates.iter().all(Gate::is_clifford)
    }

    /// Union of the gate supports as a bit mask.
    pub fn support_mask(&self) -> u64 {
        self.gates.iter().fold(0, |m, g| m | g.support_mask())
    }

    /// Sorted qubits touched by any gate.
    pub fn support(&self) -> Vec<usize> {
        mask_to_qubits(self.support_mask())
    }

    /// Whether some single gate touches two or more clusters.
    pub fn crosses_clusters(&self, partition: &Partition) -> bool {
        self.gates
            .iter()
            .any(|g| partition.clusters_touched(g.support_mask()) >= 2)
    }

    pub fn validate(&self) -> Result<()> {
        for g in &self.gates {
            g.validate(self.n_qubits)?;
        }
        Ok(())
    }

    /// Widen the register; gates are unchanged.
    pub fn with_qubits(&self, n_qubits: usize) -> Result<Circuit> {
        if n_qubits < self.n_qubits && self.support().last().is_some_and(|&q| q >= n_qubits) {
            return Err(Error::QubitOutOfRange {
                index: *self.support().last().unwrap(),
                n_qubits,
            });
        }
        Circuit::new(n_qubits, self.gates.clone())
    }
}
