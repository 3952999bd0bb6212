use std::collections::HashMap;

use num_complex::Complex64;
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::circuits::{Circuit, Partition};
use crate::error::{ensure_same, Error, Result};
use crate::pauli::{PauliString, PauliSum};

use super::dense;

const NORM_TOL: f64 = 1e-10;

/// Product of per-cluster state vectors. Bit `m` of cluster `j`'s vector is
/// qubit `partition.cluster(j)[m]`.
#[derive(Debug, Clone, PartialEq)]
pub struct ClusterState {
    partition: Partition,
    vectors: Vec<Vec<Complex64>>,
}

impl ClusterState {
    pub fn new(partition: Partition, vectors: Vec<Vec<Complex64>>) -> Result<Self> {
        if vectors.len() != partition.n_clusters() {
            return Err(Error::DimensionMismatch {
                left: partition.n_clusters(),
                right: vectors.len(),
            });
        }
        for (j, v) in vectors.iter().enumerate() {
            ensure_same(1 << partition.cluster(j).len(), v.len())?;
            let n = dense::norm(v);
            if (n - 1.0).abs() > NORM_TOL {
                return Err(Error::Config(format!("cluster {j} vector has norm {n}")));
            }
        }
        Ok(Self { partition, vectors })
    }

    /// All qubits in `|0⟩`.
    pub fn zero(partition: &Partition) -> Self {
        let vectors = partition
            .clusters()
            .iter()
            .map(|c| {
                let mut v = vec![Complex64::default(); 1 << c.len()];
                v[0] = Complex64::new(1.0, 0.0);
                v
            })
            .collect();
        Self {
            partition: partition.clone(),
            vectors,
        }
    }

    /// Random cluster vectors with amplitudes drawn uniformly from the unit square, normalized.
    pub fn random<R: Rng + ?Sized>(partition: &Partition, rng: &mut R) -> Self {
        let vectors = partition
            .clusters()
            .iter()
            .map(|c| {
                let mut v: Vec<Complex64> = (0..1usize << c.len())
                    .map(|_| Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)))
                    .collect();
                dense::normalize(&mut v);
                v
            })
            .collect();
        Self {
            partition: partition.clone(),
            vectors,
        }
    }

    pub fn partition(&self) -> &Partition {
        &self.partition
    }

    pub fn n_qubits(&self) -> usize {
        self.partition.n_qubits()
    }

    pub fn vector(&self, cluster: usize) -> &[Complex64] {
        &self.vectors[cluster]
    }

    pub fn vectors(&self) -> &[Vec<Complex64>] {
        &self.vectors
    }

    /// Replace one cluster's vector; it is normalized on the way in.
    pub fn set_vector(&mut self, cluster: usize, mut v: Vec<Complex64>) -> Result<()> {
        ensure_same(self.vectors[cluster].len(), v.len())?;
        dense::normalize(&mut v);
        self.vectors[cluster] = v;
        Ok(())
    }

    /// Full `2^n` product vector.
    pub fn to_dense(&self) -> Vec<Complex64> {
        let n = self.n_qubits();
        let locals: Vec<Vec<usize>> = self.partition.clusters().to_vec();
        (0..1usize << n)
            .map(|j| {
                locals
                    .iter()
                    .zip(&self.vectors)
                    .map(|(qubits, v)| {
                        let l: usize = qubits.iter().enumerate().map(|(m, &q)| ((j >> q) & 1) << m).sum();
                        v[l]
                    })
                    .product()
            })
            .collect()
    }
}

/// Per-cluster values `⟨ψ_j|P|_j|ψ_j⟩`, memoized on the restricted string.
pub(crate) struct FactorTable<'a> {
    state: &'a ClusterState,
    cache: Vec<HashMap<PauliString, Complex64>>,
}

impl<'a> FactorTable<'a> {
    pub(crate) fn new(state: &'a ClusterState) -> Self {
        Self {
            state,
            cache: vec![HashMap::new(); state.partition.n_clusters()],
        }
    }

    pub(crate) fn factor(&mut self, cluster: usize, p: &PauliString) -> Complex64 {
        let qubits = self.state.partition.cluster(cluster);
        let local = p.restrict(qubits);
        if local.is_identity() {
            return Complex64::new(1.0, 0.0);
        }
        let v = &self.state.vectors[cluster];
        *self.cache[cluster]
            .entry(local)
            .or_insert_with(|| dense::string_expectation(&local, v))
    }
}

/// `⟨ψ|h|ψ⟩` for a product state, factorized over clusters.
pub fn expectation(h: &PauliSum, s: &ClusterState) -> Result<f64> {
    ensure_same(h.n_qubits(), s.n_qubits())?;
    let mut table = FactorTable::new(s);
    let mut acc = Complex64::default();
    for (p, c) in h.iter() {
        let mut f = *c;
        for j in 0..s.partition.n_clusters() {
            if p.support() & s.partition.cluster_mask(j) != 0 {
                f *= table.factor(j, p);
            }
        }
        acc += f;
    }
    Ok(acc.re)
}

/// Apply a circuit cluster by cluster. Every gate must live inside one cluster.
pub fn apply_circuit(s: &ClusterState, c: &Circuit) -> Result<ClusterState> {
    ensure_same(s.n_qubits(), c.n_qubits)?;
    let mut out = s.clone();
    for g in &c.gates {
        let qubits = g.qubits();
        let j = s.partition.cluster_of(qubits[0]);
        if qubits.iter().any(|&q| s.partition.cluster_of(q) != j) {
            return Err(Error::CrossClusterGate { gate: g.to_string() });
        }
        let cluster = s.partition.cluster(j);
        let position_of = |q: usize| cluster.binary_search(&q).expect("qubit is in its own cluster");
        dense::apply_gate(&mut out.vectors[j], g, position_of)?;
    }
    Ok(out)
}

/// Serializable form: per-cluster qubit lists and `[re, im]` amplitudes.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ClusterStateRecord {
    pub clusters: Vec<Vec<usize>>,
    pub vectors: Vec<Vec<[f64; 2]>>,
}

impl From<&ClusterState> for ClusterStateRecord {
    fn from(s: &ClusterState) -> Self {
        Self {
            clusters: s.partition.clusters().to_vec(),
            vectors: s
                .vectors
                .iter()
                .map(|v| v.iter().map(|a| [a.re, a.im]).collect())
                .collect(),
        }
    }
}

impl ClusterStateRecord {
    pub fn to_state(&self) -> Result<ClusterState> {
        let partition = Partition::new(self.clusters.clone())?;
        let vectors = self
            .vectors
            .iter()
            .map(|v| v.iter().map(|a| Complex64::new(a[0], a[1])).collect())
            .collect();
        ClusterState::new(partition, vectors)
    }
}
