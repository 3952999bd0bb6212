use std::f64::consts::{FRAC_PI_2, PI};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::circuits::{Circuit, Gate, Partition};
use crate::error::{ensure_same, Error, Result};
use crate::pauli::{Pauli, PauliString, PauliSum};
use crate::simulator::{apply_circuit, expectation, ClusterState};

/// Cluster-local circuits `U_j(θ_j)` acting on `|0…0⟩`.
///
/// Parameters bind, in circuit order, to the Pauli rotations flagged as
/// parametrized; other gates are fixed.
#[derive(Debug, Clone, PartialEq)]
pub struct VariationalReference {
    pub partition: Partition,
    pub circuit: Circuit,
    pub theta: Vec<f64>,
}

impl VariationalReference {
    pub fn new(partition: Partition, circuit: Circuit, theta: Vec<f64>) -> Result<Self> {
        ensure_same(partition.n_qubits(), circuit.n_qubits)?;
        for g in &circuit.gates {
            let q = g.qubits();
            if q.iter().any(|&x| partition.cluster_of(x) != partition.cluster_of(q[0])) {
                return Err(Error::CrossClusterGate { gate: g.to_string() });
            }
            if g.is_parametrized() && !matches!(g, Gate::PauliRotation { .. }) {
                return Err(Error::InvalidGate(format!("{g}: only Pauli rotations can carry parameters")));
            }
        }
        let n = circuit.gates.iter().filter(|g| g.is_parametrized()).count();
        ensure_same(n, theta.len())?;
        Ok(Self {
            partition,
            circuit,
            theta,
        })
    }

    /// `layers` rounds of (R_Y on every qubit, CNOT chain inside each cluster),
    /// followed by a closing R_Y layer. All angles start at zero.
    pub fn ry_ansatz(partition: &Partition, layers: usize) -> Result<Self> {
        let ry = |q: usize| Gate::PauliRotation {
            generator: PauliString::single(q, Pauli::Y),
            angle: 0.0,
            parametrized: true,
        };
        let mut gates = Vec::new();
        for layer in 0..=layers {
            for cluster in partition.clusters() {
                gates.extend(cluster.iter().map(|&q| ry(q)));
                if layer < layers {
                    gates.extend(cluster.windows(2).map(|w| Gate::CX {
                        control: w[0],
                        target: w[1],
                    }));
                }
            }
        }
        let n = gates.iter().filter(|g| g.is_parametrized()).count();
        Self::new(partition.clone(), Circuit::new(partition.n_qubits(), gates)?, vec![0.0; n])
    }

    pub fn n_params(&self) -> usize {
        self.theta.len()
    }

    fn bound(&self, theta: &[f64]) -> Circuit {
        let mut k = 0;
        let gates = self
            .circuit
            .gates
            .iter()
            .map(|g| {
                if g.is_parametrized() {
                    k += 1;
                    g.with_angle(theta[k - 1]).expect("parametrized gates are rotations")
                } else {
                    g.clone()
                }
            })
            .collect();
        Circuit {
            n_qubits: self.circuit.n_qubits,
            gates,
        }
    }

    pub fn state(&self, theta: &[f64]) -> Result<ClusterState> {
        apply_circuit(&ClusterState::zero(&self.partition), &self.bound(theta))
    }

    pub fn energy(&self, h: &PauliSum, theta: &[f64]) -> Result<f64> {
        expectation(h, &self.state(theta)?)
    }

    /// Exact gradient by the parameter-shift rule (each generator squares to one).
    pub fn gradient(&self, h: &PauliSum, theta: &[f64]) -> Result<Vec<f64>> {
        let mut shifted = theta.to_vec();
        (0..theta.len())
            .map(|k| {
                shifted[k] = theta[k] + FRAC_PI_2;
                let plus = self.energy(h, &shifted)?;
                shifted[k] = theta[k] - FRAC_PI_2;
                let minus = self.energy(h, &shifted)?;
                shifted[k] = theta[k];
                Ok(0.5 * (plus - minus))
            })
            .collect()
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VariationalConfig {
    pub max_iter: usize,
    /// Stop when the gradient's max-norm falls below this.
    pub gtol: f64,
    /// Additional uniformly random starting points after the reference's own θ.
    pub restarts: usize,
    pub seed: u64,
}

impl Default for VariationalConfig {
    fn default() -> Self {
        Self {
            max_iter: 500,
            gtol: 1e-10,
            restarts: 4,
            seed: 0,
        }
    }
}

/// BFGS with backtracking line search from one starting point.
fn bfgs(reference: &VariationalReference, h: &PauliSum, start: Vec<f64>, cfg: &VariationalConfig) -> Result<(Vec<f64>, f64)> {
    let n = start.len();
    let mut x = start;
    let mut f = reference.energy(h, &x)?;
    if n == 0 {
        return Ok((x, f));
    }
    let mut g = reference.gradient(h, &x)?;
    let mut hinv = vec![vec![0.0; n]; n];
    for (i, row) in hinv.iter_mut().enumerate() {
        row[i] = 1.0;
    }
    for _ in 0..cfg.max_iter {
        if g.iter().all(|v| v.abs() < cfg.gtol) {
            break;
        }
        let mut d: Vec<f64> = (0..n).map(|i| -(0..n).map(|j| hinv[i][j] * g[j]).sum::<f64>()).collect();
        let mut slope: f64 = d.iter().zip(&g).map(|(a, b)| a * b).sum();
        if slope >= 0.0 {
            // lost descent; fall back to steepest descent and reset curvature
            d = g.iter().map(|v| -v).collect();
            slope = -g.iter().map(|v| v * v).sum::<f64>();
            for (i, row) in hinv.iter_mut().enumerate() {
                row.iter_mut().for_each(|v| *v = 0.0);
                row[i] = 1.0;
            }
        }
        let mut step = 1.0;
        let mut accepted = None;
        for _ in 0..40 {
            let trial: Vec<f64> = x.iter().zip(&d).map(|(a, b)| a + step * b).collect();
            let ft = reference.energy(h, &trial)?;
            if ft <= f + 1e-4 * step * slope {
                accepted = Some((trial, ft));
                break;
            }
            step *= 0.5;
        }
        let Some((x_new, f_new)) = accepted else { break };
        let g_new = reference.gradient(h, &x_new)?;
        let s: Vec<f64> = x_new.iter().zip(&x).map(|(a, b)| a - b).collect();
        let y: Vec<f64> = g_new.iter().zip(&g).map(|(a, b)| a - b).collect();
        let sy: f64 = s.iter().zip(&y).map(|(a, b)| a * b).sum();
        if sy > 1e-14 {
            let hy: Vec<f64> = (0..n).map(|i| (0..n).map(|j| hinv[i][j] * y[j]).sum()).collect();
            let yhy: f64 = y.iter().zip(&hy).map(|(a, b)| a * b).sum();
            for i in 0..n {
                for j in 0..n {
                    hinv[i][j] += (sy + yhy) * s[i] * s[j] / (sy * sy) - (hy[i] * s[j] + s[i] * hy[j]) / sy;
                }
            }
        }
        let small = (f - f_new).abs() < 1e-15;
        x = x_new;
        f = f_new;
        g = g_new;
        if small && g.iter().all(|v| v.abs() < cfg.gtol.sqrt()) {
            break;
        }
    }
    Ok((x, f))
}

/// Minimize `⟨ψ(θ)|h|ψ(θ)⟩` from the reference's θ and `cfg.restarts` random points.
///
/// Returns the best parameters and energy; ties keep the earlier start.
pub fn optimize_reference(reference: &VariationalReference, h: &PauliSum, cfg: &VariationalConfig) -> Result<(Vec<f64>, f64)> {
    ensure_same(h.n_qubits(), reference.partition.n_qubits())?;
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let mut starts = vec![reference.theta.clone()];
    for _ in 0..cfg.restarts {
        starts.push((0..reference.n_params()).map(|_| rng.gen_range(0.0..2.0 * PI)).collect());
    }
    let mut best: Option<(Vec<f64>, f64)> = None;
    for start in starts {
        let (x, f) = bfgs(reference, h, start, cfg)?;
        if best.as_ref().is_none_or(|b| f < b.1) {
            best = Some((x, f));
        }
    }
    Ok(best.expect("at least one start"))
}
