use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::circuits::Partition;
use crate::error::{ensure_same, Error, Result};
use crate::linalg::CMatrix;
use crate::pauli::PauliSum;
use crate::simulator::{expectation, normalize, ClusterState};

use super::reduced_hamiltonian;

/// Shift `γ` of the update `ψ ← (H_A − γ)ψ`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Shift {
    Fixed(f64),
    /// One-norm of the reduced Hamiltonian plus one: always isolates the lowest eigenvalue.
    Auto,
}

impl fmt::Display for Shift {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Shift::Fixed(g) => write!(f, "{g}"),
            Shift::Auto => f.write_str("auto"),
        }
    }
}

impl FromStr for Shift {
    type Err = String;
    fn from_str(s: &str) -> std::result::Result<Self, String> {
        if s.eq_ignore_ascii_case("auto") {
            return Ok(Shift::Auto);
        }
        s.parse().map(Shift::Fixed).map_err(|_| format!("shift must be a number or 'auto', got '{s}'"))
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PowerMethodConfig {
    pub gamma: Shift,
    /// Stop once a full sweep changes the energy by at most this much (Hartree).
    pub tol: f64,
    /// Maximum number of sweeps.
    pub max_iter: usize,
    pub seed: u64,
    pub restarts: usize,
}

impl Default for PowerMethodConfig {
    fn default() -> Self {
        Self {
            gamma: Shift::Fixed(1.0),
            tol: 1e-8,
            max_iter: 10_000,
            seed: 0,
            restarts: 5,
        }
    }
}

impl PowerMethodConfig {
    pub fn validate(&self) -> Result<()> {
        if !(self.tol > 0.0) {
            return Err(Error::Config(format!("tol must be positive, got {}", self.tol)));
        }
        if self.max_iter == 0 || self.restarts == 0 {
            return Err(Error::Config("max_iter and restarts must be at least 1".into()));
        }
        Ok(())
    }
}

#[derive(Debug, Clone)]
pub struct PowerMethodResult {
    pub state: ClusterState,
    pub energy: f64,
    pub iterations: usize,
    pub converged: bool,
    /// Seed of the restart that produced this result.
    pub seed: u64,
}

/// Inner power steps per cluster visit.
const INNER_MAX: usize = 2000;
/// Clusters up to this size use a dense local matrix.
const DENSE_LOCAL_QUBITS: usize = 8;

enum LocalOp {
    Dense(CMatrix),
    Sparse(PauliSum),
}

impl LocalOp {
    fn new(h: PauliSum) -> Self {
        if h.n_qubits() <= DENSE_LOCAL_QUBITS {
            LocalOp::Dense(h.to_matrix())
        } else {
            LocalOp::Sparse(h)
        }
    }

    fn apply(&self, psi: &[Complex64]) -> Vec<Complex64> {
        match self {
            LocalOp::Dense(m) => {
                let n = psi.len();
                let mut out = vec![Complex64::default(); n];
                for (c, &v) in psi.iter().enumerate() {
                    if v == Complex64::default() {
                        continue;
                    }
                    for (r, o) in out.iter_mut().enumerate() {
                        *o += m[(r, c)] * v;
                    }
                }
                out
            }
            LocalOp::Sparse(h) => h.apply(psi),
        }
    }

    fn rayleigh(&self, psi: &[Complex64]) -> f64 {
        let hpsi = self.apply(psi);
        psi.iter().zip(&hpsi).map(|(a, b)| a.conj() * b).sum::<Complex64>().re
    }
}

/// Shifted power iteration on one cluster. Returns the new vector and its local energy.
fn shifted_iteration(op: &LocalOp, start: &[Complex64], gamma: f64, tol: f64) -> (Vec<Complex64>, f64) {
    let mut psi = start.to_vec();
    let mut e = op.rayleigh(&psi);
    for _ in 0..INNER_MAX {
        let hpsi = op.apply(&psi);
        let mut next: Vec<Complex64> = hpsi.iter().zip(&psi).map(|(h, p)| h - gamma * p).collect();
        normalize(&mut next);
        let e_next = op.rayleigh(&next);
        psi = next;
        let done = (e_next - e).abs() <= tol;
        e = e_next;
        if done {
            break;
        }
    }
    (psi, e)
}

/// Update one cluster in place. An update that would raise the local energy
/// (the fixed shift isolating the wrong end of the spectrum) is redone with
/// the automatic shift; if that also fails the old vector is kept.
fn update_cluster(h_local: PauliSum, psi: &[Complex64], cfg: &PowerMethodConfig) -> Vec<Complex64> {
    let auto_gamma = h_local.one_norm() + 1.0;
    let op = LocalOp::new(h_local);
    let e0 = op.rayleigh(psi);
    let inner_tol = cfg.tol * 1e-3;
    let gamma = match cfg.gamma {
        Shift::Fixed(g) => g,
        Shift::Auto => auto_gamma,
    };
    let (next, e) = shifted_iteration(&op, psi, gamma, inner_tol);
    if e <= e0 + cfg.tol {
        return next;
    }
    if matches!(cfg.gamma, Shift::Fixed(_)) {
        let (next, e) = shifted_iteration(&op, psi, auto_gamma, inner_tol);
        if e <= e0 + cfg.tol {
            return next;
        }
    }
    psi.to_vec()
}

/// One run of the alternating power method from a given product state.
pub fn power_method_from(h: &PauliSum, start: ClusterState, cfg: &PowerMethodConfig) -> Result<PowerMethodResult> {
    ensure_same(h.n_qubits(), start.n_qubits())?;
    cfg.validate()?;
    let mut state = start;
    let mut energy = expectation(h, &state)?;
    let mut converged = false;
    let mut iterations = 0;
    while iterations < cfg.max_iter {
        iterations += 1;
        for j in 0..state.partition().n_clusters() {
            let h_local = reduced_hamiltonian(h, &state, j)?;
            let next = update_cluster(h_local, state.vector(j), cfg);
            state.set_vector(j, next)?;
        }
        let e = expectation(h, &state)?;
        let delta = (e - energy).abs();
        energy = e;
        if delta <= cfg.tol {
            converged = true;
            break;
        }
    }
    Ok(PowerMethodResult {
        state,
        energy,
        iterations,
        converged,
        seed: cfg.seed,
    })
}

/// Power method from `cfg.restarts` random product states (seeds `seed`, `seed+1`, …),
/// run in parallel; the lowest energy wins, ties go to the smaller seed.
pub fn power_method(h: &PauliSum, partition: &Partition, cfg: &PowerMethodConfig) -> Result<PowerMethodResult> {
    ensure_same(h.n_qubits(), partition.n_qubits())?;
    cfg.validate()?;
    let runs: Vec<Result<PowerMethodResult>> = (0..cfg.restarts as u64)
        .into_par_iter()
        .map(|i| {
            let seed = cfg.seed.wrapping_add(i);
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let start = ClusterState::random(partition, &mut rng);
            let mut r = power_method_from(h, start, cfg)?;
            r.seed = seed;
            Ok(r)
        })
        .collect();
    let mut best: Option<PowerMethodResult> = None;
    for r in runs {
        let r = r?;
        if best.as_ref().is_none_or(|b| r.energy < b.energy) {
            best = Some(r);
        }
    }
    Ok(best.expect("at least one restart"))
}
