use std::f64::consts::PI;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::circuits::{Circuit, Gate, Partition};
use crate::error::{ensure_same, Error, Result};
use crate::folding::{fold, fold_gate};
use crate::pauli::PauliSum;
use crate::simulator::{expectation, ClusterState};

use super::evaluate::solve_reference;
use super::search::IMPROVEMENT_EPS;
use super::ReferenceBackend;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct NearCliffordConfig {
    /// Solver for the product state; its tolerance is used in the final pass.
    pub reference: ReferenceBackend,
    /// Looser tolerance for the alternating rounds.
    pub round_tol: f64,
    /// Rounds of (τ update, reference update) before the final pass.
    pub max_rounds: usize,
    /// Grid points over one period of τ, the Clifford angle among them.
    pub grid_points: usize,
    /// Golden-section bracket width at which the search stops (radians).
    pub tau_tol: f64,
    pub final_tau_tol: f64,
}

impl Default for NearCliffordConfig {
    fn default() -> Self {
        Self {
            reference: ReferenceBackend::default(),
            round_tol: 1e-6,
            max_rounds: 6,
            grid_points: 8,
            tau_tol: 1e-6,
            final_tau_tol: 1e-10,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SweepCandidate {
    pub gate_index: usize,
    pub tau: f64,
    pub energy: f64,
}

#[derive(Debug, Clone)]
pub struct NearCliffordResult {
    pub circuit: Circuit,
    /// Index of the gate that became parametrized, if any replacement helped.
    pub gate_index: Option<usize>,
    pub tau: Option<f64>,
    pub energy: f64,
    pub state: ClusterState,
    pub clifford_energy: f64,
    pub candidates: Vec<SweepCandidate>,
}

/// Gates the sweep may promote: single-qubit Cliffords, including template
/// wrappers and central rotations.
pub fn eligible_gates(m: &Circuit) -> Vec<usize> {
    m.gates
        .iter()
        .enumerate()
        .filter(|(_, g)| g.is_clifford() && g.arity() == 1 && g.parametrized_form().is_some())
        .map(|(i, _)| i)
        .collect()
}

/// `h` with gates after `index` folded in; the parametrized gate and the
/// gates before it are folded per τ.
struct Slot<'a> {
    outer: PauliSum,
    prefix: &'a [Gate],
    gate: Gate,
}

impl Slot<'_> {
    fn folded(&self, tau: f64) -> Result<PauliSum> {
        let mut cur = fold_gate(&self.outer, &self.gate.with_angle(tau).expect("parametrized form"))?;
        for g in self.prefix.iter().rev() {
            cur = fold_gate(&cur, g)?;
        }
        Ok(cur)
    }

    fn energy(&self, tau: f64, s: &ClusterState) -> Result<f64> {
        expectation(&self.folded(tau)?, s)
    }
}

/// Minimize a 2π-periodic function: grid scan, then golden section around the best point.
fn minimize_periodic(
    f: &dyn Fn(f64) -> Result<f64>,
    start: f64,
    grid_points: usize,
    tol: f64,
) -> Result<(f64, f64)> {
    let step = 2.0 * PI / grid_points.max(1) as f64;
    let mut best = (start, f(start)?);
    for k in 1..grid_points {
        let t = start + k as f64 * step;
        let v = f(t)?;
        if v < best.1 {
            best = (t, v);
        }
    }
    let invphi = (5f64.sqrt() - 1.0) / 2.0;
    let (mut a, mut b) = (best.0 - step, best.0 + step);
    let mut c = b - invphi * (b - a);
    let mut d = a + invphi * (b - a);
    let (mut fc, mut fd) = (f(c)?, f(d)?);
    while b - a > tol {
        if fc < fd {
            b = d;
            d = c;
            fd = fc;
            c = b - invphi * (b - a);
            fc = f(c)?;
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + invphi * (b - a);
            fd = f(d)?;
        }
    }
    let (t, v) = if fc < fd { (c, fc) } else { (d, fd) };
    if v < best.1 {
        best = (t, v);
    }
    Ok((best.0.rem_euclid(2.0 * PI), best.1))
}

fn sweep_one(
    h: &PauliSum,
    m: &Circuit,
    partition: &Partition,
    cfg: &NearCliffordConfig,
    index: usize,
    clifford_state: &ClusterState,
) -> Result<(f64, f64, ClusterState)> {
    let gate = m.gates[index].parametrized_form().expect("eligible gate");
    let tau0 = gate.angle().expect("parametrized gates carry an angle");
    let outer = fold(h, &Circuit {
        n_qubits: m.n_qubits,
        gates: m.gates[index + 1..].to_vec(),
    })?;
    let slot = Slot {
        outer,
        prefix: &m.gates[..index],
        gate,
    };
    let loose = cfg.reference.with_tol(cfg.round_tol);
    let mut state = clifford_state.clone();
    let mut tau = tau0;
    let mut energy = f64::INFINITY;
    for _ in 0..cfg.max_rounds {
        let s = state.clone();
        let (t, _) = minimize_periodic(&|t| slot.energy(t, &s), tau, cfg.grid_points, cfg.tau_tol)?;
        tau = t;
        let (next, e) = solve_reference(&slot.folded(tau)?, partition, &loose, Some(&state))?;
        state = next;
        let done = (energy - e).abs() < cfg.round_tol;
        energy = e;
        if done {
            break;
        }
    }
    let s = state.clone();
    let (t, _) = minimize_periodic(&|t| slot.energy(t, &s), tau, cfg.grid_points, cfg.final_tau_tol)?;
    tau = t;
    let (state, energy) = solve_reference(&slot.folded(tau)?, partition, &cfg.reference, Some(&state))?;
    Ok((tau, energy, state))
}

/// Try promoting each eligible gate of a Clifford circuit to a free rotation
/// and keep the single best replacement.
///
/// `clifford` is the circuit's reference energy and state; the circuit is
/// returned unchanged whenever no replacement beats that energy.
pub fn near_clifford_sweep(
    h: &PauliSum,
    m: &Circuit,
    partition: &Partition,
    clifford: (&ClusterState, f64),
    cfg: &NearCliffordConfig,
) -> Result<NearCliffordResult> {
    ensure_same(h.n_qubits(), m.n_qubits)?;
    ensure_same(h.n_qubits(), partition.n_qubits())?;
    if !m.is_clifford() {
        return Err(Error::NotClifford("near-Clifford sweep needs a Clifford circuit".into()));
    }
    let (clifford_state, clifford_energy) = clifford;
    let runs: Vec<Result<(usize, f64, f64, ClusterState)>> = eligible_gates(m)
        .into_par_iter()
        .map(|i| sweep_one(h, m, partition, cfg, i, clifford_state).map(|(t, e, s)| (i, t, e, s)))
        .collect();
    let runs = runs.into_iter().collect::<Result<Vec<_>>>()?;
    let candidates = runs
        .iter()
        .map(|(i, t, e, _)| SweepCandidate {
            gate_index: *i,
            tau: *t,
            energy: *e,
        })
        .collect();
    let best = runs
        .into_iter()
        .fold(None::<(usize, f64, f64, ClusterState)>, |acc, r| match acc {
            Some(a) if a.2 <= r.2 => Some(a),
            _ => Some(r),
        });
    match best {
        Some((i, tau, energy, state)) if energy < clifford_energy - IMPROVEMENT_EPS => {
            let mut gates = m.gates.clone();
            gates[i] = gates[i].parametrized_form().expect("eligible").with_angle(tau).expect("rotation");
            Ok(NearCliffordResult {
                circuit: Circuit::new(m.n_qubits, gates)?,
                gate_index: Some(i),
                tau: Some(tau),
                energy,
                state,
                clifford_energy,
                candidates,
            })
        }
        _ => Ok(NearCliffordResult {
            circuit: m.clone(),
            gate_index: None,
            tau: None,
            energy: clifford_energy,
            state: clifford_state.clone(),
            clifford_energy,
            candidates,
        }),
    }
}
