//! End-to-end runs and the batch reports built on them.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::circuits::{Circuit, GateRecord, Partition};
use crate::error::{Error, Result};
use crate::folding::{fold, fold_circuit, FoldReport};
use crate::optimizer::{
    eligible_gates, near_clifford_sweep, run_search, GAConfig, NearCliffordConfig, NearCliffordResult, SearchResult,
};
use crate::pauli::PauliSum;
use crate::simulator::{exact_ground, fidelity_table, GroupFidelity};

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct PipelineConfig {
    pub ga: GAConfig,
    pub near_clifford: NearCliffordConfig,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Cardinalities {
    pub hamiltonian: usize,
    pub clifford_folded: Option<usize>,
    pub near_clifford_folded: Option<usize>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PipelineSummary {
    pub n_qubits: usize,
    pub clusters: String,
    pub e_ref: Option<f64>,
    pub e_cliff: Option<f64>,
    pub e_ncliff: Option<f64>,
    pub e_exact: Option<f64>,
    pub error_ref: Option<f64>,
    pub error_cliff: Option<f64>,
    pub error_ncliff: Option<f64>,
    pub cardinalities: Cardinalities,
    pub clifford_circuit: Vec<GateRecord>,
    pub near_clifford_circuit: Vec<GateRecord>,
    pub near_clifford_gate: Option<usize>,
    pub tau: Option<f64>,
    pub generations: usize,
    pub ground_fidelity: Option<f64>,
    pub fidelities: Vec<GroupFidelity>,
    /// `stage: message` for every stage that failed; later stages are skipped.
    pub stage_errors: Vec<String>,
}

impl PipelineSummary {
    /// `E_exact ≤ E_ncliff ≤ E_cliff ≤ E_ref` up to `slack`, over the stages that ran.
    pub fn is_monotone(&self, slack: f64) -> bool {
        let chain: Vec<f64> = [self.e_exact, self.e_ncliff, self.e_cliff, self.e_ref]
            .into_iter()
            .flatten()
            .collect();
        chain.windows(2).all(|w| w[0] <= w[1] + slack)
    }
}

/// Everything a pipeline run produced, for callers that write artifacts.
#[derive(Debug, Clone)]
pub struct PipelineOutput {
    pub summary: PipelineSummary,
    pub search: Option<SearchResult>,
    pub near_clifford: Option<NearCliffordResult>,
}

fn records(c: &Circuit) -> Vec<GateRecord> {
    c.gates.iter().map(GateRecord::from).collect()
}

/// Reference → Clifford search → near-Clifford sweep → exact spectrum → fidelities.
pub fn run_pipeline(h: &PauliSum, partition: &Partition, cfg: &PipelineConfig) -> PipelineOutput {
    let mut summary = PipelineSummary {
        n_qubits: h.n_qubits(),
        clusters: partition.spec(),
        e_ref: None,
        e_cliff: None,
        e_ncliff: None,
        e_exact: None,
        error_ref: None,
        error_cliff: None,
        error_ncliff: None,
        cardinalities: Cardinalities {
            hamiltonian: h.cardinality(),
            clifford_folded: None,
            near_clifford_folded: None,
        },
        clifford_circuit: Vec::new(),
        near_clifford_circuit: Vec::new(),
        near_clifford_gate: None,
        tau: None,
        generations: 0,
        ground_fidelity: None,
        fidelities: Vec::new(),
        stage_errors: Vec::new(),
    };
    let mut out = PipelineOutput {
        summary: summary.clone(),
        search: None,
        near_clifford: None,
    };

    let search = match run_search(h, partition, &cfg.ga) {
        Ok(s) => s,
        Err(e) => {
            summary.stage_errors.push(format!("search: {e}"));
            out.summary = summary;
            return out;
        }
    };
    summary.e_ref = Some(search.e_ref);
    summary.e_cliff = Some(search.energy);
    summary.generations = search.generations;
    summary.clifford_circuit = records(&search.circuit);
    summary.cardinalities.clifford_folded = fold(h, &search.circuit).ok().map(|f| f.cardinality());

    let near = match near_clifford_sweep(h, &search.circuit, partition, (&search.state, search.energy), &cfg.near_clifford) {
        Ok(n) => n,
        Err(e) => {
            summary.stage_errors.push(format!("near-clifford: {e}"));
            out.summary = summary;
            out.search = Some(search);
            return out;
        }
    };
    summary.e_ncliff = Some(near.energy);
    summary.near_clifford_circuit = records(&near.circuit);
    summary.near_clifford_gate = near.gate_index;
    summary.tau = near.tau;
    summary.cardinalities.near_clifford_folded = fold(h, &near.circuit).ok().map(|f| f.cardinality());

    match exact_ground(h) {
        Ok(spectrum) => {
            let e0 = spectrum.ground_energy();
            summary.e_exact = Some(e0);
            summary.error_ref = Some(search.e_ref - e0);
            summary.error_cliff = Some(search.energy - e0);
            summary.error_ncliff = Some(near.energy - e0);
            match fidelity_table(&near.state, &near.circuit, &spectrum) {
                Ok(rows) => {
                    summary.ground_fidelity = rows.first().map(|r| r.fidelity);
                    summary.fidelities = rows;
                }
                Err(e) => summary.stage_errors.push(format!("fidelity: {e}")),
            }
        }
        Err(e) => summary.stage_errors.push(format!("exact: {e}")),
    }
    out.summary = summary;
    out.search = Some(search);
    out.near_clifford = Some(near);
    out
}

/// `4^n`, the number of Pauli strings on `n` qubits; `None` once it no longer fits in a `u128`.
pub fn term_ceiling(n_qubits: usize) -> Option<u128> {
    1u128.checked_shl(2 * n_qubits as u32)
}

/// Angle offset used to make a Clifford gate generic for the envelope.
pub const ENVELOPE_OFFSET: f64 = std::f64::consts::PI / 8.0;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct StatsRow {
    /// 0 is the unfolded Hamiltonian; step `k` follows the `k`-th folded gate.
    pub step: usize,
    pub gate_index: Option<usize>,
    pub kind: Option<String>,
    pub cardinality: usize,
    pub envelope_min: Option<usize>,
    pub envelope_max: Option<usize>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct StatsReport {
    pub n_qubits: usize,
    pub ceiling: Option<u128>,
    pub rows: Vec<StatsRow>,
}

impl StatsReport {
    /// `step,gate_index,kind,cardinality,envelope_min,envelope_max,ceiling`
    pub fn to_csv(&self) -> String {
        let opt = |v: Option<usize>| v.map(|x| x.to_string()).unwrap_or_default();
        let mut out = String::from("step,gate_index,kind,cardinality,envelope_min,envelope_max,ceiling\n");
        for r in &self.rows {
            let _ = writeln!(
                out,
                "{},{},{},{},{},{},{}",
                r.step,
                opt(r.gate_index),
                r.kind.clone().unwrap_or_default(),
                r.cardinality,
                opt(r.envelope_min),
                opt(r.envelope_max),
                self.ceiling.map(|c| c.to_string()).unwrap_or_default()
            );
        }
        out
    }
}

fn trace(before: usize, report: &FoldReport) -> Vec<usize> {
    std::iter::once(before).chain(report.steps.iter().map(|s| s.cardinality)).collect()
}

/// Term-count trace of folding `m` into `h`. With `envelope`, the circuit
/// must be Clifford and every single-gate parametrization (each eligible
/// gate moved off its Clifford angle by [`ENVELOPE_OFFSET`]) contributes to a
/// per-step min/max band.
pub fn stats(h: &PauliSum, m: &Circuit, envelope: bool) -> Result<StatsReport> {
    let (_, report) = fold_circuit(h, m)?;
    let base = trace(h.cardinality(), &report);
    let mut band: Option<Vec<(usize, usize)>> = None;
    if envelope {
        if !m.is_clifford() {
            return Err(Error::NotClifford("the envelope is defined for Clifford circuits".into()));
        }
        let mut b: Vec<(usize, usize)> = base.iter().map(|&c| (c, c)).collect();
        for i in eligible_gates(m) {
            let form = m.gates[i].parametrized_form().expect("eligible");
            let angle = form.angle().expect("rotation") + ENVELOPE_OFFSET;
            let mut gates = m.gates.clone();
            gates[i] = form.with_angle(angle).expect("rotation");
            let (_, r) = fold_circuit(h, &Circuit::new(m.n_qubits, gates)?)?;
            for (slot, c) in b.iter_mut().zip(trace(h.cardinality(), &r)) {
                slot.0 = slot.0.min(c);
                slot.1 = slot.1.max(c);
            }
        }
        band = Some(b);
    }
    let rows = base
        .iter()
        .enumerate()
        .map(|(step, &cardinality)| {
            let gate = step.checked_sub(1).map(|k| &report.steps[k]);
            StatsRow {
                step,
                gate_index: gate.map(|s| s.gate_index),
                kind: gate.map(|s| s.kind.to_string()),
                cardinality,
                envelope_min: band.as_ref().map(|b| b[step].0),
                envelope_max: band.as_ref().map(|b| b[step].1),
            }
        })
        .collect();
    Ok(StatsReport {
        n_qubits: h.n_qubits(),
        ceiling: term_ceiling(h.n_qubits()),
        rows,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SweepRow {
    pub populations: usize,
    pub offspring: usize,
    pub energy: f64,
}

/// Grid over population and offspring counts; every cell uses `base.seed`.
pub fn hyperparameter_sweep(
    h: &PauliSum,
    partition: &Partition,
    populations: &[usize],
    offspring: &[usize],
    base: &GAConfig,
) -> Result<Vec<SweepRow>> {
    if populations.is_empty() || offspring.is_empty() {
        return Err(Error::Config("sweep grid is empty".into()));
    }
    let mut rows = Vec::with_capacity(populations.len() * offspring.len());
    for &p in populations {
        for &o in offspring {
            let cfg = GAConfig {
                n_populations: p,
                n_offspring: o,
                ..base.clone()
            };
            let r = run_search(h, partition, &cfg)?;
            rows.push(SweepRow {
                populations: p,
                offspring: o,
                energy: r.energy,
            });
        }
    }
    Ok(rows)
}

/// `populations,offspring,energy`
pub fn sweep_csv(rows: &[SweepRow]) -> String {
    let mut out = String::from("populations,offspring,energy\n");
    for r in rows {
        let _ = writeln!(out, "{},{},{:?}", r.populations, r.offspring, r.energy);
    }
    out
}
