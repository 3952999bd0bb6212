use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use anyhow::{Context, Result};
use cliffold::circuits::{read_circuit, write_circuit, Circuit, GateRecord, Partition};
use cliffold::folding::fold_circuit;
use cliffold::optimizer::{evaluate_candidate, near_clifford_sweep, run_search, trace_csv};
use cliffold::pauli::{read_hamiltonian, write_hamiltonian, PauliSum};
use cliffold::pipeline::{hyperparameter_sweep, run_pipeline, stats, sweep_csv, PipelineConfig};
use cliffold::reference::power_method;
use cliffold::simulator::{exact_ground, fidelity_csv, fidelity_table, ClusterStateRecord};
use serde_json::{json, Value};

use crate::args::*;

pub const EXIT_NOT_CONVERGED: i32 = 3;

/// What a subcommand produced, before it is wrapped with a manifest.
pub struct Outcome {
    pub result: Value,
    pub config: Value,
    /// File name (inside `--out`) and contents.
    pub files: Vec<(String, String)>,
    pub exit: i32,
}

impl Outcome {
    fn new(result: Value, files: Vec<(String, String)>) -> Self {
        Self {
            result,
            config: Value::Null,
            files,
            exit: 0,
        }
    }

    fn with_config(mut self, config: Value) -> Self {
        self.config = config;
        self
    }
}

impl Command {
    pub fn inputs(&self) -> Vec<&Path> {
        let mut v: Vec<&Path> = Vec::new();
        match self {
            Command::Fold(a) => v.extend([a.hamiltonian.as_path(), a.circuit.as_path()]),
            Command::Reference(a) => v.push(&a.hamiltonian),
            Command::Optimize(a) => v.push(&a.hamiltonian),
            Command::NearClifford(a) => v.extend([a.hamiltonian.as_path(), a.circuit.as_path()]),
            Command::Exact(a) => v.push(&a.hamiltonian),
            Command::Fidelity(a) => {
                v.extend([a.hamiltonian.as_path(), a.circuit.as_path()]);
                v.extend(a.state.as_deref());
            }
            Command::Stats(a) => v.extend([a.hamiltonian.as_path(), a.circuit.as_path()]),
            Command::Sweep(a) => v.push(&a.hamiltonian),
            Command::Pipeline(a) => v.push(&a.hamiltonian),
            Command::Replay(_) => {}
        }
        v
    }

    pub fn seed(&self) -> Option<u64> {
        match self {
            Command::Reference(a) => Some(a.seed),
            Command::Optimize(a) => Some(a.search.seed),
            Command::NearClifford(a) => Some(a.seed),
            Command::Fidelity(a) => Some(a.seed),
            Command::Sweep(a) => Some(a.search.seed),
            Command::Pipeline(a) => Some(a.search.seed),
            _ => None,
        }
    }

    pub fn out_dir(&self) -> Option<&Path> {
        match self {
            Command::Fold(a) => a.out.out.as_deref(),
            Command::Reference(a) => a.out.out.as_deref(),
            Command::Optimize(a) => a.out.out.as_deref(),
            Command::NearClifford(a) => a.out.out.as_deref(),
            Command::Exact(a) => a.out.out.as_deref(),
            Command::Fidelity(a) => a.out.out.as_deref(),
            Command::Stats(a) => a.out.out.as_deref(),
            Command::Sweep(a) => a.out.out.as_deref(),
            Command::Pipeline(a) => a.out.out.as_deref(),
            Command::Replay(a) => a.out.as_deref(),
        }
    }

    pub fn set_out_dir(&mut self, dir: PathBuf) {
        let slot = match self {
            Command::Fold(a) => &mut a.out.out,
            Command::Reference(a) => &mut a.out.out,
            Command::Optimize(a) => &mut a.out.out,
            Command::NearClifford(a) => &mut a.out.out,
            Command::Exact(a) => &mut a.out.out,
            Command::Fidelity(a) => &mut a.out.out,
            Command::Stats(a) => &mut a.out.out,
            Command::Sweep(a) => &mut a.out.out,
            Command::Pipeline(a) => &mut a.out.out,
            Command::Replay(a) => &mut a.out,
        };
        *slot = Some(dir);
    }

    pub fn run(&self) -> Result<Outcome> {
        match self {
            Command::Fold(a) => fold_cmd(a),
            Command::Reference(a) => reference_cmd(a),
            Command::Optimize(a) => optimize_cmd(a),
            Command::NearClifford(a) => near_clifford_cmd(a),
            Command::Exact(a) => exact_cmd(a),
            Command::Fidelity(a) => fidelity_cmd(a),
            Command::Stats(a) => stats_cmd(a),
            Command::Sweep(a) => sweep_cmd(a),
            Command::Pipeline(a) => pipeline_cmd(a),
            Command::Replay(_) => unreachable!("replay is dispatched by main"),
        }
    }
}

fn hamiltonian(path: &Path) -> Result<PauliSum> {
    read_hamiltonian(path).with_context(|| format!("hamiltonian {}", path.display()))
}

fn circuit_for(path: &Path, h: &PauliSum) -> Result<Circuit> {
    read_circuit(path, Some(h.n_qubits())).with_context(|| format!("circuit {}", path.display()))
}

fn partition_for(spec: &str, h: &PauliSum) -> Result<Partition> {
    let p = Partition::parse(spec).with_context(|| format!("clusters '{spec}'"))?;
    if p.n_qubits() != h.n_qubits() {
        return Err(cliffold::Error::InvalidPartition(format!(
            "clusters cover {} qubits, the Hamiltonian has {}",
            p.n_qubits(),
            h.n_qubits()
        ))
        .into());
    }
    Ok(p)
}

fn records(c: &Circuit) -> Vec<GateRecord> {
    c.gates.iter().map(GateRecord::from).collect()
}

fn pretty<T: serde::Serialize>(v: &T) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("serializable");
    s.push('\n');
    s
}

fn fold_cmd(a: &FoldArgs) -> Result<Outcome> {
    let h = hamiltonian(&a.hamiltonian)?;
    let m = circuit_for(&a.circuit, &h)?;
    let (folded, report) = fold_circuit(&h, &m)?;
    let text = write_hamiltonian(&folded);
    let result = json!({
        "n_qubits": h.n_qubits(),
        "gates": m.len(),
        "cardinality_before": report.cardinality_before,
        "cardinality_after": report.cardinality_after,
        "hamiltonian": text,
    });
    Ok(Outcome::new(
        result,
        vec![("folded.txt".into(), text), ("fold_report.csv".into(), report.to_csv())],
    ))
}

fn reference_cmd(a: &ReferenceArgs) -> Result<Outcome> {
    let h = hamiltonian(&a.hamiltonian)?;
    let partition = partition_for(&a.clusters, &h)?;
    let cfg = a.config();
    let r = power_method(&h, &partition, &cfg)?;
    let result = json!({
        "energy": r.energy,
        "iterations": r.iterations,
        "converged": r.converged,
        "seed": r.seed,
        "state": ClusterStateRecord::from(&r.state),
    });
    let mut out = Outcome::new(result.clone(), vec![("state.json".into(), pretty(&result["state"]))])
        .with_config(serde_json::to_value(&cfg)?);
    if !r.converged {
        out.exit = EXIT_NOT_CONVERGED;
    }
    Ok(out)
}

fn optimize_cmd(a: &OptimizeArgs) -> Result<Outcome> {
    let h = hamiltonian(&a.hamiltonian)?;
    let partition = partition_for(&a.clusters, &h)?;
    let cfg = a.search.config();
    let r = run_search(&h, &partition, &cfg)?;
    let (_, report) = fold_circuit(&h, &r.circuit)?;
    let result = json!({
        "e_ref": r.e_ref,
        "energy": r.energy,
        "generations": r.generations,
        "folded_cardinality": report.cardinality_after,
        "circuit": records(&r.circuit),
        "state": ClusterStateRecord::from(&r.state),
    });
    let files = vec![
        ("circuit.json".into(), write_circuit(&r.circuit) + "\n"),
        ("state.json".into(), pretty(&result["state"])),
        ("trace.csv".into(), trace_csv(&r.trace)),
        ("fold_report.csv".into(), report.to_csv()),
    ];
    Ok(Outcome::new(result, files).with_config(serde_json::to_value(&cfg)?))
}

fn near_clifford_cmd(a: &NearCliffordArgs) -> Result<Outcome> {
    let h = hamiltonian(&a.hamiltonian)?;
    let partition = partition_for(&a.clusters, &h)?;
    let m = circuit_for(&a.circuit, &h)?;
    let backend = a.solver.backend(a.seed);
    let cfg = a.tau.config(backend.clone());
    let start = evaluate_candidate(&h, &m, &partition, &backend, None)?;
    let r = near_clifford_sweep(&h, &m, &partition, (&start.state, start.energy), &cfg)?;
    let promoted = r.gate_index.map(|i| {
        let g = &r.circuit.gates[i];
        json!({
            "index": i,
            "clifford_kind": m.gates[i].kind().name(),
            "record": GateRecord::from(g),
            "angle": g.angle(),
        })
    });
    let result = json!({
        "clifford_energy": r.clifford_energy,
        "energy": r.energy,
        "gate_index": r.gate_index,
        "tau": r.tau,
        "promoted": promoted,
        "candidates": r.candidates.iter().map(|c| json!({"gate_index": c.gate_index, "tau": c.tau, "energy": c.energy})).collect::<Vec<_>>(),
        "circuit": records(&r.circuit),
        "state": ClusterStateRecord::from(&r.state),
    });
    let files = vec![
        ("circuit.json".into(), write_circuit(&r.circuit) + "\n"),
        ("state.json".into(), pretty(&result["state"])),
    ];
    Ok(Outcome::new(result, files).with_config(serde_json::to_value(&cfg)?))
}

fn exact_cmd(a: &ExactArgs) -> Result<Outcome> {
    let h = hamiltonian(&a.hamiltonian)?;
    let s = exact_ground(&h)?;
    let k = a.levels.min(s.eigenvalues.len());
    let groups: Vec<Value> = s
        .degeneracy_groups
        .iter()
        .take_while(|g| g[0] < k)
        .map(|g| json!({"eigenvalue": s.eigenvalues[g[0]], "degeneracy": g.len()}))
        .collect();
    let mut csv = String::from("index,eigenvalue\n");
    for (i, e) in s.eigenvalues.iter().take(k).enumerate() {
        csv.push_str(&format!("{i},{e:?}\n"));
    }
    let result = json!({
        "n_qubits": h.n_qubits(),
        "ground_energy": s.ground_energy(),
        "eigenvalues": &s.eigenvalues[..k],
        "groups": groups,
    });
    Ok(Outcome::new(result, vec![("spectrum.csv".into(), csv)]))
}

fn fidelity_cmd(a: &FidelityArgs) -> Result<Outcome> {
    let h = hamiltonian(&a.hamiltonian)?;
    let partition = partition_for(&a.clusters, &h)?;
    let m = circuit_for(&a.circuit, &h)?;
    let state = match &a.state {
        Some(path) => {
            let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
            let rec: ClusterStateRecord = serde_json::from_str(&text)?;
            let s = rec.to_state()?;
            if s.partition() != &partition {
                return Err(cliffold::Error::InvalidPartition("state clusters differ from --clusters".into()).into());
            }
            s
        }
        None => evaluate_candidate(&h, &m, &partition, &a.solver.backend(a.seed), None)?.state,
    };
    let spectrum = exact_ground(&h)?;
    let rows = fidelity_table(&state, &m, &spectrum)?;
    let total: f64 = rows.iter().map(|r| r.fidelity).sum();
    let result = json!({
        "ground_fidelity": rows.first().map(|r| r.fidelity),
        "total": total,
        "groups": rows,
    });
    Ok(Outcome::new(result, vec![("fidelity.csv".into(), fidelity_csv(&rows))]))
}

fn stats_cmd(a: &StatsArgs) -> Result<Outcome> {
    let h = hamiltonian(&a.hamiltonian)?;
    let m = circuit_for(&a.circuit, &h)?;
    let report = stats(&h, &m, a.envelope)?;
    let csv = report.to_csv();
    let result = json!({
        "n_qubits": report.n_qubits,
        // u128 does not fit a JSON number portably
        "ceiling": report.ceiling.map(|c| c.to_string()),
        "cardinalities": report.rows.iter().map(|r| r.cardinality).collect::<Vec<_>>(),
        "envelope": a.envelope.then(|| report.rows.iter().map(|r| [r.envelope_min, r.envelope_max]).collect::<Vec<_>>()),
    });
    Ok(Outcome::new(result, vec![("stats.csv".into(), csv)]))
}

fn sweep_cmd(a: &SweepArgs) -> Result<Outcome> {
    let h = hamiltonian(&a.hamiltonian)?;
    let partition = partition_for(&a.clusters, &h)?;
    let cfg = a.search.config();
    let rows = hyperparameter_sweep(&h, &partition, &a.grid_populations, &a.grid_offspring, &cfg)?;
    let result = json!({ "rows": rows });
    Ok(Outcome::new(result, vec![("sweep.csv".into(), sweep_csv(&rows))]).with_config(serde_json::to_value(&cfg)?))
}

fn pipeline_cmd(a: &PipelineArgs) -> Result<Outcome> {
    let h = hamiltonian(&a.hamiltonian)?;
    let partition = partition_for(&a.clusters, &h)?;
    let ga = a.search.config();
    let cfg = PipelineConfig {
        near_clifford: a.tau.config(ga.reference.clone()),
        ga,
    };
    let out = run_pipeline(&h, &partition, &cfg);
    let summary = &out.summary;
    let mut files: Vec<(String, String)> = vec![("summary.json".into(), pretty(summary))];
    if let Some(s) = &out.search {
        files.push(("circuit.json".into(), write_circuit(&s.circuit) + "\n"));
        files.push(("trace.csv".into(), trace_csv(&s.trace)));
        let (_, report) = fold_circuit(&h, &s.circuit)?;
        files.push(("fold_report.csv".into(), report.to_csv()));
    }
    if let Some(n) = &out.near_clifford {
        files.push(("near_clifford_circuit.json".into(), write_circuit(&n.circuit) + "\n"));
        files.push(("state.json".into(), pretty(&ClusterStateRecord::from(&n.state))));
    }
    if !summary.fidelities.is_empty() {
        files.push(("fidelity.csv".into(), fidelity_csv(&summary.fidelities)));
    }
    Ok(Outcome::new(serde_json::to_value(summary)?, files).with_config(serde_json::to_value(&cfg)?))
}

/// Input digests keyed by the path string recorded in the arguments.
pub fn input_digests(cmd: &Command) -> Result<BTreeMap<String, String>> {
    cmd.inputs()
        .into_iter()
        .map(|p| Ok((p.display().to_string(), crate::manifest::file_digest(p)?)))
        .collect()
}
