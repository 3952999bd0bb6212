//! Acceptance suite: one PASS/FAIL line per headline criterion.
//!
//! Runs as a plain binary (`harness = false`) so the lines show up in
//! `cargo test` output. A criterion listed in `KNOWN_UNATTAINABLE` prints FAIL
//! but does not fail the run, provided its documented reason is re-checked
//! and still holds.

#[path = "../../core/tests/common/mod.rs"]
mod common;

use std::path::{Path, PathBuf};
use std::process::Command;
use std::time::{Duration, Instant};

use cliffold::circuits::{Circuit, Gate, Partition, PoolKind};
use cliffold::folding::{fold, fold_excitation_gate, fold_gate, fold_projector_gate, qubit_excitation_generator};
use cliffold::optimizer::{evaluate_candidate, run_search, GAConfig, NearCliffordConfig};
use cliffold::pauli::{write_hamiltonian, Pauli, PauliString, PauliSum};
use cliffold::pipeline::{run_pipeline, PipelineConfig, PipelineSummary};
use cliffold::reference::{power_method, PowerMethodConfig};
use cliffold::simulator::{apply_circuit_dense, dense_expectation, exact_ground, fidelity_table, ClusterState};
use common::*;
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

enum Verdict {
    Pass(String),
    Fail(String),
    /// Fails, and the re-checked reason it cannot pass still holds.
    Unattainable(String),
}

struct Suite {
    lines: Vec<(String, Verdict)>,
    /// Every pipeline run made by the suite, for the ordering check.
    pipelines: Vec<(String, PipelineSummary)>,
    scratch: PathBuf,
}

fn check(ok: bool, detail: String) -> Verdict {
    if ok {
        Verdict::Pass(detail)
    } else {
        Verdict::Fail(detail)
    }
}

fn secs(d: Duration) -> String {
    format!("{:.2}s", d.as_secs_f64())
}

fn bell() -> PauliSum {
    PauliSum::from_labels(2, &[("X0 X1", -1.0), ("Z0 Z1", -1.0)]).unwrap()
}

fn tfim() -> PauliSum {
    PauliSum::from_labels(2, &[("Z0 Z1", -1.0), ("X0", -0.5), ("X1", -0.5)]).unwrap()
}

fn cli() -> Command {
    Command::new(env!("CARGO_BIN_EXE_cliffold"))
}

fn write_file(dir: &Path, name: &str, text: &str) -> PathBuf {
    let p = dir.join(name);
    std::fs::write(&p, text).unwrap();
    p
}

impl Suite {
    fn record_pipeline(&mut self, name: &str, s: &PipelineSummary) {
        self.pipelines.push((name.to_string(), s.clone()));
    }

    fn folding_oracle(&mut self) -> Verdict {
        let t = Instant::now();
        let mut rng = ChaCha8Rng::seed_from_u64(1001);
        let mut worst = 0.0f64;
        let mut counts = [0usize; 4];
        let pairs = 1200;
        for i in 0..pairs {
            let n = rng.gen_range(2..=4);
            let terms = rng.gen_range(1..16);
            let h = random_hamiltonian(&mut rng, n, terms);
            let hd = hamiltonian(&h);
            let class = i % 4;
            counts[class] += 1;
            let (folded, expect) = match class {
                // Clifford gates, including Clifford-angle rotations
                0 => {
                    let g = random_gate(&mut rng, n, [0, 1, 2, 3, 4, 5, 6, 7, 8, 9, 12][i / 4 % 11]);
                    (fold_gate(&h, &g).unwrap(), fold_dense(&hd, &[g], n))
                }
                // Pauli rotations, alternating with projector generators (I ± G)/2
                1 => {
                    if i / 4 % 2 == 0 {
                        let g = random_gate(&mut rng, n, 10);
                        (fold_gate(&h, &g).unwrap(), fold_dense(&hd, &[g], n))
                    } else {
                        let mut s = random_string(&mut rng, n);
                        while s.is_identity() {
                            s = random_string(&mut rng, n);
                        }
                        let sign = if rng.gen_bool(0.5) { 1.0 } else { -1.0 };
                        let proj = PauliSum::from_pairs(n, [(PauliString::IDENTITY, c(0.5, 0.0)), (s, c(0.5 * sign, 0.0))]).unwrap();
                        let tau = rng.gen_range(-4.0..4.0);
                        let u = (hamiltonian(&proj) * c(0.0, -tau / 2.0)).exp();
                        (fold_projector_gate(&h, &proj, tau).unwrap(), u.adjoint() * &hd * &u)
                    }
                }
                // excitation generators with G³ = G
                2 => {
                    let q = distinct(&mut rng, n, 2);
                    let (g, p0) = qubit_excitation_generator(n, q[0], q[1]).unwrap();
                    let tau = rng.gen_range(-4.0..4.0);
                    let u = (hamiltonian(&g) * c(0.0, -tau / 2.0)).exp();
                    (fold_excitation_gate(&h, &g, &p0, tau).unwrap(), u.adjoint() * &hd * &u)
                }
                // general Hermitian generators on 1–3 qubits
                _ => {
                    let g = random_gate(&mut rng, n, 11);
                    (fold_gate(&h, &g).unwrap(), fold_dense(&hd, &[g], n))
                }
            };
            worst = worst.max(max_diff(&hamiltonian(&folded), &expect));
        }
        let el = t.elapsed();
        check(
            worst < 1e-10 && el < Duration::from_secs(60),
            format!("{pairs} pairs {counts:?} per class, max elementwise error {worst:.2e} (< 1e-10), {}", secs(el)),
        )
    }

    fn clifford_cardinality(&mut self) -> Verdict {
        let t = Instant::now();
        let mut rng = ChaCha8Rng::seed_from_u64(1002);
        let mut mismatches = 0;
        let mut total_terms = 0;
        for _ in 0..100 {
            let n = rng.gen_range(6..=12);
            let terms = rng.gen_range(5..60);
            let h = random_hamiltonian(&mut rng, n, terms);
            let gates: Vec<Gate> = (0..100).map(|_| {
                    let class = rng.gen_range(0..10);
                    random_gate(&mut rng, n, class)
                }).collect();
            let m = Circuit::new(n, gates).unwrap();
            assert!(m.is_clifford());
            let folded = fold(&h, &m).unwrap();
            total_terms += h.cardinality();
            if folded.cardinality() != h.cardinality() {
                mismatches += 1;
            }
        }
        let el = t.elapsed();
        check(
            mismatches == 0 && el < Duration::from_secs(60),
            format!("100 Hamiltonians on 6-12 qubits ({total_terms} terms), 100-gate circuits, {mismatches} mismatches, {}", secs(el)),
        )
    }

    fn growth_ceilings(&mut self) -> Verdict {
        let mut notes = Vec::new();
        let mut ok = true;
        for (n, expect) in [(6usize, "4096"), (8, "65536"), (12, "16777216")] {
            let h = PauliSum::from_labels(n, &[("Z0 Z1", 1.0), ("X0", 0.5)]).unwrap();
            let hp = write_file(&self.scratch, &format!("ceiling{n}.txt"), &write_hamiltonian(&h));
            let cp = write_file(&self.scratch, &format!("ceiling{n}.json"), r#"[{"kind": "Rz", "targets": [0], "angle": 0.3}]"#);
            let out = cli().args(["stats", "--hamiltonian"]).arg(&hp).arg("--circuit").arg(&cp).output().unwrap();
            let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
            let got = v["result"]["ceiling"].as_str().unwrap_or("").to_string();
            ok &= out.status.success() && got == expect;
            notes.push(format!("Nq={n}: {got}"));
        }
        // exhaustive single-qubit rotations on every Pauli string and every pair of strings
        let mut cases = 0;
        let mut violations = 0;
        for n in 1..=3usize {
            let strings: Vec<PauliString> = (0..1u64 << n)
                .flat_map(|x| (0..1u64 << n).map(move |z| PauliString::new(x, z)))
                .collect();
            let mut hams: Vec<PauliSum> = strings.iter().map(|s| PauliSum::from_pairs(n, [(*s, c(1.0, 0.0))]).unwrap()).collect();
            if n <= 2 {
                for i in 0..strings.len() {
                    for j in i + 1..strings.len() {
                        hams.push(PauliSum::from_pairs(n, [(strings[i], c(1.0, 0.0)), (strings[j], c(-0.7, 0.0))]).unwrap());
                    }
                }
            }
            for h in &hams {
                for q in 0..n {
                    for p in [Pauli::X, Pauli::Y, Pauli::Z] {
                        let g = Gate::rotation(PauliString::single(q, p), 0.37);
                        let folded = fold_gate(h, &g).unwrap();
                        cases += 1;
                        if folded.cardinality() > 2 * h.cardinality() {
                            violations += 1;
                        }
                    }
                }
            }
        }
        ok &= violations == 0;
        check(ok, format!("stats ceilings {}; |H~| <= 2|H| on {cases} exhaustive cases, {violations} violations", notes.join(", ")))
    }

    fn power_method(&mut self) -> Verdict {
        let t = Instant::now();
        let mut rng = ChaCha8Rng::seed_from_u64(1004);
        let p = Partition::parse("0-1;2-3").unwrap();
        let cfg = PowerMethodConfig { tol: 1e-12, ..Default::default() };
        let mut worst = 0.0f64;
        let mut unconverged = 0;
        for _ in 0..50 {
            let terms = rng.gen_range(2..12);
            let ha = random_hamiltonian(&mut rng, 2, terms);
            let terms = rng.gen_range(2..12);
            let hb = random_hamiltonian(&mut rng, 2, terms);
            let target = lowest_eigenvalue(&hamiltonian(&ha)) + lowest_eigenvalue(&hamiltonian(&hb));
            let mut pairs: Vec<(PauliString, Complex64)> = ha.iter().map(|(s, c)| (s.embed(&[0, 1]), *c)).collect();
            pairs.extend(hb.iter().map(|(s, c)| (s.embed(&[2, 3]), *c)));
            let h = PauliSum::from_pairs(4, pairs).unwrap();
            let r = power_method(&h, &p, &cfg).unwrap();
            unconverged += usize::from(!r.converged);
            worst = worst.max((r.energy - target).abs());
        }
        let b = power_method(&bell(), &Partition::parse("0;1").unwrap(), &cfg).unwrap();
        let bell_err = (b.energy + 1.0).abs();
        let el = t.elapsed();
        check(
            worst < 1e-6 && bell_err < 1e-6 && unconverged == 0 && el < Duration::from_secs(30),
            format!(
                "50 separable 2+2 cases max error {worst:.2e} ({unconverged} unconverged); Bell {:.9} (error {bell_err:.1e}); {}",
                b.energy,
                secs(el)
            ),
        )
    }

    fn bell_pipeline(&mut self) -> Verdict {
        let t = Instant::now();
        let hp = write_file(&self.scratch, "bell.txt", &write_hamiltonian(&bell()));
        let out = cli()
            .args(["pipeline", "--hamiltonian"])
            .arg(&hp)
            .args(["--clusters", "0;1", "--populations", "12", "--seed", "7"])
            .output()
            .unwrap();
        let el = t.elapsed();
        if !out.status.success() {
            return Verdict::Fail(format!("cliffold pipeline exited with {}", out.status));
        }
        let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
        let summary: PipelineSummary = serde_json::from_value(v["result"].clone()).unwrap();
        self.record_pipeline("bell (cli)", &summary);
        let e = summary.e_ncliff.unwrap_or(f64::NAN);
        let e_cliff = summary.e_cliff.unwrap_or(f64::NAN);
        check(
            (e_cliff + 2.0).abs() < 1e-6 && (e + 2.0).abs() < 1e-6 && el < Duration::from_secs(60),
            format!("12 populations, seed 7: E_ref {:?}, E_cliff {e_cliff:.9}, {}", summary.e_ref, secs(el)),
        )
    }

    fn permutation_recovery(&mut self) -> Verdict {
        let mut rng = ChaCha8Rng::seed_from_u64(1006);
        let ha = random_hamiltonian(&mut rng, 2, 10);
        let hb = random_hamiltonian(&mut rng, 2, 10);
        let target = lowest_eigenvalue(&hamiltonian(&ha)) + lowest_eigenvalue(&hamiltonian(&hb));
        // h_A on {0,2} and h_B on {1,3}, against clusters {0,1} and {2,3}
        let mut pairs: Vec<(PauliString, Complex64)> = ha.iter().map(|(s, c)| (s.embed(&[0, 2]), *c)).collect();
        pairs.extend(hb.iter().map(|(s, c)| (s.embed(&[1, 3]), *c)));
        let h = PauliSum::from_pairs(4, pairs).unwrap();
        let p = Partition::parse("0-1;2-3").unwrap();
        let cfg = GAConfig { seed: 2, ..Default::default() };
        let r = run_search(&h, &p, &cfg).unwrap();
        let swaps = r.circuit.gates.iter().filter(|g| matches!(g, Gate::Swap(..))).count();
        check(
            (r.energy - target).abs() < 1e-6,
            format!(
                "E_ref {:.6}, searched {:.9}, product optimum {target:.9}, {swaps} SWAP(s) in the circuit",
                r.e_ref, r.energy
            ),
        )
    }

    fn near_clifford(&mut self) -> Verdict {
        let h = tfim();
        let p = Partition::parse("0;1").unwrap();
        let cfg = PipelineConfig { ga: GAConfig { seed: 5, ..Default::default() }, ..Default::default() };
        let out = run_pipeline(&h, &p, &cfg);
        let s = out.summary.clone();
        self.record_pipeline("transverse field", &s);
        let (Some(e_cliff), Some(e_ncliff), Some(e_exact)) = (s.e_cliff, s.e_ncliff, s.e_exact) else {
            return Verdict::Fail(format!("pipeline stages failed: {:?}", s.stage_errors));
        };
        // dense check of the returned near-Clifford energy
        let nc = out.near_clifford.as_ref().unwrap();
        let mut psi = nc.state.to_dense();
        apply_circuit_dense(&mut psi, &nc.circuit).unwrap();
        let dense = dense_expectation(&h, &psi).unwrap();
        let never_above = e_ncliff <= e_cliff + 1e-12 && (dense - e_ncliff).abs() < 1e-9;
        let gap = e_cliff - e_ncliff;
        let detail = format!(
            "E_cliff {e_cliff:.9}, E_ncliff {e_ncliff:.9} (dense {dense:.9}), E_exact {e_exact:.9}, gap {gap:.1e}"
        );
        if gap > 1e-4 && never_above {
            return Verdict::Pass(detail);
        }
        // A single CX maps Z0Z1 -> Z1, X0 -> X0X1, X1 -> X1, leaving a one-qubit
        // problem whose product optimum is already the exact ground energy.
        let cx = Circuit::new(2, vec![Gate::CX { control: 0, target: 1 }]).unwrap();
        let cx_energy = evaluate_candidate(&h, &cx, &p, &cfg.ga.reference.with_tol(1e-12), None).unwrap().energy;
        let reason_holds = (e_cliff - e_exact).abs() < 1e-9 && (cx_energy - e_exact).abs() < 1e-9 && never_above;
        if reason_holds {
            Verdict::Unattainable(format!(
                "{detail}; unattainable: Clifford optimum is already exact (CX alone gives {cx_energy:.9}), no gap to close"
            ))
        } else {
            Verdict::Fail(detail)
        }
    }

    fn near_clifford_supplement(&mut self) -> Verdict {
        // same model plus a longitudinal field, pool restricted to excitation templates
        let h = PauliSum::from_labels(2, &[("Z0 Z1", -1.0), ("X0", -0.5), ("X1", -0.5), ("Z0", -0.2)]).unwrap();
        let p = Partition::parse("0;1").unwrap();
        let cfg = PipelineConfig {
            ga: GAConfig { pool: vec![PoolKind::Exc1], seed: 7, ..Default::default() },
            ..Default::default()
        };
        let out = run_pipeline(&h, &p, &cfg);
        let s = out.summary.clone();
        self.record_pipeline("tilted field, excitation pool", &s);
        let (Some(e_cliff), Some(e_ncliff), Some(e_exact)) = (s.e_cliff, s.e_ncliff, s.e_exact) else {
            return Verdict::Fail(format!("pipeline stages failed: {:?}", s.stage_errors));
        };
        let nc = out.near_clifford.as_ref().unwrap();
        let mut psi = nc.state.to_dense();
        apply_circuit_dense(&mut psi, &nc.circuit).unwrap();
        let dense = dense_expectation(&h, &psi).unwrap();
        let gap = e_cliff - e_ncliff;
        check(
            gap > 1e-4 && (dense - e_ncliff).abs() < 1e-9 && e_ncliff >= e_exact - 1e-9,
            format!("E_cliff {e_cliff:.9}, E_ncliff {e_ncliff:.9} (dense {dense:.9}), E_exact {e_exact:.9}, gap {gap:.1e}"),
        )
    }

    fn twelve_qubit_pipeline(&mut self) -> Verdict {
        let t = Instant::now();
        let mut rng = ChaCha8Rng::seed_from_u64(1012);
        let n = 12;
        let mut pairs: Vec<(PauliString, Complex64)> = Vec::new();
        for q in 0..n {
            for p in [Pauli::X, Pauli::Z] {
                pairs.push((PauliString::single(q, p), c(rng.gen_range(-1.0..1.0), 0.0)));
            }
        }
        for _ in 0..24 {
            let q = distinct(&mut rng, n, 2);
            // couplings with an even number of Y factors keep the matrix real,
            // which puts the 4096-dimensional diagonalization on the real solver
            let couplings = [(Pauli::X, Pauli::X), (Pauli::Y, Pauli::Y), (Pauli::Z, Pauli::Z), (Pauli::X, Pauli::Z), (Pauli::Z, Pauli::X)];
            let (a, b) = couplings[rng.gen_range(0..couplings.len())];
            let s = PauliString::from_ops([(q[0], a), (q[1], b)]);
            pairs.push((s, c(rng.gen_range(-1.0..1.0), 0.0)));
        }
        let h = PauliSum::from_pairs(n, pairs).unwrap();
        let p = Partition::parse("0-5;6-11").unwrap();
        let ga = GAConfig { n_populations: 2, n_offspring: 3, max_iter: 2, seed: 3, ..Default::default() };
        let cfg = PipelineConfig { ga, near_clifford: NearCliffordConfig { max_rounds: 1, ..Default::default() } };
        let out = run_pipeline(&h, &p, &cfg);
        let s = out.summary;
        self.record_pipeline("12-qubit 2-local", &s);
        let el = t.elapsed();
        check(
            s.stage_errors.is_empty() && s.e_exact.is_some() && s.fidelities.len() > 1,
            format!(
                "{} terms: E_ref {:.6?}, E_cliff {:.6?}, E_ncliff {:.6?}, E_exact {:.6?}, {}",
                h.cardinality(),
                s.e_ref,
                s.e_cliff,
                s.e_ncliff,
                s.e_exact,
                secs(el)
            ),
        )
    }

    fn monotone_chain(&mut self) -> Verdict {
        let bad: Vec<&str> = self.pipelines.iter().filter(|(_, s)| !s.is_monotone(1e-9)).map(|(n, _)| n.as_str()).collect();
        let names: Vec<&str> = self.pipelines.iter().map(|(n, _)| n.as_str()).collect();
        check(bad.is_empty(), format!("E_exact <= E_ncliff <= E_cliff <= E_ref on {} runs {names:?}; violations {bad:?}", names.len()))
    }

    fn fidelity(&mut self) -> Verdict {
        let mut rng = ChaCha8Rng::seed_from_u64(1008);
        let mut worst_sum = 0.0f64;
        let mut out_of_range = 0;
        let mut cases = 0;
        let mut tally = |rows: &[cliffold::simulator::GroupFidelity]| {
            let total: f64 = rows.iter().map(|r| r.fidelity).sum();
            worst_sum = worst_sum.max((total - 1.0).abs());
            out_of_range += rows.iter().filter(|r| !(0.0..=1.0).contains(&r.fidelity)).count();
            cases += 1;
        };
        for n in 2..=8usize {
            for _ in 0..4 {
                let h = random_hamiltonian(&mut rng, n, 3 * n);
                let spectrum = exact_ground(&h).unwrap();
                let split = rng.gen_range(1..n);
                let p = Partition::new(vec![(0..split).collect(), (split..n).collect()]).unwrap();
                let s = ClusterState::random(&p, &mut rng);
                let gates: Vec<Gate> = (0..10).map(|i| random_gate(&mut rng, n, i)).collect();
                let m = Circuit::new(n, gates).unwrap();
                tally(&fidelity_table(&s, &m, &spectrum).unwrap());
            }
        }
        for (_, s) in &self.pipelines {
            if !s.fidelities.is_empty() {
                tally(&s.fidelities);
            }
        }
        // Bell pipeline through the library, fixed seed
        let cfg = PipelineConfig { ga: GAConfig { seed: 11, ..Default::default() }, ..Default::default() };
        let bell_run = run_pipeline(&bell(), &Partition::parse("0;1").unwrap(), &cfg).summary;
        let ground = bell_run.ground_fidelity.unwrap_or(f64::NAN);
        tally(&bell_run.fidelities);
        self.record_pipeline("bell (library)", &bell_run);
        check(
            worst_sum < 1e-10 && out_of_range == 0 && (ground - 1.0).abs() < 1e-9,
            format!(
                "{cases} tables up to 12 qubits, max |sum - 1| {worst_sum:.1e}, {out_of_range} values outside [0,1]; Bell ground group {ground:.12}"
            ),
        )
    }

    fn determinism(&mut self) -> Verdict {
        let h = PauliSum::from_labels(4, &[("Z0 Z2", -1.0), ("X0", -0.4), ("X2", -0.6), ("Y1 Y3", 0.7), ("Z1", 0.3), ("X1 X2", 0.25)]).unwrap();
        let hp = write_file(&self.scratch, "determinism.txt", &write_hamiltonian(&h));
        let first = self.scratch.join("det-first");
        let out = cli()
            .args(["pipeline", "--hamiltonian"])
            .arg(&hp)
            .args(["--clusters", "0-1;2-3", "--populations", "6", "--max-iter", "6", "--seed", "21", "--out"])
            .arg(&first)
            .output()
            .unwrap();
        if !out.status.success() {
            return Verdict::Fail(format!("pipeline exited with {}", out.status));
        }
        let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
        if let Ok(s) = serde_json::from_value::<PipelineSummary>(v["result"].clone()) {
            self.record_pipeline("determinism run", &s);
        }
        let mut notes = Vec::new();
        let mut ok = true;
        for threads in ["1", "8"] {
            let dir = self.scratch.join(format!("det-{threads}"));
            let r = cli()
                .env("CLIFFOLD_THREADS", threads)
                .arg("replay")
                .arg("--manifest")
                .arg(first.join("manifest.json"))
                .arg("--out")
                .arg(&dir)
                .output()
                .unwrap();
            let mut identical = r.status.success();
            for entry in std::fs::read_dir(&first).unwrap() {
                let name = entry.unwrap().file_name();
                if name == "manifest.json" {
                    continue;
                }
                let a = std::fs::read(first.join(&name)).unwrap();
                let b = std::fs::read(dir.join(&name)).unwrap_or_default();
                identical &= a == b;
            }
            ok &= identical;
            notes.push(format!("{threads} thread(s): {}", if identical { "identical" } else { "DIFFERENT" }));
        }
        check(ok, format!("pipeline replayed from its manifest, every output file compared byte for byte; {}", notes.join(", ")))
    }
}

/// Criteria that cannot pass as stated; each carries its re-checked reason.
const KNOWN_UNATTAINABLE: &[&str] = &["near-clifford improvement (2-site transverse field)"];

fn main() {
    let scratch = tempfile::tempdir().unwrap();
    let mut suite = Suite {
        lines: Vec::new(),
        pipelines: Vec::new(),
        scratch: scratch.path().to_path_buf(),
    };
    type Criterion = (&'static str, fn(&mut Suite) -> Verdict);
    let criteria: [Criterion; 12] = [
        ("folding oracle", Suite::folding_oracle),
        ("clifford cardinality invariance", Suite::clifford_cardinality),
        ("growth ceilings", Suite::growth_ceilings),
        ("power method", Suite::power_method),
        ("bell pipeline recovers -2", Suite::bell_pipeline),
        ("permutation recovery", Suite::permutation_recovery),
        ("near-clifford improvement (2-site transverse field)", Suite::near_clifford),
        ("near-clifford improvement (supplementary: tilted field)", Suite::near_clifford_supplement),
        ("12-qubit pipeline completes", Suite::twelve_qubit_pipeline),
        ("fidelity completeness", Suite::fidelity),
        ("determinism at 1 and 8 threads", Suite::determinism),
        ("monotone energy chain on every pipeline run", Suite::monotone_chain),
    ];
    println!("\nacceptance: {} criteria", criteria.len());
    let mut unexpected = 0;
    for (name, run) in criteria {
        let verdict = run(&mut suite);
        let (tag, detail) = match &verdict {
            Verdict::Pass(d) => ("PASS", d),
            Verdict::Fail(d) => {
                unexpected += 1;
                ("FAIL", d)
            }
            Verdict::Unattainable(d) => {
                assert!(KNOWN_UNATTAINABLE.contains(&name), "{name} is not documented as unattainable");
                ("FAIL", d)
            }
        };
        println!("{tag} {name}: {detail}");
        suite.lines.push((name.to_string(), verdict));
    }
    let passed = suite.lines.iter().filter(|(_, v)| matches!(v, Verdict::Pass(_))).count();
    let documented = suite.lines.iter().filter(|(_, v)| matches!(v, Verdict::Unattainable(_))).count();
    println!("acceptance: {passed} passed, {unexpected} failed, {documented} failed as documented (unattainable)\n");
    if unexpected > 0 {
        std::process::exit(1);
    }
}
