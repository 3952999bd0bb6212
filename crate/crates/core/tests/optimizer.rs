mod common;

use std::f64::consts::FRAC_PI_2;

use cliffold::circuits::{Circuit, Element, Gate, Partition, PoolConfig, PoolKind};
use cliffold::folding::fold;
use cliffold::optimizer::{
    eligible_gates, evaluate_candidate, near_clifford_sweep, propose_mutation, run_search, select_offspring, Candidate,
    GAConfig, Mutation, MutationWeights, NearCliffordConfig, PopulationState, ReferenceBackend,
};
use cliffold::pauli::{PauliString, PauliSum};
use cliffold::reference::power_method;
use cliffold::simulator::{exact_ground, ClusterState};
use common::*;
use num_complex::Complex64;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn bell() -> PauliSum {
    PauliSum::from_labels(2, &[("X0 X1", -1.0), ("Z0 Z1", -1.0)]).unwrap()
}

fn tfim() -> PauliSum {
    PauliSum::from_labels(2, &[("Z0 Z1", -1.0), ("X0", -0.5), ("X1", -0.5)]).unwrap()
}

fn singletons() -> Partition {
    Partition::parse("0;1").unwrap()
}

#[test]
fn delete_on_empty_genome_adds() {
    let mut rng = ChaCha8Rng::seed_from_u64(41);
    let w = MutationWeights { add: 0.0, change: 0.0, delete: 1.0, rearrange: 0.0 };
    let (g, kind) = propose_mutation(&[], &w, &PoolConfig::default(), &singletons(), &mut rng).unwrap();
    assert_eq!((g.len(), kind), (1, Mutation::Add));
}

#[test]
fn pure_add_weights_grow_by_one() {
    let mut rng = ChaCha8Rng::seed_from_u64(42);
    let w = MutationWeights { add: 1.0, change: 0.0, delete: 0.0, rearrange: 0.0 };
    let mut genome = Vec::new();
    for len in 1..20 {
        genome = propose_mutation(&genome, &w, &PoolConfig::default(), &singletons(), &mut rng).unwrap().0;
        assert_eq!(genome.len(), len);
    }
}

#[test]
fn add_fraction_decreases_over_iterations() {
    let base = MutationWeights::default();
    let p = Partition::parse("0-1;2-3").unwrap();
    let genome = vec![Element::Gate(Gate::H(0)), Element::Gate(Gate::CX { control: 0, target: 2 })];
    let frac = |iteration: usize| {
        let mut rng = ChaCha8Rng::seed_from_u64(43);
        let w = base.annealed(iteration, 20, 0.15);
        let adds = (0..1000)
            .filter(|_| propose_mutation(&genome, &w, &PoolConfig::default(), &p, &mut rng).unwrap().1 == Mutation::Add)
            .count();
        adds as f64 / 1000.0
    };
    let (early, late) = (frac(0), frac(15));
    assert!(early > late, "{early} vs {late}");
    let w = base.annealed(20, 20, 0.15);
    assert!((w.add - 0.15).abs() < 1e-12);
    w.validate().unwrap();
}

#[test]
fn evaluation_examples() {
    let p = singletons();
    let backend = ReferenceBackend::default();
    let h = bell();
    let e_ref = power_method(&h, &p, &Default::default()).unwrap().energy;
    let empty = evaluate_candidate(&h, &Circuit::empty(2), &p, &backend, None).unwrap();
    assert_eq!(empty.energy, e_ref);
    let m = Circuit::new(2, vec![Gate::H(0), Gate::CX { control: 0, target: 1 }]).unwrap();
    let e = evaluate_candidate(&h, &m, &p, &backend, None).unwrap();
    assert!((e.energy + 2.0).abs() < 1e-9);
    assert_eq!(e.cardinality, h.cardinality());
}

fn parent(energy: f64, temperature: f64) -> PopulationState {
    PopulationState::new(vec![Element::Gate(Gate::H(0))], energy, ClusterState::zero(&singletons()), temperature)
}

fn child(energy: f64) -> Candidate {
    Candidate { genome: vec![Element::Gate(Gate::X(1))], energy, state: ClusterState::zero(&singletons()) }
}

#[test]
fn selection_rules() {
    let cfg = GAConfig::default();
    let mut rng = ChaCha8Rng::seed_from_u64(44);
    let mut p = parent(-1.0, 0.02);
    p.patience = 2;
    let p = select_offspring(p, vec![child(-1.1)], -1.0, &cfg, &mut rng);
    assert_eq!((p.energy, p.patience, p.best_energy), (-1.1, 0, -1.1));
    assert_eq!(p.snapshot, vec![Element::Gate(Gate::X(1))]);
    assert!((p.temperature - 0.018).abs() < 1e-15);

    // above the baseline: rejected however hot
    let q = select_offspring(parent(-1.0, 1e9), vec![child(-0.5)], -0.9, &cfg, &mut rng);
    assert_eq!((q.energy, q.patience), (-1.0, 1));
}

#[test]
fn uphill_acceptance_follows_boltzmann_factor() {
    let cfg = GAConfig::default();
    let mut rng = ChaCha8Rng::seed_from_u64(45);
    let trials = 10_000;
    let accepted = (0..trials)
        .filter(|_| {
            let p = select_offspring(parent(-1.0, 0.01), vec![child(-0.99)], 0.0, &cfg, &mut rng);
            p.energy == -0.99
        })
        .count();
    let freq = accepted as f64 / trials as f64;
    assert!((freq - (-1f64).exp()).abs() < 0.02, "{freq}");
}

#[test]
fn patience_rolls_back_to_snapshot() {
    let cfg = GAConfig { patience_limit: 2, ..Default::default() };
    let mut rng = ChaCha8Rng::seed_from_u64(46);
    let mut p = parent(-1.0, 1e9);
    // hot enough that equal-or-worse children are always taken
    p = select_offspring(p, vec![child(-0.95)], 0.0, &cfg, &mut rng);
    assert_eq!((p.energy, p.patience), (-0.95, 1));
    p = select_offspring(p, vec![child(-0.9)], 0.0, &cfg, &mut rng);
    assert_eq!((p.energy, p.patience, p.genome.clone()), (-1.0, 0, vec![Element::Gate(Gate::H(0))]));
}

#[test]
fn separable_hamiltonian_search_returns_reference() {
    let h = PauliSum::from_labels(2, &[("Z0", 1.0), ("X1", -0.5)]).unwrap();
    let cfg = GAConfig { n_populations: 4, max_iter: 5, seed: 1, ..Default::default() };
    let r = run_search(&h, &singletons(), &cfg).unwrap();
    assert!((r.energy - r.e_ref).abs() < 1e-8);
    assert!((r.e_ref + 1.5).abs() < 1e-8);
}

#[test]
fn bell_search_reaches_exact_ground() {
    let cfg = GAConfig { n_populations: 8, seed: 3, ..Default::default() };
    let r = run_search(&bell(), &singletons(), &cfg).unwrap();
    assert!((r.energy + 2.0).abs() < 1e-6, "{}", r.energy);
    assert!((r.e_ref + 1.0).abs() < 1e-6);
    assert!(r.circuit.is_clifford());
}

#[test]
fn transverse_field_search_improves_on_reference() {
    let h = tfim();
    let cfg = GAConfig { seed: 5, ..Default::default() };
    let r = run_search(&h, &singletons(), &cfg).unwrap();
    let exact = exact_ground(&h).unwrap().ground_energy();
    assert!(r.energy < r.e_ref - 1e-6);
    assert!(r.energy >= exact - 1e-9);
}

#[test]
fn search_is_thread_count_independent() {
    let h = PauliSum::from_labels(4, &[("Z0 Z2", -1.0), ("X0", -0.4), ("X2", -0.6), ("Y1 Y3", 0.7), ("Z1", 0.3)]).unwrap();
    let p = Partition::parse("0-1;2-3").unwrap();
    let cfg = GAConfig { n_populations: 4, n_offspring: 4, max_iter: 6, seed: 9, ..Default::default() };
    let run = |threads| {
        let pool = rayon::ThreadPoolBuilder::new().num_threads(threads).build().unwrap();
        pool.install(|| run_search(&h, &p, &cfg).unwrap())
    };
    let (a, b) = (run(1), run(4));
    assert_eq!(a.energy.to_bits(), b.energy.to_bits());
    assert_eq!(a.circuit, b.circuit);
    assert_eq!(a.trace, b.trace);
}

#[test]
fn swap_recovers_permuted_clustering() {
    let mut rng = ChaCha8Rng::seed_from_u64(47);
    let ha = random_hamiltonian(&mut rng, 2, 10);
    let hb = random_hamiltonian(&mut rng, 2, 10);
    let target = lowest_eigenvalue(&hamiltonian(&ha)) + lowest_eigenvalue(&hamiltonian(&hb));
    // h_A lives on qubits {0,2}, h_B on {1,3}; the partition pairs {0,1} and {2,3}
    let mut pairs: Vec<(PauliString, Complex64)> = ha.iter().map(|(s, c)| (s.embed(&[0, 2]), *c)).collect();
    pairs.extend(hb.iter().map(|(s, c)| (s.embed(&[1, 3]), *c)));
    let h = PauliSum::from_pairs(4, pairs).unwrap();
    let p = Partition::parse("0-1;2-3").unwrap();
    let cfg = GAConfig { seed: 2, ..Default::default() };
    let r = run_search(&h, &p, &cfg).unwrap();
    assert!((r.energy - target).abs() < 1e-6, "{} vs {target}", r.energy);
}

#[test]
fn sweep_without_eligible_gates_is_a_no_op() {
    let h = bell();
    let p = singletons();
    let m = Circuit::new(2, vec![Gate::CX { control: 0, target: 1 }]).unwrap();
    assert!(eligible_gates(&m).is_empty());
    let e = evaluate_candidate(&h, &m, &p, &ReferenceBackend::default(), None).unwrap();
    let r = near_clifford_sweep(&h, &m, &p, (&e.state, e.energy), &NearCliffordConfig::default()).unwrap();
    assert_eq!(r.circuit, m);
    assert_eq!(r.energy, e.energy);
    assert!(r.gate_index.is_none());
}

#[test]
fn sweep_finds_better_central_angle() {
    // exp(−iτ/2·X0Y1) acting on |00⟩ rotates into the Bell-like ground space of
    // h = −X0X1 − Z0Z1 + 0.3·Z0: no Clifford angle is optimal.
    let h = PauliSum::from_labels(2, &[("X0 X1", -1.0), ("Z0 Z1", -1.0), ("Z0", 0.3), ("X1", 0.2)]).unwrap();
    let p = singletons();
    let m = cliffold::circuits::expand_excitation_template(
        2,
        cliffold::circuits::ExcitationKind::Exc1,
        &[0, 1],
        &[cliffold::circuits::Wrapper::Rx, cliffold::circuits::Wrapper::None],
        FRAC_PI_2,
        true,
    )
    .unwrap();
    let e = evaluate_candidate(&h, &m, &p, &ReferenceBackend::default(), None).unwrap();
    let r = near_clifford_sweep(&h, &m, &p, (&e.state, e.energy), &NearCliffordConfig::default()).unwrap();
    let exact = exact_ground(&h).unwrap().ground_energy();
    assert!(r.energy <= e.energy + 1e-12);
    assert!(r.energy >= exact - 1e-9);
    // the reported energy is the folded product energy of the returned circuit
    let check = cliffold::simulator::expectation(&fold(&h, &r.circuit).unwrap(), &r.state).unwrap();
    assert!((check - r.energy).abs() < 1e-10);
    println!("clifford {} near {} exact {}", e.energy, r.energy, exact);
}

#[test]
fn cross_cluster_only_keeps_entanglers_across_clusters() {
    let p = Partition::parse("0-1;2-3").unwrap();
    let h = PauliSum::from_labels(4, &[("X1 X2", -1.0), ("Z1 Z2", -1.0), ("Z0", 0.5)]).unwrap();
    let cfg = GAConfig {
        n_populations: 4,
        max_iter: 8,
        cross_cluster_only: true,
        pool: vec![PoolKind::CX, PoolKind::CZ, PoolKind::Swap, PoolKind::H],
        seed: 4,
        ..Default::default()
    };
    let r = run_search(&h, &p, &cfg).unwrap();
    for g in &r.circuit.gates {
        if g.arity() > 1 {
            assert!(p.clusters_touched(g.support_mask()) >= 2, "{g}");
        }
    }
    let one = Partition::parse("0-3").unwrap();
    assert!(run_search(&h, &one, &cfg).is_err());
}
