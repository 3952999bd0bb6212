use std::fmt::Write as _;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::circuits::{sample_pool_gate, Circuit, Partition, PoolConfig};
use crate::error::{ensure_same, Result};
use crate::pauli::PauliSum;
use crate::simulator::ClusterState;

use super::evaluate::{evaluate_candidate, solve_reference};
use super::mutation::{genome_circuit, propose_mutation, Genome};
use super::GAConfig;

/// Energies closer than this count as equal.
pub(super) const IMPROVEMENT_EPS: f64 = 1e-12;

/// One evolving population: current circuit, rollback snapshot and annealing state.
#[derive(Debug, Clone)]
pub struct PopulationState {
    pub genome: Genome,
    pub energy: f64,
    pub state: ClusterState,
    pub best_energy: f64,
    pub patience: usize,
    /// Best circuit seen so far; the rollback target.
    pub snapshot: Genome,
    pub snapshot_state: ClusterState,
    pub temperature: f64,
}

impl PopulationState {
    pub fn new(genome: Genome, energy: f64, state: ClusterState, temperature: f64) -> Self {
        Self {
            snapshot: genome.clone(),
            snapshot_state: state.clone(),
            genome,
            energy,
            state,
            best_energy: energy,
            patience: 0,
            temperature,
        }
    }

    pub fn circuit(&self, n_qubits: usize) -> Result<Circuit> {
        genome_circuit(n_qubits, &self.genome)
    }
}

/// An evaluated child.
#[derive(Debug, Clone)]
pub struct Candidate {
    pub genome: Genome,
    pub energy: f64,
    pub state: ClusterState,
}

/// Pick the offspring to continue with.
///
/// Children above the reference baseline `e_ref` are discarded outright. The
/// best remaining child replaces the parent if it is lower; otherwise it is
/// accepted with probability `exp(−ΔE/T)`. Any generation without an
/// improvement costs one unit of patience; running out of patience rolls
/// the population back to its snapshot. The temperature decays every call.
pub fn select_offspring<R: Rng + ?Sized>(
    mut parent: PopulationState,
    children: Vec<Candidate>,
    e_ref: f64,
    cfg: &GAConfig,
    rng: &mut R,
) -> PopulationState {
    let best = children
        .into_iter()
        .filter(|c| c.energy <= e_ref)
        .fold(None::<Candidate>, |acc, c| match acc {
            Some(a) if a.energy <= c.energy => Some(a),
            _ => Some(c),
        });
    let mut improved = false;
    if let Some(child) = best {
        let delta = child.energy - parent.energy;
        let accept = if delta < -IMPROVEMENT_EPS {
            improved = true;
            true
        } else {
            rng.gen::<f64>() < (-delta.max(0.0) / parent.temperature).exp()
        };
        if accept {
            parent.genome = child.genome;
            parent.energy = child.energy;
            parent.state = child.state;
        }
    }
    if improved {
        parent.patience = 0;
    } else {
        parent.patience += 1;
    }
    if parent.energy < parent.best_energy - IMPROVEMENT_EPS {
        parent.best_energy = parent.energy;
        parent.snapshot = parent.genome.clone();
        parent.snapshot_state = parent.state.clone();
    }
    if parent.patience >= cfg.patience_limit {
        parent.genome = parent.snapshot.clone();
        parent.state = parent.snapshot_state.clone();
        parent.energy = parent.best_energy;
        parent.patience = 0;
    }
    parent.temperature *= cfg.temperature_decay;
    parent
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct TraceRow {
    pub generation: usize,
    pub population: usize,
    pub energy: f64,
}

/// `generation,population,energy`
pub fn trace_csv(rows: &[TraceRow]) -> String {
    let mut out = String::from("generation,population,energy\n");
    for r in rows {
        let _ = writeln!(out, "{},{},{:?}", r.generation, r.population, r.energy);
    }
    out
}

#[derive(Debug, Clone)]
pub struct SearchResult {
    pub genome: Genome,
    pub circuit: Circuit,
    pub state: ClusterState,
    pub energy: f64,
    /// Reference energy of the unfolded Hamiltonian (empty circuit).
    pub e_ref: f64,
    pub reference_state: ClusterState,
    pub generations: usize,
    pub trace: Vec<TraceRow>,
}

fn population_rng(seed: u64, population: usize) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(population as u64 + 1);
    rng
}

struct Worker {
    pop: PopulationState,
    rng: ChaCha8Rng,
}

fn pool_config(cfg: &GAConfig) -> PoolConfig {
    PoolConfig {
        kinds: cfg.pool.clone(),
        cross_cluster: cfg.cross_cluster_only,
    }
}

fn generation_step(
    w: &mut Worker,
    h: &PauliSum,
    partition: &Partition,
    cfg: &GAConfig,
    e_ref: f64,
    generation: usize,
) -> Result<()> {
    let pool = pool_config(cfg);
    let weights = cfg
        .mutation_weights
        .annealed(generation, cfg.max_iter, cfg.add_weight_final);
    let backend = cfg.reference.with_tol(cfg.search_tol);
    let mut children = Vec::with_capacity(cfg.n_offspring);
    for _ in 0..cfg.n_offspring {
        let (genome, _) = propose_mutation(&w.pop.genome, &weights, &pool, partition, &mut w.rng)?;
        let circuit = genome_circuit(partition.n_qubits(), &genome)?;
        let eval = evaluate_candidate(
            h,
            &circuit,
            partition,
            &backend.with_seed(w.rng.gen()),
            Some(&w.pop.state),
        )?;
        children.push(Candidate {
            genome,
            energy: eval.energy,
            state: eval.state,
        });
    }
    let pop = w.pop.clone();
    w.pop = select_offspring(pop, children, e_ref, cfg, &mut w.rng);
    Ok(())
}

/// Genetic search for a virtual circuit minimizing the folded reference energy.
///
/// Returns the lowest energy over all populations after re-solving the
/// winner at the backend's own (tight) tolerance. If no circuit beats the
/// plain reference, the empty circuit is returned with the reference energy.
pub fn run_search(h: &PauliSum, partition: &Partition, cfg: &GAConfig) -> Result<SearchResult> {
    ensure_same(h.n_qubits(), partition.n_qubits())?;
    cfg.validate()?;
    let n = partition.n_qubits();
    let pool = pool_config(cfg);
    let (reference_state, e_ref) = solve_reference(h, partition, &cfg.reference, None)?;

    let init: Vec<Result<Worker>> = (0..cfg.n_populations)
        .into_par_iter()
        .map(|p| {
            let mut rng = population_rng(cfg.seed, p);
            let mut genome = Vec::with_capacity(cfg.initial_elements);
            for _ in 0..cfg.initial_elements {
                genome.push(sample_pool_gate(&pool, partition, &mut rng)?);
            }
            let circuit = genome_circuit(n, &genome)?;
            let backend = cfg.reference.with_tol(cfg.search_tol).with_seed(rng.gen());
            let eval = evaluate_candidate(h, &circuit, partition, &backend, Some(&reference_state))?;
            // A start above the baseline begins from the empty circuit instead.
            let pop = if eval.energy <= e_ref {
                PopulationState::new(genome, eval.energy, eval.state, cfg.temperature_initial)
            } else {
                PopulationState::new(Vec::new(), e_ref, reference_state.clone(), cfg.temperature_initial)
            };
            Ok(Worker { pop, rng })
        })
        .collect();
    let mut workers = init.into_iter().collect::<Result<Vec<_>>>()?;

    let mut trace: Vec<TraceRow> = workers
        .iter()
        .enumerate()
        .map(|(p, w)| TraceRow {
            generation: 0,
            population: p,
            energy: w.pop.energy,
        })
        .collect();
    let global_best = |ws: &[Worker]| ws.iter().map(|w| w.pop.best_energy).fold(f64::INFINITY, f64::min);
    let mut best = global_best(&workers);
    let mut stall = 0;
    let mut generations = 0;
    for generation in 1..=cfg.max_iter {
        generations = generation;
        workers
            .par_iter_mut()
            .map(|w| generation_step(w, h, partition, cfg, e_ref, generation - 1))
            .collect::<Result<Vec<()>>>()?;
        trace.extend(workers.iter().enumerate().map(|(p, w)| TraceRow {
            generation,
            population: p,
            energy: w.pop.energy,
        }));
        let now = global_best(&workers);
        if best - now > cfg.stop_tol {
            stall = 0;
        } else {
            stall += 1;
        }
        best = best.min(now);
        if stall >= cfg.stall_generations {
            break;
        }
    }

    // lowest snapshot wins; ties go to the lower population index
    let winner = workers
        .iter()
        .enumerate()
        .fold(None::<(usize, f64)>, |acc, (i, w)| match acc {
            Some((_, e)) if e <= w.pop.best_energy => acc,
            _ => Some((i, w.pop.best_energy)),
        })
        .map(|(i, _)| &workers[i].pop)
        .expect("at least one population");
    let circuit = genome_circuit(n, &winner.snapshot)?;
    let final_eval = evaluate_candidate(h, &circuit, partition, &cfg.reference, Some(&winner.snapshot_state))?;
    if final_eval.energy < e_ref - IMPROVEMENT_EPS {
        Ok(SearchResult {
            genome: winner.snapshot.clone(),
            circuit,
            state: final_eval.state,
            energy: final_eval.energy,
            e_ref,
            reference_state,
            generations,
            trace,
        })
    } else {
        Ok(SearchResult {
            genome: Vec::new(),
            circuit: Circuit::empty(n),
            state: reference_state.clone(),
            energy: e_ref,
            e_ref,
            reference_state,
            generations,
            trace,
        })
    }
}
