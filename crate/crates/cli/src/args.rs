use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use cliffold::circuits::PoolKind;
use cliffold::optimizer::{GAConfig, MutationWeights, NearCliffordConfig, ReferenceBackend};
use cliffold::reference::{PowerMethodConfig, Shift};
use serde::{Deserialize, Serialize};

#[derive(Debug, Parser)]
#[command(name = "cliffold", version, about = "Cluster product states with folded (near-)Clifford circuits")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

/// Every subcommand that produces a result; this is what a manifest records.
#[derive(Debug, Clone, Subcommand, Serialize, Deserialize)]
#[serde(tag = "subcommand", content = "args", rename_all = "kebab-case")]
pub enum Command {
    /// Fold a circuit into a Hamiltonian.
    Fold(FoldArgs),
    /// Solve the product-state reference with the power method.
    Reference(ReferenceArgs),
    /// Genetic search for a virtual Clifford circuit.
    Optimize(OptimizeArgs),
    /// Promote one gate of a Clifford circuit to a free rotation.
    NearClifford(NearCliffordArgs),
    /// Dense spectrum of a Hamiltonian.
    Exact(ExactArgs),
    /// Ground-state fidelities of a folded product state.
    Fidelity(FidelityArgs),
    /// Term-count trace of a fold.
    Stats(StatsArgs),
    /// Grid over GA population and offspring counts.
    Sweep(SweepArgs),
    /// Reference, search, near-Clifford sweep, exact energy and fidelities.
    Pipeline(PipelineArgs),
    /// Re-run a manifest and check the result is identical.
    #[serde(skip)]
    Replay(ReplayArgs),
}

#[derive(Debug, Clone, Args, Serialize, Deserialize)]
pub struct OutArgs {
    /// Directory for result, manifest and CSV files.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, Args, Serialize, Deserialize)]
pub struct FoldArgs {
    #[arg(long)]
    pub hamiltonian: PathBuf,
    #[arg(long)]
    pub circuit: PathBuf,
    #[command(flatten)]
    #[serde(flatten)]
    pub out: OutArgs,
}

#[derive(Debug, Clone, Args, Serialize, Deserialize)]
pub struct ReferenceArgs {
    #[arg(long)]
    pub hamiltonian: PathBuf,
    /// Cluster specification such as `0-2;3-5`.
    #[arg(long)]
    pub clusters: String,
    /// Power-method shift: a number or `auto`.
    #[arg(long, default_value = "1")]
    pub gamma: Shift,
    #[arg(long, default_value_t = 1e-8)]
    pub tol: f64,
    #[arg(long, default_value_t = 10_000)]
    pub max_iter: usize,
    #[arg(long, default_value_t = 5)]
    pub restarts: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[command(flatten)]
    #[serde(flatten)]
    pub out: OutArgs,
}

impl ReferenceArgs {
    pub fn config(&self) -> PowerMethodConfig {
        PowerMethodConfig {
            gamma: self.gamma,
            tol: self.tol,
            max_iter: self.max_iter,
            seed: self.seed,
            restarts: self.restarts,
        }
    }
}

/// Reference-solver settings used inside searches and sweeps.
#[derive(Debug, Clone, Args, Serialize, Deserialize)]
pub struct SolverArgs {
    #[arg(long, default_value = "1")]
    pub gamma: Shift,
    /// Tolerance for final energies.
    #[arg(long, default_value_t = 1e-8)]
    pub ref_tol: f64,
    #[arg(long, default_value_t = 10_000)]
    pub ref_max_iter: usize,
    #[arg(long, default_value_t = 5)]
    pub ref_restarts: usize,
}

impl SolverArgs {
    pub fn backend(&self, seed: u64) -> ReferenceBackend {
        ReferenceBackend::PowerMethod(PowerMethodConfig {
            gamma: self.gamma,
            tol: self.ref_tol,
            max_iter: self.ref_max_iter,
            seed,
            restarts: self.ref_restarts,
        })
    }
}

#[derive(Debug, Clone, Args, Serialize, Deserialize)]
pub struct SearchArgs {
    #[arg(long, default_value_t = 12)]
    pub populations: usize,
    #[arg(long, default_value_t = 9)]
    pub offspring: usize,
    #[arg(long, default_value_t = 20)]
    pub max_iter: usize,
    #[arg(long, default_value_t = 4)]
    pub patience: usize,
    #[arg(long, default_value_t = 0.02)]
    pub t0: f64,
    #[arg(long, default_value_t = 0.9)]
    pub decay: f64,
    /// Multi-qubit pool elements must span at least two clusters.
    #[arg(long)]
    pub cross_cluster_only: bool,
    /// Comma-separated pool kinds (H,S,Sdg,X,Y,Z,CX,CY,CZ,SWAP,Exc1,Exc2); all by default.
    #[arg(long, value_delimiter = ',', value_parser = parse_pool_kind)]
    pub pool: Vec<PoolKind>,
    /// Mutation weights add,change,delete,rearrange.
    #[arg(long, value_delimiter = ',', num_args = 4)]
    pub weights: Option<Vec<f64>>,
    /// Consecutive generations without improvement before stopping.
    #[arg(long, default_value_t = 5)]
    pub stall: usize,
    /// Reference tolerance inside generations.
    #[arg(long, default_value_t = 1e-5)]
    pub search_tol: f64,
    #[command(flatten)]
    #[serde(flatten)]
    pub solver: SolverArgs,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
}

pub fn parse_pool_kind(s: &str) -> Result<PoolKind, String> {
    serde_json::from_value(serde_json::Value::String(s.to_string()))
        .or_else(|_| {
            PoolKind::ALL
                .iter()
                .copied()
                .find(|k| format!("{k:?}").eq_ignore_ascii_case(s))
                .ok_or(())
        })
        .map_err(|_| format!("unknown pool kind '{s}'"))
}

impl SearchArgs {
    pub fn config(&self) -> GAConfig {
        let base = GAConfig::default();
        GAConfig {
            n_populations: self.populations,
            n_offspring: self.offspring,
            max_iter: self.max_iter,
            patience_limit: self.patience,
            temperature_initial: self.t0,
            temperature_decay: self.decay,
            mutation_weights: match self.weights.as_deref() {
                Some(&[add, change, delete, rearrange]) => MutationWeights {
                    add,
                    change,
                    delete,
                    rearrange,
                },
                _ => base.mutation_weights,
            },
            cross_cluster_only: self.cross_cluster_only,
            pool: if self.pool.is_empty() { base.pool.clone() } else { self.pool.clone() },
            stall_generations: self.stall,
            reference: self.solver.backend(self.seed),
            search_tol: self.search_tol,
            seed: self.seed,
            ..base
        }
    }
}

#[derive(Debug, Clone, Args, Serialize, Deserialize)]
pub struct OptimizeArgs {
    #[arg(long)]
    pub hamiltonian: PathBuf,
    #[arg(long)]
    pub clusters: String,
    #[command(flatten)]
    #[serde(flatten)]
    pub search: SearchArgs,
    #[command(flatten)]
    #[serde(flatten)]
    pub out: OutArgs,
}

#[derive(Debug, Clone, Args, Serialize, Deserialize)]
pub struct SweepTauArgs {
    /// Grid points over one period of τ.
    #[arg(long, default_value_t = 8)]
    pub grid: usize,
    #[arg(long, default_value_t = 6)]
    pub rounds: usize,
}

impl SweepTauArgs {
    pub fn config(&self, backend: ReferenceBackend) -> NearCliffordConfig {
        NearCliffordConfig {
            reference: backend,
            grid_points: self.grid,
            max_rounds: self.rounds,
            ..NearCliffordConfig::default()
        }
    }
}

#[derive(Debug, Clone, Args, Serialize, Deserialize)]
pub struct NearCliffordArgs {
    #[arg(long)]
    pub hamiltonian: PathBuf,
    #[arg(long)]
    pub clusters: String,
    /// Clifford circuit JSON.
    #[arg(long)]
    pub circuit: PathBuf,
    #[command(flatten)]
    #[serde(flatten)]
    pub solver: SolverArgs,
    #[command(flatten)]
    #[serde(flatten)]
    pub tau: SweepTauArgs,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[command(flatten)]
    #[serde(flatten)]
    pub out: OutArgs,
}

#[derive(Debug, Clone, Args, Serialize, Deserialize)]
pub struct ExactArgs {
    #[arg(long)]
    pub hamiltonian: PathBuf,
    /// Number of lowest eigenvalues to report.
    #[arg(long, default_value_t = 8)]
    pub levels: usize,
    #[command(flatten)]
    #[serde(flatten)]
    pub out: OutArgs,
}

#[derive(Debug, Clone, Args, Serialize, Deserialize)]
pub struct FidelityArgs {
    #[arg(long)]
    pub hamiltonian: PathBuf,
    #[arg(long)]
    pub clusters: String,
    #[arg(long)]
    pub circuit: PathBuf,
    /// Product state JSON; solved on the folded Hamiltonian when omitted.
    #[arg(long)]
    pub state: Option<PathBuf>,
    #[command(flatten)]
    #[serde(flatten)]
    pub solver: SolverArgs,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[command(flatten)]
    #[serde(flatten)]
    pub out: OutArgs,
}

#[derive(Debug, Clone, Args, Serialize, Deserialize)]
pub struct StatsArgs {
    #[arg(long)]
    pub hamiltonian: PathBuf,
    #[arg(long)]
    pub circuit: PathBuf,
    /// Add the min/max band over single-gate parametrizations (Clifford circuits only).
    #[arg(long)]
    pub envelope: bool,
    #[command(flatten)]
    #[serde(flatten)]
    pub out: OutArgs,
}

#[derive(Debug, Clone, Args, Serialize, Deserialize)]
pub struct SweepArgs {
    #[arg(long)]
    pub hamiltonian: PathBuf,
    #[arg(long)]
    pub clusters: String,
    #[arg(long = "grid-populations", value_delimiter = ',', required = true)]
    pub grid_populations: Vec<usize>,
    #[arg(long = "grid-offspring", value_delimiter = ',', required = true)]
    pub grid_offspring: Vec<usize>,
    #[command(flatten)]
    #[serde(flatten)]
    pub search: SearchArgs,
    #[command(flatten)]
    #[serde(flatten)]
    pub out: OutArgs,
}

#[derive(Debug, Clone, Args, Serialize, Deserialize)]
pub struct PipelineArgs {
    #[arg(long)]
    pub hamiltonian: PathBuf,
    #[arg(long)]
    pub clusters: String,
    #[command(flatten)]
    #[serde(flatten)]
    pub search: SearchArgs,
    #[command(flatten)]
    #[serde(flatten)]
    pub tau: SweepTauArgs,
    #[command(flatten)]
    #[serde(flatten)]
    pub out: OutArgs,
}

#[derive(Debug, Clone, Args, Default, Serialize, Deserialize)]
pub struct ReplayArgs {
    /// A `manifest.json` or a full result document containing a manifest.
    #[arg(long)]
    pub manifest: PathBuf,
    /// Write the replayed outputs here instead of the recorded directory.
    #[arg(long)]
    pub out: Option<PathBuf>,
}
