//! Genetic architecture search for the virtual Clifford circuit and the
//! single-gate near-Clifford refinement.

mod config;
mod evaluate;
mod mutation;
mod near_clifford;
mod search;

pub use config::{GAConfig, MutationWeights, ReferenceBackend};
pub use evaluate::{evaluate_candidate, solve_reference, Evaluation};
pub use mutation::{genome_circuit, propose_mutation, Genome, Mutation};
pub use near_clifford::{eligible_gates, near_clifford_sweep, NearCliffordConfig, NearCliffordResult, SweepCandidate};
pub use search::{run_search, select_offspring, trace_csv, Candidate, PopulationState, SearchResult, TraceRow};
