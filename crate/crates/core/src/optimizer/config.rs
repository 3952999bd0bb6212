use serde::{Deserialize, Serialize};

use crate::circuits::PoolKind;
use crate::error::{Error, Result};
use crate::reference::{PowerMethodConfig, VariationalConfig};

/// Relative frequencies of the four mutation moves.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MutationWeights {
    pub add: f64,
    pub change: f64,
    pub delete: f64,
    pub rearrange: f64,
}

impl Default for MutationWeights {
    fn default() -> Self {
        Self {
            add: 0.35,
            change: 0.40,
            delete: 0.15,
            rearrange: 0.10,
        }
    }
}

impl MutationWeights {
    pub fn validate(&self) -> Result<()> {
        let w = [self.add, self.change, self.delete, self.rearrange];
        if w.iter().any(|v| !(*v >= 0.0)) || (w.iter().sum::<f64>() - 1.0).abs() > 1e-9 {
            return Err(Error::Config(format!("mutation weights must be non-negative and sum to 1: {w:?}")));
        }
        Ok(())
    }

    /// Weights at `iteration`: the add weight moves linearly to `add_final` by
    /// `max_iter`, the other three are rescaled to fill the remainder.
    pub fn annealed(&self, iteration: usize, max_iter: usize, add_final: f64) -> Self {
        let t = if max_iter == 0 { 1.0 } else { (iteration as f64 / max_iter as f64).min(1.0) };
        let add = self.add + (add_final - self.add) * t;
        let rest = self.change + self.delete + self.rearrange;
        let scale = if rest > 0.0 { (1.0 - add) / rest } else { 0.0 };
        Self {
            add,
            change: self.change * scale,
            delete: self.delete * scale,
            rearrange: self.rearrange * scale,
        }
    }
}

/// How a product-state reference is solved for a (folded) Hamiltonian.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ReferenceBackend {
    PowerMethod(PowerMethodConfig),
    /// R_Y/CNOT-layer cluster circuits optimized by BFGS.
    Variational { layers: usize, config: VariationalConfig },
}

impl ReferenceBackend {
    /// Same backend with a different convergence tolerance (power method only).
    pub fn with_tol(&self, tol: f64) -> Self {
        match self {
            ReferenceBackend::PowerMethod(c) => ReferenceBackend::PowerMethod(PowerMethodConfig { tol, ..c.clone() }),
            other => other.clone(),
        }
    }

    pub fn with_seed(&self, seed: u64) -> Self {
        match self {
            ReferenceBackend::PowerMethod(c) => ReferenceBackend::PowerMethod(PowerMethodConfig { seed, ..c.clone() }),
            ReferenceBackend::Variational { layers, config } => ReferenceBackend::Variational {
                layers: *layers,
                config: VariationalConfig { seed, ..config.clone() },
            },
        }
    }
}

impl Default for ReferenceBackend {
    fn default() -> Self {
        ReferenceBackend::PowerMethod(PowerMethodConfig::default())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct GAConfig {
    pub n_populations: usize,
    pub n_offspring: usize,
    pub max_iter: usize,
    pub patience_limit: usize,
    pub temperature_initial: f64,
    pub temperature_decay: f64,
    pub mutation_weights: MutationWeights,
    /// Add weight reached at `max_iter`.
    pub add_weight_final: f64,
    pub cross_cluster_only: bool,
    pub pool: Vec<PoolKind>,
    /// Pool elements in each freshly sampled population circuit.
    pub initial_elements: usize,
    /// Search stops after this many consecutive generations without a
    /// global improvement larger than `stop_tol`.
    pub stall_generations: usize,
    pub stop_tol: f64,
    /// Reference solver; `search_tol` applies inside generations, its own tol to the final winner.
    pub reference: ReferenceBackend,
    pub search_tol: f64,
    pub seed: u64,
}

impl Default for GAConfig {
    fn default() -> Self {
        Self {
            n_populations: 12,
            n_offspring: 9,
            max_iter: 20,
            patience_limit: 4,
            temperature_initial: 0.02,
            temperature_decay: 0.9,
            mutation_weights: MutationWeights::default(),
            add_weight_final: 0.15,
            cross_cluster_only: false,
            pool: PoolKind::ALL.to_vec(),
            initial_elements: 2,
            stall_generations: 5,
            stop_tol: 1e-10,
            reference: ReferenceBackend::default(),
            search_tol: 1e-5,
            seed: 0,
        }
    }
}

impl GAConfig {
    pub fn validate(&self) -> Result<()> {
        if self.n_populations == 0 || self.n_offspring == 0 || self.max_iter == 0 || self.patience_limit == 0 {
            return Err(Error::Config("populations, offspring, max_iter and patience must be at least 1".into()));
        }
        if !(self.temperature_decay > 0.0 && self.temperature_decay < 1.0) {
            return Err(Error::Config(format!("temperature decay must lie in (0,1), got {}", self.temperature_decay)));
        }
        if !(self.temperature_initial > 0.0) {
            return Err(Error::Config("initial temperature must be positive".into()));
        }
        if !(0.0..=1.0).contains(&self.add_weight_final) {
            return Err(Error::Config("final add weight must lie in [0,1]".into()));
        }
        self.mutation_weights.validate()?;
        if self.pool.is_empty() {
            return Err(Error::Pool("operator pool is empty".into()));
        }
        if let ReferenceBackend::PowerMethod(c) = &self.reference {
            c.validate()?;
        }
        Ok(())
    }
}
