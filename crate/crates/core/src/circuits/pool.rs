//! Operator pool used to build virtual Clifford circuits.

use rand::seq::SliceRandom;
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

use super::gate::Gate;
use super::partition::Partition;
use super::template::{Excitation, ExcitationKind, Wrapper, POOL_ROTATION_ANGLES};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum PoolKind {
    H,
    S,
    Sdg,
    X,
    Y,
    Z,
    CX,
    CY,
    CZ,
    #[serde(rename = "SWAP")]
    Swap,
    Exc1,
    Exc2,
}

impl PoolKind {
    pub const ALL: [PoolKind; 12] = [
        PoolKind::H,
        PoolKind::S,
        PoolKind::Sdg,
        PoolKind::X,
        PoolKind::Y,
        PoolKind::Z,
        PoolKind::CX,
        PoolKind::CY,
        PoolKind::CZ,
        PoolKind::Swap,
        PoolKind::Exc1,
        PoolKind::Exc2,
    ];

    pub fn arity(self) -> usize {
        match self {
            PoolKind::H | PoolKind::S | PoolKind::Sdg | PoolKind::X | PoolKind::Y | PoolKind::Z => 1,
            PoolKind::CX | PoolKind::CY | PoolKind::CZ | PoolKind::Swap | PoolKind::Exc1 => 2,
            PoolKind::Exc2 => 4,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PoolConfig {
    pub kinds: Vec<PoolKind>,
    /// Multi-qubit elements must span at least two clusters.
    pub cross_cluster: bool,
}

impl Default for PoolConfig {
    fn default() -> Self {
        Self {
            kinds: PoolKind::ALL.to_vec(),
            cross_cluster: false,
        }
    }
}

/// One drawn pool element: a primitive gate or a template instance.
#[derive(Debug, Clone, PartialEq)]
pub enum Element {
    Gate(Gate),
    Excitation(Excitation),
}

impl Element {
    pub fn gates(&self) -> Vec<Gate> {
        match self {
            Element::Gate(g) => vec![g.clone()],
            Element::Excitation(e) => e.gates(),
        }
    }

    pub fn qubits(&self) -> Vec<usize> {
        match self {
            Element::Gate(g) => g.qubits(),
            Element::Excitation(e) => e.qubits.clone(),
        }
    }

    pub fn arity(&self) -> usize {
        self.qubits().len()
    }

    pub fn kind(&self) -> PoolKind {
        match self {
            Element::Gate(g) => match g {
                Gate::H(_) => PoolKind::H,
                Gate::S(_) => PoolKind::S,
                Gate::Sdg(_) => PoolKind::Sdg,
                Gate::X(_) => PoolKind::X,
                Gate::Y(_) => PoolKind::Y,
                Gate::Z(_) => PoolKind::Z,
                Gate::CX { .. } => PoolKind::CX,
                Gate::CY { .. } => PoolKind::CY,
                Gate::CZ { .. } => PoolKind::CZ,
                Gate::Swap(..) => PoolKind::Swap,
                // rotations never come from the pool; classify by width
                other if other.arity() == 1 => PoolKind::Z,
                _ => PoolKind::CX,
            },
            Element::Excitation(e) => match e.kind {
                ExcitationKind::Exc1 => PoolKind::Exc1,
                ExcitationKind::Exc2 => PoolKind::Exc2,
            },
        }
    }
}

/// Draw a uniformly random pool element with a random valid placement.
pub fn sample_pool_gate<R: Rng + ?Sized>(cfg: &PoolConfig, partition: &Partition, rng: &mut R) -> Result<Element> {
    let kind = sample_kind(cfg, partition, rng)?;
    let qubits = place(kind.arity(), cfg.cross_cluster, partition, rng);
    Ok(build(kind, &qubits, rng))
}

/// Draw a pool element of the given arity on exactly `qubits` (in random order).
pub fn sample_on_qubits<R: Rng + ?Sized>(cfg: &PoolConfig, qubits: &[usize], rng: &mut R) -> Option<Element> {
    let kinds: Vec<PoolKind> = cfg.kinds.iter().copied().filter(|k| k.arity() == qubits.len()).collect();
    let kind = *kinds.choose(rng)?;
    let mut q = qubits.to_vec();
    q.shuffle(rng);
    Some(build(kind, &q, rng))
}

/// Draw a replacement for an element on `old_qubits`: the drawn kind keeps
/// those qubits when its arity matches, otherwise it gets a fresh placement.
pub fn sample_replacement<R: Rng + ?Sized>(
    cfg: &PoolConfig,
    partition: &Partition,
    old_qubits: &[usize],
    rng: &mut R,
) -> Result<Element> {
    let kind = sample_kind(cfg, partition, rng)?;
    let qubits = if kind.arity() == old_qubits.len() {
        let mut q = old_qubits.to_vec();
        q.shuffle(rng);
        q
    } else {
        place(kind.arity(), cfg.cross_cluster, partition, rng)
    };
    Ok(build(kind, &qubits, rng))
}

fn sample_kind<R: Rng + ?Sized>(cfg: &PoolConfig, partition: &Partition, rng: &mut R) -> Result<PoolKind> {
    if cfg.kinds.is_empty() {
        return Err(Error::Pool("operator pool is empty".into()));
    }
    if cfg.cross_cluster && partition.n_clusters() < 2 {
        return Err(Error::Pool("cross-cluster placement needs at least two clusters".into()));
    }
    let eligible: Vec<PoolKind> = cfg
        .kinds
        .iter()
        .copied()
        .filter(|k| k.arity() <= partition.n_qubits())
        .collect();
    eligible
        .choose(rng)
        .copied()
        .ok_or_else(|| Error::Pool("no pool element fits the register".into()))
}

fn place<R: Rng + ?Sized>(arity: usize, cross: bool, partition: &Partition, rng: &mut R) -> Vec<usize> {
    let all: Vec<usize> = (0..partition.n_qubits()).collect();
    if !cross || arity < 2 {
        return all.choose_multiple(rng, arity).copied().collect();
    }
    // Seed with two qubits from distinct clusters, fill the rest uniformly.
    let clusters: Vec<usize> = (0..partition.n_clusters()).collect();
    let picked: Vec<usize> = clusters.choose_multiple(rng, 2).copied().collect();
    let mut qubits: Vec<usize> = picked
        .iter()
        .map(|&c| *partition.cluster(c).choose(rng).expect("clusters are non-empty"))
        .collect();
    let rest: Vec<usize> = all.into_iter().filter(|q| !qubits.contains(q)).collect();
    qubits.extend(rest.choose_multiple(rng, arity - 2).copied());
    qubits.shuffle(rng);
    qubits
}

fn build<R: Rng + ?Sized>(kind: PoolKind, q: &[usize], rng: &mut R) -> Element {
    let gate = match kind {
        PoolKind::H => Gate::H(q[0]),
        PoolKind::S => Gate::S(q[0]),
        PoolKind::Sdg => Gate::Sdg(q[0]),
        PoolKind::X => Gate::X(q[0]),
        PoolKind::Y => Gate::Y(q[0]),
        PoolKind::Z => Gate::Z(q[0]),
        PoolKind::CX => Gate::CX {
            control: q[0],
            target: q[1],
        },
        PoolKind::CY => Gate::CY {
            control: q[0],
            target: q[1],
        },
        PoolKind::CZ => Gate::CZ {
            control: q[0],
            target: q[1],
        },
        PoolKind::Swap => Gate::Swap(q[0], q[1]),
        PoolKind::Exc1 | PoolKind::Exc2 => {
            let ek = if kind == PoolKind::Exc1 {
                ExcitationKind::Exc1
            } else {
                ExcitationKind::Exc2
            };
            let wrappers = (0..q.len()).map(|_| *Wrapper::ALL.choose(rng).unwrap()).collect();
            let angle = *POOL_ROTATION_ANGLES.choose(rng).unwrap();
            return Element::Excitation(
                Excitation::new(ek, q.to_vec(), wrappers, angle).expect("placement yields distinct qubits"),
            );
        }
    };
    Element::Gate(gate)
}
