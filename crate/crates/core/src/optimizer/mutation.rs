use rand::Rng;
use serde::Serialize;

use crate::circuits::{sample_pool_gate, sample_replacement, Circuit, Element, Partition, PoolConfig};
use crate::error::Result;

use super::MutationWeights;

/// A candidate circuit as a list of pool elements; templates stay grouped.
pub type Genome = Vec<Element>;

pub fn genome_circuit(n_qubits: usize, genome: &[Element]) -> Result<Circuit> {
    Circuit::new(n_qubits, genome.iter().flat_map(Element::gates).collect())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum Mutation {
    Add,
    Change,
    Delete,
    Rearrange,
}

fn draw<R: Rng + ?Sized>(w: &MutationWeights, rng: &mut R) -> Mutation {
    let u: f64 = rng.gen::<f64>() * (w.add + w.change + w.delete + w.rearrange);
    if u < w.add {
        Mutation::Add
    } else if u < w.add + w.change {
        Mutation::Change
    } else if u < w.add + w.change + w.delete {
        Mutation::Delete
    } else {
        Mutation::Rearrange
    }
}

/// Apply one random mutation. Delete and change on an empty genome, and
/// rearrange on fewer than two elements, fall back to add.
pub fn propose_mutation<R: Rng + ?Sized>(
    genome: &[Element],
    weights: &MutationWeights,
    pool: &PoolConfig,
    partition: &Partition,
    rng: &mut R,
) -> Result<(Genome, Mutation)> {
    let mut out = genome.to_vec();
    let mut kind = draw(weights, rng);
    if (out.is_empty() && matches!(kind, Mutation::Delete | Mutation::Change))
        || (out.len() < 2 && kind == Mutation::Rearrange)
    {
        kind = Mutation::Add;
    }
    match kind {
        Mutation::Add => {
            let e = sample_pool_gate(pool, partition, rng)?;
            let at = rng.gen_range(0..=out.len());
            out.insert(at, e);
        }
        Mutation::Change => {
            let at = rng.gen_range(0..out.len());
            out[at] = sample_replacement(pool, partition, &out[at].qubits(), rng)?;
        }
        Mutation::Delete => {
            let at = rng.gen_range(0..out.len());
            out.remove(at);
        }
        Mutation::Rearrange => {
            let a = rng.gen_range(0..out.len());
            let mut b = rng.gen_range(0..out.len() - 1);
            if b >= a {
                b += 1;
            }
            out.swap(a, b);
        }
    }
    Ok((out, kind))
}
