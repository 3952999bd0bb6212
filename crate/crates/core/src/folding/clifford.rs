//! Exact Clifford conjugation `U†·P·U` of Pauli strings.

use crate::circuits::Gate;
use crate::error::{Error, Result};
use crate::pauli::{phase_factor, Pauli, PauliString, PauliSum};

use super::{map_terms, rotation::rotate_string};

/// Image of a single-qubit generator: `i^phase · string`.
type Image = (u8, PauliString);

fn img(phase: u8, ops: &[(usize, Pauli)]) -> Image {
    (phase, PauliString::from_ops(ops.iter().copied()))
}

/// `(qubit, U†X_qU, U†Z_qU)` for every qubit the gate touches.
fn generator_images(g: &Gate) -> Vec<(usize, Image, Image)> {
    use Pauli::{X, Y, Z};
    match *g {
        Gate::H(q) => vec![(q, img(0, &[(q, Z)]), img(0, &[(q, X)]))],
        Gate::S(q) => vec![(q, img(2, &[(q, Y)]), img(0, &[(q, Z)]))],
        Gate::Sdg(q) => vec![(q, img(0, &[(q, Y)]), img(0, &[(q, Z)]))],
        Gate::X(q) => vec![(q, img(0, &[(q, X)]), img(2, &[(q, Z)]))],
        Gate::Y(q) => vec![(q, img(2, &[(q, X)]), img(2, &[(q, Z)]))],
        Gate::Z(q) => vec![(q, img(2, &[(q, X)]), img(0, &[(q, Z)]))],
        Gate::CX { control: c, target: t } => vec![
            (c, img(0, &[(c, X), (t, X)]), img(0, &[(c, Z)])),
            (t, img(0, &[(t, X)]), img(0, &[(c, Z), (t, Z)])),
        ],
        Gate::CY { control: c, target: t } => vec![
            (c, img(0, &[(c, X), (t, Y)]), img(0, &[(c, Z)])),
            (t, img(0, &[(c, Z), (t, X)]), img(0, &[(c, Z), (t, Z)])),
        ],
        Gate::CZ { control: c, target: t } => vec![
            (c, img(0, &[(c, X), (t, Z)]), img(0, &[(c, Z)])),
            (t, img(0, &[(c, Z), (t, X)]), img(0, &[(t, Z)])),
        ],
        Gate::Swap(a, b) => vec![
            (a, img(0, &[(b, X)]), img(0, &[(b, Z)])),
            (b, img(0, &[(a, X)]), img(0, &[(a, Z)])),
        ],
        Gate::PauliRotation { .. } | Gate::General { .. } => unreachable!("not a tableau gate"),
    }
}

/// Conjugate one string by a discrete Clifford gate: returns `(k, s)` with `U†PU = i^k·s`.
fn conjugate_string(p: &PauliString, images: &[(usize, Image, Image)], gate_mask: u64) -> (u8, PauliString) {
    let x_in = p.x & gate_mask;
    let z_in = p.z & gate_mask;
    if x_in == 0 && z_in == 0 {
        return (0, *p);
    }
    // P_in = i^{|x&z|} · Π X_q^{x_q} · Π Z_q^{z_q}
    let mut phase = (x_in & z_in).count_ones() as u8;
    let mut acc = PauliString::IDENTITY;
    for (q, (k, s), _) in images {
        if x_in >> q & 1 == 1 {
            let (m, next) = acc.mul(s);
            phase += k + m;
            acc = next;
        }
    }
    for (q, _, (k, s)) in images {
        if z_in >> q & 1 == 1 {
            let (m, next) = acc.mul(s);
            phase += k + m;
            acc = next;
        }
    }
    let out = PauliString::new((p.x & !gate_mask) | acc.x, (p.z & !gate_mask) | acc.z);
    (phase % 4, out)
}

/// `g†·h·g` for a Clifford gate; cardinality is preserved.
pub fn conjugate_clifford(h: &PauliSum, g: &Gate) -> Result<PauliSum> {
    g.validate(h.n_qubits())?;
    if !g.is_clifford() {
        return Err(Error::NotClifford(g.to_string()));
    }
    if let Gate::PauliRotation { generator, angle, .. } = g {
        let k = (angle / std::f64::consts::FRAC_PI_2).round() as i64;
        return Ok(map_terms(h, |p, c| vec![rotate_string(p, c, generator, k.rem_euclid(4) as u8)]));
    }
    let images = generator_images(g);
    let mask = g.support_mask();
    Ok(map_terms(h, |p, c| {
        let (k, s) = conjugate_string(p, &images, mask);
        vec![(s, c * phase_factor(k))]
    }))
}
