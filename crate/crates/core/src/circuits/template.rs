//! Excitation-like templates: basis wrappers, a CNOT ladder and a central
//! Z rotation, together implementing `exp(−i·θ/2·σ_1⋯σ_k)`.

use std::f64::consts::FRAC_PI_2;

use crate::error::{Error, Result};

use super::gate::{is_clifford_angle, Gate};
use super::Circuit;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ExcitationKind {
    /// Two qubits.
    Exc1,
    /// Four qubits.
    Exc2,
}

impl ExcitationKind {
    pub fn arity(self) -> usize {
        match self {
            ExcitationKind::Exc1 => 2,
            ExcitationKind::Exc2 => 4,
        }
    }
}

/// Per-qubit basis change applied before the ladder (and undone after it).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Wrapper {
    /// Z basis.
    None,
    /// `R_X(π/2)`; turns the ladder's Z factor into Y.
    Rx,
    /// `R_Y(π/2)`; turns the ladder's Z factor into −X.
    Ry,
}

impl Wrapper {
    pub const ALL: [Wrapper; 3] = [Wrapper::None, Wrapper::Rx, Wrapper::Ry];

    fn gate(self, q: usize, angle: f64) -> Option<Gate> {
        match self {
            Wrapper::None => None,
            Wrapper::Rx => Some(Gate::rx(q, angle)),
            Wrapper::Ry => Some(Gate::ry(q, angle)),
        }
    }
}

/// A template instance: qubits in ladder order, the rotation sits on the last one.
#[derive(Debug, Clone, PartialEq)]
pub struct Excitation {
    pub kind: ExcitationKind,
    pub qubits: Vec<usize>,
    pub wrappers: Vec<Wrapper>,
    pub angle: f64,
}

impl Excitation {
    pub fn new(kind: ExcitationKind, qubits: Vec<usize>, wrappers: Vec<Wrapper>, angle: f64) -> Result<Self> {
        if qubits.len() != kind.arity() {
            return Err(Error::InvalidGate(format!(
                "{kind:?} needs {} qubits, got {}",
                kind.arity(),
                qubits.len()
            )));
        }
        if wrappers.len() != qubits.len() {
            return Err(Error::InvalidGate(format!(
                "{} wrappers for {} qubits",
                wrappers.len(),
                qubits.len()
            )));
        }
        for (i, q) in qubits.iter().enumerate() {
            if qubits[..i].contains(q) {
                return Err(Error::InvalidGate(format!("{kind:?} repeats qubit {q}")));
            }
        }
        Ok(Self {
            kind,
            qubits,
            wrappers,
            angle,
        })
    }

    /// Wrappers, descending CNOT ladder, central `R_Z`, mirrored ladder, inverse wrappers.
    pub fn gates(&self) -> Vec<Gate> {
        let k = self.qubits.len();
        let mut out = Vec::with_capacity(4 * k + 1);
        for (&q, w) in self.qubits.iter().zip(&self.wrappers) {
            out.extend(w.gate(q, FRAC_PI_2));
        }
        let ladder: Vec<Gate> = self
            .qubits
            .windows(2)
            .map(|w| Gate::CX {
                control: w[0],
                target: w[1],
            })
            .collect();
        out.extend(ladder.iter().cloned());
        out.push(Gate::rz(self.qubits[k - 1], self.angle));
        out.extend(ladder.into_iter().rev());
        for (&q, w) in self.qubits.iter().zip(&self.wrappers) {
            // R(3π/2) equals R(−π/2) up to a global sign
            out.extend(w.gate(q, 3.0 * FRAC_PI_2));
        }
        out
    }

    pub fn is_clifford(&self) -> bool {
        is_clifford_angle(self.angle)
    }
}

/// Expand a template into a circuit over `n_qubits`.
///
/// With `clifford` set, the central angle must be one of π/2, π, 3π/2.
pub fn expand_excitation_template(
    n_qubits: usize,
    kind: ExcitationKind,
    qubits: &[usize],
    wrappers: &[Wrapper],
    rot_angle: f64,
    clifford: bool,
) -> Result<Circuit> {
    if clifford && !is_pool_rotation_angle(rot_angle) {
        return Err(Error::NotClifford(format!(
            "central rotation angle {rot_angle} is not one of π/2, π, 3π/2"
        )));
    }
    let exc = Excitation::new(kind, qubits.to_vec(), wrappers.to_vec(), rot_angle)?;
    Circuit::new(n_qubits, exc.gates())
}

/// The central rotation angles of pool templates: S, Z and S† up to phase.
pub const POOL_ROTATION_ANGLES: [f64; 3] = [FRAC_PI_2, 2.0 * FRAC_PI_2, 3.0 * FRAC_PI_2];

pub fn is_pool_rotation_angle(angle: f64) -> bool {
    POOL_ROTATION_ANGLES.iter().any(|a| (a - angle).abs() < 1e-12)
}
