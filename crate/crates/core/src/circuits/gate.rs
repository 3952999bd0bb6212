use std::f64::consts::{FRAC_1_SQRT_2, FRAC_PI_2, PI};
use std::fmt;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::linalg::{hermitian_defect, unitary_from_generator, CMatrix};
use crate::pauli::PauliString;

/// Largest generator width accepted for [`Gate::General`].
pub const MAX_GENERAL_QUBITS: usize = 3;

const ANGLE_EPS: f64 = 1e-12;

/// Discriminant of [`Gate`], used for reporting and file formats.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum GateKind {
    H,
    S,
    Sdg,
    X,
    Y,
    Z,
    CX,
    CY,
    CZ,
    Swap,
    PauliRotation,
    GeneralGate,
}

impl GateKind {
    pub fn name(self) -> &'static str {
        match self {
            GateKind::H => "H",
            GateKind::S => "S",
            GateKind::Sdg => "Sdg",
            GateKind::X => "X",
            GateKind::Y => "Y",
            GateKind::Z => "Z",
            GateKind::CX => "CX",
            GateKind::CY => "CY",
            GateKind::CZ => "CZ",
            GateKind::Swap => "SWAP",
            GateKind::PauliRotation => "PauliRotation",
            GateKind::GeneralGate => "GeneralGate",
        }
    }

    pub fn from_name(name: &str) -> Option<Self> {
        Some(match name {
            "H" => GateKind::H,
            "S" => GateKind::S,
            "Sdg" => GateKind::Sdg,
            "X" => GateKind::X,
            "Y" => GateKind::Y,
            "Z" => GateKind::Z,
            "CX" => GateKind::CX,
            "CY" => GateKind::CY,
            "CZ" => GateKind::CZ,
            "SWAP" => GateKind::Swap,
            "PauliRotation" => GateKind::PauliRotation,
            "GeneralGate" => GateKind::GeneralGate,
            _ => return None,
        })
    }
}

impl serde::Serialize for GateKind {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(self.name())
    }
}

impl fmt::Display for GateKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// A circuit element.
///
/// Rotations implement `exp(−i·angle/2·G)` for a Hermitian generator `G`.
#[derive(Debug, Clone, PartialEq)]
pub enum Gate {
    H(usize),
    S(usize),
    Sdg(usize),
    X(usize),
    Y(usize),
    Z(usize),
    CX { control: usize, target: usize },
    CY { control: usize, target: usize },
    CZ { control: usize, target: usize },
    Swap(usize, usize),
    PauliRotation {
        generator: PauliString,
        angle: f64,
        parametrized: bool,
    },
    General {
        targets: Vec<usize>,
        /// `2^k × 2^k`, local bit `m` acting on `targets[m]`.
        generator: CMatrix,
        angle: f64,
        parametrized: bool,
    },
}

impl Gate {
    pub fn rx(q: usize, angle: f64) -> Gate {
        Self::rotation(PauliString::single(q, crate::pauli::Pauli::X), angle)
    }

    pub fn ry(q: usize, angle: f64) -> Gate {
        Self::rotation(PauliString::single(q, crate::pauli::Pauli::Y), angle)
    }

    pub fn rz(q: usize, angle: f64) -> Gate {
        Self::rotation(PauliString::single(q, crate::pauli::Pauli::Z), angle)
    }

    pub fn rotation(generator: PauliString, angle: f64) -> Gate {
        Gate::PauliRotation {
            generator,
            angle,
            parametrized: false,
        }
    }

    pub fn kind(&self) -> GateKind {
        match self {
            Gate::H(_) => GateKind::H,
            Gate::S(_) => GateKind::S,
            Gate::Sdg(_) => GateKind::Sdg,
            Gate::X(_) => GateKind::X,
            Gate::Y(_) => GateKind::Y,
            Gate::Z(_) => GateKind::Z,
            Gate::CX { .. } => GateKind::CX,
            Gate::CY { .. } => GateKind::CY,
            Gate::CZ { .. } => GateKind::CZ,
            Gate::Swap(..) => GateKind::Swap,
            Gate::PauliRotation { .. } => GateKind::PauliRotation,
            Gate::General { .. } => GateKind::GeneralGate,
        }
    }

    /// Qubits acted on, in the order used by [`local_matrix`](Self::local_matrix).
    pub fn qubits(&self) -> Vec<usize> {
        match self {
            Gate::H(q) | Gate::S(q) | Gate::Sdg(q) | Gate::X(q) | Gate::Y(q) | Gate::Z(q) => vec![*q],
            Gate::CX { control, target } | Gate::CY { control, target } | Gate::CZ { control, target } => {
                vec![*control, *target]
            }
            Gate::Swap(a, b) => vec![*a, *b],
            Gate::PauliRotation { generator, .. } => mask_to_qubits(generator.support()),
            Gate::General { targets, .. } => targets.clone(),
        }
    }

    pub fn support_mask(&self) -> u64 {
        self.qubits().iter().fold(0, |m, q| m | 1u64 << q)
    }

    pub fn arity(&self) -> usize {
        self.qubits().len()
    }

    pub fn angle(&self) -> Option<f64> {
        match self {
            Gate::PauliRotation { angle, .. } | Gate::General { angle, .. } => Some(*angle),
            _ => None,
        }
    }

    pub fn is_parametrized(&self) -> bool {
        matches!(
            self,
            Gate::PauliRotation { parametrized: true, .. } | Gate::General { parametrized: true, .. }
        )
    }

    /// Whether conjugation by this gate maps Pauli strings to Pauli strings.
    pub fn is_clifford(&self) -> bool {
        match self {
            Gate::PauliRotation { angle, .. } => is_clifford_angle(*angle),
            Gate::General { .. } => false,
            _ => true,
        }
    }

    pub fn is_controlled(&self) -> bool {
        matches!(self, Gate::CX { .. } | Gate::CY { .. } | Gate::CZ { .. })
    }

    /// Check indices and generator shape against a register of `n_qubits`.
    pub fn validate(&self, n_qubits: usize) -> Result<()> {
        let qubits = self.qubits();
        if qubits.is_empty() {
            return Err(Error::InvalidGate(format!("{} acts on no qubit", self.kind())));
        }
        for (i, &q) in qubits.iter().enumerate() {
            if q >= n_qubits {
                return Err(Error::QubitOutOfRange { index: q, n_qubits });
            }
            if qubits[..i].contains(&q) {
                return Err(Error::InvalidGate(format!("{} repeats qubit {q}", self.kind())));
            }
        }
        match self {
            Gate::PauliRotation { angle, .. } if !angle.is_finite() => {
                Err(Error::InvalidGate("non-finite rotation angle".into()))
            }
            Gate::General {
                targets,
                generator,
                angle,
                ..
            } => {
                if targets.len() > MAX_GENERAL_QUBITS {
                    return Err(Error::InvalidGenerator(format!(
                        "general generators are limited to {MAX_GENERAL_QUBITS} qubits, got {}",
                        targets.len()
                    )));
                }
                let dim = 1usize << targets.len();
                if generator.nrows() != dim || generator.ncols() != dim {
                    return Err(Error::InvalidGenerator(format!(
                        "generator is {}x{}, expected {dim}x{dim}",
                        generator.nrows(),
                        generator.ncols()
                    )));
                }
                if hermitian_defect(generator) > 1e-10 {
                    return Err(Error::InvalidGenerator("generator is not Hermitian".into()));
                }
                if !angle.is_finite() {
                    return Err(Error::InvalidGate("non-finite rotation angle".into()));
                }
                Ok(())
            }
            _ => Ok(()),
        }
    }

    /// Local unitary over [`qubits`](Self::qubits), local bit `m` ↔ `qubits()[m]`.
    pub fn local_matrix(&self) -> Result<CMatrix> {
        let z = Complex64::new(0.0, 0.0);
        let o = Complex64::new(1.0, 0.0);
        let i = Complex64::new(0.0, 1.0);
        let h = Complex64::new(FRAC_1_SQRT_2, 0.0);
        let one_qubit = |m: [Complex64; 4]| CMatrix::from_row_slice(2, 2, &m);
        Ok(match self {
            Gate::H(_) => one_qubit([h, h, h, -h]),
            Gate::S(_) => one_qubit([o, z, z, i]),
            Gate::Sdg(_) => one_qubit([o, z, z, -i]),
            Gate::X(_) => one_qubit([z, o, o, z]),
            Gate::Y(_) => one_qubit([z, -i, i, z]),
            Gate::Z(_) => one_qubit([o, z, z, -o]),
            Gate::CX { .. } | Gate::CY { .. } | Gate::CZ { .. } => {
                let target_op = match self {
                    Gate::CX { .. } => [z, o, o, z],
                    Gate::CY { .. } => [z, -i, i, z],
                    _ => [o, z, z, -o],
                };
                // local bit 0 = control, bit 1 = target
                let mut m = CMatrix::zeros(4, 4);
                m[(0, 0)] = o;
                m[(2, 2)] = o;
                for (r, tr) in [1usize, 3].into_iter().enumerate() {
                    for (c, tc) in [1usize, 3].into_iter().enumerate() {
                        m[(tr, tc)] = target_op[2 * r + c];
                    }
                }
                m
            }
            Gate::Swap(..) => {
                let mut m = CMatrix::zeros(4, 4);
                m[(0, 0)] = o;
                m[(1, 2)] = o;
                m[(2, 1)] = o;
                m[(3, 3)] = o;
                m
            }
            Gate::PauliRotation { generator, angle, .. } => {
                let qubits = self.qubits();
                let local = generator.restrict(&qubits);
                let dim = 1usize << qubits.len();
                CMatrix::identity(dim, dim) * Complex64::new((angle / 2.0).cos(), 0.0)
                    - local.to_matrix(qubits.len()) * Complex64::new(0.0, (angle / 2.0).sin())
            }
            Gate::General { generator, angle, .. } => unitary_from_generator(generator, *angle)?,
        })
    }

    /// Clifford-equivalent parametrized form used by the near-Clifford sweep.
    ///
    /// Returns `None` for controlled gates and SWAP.
    pub fn parametrized_form(&self) -> Option<Gate> {
        use crate::pauli::Pauli;
        let rot = |q: usize, p: Pauli, angle: f64| Gate::PauliRotation {
            generator: PauliString::single(q, p),
            angle,
            parametrized: true,
        };
        Some(match self {
            Gate::S(q) => rot(*q, Pauli::Z, FRAC_PI_2),
            Gate::Sdg(q) => rot(*q, Pauli::Z, 3.0 * FRAC_PI_2),
            Gate::X(q) => rot(*q, Pauli::X, PI),
            Gate::Y(q) => rot(*q, Pauli::Y, PI),
            Gate::Z(q) => rot(*q, Pauli::Z, PI),
            Gate::H(q) => {
                // H = i·exp(−i·π/2·(X+Z)/√2)
                let g = Complex64::new(FRAC_1_SQRT_2, 0.0);
                Gate::General {
                    targets: vec![*q],
                    generator: CMatrix::from_row_slice(2, 2, &[g, g, g, -g]),
                    angle: PI,
                    parametrized: true,
                }
            }
            Gate::PauliRotation { generator, angle, .. } if generator.weight() == 1 => Gate::PauliRotation {
                generator: *generator,
                angle: *angle,
                parametrized: true,
            },
            Gate::General { targets, generator, angle, .. } if targets.len() == 1 => Gate::General {
                targets: targets.clone(),
                generator: generator.clone(),
                angle: *angle,
                parametrized: true,
            },
            _ => return None,
        })
    }

    /// Same gate with a new angle (rotations only).
    pub fn with_angle(&self, new_angle: f64) -> Option<Gate> {
        let mut g = self.clone();
        match &mut g {
            Gate::PauliRotation { angle, .. } | Gate::General { angle, .. } => *angle = new_angle,
            _ => return None,
        }
        Some(g)
    }

    /// Same gate with its qubits relabelled through `map`.
    pub fn remap(&self, map: impl Fn(usize) -> usize) -> Gate {
        match self {
            Gate::H(q) => Gate::H(map(*q)),
            Gate::S(q) => Gate::S(map(*q)),
            Gate::Sdg(q) => Gate::Sdg(map(*q)),
            Gate::X(q) => Gate::X(map(*q)),
            Gate::Y(q) => Gate::Y(map(*q)),
            Gate::Z(q) => Gate::Z(map(*q)),
            Gate::CX { control, target } => Gate::CX {
                control: map(*control),
                target: map(*target),
            },
            Gate::CY { control, target } => Gate::CY {
                control: map(*control),
                target: map(*target),
            },
            Gate::CZ { control, target } => Gate::CZ {
                control: map(*control),
                target: map(*target),
            },
            Gate::Swap(a, b) => Gate::Swap(map(*a), map(*b)),
            Gate::PauliRotation {
                generator,
                angle,
                parametrized,
            } => {
                let qubits = mask_to_qubits(generator.support());
                let local = generator.restrict(&qubits);
                let mapped: Vec<usize> = qubits.iter().map(|&q| map(q)).collect();
                Gate::PauliRotation {
                    generator: local.embed(&mapped),
                    angle: *angle,
                    parametrized: *parametrized,
                }
            }
            Gate::General {
                targets,
                generator,
                angle,
                parametrized,
            } => Gate::General {
                targets: targets.iter().map(|&q| map(q)).collect(),
                generator: generator.clone(),
                angle: *angle,
                parametrized: *parametrized,
            },
        }
    }
}

impl fmt::Display for Gate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Gate::CX { control, target } | Gate::CY { control, target } | Gate::CZ { control, target } => {
                write!(f, "{}({control}->{target})", self.kind())
            }
            Gate::PauliRotation { generator, angle, .. } => write!(f, "R[{generator}]({angle})"),
            Gate::General { targets, angle, .. } => write!(f, "G{targets:?}({angle})"),
            _ => write!(f, "{}{:?}", self.kind(), self.qubits()),
        }
    }
}

/// `angle` is a multiple of π/2, so `exp(−i·angle/2·P)` is Clifford.
pub fn is_clifford_angle(angle: f64) -> bool {
    let r = angle / FRAC_PI_2;
    (r - r.round()).abs() < ANGLE_EPS
}

pub(crate) fn mask_to_qubits(mut mask: u64) -> Vec<usize> {
    let mut out = Vec::with_capacity(mask.count_ones() as usize);
    while mask != 0 {
        out.push(mask.trailing_zeros() as usize);
        mask &= mask - 1;
    }
    out
}
