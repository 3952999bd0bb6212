//! JSON circuit files: an array of gate records.
//!
//! ```json
//! [{"kind": "CX", "targets": [1], "control": 0, "angle": null, "parametrized": false, "generator": null},
//!  {"kind": "PauliRotation", "targets": [3], "control": null, "angle": 0.0032, "parametrized": true, "generator": "Z3"}]
//! ```
//!
//! `Rx`/`Ry`/`Rz` are accepted as input shorthands for single-qubit Pauli rotations.

use std::path::Path;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::CMatrix;
use crate::pauli::{Pauli, PauliString};

use super::gate::{Gate, GateKind};
use super::Circuit;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GateRecord {
    pub kind: String,
    pub targets: Vec<usize>,
    #[serde(default)]
    pub control: Option<usize>,
    #[serde(default)]
    pub angle: Option<f64>,
    #[serde(default)]
    pub parametrized: bool,
    #[serde(default)]
    pub generator: Option<GeneratorRecord>,
}

/// Pauli label for rotations, row-major `[re, im]` matrix for general gates.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum GeneratorRecord {
    Label(String),
    Matrix(Vec<Vec<[f64; 2]>>),
}

impl From<&Gate> for GateRecord {
    fn from(g: &Gate) -> Self {
        let mut rec = GateRecord {
            kind: g.kind().name().to_string(),
            targets: g.qubits(),
            control: None,
            angle: g.angle(),
            parametrized: g.is_parametrized(),
            generator: None,
        };
        match g {
            Gate::CX { control, target } | Gate::CY { control, target } | Gate::CZ { control, target } => {
                rec.targets = vec![*target];
                rec.control = Some(*control);
            }
            Gate::PauliRotation { generator, .. } => rec.generator = Some(GeneratorRecord::Label(generator.label())),
            Gate::General { generator, .. } => {
                let rows = (0..generator.nrows())
                    .map(|r| (0..generator.ncols()).map(|c| [generator[(r, c)].re, generator[(r, c)].im]).collect())
                    .collect();
                rec.generator = Some(GeneratorRecord::Matrix(rows));
            }
            _ => {}
        }
        rec
    }
}

impl GateRecord {
    pub fn to_gate(&self) -> std::result::Result<Gate, String> {
        let one = |targets: &[usize]| -> std::result::Result<usize, String> {
            match targets {
                [q] => Ok(*q),
                _ => Err(format!("{} takes exactly one target", self.kind)),
            }
        };
        let angle = || self.angle.ok_or_else(|| format!("{} needs an angle", self.kind));
        let shorthand = match self.kind.as_str() {
            "Rx" => Some(Pauli::X),
            "Ry" => Some(Pauli::Y),
            "Rz" => Some(Pauli::Z),
            _ => None,
        };
        if let Some(p) = shorthand {
            return Ok(Gate::PauliRotation {
                generator: PauliString::single(one(&self.targets)?, p),
                angle: angle()?,
                parametrized: self.parametrized,
            });
        }
        let kind = GateKind::from_name(&self.kind).ok_or_else(|| format!("unknown gate kind '{}'", self.kind))?;
        let controlled = |build: fn(usize, usize) -> Gate| -> std::result::Result<Gate, String> {
            let control = self.control.ok_or_else(|| format!("{} needs a control", self.kind))?;
            Ok(build(control, one(&self.targets)?))
        };
        Ok(match kind {
            GateKind::H => Gate::H(one(&self.targets)?),
            GateKind::S => Gate::S(one(&self.targets)?),
            GateKind::Sdg => Gate::Sdg(one(&self.targets)?),
            GateKind::X => Gate::X(one(&self.targets)?),
            GateKind::Y => Gate::Y(one(&self.targets)?),
            GateKind::Z => Gate::Z(one(&self.targets)?),
            GateKind::CX => controlled(|control, target| Gate::CX { control, target })?,
            GateKind::CY => controlled(|control, target| Gate::CY { control, target })?,
            GateKind::CZ => controlled(|control, target| Gate::CZ { control, target })?,
            GateKind::Swap => match self.targets.as_slice() {
                [a, b] => Gate::Swap(*a, *b),
                _ => return Err("SWAP takes exactly two targets".into()),
            },
            GateKind::PauliRotation => {
                let generator = match &self.generator {
                    Some(GeneratorRecord::Label(l)) => PauliString::parse_label(l)?,
                    _ => return Err("PauliRotation needs a Pauli label generator".into()),
                };
                let mut support: Vec<usize> = super::mask_to_qubits(generator.support());
                let mut targets = self.targets.clone();
                support.sort_unstable();
                targets.sort_unstable();
                if support != targets {
                    return Err(format!("targets {:?} do not match generator support {:?}", self.targets, support));
                }
                Gate::PauliRotation {
                    generator,
                    angle: angle()?,
                    parametrized: self.parametrized,
                }
            }
            GateKind::GeneralGate => {
                let rows = match &self.generator {
                    Some(GeneratorRecord::Matrix(rows)) => rows,
                    _ => return Err("GeneralGate needs a matrix generator".into()),
                };
                let dim = rows.len();
                if rows.iter().any(|r| r.len() != dim) {
                    return Err("generator matrix is not square".into());
                }
                let data: Vec<Complex64> = rows.iter().flatten().map(|[re, im]| Complex64::new(*re, *im)).collect();
                Gate::General {
                    targets: self.targets.clone(),
                    generator: CMatrix::from_row_slice(dim, dim, &data),
                    angle: angle()?,
                    parametrized: self.parametrized,
                }
            }
        })
    }
}

/// Parse a circuit file. The register width defaults to one past the highest index.
pub fn parse_circuit(text: &str, n_qubits: Option<usize>) -> Result<Circuit> {
    let records: Vec<GateRecord> = serde_json::from_str(text)?;
    let mut gates = Vec::with_capacity(records.len());
    for (i, r) in records.iter().enumerate() {
        gates.push(r.to_gate().map_err(|message| Error::Parse {
            line: i + 1,
            message: format!("gate record {}: {message}", i + 1),
        })?);
    }
    let inferred = gates
        .iter()
        .flat_map(|g| g.qubits())
        .max()
        .map_or(1, |q| q + 1);
    Circuit::new(n_qubits.unwrap_or(inferred), gates)
}

pub fn read_circuit(path: impl AsRef<Path>, n_qubits: Option<usize>) -> Result<Circuit> {
    parse_circuit(&std::fs::read_to_string(path)?, n_qubits)
}

pub fn write_circuit(c: &Circuit) -> String {
    let records: Vec<GateRecord> = c.gates.iter().map(GateRecord::from).collect();
    serde_json::to_string_pretty(&records).expect("gate records always serialize")
}
