//! Plain-text Hamiltonian format.
//!
//! One term per line, `<re> <im> <spec>`, where `<spec>` is a list of factors
//! such as `X0 Y3 Z5` or the literal `I`. Blank lines and `#` comments are
//! skipped; a `# qubits: N` header overrides the inferred register width.

use std::fmt::Write as _;
use std::path::Path;

use num_complex::Complex64;

use crate::error::{Error, Result};

use super::{PauliString, PauliSum, MAX_QUBITS};

pub fn parse_hamiltonian(text: &str) -> Result<PauliSum> {
    let mut declared: Option<usize> = None;
    let mut entries = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.trim();
        if line.is_empty() {
            continue;
        }
        if let Some(comment) = line.strip_prefix('#') {
            if let Some(rest) = comment.trim().strip_prefix("qubits:") {
                let n = rest.trim().parse::<usize>().map_err(|_| Error::Parse {
                    line: line_no,
                    message: format!("bad qubit header '{line}'"),
                })?;
                declared = Some(n);
            }
            continue;
        }
        let mut fields = line.split_whitespace();
        let mut number = |what: &str| -> Result<f64> {
            let tok = fields.next().ok_or_else(|| Error::Parse {
                line: line_no,
                message: format!("missing {what} part"),
            })?;
            tok.parse::<f64>().map_err(|_| Error::Parse {
                line: line_no,
                message: format!("bad {what} part '{tok}'"),
            })
        };
        let re = number("real")?;
        let im = number("imaginary")?;
        let spec: Vec<&str> = fields.collect();
        if spec.is_empty() {
            return Err(Error::Parse {
                line: line_no,
                message: "missing Pauli specification".into(),
            });
        }
        let string = PauliString::parse_label(&spec.join(" ")).map_err(|message| Error::Parse { line: line_no, message })?;
        entries.push((line_no, string, Complex64::new(re, im)));
    }

    let inferred = entries
        .iter()
        .filter_map(|(_, p, _)| p.max_qubit())
        .max()
        .map_or(1, |q| q + 1);
    let n_qubits = match declared {
        Some(n) if n < inferred => {
            return Err(Error::Parse {
                line: 0,
                message: format!("header declares {n} qubits but terms use {inferred}"),
            })
        }
        Some(0) => {
            return Err(Error::Parse {
                line: 0,
                message: "header declares zero qubits".into(),
            })
        }
        Some(n) => n,
        None => inferred,
    };
    if n_qubits > MAX_QUBITS {
        return Err(Error::TooManyQubits(n_qubits));
    }
    PauliSum::from_pairs(n_qubits, entries.into_iter().map(|(_, p, c)| (p, c)))
}

pub fn read_hamiltonian(path: impl AsRef<Path>) -> Result<PauliSum> {
    parse_hamiltonian(&std::fs::read_to_string(path)?)
}

/// Serialize in canonical term order. Floats use the shortest representation
/// that parses back to the same value.
pub fn write_hamiltonian(h: &PauliSum) -> String {
    let mut out = format!("# qubits: {}\n", h.n_qubits());
    for (p, c) in h {
        let _ = writeln!(out, "{:?} {:?} {}", c.re, c.im, p.label());
    }
    out
}
