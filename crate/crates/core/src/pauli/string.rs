use std::fmt;

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::error::{ensure_same, Error, Result};

use super::{phase_factor, MAX_QUBITS};

/// Single-site Pauli operator.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Pauli {
    I,
    X,
    Y,
    Z,
}

impl Pauli {
    /// Symplectic bits `(x, z)`.
    pub fn bits(self) -> (bool, bool) {
        match self {
            Pauli::I => (false, false),
            Pauli::X => (true, false),
            Pauli::Y => (true, true),
            Pauli::Z => (false, true),
        }
    }

    pub fn from_bits(x: bool, z: bool) -> Self {
        match (x, z) {
            (false, false) => Pauli::I,
            (true, false) => Pauli::X,
            (true, true) => Pauli::Y,
            (false, true) => Pauli::Z,
        }
    }

    pub fn symbol(self) -> char {
        match self {
            Pauli::I => 'I',
            Pauli::X => 'X',
            Pauli::Y => 'Y',
            Pauli::Z => 'Z',
        }
    }

    pub fn from_symbol(c: char) -> Option<Self> {
        match c.to_ascii_uppercase() {
            'I' => Some(Pauli::I),
            'X' => Some(Pauli::X),
            'Y' => Some(Pauli::Y),
            'Z' => Some(Pauli::Z),
            _ => None,
        }
    }
}

/// A Pauli string in symplectic form, without phase.
///
/// Bit `q` of `x`/`z` describes qubit `q`. A site with both bits set is
/// `Y = i·X·Z`, so every string is Hermitian and the operator factorizes
/// exactly into a tensor product of single-site Paulis.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PauliString {
    pub x: u64,
    pub z: u64,
}

impl PauliString {
    pub const IDENTITY: PauliString = PauliString { x: 0, z: 0 };

    pub fn new(x: u64, z: u64) -> Self {
        Self { x, z }
    }

    pub fn single(qubit: usize, pauli: Pauli) -> Self {
        let mut s = Self::IDENTITY;
        s.set(qubit, pauli);
        s
    }

    pub fn from_ops<I: IntoIterator<Item = (usize, Pauli)>>(ops: I) -> Self {
        let mut s = Self::IDENTITY;
        for (q, p) in ops {
            s.set(q, p);
        }
        s
    }

    pub fn set(&mut self, qubit: usize, pauli: Pauli) {
        let bit = 1u64 << qubit;
        let (x, z) = pauli.bits();
        self.x = if x { self.x | bit } else { self.x & !bit };
        self.z = if z { self.z | bit } else { self.z & !bit };
    }

    pub fn get(&self, qubit: usize) -> Pauli {
        Pauli::from_bits(self.x >> qubit & 1 == 1, self.z >> qubit & 1 == 1)
    }

    pub fn is_identity(&self) -> bool {
        self.x == 0 && self.z == 0
    }

    /// Mask of qubits carrying a non-identity factor.
    pub fn support(&self) -> u64 {
        self.x | self.z
    }

    pub fn weight(&self) -> u32 {
        self.support().count_ones()
    }

    /// Highest qubit index with a non-identity factor.
    pub fn max_qubit(&self) -> Option<usize> {
        let s = self.support();
        (s != 0).then(|| 63 - s.leading_zeros() as usize)
    }

    pub fn commutes_with(&self, other: &PauliString) -> bool {
        ((self.x & other.z).count_ones() + (self.z & other.x).count_ones()).is_multiple_of(2)
    }

    /// Product `self · other = i^k · s`, returned as `(k, s)`.
    pub fn mul(&self, other: &PauliString) -> (u8, PauliString) {
        let x = self.x ^ other.x;
        let z = self.z ^ other.z;
        // P(x,z) = i^{|x&z|} X^x Z^z and Z^a X^b = (-1)^{|a&b|} X^b Z^a.
        let k = (self.x & self.z).count_ones() as i64
            + (other.x & other.z).count_ones() as i64
            + 2 * (self.z & other.x).count_ones() as i64
            - (x & z).count_ones() as i64;
        (k.rem_euclid(4) as u8, PauliString { x, z })
    }

    /// Keep only the qubits in `qubits`, compacted so that `qubits[m]`
    /// becomes local qubit `m`.
    pub fn restrict(&self, qubits: &[usize]) -> PauliString {
        let mut out = PauliString::IDENTITY;
        for (m, &q) in qubits.iter().enumerate() {
            out.x |= (self.x >> q & 1) << m;
            out.z |= (self.z >> q & 1) << m;
        }
        out
    }

    /// Inverse of [`restrict`](Self::restrict): place local qubit `m` on `qubits[m]`.
    pub fn embed(&self, qubits: &[usize]) -> PauliString {
        let mut out = PauliString::IDENTITY;
        for (m, &q) in qubits.iter().enumerate() {
            out.x |= (self.x >> m & 1) << q;
            out.z |= (self.z >> m & 1) << q;
        }
        out
    }

    /// Action on a computational basis index: `P|j> = amplitude · |image>`.
    #[inline]
    pub fn apply_to_basis(&self, j: usize) -> (usize, Complex64) {
        let j64 = j as u64;
        let k = (self.x & self.z).count_ones() + 2 * (self.z & j64).count_ones();
        ((j64 ^ self.x) as usize, phase_factor(k as u8))
    }

    /// Dense `2^n × 2^n` matrix, qubit `q` being bit `q` of the basis index.
    pub fn to_matrix(&self, n_qubits: usize) -> DMatrix<Complex64> {
        let dim = 1usize << n_qubits;
        let mut m = DMatrix::zeros(dim, dim);
        for j in 0..dim {
            let (i, a) = self.apply_to_basis(j);
            m[(i, j)] = a;
        }
        m
    }

    /// Human-readable label such as `X0 Y3`, or `I` for the identity.
    pub fn label(&self) -> String {
        if self.is_identity() {
            return "I".to_string();
        }
        let mut parts = Vec::new();
        let mut s = self.support();
        while s != 0 {
            let q = s.trailing_zeros() as usize;
            parts.push(format!("{}{}", self.get(q).symbol(), q));
            s &= s - 1;
        }
        parts.join(" ")
    }

    /// Parse a label like `X0 Z1` (factors may also be separated by `*`).
    pub fn parse_label(label: &str) -> std::result::Result<PauliString, String> {
        let label = label.trim();
        if label.is_empty() || label == "I" {
            return Ok(PauliString::IDENTITY);
        }
        let mut s = PauliString::IDENTITY;
        for factor in label.split(|c: char| c.is_whitespace() || c == '*').filter(|f| !f.is_empty()) {
            let mut chars = factor.chars();
            let head = chars.next().unwrap();
            let pauli = Pauli::from_symbol(head).ok_or_else(|| format!("unknown Pauli factor '{factor}'"))?;
            let idx: usize = chars
                .as_str()
                .parse()
                .map_err(|_| format!("bad qubit index in factor '{factor}'"))?;
            if idx >= MAX_QUBITS {
                return Err(format!("qubit index {idx} exceeds the {MAX_QUBITS}-qubit limit"));
            }
            if s.get(idx) != Pauli::I {
                return Err(format!("qubit {idx} appears twice"));
            }
            s.set(idx, pauli);
        }
        Ok(s)
    }
}

impl fmt::Display for PauliString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.label())
    }
}

/// A phase-tracked Pauli string with a complex coefficient:
/// `coefficient · i^phase_exp · string`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PauliTerm {
    pub n_qubits: usize,
    pub string: PauliString,
    pub phase_exp: u8,
    pub coefficient: Complex64,
}

impl PauliTerm {
    pub fn new(n_qubits: usize, string: PauliString, coefficient: Complex64) -> Result<Self> {
        check_fits(n_qubits, &string)?;
        Ok(Self {
            n_qubits,
            string,
            phase_exp: 0,
            coefficient,
        })
    }

    /// Unit-coefficient term, e.g. a rotation generator.
    pub fn unit(n_qubits: usize, string: PauliString) -> Result<Self> {
        Self::new(n_qubits, string, Complex64::new(1.0, 0.0))
    }

    pub fn identity(n_qubits: usize) -> Result<Self> {
        Self::unit(n_qubits, PauliString::IDENTITY)
    }

    /// Fold `i^phase_exp` into the coefficient.
    pub fn canonical(self) -> Self {
        Self {
            phase_exp: 0,
            coefficient: self.coefficient * phase_factor(self.phase_exp),
            ..self
        }
    }

    /// Coefficient including the tracked phase.
    pub fn total_coefficient(&self) -> Complex64 {
        self.coefficient * phase_factor(self.phase_exp)
    }

    pub fn to_matrix(&self) -> DMatrix<Complex64> {
        self.string.to_matrix(self.n_qubits) * self.total_coefficient()
    }
}

/// Canonical product `a · b` with exact phase.
pub fn multiply(a: &PauliTerm, b: &PauliTerm) -> Result<PauliTerm> {
    ensure_same(a.n_qubits, b.n_qubits)?;
    let (k, string) = a.string.mul(&b.string);
    let phase = (a.phase_exp + b.phase_exp + k) % 4;
    Ok(PauliTerm {
        n_qubits: a.n_qubits,
        string,
        phase_exp: 0,
        coefficient: a.coefficient * b.coefficient * phase_factor(phase),
    })
}

pub fn commutes(a: &PauliTerm, b: &PauliTerm) -> Result<bool> {
    ensure_same(a.n_qubits, b.n_qubits)?;
    Ok(a.string.commutes_with(&b.string))
}

pub(crate) fn check_fits(n_qubits: usize, string: &PauliString) -> Result<()> {
    if n_qubits > MAX_QUBITS {
        return Err(Error::TooManyQubits(n_qubits));
    }
    if let Some(q) = string.max_qubit() {
        if q >= n_qubits {
            return Err(Error::QubitOutOfRange { index: q, n_qubits });
        }
    }
    Ok(())
}
