use std::collections::btree_map::{self, BTreeMap};

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::error::{ensure_same, Error, Result};

use super::string::{check_fits, PauliString, PauliTerm};
use super::{phase_factor, MAX_QUBITS, PRUNE_TOL};

/// A linear combination of Pauli strings with coefficients combined per string.
///
/// Entries are kept in canonical string order, so iteration (and therefore
/// every floating-point accumulation built on it) is deterministic.
#[derive(Debug, Clone, PartialEq)]
pub struct PauliSum {
    n_qubits: usize,
    terms: BTreeMap<PauliString, Complex64>,
}

impl PauliSum {
    pub fn new(n_qubits: usize) -> Result<Self> {
        if n_qubits == 0 {
            return Err(Error::Config("a Pauli sum needs at least one qubit".into()));
        }
        if n_qubits > MAX_QUBITS {
            return Err(Error::TooManyQubits(n_qubits));
        }
        Ok(Self {
            n_qubits,
            terms: BTreeMap::new(),
        })
    }

    /// `c · I`.
    pub fn identity(n_qubits: usize, c: Complex64) -> Result<Self> {
        let mut s = Self::new(n_qubits)?;
        s.accumulate(PauliString::IDENTITY, c);
        s.prune();
        Ok(s)
    }

    /// Build from `(string, coefficient)` pairs; duplicates are combined.
    pub fn from_pairs<I>(n_qubits: usize, pairs: I) -> Result<Self>
    where
        I: IntoIterator<Item = (PauliString, Complex64)>,
    {
        let mut s = Self::new(n_qubits)?;
        for (p, c) in pairs {
            check_fits(n_qubits, &p)?;
            s.accumulate(p, c);
        }
        s.prune();
        Ok(s)
    }

    /// Convenience constructor from labels and real coefficients.
    pub fn from_labels(n_qubits: usize, pairs: &[(&str, f64)]) -> Result<Self> {
        let mut parsed = Vec::with_capacity(pairs.len());
        for (label, c) in pairs {
            let p = PauliString::parse_label(label).map_err(|message| Error::Parse { line: 0, message })?;
            parsed.push((p, Complex64::new(*c, 0.0)));
        }
        Self::from_pairs(n_qubits, parsed)
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    /// Number of distinct Pauli strings with a stored coefficient.
    pub fn cardinality(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, p: &PauliString) -> Complex64 {
        self.terms.get(p).copied().unwrap_or_default()
    }

    pub fn iter(&self) -> btree_map::Iter<'_, PauliString, Complex64> {
        self.terms.iter()
    }

    pub fn strings(&self) -> impl Iterator<Item = &PauliString> {
        self.terms.keys()
    }

    /// Add `scale · term`, dropping the entry if it falls below the prune tolerance.
    pub fn add_scaled(&mut self, term: &PauliTerm, scale: Complex64) -> Result<()> {
        ensure_same(self.n_qubits, term.n_qubits)?;
        let c = term.total_coefficient() * scale;
        let entry = self.terms.entry(term.string).or_default();
        *entry += c;
        if entry.norm() < PRUNE_TOL {
            self.terms.remove(&term.string);
        }
        Ok(())
    }

    /// Raw accumulation without pruning. Call [`prune`](Self::prune) when done.
    pub(crate) fn accumulate(&mut self, p: PauliString, c: Complex64) {
        *self.terms.entry(p).or_default() += c;
    }

    pub fn prune(&mut self) {
        self.terms.retain(|_, c| c.norm() >= PRUNE_TOL);
    }

    pub fn scaled(&self, s: Complex64) -> PauliSum {
        let mut out = PauliSum {
            n_qubits: self.n_qubits,
            terms: self.terms.iter().map(|(p, c)| (*p, c * s)).collect(),
        };
        out.prune();
        out
    }

    pub fn add(&self, other: &PauliSum) -> Result<PauliSum> {
        self.add_combined(other, Complex64::new(1.0, 0.0))
    }

    /// `self + s · other`.
    pub fn add_combined(&self, other: &PauliSum, s: Complex64) -> Result<PauliSum> {
        ensure_same(self.n_qubits, other.n_qubits)?;
        let mut out = self.clone();
        for (p, c) in &other.terms {
            out.accumulate(*p, c * s);
        }
        out.prune();
        Ok(out)
    }

    /// Operator product `self · other`.
    pub fn mul(&self, other: &PauliSum) -> Result<PauliSum> {
        ensure_same(self.n_qubits, other.n_qubits)?;
        let mut out = PauliSum {
            n_qubits: self.n_qubits,
            terms: BTreeMap::new(),
        };
        for (pa, ca) in &self.terms {
            for (pb, cb) in &other.terms {
                let (k, p) = pa.mul(pb);
                out.accumulate(p, ca * cb * phase_factor(k));
            }
        }
        out.prune();
        Ok(out)
    }

    /// `[self, other] = self·other − other·self`.
    pub fn commutator(&self, other: &PauliSum) -> Result<PauliSum> {
        self.mul(other)?.add_combined(&other.mul(self)?, Complex64::new(-1.0, 0.0))
    }

    /// `{self, other} = self·other + other·self`.
    pub fn anticommutator(&self, other: &PauliSum) -> Result<PauliSum> {
        self.mul(other)?.add(&other.mul(self)?)
    }

    pub fn adjoint(&self) -> PauliSum {
        PauliSum {
            n_qubits: self.n_qubits,
            terms: self.terms.iter().map(|(p, c)| (*p, c.conj())).collect(),
        }
    }

    /// Largest imaginary part over all coefficients. Strings are Hermitian,
    /// so a sum is Hermitian exactly when this is zero.
    pub fn max_imag(&self) -> f64 {
        self.terms.values().map(|c| c.im.abs()).fold(0.0, f64::max)
    }

    pub fn is_hermitian(&self, tol: f64) -> bool {
        self.max_imag() < tol
    }

    /// Sum of coefficient magnitudes; an upper bound on the operator norm.
    pub fn one_norm(&self) -> f64 {
        self.terms.values().map(|c| c.norm()).sum()
    }

    /// Largest absolute coefficient difference against `other`, over the union of strings.
    pub fn max_coefficient_diff(&self, other: &PauliSum) -> f64 {
        let mut d: f64 = 0.0;
        for (p, c) in &self.terms {
            d = d.max((c - other.coefficient(p)).norm());
        }
        for (p, c) in &other.terms {
            if !self.terms.contains_key(p) {
                d = d.max(c.norm());
            }
        }
        d
    }

    /// Union of the supports of all strings.
    pub fn support(&self) -> u64 {
        self.terms.keys().fold(0, |acc, p| acc | p.support())
    }

    /// Dense matrix; intended for small systems only.
    pub fn to_matrix(&self) -> DMatrix<Complex64> {
        let dim = 1usize << self.n_qubits;
        let mut m = DMatrix::zeros(dim, dim);
        for (p, c) in &self.terms {
            for j in 0..dim {
                let (i, a) = p.apply_to_basis(j);
                m[(i, j)] += a * c;
            }
        }
        m
    }

    /// Apply to a dense state vector.
    pub fn apply(&self, psi: &[Complex64]) -> Vec<Complex64> {
        let mut out = vec![Complex64::default(); psi.len()];
        for (p, c) in &self.terms {
            for (j, a) in psi.iter().enumerate() {
                if a.re == 0.0 && a.im == 0.0 {
                    continue;
                }
                let (i, f) = p.apply_to_basis(j);
                out[i] += c * f * a;
            }
        }
        out
    }

    /// Re-express with a different register width; fails if a term does not fit.
    pub fn with_qubits(&self, n_qubits: usize) -> Result<PauliSum> {
        let mut out = PauliSum::new(n_qubits)?;
        for (p, c) in &self.terms {
            check_fits(n_qubits, p)?;
            out.terms.insert(*p, *c);
        }
        Ok(out)
    }
}

impl<'a> IntoIterator for &'a PauliSum {
    type Item = (&'a PauliString, &'a Complex64);
    type IntoIter = btree_map::Iter<'a, PauliString, Complex64>;

    fn into_iter(self) -> Self::IntoIter {
        self.terms.iter()
    }
}
