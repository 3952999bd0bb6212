//! Excitation-like gates: generators with spectrum {+1, −1, 0}.

use num_complex::Complex64;

use crate::error::{ensure_same, Error, Result};
use crate::pauli::{PauliString, PauliSum};

const SPECTRUM_TOL: f64 = 1e-10;

/// Check `G³ = G` and `P0 = I − G²` on the Pauli algebra.
fn check_spectrum(g: &PauliSum, p0: &PauliSum) -> Result<()> {
    let g2 = g.mul(g)?;
    let g3 = g2.mul(g)?;
    if g3.max_coefficient_diff(g) > SPECTRUM_TOL {
        return Err(Error::InvalidGenerator("excitation generator violates G³ = G".into()));
    }
    let one = PauliSum::identity(g.n_qubits(), Complex64::new(1.0, 0.0))?;
    let expected_p0 = one.add_combined(&g2, Complex64::new(-1.0, 0.0))?;
    if expected_p0.max_coefficient_diff(p0) > SPECTRUM_TOL {
        return Err(Error::InvalidGenerator("P0 differs from I − G²".into()));
    }
    if !g.is_hermitian(SPECTRUM_TOL) {
        return Err(Error::InvalidGenerator("excitation generator is not Hermitian".into()));
    }
    Ok(())
}

/// `V†·h·V` with `V(τ) = cos(τ/2)·I − i·sin(τ/2)·G + (1 − cos(τ/2))·P0`.
///
/// Expanded as
/// `c²H + s²GHG + d²P0HP0 − i·cs[H,G] + cd{H,P0} + i·sd(GHP0 − P0HG)`
/// with `c = cos(τ/2)`, `s = sin(τ/2)`, `d = 1 − c`.
pub fn fold_excitation_gate(h: &PauliSum, g: &PauliSum, p0: &PauliSum, tau: f64) -> Result<PauliSum> {
    ensure_same(h.n_qubits(), g.n_qubits())?;
    ensure_same(h.n_qubits(), p0.n_qubits())?;
    check_spectrum(g, p0)?;

    let (s, c) = (tau / 2.0).sin_cos();
    let d = 1.0 - c;
    let re = |x: f64| Complex64::new(x, 0.0);
    let im = |x: f64| Complex64::new(0.0, x);

    let hg = h.mul(g)?;
    let gh = g.mul(h)?;
    let ghg = gh.mul(g)?;
    let mut out = h.scaled(re(c * c));
    out = out.add_combined(&ghg, re(s * s))?;
    // [H,G] = HG − GH
    out = out.add_combined(&hg, im(-c * s))?;
    out = out.add_combined(&gh, im(c * s))?;
    if !p0.is_empty() {
        let hp = h.mul(p0)?;
        let ph = p0.mul(h)?;
        out = out.add_combined(&ph.mul(p0)?, re(d * d))?;
        out = out.add_combined(&hp, re(c * d))?;
        out = out.add_combined(&ph, re(c * d))?;
        out = out.add_combined(&gh.mul(p0)?, im(s * d))?;
        out = out.add_combined(&ph.mul(g)?, im(-s * d))?;
    }
    Ok(out)
}

/// Generator and `P0` of a qubit excitation between `a` and `b`:
/// `G = (X_aY_b − Y_aX_b)/2`, `P0 = (I + Z_aZ_b)/2`.
pub fn qubit_excitation_generator(n_qubits: usize, a: usize, b: usize) -> Result<(PauliSum, PauliSum)> {
    use crate::pauli::Pauli::{X, Y, Z};
    let s = |ops: &[(usize, crate::pauli::Pauli)]| PauliString::from_ops(ops.iter().copied());
    let g = PauliSum::from_pairs(
        n_qubits,
        [
            (s(&[(a, X), (b, Y)]), Complex64::new(0.5, 0.0)),
            (s(&[(a, Y), (b, X)]), Complex64::new(-0.5, 0.0)),
        ],
    )?;
    let p0 = PauliSum::from_pairs(
        n_qubits,
        [
            (PauliString::IDENTITY, Complex64::new(0.5, 0.0)),
            (s(&[(a, Z), (b, Z)]), Complex64::new(0.5, 0.0)),
        ],
    )?;
    Ok((g, p0))
}
