//! Rotation-like gates (involutory generators) and projector-generated gates.

use num_complex::Complex64;

use crate::circuits::is_clifford_angle;
use crate::error::{Error, Result};
use crate::pauli::{phase_factor, PauliString, PauliSum, PauliTerm};

use super::map_terms;

/// Conjugate `c·Q` by a rotation about `G` through `k·π/2`; exact, one term out.
pub(super) fn rotate_string(q: &PauliString, c: Complex64, g: &PauliString, k: u8) -> (PauliString, Complex64) {
    if q.commutes_with(g) {
        return (*q, c);
    }
    // Q → cos(kπ/2)·Q + sin(kπ/2)·iGQ
    let (m, gq) = g.mul(q);
    let igq = c * phase_factor(m + 1);
    match k % 4 {
        0 => (*q, c),
        1 => (gq, igq),
        2 => (*q, -c),
        _ => (gq, -igq),
    }
}

/// `V†·h·V` with `V = exp(−i·τ/2·G)` for a unit-coefficient Pauli string `G`.
///
/// Commuting terms are unchanged; each anticommuting `Q` maps to
/// `cos τ·Q + sin τ·(iGQ)`.
pub fn fold_pauli_rotation(h: &PauliSum, generator: &PauliTerm, tau: f64) -> Result<PauliSum> {
    crate::error::ensure_same(h.n_qubits(), generator.n_qubits)?;
    let coeff = generator.total_coefficient();
    if (coeff - Complex64::new(1.0, 0.0)).norm() > 1e-12 {
        return Err(Error::InvalidGenerator(format!(
            "rotation generator must have coefficient 1, got {coeff}"
        )));
    }
    Ok(fold_rotation_string(h, &generator.string, tau))
}

pub(crate) fn fold_rotation_string(h: &PauliSum, g: &PauliString, tau: f64) -> PauliSum {
    if is_clifford_angle(tau) {
        let k = (tau / std::f64::consts::FRAC_PI_2).round() as i64;
        return map_terms(h, |p, c| vec![rotate_string(p, c, g, k.rem_euclid(4) as u8)]);
    }
    let (sin, cos) = tau.sin_cos();
    map_terms(h, |p, c| {
        if p.commutes_with(g) {
            vec![(*p, c)]
        } else {
            let (m, gq) = g.mul(p);
            vec![(*p, c * cos), (gq, c * phase_factor(m + 1) * sin)]
        }
    })
}

/// Split `(I ± G̃)/2` into `(G̃, ±1)`.
fn projector_parts(p: &PauliSum) -> Result<(PauliString, f64)> {
    let bad = || Error::InvalidGenerator("projector generator must be (I − G̃)/2 for a single Pauli string G̃".into());
    if p.cardinality() != 2 {
        return Err(bad());
    }
    let half = Complex64::new(0.5, 0.0);
    if (p.coefficient(&PauliString::IDENTITY) - half).norm() > 1e-12 {
        return Err(bad());
    }
    let (g, c) = p.iter().find(|(s, _)| !s.is_identity()).ok_or_else(bad)?;
    if c.im.abs() > 1e-12 || (c.re.abs() - 0.5).abs() > 1e-12 {
        return Err(bad());
    }
    Ok((*g, if c.re < 0.0 { -1.0 } else { 1.0 }))
}

/// `V†·h·V` with `V = exp(−i·τ/2·G)` and `G = (I − G̃)/2` a projector.
///
/// Up to a global phase `V = exp(−i·τ̃/2·G̃)` with `τ̃ = −τ/2`, so the fold
/// reduces to a rotation by `G̃`. `(I + G̃)/2` is accepted as well.
pub fn fold_projector_gate(h: &PauliSum, projector_generator: &PauliSum, tau: f64) -> Result<PauliSum> {
    crate::error::ensure_same(h.n_qubits(), projector_generator.n_qubits())?;
    let (g, sign) = projector_parts(projector_generator)?;
    Ok(fold_rotation_string(h, &g, sign * tau / 2.0))
}
