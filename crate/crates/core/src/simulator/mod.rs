//! Product-state simulation, dense diagonalization and ground-state fidelities.

mod dense;
mod exact;
mod state;

pub use exact::{
    apply_circuit_dense, dense_expectation, exact_ground, fidelity_csv, fidelity_table, group_degenerate,
    GroupFidelity, SpectrumSlice, DEGENERACY_TOL, DENSE_QUBIT_CAP,
};
pub use state::{apply_circuit, expectation, ClusterState, ClusterStateRecord};

pub(crate) use dense::normalize;
pub(crate) use state::FactorTable;

#[cfg(test)]
mod tests {
    use super::*;
    use crate::circuits::{Circuit, Gate, Partition};
    use crate::pauli::PauliSum;
    use num_complex::Complex64;

    #[test]
    fn spec_expectation_examples() {
        let p = Partition::parse("0;1").unwrap();
        let s = ClusterState::zero(&p);
        let id = PauliSum::from_labels(2, &[("I", 3.5)]).unwrap();
        assert_eq!(expectation(&id, &s).unwrap(), 3.5);
        let zz = PauliSum::from_labels(2, &[("Z0 Z1", -1.0)]).unwrap();
        assert_eq!(expectation(&zz, &s).unwrap(), -1.0);
    }

    #[test]
    fn circuit_application_is_cluster_local() {
        let p = Partition::parse("0-1;2").unwrap();
        let s = ClusterState::zero(&p);
        let out = apply_circuit(&s, &Circuit::new(3, vec![Gate::X(0)]).unwrap()).unwrap();
        assert_eq!(out.vector(0)[1], Complex64::new(1.0, 0.0));
        let hh = Circuit::new(3, vec![Gate::H(2), Gate::H(2)]).unwrap();
        let back = apply_circuit(&s, &hh).unwrap();
        assert!((back.vector(1)[0] - 1.0).norm() < 1e-12);
        let cross = Circuit::new(3, vec![Gate::CX { control: 1, target: 2 }]).unwrap();
        assert!(matches!(apply_circuit(&s, &cross), Err(crate::Error::CrossClusterGate { .. })));
    }

    #[test]
    fn bell_spectrum_and_fidelity() {
        let h = PauliSum::from_labels(2, &[("X0 X1", -1.0), ("Z0 Z1", -1.0)]).unwrap();
        let spec = exact_ground(&h).unwrap();
        assert!((spec.ground_energy() + 2.0).abs() < 1e-12);
        let s = ClusterState::zero(&Partition::parse("0;1").unwrap());
        let m = Circuit::new(2, vec![Gate::H(0), Gate::CX { control: 0, target: 1 }]).unwrap();
        let rows = fidelity_table(&s, &m, &spec).unwrap();
        assert!((rows[0].fidelity - 1.0).abs() < 1e-12);
        let total: f64 = rows.iter().map(|r| r.fidelity).sum();
        assert!((total - 1.0).abs() < 1e-12);
    }

    #[test]
    fn degeneracy_grouping() {
        assert_eq!(group_degenerate(&[-1.0, -1.0 + 1e-9, 0.0, 1.0], 1e-8), vec![vec![0, 1], vec![2], vec![3]]);
        let h = PauliSum::from_labels(2, &[("I", 0.7)]).unwrap();
        let spec = exact_ground(&h).unwrap();
        assert_eq!(spec.degeneracy_groups.len(), 1);
        assert!(spec.eigenvalues.iter().all(|v| (v - 0.7).abs() < 1e-14));
    }

    #[test]
    fn cap_is_enforced() {
        let h = PauliSum::new(15).unwrap();
        assert!(matches!(exact_ground(&h), Err(crate::Error::FeasibilityCap { .. })));
    }
}
