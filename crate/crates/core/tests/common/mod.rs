//! Dense-matrix oracles built without the library's own matrix helpers.
#![allow(dead_code)]

use cliffold::circuits::Gate;
use cliffold::pauli::{Pauli, PauliString, PauliSum};
use nalgebra::DMatrix;
use num_complex::Complex64;
use rand::Rng;

pub type M = DMatrix<Complex64>;

pub fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

pub fn single(p: Pauli) -> M {
    let (o, z, i) = (c(1.0, 0.0), c(0.0, 0.0), c(0.0, 1.0));
    let v = match p {
        Pauli::I => [o, z, z, o],
        Pauli::X => [z, o, o, z],
        Pauli::Y => [z, -i, i, z],
        Pauli::Z => [o, z, z, -o],
    };
    M::from_row_slice(2, 2, &v)
}

/// `op` on qubit `q` of an `n`-qubit register; qubit 0 is the least significant bit.
pub fn on_qubit(op: &M, q: usize, n: usize) -> M {
    let mut out = M::identity(1, 1);
    for k in (0..n).rev() {
        let f = if k == q { op.clone() } else { M::identity(2, 2) };
        out = out.kronecker(&f);
    }
    out
}

pub fn pauli(p: &PauliString, n: usize) -> M {
    let mut out = M::identity(1, 1);
    for k in (0..n).rev() {
        out = out.kronecker(&single(p.get(k)));
    }
    out
}

pub fn hamiltonian(h: &PauliSum) -> M {
    let n = h.n_qubits();
    let mut out = M::zeros(1 << n, 1 << n);
    for (p, coef) in h.iter() {
        out += pauli(p, n) * *coef;
    }
    out
}

/// A `k`-qubit operator acting on `targets` (local bit `m` on `targets[m]`).
pub fn embed(local: &M, targets: &[usize], n: usize) -> M {
    let dim = 1usize << n;
    let mask: usize = targets.iter().map(|&q| 1usize << q).sum();
    let loc = |j: usize| -> usize { targets.iter().enumerate().map(|(m, &q)| ((j >> q) & 1) << m).sum() };
    let mut out = M::zeros(dim, dim);
    for i in 0..dim {
        for j in 0..dim {
            if i & !mask == j & !mask {
                out[(i, j)] = local[(loc(i), loc(j))];
            }
        }
    }
    out
}

pub fn gate(g: &Gate, n: usize) -> M {
    let s2 = std::f64::consts::FRAC_1_SQRT_2;
    let (o, z, i) = (c(1.0, 0.0), c(0.0, 0.0), c(0.0, 1.0));
    let p0 = M::from_row_slice(2, 2, &[o, z, z, z]);
    let p1 = M::from_row_slice(2, 2, &[z, z, z, o]);
    let controlled = |ctl: usize, tgt: usize, u: M| on_qubit(&p0, ctl, n) + on_qubit(&p1, ctl, n) * on_qubit(&u, tgt, n);
    match g {
        Gate::H(q) => on_qubit(&M::from_row_slice(2, 2, &[c(s2, 0.0), c(s2, 0.0), c(s2, 0.0), c(-s2, 0.0)]), *q, n),
        Gate::S(q) => on_qubit(&M::from_row_slice(2, 2, &[o, z, z, i]), *q, n),
        Gate::Sdg(q) => on_qubit(&M::from_row_slice(2, 2, &[o, z, z, -i]), *q, n),
        Gate::X(q) => on_qubit(&single(Pauli::X), *q, n),
        Gate::Y(q) => on_qubit(&single(Pauli::Y), *q, n),
        Gate::Z(q) => on_qubit(&single(Pauli::Z), *q, n),
        Gate::CX { control, target } => controlled(*control, *target, single(Pauli::X)),
        Gate::CY { control, target } => controlled(*control, *target, single(Pauli::Y)),
        Gate::CZ { control, target } => controlled(*control, *target, single(Pauli::Z)),
        Gate::Swap(a, b) => {
            let mut m = M::identity(1 << n, 1 << n);
            for p in [Pauli::X, Pauli::Y, Pauli::Z] {
                m += on_qubit(&single(p), *a, n) * on_qubit(&single(p), *b, n);
            }
            m * c(0.5, 0.0)
        }
        Gate::PauliRotation { generator, angle, .. } => {
            M::identity(1 << n, 1 << n) * c((angle / 2.0).cos(), 0.0) - pauli(generator, n) * c(0.0, (angle / 2.0).sin())
        }
        Gate::General { targets, generator, angle, .. } => {
            (embed(generator, targets, n) * c(0.0, -angle / 2.0)).exp()
        }
    }
}

/// `M†·H·M` for `M = V_N ⋯ V_1`.
pub fn fold_dense(h: &M, gates: &[Gate], n: usize) -> M {
    let mut m = M::identity(1 << n, 1 << n);
    for g in gates {
        m = gate(g, n) * m;
    }
    m.adjoint() * h * m
}

pub fn max_diff(a: &M, b: &M) -> f64 {
    (a - b).iter().map(|x| x.norm()).fold(0.0, f64::max)
}

pub fn random_string<R: Rng>(rng: &mut R, n: usize) -> PauliString {
    let full = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
    PauliString::new(rng.gen::<u64>() & full, rng.gen::<u64>() & full)
}

/// Hermitian sum with real coefficients in [−1, 1].
pub fn random_hamiltonian<R: Rng>(rng: &mut R, n: usize, terms: usize) -> PauliSum {
    let pairs: Vec<(PauliString, Complex64)> =
        (0..terms).map(|_| (random_string(rng, n), c(rng.gen_range(-1.0..1.0), 0.0))).collect();
    PauliSum::from_pairs(n, pairs).unwrap()
}

/// Random Hermitian `2^k × 2^k` matrix.
pub fn random_hermitian<R: Rng>(rng: &mut R, k: usize) -> M {
    let d = 1 << k;
    let a = M::from_fn(d, d, |_, _| c(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)));
    (&a + a.adjoint()) * c(0.5, 0.0)
}

pub fn distinct<R: Rng>(rng: &mut R, n: usize, k: usize) -> Vec<usize> {
    rand::seq::index::sample(rng, n, k).into_vec()
}

/// One gate of every class, placed randomly.
pub fn random_gate<R: Rng>(rng: &mut R, n: usize, class: usize) -> Gate {
    let q = distinct(rng, n, 2.min(n));
    let angle = rng.gen_range(-4.0..4.0);
    match class % 13 {
        0 => Gate::H(q[0]),
        1 => Gate::S(q[0]),
        2 => Gate::Sdg(q[0]),
        3 => Gate::X(q[0]),
        4 => Gate::Y(q[0]),
        5 => Gate::Z(q[0]),
        6 => Gate::CX { control: q[0], target: q[1] },
        7 => Gate::CY { control: q[0], target: q[1] },
        8 => Gate::CZ { control: q[0], target: q[1] },
        9 => Gate::Swap(q[0], q[1]),
        10 => {
            let mut s = random_string(rng, n);
            while s.is_identity() {
                s = random_string(rng, n);
            }
            Gate::rotation(s, angle)
        }
        11 => {
            let k = rng.gen_range(1..=3.min(n));
            let targets = distinct(rng, n, k);
            Gate::General {
                targets,
                generator: random_hermitian(rng, k),
                angle,
                parametrized: false,
            }
        }
        _ => {
            // Clifford-angle rotation
            let s = random_string(rng, n);
            Gate::rotation(if s.is_identity() { PauliString::single(0, Pauli::Z) } else { s }, std::f64::consts::FRAC_PI_2 * rng.gen_range(0..4) as f64)
        }
    }
}

/// Random product state over `partition` plus its dense vector built by explicit Kronecker products.
pub fn random_product<R: Rng>(rng: &mut R, partition: &cliffold::circuits::Partition) -> cliffold::simulator::ClusterState {
    cliffold::simulator::ClusterState::random(partition, rng)
}

/// Dense product vector assembled gate-free: amplitude of |j⟩ is the product of cluster amplitudes.
pub fn product_dense(s: &cliffold::simulator::ClusterState) -> nalgebra::DVector<Complex64> {
    let n = s.n_qubits();
    let p = s.partition();
    nalgebra::DVector::from_fn(1 << n, |j, _| {
        (0..p.n_clusters())
            .map(|k| {
                let l: usize = p.cluster(k).iter().enumerate().map(|(m, &q)| ((j >> q) & 1) << m).sum();
                s.vector(k)[l]
            })
            .product()
    })
}

pub fn lowest_eigenvalue(m: &M) -> f64 {
    m.clone().symmetric_eigen().eigenvalues.iter().cloned().fold(f64::INFINITY, f64::min)
}
