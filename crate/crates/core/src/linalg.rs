//! Dense helpers: Hermitian eigendecomposition through LAPACK and small
//! matrix functions built on it.

use std::os::raw::c_char;

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;

use crate::error::{Error, Result};

pub type CMatrix = DMatrix<Complex64>;
pub type CVector = DVector<Complex64>;

/// Eigenpairs of a Hermitian matrix, eigenvalues ascending; eigenvectors are columns.
#[derive(Debug, Clone)]
pub struct HermitianEigen {
    pub values: Vec<f64>,
    pub vectors: CMatrix,
}

/// Hermitian eigendecomposition. Uses the lower triangle only. Real input
/// takes the (much faster) real-symmetric driver.
pub fn eigh(m: &CMatrix) -> Result<HermitianEigen> {
    let n = m.nrows();
    assert_eq!(n, m.ncols(), "eigh needs a square matrix");
    if n == 0 {
        return Ok(HermitianEigen {
            values: vec![],
            vectors: CMatrix::zeros(0, 0),
        });
    }
    if m.iter().all(|c| c.im == 0.0) {
        eigh_real(m)
    } else {
        eigh_complex(m)
    }
}

fn eigh_real(m: &CMatrix) -> Result<HermitianEigen> {
    let n = m.nrows() as i32;
    // nalgebra storage is column-major, as LAPACK expects.
    let mut a: Vec<f64> = m.as_slice().iter().map(|c| c.re).collect();
    let mut w = vec![0.0f64; n as usize];
    let jobz = b'V' as c_char;
    let uplo = b'L' as c_char;
    let mut info = 0;
    let mut work_q = [0.0f64];
    let mut iwork_q = [0i32];
    unsafe {
        lapack_sys::dsyevd_(
            &jobz, &uplo, &n, a.as_mut_ptr(), &n, w.as_mut_ptr(), work_q.as_mut_ptr(), &-1,
            iwork_q.as_mut_ptr(), &-1, &mut info,
        );
    }
    if info != 0 {
        return Err(Error::Eigensolver(info));
    }
    let lwork = work_q[0] as i32;
    let liwork = iwork_q[0];
    let mut work = vec![0.0f64; lwork.max(1) as usize];
    let mut iwork = vec![0i32; liwork.max(1) as usize];
    unsafe {
        lapack_sys::dsyevd_(
            &jobz, &uplo, &n, a.as_mut_ptr(), &n, w.as_mut_ptr(), work.as_mut_ptr(), &lwork,
            iwork.as_mut_ptr(), &liwork, &mut info,
        );
    }
    if info != 0 {
        return Err(Error::Eigensolver(info));
    }
    let n = n as usize;
    let vectors = CMatrix::from_iterator(n, n, a.into_iter().map(|x| Complex64::new(x, 0.0)));
    Ok(HermitianEigen { values: w, vectors })
}

fn eigh_complex(m: &CMatrix) -> Result<HermitianEigen> {
    let n = m.nrows() as i32;
    let mut a: Vec<Complex64> = m.as_slice().to_vec();
    let mut w = vec![0.0f64; n as usize];
    let jobz = b'V' as c_char;
    let uplo = b'L' as c_char;
    let mut info = 0;
    let mut work_q = [Complex64::default()];
    let mut rwork_q = [0.0f64];
    let mut iwork_q = [0i32];
    // Complex64 is #[repr(C)] {re, im}, layout-compatible with LAPACK's complex type.
    unsafe {
        lapack_sys::zheevd_(
            &jobz, &uplo, &n, a.as_mut_ptr() as *mut _, &n, w.as_mut_ptr(), work_q.as_mut_ptr() as *mut _, &-1,
            rwork_q.as_mut_ptr(), &-1, iwork_q.as_mut_ptr(), &-1, &mut info,
        );
    }
    if info != 0 {
        return Err(Error::Eigensolver(info));
    }
    let lwork = work_q[0].re as i32;
    let lrwork = rwork_q[0] as i32;
    let liwork = iwork_q[0];
    let mut work = vec![Complex64::default(); lwork.max(1) as usize];
    let mut rwork = vec![0.0f64; lrwork.max(1) as usize];
    let mut iwork = vec![0i32; liwork.max(1) as usize];
    unsafe {
        lapack_sys::zheevd_(
            &jobz, &uplo, &n, a.as_mut_ptr() as *mut _, &n, w.as_mut_ptr(), work.as_mut_ptr() as *mut _, &lwork,
            rwork.as_mut_ptr(), &lrwork, iwork.as_mut_ptr(), &liwork, &mut info,
        );
    }
    if info != 0 {
        return Err(Error::Eigensolver(info));
    }
    let n = n as usize;
    Ok(HermitianEigen {
        values: w,
        vectors: CMatrix::from_vec(n, n, a),
    })
}

/// Largest elementwise deviation from Hermiticity.
pub fn hermitian_defect(m: &CMatrix) -> f64 {
    (m - m.adjoint()).iter().map(|c| c.norm()).fold(0.0, f64::max)
}

/// `exp(−i·τ/2·G)` for Hermitian `G` via its spectral decomposition.
pub fn unitary_from_generator(generator: &CMatrix, tau: f64) -> Result<CMatrix> {
    let eig = eigh(generator)?;
    let phases = CVector::from_iterator(
        eig.values.len(),
        eig.values.iter().map(|&l| Complex64::from_polar(1.0, -0.5 * tau * l)),
    );
    let v = &eig.vectors;
    Ok(v * CMatrix::from_diagonal(&phases) * v.adjoint())
}

/// Kronecker product with `b` on the lower-order bits: `(a ⊗ b)`.
pub fn kron(a: &CMatrix, b: &CMatrix) -> CMatrix {
    a.kronecker(b)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn real_and_complex_paths_agree_with_reconstruction() {
        let m = CMatrix::from_row_slice(
            3,
            3,
            &[c(2.0, 0.0), c(1.0, -1.0), c(0.0, 0.5), c(1.0, 1.0), c(-1.0, 0.0), c(0.3, 0.0), c(0.0, -0.5), c(0.3, 0.0), c(0.5, 0.0)],
        );
        let e = eigh(&m).unwrap();
        let d = CMatrix::from_diagonal(&CVector::from_iterator(3, e.values.iter().map(|&x| c(x, 0.0))));
        let rec = &e.vectors * d * e.vectors.adjoint();
        assert!((rec - &m).camax() < 1e-12);
        assert!(e.values.windows(2).all(|w| w[0] <= w[1]));

        let r = CMatrix::from_row_slice(2, 2, &[c(0.0, 0.0), c(1.0, 0.0), c(1.0, 0.0), c(0.0, 0.0)]);
        let e = eigh(&r).unwrap();
        assert!((e.values[0] + 1.0).abs() < 1e-14 && (e.values[1] - 1.0).abs() < 1e-14);
    }

    #[test]
    fn generator_exponential_of_pauli_x() {
        let x = CMatrix::from_row_slice(2, 2, &[c(0.0, 0.0), c(1.0, 0.0), c(1.0, 0.0), c(0.0, 0.0)]);
        let tau = 0.7f64;
        let u = unitary_from_generator(&x, tau).unwrap();
        let expect = CMatrix::identity(2, 2) * c((tau / 2.0).cos(), 0.0) - &x * c(0.0, (tau / 2.0).sin());
        assert!((u - expect).camax() < 1e-13);
    }
}
