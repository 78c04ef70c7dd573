//! Small dense-matrix helpers shared across modules.

use nalgebra::{Matrix2, Matrix4, SymmetricEigen};
use num_complex::Complex64;

/// Eigenvalues of a 4x4 Hermitian matrix, ascending.
pub(crate) fn hermitian_eigenvalues4(m: &Matrix4<Complex64>) -> [f64; 4] {
    let eig = SymmetricEigen::new(*m);
    let mut values = [
        eig.eigenvalues[0],
        eig.eigenvalues[1],
        eig.eigenvalues[2],
        eig.eigenvalues[3],
    ];
    values.sort_by(f64::total_cmp);
    values
}

/// Eigenvalues of a 2x2 Hermitian matrix in closed form, ascending.
pub(crate) fn hermitian_eigenvalues2(m: &Matrix2<Complex64>) -> [f64; 2] {
    let a = m[(0, 0)].re;
    let b = m[(1, 1)].re;
    let half_gap = ((a - b) / 2.0).hypot(m[(0, 1)].norm());
    let mid = (a + b) / 2.0;
    [mid - half_gap, mid + half_gap]
}

/// Largest absolute deviation of `m` from Hermitian symmetry.
pub(crate) fn hermitian_defect<const N: usize>(
    m: &nalgebra::SMatrix<Complex64, N, N>,
) -> f64 {
    let mut worst = 0.0_f64;
    for i in 0..N {
        for j in 0..N {
            worst = worst.max((m[(i, j)] - m[(j, i)].conj()).norm());
        }
    }
    worst
}

/// Largest absolute entry-wise difference between two complex matrices.
pub(crate) fn max_entry_distance<const N: usize>(
    a: &nalgebra::SMatrix<Complex64, N, N>,
    b: &nalgebra::SMatrix<Complex64, N, N>,
) -> f64 {
    let mut worst = 0.0_f64;
    for i in 0..N {
        for j in 0..N {
            worst = worst.max((a[(i, j)] - b[(i, j)]).norm());
        }
    }
    worst
}

/// Largest absolute entry of `m^dagger m - I`.
pub(crate) fn unitarity_defect<const N: usize>(
    m: &nalgebra::SMatrix<Complex64, N, N>,
) -> f64 {
    let gram = m.adjoint() * m;
    let mut worst = 0.0_f64;
    for i in 0..N {
        for j in 0..N {
            let expected = if i == j {
                Complex64::new(1.0, 0.0)
            } else {
                Complex64::default()
            };
            worst = worst.max((gram[(i, j)] - expected).norm());
        }
    }
    worst
}
