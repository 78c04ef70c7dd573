//! Entanglement and information metrics on reduced density matrices.
//!
//! Entanglement is certified through the partial transpose: for two qubits a
//! negative eigenvalue is necessary and sufficient. The scalar degree of
//! entanglement is `sum_i |eta_i| - 1` over the partial-transpose spectrum;
//! it vanishes exactly on separable states and reaches 1 on Bell states.
//!
//! Local information of one qubit is defined operationally as
//! `I_local = (2 F0 - 1)^2` where `F0` maximizes `<phi| A rho A^dagger |phi>`
//! over SU(2) rotations `A`. The maximum is reached by rotating the largest
//! eigenvector of `rho` onto `|phi>`, so `F0 = lambda_max(rho)` in closed
//! form; the numerical optimizer is kept because the definition is
//! operational, and every call cross-checks the two routes against each
//! other.

use nalgebra::{Matrix2, Matrix4, Vector2};
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::evolution::{reduce_single, Qubit, SingleQubitDensity, TwoQubitDensity};
use crate::linalg;

/// Simplex value-spread termination tolerance. The fidelity landscape is
/// smooth, so stopping this tight leaves the returned maximum accurate to
/// roughly the same scale — far inside the agreement gate below, and tight
/// enough that `(2 F0 - 1)^2` inherits better than 1e-6 accuracy.
pub const OPTIMIZER_TOLERANCE: f64 = 1e-12;
/// Required agreement between the optimizer and the closed form.
pub const FIDELITY_AGREEMENT: f64 = 1e-6;

/// Deterministic multi-start seeds for the three-angle SU(2) chart, chosen
/// off the chart's symmetry axes.
const OPTIMIZER_STARTS: [[f64; 3]; 8] = [
    [0.3, 0.5, 0.9],
    [0.3, 0.5, 4.0],
    [0.3, 3.6, 0.9],
    [0.3, 3.6, 4.0],
    [1.2, 0.5, 0.9],
    [1.2, 0.5, 4.0],
    [1.2, 3.6, 0.9],
    [1.2, 3.6, 4.0],
];

/// Spectrum of the partially transposed two-qubit density matrix and the
/// entanglement scalars derived from it.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PptReport {
    /// Partial-transpose eigenvalues, ascending. They sum to 1.
    pub eigenvalues: [f64; 4],
    /// `eigenvalues[0]`; negative exactly when the state is entangled.
    pub min_eigenvalue: f64,
    /// Degree of entanglement `sum |eta_i| - 1`, in `[0, 1]` up to round-off.
    pub doe: f64,
}

/// Impurities, maximal fidelities and local/non-local information of a
/// two-qubit state and its marginals.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct InfoReport {
    pub xi1: f64,
    pub xi2: f64,
    pub xi12: f64,
    pub f0_1: f64,
    pub f0_2: f64,
    pub i_local_1: f64,
    pub i_local_2: f64,
    pub i_local_total: f64,
    pub i_nonlocal: f64,
}

/// Normalized single-qubit pure state used as the fidelity reference.
#[derive(Clone, Debug, PartialEq)]
pub struct PureQubit {
    vector: Vector2<Complex64>,
}

impl PureQubit {
    /// Wraps a state vector, requiring unit norm within 1e-12.
    pub fn new(vector: Vector2<Complex64>) -> Result<Self> {
        let norm_sq: f64 = vector.iter().map(|c| c.norm_sqr()).sum();
        if !norm_sq.is_finite() || (norm_sq - 1.0).abs() > 1e-12 {
            return Err(Error::InvalidInput(format!(
                "reference qubit state must be normalized: |phi|^2 = {norm_sq}"
            )));
        }
        Ok(PureQubit { vector })
    }

    /// Excited-state reference `|e>`.
    pub fn excited() -> Self {
        PureQubit {
            vector: Vector2::new(Complex64::new(1.0, 0.0), Complex64::default()),
        }
    }

    pub fn vector(&self) -> &Vector2<Complex64> {
        &self.vector
    }
}

/// Per-qubit fidelity references drawn from a joint initial state: the
/// principal eigenvector of each marginal.
///
/// For product preparations this is the qubit's own initial state; for
/// entangled preparations, whose marginals are mixed, it is the closest pure
/// proxy. `F0` itself is reference-independent, so the choice only fixes a
/// convention.
pub fn initial_reference_states(rho12: &TwoQubitDensity) -> (PureQubit, PureQubit) {
    let axis = |which| {
        let mut v: Vector2<Complex64> = reduce_single(rho12, which).principal_axis();
        let norm = v.iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt();
        v /= Complex64::new(norm, 0.0);
        PureQubit { vector: v }
    };
    (axis(Qubit::One), axis(Qubit::Two))
}

/// Transpose on the second qubit's indices:
/// `(i1 i2, j1 j2) -> (i1 j2, j1 i2)`. Hermiticity and trace are preserved.
pub fn partial_transpose(rho12: &TwoQubitDensity) -> Matrix4<Complex64> {
    let m = rho12.matrix();
    let mut out = Matrix4::<Complex64>::default();
    for i1 in 0..2 {
        for i2 in 0..2 {
            for j1 in 0..2 {
                for j2 in 0..2 {
                    out[(2 * i1 + j2, 2 * j1 + i2)] = m[(2 * i1 + i2, 2 * j1 + j2)];
                }
            }
        }
    }
    out
}

/// Transpose on the first qubit's indices; spectra coincide with
/// [`partial_transpose`] and this variant exists to assert exactly that.
pub fn partial_transpose_first(rho12: &TwoQubitDensity) -> Matrix4<Complex64> {
    let m = rho12.matrix();
    let mut out = Matrix4::<Complex64>::default();
    for i1 in 0..2 {
        for i2 in 0..2 {
            for j1 in 0..2 {
                for j2 in 0..2 {
                    out[(2 * j1 + i2, 2 * i1 + j2)] = m[(2 * i1 + i2, 2 * j1 + j2)];
                }
            }
        }
    }
    out
}

/// Partial-transpose spectrum and degree of entanglement of `rho12`.
pub fn degree_of_entanglement(rho12: &TwoQubitDensity) -> PptReport {
    let pt = partial_transpose(rho12);
    let eigenvalues = linalg::hermitian_eigenvalues4(&pt);
    let doe = eigenvalues.iter().map(|e| e.abs()).sum::<f64>() - 1.0;
    PptReport {
        eigenvalues,
        min_eigenvalue: eigenvalues[0],
        doe,
    }
}

/// SU(2) element from three chart angles: `[[e^{ip} cos t, e^{is} sin t],
/// [-e^{-is} sin t, e^{-ip} cos t]]`, covering the group up to global phase.
fn su2(x: &[f64; 3]) -> Matrix2<Complex64> {
    let (t, p, s) = (x[0], x[1], x[2]);
    Matrix2::new(
        Complex64::from_polar(t.cos(), p),
        Complex64::from_polar(t.sin(), s),
        -Complex64::from_polar(t.sin(), -s),
        Complex64::from_polar(t.cos(), -p),
    )
}

/// `<phi| A rho A^dagger |phi>` for the chart element at `x`.
fn rotated_fidelity(rho: &Matrix2<Complex64>, phi: &Vector2<Complex64>, x: &[f64; 3]) -> f64 {
    let a = su2(x);
    let y = a.adjoint() * phi;
    let mut value = Complex64::default();
    for i in 0..2 {
        for j in 0..2 {
            value += y[i].conj() * rho[(i, j)] * y[j];
        }
    }
    value.re
}

/// Gradient-free simplex minimization in three dimensions. Returns the best
/// vertex and its value; stops when the simplex's value spread drops below
/// `tol` or after `max_iter` reflections.
fn nelder_mead_min<F: Fn(&[f64; 3]) -> f64>(
    f: &F,
    start: [f64; 3],
    step: f64,
    tol: f64,
    max_iter: usize,
) -> ([f64; 3], f64) {
    const REFLECT: f64 = 1.0;
    const EXPAND: f64 = 2.0;
    const CONTRACT: f64 = 0.5;
    const SHRINK: f64 = 0.5;

    let mut simplex: Vec<([f64; 3], f64)> = Vec::with_capacity(4);
    simplex.push((start, f(&start)));
    for d in 0..3 {
        let mut x = start;
        x[d] += step;
        simplex.push((x, f(&x)));
    }

    for _ in 0..max_iter {
        simplex.sort_by(|a, b| a.1.total_cmp(&b.1));
        if simplex[3].1 - simplex[0].1 < tol {
            break;
        }
        let mut centroid = [0.0; 3];
        for (x, _) in &simplex[..3] {
            for d in 0..3 {
                centroid[d] += x[d] / 3.0;
            }
        }
        let worst = simplex[3];
        let blend = |a: f64| {
            let mut x = [0.0; 3];
            for d in 0..3 {
                x[d] = centroid[d] + a * (centroid[d] - worst.0[d]);
            }
            x
        };
        let xr = blend(REFLECT);
        let fr = f(&xr);
        if fr < simplex[0].1 {
            let xe = blend(EXPAND);
            let fe = f(&xe);
            simplex[3] = if fe < fr { (xe, fe) } else { (xr, fr) };
        } else if fr < simplex[2].1 {
            simplex[3] = (xr, fr);
        } else {
            let xc = if fr < worst.1 {
                blend(CONTRACT)
            } else {
                blend(-CONTRACT)
            };
            let fc = f(&xc);
            if fc < fr.min(worst.1) {
                simplex[3] = (xc, fc);
            } else {
                let best = simplex[0].0;
                for entry in simplex.iter_mut().skip(1) {
                    for (x, b) in entry.0.iter_mut().zip(best) {
                        *x = b + SHRINK * (*x - b);
                    }
                    entry.1 = f(&entry.0);
                }
            }
        }
    }
    simplex
        .into_iter()
        .min_by(|a, b| a.1.total_cmp(&b.1))
        .expect("simplex is non-empty")
}

/// Maximal fidelity `F0 = max_A <phi| A rho A^dagger |phi>` over SU(2).
///
/// Runs the multi-start simplex optimizer over the three-angle chart and
/// cross-checks the result against the closed form `lambda_max(rho)`;
/// disagreement beyond [`FIDELITY_AGREEMENT`] reports an optimization error
/// (a broken chart or optimizer), never a silently wrong value.
pub fn local_fidelity_max(rho: &SingleQubitDensity, phi: &PureQubit) -> Result<f64> {
    rho.validate()?;
    let objective = |x: &[f64; 3]| -rotated_fidelity(rho.matrix(), &phi.vector, x);
    let mut best = (OPTIMIZER_STARTS[0], f64::INFINITY);
    for start in OPTIMIZER_STARTS {
        let candidate = nelder_mead_min(&objective, start, 0.4, OPTIMIZER_TOLERANCE, 600);
        if candidate.1 < best.1 {
            best = candidate;
        }
    }
    // A fresh tight simplex around the winner recovers any accuracy lost to
    // simplex collapse along a flat direction.
    let polished = nelder_mead_min(&objective, best.0, 0.05, OPTIMIZER_TOLERANCE, 600);
    let best = -best.1.min(polished.1);
    let lambda = rho.lambda_max();
    if (best - lambda).abs() > FIDELITY_AGREEMENT {
        return Err(Error::Optimization(format!(
            "SU(2) fidelity maximization reached {best:.12} but the closed form gives \
             lambda_max = {lambda:.12}; deviation {:.3e} exceeds {FIDELITY_AGREEMENT:.0e}",
            (best - lambda).abs()
        )));
    }
    Ok(best)
}

/// `I_local = (2 F0 - 1)^2`, via the optimizer-backed [`local_fidelity_max`].
pub fn local_information(rho: &SingleQubitDensity, phi: &PureQubit) -> Result<f64> {
    let f0 = local_fidelity_max(rho, phi)?;
    Ok((2.0 * f0 - 1.0).powi(2))
}

/// Total and non-local information from the two per-qubit locals:
/// `I_total = I1 + I2`, `I_nonlocal = 2 - I_total`.
pub fn nonlocal_information(i1: f64, i2: f64) -> (f64, f64) {
    let total = i1 + i2;
    (total, 2.0 - total)
}

/// Full information bundle for a two-qubit state: impurities of both
/// marginals and the joint, optimizer-backed fidelities against the given
/// references, and the derived local/non-local information.
pub fn info_report(
    rho12: &TwoQubitDensity,
    phi1: &PureQubit,
    phi2: &PureQubit,
) -> Result<InfoReport> {
    let rho1 = reduce_single(rho12, Qubit::One);
    let rho2 = reduce_single(rho12, Qubit::Two);
    let f0_1 = local_fidelity_max(&rho1, phi1)?;
    let f0_2 = local_fidelity_max(&rho2, phi2)?;
    let i_local_1 = (2.0 * f0_1 - 1.0).powi(2);
    let i_local_2 = (2.0 * f0_2 - 1.0).powi(2);
    let (i_local_total, i_nonlocal) = nonlocal_information(i_local_1, i_local_2);
    Ok(InfoReport {
        xi1: rho1.impurity(),
        xi2: rho2.impurity(),
        xi12: rho12.impurity(),
        f0_1,
        f0_2,
        i_local_1,
        i_local_2,
        i_local_total,
        i_nonlocal,
    })
}
