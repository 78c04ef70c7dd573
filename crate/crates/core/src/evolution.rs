//! Time evolution of the joint atom-field state and reduction to density
//! matrices.
//!
//! Two assembly conventions are supported. *Paper mode* expands the state
//! blockwise: every four-channel block `n` starts from the same joint atomic
//! amplitudes weighted by the single field coefficient `q_n`, so the channel
//! photon indices are `(n, n+1, n+1, n+2)`. *Exact mode* evolves the true
//! product initial state `|psi_12> (x) |field>` on the full truncated space,
//! which additionally involves the one-dimensional `|gg,0>` sector and the
//! three-dimensional single-excitation sector. The two modes coincide for
//! `|ee>` preparations, where the blockwise indexing is exact.
//!
//! Both modes store amplitudes on the same `(channel, photon number)` grid,
//! so reductions are mode-independent.

use nalgebra::{Matrix2, Matrix3, Matrix4, SymmetricEigen, Vector2, Vector3, Vector4};
use num_complex::Complex64;

use crate::atoms::AtomPair;
use crate::config::{validate_ratio, EvolutionMode, PropagatorForm};
use crate::error::{Error, Result};
use crate::field::CoherentField;
use crate::linalg;
use crate::propagator::{propagator_analytic, propagator_discrepancy, BlockEigen};

/// Allowed deviation of a density-matrix trace from one.
pub const TRACE_TOLERANCE: f64 = 1e-10;
/// Allowed deviation from Hermitian symmetry.
pub const HERMITICITY_TOLERANCE: f64 = 1e-12;
/// Most negative eigenvalue a density matrix may carry.
pub const EIGENVALUE_FLOOR: f64 = -1e-10;
/// Largest squared-norm deficit a joint state may carry into a reduction.
pub const NORM_TOLERANCE: f64 = 1e-10;

const EE: usize = 0;
const EG: usize = 1;
const GE: usize = 2;
const GG: usize = 3;

/// Atomic channel labels in the fixed `(|ee>, |eg>, |ge>, |gg>)` order.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Channel {
    Ee,
    Eg,
    Ge,
    Gg,
}

impl Channel {
    pub const ALL: [Channel; 4] = [Channel::Ee, Channel::Eg, Channel::Ge, Channel::Gg];

    fn index(self) -> usize {
        match self {
            Channel::Ee => EE,
            Channel::Eg => EG,
            Channel::Ge => GE,
            Channel::Gg => GG,
        }
    }
}

/// Which atom a reduced single-qubit density matrix describes.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Qubit {
    One,
    Two,
}

/// Joint atom-field state sampled at one time.
///
/// Entry `(c, m)` is the amplitude of `|c, m>` for photon numbers
/// `m = 0..=n_max+2`. The truncation tolerance of the underlying field is
/// carried along for norm bookkeeping.
#[derive(Clone, Debug)]
pub struct JointState {
    mode: EvolutionMode,
    amps: [Vec<Complex64>; 4],
    epsilon: f64,
    boundary_overflow: bool,
}

impl JointState {
    pub fn mode(&self) -> EvolutionMode {
        self.mode
    }

    /// Truncation budget the state was assembled under.
    pub fn epsilon(&self) -> f64 {
        self.epsilon
    }

    /// Number of photon levels stored per channel (`n_max + 3`).
    pub fn photon_levels(&self) -> usize {
        self.amps[0].len()
    }

    /// Amplitude of `|channel, m>`; zero beyond the stored range.
    pub fn amplitude(&self, channel: Channel, m: usize) -> Complex64 {
        self.amps[channel.index()]
            .get(m)
            .copied()
            .unwrap_or_default()
    }

    /// Total squared norm over all channels and photon numbers.
    pub fn norm_sq(&self) -> f64 {
        self.amps
            .iter()
            .flat_map(|v| v.iter())
            .map(|c| c.norm_sqr())
            .sum()
    }

    /// True when the highest `|gg, m>` slot holds more probability than the
    /// truncation tolerance, i.e. the photon basis was cut too tight for
    /// this evolution.
    pub fn boundary_overflow(&self) -> bool {
        self.boundary_overflow
    }

    /// Traces out the field, giving the two-qubit density matrix.
    ///
    /// Fails with a truncation error when the state's squared norm deviates
    /// from one by more than [`NORM_TOLERANCE`]; the result is Hermitian by
    /// construction.
    pub fn reduce_two_qubit(&self) -> Result<TwoQubitDensity> {
        let norm = self.norm_sq();
        if (norm - 1.0).abs() > NORM_TOLERANCE {
            return Err(Error::Truncation(format!(
                "joint state squared norm {norm:.15} deviates from 1 by {:.3e} \
                 (tolerance {NORM_TOLERANCE:.0e}); photon basis truncated too aggressively",
                (norm - 1.0).abs()
            )));
        }
        let levels = self.photon_levels();
        let mut rho = Matrix4::<Complex64>::default();
        for i in 0..4 {
            for j in i..4 {
                let mut s = Complex64::default();
                for m in 0..levels {
                    s += self.amps[i][m] * self.amps[j][m].conj();
                }
                rho[(i, j)] = s;
                rho[(j, i)] = s.conj();
            }
        }
        Ok(TwoQubitDensity { rho })
    }
}

/// Squared overlap `|<a|b>|^2` normalized by both squared norms.
pub fn state_fidelity(a: &JointState, b: &JointState) -> f64 {
    let mut overlap = Complex64::default();
    for c in 0..4 {
        let (va, vb) = (&a.amps[c], &b.amps[c]);
        for m in 0..va.len().min(vb.len()) {
            overlap += va[m].conj() * vb[m];
        }
    }
    overlap.norm_sqr() / (a.norm_sq() * b.norm_sq())
}

/// Eigendecomposition of the three-dimensional single-excitation sector
/// spanned by `(|eg,0>, |ge,0>, |gg,1>)`.
#[derive(Clone, Debug)]
struct SectorOne {
    values: Vector3<f64>,
    vectors: Matrix3<f64>,
}

impl SectorOne {
    fn new(r: f64) -> Self {
        let h = Matrix3::new(0.0, 0.0, 1.0, 0.0, 0.0, r, 1.0, r, 0.0);
        let eig = SymmetricEigen::new(h);
        SectorOne {
            values: eig.eigenvalues,
            vectors: eig.eigenvectors,
        }
    }

    fn unitary(&self, tau: f64) -> Matrix3<Complex64> {
        let mut u = Matrix3::<Complex64>::default();
        for k in 0..3 {
            let phase = Complex64::cis(-self.values[k] * tau);
            for i in 0..3 {
                let vi = self.vectors[(i, k)];
                for j in 0..3 {
                    u[(i, j)] += phase * (vi * self.vectors[(j, k)]);
                }
            }
        }
        u
    }
}

/// Prepared evolution of one `(preparation, field, r)` series.
///
/// All time-independent work (block eigendecompositions, boundary sectors)
/// happens in [`Evolution::new`]; [`Evolution::state_at`] then only applies
/// phases, which makes dense time grids cheap. The value is immutable after
/// construction and can be shared freely across threads.
///
/// Exact mode always diagonalizes its sectors; the analytic propagator
/// forms only exist for the four-channel interior blocks of paper mode and
/// are ignored there.
pub struct Evolution {
    mode: EvolutionMode,
    form: PropagatorForm,
    atoms: AtomPair,
    field: CoherentField,
    r: f64,
    blocks: Vec<BlockEigen>,
    sector_one: Option<SectorOne>,
}

impl Evolution {
    pub fn new(
        mode: EvolutionMode,
        form: PropagatorForm,
        atoms: AtomPair,
        field: CoherentField,
        r: f64,
    ) -> Result<Self> {
        validate_ratio(r)?;
        let n_max = field.n_max();
        let needs_spectral = mode == EvolutionMode::Exact || form == PropagatorForm::Spectral;
        let blocks = if needs_spectral {
            (0..=n_max)
                .map(|n| BlockEigen::new(n, r))
                .collect::<Result<Vec<_>>>()?
        } else {
            Vec::new()
        };
        let sector_one = (mode == EvolutionMode::Exact).then(|| SectorOne::new(r));
        Ok(Evolution {
            mode,
            form,
            atoms,
            field,
            r,
            blocks,
            sector_one,
        })
    }

    pub fn mode(&self) -> EvolutionMode {
        self.mode
    }

    pub fn coupling_ratio(&self) -> f64 {
        self.r
    }

    /// Joint state at scaled time `tau >= 0`.
    pub fn state_at(&self, tau: f64) -> Result<JointState> {
        if !tau.is_finite() || tau < 0.0 {
            return Err(Error::InvalidInput(format!(
                "evolution time must be finite and non-negative, got {tau}"
            )));
        }
        match self.mode {
            EvolutionMode::Paper => self.paper_state(tau),
            EvolutionMode::Exact => self.exact_state(tau),
        }
    }

    /// Worst deviation of the configured analytic block entries from the
    /// spectral oracle across all blocks at this time; zero when the
    /// spectral route itself drives the evolution.
    pub fn max_discrepancy(&self, tau: f64) -> f64 {
        if self.mode != EvolutionMode::Paper || !self.form.is_analytic() {
            return 0.0;
        }
        (0..=self.field.n_max())
            .map(|n| propagator_discrepancy(n, self.r, tau, self.form))
            .fold(0.0, f64::max)
    }

    fn block_unitary(&self, n: usize, tau: f64) -> Result<Matrix4<Complex64>> {
        if let Some(eigen) = self.blocks.get(n) {
            Ok(eigen.unitary(tau))
        } else {
            propagator_analytic(n, self.r, tau, self.form).map(|p| p.matrix)
        }
    }

    fn paper_state(&self, tau: f64) -> Result<JointState> {
        let n_max = self.field.n_max();
        let levels = n_max + 3;
        let mut amps = empty_amps(levels);
        let joint = self.atoms.joint();
        for n in 0..=n_max {
            let u = self.block_unitary(n, tau)?;
            let w = u * joint;
            let q = self.field.amplitude(n);
            amps[EE][n] = q * w[0];
            amps[EG][n + 1] = q * w[1];
            amps[GE][n + 1] = q * w[2];
            amps[GG][n + 2] = q * w[3];
        }
        Ok(self.seal(EvolutionMode::Paper, amps))
    }

    fn exact_state(&self, tau: f64) -> Result<JointState> {
        let n_max = self.field.n_max();
        let levels = n_max + 3;
        let joint = self.atoms.joint();
        let mut amps = empty_amps(levels);
        for (channel, &weight) in amps.iter_mut().zip(joint.iter()) {
            for (m, amp) in channel.iter_mut().enumerate().take(n_max + 1) {
                *amp = weight * self.field.amplitude(m);
            }
        }
        // Excitation sector 0 is |gg,0> alone with zero restricted
        // Hamiltonian: stationary. Sector 1 mixes (|eg,0>, |ge,0>, |gg,1>).
        let sector_one = self
            .sector_one
            .as_ref()
            .expect("exact-mode evolution always carries its boundary sector");
        let u3 = sector_one.unitary(tau);
        let v = Vector3::new(amps[EG][0], amps[GE][0], amps[GG][1]);
        let w = u3 * v;
        amps[EG][0] = w[0];
        amps[GE][0] = w[1];
        amps[GG][1] = w[2];
        // Sectors with two or more excitations are the four-channel blocks.
        for n in 0..=n_max {
            let u = self.blocks[n].unitary(tau);
            let v = Vector4::new(amps[EE][n], amps[EG][n + 1], amps[GE][n + 1], amps[GG][n + 2]);
            let w = u * v;
            amps[EE][n] = w[0];
            amps[EG][n + 1] = w[1];
            amps[GE][n + 1] = w[2];
            amps[GG][n + 2] = w[3];
        }
        Ok(self.seal(EvolutionMode::Exact, amps))
    }

    fn seal(&self, mode: EvolutionMode, amps: [Vec<Complex64>; 4]) -> JointState {
        let top = amps[GG].last().map_or(0.0, |c| c.norm_sqr());
        JointState {
            mode,
            boundary_overflow: top > self.field.epsilon(),
            epsilon: self.field.epsilon(),
            amps,
        }
    }
}

fn empty_amps(levels: usize) -> [Vec<Complex64>; 4] {
    [
        vec![Complex64::default(); levels],
        vec![Complex64::default(); levels],
        vec![Complex64::default(); levels],
        vec![Complex64::default(); levels],
    ]
}

/// Blockwise state assembly: every block starts from the joint atomic
/// amplitudes weighted by its field coefficient.
pub fn evolve_paper_mode(
    atoms: &AtomPair,
    field: &CoherentField,
    r: f64,
    tau: f64,
    form: PropagatorForm,
) -> Result<JointState> {
    Evolution::new(
        EvolutionMode::Paper,
        form,
        atoms.clone(),
        field.clone(),
        r,
    )?
    .state_at(tau)
}

/// Full evolution of the product initial state on the truncated space.
pub fn evolve_exact(
    atoms: &AtomPair,
    field: &CoherentField,
    r: f64,
    tau: f64,
) -> Result<JointState> {
    Evolution::new(
        EvolutionMode::Exact,
        PropagatorForm::Spectral,
        atoms.clone(),
        field.clone(),
        r,
    )?
    .state_at(tau)
}

/// Traces out the field; see [`JointState::reduce_two_qubit`].
pub fn reduce_two_qubit(state: &JointState) -> Result<TwoQubitDensity> {
    state.reduce_two_qubit()
}

/// Two-qubit density matrix on the basis `(|ee>, |eg>, |ge>, |gg>)`.
#[derive(Clone, Debug, PartialEq)]
pub struct TwoQubitDensity {
    rho: Matrix4<Complex64>,
}

impl TwoQubitDensity {
    /// Projector `|psi><psi|` onto a joint atomic state.
    pub fn from_pure(joint: Vector4<Complex64>) -> Self {
        let mut rho = Matrix4::<Complex64>::default();
        for i in 0..4 {
            for j in 0..4 {
                rho[(i, j)] = joint[i] * joint[j].conj();
            }
        }
        TwoQubitDensity { rho }
    }

    /// Wraps an externally built matrix after checking the physicality
    /// invariants (Hermitian, unit trace, positive semidefinite).
    pub fn from_matrix(rho: Matrix4<Complex64>) -> Result<Self> {
        let density = TwoQubitDensity { rho };
        density.validate()?;
        Ok(density)
    }

    pub fn matrix(&self) -> &Matrix4<Complex64> {
        &self.rho
    }

    pub fn trace(&self) -> f64 {
        (0..4).map(|i| self.rho[(i, i)].re).sum()
    }

    /// `tr(rho^2)`, evaluated as the squared Frobenius norm (valid for
    /// Hermitian matrices).
    pub fn purity(&self) -> f64 {
        self.rho.iter().map(|c| c.norm_sqr()).sum()
    }

    /// `xi = 1 - tr(rho^2)`: zero for pure states, 3/4 at the maximally
    /// mixed two-qubit state.
    pub fn impurity(&self) -> f64 {
        1.0 - self.purity()
    }

    /// Eigenvalues in ascending order.
    pub fn eigenvalues(&self) -> [f64; 4] {
        linalg::hermitian_eigenvalues4(&self.rho)
    }

    /// Checks hermiticity, trace and positivity against the module
    /// tolerances.
    pub fn validate(&self) -> Result<()> {
        let defect = linalg::hermitian_defect(&self.rho);
        if defect > HERMITICITY_TOLERANCE {
            return Err(Error::Validation(format!(
                "two-qubit density deviates from Hermitian symmetry by {defect:.3e} \
                 (tolerance {HERMITICITY_TOLERANCE:.0e})"
            )));
        }
        let trace = self.trace();
        if (trace - 1.0).abs() > TRACE_TOLERANCE {
            return Err(Error::Validation(format!(
                "two-qubit density trace {trace:.15} deviates from 1 beyond {TRACE_TOLERANCE:.0e}"
            )));
        }
        let min = self.eigenvalues()[0];
        if min < EIGENVALUE_FLOOR {
            return Err(Error::Validation(format!(
                "two-qubit density has eigenvalue {min:.3e} below {EIGENVALUE_FLOOR:.0e}"
            )));
        }
        Ok(())
    }
}

/// Single-qubit density matrix on the basis `(|e>, |g>)`.
#[derive(Clone, Debug, PartialEq)]
pub struct SingleQubitDensity {
    rho: Matrix2<Complex64>,
    which: Qubit,
}

impl SingleQubitDensity {
    /// Wraps an externally built matrix after checking the physicality
    /// invariants.
    pub fn from_matrix(rho: Matrix2<Complex64>, which: Qubit) -> Result<Self> {
        let density = SingleQubitDensity { rho, which };
        density.validate()?;
        Ok(density)
    }

    pub fn matrix(&self) -> &Matrix2<Complex64> {
        &self.rho
    }

    pub fn which(&self) -> Qubit {
        self.which
    }

    pub fn trace(&self) -> f64 {
        self.rho[(0, 0)].re + self.rho[(1, 1)].re
    }

    pub fn purity(&self) -> f64 {
        self.rho.iter().map(|c| c.norm_sqr()).sum()
    }

    /// `xi = 1 - tr(rho^2)`: zero for pure states, 1/2 at the maximally
    /// mixed qubit.
    pub fn impurity(&self) -> f64 {
        1.0 - self.purity()
    }

    /// Largest eigenvalue, in closed form.
    pub fn lambda_max(&self) -> f64 {
        linalg::hermitian_eigenvalues2(&self.rho)[1]
    }

    /// Normalized eigenvector of the largest eigenvalue.
    pub fn principal_axis(&self) -> Vector2<Complex64> {
        let eig = SymmetricEigen::new(self.rho);
        let k = if eig.eigenvalues[0] >= eig.eigenvalues[1] {
            0
        } else {
            1
        };
        Vector2::new(eig.eigenvectors[(0, k)], eig.eigenvectors[(1, k)])
    }

    pub fn validate(&self) -> Result<()> {
        let defect = linalg::hermitian_defect(&self.rho);
        if defect > HERMITICITY_TOLERANCE {
            return Err(Error::Validation(format!(
                "single-qubit density deviates from Hermitian symmetry by {defect:.3e}"
            )));
        }
        let trace = self.trace();
        if (trace - 1.0).abs() > TRACE_TOLERANCE {
            return Err(Error::Validation(format!(
                "single-qubit density trace {trace:.15} deviates from 1 beyond \
                 {TRACE_TOLERANCE:.0e}"
            )));
        }
        let min = linalg::hermitian_eigenvalues2(&self.rho)[0];
        if min < EIGENVALUE_FLOOR {
            return Err(Error::Validation(format!(
                "single-qubit density has eigenvalue {min:.3e} below {EIGENVALUE_FLOOR:.0e}"
            )));
        }
        Ok(())
    }
}

/// Partial trace of a two-qubit density matrix over the other atom.
pub fn reduce_single(rho12: &TwoQubitDensity, which: Qubit) -> SingleQubitDensity {
    let m = rho12.matrix();
    let mut rho = Matrix2::<Complex64>::default();
    for i in 0..2 {
        for j in 0..2 {
            rho[(i, j)] = match which {
                Qubit::One => m[(2 * i, 2 * j)] + m[(2 * i + 1, 2 * j + 1)],
                Qubit::Two => m[(i, j)] + m[(2 + i, 2 + j)],
            };
        }
    }
    SingleQubitDensity { rho, which }
}
