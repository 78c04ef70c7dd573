//! Property-based checks of the structural invariants: group law and
//! unitarity of the propagators, spectrum identities, decoupling at r = 0,
//! density-matrix validity of the full pipeline on random configurations,
//! and the closed-form identities behind the entanglement and information
//! measures.

use nalgebra::{Matrix4, Vector2, Vector4};
use num_complex::Complex64;
use proptest::prelude::*;

use cavity_duet::{
    block_frequencies, block_hamiltonian, block_spectrum, coherent_amplitudes,
    degree_of_entanglement, evolve_exact, evolve_paper_mode, local_fidelity_max,
    local_information, partial_transpose, partial_transpose_first, propagator_analytic,
    propagator_spectral, reduce_single, AtomPair, FrequencyForm, PropagatorForm, PureQubit,
    Qubit, TwoQubitDensity,
};

fn re(x: f64) -> Complex64 {
    Complex64::new(x, 0.0)
}

fn max_dev(a: &Matrix4<Complex64>, b: &Matrix4<Complex64>) -> f64 {
    (a - b).iter().map(|c| c.norm()).fold(0.0, f64::max)
}

fn hermiticity_defect(m: &Matrix4<Complex64>) -> f64 {
    let mut worst: f64 = 0.0;
    for i in 0..4 {
        for j in 0..4 {
            worst = worst.max((m[(i, j)] - m[(j, i)].conj()).norm());
        }
    }
    worst
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    /// U(t1) U(t2) = U(t1 + t2) for the spectral propagator.
    #[test]
    fn spectral_propagator_satisfies_the_group_law(
        n in 0usize..=40,
        r in 0.0f64..=1.0,
        t1 in 0.0f64..=10.0,
        t2 in 0.0f64..=10.0,
    ) {
        let u1 = propagator_spectral(n, r, t1).unwrap().matrix;
        let u2 = propagator_spectral(n, r, t2).unwrap().matrix;
        let u12 = propagator_spectral(n, r, t1 + t2).unwrap().matrix;
        prop_assert!(max_dev(&(u1 * u2), &u12) < 1e-10);
    }

    /// The corrected closed form agrees with the spectral oracle everywhere
    /// on the supported domain, including ratios above 1.
    #[test]
    fn corrected_form_tracks_the_spectral_oracle(
        n in 0usize..=60,
        r in 0.0f64..=1.3,
        tau in 0.0f64..=20.0,
    ) {
        let spectral = propagator_spectral(n, r, tau).unwrap().matrix;
        let analytic = propagator_analytic(n, r, tau, PropagatorForm::AnalyticCorrected)
            .unwrap()
            .matrix;
        prop_assert!(max_dev(&spectral, &analytic) < 1e-10);
        prop_assert!(
            propagator_analytic(n, r, tau, PropagatorForm::AnalyticCorrected)
                .unwrap()
                .unitarity_defect()
                < 1e-10
        );
    }

    /// The corrected frequencies reproduce the block spectrum and satisfy
    /// the trace and determinant identities of the block Hamiltonian.
    #[test]
    fn corrected_frequencies_match_the_spectrum(
        n in 0usize..=60,
        r in 0.0f64..=1.0,
    ) {
        let f = block_frequencies(n, r, FrequencyForm::Corrected).unwrap();
        let spectrum = block_spectrum(n, r).unwrap();
        let predicted = {
            let mut v = [-f.mu.sqrt(), -f.nu.sqrt(), f.nu.sqrt(), f.mu.sqrt()];
            v.sort_by(f64::total_cmp);
            v
        };
        for (have, want) in spectrum.iter().zip(predicted) {
            prop_assert!((have - want).abs() < 1e-10);
        }
        // trace(H^2) = 2 (mu + nu) and det(H) = (mu nu) = delta_cap^2.
        let h = block_hamiltonian(n, r).unwrap();
        let trace_sq = (h * h).trace();
        prop_assert!((trace_sq - 2.0 * (f.mu + f.nu)).abs() < 1e-8 * trace_sq.max(1.0));
        prop_assert!((f.mu * f.nu - f.delta_cap * f.delta_cap).abs() < 1e-8 * (1.0 + f.delta_cap.powi(2)));
    }

    /// At r = 0 the second atom decouples: no propagator entry may connect
    /// its excited and ground channels.
    #[test]
    fn vanishing_ratio_decouples_the_second_atom(
        n in 0usize..=40,
        tau in 0.0f64..=15.0,
        analytic in proptest::bool::ANY,
    ) {
        let u = if analytic {
            propagator_analytic(n, 0.0, tau, PropagatorForm::AnalyticCorrected).unwrap().matrix
        } else {
            propagator_spectral(n, 0.0, tau).unwrap().matrix
        };
        // Channel order (ee, eg, ge, gg): flipping atom 2 connects
        // ee<->eg, ee<->gg, eg<->ge, ge<->gg.
        for (i, j) in [(0, 1), (0, 3), (1, 2), (2, 3)] {
            prop_assert!(u[(i, j)].norm() < 1e-12);
            prop_assert!(u[(j, i)].norm() < 1e-12);
        }
    }

    /// Truncated coherent fields keep at least 1 - epsilon of their mass and
    /// respect the headroom floor.
    #[test]
    fn coherent_truncation_keeps_the_mass_budget(
        nbar in 0.0f64..=30.0,
        eps_exp in 8i32..=14,
    ) {
        let epsilon = 10f64.powi(-eps_exp);
        let field = coherent_amplitudes(re(nbar.sqrt()), epsilon).unwrap();
        prop_assert!(field.stored_mass() >= 1.0 - epsilon);
        prop_assert!(field.n_max() as f64 >= nbar + 10.0 * nbar.sqrt() + 20.0 - 1.0);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    /// The full pipeline emits valid density matrices for random
    /// configurations in both evolution modes.
    #[test]
    fn reduced_density_matrices_stay_valid(
        nbar in 0.5f64..=12.0,
        r in 0.0f64..=1.0,
        tau in 0.0f64..=30.0,
        theta in 0.0f64..=std::f64::consts::FRAC_PI_2,
        exact in proptest::bool::ANY,
    ) {
        let atoms = AtomPair::partial_entangled_preparation(theta).unwrap();
        let field = coherent_amplitudes(re(nbar.sqrt()), 1e-12).unwrap();
        let state = if exact {
            evolve_exact(&atoms, &field, r, tau).unwrap()
        } else {
            evolve_paper_mode(&atoms, &field, r, tau, PropagatorForm::Spectral).unwrap()
        };
        let rho = state.reduce_two_qubit().unwrap();
        prop_assert!((rho.trace() - 1.0).abs() < 1e-10);
        prop_assert!(hermiticity_defect(rho.matrix()) < 1e-12);
        let eigenvalues = rho.eigenvalues();
        prop_assert!(eigenvalues[0] >= -1e-10);
        rho.validate().unwrap();
    }

    /// DOE of the partially entangled pure state is the Schmidt value
    /// |sin(2 theta)|.
    #[test]
    fn degree_of_entanglement_follows_the_schmidt_law(
        theta in 0.0f64..=std::f64::consts::PI,
    ) {
        let atoms = AtomPair::partial_entangled_preparation(theta).unwrap();
        let report = degree_of_entanglement(&TwoQubitDensity::from_pure(atoms.joint()));
        prop_assert!((report.doe - (2.0 * theta).sin().abs()).abs() < 1e-10);
    }

    /// Both partial-transpose sides share one spectrum.
    #[test]
    fn partial_transpose_side_is_irrelevant(
        theta in 0.0f64..=std::f64::consts::FRAC_PI_2,
        weight in 0.0f64..=1.0,
    ) {
        // Mixture of an entangled pure state and a product state.
        let entangled = AtomPair::partial_entangled_preparation(theta).unwrap().joint();
        let product = Vector4::new(re(0.6), re(0.0), re(0.0), re(0.8));
        let mut m = Matrix4::<Complex64>::default();
        for i in 0..4 {
            for j in 0..4 {
                m[(i, j)] = entangled[i] * entangled[j].conj() * weight
                    + product[i] * product[j].conj() * (1.0 - weight);
            }
        }
        let rho = TwoQubitDensity::from_matrix(m).unwrap();
        let s2 = degree_of_entanglement(&rho).eigenvalues;
        let mut s1: Vec<f64> = partial_transpose_first(&rho)
            .symmetric_eigenvalues()
            .iter()
            .copied()
            .collect();
        s1.sort_by(f64::total_cmp);
        let pt2 = partial_transpose(&rho);
        prop_assert!(hermiticity_defect(&pt2) < 1e-12);
        for (a, b) in s1.iter().zip(s2) {
            prop_assert!((a - b).abs() < 1e-10);
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    /// Optimizer-backed local information equals 1 - 2 xi on all single-qubit
    /// states, and the maximal fidelity does not depend on the reference.
    #[test]
    fn local_information_equals_one_minus_twice_impurity(
        bx in -0.49f64..=0.49,
        by in -0.49f64..=0.49,
        bz in -0.49f64..=0.49,
        phase in 0.0f64..=std::f64::consts::TAU,
    ) {
        let rho = cavity_duet::SingleQubitDensity::from_matrix(
            nalgebra::Matrix2::new(
                re(0.5 + bz / 2.0),
                Complex64::new(bx / 2.0, -by / 2.0),
                Complex64::new(bx / 2.0, by / 2.0),
                re(0.5 - bz / 2.0),
            ),
            Qubit::One,
        )
        .unwrap();
        let i_local = local_information(&rho, &PureQubit::excited()).unwrap();
        prop_assert!((i_local - (1.0 - 2.0 * rho.impurity())).abs() < 1e-6);

        let phi = PureQubit::new(Vector2::new(
            Complex64::from_polar(0.6, phase),
            re(0.8),
        ))
        .unwrap();
        let f_ref = local_fidelity_max(&rho, &phi).unwrap();
        let f_exc = local_fidelity_max(&rho, &PureQubit::excited()).unwrap();
        prop_assert!((f_ref - f_exc).abs() < 1e-6);
    }

    /// Exact and paper modes agree on excited product preparations, where
    /// the block bookkeeping is lossless.
    #[test]
    fn modes_agree_on_excited_preparations(
        nbar in 1.0f64..=10.0,
        r in 0.0f64..=1.0,
        tau in 0.0f64..=20.0,
    ) {
        let field = coherent_amplitudes(re(nbar.sqrt()), 1e-12).unwrap();
        let paper = evolve_paper_mode(
            &AtomPair::excited(),
            &field,
            r,
            tau,
            PropagatorForm::Spectral,
        )
        .unwrap();
        let exact = evolve_exact(&AtomPair::excited(), &field, r, tau).unwrap();
        prop_assert!(cavity_duet::state_fidelity(&paper, &exact) >= 1.0 - 1e-10);
    }

    /// The impurity of the decoupled atom is frozen at r = 0 in exact mode.
    #[test]
    fn decoupled_atom_keeps_its_impurity(
        tau in 0.0f64..=25.0,
    ) {
        let atoms = AtomPair::product_preparation(
            re(0.6),
            re(0.8),
            Complex64::new(0.5, 0.5),
            re(std::f64::consts::FRAC_1_SQRT_2),
        )
        .unwrap();
        let field = coherent_amplitudes(re(2.0), 1e-12).unwrap();
        let initial = reduce_single(
            &TwoQubitDensity::from_pure(atoms.joint()),
            Qubit::Two,
        )
        .impurity();
        let state = evolve_exact(&atoms, &field, 0.0, tau).unwrap();
        let rho2 = reduce_single(&state.reduce_two_qubit().unwrap(), Qubit::Two);
        prop_assert!((rho2.impurity() - initial).abs() < 1e-10);
    }
}
