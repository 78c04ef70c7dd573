//! Shared fixtures for the criterion benchmarks.

use num_complex::Complex64;

use cavity_duet::{
    coherent_amplitudes, AtomPair, CoherentField, Evolution, EvolutionMode, PropagatorForm,
};

/// Coherent field at the benchmark's standard mean photon number.
pub fn standard_field(nbar: f64) -> CoherentField {
    coherent_amplitudes(Complex64::new(nbar.sqrt(), 0.0), 1e-12)
        .expect("benchmark field parameters are valid")
}

/// Evolution fixture over the partially entangled preparation.
pub fn standard_evolution(mode: EvolutionMode, nbar: f64, r: f64) -> Evolution {
    let atoms = AtomPair::partial_entangled_preparation(std::f64::consts::FRAC_PI_3)
        .expect("pi/3 is a valid preparation angle");
    Evolution::new(mode, PropagatorForm::Spectral, atoms, standard_field(nbar), r)
        .expect("benchmark evolution parameters are valid")
}
