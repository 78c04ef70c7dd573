//! Initial two-atom states.

use nalgebra::Vector4;
use num_complex::Complex64;

use crate::error::{Error, Result};

const NORM_TOLERANCE: f64 = 1e-12;

/// Joint internal state of the two atoms on the product basis
/// `(|ee>, |eg>, |ge>, |gg>)`, with the first atom's letter written first.
#[derive(Clone, Debug, PartialEq)]
pub struct AtomPair {
    joint: Vector4<Complex64>,
}

impl AtomPair {
    /// Both atoms in the ground state `|gg>`.
    pub fn ground() -> Self {
        AtomPair {
            joint: Vector4::new(
                Complex64::default(),
                Complex64::default(),
                Complex64::default(),
                Complex64::new(1.0, 0.0),
            ),
        }
    }

    /// Both atoms excited, `|ee>`.
    pub fn excited() -> Self {
        AtomPair {
            joint: Vector4::new(
                Complex64::new(1.0, 0.0),
                Complex64::default(),
                Complex64::default(),
                Complex64::default(),
            ),
        }
    }

    /// Arbitrary normalized joint vector on `(|ee>, |eg>, |ge>, |gg>)`.
    pub fn from_joint(joint: Vector4<Complex64>) -> Result<Self> {
        let norm_sq: f64 = joint.iter().map(|c| c.norm_sqr()).sum();
        if joint.iter().any(|c| !c.re.is_finite() || !c.im.is_finite()) {
            return Err(Error::InvalidInput(
                "joint state amplitudes must be finite".into(),
            ));
        }
        if (norm_sq - 1.0).abs() > NORM_TOLERANCE {
            return Err(Error::InvalidInput(format!(
                "joint state must be normalized: |psi|^2 = {norm_sq} deviates from 1 by more \
                 than {NORM_TOLERANCE}"
            )));
        }
        Ok(AtomPair { joint })
    }

    /// Product state `(a1|e> + b1|g>) x (a2|e> + b2|g>)`.
    ///
    /// Each single-atom pair of amplitudes must be normalized to within
    /// 1e-12.
    pub fn product_preparation(
        a1: Complex64,
        b1: Complex64,
        a2: Complex64,
        b2: Complex64,
    ) -> Result<Self> {
        for (label, a, b) in [("first", a1, b1), ("second", a2, b2)] {
            let norm_sq = a.norm_sqr() + b.norm_sqr();
            if !norm_sq.is_finite() {
                return Err(Error::InvalidInput(format!(
                    "{label} atom amplitudes must be finite"
                )));
            }
            if (norm_sq - 1.0).abs() > NORM_TOLERANCE {
                return Err(Error::InvalidInput(format!(
                    "{label} atom state must be normalized: |a|^2 + |b|^2 = {norm_sq}"
                )));
            }
        }
        Ok(AtomPair {
            joint: Vector4::new(a1 * a2, a1 * b2, b1 * a2, b1 * b2),
        })
    }

    /// Entangled preparation `cos(theta)|ee> + sin(theta)|gg>`.
    pub fn partial_entangled_preparation(theta: f64) -> Result<Self> {
        if !theta.is_finite() {
            return Err(Error::InvalidInput(format!(
                "entanglement angle must be finite, got {theta}"
            )));
        }
        Ok(AtomPair {
            joint: Vector4::new(
                Complex64::new(theta.cos(), 0.0),
                Complex64::default(),
                Complex64::default(),
                Complex64::new(theta.sin(), 0.0),
            ),
        })
    }

    /// Joint amplitudes in `(|ee>, |eg>, |ge>, |gg>)` order.
    pub fn joint(&self) -> Vector4<Complex64> {
        self.joint
    }
}
