//! Solvable resonance models: a rational S-matrix and the Friedrichs model.

mod decay;
mod friedrichs;
mod rational;

pub use decay::{
    fit_decay_rate, gamow_background_split, gamow_residue, spectral_density, survival_amplitude,
    DecaySplit, E_MAX,
};
pub use friedrichs::{
    find_resonance_pole, FormFactor, FriedrichsModel, ResonanceReport, MAX_SECANT_ITERATIONS,
};
pub use rational::RationalSMatrix;

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Either model, as seen by the state and functional layer.
#[derive(Debug, Clone, PartialEq)]
pub enum ScatteringModel {
    Rational(RationalSMatrix),
    Friedrichs(FriedrichsModel),
}

impl ScatteringModel {
    pub fn free() -> Self {
        ScatteringModel::Rational(RationalSMatrix::free())
    }

    pub fn is_free(&self) -> bool {
        matches!(self, ScatteringModel::Rational(r) if r.is_free())
    }

    /// `S(E + i0)` for `E > 0`.
    pub fn s_on_axis(&self, e: f64) -> Result<Complex64> {
        s_on_axis(self, e)
    }
}

impl From<RationalSMatrix> for ScatteringModel {
    fn from(r: RationalSMatrix) -> Self {
        ScatteringModel::Rational(r)
    }
}

impl From<FriedrichsModel> for ScatteringModel {
    fn from(f: FriedrichsModel) -> Self {
        ScatteringModel::Friedrichs(f)
    }
}

/// `S(E + i0)` for `E > 0`; domain error otherwise.
pub fn s_on_axis(model: &ScatteringModel, e: f64) -> Result<Complex64> {
    if !(e.is_finite() && e > 0.0) {
        return Err(Error::Domain(format!("E = {e} must be positive")));
    }
    match model {
        ScatteringModel::Rational(r) => Ok(r.on_real_line(e)),
        ScatteringModel::Friedrichs(f) => f.s_on_axis(e),
    }
}

/// Second-sheet `η_II(z)` of a Friedrichs model.
pub fn eta_second_sheet(model: &FriedrichsModel, z: Complex64) -> Result<Complex64> {
    model.eta_second_sheet(z)
}
