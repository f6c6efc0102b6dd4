//! Reference models, states and seeded decompositions shared by the
//! experiment driver and the tests.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::decomposition::DecomposedVector;
use super::state::StateVector;
use crate::error::Result;
use crate::funcgrid::{sample, Grid, SampledFunction, TestFunction};
use crate::hardy::{build_delta_element, riesz_project, Half};
use crate::scattering::{RationalSMatrix, ScatteringModel};

/// Breit-Wigner model with `E_R = 1`, `Γ = 0.1`.
pub fn reference_rational() -> RationalSMatrix {
    RationalSMatrix::breit_wigner(1.0, 0.1).expect("valid reference parameters")
}

/// Three in-Φ⁺ states: two Δ elements and a lower-projected Gaussian.
pub fn reference_states(grid: &Grid, model: &ScatteringModel) -> Result<Vec<StateVector>> {
    let mut out = Vec::with_capacity(3);
    for k in 0..2 {
        let d = build_delta_element(&sample(&TestFunction::negative_support(k), grid)?)?;
        out.push(StateVector::from_delta(&d, model.clone())?);
    }
    let gauss = SampledFunction::from_real_fn(*grid, |x| (-(x - 1.0) * (x - 1.0)).exp())?;
    out.push(StateVector::with_in_extension(
        riesz_project(&gauss, Half::Lower)?,
        model.clone(),
    )?);
    Ok(out)
}

/// Intersection member built on the pole of `s`, with unit strength.
pub fn reference_xi(grid: &Grid, s: &RationalSMatrix) -> Result<StateVector> {
    StateVector::xi_from_pole(grid, s, 0, Complex64::new(1.0, 0.0))
}

fn random_profile(grid: &Grid, rng: &mut ChaCha8Rng) -> Result<SampledFunction> {
    let center = rng.gen_range(0.5..3.0);
    let mut acc = SampledFunction::zeros(*grid);
    for n in 0..3 {
        let c = Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0));
        let h = sample(&TestFunction::Hermite { n, scale: 1.0, center }, grid)?;
        acc = acc.axpy(c, &h)?;
    }
    Ok(acc)
}

/// A seeded split `φ₊ + φ₋` for the rational model `s`, shifted by [`reference_xi`].
pub fn seeded_decomposed(grid: &Grid, s: &RationalSMatrix, seed: u64) -> Result<DecomposedVector> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let model = ScatteringModel::Rational(s.clone());
    let plus = StateVector::with_in_extension(
        riesz_project(&random_profile(grid, &mut rng)?, Half::Lower)?,
        model.clone(),
    )?;
    let minus = StateVector::with_out_extension(
        riesz_project(&random_profile(grid, &mut rng)?, Half::Upper)?,
        model,
    )?;
    DecomposedVector::new(plus, minus, vec![reference_xi(grid, s)?])
}

/// As [`seeded_decomposed`] for the free model, shifted by a Δ-based member.
pub fn seeded_decomposed_free(grid: &Grid, seed: u64) -> Result<DecomposedVector> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let model = ScatteringModel::free();
    let plus = StateVector::with_in_extension(
        riesz_project(&random_profile(grid, &mut rng)?, Half::Lower)?,
        model.clone(),
    )?;
    let minus = StateVector::with_out_extension(
        riesz_project(&random_profile(grid, &mut rng)?, Half::Upper)?,
        model.clone(),
    )?;
    let d = build_delta_element(&sample(&TestFunction::negative_support(0), grid)?)?;
    DecomposedVector::new(plus, minus, vec![StateVector::xi_from_delta(&d, model)?])
}
