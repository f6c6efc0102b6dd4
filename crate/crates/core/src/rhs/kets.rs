use num_complex::Complex64;

use super::state::{Membership, StateVector};
use crate::error::{Error, Result};
use crate::funcgrid::{evaluate_at, inner_product, neumaier_sum_complex, GridKind, SampledFunction};
use crate::hardy::halfplane_eval;
use crate::scattering::ScatteringModel;

/// Generalized vectors acting on states. Pairings are antilinear in the
/// representation value (they return `⟨state|ket⟩`), except the Gamow
/// functional, which is the analytic continuation of the in-representation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum KetFunctional {
    /// `|E₀⁺⟩`, reads the in-representation; needs the in-Φ⁺ tag.
    EPlus(f64),
    /// `|E₀⁻⟩ = S*(E₀ + i0)|E₀⁺⟩`, reads the out-representation `S a`.
    EMinus(f64),
    /// Free ket `|E₀⟩`.
    Free(f64),
    /// `δ*(E - E₀)`.
    DeltaStar(f64),
    /// Gamow functional at a resonance `z_R` (normalization 1).
    Gamow(Complex64),
}

fn check_energy(state: &StateVector, e0: f64) -> Result<()> {
    let (lo, hi) = state.in_rep().grid().bounds();
    if !(e0.is_finite() && e0 > lo && e0 <= hi) {
        return Err(Error::Domain(format!("E₀ = {e0} is outside the energy grid ({lo}, {hi}]")));
    }
    Ok(())
}

/// `S(E₀ + i0)`, from the cached node values when `E₀` is a node.
fn s_at(state: &StateVector, e0: f64) -> Result<Complex64> {
    match state.in_rep().grid().node_index(e0) {
        Some(i) => Ok(state.s_values()[i]),
        None => state.model().s_on_axis(e0),
    }
}

/// `[f(E₀)]*`.
pub fn delta_star(f: &SampledFunction, e0: f64) -> Result<Complex64> {
    Ok(evaluate_at(f, e0)?.conj())
}

pub fn pair(ket: KetFunctional, state: &StateVector) -> Result<Complex64> {
    match ket {
        KetFunctional::EPlus(e0) => {
            if !state.has_tag(Membership::InPhiPlus) {
                return Err(Error::admissibility(
                    "EPlus",
                    "in-representation carries no lower-class extension",
                ));
            }
            check_energy(state, e0)?;
            delta_star(state.in_rep(), e0)
        }
        KetFunctional::EMinus(e0) => {
            check_energy(state, e0)?;
            Ok((s_at(state, e0)? * evaluate_at(state.in_rep(), e0)?).conj())
        }
        KetFunctional::Free(e0) | KetFunctional::DeltaStar(e0) => {
            check_energy(state, e0)?;
            delta_star(state.in_rep(), e0)
        }
        KetFunctional::Gamow(z) => {
            let ext = state.in_extension().ok_or_else(|| {
                Error::admissibility("Gamow", "no lower-class extension to continue")
            })?;
            halfplane_eval(ext, z)
        }
    }
}

/// `|‖φ‖² - ∫|a|²| / ‖φ‖²` with `‖φ‖²` taken from the out-representation.
pub fn completeness_check(state: &StateVector) -> Result<f64> {
    let total = inner_product(state.out_rep(), state.out_rep())?.re;
    if total == 0.0 {
        return Err(Error::Domain("zero state".into()));
    }
    let spectral = inner_product(state.in_rep(), state.in_rep())?.re;
    Ok((total - spectral).abs() / total)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SandwichReport {
    /// `∫ b_ψ* b_φ`.
    pub lhs: Complex64,
    /// `∫ ⟨ψ|E⁻⟩ S(E + i0) ⟨E⁺|φ⟩`, assembled from ket pairings.
    pub rhs: Complex64,
    pub defect: f64,
}

/// Overlap `(ψ, φ)` two ways: directly from out-representations, and node by
/// node from the `|E⁻⟩` and `|E⁺⟩` pairings with `S` in between.
pub fn sandwich_overlap(psi: &StateVector, phi: &StateVector) -> Result<SandwichReport> {
    psi.check_compatible(phi)?;
    let lhs = inner_product(psi.out_rep(), phi.out_rep())?;
    let grid = *phi.in_rep().grid();
    let h = grid.spacing();
    let terms = (0..grid.len())
        .map(|j| {
            let e = grid.point(j);
            let bra = pair(KetFunctional::EMinus(e), psi)?;
            let ket = pair(KetFunctional::EPlus(e), phi)?.conj();
            Ok(bra * s_at(phi, e)? * ket)
        })
        .collect::<Result<Vec<_>>>()?;
    let rhs = neumaier_sum_complex(terms) * h;
    let scale = psi.norm() * phi.norm();
    if scale == 0.0 {
        return Err(Error::Domain("zero state in sandwich".into()));
    }
    Ok(SandwichReport {
        lhs,
        rhs,
        defect: (lhs - rhs).norm() / scale,
    })
}

/// `sup_E |⟨φ|E⁺⟩ - S(E + i0)⟨φ|E⁻⟩|` with `⟨φ|E⁺⟩` read from the in-extension
/// and `⟨φ|E⁻⟩` from the out-extension of the same vector.
pub fn intersection_relation_check(state: &StateVector) -> Result<f64> {
    let (inx, outx) = match (state.in_extension(), state.out_extension()) {
        (Some(i), Some(o)) => (i, o),
        _ => {
            return Err(Error::admissibility(
                "ket relation",
                "state is not tagged in both Φ⁺ and Φ⁻",
            ))
        }
    };
    let a = inx.restrict_positive()?;
    let b = outx.restrict_positive()?;
    Ok(a.values()
        .iter()
        .zip(b.values())
        .zip(state.s_values())
        .map(|((a, b), s)| (a.conj() - s * b.conj()).norm())
        .fold(0.0, f64::max))
}

/// Difference between the point-evaluation kets and the `δ*` pullback of the
/// stored representations, maximized over `|E₀⁺⟩` and `|E₀⁻⟩`.
pub fn delta_star_pullback_equivalence(e0: f64, state: &StateVector) -> Result<f64> {
    check_energy(state, e0)?;
    let plus_ket = if state.has_tag(Membership::InPhiPlus) {
        KetFunctional::EPlus(e0)
    } else {
        KetFunctional::Free(e0)
    };
    let plus_direct = pair(plus_ket, state)?;
    let minus_direct = pair(KetFunctional::EMinus(e0), state)?;
    let stored_in = match state.in_extension() {
        Some(ext) => ext.restrict_positive()?,
        None => state.in_rep().clone(),
    };
    let plus_pullback = delta_star(&stored_in, e0)?;
    let s = s_at(state, e0)?;
    let minus_pullback = (s * delta_star(&stored_in, e0)?.conj()).conj();
    Ok((plus_direct - plus_pullback)
        .norm()
        .max((minus_direct - minus_pullback).norm()))
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PathologyReport {
    /// `(S_A ψ, S_A φ)`.
    pub value_a: Complex64,
    /// `(S_B ψ, S_B φ)`.
    pub value_b: Complex64,
    pub gap: f64,
    /// `(ψ_out, S_A φ)` with `ψ_out` held fixed.
    pub fixed_out_a: Complex64,
    pub fixed_out_b: Complex64,
    pub contrast: f64,
}

fn apply_s(model: &ScatteringModel, f: &SampledFunction) -> Result<SampledFunction> {
    let values = f
        .points()
        .map(|(e, v)| Ok(model.s_on_axis(e)? * v))
        .collect::<Result<Vec<_>>>()?;
    SampledFunction::new(*f.grid(), values)
}

/// Pairing with out-states redefined as `S ψ_in`: the value cannot depend on
/// the model. The fixed-`ψ_out` overlap is returned for contrast.
pub fn s_independence_pathology(
    psi_in: &SampledFunction,
    phi_in: &SampledFunction,
    model_a: &ScatteringModel,
    model_b: &ScatteringModel,
) -> Result<PathologyReport> {
    psi_in.grid().require(GridKind::HalfLine, "s_independence_pathology")?;
    psi_in.check_same_grid(phi_in)?;
    let (sphi_a, sphi_b) = (apply_s(model_a, phi_in)?, apply_s(model_b, phi_in)?);
    let value_a = inner_product(&apply_s(model_a, psi_in)?, &sphi_a)?;
    let value_b = inner_product(&apply_s(model_b, psi_in)?, &sphi_b)?;
    let fixed_out_a = inner_product(psi_in, &sphi_a)?;
    let fixed_out_b = inner_product(psi_in, &sphi_b)?;
    Ok(PathologyReport {
        value_a,
        value_b,
        gap: (value_a - value_b).norm(),
        fixed_out_a,
        fixed_out_b,
        contrast: (fixed_out_a - fixed_out_b).norm(),
    })
}
