use num_complex::Complex64;

use super::kets::{pair, KetFunctional};
use super::state::{Membership, StateVector};
use crate::error::{Error, Result};

/// A vector split as `plus + minus` with `plus` in Φ⁺ and `minus` in Φ⁻,
/// together with intersection members `ξ` that shift the split.
#[derive(Debug, Clone, PartialEq)]
pub struct DecomposedVector {
    plus_part: StateVector,
    minus_part: StateVector,
    shift_basis: Vec<StateVector>,
}

impl DecomposedVector {
    pub fn new(
        plus_part: StateVector,
        minus_part: StateVector,
        shift_basis: Vec<StateVector>,
    ) -> Result<Self> {
        if !plus_part.has_tag(Membership::InPhiPlus) {
            return Err(Error::admissibility("decomposition", "plus part is not in Φ⁺"));
        }
        if !minus_part.has_tag(Membership::InPhiMinus) {
            return Err(Error::admissibility("decomposition", "minus part is not in Φ⁻"));
        }
        plus_part.check_compatible(&minus_part)?;
        for xi in &shift_basis {
            if !(xi.has_tag(Membership::InPhiPlus) && xi.has_tag(Membership::InPhiMinus)) {
                return Err(Error::admissibility(
                    "decomposition",
                    "shift vector is not in both Φ⁺ and Φ⁻",
                ));
            }
            plus_part.check_compatible(xi)?;
        }
        Ok(Self {
            plus_part,
            minus_part,
            shift_basis,
        })
    }

    pub fn plus_part(&self) -> &StateVector {
        &self.plus_part
    }

    pub fn minus_part(&self) -> &StateVector {
        &self.minus_part
    }

    pub fn shift_basis(&self) -> &[StateVector] {
        &self.shift_basis
    }

    /// `(plus + sξ, minus - sξ)` for the `index`-th shift vector.
    pub fn shifted(&self, index: usize, s: f64) -> Result<Self> {
        let xi = self.shift_basis.get(index).ok_or_else(|| {
            Error::Configuration(format!(
                "shift basis has {} vectors, index {index} requested",
                self.shift_basis.len()
            ))
        })?;
        let c = Complex64::new(s, 0.0);
        Ok(Self {
            plus_part: self.plus_part.add_scaled(c, xi)?,
            minus_part: self.minus_part.add_scaled(-c, xi)?,
            shift_basis: self.shift_basis.clone(),
        })
    }

    pub fn scale(&self, c: Complex64) -> Result<Self> {
        Ok(Self {
            plus_part: self.plus_part.scale(c)?,
            minus_part: self.minus_part.scale(c)?,
            shift_basis: self.shift_basis.clone(),
        })
    }
}

/// Value of a decomposition-dependent map.
///
/// Gamow: the rule that reads only the Φ⁺ summand. `EPlus`/`EMinus`: the map
/// that applies `|E₀⁺⟩` to the Φ⁺ summand and `|E₀⁻⟩` to the Φ⁻ summand.
/// `Free`/`DeltaStar`: the free ket, which reads both summands through the
/// same representation.
fn split_value(v: &DecomposedVector, ket: KetFunctional) -> Result<Complex64> {
    match ket {
        KetFunctional::Gamow(_) => pair(ket, &v.plus_part),
        KetFunctional::EPlus(e0) | KetFunctional::EMinus(e0) => Ok(pair(
            KetFunctional::EPlus(e0),
            &v.plus_part,
        )? + pair(KetFunctional::EMinus(e0), &v.minus_part)?),
        KetFunctional::Free(e0) | KetFunctional::DeltaStar(e0) => Ok(pair_free(v, e0)?.0),
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DemoReport {
    pub value0: Complex64,
    pub value_s: Complex64,
    pub gap: f64,
    /// `|s| · |value on ξ|`, what linearity predicts for the gap.
    pub predicted_gap: f64,
}

/// Evaluates a decomposition-dependent map before and after shifting the
/// split by `s` times the first shift vector.
pub fn decomposition_dependence_demo(
    v: &DecomposedVector,
    ket: KetFunctional,
    s: f64,
) -> Result<DemoReport> {
    let xi = v
        .shift_basis
        .first()
        .ok_or_else(|| Error::Configuration("empty shift basis".into()))?;
    let value0 = split_value(v, ket)?;
    let value_s = split_value(&v.shifted(0, s)?, ket)?;
    let on_xi = match ket {
        KetFunctional::Gamow(_) => pair(ket, xi)?,
        KetFunctional::EPlus(e0) | KetFunctional::EMinus(e0) => {
            pair(KetFunctional::EPlus(e0), xi)? - pair(KetFunctional::EMinus(e0), xi)?
        }
        KetFunctional::Free(_) | KetFunctional::DeltaStar(_) => Complex64::new(0.0, 0.0),
    };
    Ok(DemoReport {
        value0,
        value_s,
        gap: (value0 - value_s).norm(),
        predicted_gap: s.abs() * on_xi.norm(),
    })
}

/// Free ket on a decomposed vector: `[a₊(E₀) + a₋(E₀)]*`, and the change of
/// that value under a unit shift by the first shift vector.
pub fn pair_free(v: &DecomposedVector, e0: f64) -> Result<(Complex64, f64)> {
    let value_of = |w: &DecomposedVector| -> Result<Complex64> {
        Ok(pair(KetFunctional::Free(e0), &w.plus_part)? + pair(KetFunctional::Free(e0), &w.minus_part)?)
    };
    let value = value_of(v)?;
    let gap = if v.shift_basis.is_empty() {
        0.0
    } else {
        (value - value_of(&v.shifted(0, 1.0)?)?).norm()
    };
    Ok((value, gap))
}

/// `p(s) = sup|a₊ + s a_ξ| + sup|a₋ - s a_ξ|` for the `index`-th shift vector.
pub fn decomposition_seminorm(v: &DecomposedVector, index: usize, s: f64) -> Result<f64> {
    let xi = v.shift_basis.get(index).ok_or_else(|| {
        Error::Configuration(format!("no shift vector with index {index}"))
    })?;
    let c = Complex64::new(s, 0.0);
    let plus = v.plus_part.in_rep().axpy(c, xi.in_rep())?;
    let minus = v.minus_part.in_rep().axpy(-c, xi.in_rep())?;
    Ok(plus.sup_norm() + minus.sup_norm())
}

/// Minimum of `p(s)` over `s_grid` and all shift vectors, with its location.
pub fn infimum_seminorm(v: &DecomposedVector, s_grid: &[f64]) -> Result<(f64, f64)> {
    if s_grid.is_empty() {
        return Err(Error::param("s_grid", "empty"));
    }
    if let Some(s) = s_grid.iter().find(|s| !s.is_finite()) {
        return Err(Error::param("s_grid", format!("{s} is not finite")));
    }
    if v.shift_basis.is_empty() {
        let p = v.plus_part.in_rep().sup_norm() + v.minus_part.in_rep().sup_norm();
        return Ok((p, 0.0));
    }
    let mut best = (f64::INFINITY, 0.0);
    for index in 0..v.shift_basis.len() {
        for &s in s_grid {
            let p = decomposition_seminorm(v, index, s)?;
            if p < best.0 {
                best = (p, s);
            }
        }
    }
    Ok(best)
}
