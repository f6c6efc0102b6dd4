use std::sync::Arc;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::funcgrid::{GridKind, SampledFunction};
use crate::hardy::{
    restrict_to_positive_axis, riesz_project, DeltaElement, Half, HardyBoundary,
    CERTIFICATE_LIMIT,
};
use crate::scattering::{RationalSMatrix, ScatteringModel};

/// Forbidden-mass limit accepted for the derived extension of an
/// intersection member; the measured value enters its quality score.
pub const INTERSECTION_LIMIT: f64 = 1e-4;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Membership {
    /// In-representation is the restriction of a lower-class function.
    InPhiPlus,
    /// Out-representation is the restriction of an upper-class function.
    InPhiMinus,
    /// In-representation is a Δ restriction.
    InDeltaRep,
}

/// A vector given by its in-representation `a(E)` on `E > 0` and a model;
/// the out-representation is `b = S(E + i0) a`.
#[derive(Debug, Clone, PartialEq)]
pub struct StateVector {
    in_rep: SampledFunction,
    out_rep: SampledFunction,
    model: ScatteringModel,
    s_values: Arc<Vec<Complex64>>,
    in_extension: Option<HardyBoundary>,
    out_extension: Option<HardyBoundary>,
    delta_rep: bool,
    quality: f64,
}

fn s_on_grid(model: &ScatteringModel, grid: &crate::funcgrid::Grid) -> Result<Vec<Complex64>> {
    grid.points().into_iter().map(|e| model.s_on_axis(e)).collect()
}

fn sup_diff(a: &SampledFunction, b: &SampledFunction) -> f64 {
    a.values()
        .iter()
        .zip(b.values())
        .map(|(x, y)| (x - y).norm())
        .fold(0.0, f64::max)
}

impl StateVector {
    fn assemble(
        in_rep: SampledFunction,
        model: ScatteringModel,
        s_values: Option<Arc<Vec<Complex64>>>,
    ) -> Result<Self> {
        in_rep.grid().require(GridKind::HalfLine, "state representation")?;
        let s_values = match s_values {
            Some(s) => s,
            None => Arc::new(s_on_grid(&model, in_rep.grid())?),
        };
        let out = in_rep
            .values()
            .iter()
            .zip(s_values.iter())
            .map(|(a, s)| s * a)
            .collect();
        let out_rep = SampledFunction::new(*in_rep.grid(), out)?;
        Ok(Self {
            in_rep,
            out_rep,
            model,
            s_values,
            in_extension: None,
            out_extension: None,
            delta_rep: false,
            quality: 0.0,
        })
    }

    /// Untagged state from its in-representation.
    pub fn from_in_rep(a: SampledFunction, model: ScatteringModel) -> Result<Self> {
        Self::assemble(a, model, None)
    }

    /// Untagged state from its out-representation, `a = S* b`.
    pub fn from_out_rep(b: SampledFunction, model: ScatteringModel) -> Result<Self> {
        b.grid().require(GridKind::HalfLine, "state representation")?;
        let s = Arc::new(s_on_grid(&model, b.grid())?);
        let a = b
            .values()
            .iter()
            .zip(s.iter())
            .map(|(b, s)| s.conj() * b)
            .collect();
        Self::assemble(SampledFunction::new(*b.grid(), a)?, model, Some(s))
    }

    /// In-Φ⁺ state whose in-representation is the restriction of `ext`.
    pub fn with_in_extension(ext: HardyBoundary, model: ScatteringModel) -> Result<Self> {
        if ext.half() != Half::Lower {
            return Err(Error::Incompatible(
                "in-representations extend to the lower class".into(),
            ));
        }
        let mut st = Self::assemble(ext.restrict_positive()?, model, None)?;
        st.quality = ext.forbidden_mass().sqrt() * st.in_rep.sup_norm();
        st.in_extension = Some(ext);
        Ok(st)
    }

    /// In-Φ⁻ state whose out-representation is the restriction of `ext`.
    pub fn with_out_extension(ext: HardyBoundary, model: ScatteringModel) -> Result<Self> {
        if ext.half() != Half::Upper {
            return Err(Error::Incompatible(
                "out-representations extend to the upper class".into(),
            ));
        }
        let mut st = Self::from_out_rep(ext.restrict_positive()?, model)?;
        st.quality = ext.forbidden_mass().sqrt() * st.out_rep.sup_norm();
        st.out_extension = Some(ext);
        Ok(st)
    }

    /// In-Φ⁺ state whose in-representation is a Δ element, carried by its
    /// lower extension.
    pub fn from_delta(d: &DeltaElement, model: ScatteringModel) -> Result<Self> {
        let mut st = Self::with_in_extension(d.g_minus().clone(), model)?;
        st.delta_rep = true;
        Ok(st)
    }

    /// A vector carrying both tags, for a rational model.
    ///
    /// `out_ext` is the upper extension of the out-representation; `lower_source`
    /// is a full-line function with the same restriction to `E > 0` whose
    /// product with `S⁻¹` is lower class. The in-extension is `S⁻¹ · lower_source`.
    pub fn intersection_member(
        model: ScatteringModel,
        out_ext: HardyBoundary,
        lower_source: &SampledFunction,
    ) -> Result<Self> {
        let rational = match &model {
            ScatteringModel::Rational(r) => r.clone(),
            ScatteringModel::Friedrichs(_) => {
                return Err(Error::Incompatible(
                    "intersection members need S⁻¹ on the whole line (rational models only)".into(),
                ))
            }
        };
        if out_ext.half() != Half::Upper {
            return Err(Error::Incompatible("out extension must be upper class".into()));
        }
        lower_source.check_same_grid(out_ext.boundary())?;
        let b_ext = out_ext.restrict_positive()?;
        let src = restrict_to_positive_axis(lower_source)?;
        let mismatch = sup_diff(&b_ext, &src);
        if mismatch > 1e-10 * b_ext.sup_norm().max(f64::MIN_POSITIVE) {
            return Err(Error::Precondition(format!(
                "lower source and out extension differ on E > 0 by {mismatch:.3e}"
            )));
        }
        let in_ext = HardyBoundary::with_limit(
            lower_source.modulate(|x| rational.on_real_line(x).conj())?,
            Half::Lower,
            INTERSECTION_LIMIT,
        )?;
        let mut st = Self::assemble(in_ext.restrict_positive()?, model, None)?;
        let q_in = in_ext.forbidden_mass().sqrt() * st.in_rep.sup_norm();
        let q_out = out_ext.forbidden_mass().sqrt() * st.out_rep.sup_norm();
        let q_rep = sup_diff(&st.out_rep, &b_ext);
        st.quality = q_in.max(q_out).max(q_rep);
        st.in_extension = Some(in_ext);
        st.out_extension = Some(out_ext);
        Ok(st)
    }

    /// Intersection member whose out-representation is the Δ element `d`.
    /// Its in-extension `S⁻¹ g₋` vanishes at every pole of `S`.
    pub fn xi_from_delta(d: &DeltaElement, model: ScatteringModel) -> Result<Self> {
        let mut st = Self::intersection_member(model, d.g_plus().clone(), d.g_minus().boundary())?;
        st.delta_rep = true;
        Ok(st)
    }

    /// Intersection member with out-extension `P₊[c / (E - z_j)]` for the
    /// `j`-th pole of `s`; its in-extension is close to `c / (E - z_j*)`, which
    /// does not vanish at `z_j`.
    pub fn xi_from_pole(
        grid: &crate::funcgrid::Grid,
        s: &RationalSMatrix,
        pole_index: usize,
        c: Complex64,
    ) -> Result<Self> {
        let z = *s
            .poles()
            .get(pole_index)
            .ok_or_else(|| Error::param("pole_index", format!("model has {} poles", s.poles().len())))?;
        let raw = SampledFunction::from_fn(*grid, |x| c / (x - z))?;
        let b = riesz_project(&raw, Half::Upper)?;
        let src = b.boundary().clone();
        Self::intersection_member(ScatteringModel::Rational(s.clone()), b, &src)
    }

    pub fn in_rep(&self) -> &SampledFunction {
        &self.in_rep
    }

    pub fn out_rep(&self) -> &SampledFunction {
        &self.out_rep
    }

    pub fn model(&self) -> &ScatteringModel {
        &self.model
    }

    /// `S(E + i0)` on the half-line nodes.
    pub fn s_values(&self) -> &[Complex64] {
        &self.s_values
    }

    pub fn in_extension(&self) -> Option<&HardyBoundary> {
        self.in_extension.as_ref()
    }

    pub fn out_extension(&self) -> Option<&HardyBoundary> {
        self.out_extension.as_ref()
    }

    /// Distance of the representations from their extension certificates.
    pub fn quality(&self) -> f64 {
        self.quality
    }

    pub fn has_tag(&self, tag: Membership) -> bool {
        match tag {
            Membership::InPhiPlus => self.in_extension.is_some(),
            Membership::InPhiMinus => self.out_extension.is_some(),
            Membership::InDeltaRep => self.delta_rep,
        }
    }

    pub fn tags(&self) -> Vec<Membership> {
        [Membership::InPhiPlus, Membership::InPhiMinus, Membership::InDeltaRep]
            .into_iter()
            .filter(|t| self.has_tag(*t))
            .collect()
    }

    /// `L²` norm, from the in-representation.
    pub fn norm(&self) -> f64 {
        self.in_rep.norm()
    }

    pub(crate) fn check_compatible(&self, other: &StateVector) -> Result<()> {
        self.in_rep.check_same_grid(&other.in_rep)?;
        if self.model != other.model {
            return Err(Error::Incompatible("states belong to different models".into()));
        }
        Ok(())
    }

    /// `self + c · other`; a tag survives when both operands carry it.
    pub fn add_scaled(&self, c: Complex64, other: &StateVector) -> Result<Self> {
        self.check_compatible(other)?;
        let mut st = Self::assemble(
            self.in_rep.axpy(c, &other.in_rep)?,
            self.model.clone(),
            Some(self.s_values.clone()),
        )?;
        let combine = |x: &Option<HardyBoundary>, y: &Option<HardyBoundary>| -> Result<_> {
            match (x, y) {
                (Some(x), Some(y)) => {
                    let limit = CERTIFICATE_LIMIT.max(INTERSECTION_LIMIT);
                    Ok(Some(HardyBoundary::with_limit(
                        x.boundary().axpy(c, y.boundary())?,
                        x.half(),
                        limit,
                    )?))
                }
                _ => Ok(None),
            }
        };
        st.in_extension = combine(&self.in_extension, &other.in_extension)?;
        st.out_extension = combine(&self.out_extension, &other.out_extension)?;
        st.delta_rep = self.delta_rep && other.delta_rep;
        st.quality = self.quality.max(c.norm() * other.quality);
        Ok(st)
    }

    pub fn scale(&self, c: Complex64) -> Result<Self> {
        let zero = Self::assemble(
            SampledFunction::zeros(*self.in_rep.grid()),
            self.model.clone(),
            Some(self.s_values.clone()),
        )?;
        let mut st = zero.add_scaled(c, self)?;
        st.in_extension = self
            .in_extension
            .as_ref()
            .map(|e| HardyBoundary::unchecked(e.boundary().scale(c)?, e.half()))
            .transpose()?;
        st.out_extension = self
            .out_extension
            .as_ref()
            .map(|e| HardyBoundary::unchecked(e.boundary().scale(c)?, e.half()))
            .transpose()?;
        st.delta_rep = self.delta_rep;
        Ok(st)
    }

    /// Free evolution `a(E) ↦ e^{-iEt} a(E)`. The lower extension is carried
    /// along and re-certified; the upper extension is dropped.
    pub fn time_translate(&self, t: f64) -> Result<Self> {
        if !t.is_finite() {
            return Err(Error::param("t", "not finite"));
        }
        let phase = |e: f64| Complex64::from_polar(1.0, -e * t);
        let mut st = Self::assemble(
            self.in_rep.modulate(phase)?,
            self.model.clone(),
            Some(self.s_values.clone()),
        )?;
        // The wrap point of the antiperiodic grid leaks some forbidden mass
        // unless 2Lt is a multiple of 2π; it is folded into the quality score.
        if let Some(ext) = &self.in_extension {
            let limit = INTERSECTION_LIMIT.max(10.0 * ext.forbidden_mass());
            if let Ok(moved) = HardyBoundary::with_limit(ext.boundary().modulate(phase)?, Half::Lower, limit) {
                st.quality = self.quality.max(moved.forbidden_mass().sqrt() * st.in_rep.sup_norm());
                st.in_extension = Some(moved);
            }
        }
        Ok(st)
    }

    /// `a(E) ↦ E a(E)`, the energy operator in the in-representation.
    pub fn apply_energy(&self) -> Result<Self> {
        Self::assemble(
            self.in_rep.modulate(|e| Complex64::new(e, 0.0))?,
            self.model.clone(),
            Some(self.s_values.clone()),
        )
    }
}
