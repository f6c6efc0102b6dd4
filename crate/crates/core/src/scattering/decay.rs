use std::cell::RefCell;

use num_complex::Complex64;

use super::friedrichs::{residual_limit, FriedrichsModel, ResonanceReport};
use crate::error::{Error, Result};
use crate::quadrature::{uniform_breaks, ClenshawCurtis};

/// Upper end of the energy integration; `ρ` decays like `E^{-5}`.
pub const E_MAX: f64 = 100.0;
const CC_DEGREE: usize = 32;

/// Spectral density `ρ(E) = λ² f(E)² / |η(E + i0)|²`, unnormalized.
pub fn spectral_density(model: &FriedrichsModel, e: f64) -> Result<f64> {
    let l2 = model.lambda() * model.lambda();
    Ok(l2 * model.form_factor().squared_real(e) / model.eta_plus(e)?.norm_sqr())
}

/// Panel breakpoints on `[0, E_MAX]`: geometric towards threshold, refined
/// around the bare level, and no wider than `2/t` elsewhere.
fn breaks(model: &FriedrichsModel, t: f64) -> Vec<f64> {
    let w = (2.0 / t.max(1.0)).min(0.5);
    let gamma = model.width_estimate();
    let w0 = model.omega0();
    let lo = (w0 - 40.0 * gamma).max(0.5 * w0);
    let hi = w0 + 40.0 * gamma;
    let fine = gamma.min(1.0 / t.max(1.0));
    let a = w.min(0.5 * lo);
    let mut b: Vec<f64> = (0..=40).rev().map(|j| a * 0.5f64.powi(j)).collect();
    b.insert(0, 0.0);
    for seg in [(a, lo, w), (lo, hi, fine), (hi, E_MAX.max(hi + w), w)] {
        b.extend_from_slice(&uniform_breaks(seg.0, seg.1, seg.2)[1..]);
    }
    b
}

fn density_integral(model: &FriedrichsModel, t: f64) -> Result<Complex64> {
    let cc = ClenshawCurtis::new(CC_DEGREE);
    let err = RefCell::new(None);
    let val = cc.integrate_panels_complex(&breaks(model, t), |e| {
        if e <= 0.0 {
            return Complex64::new(0.0, 0.0);
        }
        match spectral_density(model, e) {
            Ok(r) => Complex64::from_polar(r, -e * t),
            Err(x) => {
                err.borrow_mut().get_or_insert(x);
                Complex64::new(0.0, 0.0)
            }
        }
    });
    match err.into_inner() {
        Some(e) => Err(e),
        None => Ok(val),
    }
}

pub(crate) fn spectral_weight(model: &FriedrichsModel) -> Result<f64> {
    Ok(density_integral(model, 0.0)?.re)
}

fn normalization(model: &FriedrichsModel) -> Result<f64> {
    model.normalization.ok_or_else(|| {
        Error::param("lambda", "decoupled model has no continuous decay")
    })
}

/// `A(t) = ∫ e^{-iEt} ρ(E) dE / ∫ ρ`.
pub fn survival_amplitude(model: &FriedrichsModel, t: f64) -> Result<Complex64> {
    if !(t.is_finite() && t >= 0.0) {
        return Err(Error::Domain(format!("t = {t} must be >= 0")));
    }
    let n = normalization(model)?;
    Ok(density_integral(model, t)? / n)
}

/// Exponential pole term and the non-exponential remainder of `A(t)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DecaySplit {
    pub amplitude: Complex64,
    pub gamow: Complex64,
    pub background: Complex64,
}

/// Residue of the continued normalized density at the pole, `1 / (N η_II'(z_R))`.
pub fn gamow_residue(model: &FriedrichsModel, report: &ResonanceReport) -> Result<Complex64> {
    let z = report.z_r;
    let residual = model.eta_second_sheet(z)?.norm();
    if !(residual < residual_limit(z)) {
        return Err(Error::StaleReport {
            residual,
            limit: residual_limit(z),
        });
    }
    let h = 1e-6 * (1.0 + z.norm());
    let d = (model.eta_second_sheet(z + h)? - model.eta_second_sheet(z - h)?) / (2.0 * h);
    Ok(1.0 / (d * normalization(model)?))
}

pub fn gamow_background_split(
    model: &FriedrichsModel,
    report: &ResonanceReport,
    t: f64,
) -> Result<DecaySplit> {
    let r = gamow_residue(model, report)?;
    let amplitude = survival_amplitude(model, t)?;
    let gamow = r * (Complex64::new(0.0, -t) * report.z_r).exp();
    Ok(DecaySplit {
        amplitude,
        gamow,
        background: amplitude - gamow,
    })
}

/// `Γ = -2 · slope` of the least-squares line through `(t, ln|A|)`.
pub fn fit_decay_rate(samples: &[(f64, f64)]) -> Result<f64> {
    if samples.len() < 8 {
        return Err(Error::Data(format!(
            "need at least 8 samples, got {}",
            samples.len()
        )));
    }
    if let Some((t, a)) = samples
        .iter()
        .find(|(t, a)| !(t.is_finite() && a.is_finite() && *a > 0.0))
    {
        return Err(Error::Data(format!("bad sample ({t}, {a})")));
    }
    let n = samples.len() as f64;
    let tm = samples.iter().map(|s| s.0).sum::<f64>() / n;
    let ym = samples.iter().map(|s| s.1.ln()).sum::<f64>() / n;
    let (mut sxy, mut sxx) = (0.0, 0.0);
    for (t, a) in samples {
        sxy += (t - tm) * (a.ln() - ym);
        sxx += (t - tm) * (t - tm);
    }
    if sxx == 0.0 {
        return Err(Error::Data("all sample times coincide".into()));
    }
    Ok(-2.0 * sxy / sxx)
}
