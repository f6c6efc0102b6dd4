use std::f64::consts::PI;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::transforms::pv_half_line;

/// Coupling form factor `f(ω)` on `ω > 0`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum FormFactor {
    /// `f(ω) = √ω / (1 + ω²)`, so `f² = ω / (1 + ω²)²`.
    #[default]
    SqrtRational,
}

impl FormFactor {
    /// `f(ω)²` continued to complex `ω`.
    pub fn squared(self, w: Complex64) -> Complex64 {
        match self {
            FormFactor::SqrtRational => {
                let d = 1.0 + w * w;
                w / (d * d)
            }
        }
    }

    pub fn squared_real(self, w: f64) -> f64 {
        match self {
            FormFactor::SqrtRational => w / ((1.0 + w * w) * (1.0 + w * w)),
        }
    }

    /// `∫_0^∞ f(ω)² / (z - ω) dω` for `z` off `[0, ∞)`, in closed form with the
    /// principal logarithm.
    pub fn dispersion(self, z: Complex64) -> Complex64 {
        self.dispersion_with_log(z, (-z).ln())
    }

    fn dispersion_with_log(self, z: Complex64, log_minus_z: Complex64) -> Complex64 {
        match self {
            FormFactor::SqrtRational => {
                let d = 1.0 + z * z;
                self.squared(z) * log_minus_z + PI * z * z / (2.0 * d * d) + z / (2.0 * d)
                    - PI / (4.0 * d)
            }
        }
    }

    /// Limit of the dispersion integral at `z = 0` from the negative axis.
    fn dispersion_at_zero(self) -> f64 {
        match self {
            FormFactor::SqrtRational => -PI / 4.0,
        }
    }
}

/// Discrete level `ω₀` coupled to the continuum `[0, ∞)` with strength `λ`.
///
/// `η(z) = z - ω₀ - λ² ∫ f(ω)² / (z - ω) dω` is analytic off the cut; its
/// continuation through the cut from above is
/// `η_II(z) = η(z) + 2πiλ² f(z)²`, whose zeros in the lower half-plane are
/// the resonances.
#[derive(Debug, Clone, PartialEq)]
pub struct FriedrichsModel {
    omega0: f64,
    lambda: f64,
    form_factor: FormFactor,
    /// `∫ ρ`, absent for the decoupled model.
    pub(crate) normalization: Option<f64>,
}

impl FriedrichsModel {
    pub fn new(omega0: f64, lambda: f64, form_factor: FormFactor) -> Result<Self> {
        if !(omega0.is_finite() && omega0 > 0.0) {
            return Err(Error::param("omega0", format!("{omega0} must be positive")));
        }
        if !lambda.is_finite() {
            return Err(Error::param("lambda", "not finite"));
        }
        let mut model = Self {
            omega0,
            lambda,
            form_factor,
            normalization: None,
        };
        model.guard_bound_state()?;
        if lambda != 0.0 {
            model.normalization = Some(super::decay::spectral_weight(&model)?);
        }
        Ok(model)
    }

    /// Reference model `ω₀ = 1`, `λ = 0.1`, default form factor.
    pub fn reference() -> Self {
        Self::new(1.0, 0.1, FormFactor::default()).expect("reference parameters are valid")
    }

    pub fn omega0(&self) -> f64 {
        self.omega0
    }

    pub fn lambda(&self) -> f64 {
        self.lambda
    }

    pub fn form_factor(&self) -> FormFactor {
        self.form_factor
    }

    fn lambda2(&self) -> f64 {
        self.lambda * self.lambda
    }

    /// `η` is increasing on `E < 0`, so a real zero below threshold exists
    /// iff `η(0⁻) > 0`. The scan double-checks sign changes on a ladder.
    fn guard_bound_state(&self) -> Result<()> {
        let at_zero = -self.omega0 - self.lambda2() * self.form_factor.dispersion_at_zero();
        let mut prev = f64::NEG_INFINITY;
        for j in 0..64 {
            let e = -1e3 * 0.75f64.powi(j);
            let v = self.eta(Complex64::new(e, 0.0))?.re;
            if prev < 0.0 && v >= 0.0 {
                return Err(Error::param("lambda", format!("bound state below threshold near E = {e}")));
            }
            prev = v;
        }
        if at_zero >= 0.0 {
            return Err(Error::param(
                "lambda",
                format!("coupling produces a bound state: η(0⁻) = {at_zero} >= 0"),
            ));
        }
        Ok(())
    }

    /// Physical-sheet `η(z)`, domain error on the cut `[0, ∞)`.
    pub fn eta(&self, z: Complex64) -> Result<Complex64> {
        if !(z.re.is_finite() && z.im.is_finite()) {
            return Err(Error::Domain(format!("z = {z} is not finite")));
        }
        if z.im == 0.0 && z.re >= 0.0 {
            return Err(Error::Domain(format!("z = {z} lies on the cut")));
        }
        Ok(z - self.omega0 - self.lambda2() * self.form_factor.dispersion(z))
    }

    /// `η(E + i0)` from the closed form.
    pub fn eta_plus(&self, e: f64) -> Result<Complex64> {
        if !(e.is_finite() && e > 0.0) {
            return Err(Error::Domain(format!("E = {e} must be positive")));
        }
        let z = Complex64::new(e, 0.0);
        let log = Complex64::new(e.ln(), -PI);
        Ok(z - self.omega0 - self.lambda2() * self.form_factor.dispersion_with_log(z, log))
    }

    /// `η(E + i0) = E - ω₀ - λ² PV∫ f²/(E - ω) dω + iπλ² f(E)²`, with the
    /// principal value from the odd-reflection quadrature.
    pub fn eta_plus_quadrature(&self, e: f64) -> Result<Complex64> {
        let ff = self.form_factor;
        let pv = pv_half_line(|w| ff.squared_real(w), e)?;
        let l2 = self.lambda2();
        Ok(Complex64::new(e - self.omega0 - l2 * pv, PI * l2 * ff.squared_real(e)))
    }

    /// Second-sheet `η_II(z)` for `Im z < 0`.
    pub fn eta_second_sheet(&self, z: Complex64) -> Result<Complex64> {
        if !(z.im < 0.0) {
            return Err(Error::Domain(format!(
                "second-sheet η needs Im z < 0, got {z}"
            )));
        }
        let two_pi_i = Complex64::new(0.0, 2.0 * PI);
        Ok(self.eta(z)? + two_pi_i * self.lambda2() * self.form_factor.squared(z))
    }

    /// `S(E + i0) = η(E - i0) / η(E + i0)` for `E > 0`.
    pub fn s_on_axis(&self, e: f64) -> Result<Complex64> {
        let plus = self.eta_plus_quadrature(e)?;
        if plus.norm() == 0.0 {
            return Err(Error::Domain(format!("η(E + i0) vanishes at E = {e}")));
        }
        Ok(plus.conj() / plus)
    }

    /// Continuation of `S` from the upper rim of the positive axis.
    ///
    /// Below the axis the denominator continues onto the second sheet, so the
    /// resonance is a pole; above it the numerator does, giving the conjugate
    /// zero.
    pub fn s_continued(&self, z: Complex64) -> Result<Complex64> {
        if z.im < 0.0 {
            let den = self.eta_second_sheet(z)?;
            if den.norm() == 0.0 {
                return Err(Error::Domain(format!("S has a pole at {z}")));
            }
            Ok(self.eta(z)? / den)
        } else if z.im > 0.0 {
            let num = self.eta_second_sheet(z.conj())?.conj();
            Ok(num / self.eta(z)?)
        } else {
            self.s_on_axis(z.re)
        }
    }

    /// Second-order perturbative pole
    /// `ω₀ + λ² PV∫ f²/(ω₀ - ω) dω - iπλ² f(ω₀)²`, by quadrature.
    pub fn perturbative_pole(&self) -> Result<Complex64> {
        let ff = self.form_factor;
        let pv = pv_half_line(|w| ff.squared_real(w), self.omega0)?;
        let l2 = self.lambda2();
        Ok(Complex64::new(
            self.omega0 + l2 * pv,
            -PI * l2 * ff.squared_real(self.omega0),
        ))
    }

    /// First-order width estimate `2πλ² f(ω₀)²`.
    pub fn width_estimate(&self) -> f64 {
        2.0 * PI * self.lambda2() * self.form_factor.squared_real(self.omega0)
    }
}

/// A converged second-sheet zero of `η`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ResonanceReport {
    pub z_r: Complex64,
    pub residual: f64,
    pub gamma: f64,
    pub e_r: f64,
    pub iterations: usize,
}

pub const MAX_SECANT_ITERATIONS: usize = 100;

pub(crate) fn residual_limit(z: Complex64) -> f64 {
    1e-10 * (1.0 + z.norm())
}

/// Secant iteration on `η_II` from `guess`.
pub fn find_resonance_pole(model: &FriedrichsModel, guess: Complex64) -> Result<ResonanceReport> {
    if !(guess.im < 0.0) {
        return Err(Error::Domain(format!("guess {guess} is not in the lower half-plane")));
    }
    let mut z0 = guess;
    let mut z1 = guess + Complex64::new(1e-3 * (1.0 + guess.norm()), 0.0);
    let mut f0 = model.eta_second_sheet(z0)?;
    let mut trace = vec![z0, z1];
    for it in 1..=MAX_SECANT_ITERATIONS {
        if !(z1.im < 0.0) {
            return Err(Error::NotAResonance(z1));
        }
        let f1 = model.eta_second_sheet(z1)?;
        if f1.norm() < residual_limit(z1) {
            return Ok(ResonanceReport {
                z_r: z1,
                residual: f1.norm(),
                gamma: -2.0 * z1.im,
                e_r: z1.re,
                iterations: it,
            });
        }
        let den = f1 - f0;
        if den.norm() == 0.0 {
            break;
        }
        let z2 = z1 - f1 * (z1 - z0) / den;
        if !(z2.re.is_finite() && z2.im.is_finite()) {
            break;
        }
        (z0, f0, z1) = (z1, f1, z2);
        trace.push(z1);
    }
    Err(Error::Solver {
        iterations: MAX_SECANT_ITERATIONS,
        trace,
    })
}
