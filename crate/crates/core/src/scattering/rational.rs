use num_complex::Complex64;

use crate::error::{Error, Result};

/// Breit-Wigner type S-matrix `S(z) = Π (z - z_j*) / (z - z_j)`.
///
/// Unimodular on the whole real line. With no poles it is the free model,
/// `S ≡ 1`.
#[derive(Debug, Clone, PartialEq)]
pub struct RationalSMatrix {
    poles: Vec<Complex64>,
}

impl RationalSMatrix {
    pub fn new(poles: Vec<Complex64>) -> Result<Self> {
        for z in &poles {
            if !(z.re.is_finite() && z.im.is_finite()) {
                return Err(Error::param("poles", format!("{z} is not finite")));
            }
            if !(z.im < 0.0 && z.re > 0.0) {
                return Err(Error::param(
                    "poles",
                    format!("{z} must have Re z > 0 and Im z < 0"),
                ));
            }
        }
        Ok(Self { poles })
    }

    /// Single resonance at `E_R - iΓ/2`.
    pub fn breit_wigner(e_r: f64, gamma: f64) -> Result<Self> {
        if !(gamma.is_finite() && gamma > 0.0) {
            return Err(Error::param("gamma", format!("{gamma} must be positive")));
        }
        Self::new(vec![Complex64::new(e_r, -gamma / 2.0)])
    }

    pub fn free() -> Self {
        Self { poles: Vec::new() }
    }

    pub fn poles(&self) -> &[Complex64] {
        &self.poles
    }

    pub fn is_free(&self) -> bool {
        self.poles.is_empty()
    }

    /// Meromorphic continuation; a domain error exactly at a pole.
    pub fn eval(&self, z: Complex64) -> Result<Complex64> {
        let mut s = Complex64::new(1.0, 0.0);
        for p in &self.poles {
            let den = z - p;
            if den.norm() == 0.0 {
                return Err(Error::Domain(format!("S has a pole at {z}")));
            }
            s *= (z - p.conj()) / den;
        }
        Ok(s)
    }

    /// `S(E)` for any real `E`; poles are never on the axis.
    pub fn on_real_line(&self, e: f64) -> Complex64 {
        let z = Complex64::new(e, 0.0);
        self.poles
            .iter()
            .fold(Complex64::new(1.0, 0.0), |s, p| s * (z - p.conj()) / (z - p))
    }
}
