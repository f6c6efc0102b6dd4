//! Fourier and Hilbert transforms with pinned conventions.
//!
//! Forward transform: `F f(k) = ∫ e^{-ikx} f(x) dx`. Hilbert transform:
//! Fourier multiplier `+i sgn(k)`, i.e. convolution with `-(1/π) PV(1/x)`.
//! With these signs `𝔥f + if` has its spectrum on `k > 0` (upper Hardy class)
//! and `𝔥f - if` on `k < 0` (lower Hardy class).
//!
//! On a full-line grid of `n` nodes the discrete transform lives on the
//! frequency grid `k_j = (j - n/2 + 1/2) dk`, so the sampled function is
//! treated as antiperiodic with period `2L`. The frequency grid never contains
//! `k = 0`, which makes the multiplier square to exactly `-1`.

use std::f64::consts::PI;

use num_complex::Complex64;
use rustfft::FftPlanner;

use crate::error::{Error, Result};
use crate::funcgrid::{GridKind, SampledFunction};
use crate::quadrature::{uniform_breaks, ClenshawCurtis};

/// Sign conventions used throughout the crate.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TransformConvention {
    /// Sign of the exponent of the forward transform.
    pub fourier_sign: i8,
    /// Sign `σ` in the Hilbert multiplier `σ i sgn(k)`.
    pub hilbert_multiplier_sign: i8,
}

pub const CONVENTION: TransformConvention = TransformConvention {
    fourier_sign: -1,
    hilbert_multiplier_sign: 1,
};

/// Twiddle applied before the forward FFT (and, conjugated, after the inverse).
fn twiddle(m: usize, n: usize) -> Complex64 {
    let sign = if m % 2 == 0 { 1.0 } else { -1.0 };
    let phase = -PI * (m as f64 - n as f64 / 2.0) / n as f64;
    Complex64::from_polar(sign, phase)
}

fn parity(j: usize) -> f64 {
    if j % 2 == 0 {
        1.0
    } else {
        -1.0
    }
}

/// Samples of `f̂` on the dual frequency grid.
pub fn fourier(f: &SampledFunction) -> Result<SampledFunction> {
    let grid = *f.grid();
    grid.require(GridKind::FullLine, "fourier")?;
    let n = grid.len();
    let h = grid.spacing();
    let mut buf: Vec<Complex64> = f
        .values()
        .iter()
        .enumerate()
        .map(|(m, v)| v * twiddle(m, n))
        .collect();
    FftPlanner::new().plan_fft_forward(n).process(&mut buf);
    let out = buf
        .into_iter()
        .enumerate()
        .map(|(j, v)| v * (h * parity(j)))
        .collect();
    SampledFunction::new(grid.dual()?, out)
}

/// Exact inverse of [`fourier`].
pub fn inverse_fourier(fhat: &SampledFunction) -> Result<SampledFunction> {
    let kgrid = *fhat.grid();
    kgrid.require(GridKind::Frequency, "inverse_fourier")?;
    let xgrid = kgrid.dual()?;
    let n = kgrid.len();
    let h = xgrid.spacing();
    let mut buf: Vec<Complex64> = fhat
        .values()
        .iter()
        .enumerate()
        .map(|(j, v)| v * parity(j))
        .collect();
    FftPlanner::new().plan_fft_inverse(n).process(&mut buf);
    let scale = 1.0 / (n as f64 * h);
    let out = buf
        .into_iter()
        .enumerate()
        .map(|(m, v)| v * twiddle(m, n).conj() * scale)
        .collect();
    SampledFunction::new(xgrid, out)
}

/// Applies a multiplier `m(k)` in frequency space.
pub fn fourier_multiply(
    f: &SampledFunction,
    multiplier: impl Fn(f64) -> Complex64,
) -> Result<SampledFunction> {
    let fhat = fourier(f)?;
    inverse_fourier(&fhat.modulate(multiplier)?)
}

pub(crate) fn hilbert_multiplier(k: f64) -> Complex64 {
    let s = f64::from(CONVENTION.hilbert_multiplier_sign);
    if k > 0.0 {
        Complex64::new(0.0, s)
    } else {
        Complex64::new(0.0, -s)
    }
}

/// Spectral Hilbert transform, multiplier `+i sgn(k)`.
pub fn hilbert(f: &SampledFunction) -> Result<SampledFunction> {
    f.grid().require(GridKind::FullLine, "hilbert")?;
    fourier_multiply(f, hilbert_multiplier)
}

/// Direct principal-value quadrature of the Hilbert convolution, used only as
/// an oracle for [`hilbert`].
///
/// The kernel is `-(1/π) PV(1/x)` summed over the antiperiodic images of the
/// grid's period `2L`, which in closed form is `-1 / (2L sin(π u / 2L))`. The
/// integral is folded onto `u > 0` as `∫ [f(x-u) - f(x+u)] K(u) du`, whose
/// integrand is smooth and periodic, and then summed with the trapezoid rule.
/// The `u = 0` node carries the limit `(2/π) f'(x)`, taken from an
/// eighth-order central difference.
pub fn pv_convolution_oracle(f: &SampledFunction) -> Result<SampledFunction> {
    let grid = *f.grid();
    grid.require(GridKind::FullLine, "pv_convolution_oracle")?;
    let n = grid.len() as isize;
    let h = grid.spacing();
    let l = grid.span();
    let vals = f.values();
    let ext = |idx: isize| -> Complex64 {
        let q = idx.div_euclid(n);
        let r = idx.rem_euclid(n) as usize;
        if q % 2 == 0 {
            vals[r]
        } else {
            -vals[r]
        }
    };
    let half = n / 2;
    let kernel: Vec<f64> = (0..=half)
        .map(|p| {
            if p == 0 {
                0.0
            } else {
                -1.0 / (2.0 * l * (PI * p as f64 * h / (2.0 * l)).sin())
            }
        })
        .collect();
    const D8: [f64; 4] = [4.0 / 5.0, -1.0 / 5.0, 4.0 / 105.0, -1.0 / 280.0];
    let out = (0..n)
        .map(|m| {
            let mut deriv = Complex64::new(0.0, 0.0);
            for (j, c) in D8.iter().enumerate() {
                let j = j as isize + 1;
                deriv += (ext(m + j) - ext(m - j)) * *c;
            }
            deriv /= h;
            let mut acc = deriv * (h / PI);
            for p in 1..=half {
                let w = if p == half { 0.5 } else { 1.0 };
                acc += (ext(m - p) - ext(m + p)) * (w * kernel[p as usize] * h);
            }
            acc
        })
        .collect();
    SampledFunction::new(grid, out)
}

/// `PV ∫_0^∞ g(ω) / (x - ω) dω` by odd reflection about `x`.
///
/// `∫_0^{2x}` is folded into `∫_0^x [g(x-u) - g(x+u)]/u du`; the tail
/// `∫_{2x}^∞` is mapped to `(0, 1]` with `ω = 2x/s`. `g` must decay faster
/// than `1/ω`.
pub fn pv_half_line(g: impl Fn(f64) -> f64, x: f64) -> Result<f64> {
    if !(x.is_finite() && x > 0.0) {
        return Err(Error::Domain(format!("PV point {x} must be positive")));
    }
    let cc = ClenshawCurtis::new(32);
    let near = cc.integrate_panels(&uniform_breaks(0.0, x, x / 32.0), |u| {
        let u = if u == 0.0 { 1e-7 * x } else { u };
        (g(x - u) - g(x + u)) / u
    });
    let tail = cc.integrate_panels(&uniform_breaks(0.0, 1.0, 1.0 / 32.0), |s| {
        if s == 0.0 {
            return 0.0;
        }
        let w = 2.0 * x / s;
        g(w) / (x - w) * 2.0 * x / (s * s)
    });
    Ok(near + tail)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum HalfAxis {
    Negative,
    Positive,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn value(self) -> f64 {
        match self {
            Sign::Plus => 1.0,
            Sign::Minus => -1.0,
        }
    }
}

/// Frequency-support facts about `F(𝔥f ± if)` for `f` supported on `x <= 0`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PropositionReport {
    pub sign: Sign,
    /// Half-line of frequencies carrying (numerically) no mass.
    pub vanishing: HalfAxis,
    /// Mass on the vanishing half-line over total mass.
    pub vanishing_mass_ratio: f64,
    /// Mass on the other half-line over total mass.
    pub surviving_mass_ratio: f64,
    /// `‖F(𝔥f ± if) ∓ 2i f̂‖ / ‖2 f̂‖` over the surviving half-line.
    pub surviving_deviation: f64,
}

pub fn proposition_check(f: &SampledFunction, sign: Sign) -> Result<PropositionReport> {
    f.grid().require(GridKind::FullLine, "proposition_check")?;
    if let Some((x, v)) = f.points().find(|(x, v)| *x > 0.0 && v.norm() != 0.0) {
        return Err(Error::Precondition(format!(
            "f is not supported on x <= 0: f({x}) = {v}"
        )));
    }
    let i = Complex64::new(0.0, 1.0);
    let hf = hilbert(f)?;
    let combo = hf.axpy(i * sign.value(), f)?;
    let spectrum = fourier(&combo)?;
    let fhat = fourier(f)?;
    let kgrid = *spectrum.grid();

    let mut mass = [0.0_f64; 2];
    for (j, v) in spectrum.values().iter().enumerate() {
        mass[usize::from(kgrid.point(j) > 0.0)] += v.norm_sqr();
    }
    let total = mass[0] + mass[1];
    if total == 0.0 {
        return Err(Error::Precondition("f is identically zero".into()));
    }
    let (vanishing, vanish_idx) = if mass[0] <= mass[1] {
        (HalfAxis::Negative, 0)
    } else {
        (HalfAxis::Positive, 1)
    };
    let target = 2.0 * sign.value() * i;
    let (mut dev, mut reference) = (0.0, 0.0);
    for (j, (v, fh)) in spectrum.values().iter().zip(fhat.values()).enumerate() {
        let side = usize::from(kgrid.point(j) > 0.0);
        if side != vanish_idx {
            dev += (v - target * fh).norm_sqr();
            reference += (2.0 * fh).norm_sqr();
        }
    }
    Ok(PropositionReport {
        sign,
        vanishing,
        vanishing_mass_ratio: mass[vanish_idx] / total,
        surviving_mass_ratio: mass[1 - vanish_idx] / total,
        surviving_deviation: if reference > 0.0 { (dev / reference).sqrt() } else { 0.0 },
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::funcgrid::{inner_product, Grid, sample, TestFunction};

    fn family(grid: &Grid) -> Vec<SampledFunction> {
        let mut out = Vec::new();
        for k in 0..3 {
            out.push(sample(&TestFunction::negative_support(k), grid).unwrap());
        }
        for n in 0..4 {
            out.push(sample(&TestFunction::hermite(n), grid).unwrap());
        }
        out.push(
            sample(&TestFunction::GaussianRational { scale: 1.5, center: 0.5 }, grid).unwrap(),
        );
        out
    }

    #[test]
    fn gaussian_transform_closed_form() {
        let grid = Grid::full_line(4096, 16.0).unwrap();
        let f = SampledFunction::from_real_fn(grid, |x| (-0.5 * x * x).exp()).unwrap();
        let fh = fourier(&f).unwrap();
        let err = fh
            .points()
            .map(|(k, v)| (v - (2.0 * PI).sqrt() * (-0.5 * k * k).exp()).norm())
            .fold(0.0, f64::max);
        assert!(err < 1e-8, "{err}");
    }

    #[test]
    fn zero_maps_to_zero() {
        let grid = Grid::full_line(64, 4.0).unwrap();
        let z = SampledFunction::zeros(grid);
        assert!(fourier(&z).unwrap().is_identically_zero());
        assert!(inverse_fourier(&fourier(&z).unwrap()).unwrap().is_identically_zero());
        assert!(hilbert(&z).unwrap().is_identically_zero());
        assert!(pv_convolution_oracle(&z).unwrap().is_identically_zero());
    }

    #[test]
    fn plancherel_on_h3() {
        let grid = Grid::full_line(4096, 16.0).unwrap();
        let f = sample(&TestFunction::hermite(3), &grid).unwrap();
        let fh = fourier(&f).unwrap();
        let ratio = inner_product(&fh, &fh).unwrap().re / inner_product(&f, &f).unwrap().re;
        assert!((ratio / (2.0 * PI) - 1.0).abs() < 1e-8);
    }

    #[test]
    fn round_trips() {
        let grid = Grid::full_line(4096, 24.0).unwrap();
        for desc in [TestFunction::hermite(0), TestFunction::negative_support(0)] {
            let f = sample(&desc, &grid).unwrap();
            let back = inverse_fourier(&fourier(&f).unwrap()).unwrap();
            assert!(f.relative_distance(&back).unwrap() < 1e-10);
        }
    }

    #[test]
    fn half_line_rejected() {
        let f = SampledFunction::zeros(Grid::half_line(64, 4.0).unwrap());
        assert!(matches!(fourier(&f), Err(Error::Incompatible(_))));
        assert!(matches!(hilbert(&f), Err(Error::Incompatible(_))));
        let g = SampledFunction::zeros(Grid::full_line(64, 4.0).unwrap());
        assert!(matches!(inverse_fourier(&g), Err(Error::Incompatible(_))));
    }

    #[test]
    fn hilbert_closed_form_pair() {
        let grid = Grid::full_line(32768, 2048.0).unwrap();
        let f = SampledFunction::from_real_fn(grid, |x| 1.0 / (1.0 + x * x)).unwrap();
        let hf = hilbert(&f).unwrap();
        let idx = grid.node_index(1.0).unwrap();
        assert!((hf.values()[idx].norm() - 0.5).abs() < 1e-6);
        for (x, v) in hf.points().filter(|(x, _)| x.abs() <= 8.0) {
            assert!((v - Complex64::new(-x / (1.0 + x * x), 0.0)).norm() < 1e-6, "x = {x}");
        }
    }

    #[test]
    fn oracle_closed_form_pair() {
        let grid = Grid::full_line(16384, 1024.0).unwrap();
        let f = SampledFunction::from_real_fn(grid, |x| 1.0 / (1.0 + x * x)).unwrap();
        let hf = pv_convolution_oracle(&f).unwrap();
        for (x, v) in hf.points().filter(|(x, _)| x.abs() <= 8.0) {
            assert!((v - Complex64::new(-x / (1.0 + x * x), 0.0)).norm() < 1e-5, "x = {x}");
        }
    }

    #[test]
    fn oracle_parity() {
        let grid = Grid::full_line(1024, 16.0).unwrap();
        let f = sample(&TestFunction::hermite(2), &grid).unwrap();
        let hf = pv_convolution_oracle(&f).unwrap();
        let v = hf.values();
        // node i sits at -x_{n-i}; node 0 (x = -L) has no mirror
        let defect = (1..1024).map(|i| (v[i] + v[1024 - i]).norm()).fold(0.0, f64::max);
        assert!(defect < 1e-10, "{defect}");
    }

    #[test]
    fn multiplier_matches_oracle_and_squares_to_minus_one() {
        let grid = Grid::full_line(4096, 24.0).unwrap();
        for f in family(&grid) {
            let hf = hilbert(&f).unwrap();
            let oracle = pv_convolution_oracle(&f).unwrap();
            assert!(hf.sub(&oracle).unwrap().norm() / f.norm() < 1e-5);
            let hhf = hilbert(&hf).unwrap();
            assert!(hhf.add(&f).unwrap().norm() / f.norm() < 1e-8);
            let imag = hf.values().iter().map(|v| v.im * v.im).sum::<f64>().sqrt();
            assert!(imag * grid.spacing().sqrt() < 1e-10);
        }
    }

    #[test]
    fn proposition_examples() {
        let grid = Grid::full_line(4096, 24.0).unwrap();
        let f0 = sample(&TestFunction::negative_support(0), &grid).unwrap();
        let plus = proposition_check(&f0, Sign::Plus).unwrap();
        let minus = proposition_check(&f0, Sign::Minus).unwrap();
        assert!(plus.vanishing_mass_ratio < 1e-6);
        assert!(plus.surviving_deviation < 1e-6);
        assert!(minus.vanishing_mass_ratio < 1e-6);
        assert_ne!(plus.vanishing, minus.vanishing);
        assert_eq!(plus.vanishing, HalfAxis::Negative);
    }

    #[test]
    fn proposition_rejects_positive_support() {
        let grid = Grid::full_line(256, 8.0).unwrap();
        let f = sample(&TestFunction::hermite(0), &grid).unwrap();
        assert!(matches!(
            proposition_check(&f, Sign::Plus),
            Err(Error::Precondition(_))
        ));
    }

    #[test]
    fn half_line_pv_matches_closed_form() {
        // PV ∫_0^∞ 1/((1+w^2)(x-w)) dw = (π x/2 + ln x)/(1 + x^2)
        for x in [0.3, 1.0, 2.5] {
            let got = pv_half_line(|w| 1.0 / (1.0 + w * w), x).unwrap();
            let exact = (PI * x / 2.0 + x.ln()) / (1.0 + x * x);
            assert!((got - exact).abs() < 1e-10, "x={x}: {got} vs {exact}");
        }
        assert!(pv_half_line(|w| w, 0.0).is_err());
    }
}
