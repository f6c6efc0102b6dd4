//! Hardy classes on the sampled line.
//!
//! A [`HardyBoundary`] holds boundary values on a full-line grid together with
//! the claimed class. Upper-class functions (`H₊²`, analytic for `Im z > 0`)
//! have spectrum on `k > 0`; lower-class functions on `k < 0`. Membership is
//! certified by the relative Fourier mass on the forbidden half-line.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::funcgrid::{
    evaluate_at, inner_product, neumaier_sum, neumaier_sum_complex, sample, Grid, GridKind,
    SampledFunction, TestFunction,
};
use crate::transforms::{fourier, hilbert, inverse_fourier};

/// Forbidden-mass limit for the membership certificate.
pub const CERTIFICATE_LIMIT: f64 = 1e-6;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Half {
    Upper,
    Lower,
}

impl Half {
    /// Whether frequency `k` is allowed for this class.
    pub fn allows(self, k: f64) -> bool {
        match self {
            Half::Upper => k > 0.0,
            Half::Lower => k < 0.0,
        }
    }

    pub fn opposite(self) -> Half {
        match self {
            Half::Upper => Half::Lower,
            Half::Lower => Half::Upper,
        }
    }

    fn sign(self) -> f64 {
        match self {
            Half::Upper => 1.0,
            Half::Lower => -1.0,
        }
    }
}

/// Boundary values of a Hardy-class function.
#[derive(Debug, Clone, PartialEq)]
pub struct HardyBoundary {
    boundary: SampledFunction,
    half: Half,
    spectrum: SampledFunction,
    forbidden_mass: f64,
}

fn forbidden_mass_ratio(spectrum: &SampledFunction, half: Half) -> f64 {
    let (mut bad, mut total) = (0.0, 0.0);
    for (k, v) in spectrum.points() {
        let m = v.norm_sqr();
        total += m;
        if !half.allows(k) {
            bad += m;
        }
    }
    if total == 0.0 {
        0.0
    } else {
        bad / total
    }
}

impl HardyBoundary {
    /// Wraps boundary values after checking the membership certificate.
    pub fn new(boundary: SampledFunction, half: Half) -> Result<Self> {
        Self::with_limit(boundary, half, CERTIFICATE_LIMIT)
    }

    /// As [`HardyBoundary::new`] with a caller-chosen forbidden-mass limit, for
    /// slowly decaying closed forms whose truncation leaks more than the default.
    pub fn with_limit(boundary: SampledFunction, half: Half, limit: f64) -> Result<Self> {
        let b = Self::unchecked(boundary, half)?;
        if !(b.forbidden_mass < limit) {
            return Err(Error::NumericalQuality {
                what: format!("{half:?} class forbidden mass"),
                measured: b.forbidden_mass,
                limit,
            });
        }
        Ok(b)
    }

    pub(crate) fn unchecked(boundary: SampledFunction, half: Half) -> Result<Self> {
        boundary.grid().require(GridKind::FullLine, "Hardy boundary")?;
        let spectrum = fourier(&boundary)?;
        let forbidden_mass = forbidden_mass_ratio(&spectrum, half);
        Ok(Self {
            boundary,
            half,
            spectrum,
            forbidden_mass,
        })
    }

    pub fn from_fn(grid: Grid, half: Half, f: impl Fn(f64) -> Complex64) -> Result<Self> {
        Self::new(SampledFunction::from_fn(grid, f)?, half)
    }

    pub fn boundary(&self) -> &SampledFunction {
        &self.boundary
    }

    pub fn half(&self) -> Half {
        self.half
    }

    pub fn grid(&self) -> &Grid {
        self.boundary.grid()
    }

    pub fn spectrum(&self) -> &SampledFunction {
        &self.spectrum
    }

    /// Relative Fourier mass on the forbidden half-line.
    pub fn forbidden_mass(&self) -> f64 {
        self.forbidden_mass
    }

    /// Boundary values on the half-line grid `(0, L)`.
    pub fn restrict_positive(&self) -> Result<SampledFunction> {
        restrict_to_positive_axis(&self.boundary)
    }

    pub fn value_at(&self, x: f64) -> Result<Complex64> {
        evaluate_at(&self.boundary, x)
    }
}

/// Samples a full-line function onto the half-line grid by four-point
/// Lagrange interpolation whose stencil is clamped to nodes with `x >= 0`, so
/// the result depends only on values on the closed positive axis.
pub fn restrict_to_positive_axis(f: &SampledFunction) -> Result<SampledFunction> {
    let grid = *f.grid();
    grid.require(GridKind::FullLine, "restriction to the positive axis")?;
    let half = grid.positive_half()?;
    let n = grid.len();
    let m0 = n / 2;
    let v = f.values();
    let values = (0..half.len())
        .map(|i| {
            let start = (m0 + i).saturating_sub(1).clamp(m0, n - 4);
            let t = (m0 + i) as f64 + 0.5 - start as f64;
            let mut acc = Complex64::new(0.0, 0.0);
            for j in 0..4 {
                let mut w = 1.0;
                for k in 0..4 {
                    if k != j {
                        w *= (t - k as f64) / (j as f64 - k as f64);
                    }
                }
                acc += v[start + j] * w;
            }
            acc
        })
        .collect();
    SampledFunction::new(half, values)
}

/// Frequency-support projection onto the upper or lower class.
pub fn riesz_project(f: &SampledFunction, half: Half) -> Result<HardyBoundary> {
    f.grid().require(GridKind::FullLine, "riesz_project")?;
    let fhat = fourier(f)?;
    let zero = Complex64::new(0.0, 0.0);
    let kept = fhat.modulate(|k| if half.allows(k) { Complex64::new(1.0, 0.0) } else { zero })?;
    HardyBoundary::new(inverse_fourier(&kept)?, half)
}

/// Value of the analytic continuation `G(z)` in the class half-plane.
///
/// Away from the axis (`|Im z| >= 4h`) this is the Poisson integral
/// `(|y|/π) ∫ b(E) / ((E - x)² + y²) dE`, which coincides with the Cauchy
/// integral `(±1/2πi) ∫ b(E)/(E - z) dE` on class members. Closer to the axis
/// the Lorentzian is under-resolved and the spectral continuation
/// `Σ b̂(k) e^{ikz} dk/2π` over the class support is used instead.
pub fn halfplane_eval(b: &HardyBoundary, z: Complex64) -> Result<Complex64> {
    if !(z.re.is_finite() && z.im.is_finite()) {
        return Err(Error::Domain(format!("z = {z} is not finite")));
    }
    if z.im * b.half.sign() <= 0.0 {
        return Err(Error::Domain(format!(
            "z = {z} is not in the analytic half-plane of a {:?} class function",
            b.half
        )));
    }
    let grid = b.grid();
    if z.re.abs() > grid.span() {
        return Err(Error::Domain(format!("Re z = {} is outside the grid span", z.re)));
    }
    let (x, y) = (z.re, z.im.abs());
    if y >= 4.0 * grid.spacing() {
        let h = grid.spacing();
        let sum = neumaier_sum_complex(
            b.boundary
                .points()
                .map(|(e, v)| v * (h / ((e - x) * (e - x) + y * y))),
        );
        Ok(sum * (y / PI))
    } else {
        let dk = b.spectrum.grid().spacing();
        let i = Complex64::new(0.0, 1.0);
        let sum = neumaier_sum_complex(
            b.spectrum
                .points()
                .filter(|(k, _)| b.half.allows(*k))
                .map(|(k, v)| v * (i * k * z).exp()),
        );
        Ok(sum * (dk / (2.0 * PI)))
    }
}

/// `M(α) = ∫ |G(E + iα)|² dE`, from the damped spectrum.
pub fn line_norm(b: &HardyBoundary, alpha: f64) -> Result<f64> {
    if !alpha.is_finite() || alpha * b.half.sign() < 0.0 {
        return Err(Error::Domain(format!(
            "alpha = {alpha} is on the non-analytic side of a {:?} class function",
            b.half
        )));
    }
    let dk = b.spectrum.grid().spacing();
    let sum = neumaier_sum(
        b.spectrum
            .points()
            .filter(|(k, _)| b.half.allows(*k))
            .map(|(k, v)| (-2.0 * alpha * k).exp() * v.norm_sqr()),
    );
    Ok(sum * dk / (2.0 * PI))
}

/// `G(E + iα)` sampled along the whole grid, by spectral damping.
pub fn shifted_line(b: &HardyBoundary, alpha: f64) -> Result<SampledFunction> {
    if !alpha.is_finite() || alpha * b.half.sign() < 0.0 {
        return Err(Error::Domain(format!(
            "alpha = {alpha} is on the non-analytic side of a {:?} class function",
            b.half
        )));
    }
    let half = b.half;
    let damped = b.spectrum.modulate(|k| {
        if half.allows(k) {
            Complex64::new((-alpha * k).exp(), 0.0)
        } else {
            Complex64::new(0.0, 0.0)
        }
    })?;
    inverse_fourier(&damped)
}

/// A positive-axis function with two distinct Hardy extensions, built from a
/// source `f` supported on `x <= 0` as `𝔥f ± if`.
#[derive(Debug, Clone, PartialEq)]
pub struct DeltaElement {
    source: SampledFunction,
    g_plus: HardyBoundary,
    g_minus: HardyBoundary,
    restriction: SampledFunction,
}

impl DeltaElement {
    pub fn source(&self) -> &SampledFunction {
        &self.source
    }

    pub fn g_plus(&self) -> &HardyBoundary {
        &self.g_plus
    }

    pub fn g_minus(&self) -> &HardyBoundary {
        &self.g_minus
    }

    pub fn restriction(&self) -> &SampledFunction {
        &self.restriction
    }

    /// Largest `|g₊ - g₋|` over grid nodes with `x >= 0`.
    pub fn positive_axis_disagreement(&self) -> f64 {
        self.g_plus
            .boundary()
            .points()
            .zip(self.g_minus.boundary().values())
            .filter(|((x, _), _)| *x >= 0.0)
            .map(|((_, p), m)| (p - m).norm())
            .fold(0.0, f64::max)
    }

    /// L² norm of `g₊ - g₋` over `x < 0`.
    pub fn negative_axis_gap(&self) -> f64 {
        let h = self.source.grid().spacing();
        let s = neumaier_sum(
            self.g_plus
                .boundary()
                .points()
                .zip(self.g_minus.boundary().values())
                .filter(|((x, _), _)| *x < 0.0)
                .map(|((_, p), m)| (p - m).norm_sqr()),
        );
        (s * h).sqrt()
    }

    /// Diagnostic seminorms `sup|f|`, `sup|f'|`, `sup|f''|` of the source on `x <= 0`.
    pub fn seminorms(&self) -> [f64; 3] {
        let v = self.source.values();
        let h = self.source.grid().spacing();
        let xs = self.source.grid().points();
        let mut out = [0.0_f64; 3];
        for i in 0..v.len() {
            if xs[i] > 0.0 {
                continue;
            }
            out[0] = out[0].max(v[i].norm());
            if i > 0 && i + 1 < v.len() {
                out[1] = out[1].max(((v[i + 1] - v[i - 1]) / (2.0 * h)).norm());
                out[2] = out[2].max(((v[i + 1] - 2.0 * v[i] + v[i - 1]) / (h * h)).norm());
            }
        }
        out
    }
}

pub fn build_delta_element(f: &SampledFunction) -> Result<DeltaElement> {
    f.grid().require(GridKind::FullLine, "build_delta_element")?;
    if let Some((x, v)) = f.points().find(|(x, v)| *x > 0.0 && v.norm() != 0.0) {
        return Err(Error::Precondition(format!(
            "source is not supported on x <= 0: f({x}) = {v}"
        )));
    }
    if f.is_identically_zero() {
        return Err(Error::NumericalQuality {
            what: "Delta element source norm".into(),
            measured: 0.0,
            limit: 0.0,
        });
    }
    let i = Complex64::new(0.0, 1.0);
    let hf = hilbert(f)?;
    let g_plus = HardyBoundary::unchecked(hf.axpy(i, f)?, Half::Upper)?;
    let g_minus = HardyBoundary::unchecked(hf.axpy(-i, f)?, Half::Lower)?;
    let worst = g_plus.forbidden_mass.max(g_minus.forbidden_mass);
    if worst >= CERTIFICATE_LIMIT {
        return Err(Error::NumericalQuality {
            what: format!(
                "Delta element extensions (upper {:.3e}, lower {:.3e})",
                g_plus.forbidden_mass, g_minus.forbidden_mass
            ),
            measured: worst,
            limit: CERTIFICATE_LIMIT,
        });
    }
    let restriction = restrict_to_positive_axis(g_plus.boundary())?;
    if restriction.norm() == 0.0 {
        return Err(Error::NumericalQuality {
            what: "Delta element restriction norm".into(),
            measured: 0.0,
            limit: 0.0,
        });
    }
    let element = DeltaElement {
        source: f.clone(),
        g_plus,
        g_minus,
        restriction,
    };
    let disagreement = element.positive_axis_disagreement();
    let scale = element.g_plus.boundary().sup_norm();
    if disagreement > 1e-10 * scale {
        return Err(Error::NumericalQuality {
            what: "Delta element extension agreement on x >= 0".into(),
            measured: disagreement,
            limit: 1e-10 * scale,
        });
    }
    Ok(element)
}

/// Outcome of the damped-line time-evolution probe.
#[derive(Debug, Clone, PartialEq)]
pub struct BreakReport {
    pub t: f64,
    pub alphas: Vec<f64>,
    /// `N_t(-α) / N_0(-α)` for the lower extension.
    pub ratios: Vec<f64>,
    /// `e^{2tα}` for each `α`.
    pub expected: Vec<f64>,
    pub max_relative_deviation: f64,
    /// All ratios within 1% of `e^{2tα}`.
    pub blowup_confirmed: bool,
    /// `e^{-2tα} M₊(α)` for the upper extension.
    pub upper_damped: Vec<f64>,
    /// `M₊(min α)`.
    pub upper_reference: f64,
    pub bounded: bool,
}

pub fn time_evolution_break_check(d: &DeltaElement, t: f64, alphas: &[f64]) -> Result<BreakReport> {
    if !(t.is_finite() && t > 0.0) {
        return Err(Error::param("t", format!("{t} must be positive")));
    }
    if alphas.is_empty() {
        return Err(Error::param("alphas", "empty ladder"));
    }
    if let Some(a) = alphas.iter().find(|a| !(a.is_finite() && **a > 0.0)) {
        return Err(Error::param("alphas", format!("{a} must be positive")));
    }
    let i = Complex64::new(0.0, 1.0);
    let mut ratios = Vec::with_capacity(alphas.len());
    let mut expected = Vec::with_capacity(alphas.len());
    let mut upper_damped = Vec::with_capacity(alphas.len());
    for &alpha in alphas {
        let g = shifted_line(&d.g_minus, -alpha)?;
        let evolved = g.modulate(|e| (i * t * Complex64::new(e, -alpha)).exp())?;
        let n0 = inner_product(&g, &g)?.re;
        let nt = inner_product(&evolved, &evolved)?.re;
        ratios.push(nt / n0);
        expected.push((2.0 * t * alpha).exp());
        upper_damped.push((-2.0 * t * alpha).exp() * line_norm(&d.g_plus, alpha)?);
    }
    let max_relative_deviation = ratios
        .iter()
        .zip(&expected)
        .map(|(r, e)| (r / e - 1.0).abs())
        .fold(0.0, f64::max);
    let alpha_min = alphas.iter().copied().fold(f64::INFINITY, f64::min);
    let upper_reference = line_norm(&d.g_plus, alpha_min)?;
    let sup = upper_damped.iter().copied().fold(0.0, f64::max);
    Ok(BreakReport {
        t,
        alphas: alphas.to_vec(),
        ratios,
        expected,
        max_relative_deviation,
        blowup_confirmed: max_relative_deviation < 0.01,
        upper_damped,
        upper_reference,
        bounded: sup <= upper_reference * (1.0 + 1e-6),
    })
}

/// Scales of the fixed Δ dictionary; each contributes orders `k = 0..8`.
pub const DICTIONARY_SCALES: [f64; 4] = [1.0, 0.5, 2.0, 4.0];

/// Restrictions of the first `size` dictionary elements, ordered by scale then order.
pub fn delta_dictionary(grid: &Grid, size: usize) -> Result<Vec<SampledFunction>> {
    if size > 8 * DICTIONARY_SCALES.len() {
        return Err(Error::param("size", format!("dictionary has at most 32 elements, got {size}")));
    }
    let mut out = Vec::with_capacity(size);
    'outer: for &scale in &DICTIONARY_SCALES {
        for k in 0..8 {
            if out.len() == size {
                break 'outer;
            }
            let f = sample(&TestFunction::NegativeSupport { k, scale, center: 0.0 }, grid)?;
            out.push(build_delta_element(&f)?.restriction);
        }
    }
    Ok(out)
}

/// Relative least-squares residual of `target` in the span of the first
/// `size` dictionary elements, for each entry of `sizes`.
pub fn delta_approximation_errors(
    grid: &Grid,
    target: &SampledFunction,
    sizes: &[usize],
) -> Result<Vec<f64>> {
    target.grid().require(GridKind::HalfLine, "delta_approximation_errors")?;
    let largest = sizes.iter().copied().max().unwrap_or(0);
    let dict = delta_dictionary(grid, largest)?;
    if let Some(d) = dict.first() {
        target.check_same_grid(d)?;
    }
    let tnorm = target.norm();
    if tnorm == 0.0 {
        return Err(Error::Precondition("target is identically zero".into()));
    }
    // modified Gram-Schmidt; the residual after the first m vectors is kept
    let mut basis: Vec<SampledFunction> = Vec::new();
    let mut residual = target.clone();
    let mut errors_by_count = vec![1.0; largest + 1];
    for (m, v) in dict.iter().enumerate() {
        let mut w = v.clone();
        for q in &basis {
            let c = inner_product(q, &w)?;
            w = w.axpy(-c, q)?;
        }
        let wn = inner_product(&w, &w)?.re.sqrt();
        if wn > 1e-12 * inner_product(v, v)?.re.sqrt() {
            let q = w.scale(Complex64::new(1.0 / wn, 0.0))?;
            let c = inner_product(&q, &residual)?;
            residual = residual.axpy(-c, &q)?;
            basis.push(q);
        }
        errors_by_count[m + 1] = residual.norm() / tnorm;
    }
    Ok(sizes.iter().map(|&s| errors_by_count[s]).collect())
}
