//! Uniform grids, sampled complex functions and the test-function families
//! everything else is built on.
//!
//! Three grid layouts exist. A full-line grid covers `[-L, L)` with nodes
//! `-L + i*h`. A half-line grid covers `[0, L]` with midpoint nodes
//! `(i + 1/2)*h`, so no sample ever sits on the threshold `E = 0`. A frequency
//! grid is the dual of a full-line grid: nodes `-K + (i + 1/2)*dk`, symmetric
//! about zero and never touching `k = 0`.

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Smallest admissible point count.
pub const MIN_POINTS: usize = 16;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum GridKind {
    FullLine,
    HalfLine,
    Frequency,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Grid {
    kind: GridKind,
    n: usize,
    span: f64,
}

/// Builds a grid, rejecting point counts that are not powers of two (or are
/// below [`MIN_POINTS`]) and non-positive spans.
pub fn make_grid(kind: GridKind, n: usize, span: f64) -> Result<Grid> {
    Grid::new(kind, n, span)
}

impl Grid {
    pub fn new(kind: GridKind, n: usize, span: f64) -> Result<Self> {
        if n < MIN_POINTS || !n.is_power_of_two() {
            return Err(Error::param(
                "n",
                format!("{n} is not a power of two >= {MIN_POINTS}"),
            ));
        }
        if !(span.is_finite() && span > 0.0) {
            return Err(Error::param("span", format!("{span} is not a positive finite length")));
        }
        Ok(Self { kind, n, span })
    }

    pub fn full_line(n: usize, span: f64) -> Result<Self> {
        Self::new(GridKind::FullLine, n, span)
    }

    pub fn half_line(n: usize, span: f64) -> Result<Self> {
        Self::new(GridKind::HalfLine, n, span)
    }

    pub fn kind(&self) -> GridKind {
        self.kind
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn span(&self) -> f64 {
        self.span
    }

    /// Total covered length.
    pub fn length(&self) -> f64 {
        match self.kind {
            GridKind::FullLine | GridKind::Frequency => 2.0 * self.span,
            GridKind::HalfLine => self.span,
        }
    }

    pub fn spacing(&self) -> f64 {
        self.length() / self.n as f64
    }

    pub fn point(&self, i: usize) -> f64 {
        let h = self.spacing();
        match self.kind {
            GridKind::FullLine => -self.span + i as f64 * h,
            GridKind::HalfLine => (i as f64 + 0.5) * h,
            GridKind::Frequency => -self.span + (i as f64 + 0.5) * h,
        }
    }

    pub fn points(&self) -> Vec<f64> {
        (0..self.n).map(|i| self.point(i)).collect()
    }

    /// Closed interval on which off-node evaluation is allowed.
    pub fn bounds(&self) -> (f64, f64) {
        match self.kind {
            GridKind::FullLine | GridKind::Frequency => (-self.span, self.span),
            GridKind::HalfLine => (0.0, self.span),
        }
    }

    pub fn contains(&self, x: f64) -> bool {
        let (lo, hi) = self.bounds();
        x.is_finite() && x >= lo && x <= hi
    }

    /// Index of the node at `x`, if `x` sits on one (to 1e-9 of a spacing).
    pub fn node_index(&self, x: f64) -> Option<usize> {
        if !self.contains(x) {
            return None;
        }
        let offset = match self.kind {
            GridKind::FullLine => 0.0,
            GridKind::HalfLine | GridKind::Frequency => 0.5,
        };
        let (lo, _) = self.bounds();
        let pos = (x - lo) / self.spacing() - offset;
        let i = pos.round();
        if (pos - i).abs() <= 1e-9 && i >= 0.0 && (i as usize) < self.n {
            Some(i as usize)
        } else {
            None
        }
    }

    /// Fourier-dual grid: full line <-> frequency, with `dk = 2*pi/(n*h)`.
    pub fn dual(&self) -> Result<Grid> {
        let other = match self.kind {
            GridKind::FullLine => GridKind::Frequency,
            GridKind::Frequency => GridKind::FullLine,
            GridKind::HalfLine => {
                return Err(Error::Incompatible(
                    "a half-line grid has no Fourier dual".into(),
                ))
            }
        };
        Grid::new(other, self.n, std::f64::consts::PI / self.spacing())
    }

    /// The positive half of a full-line grid: same spacing, `n/2` midpoint nodes.
    pub fn positive_half(&self) -> Result<Grid> {
        if self.kind != GridKind::FullLine {
            return Err(Error::Incompatible(
                "positive_half needs a full-line grid".into(),
            ));
        }
        Grid::half_line(self.n / 2, self.span)
    }

    pub(crate) fn require(&self, kind: GridKind, what: &str) -> Result<()> {
        if self.kind == kind {
            Ok(())
        } else {
            Err(Error::Incompatible(format!(
                "{what} needs a {kind:?} grid, got {:?}",
                self.kind
            )))
        }
    }
}

/// Complex samples on a grid. Values are always finite.
#[derive(Debug, Clone, PartialEq)]
pub struct SampledFunction {
    grid: Grid,
    values: Vec<Complex64>,
}

impl SampledFunction {
    pub fn new(grid: Grid, values: Vec<Complex64>) -> Result<Self> {
        if values.len() != grid.len() {
            return Err(Error::Incompatible(format!(
                "{} values for a grid of {} points",
                values.len(),
                grid.len()
            )));
        }
        if let Some(i) = values.iter().position(|v| !(v.re.is_finite() && v.im.is_finite())) {
            return Err(Error::Domain(format!(
                "non-finite sample at node {i} (x = {})",
                grid.point(i)
            )));
        }
        Ok(Self { grid, values })
    }

    pub fn zeros(grid: Grid) -> Self {
        Self {
            grid,
            values: vec![Complex64::new(0.0, 0.0); grid.len()],
        }
    }

    pub fn from_fn(grid: Grid, f: impl Fn(f64) -> Complex64) -> Result<Self> {
        let values = grid.points().into_iter().map(f).collect();
        Self::new(grid, values)
    }

    pub fn from_real_fn(grid: Grid, f: impl Fn(f64) -> f64) -> Result<Self> {
        Self::from_fn(grid, |x| Complex64::new(f(x), 0.0))
    }

    pub fn grid(&self) -> &Grid {
        &self.grid
    }

    pub fn values(&self) -> &[Complex64] {
        &self.values
    }

    pub fn into_values(self) -> Vec<Complex64> {
        self.values
    }

    pub fn points(&self) -> impl Iterator<Item = (f64, Complex64)> + '_ {
        self.values
            .iter()
            .enumerate()
            .map(|(i, v)| (self.grid.point(i), *v))
    }

    pub fn scale(&self, alpha: Complex64) -> Result<Self> {
        Self::new(self.grid, self.values.iter().map(|v| alpha * v).collect())
    }

    /// `self + alpha * other`.
    pub fn axpy(&self, alpha: Complex64, other: &SampledFunction) -> Result<Self> {
        self.check_same_grid(other)?;
        Self::new(
            self.grid,
            self.values
                .iter()
                .zip(&other.values)
                .map(|(a, b)| a + alpha * b)
                .collect(),
        )
    }

    pub fn add(&self, other: &SampledFunction) -> Result<Self> {
        self.axpy(Complex64::new(1.0, 0.0), other)
    }

    pub fn sub(&self, other: &SampledFunction) -> Result<Self> {
        self.axpy(Complex64::new(-1.0, 0.0), other)
    }

    /// Pointwise product with a function of the grid coordinate.
    pub fn modulate(&self, factor: impl Fn(f64) -> Complex64) -> Result<Self> {
        Self::new(
            self.grid,
            self.points().map(|(x, v)| factor(x) * v).collect(),
        )
    }

    pub fn norm(&self) -> f64 {
        let h = self.grid.spacing();
        (neumaier_sum(self.values.iter().map(|v| v.norm_sqr())) * h).sqrt()
    }

    pub fn sup_norm(&self) -> f64 {
        self.values.iter().map(|v| v.norm()).fold(0.0, f64::max)
    }

    pub fn is_identically_zero(&self) -> bool {
        self.values.iter().all(|v| v.re == 0.0 && v.im == 0.0)
    }

    /// L2 norm of `self - other` over `self.norm()` (or absolute if `self` is 0).
    pub fn relative_distance(&self, other: &SampledFunction) -> Result<f64> {
        let d = self.sub(other)?.norm();
        let n = self.norm();
        Ok(if n > 0.0 { d / n } else { d })
    }

    pub(crate) fn check_same_grid(&self, other: &SampledFunction) -> Result<()> {
        if self.grid == other.grid {
            Ok(())
        } else {
            Err(Error::Incompatible(format!(
                "grid mismatch: {:?} vs {:?}",
                self.grid, other.grid
            )))
        }
    }
}

/// Neumaier-compensated sum in iteration order.
pub(crate) fn neumaier_sum(values: impl IntoIterator<Item = f64>) -> f64 {
    let mut sum = 0.0_f64;
    let mut c = 0.0_f64;
    for v in values {
        let t = sum + v;
        if sum.abs() >= v.abs() {
            c += (sum - t) + v;
        } else {
            c += (v - t) + sum;
        }
        sum = t;
    }
    sum + c
}

pub(crate) fn neumaier_sum_complex(values: impl IntoIterator<Item = Complex64>) -> Complex64 {
    let values: Vec<Complex64> = values.into_iter().collect();
    Complex64::new(
        neumaier_sum(values.iter().map(|v| v.re)),
        neumaier_sum(values.iter().map(|v| v.im)),
    )
}

/// `(f, g) = sum conj(f_i) g_i h`, conjugate-linear in `f`.
///
/// Uniform weights are the trapezoid rule on the periodic full-line grid and
/// the midpoint rule on half-line grids.
pub fn inner_product(f: &SampledFunction, g: &SampledFunction) -> Result<Complex64> {
    f.check_same_grid(g)?;
    let h = f.grid.spacing();
    let s = neumaier_sum_complex(f.values.iter().zip(&g.values).map(|(a, b)| a.conj() * b));
    Ok(s * h)
}

/// Cubic Lagrange interpolation through the four nearest nodes.
pub fn evaluate_at(f: &SampledFunction, x: f64) -> Result<Complex64> {
    let grid = f.grid;
    if !grid.contains(x) {
        let (lo, hi) = grid.bounds();
        return Err(Error::Domain(format!("x = {x} outside [{lo}, {hi}]")));
    }
    if let Some(i) = grid.node_index(x) {
        return Ok(f.values[i]);
    }
    let h = grid.spacing();
    let x0 = grid.point(0);
    let pos = (x - x0) / h;
    let left = pos.floor() as isize;
    let start = (left - 1).clamp(0, grid.len() as isize - 4) as usize;
    let nodes: [f64; 4] = std::array::from_fn(|j| grid.point(start + j));
    let mut acc = Complex64::new(0.0, 0.0);
    for j in 0..4 {
        let mut w = 1.0;
        for m in 0..4 {
            if m != j {
                w *= (x - nodes[m]) / (nodes[j] - nodes[m]);
            }
        }
        acc += f.values[start + j] * w;
    }
    Ok(acc)
}

/// Parametrized families of smooth, square-integrable test functions.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum TestFunction {
    /// `u^k exp(u + 1/u)` for `u = (x - center)/scale < 0`, zero otherwise.
    /// Requires `center <= 0` so the support stays inside `x <= 0`.
    NegativeSupport { k: u32, scale: f64, center: f64 },
    /// L2-normalized Hermite function of order `n`.
    Hermite { n: u32, scale: f64, center: f64 },
    /// `exp(-u^2/2) / (1 + u^2)`.
    GaussianRational { scale: f64, center: f64 },
}

pub const MAX_FAMILY_INDEX: u32 = 8;

impl TestFunction {
    pub fn negative_support(k: u32) -> Self {
        TestFunction::NegativeSupport {
            k,
            scale: 1.0,
            center: 0.0,
        }
    }

    pub fn hermite(n: u32) -> Self {
        TestFunction::Hermite {
            n,
            scale: 1.0,
            center: 0.0,
        }
    }

    pub fn validate(&self) -> Result<()> {
        let (index, scale, center) = match *self {
            TestFunction::NegativeSupport { k, scale, center } => {
                if !(center <= 0.0) {
                    return Err(Error::param("center", "negative-support family needs center <= 0"));
                }
                (k, scale, center)
            }
            TestFunction::Hermite { n, scale, center } => (n, scale, center),
            TestFunction::GaussianRational { scale, center } => (0, scale, center),
        };
        if index > MAX_FAMILY_INDEX {
            return Err(Error::param("k", format!("index {index} exceeds {MAX_FAMILY_INDEX}")));
        }
        if !(scale.is_finite() && scale > 0.0) {
            return Err(Error::param("scale", format!("{scale} is not positive")));
        }
        if !center.is_finite() {
            return Err(Error::param("center", "not finite"));
        }
        Ok(())
    }

    pub fn eval(&self, x: f64) -> f64 {
        match *self {
            TestFunction::NegativeSupport { k, scale, center } => {
                let u = (x - center) / scale;
                if u < 0.0 {
                    u.powi(k as i32) * (u + 1.0 / u).exp()
                } else {
                    0.0
                }
            }
            TestFunction::Hermite { n, scale, center } => {
                hermite_function(n, (x - center) / scale) / scale.sqrt()
            }
            TestFunction::GaussianRational { scale, center } => {
                let u = (x - center) / scale;
                (-0.5 * u * u).exp() / (1.0 + u * u)
            }
        }
    }
}

/// Normalized Hermite function via the stable three-term recurrence.
pub(crate) fn hermite_function(n: u32, u: f64) -> f64 {
    let psi0 = std::f64::consts::PI.powf(-0.25) * (-0.5 * u * u).exp();
    if n == 0 {
        return psi0;
    }
    let mut prev = psi0;
    let mut cur = std::f64::consts::SQRT_2 * u * psi0;
    for m in 1..n {
        let m = m as f64;
        let next = (2.0 / (m + 1.0)).sqrt() * u * cur - (m / (m + 1.0)).sqrt() * prev;
        prev = cur;
        cur = next;
    }
    cur
}

pub fn sample(desc: &TestFunction, grid: &Grid) -> Result<SampledFunction> {
    desc.validate()?;
    SampledFunction::from_real_fn(*grid, |x| desc.eval(x))
}
