//! Fixed-order Clenshaw–Curtis panels.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::funcgrid::{neumaier_sum, neumaier_sum_complex};

/// Clenshaw–Curtis rule of even degree `n` on `[-1, 1]` (`n + 1` nodes).
#[derive(Debug, Clone)]
pub struct ClenshawCurtis {
    nodes: Vec<f64>,
    weights: Vec<f64>,
}

impl ClenshawCurtis {
    /// Weights from the explicit cosine-sum formula.
    pub fn new(n: usize) -> Self {
        assert!(n >= 2 && n % 2 == 0, "Clenshaw-Curtis degree must be even and >= 2");
        let nf = n as f64;
        let nodes: Vec<f64> = (0..=n).map(|j| (PI * j as f64 / nf).cos()).collect();
        let weights = (0..=n)
            .map(|j| {
                let theta = PI * j as f64 / nf;
                let mut s = 1.0;
                for k in 1..=n / 2 {
                    let b = if 2 * k == n { 1.0 } else { 2.0 };
                    s -= b * (2.0 * k as f64 * theta).cos() / (4.0 * (k * k) as f64 - 1.0);
                }
                let c = if j == 0 || j == n { 1.0 } else { 2.0 };
                c * s / nf
            })
            .collect();
        Self { nodes, weights }
    }

    pub fn nodes(&self) -> &[f64] {
        &self.nodes
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn integrate(&self, a: f64, b: f64, f: impl Fn(f64) -> f64) -> f64 {
        let mid = 0.5 * (a + b);
        let half = 0.5 * (b - a);
        half * neumaier_sum(
            self.nodes
                .iter()
                .zip(&self.weights)
                .map(|(x, w)| w * f(mid + half * x)),
        )
    }

    pub fn integrate_complex(&self, a: f64, b: f64, f: impl Fn(f64) -> Complex64) -> Complex64 {
        let mid = 0.5 * (a + b);
        let half = 0.5 * (b - a);
        neumaier_sum_complex(
            self.nodes
                .iter()
                .zip(&self.weights)
                .map(|(x, w)| *w * f(mid + half * x)),
        ) * half
    }

    /// Sum over consecutive panels `[b_i, b_{i+1}]`, in order.
    pub fn integrate_panels(&self, breaks: &[f64], f: impl Fn(f64) -> f64) -> f64 {
        neumaier_sum(breaks.windows(2).map(|w| self.integrate(w[0], w[1], &f)))
    }

    pub fn integrate_panels_complex(
        &self,
        breaks: &[f64],
        f: impl Fn(f64) -> Complex64,
    ) -> Complex64 {
        neumaier_sum_complex(
            breaks
                .windows(2)
                .map(|w| self.integrate_complex(w[0], w[1], &f)),
        )
    }
}

/// Uniform breakpoints on `[a, b]` with panels no wider than `width`.
pub fn uniform_breaks(a: f64, b: f64, width: f64) -> Vec<f64> {
    let count = ((b - a) / width).ceil().max(1.0) as usize;
    (0..=count)
        .map(|i| a + (b - a) * i as f64 / count as f64)
        .collect()
}
