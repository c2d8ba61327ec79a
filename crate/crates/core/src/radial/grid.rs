//! Panel-based Gauss-Legendre quadrature on `(0, inf)': geometric panels from
//! `r_min` to a base tail radius, mandatory splits at caller-supplied critical
//! radii, and adaptive tail extension by panel doubling with divergence
//! detection.

use crate::quad::{gauss_legendre, integrate_panel};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum GridError {
    #[error("inconsistent grid config: {0}")]
    Config(String),
    #[error("grid self-test failed: integral of r^2 e^-r = {got}, expected 2 within {tol:e}")]
    SelfTest { got: f64, tol: f64 },
}

#[derive(Debug, Clone)]
pub struct RadialGridConfig {
    pub r_min: f64,
    /// Base tail radius; integrals may extend beyond it adaptively.
    pub r_tail: f64,
    /// Geometric growth factor of consecutive panels.
    pub panel_ratio: f64,
    /// Gauss-Legendre order per panel.
    pub order: usize,
    /// Mandatory panel boundaries (e.g. the radius attaining tau).
    pub split_points: Vec<f64>,
    /// Self-test tolerance for `int r^2 e^-r dr = 2`.
    pub target_rel_tol: f64,
}

impl Default for RadialGridConfig {
    fn default() -> Self {
        RadialGridConfig {
            r_min: 1e-8,
            r_tail: 64.0,
            panel_ratio: 2.0,
            order: 24,
            split_points: Vec::new(),
            target_rel_tol: 1e-12,
        }
    }
}

/// Tail-extension policy and diagnostics of an adaptive integral.
#[derive(Debug, Clone, Copy)]
pub struct TailIntegral {
    pub value: f64,
    /// Tail contributions fell below `1e-16 * |total|`.
    pub converged: bool,
    /// Contributions grew over `DIVERGENCE_DOUBLINGS` consecutive doublings.
    pub diverged: bool,
    pub r_reached: f64,
}

impl TailIntegral {
    pub fn trusted(&self) -> bool {
        self.converged && !self.diverged
    }
}

const TAIL_RELATIVE_CUTOFF: f64 = 1e-16;
const DIVERGENCE_DOUBLINGS: usize = 5;
const MAX_DOUBLINGS: usize = 120;

/// Quadrature grid on `(r_min, r_tail)` with geometric panels.
#[derive(Debug, Clone)]
pub struct RadialGrid {
    boundaries: Vec<f64>,
    nodes: Vec<f64>,
    weights: Vec<f64>,
    gl_nodes: Vec<f64>,
    gl_weights: Vec<f64>,
    config: RadialGridConfig,
}

impl RadialGrid {
    pub fn build(config: RadialGridConfig) -> Result<RadialGrid, GridError> {
        if !(config.r_min > 0.0) || !(config.r_tail > config.r_min) {
            return Err(GridError::Config(format!(
                "need 0 < r_min < r_tail, got r_min = {}, r_tail = {}",
                config.r_min, config.r_tail
            )));
        }
        if config.panel_ratio <= 1.0 {
            return Err(GridError::Config(format!(
                "panel_ratio must exceed 1, got {}",
                config.panel_ratio
            )));
        }
        if config.order < 2 {
            return Err(GridError::Config(format!(
                "order must be at least 2, got {}",
                config.order
            )));
        }
        let mut boundaries = Vec::new();
        let mut r = config.r_min;
        while r < config.r_tail {
            boundaries.push(r);
            r *= config.panel_ratio;
        }
        boundaries.push(config.r_tail);
        for &s in &config.split_points {
            if !(s.is_finite() && s > config.r_min && s < config.r_tail) {
                return Err(GridError::Config(format!(
                    "split point {s} outside (r_min, r_tail)"
                )));
            }
            boundaries.push(s);
        }
        boundaries.sort_by(|a, b| a.partial_cmp(b).unwrap());
        boundaries.dedup_by(|a, b| (*a - *b).abs() <= 1e-14 * b.abs());

        let (gl_nodes, gl_weights) = gauss_legendre(config.order);
        let mut nodes = Vec::new();
        let mut weights = Vec::new();
        for pair in boundaries.windows(2) {
            let (a, b) = (pair[0], pair[1]);
            let mid = 0.5 * (a + b);
            let hw = 0.5 * (b - a);
            for (x, w) in gl_nodes.iter().zip(&gl_weights) {
                nodes.push(mid + hw * x);
                weights.push(w * hw);
            }
        }

        let grid = RadialGrid {
            boundaries,
            nodes,
            weights,
            gl_nodes,
            gl_weights,
            config,
        };

        // Self-test: Gamma(3) = 2 (the tail beyond r_tail is negligible for
        // r_tail >= 64).
        let probe = grid.integrate(|r| r * r * (-r).exp());
        let tol = grid.config.target_rel_tol;
        if (probe - 2.0).abs() > tol * 2.0 {
            return Err(GridError::SelfTest { got: probe, tol });
        }
        Ok(grid)
    }

    pub fn config(&self) -> &RadialGridConfig {
        &self.config
    }

    pub fn nodes(&self) -> &[f64] {
        &self.nodes
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn panel_boundaries(&self) -> &[f64] {
        &self.boundaries
    }

    pub fn r_min(&self) -> f64 {
        self.config.r_min
    }

    pub fn r_tail(&self) -> f64 {
        self.config.r_tail
    }

    /// One-line provenance string for reports.
    pub fn provenance(&self) -> String {
        format!(
            "radial grid: r_min = {:.3e}, r_tail = {:.3e}, {} panels, order {}",
            self.config.r_min,
            self.config.r_tail,
            self.boundaries.len() - 1,
            self.config.order
        )
    }

    /// Integral over the base panels only.
    pub fn integrate<F: FnMut(f64) -> f64>(&self, mut f: F) -> f64 {
        self.nodes
            .iter()
            .zip(&self.weights)
            .map(|(&x, &w)| w * f(x))
            .sum()
    }

    /// Integral with adaptive tail extension by panel doubling. The integrand
    /// receives `Some(node_index)` on base-grid nodes and `None` on tail
    /// nodes, so callers can used cached per-node tables for the base part.
    pub fn integrate_adaptive_indexed<F: FnMut(Option<usize>, f64) -> f64>(
        &self,
        mut f: F,
    ) -> TailIntegral {
        let mut total: f64 = self
            .nodes
            .iter()
            .zip(&self.weights)
            .enumerate()
            .map(|(i, (&x, &w))| w * f(Some(i), x))
            .sum();

        let mut r = self.config.r_tail;
        let mut last_contribution = f64::INFINITY;
        let mut growth_streak = 0usize;
        let mut converged = false;
        let mut diverged = false;
        for _ in 0..MAX_DOUBLINGS {
            let next = 2.0 * r;
            let contribution = integrate_panel(&self.gl_nodes, &self.gl_weights, r, next, |x| {
                f(None, x)
            });
            if !contribution.is_finite() || !total.is_finite() {
                diverged = true;
                r = next;
                break;
            }
            total += contribution;
            r = next;
            if contribution.abs() <= TAIL_RELATIVE_CUTOFF * total.abs().max(f64::MIN_POSITIVE) {
                converged = true;
                break;
            }
            if contribution.abs() > last_contribution {
                growth_streak += 1;
                if growth_streak >= DIVERGENCE_DOUBLINGS {
                    diverged = true;
                    break;
                }
            } else {
                growth_streak = 0;
            }
            last_contribution = contribution.abs();
        }
        TailIntegral {
            value: total,
            converged,
            diverged,
            r_reached: r,
        }
    }

    /// Adaptive integral of a plain closure.
    pub fn integrate_adaptive<F: FnMut(f64) -> f64>(&self, mut f: F) -> TailIntegral {
        self.integrate_adaptive_indexed(|_, x| f(x))
    }

    /// Probe integrability at the origin: quadrature contributions on
    /// geometrically shrinking panels below `r_min`. Returns `false` when the
    /// contributions fail to decay (non-integrable or marginal behavior).
    pub fn origin_integrable<F: FnMut(f64) -> f64>(&self, mut f: F) -> bool {
        let mut hi = self.config.r_min;
        let mut prev = f64::INFINITY;
        let mut bad_streak = 0usize;
        for _ in 0..80 {
            let lo = 0.5 * hi;
            let contribution =
                integrate_panel(&self.gl_nodes, &self.gl_weights, lo, hi, &mut f).abs();
            if !contribution.is_finite() {
                return false;
            }
            if contribution <= 1e-300 {
                return true;
            }
            if contribution > 0.95 * prev {
                bad_streak += 1;
                if bad_streak >= 6 {
                    return false;
                }
            } else {
                bad_streak = 0;
            }
            prev = contribution;
            hi = lo;
        }
        true
    }
}

/// Finite-difference weights on arbitrary nodes (Fornberg): weights such that
/// `sum w_i f(x_i)` approximates the `m`-th derivative of `f` at `x0`.
pub fn fd_weights(xs: &[f64], x0: f64, m: usize) -> Vec<f64> {
    let n = xs.len();
    assert!(n > m);
    let mut c = vec![vec![0.0; m + 1]; n];
    let mut c1 = 1.0;
    let mut c4 = xs[0] - x0;
    c[0][0] = 1.0;
    for i in 1..n {
        let mn = i.min(m);
        let mut c2 = 1.0;
        let c5 = c4;
        c4 = xs[i] - x0;
        for j in 0..i {
            let c3 = xs[i] - xs[j];
            c2 *= c3;
            if j == i - 1 {
                for k in (1..=mn).rev() {
                    c[i][k] = c1 * (k as f64 * c[i - 1][k - 1] - c5 * c[i - 1][k]) / c2;
                }
                c[i][0] = -c1 * c5 * c[i - 1][0] / c2;
            }
            for k in (1..=mn).rev() {
                c[j][k] = (c4 * c[j][k] - k as f64 * c[j][k - 1]) / c3;
            }
            c[j][0] = c4 * c[j][0] / c3;
        }
        c1 = c2;
    }
    c.iter().map(|row| row[m]).collect()
}
