//! Product quadrature on the unit sphere: Gauss-Legendre in `cos(theta)`
//! times a uniform trapezoid rule in `phi`. The rule integrates spherical
//! harmonics exactly (to rounding) up to degree
//! `min(2 n_polar - 1, n_azimuthal - 1)`.

use super::harmonics::sph_harm;
use crate::quad::gauss_legendre;
use num_complex::Complex64;
use std::f64::consts::PI;

/// Quadrature node on the sphere.
#[derive(Debug, Clone, Copy)]
pub struct SphereNode {
    pub theta: f64,
    pub phi: f64,
    pub weight: f64,
}

/// Immutable quadrature grid on the unit sphere. Weights are positive and sum
/// to `4 pi` within `1e-12` (checked at construction).
#[derive(Debug, Clone)]
pub struct AngularGrid {
    nodes: Vec<SphereNode>,
    n_polar: usize,
    n_azimuthal: usize,
}

impl AngularGrid {
    /// Product rule with `n_polar` Gauss-Legendre nodes in `cos(theta)` and
    /// `n_azimuthal` uniform nodes in `phi`.
    pub fn product(n_polar: usize, n_azimuthal: usize) -> AngularGrid {
        assert!(n_polar >= 1 && n_azimuthal >= 1);
        let (xs, ws) = gauss_legendre(n_polar);
        let dphi = 2.0 * PI / n_azimuthal as f64;
        let mut nodes = Vec::with_capacity(n_polar * n_azimuthal);
        for (x, w) in xs.iter().zip(&ws) {
            let theta = x.acos();
            for k in 0..n_azimuthal {
                nodes.push(SphereNode {
                    theta,
                    phi: k as f64 * dphi,
                    weight: w * dphi,
                });
            }
        }
        let grid = AngularGrid {
            nodes,
            n_polar,
            n_azimuthal,
        };
        let sum = grid.weight_sum();
        assert!(
            (sum - 4.0 * PI).abs() <= 1e-12 * 4.0 * PI,
            "weight sum {sum} deviates from 4 pi"
        );
        grid
    }

    /// Default resolution: exact for harmonic products up to degree 23.
    pub fn default_grid() -> AngularGrid {
        Self::product(24, 48)
    }

    pub fn nodes(&self) -> &[SphereNode] {
        &self.nodes
    }

    pub fn n_polar(&self) -> usize {
        self.n_polar
    }

    pub fn n_azimuthal(&self) -> usize {
        self.n_azimuthal
    }

    /// Largest degree `d` such that all `Y_n^l` with `n <= d` are integrated
    /// exactly (pairwise products included).
    pub fn exactness_degree(&self) -> usize {
        let polar = if self.n_polar == 0 { 0 } else { self.n_polar - 1 };
        // Products of two degree-d harmonics need 2d in cos(theta) and 2d in
        // the azimuthal mode index.
        polar.min((self.n_azimuthal.saturating_sub(1)) / 2)
    }

    pub fn weight_sum(&self) -> f64 {
        self.nodes.iter().map(|n| n.weight).sum()
    }

    pub fn integrate<F: Fn(f64, f64) -> Complex64>(&self, f: F) -> Complex64 {
        self.nodes
            .iter()
            .map(|n| n.weight * f(n.theta, n.phi))
            .sum()
    }

    pub fn integrate_real<F: Fn(f64, f64) -> f64>(&self, f: F) -> f64 {
        self.nodes.iter().map(|n| n.weight * f(n.theta, n.phi)).sum()
    }

    /// `<f, g> = integral of conj(f) g` over the sphere.
    pub fn inner<F, G>(&self, f: F, g: G) -> Complex64
    where
        F: Fn(f64, f64) -> Complex64,
        G: Fn(f64, f64) -> Complex64,
    {
        self.nodes
            .iter()
            .map(|n| n.weight * f(n.theta, n.phi).conj() * g(n.theta, n.phi))
            .sum()
    }

    /// Max deviation of the Gram matrix of all `Y_n^l` with `n <= degree`
    /// from the identity. A self-test for the rule's exactness degree.
    pub fn exactness_defect(&self, degree: u32) -> f64 {
        let mut basis = Vec::new();
        for n in 0..=degree {
            for l in -(n as i32)..=(n as i32) {
                basis.push((n, l));
            }
        }
        // Evaluate every basis function on the grid once.
        let values: Vec<Vec<Complex64>> = basis
            .iter()
            .map(|&(n, l)| {
                self.nodes
                    .iter()
                    .map(|node| sph_harm(n, l, node.theta, node.phi).unwrap())
                    .collect()
            })
            .collect();
        let mut worst = 0.0f64;
        for (i, vi) in values.iter().enumerate() {
            for (j, vj) in values.iter().enumerate() {
                let gram: Complex64 = self
                    .nodes
                    .iter()
                    .zip(vi.iter().zip(vj))
                    .map(|(node, (a, b))| node.weight * a.conj() * b)
                    .sum();
                let expected = if i == j { 1.0 } else { 0.0 };
                worst = worst.max((gram - expected).norm());
            }
        }
        worst
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn weights_sum_to_4pi() {
        for (np, na) in [(4, 8), (24, 48), (12, 25)] {
            let g = AngularGrid::product(np, na);
            assert!((g.weight_sum() - 4.0 * PI).abs() < 1e-12 * 4.0 * PI);
        }
    }

    #[test]
    fn default_grid_is_exact_to_degree_nine_and_beyond() {
        let g = AngularGrid::default_grid();
        assert!(g.exactness_degree() >= 9);
        assert!(g.exactness_defect(9) < 1e-13);
    }

    #[test]
    fn y1_normalization_and_orthogonality_by_quadrature() {
        let g = AngularGrid::default_grid();
        let norm = g.inner(
            |t, p| sph_harm(1, 0, t, p).unwrap(),
            |t, p| sph_harm(1, 0, t, p).unwrap(),
        );
        assert!((norm.re - 1.0).abs() < 1e-13 && norm.im.abs() < 1e-13);

        let cross = g.inner(
            |t, p| sph_harm(1, 1, t, p).unwrap(),
            |t, p| sph_harm(2, 1, t, p).unwrap(),
        );
        assert!(cross.norm() < 1e-13);
    }

    #[test]
    fn degraded_order_fails_exactness_loudly() {
        // 3 polar nodes cannot integrate degree-4 products.
        let g = AngularGrid::product(3, 6);
        assert!(g.exactness_degree() < 4);
        assert!(g.exactness_defect(4) > 1e-3);
    }
}
