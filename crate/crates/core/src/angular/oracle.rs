//! Finite-difference oracle for the spin-orbit eigenvalues: applies
//! `L = -i x ^ grad` componentwise by central differences on the degree-0
//! homogeneous extension of the basis spinor, assembles `1 + 2 S.L`, and
//! returns the Rayleigh quotient on the angular grid. Independent of the
//! algebraic `J^2 - L^2 - S^2` route.

use super::spinors::{dirac_spinor, DiracSign};
use super::{AngularGrid, ChannelIndex};
use num_complex::Complex64;

#[derive(Debug, Clone, Copy)]
pub struct SpinOrbitEstimate {
    pub value: f64,
    /// Set when the step is outside the trustworthy range (truncation or
    /// cancellation dominates).
    pub low_confidence: bool,
}

fn eval_extension(channel: ChannelIndex, sign: DiracSign, v: [f64; 3]) -> [Complex64; 4] {
    let r = (v[0] * v[0] + v[1] * v[1] + v[2] * v[2]).sqrt();
    let theta = (v[2] / r).clamp(-1.0, 1.0).acos();
    let phi = v[1].atan2(v[0]);
    dirac_spinor(channel, sign, theta, phi)
}

/// Rayleigh quotient of `1 + 2 S.L` on `Phi^{+-}` with `L` applied by
/// second-order central differences in ambient coordinates.
pub fn finite_difference_spin_orbit_oracle(
    channel: ChannelIndex,
    sign: DiracSign,
    grid_step: f64,
    grid: &AngularGrid,
) -> SpinOrbitEstimate {
    let h = grid_step;
    let low_confidence = !(1e-7..=5e-3).contains(&h);
    let mut num = 0.0;
    let mut den = 0.0;
    for node in grid.nodes() {
        let (st, ct) = node.theta.sin_cos();
        let (sp, cp) = node.phi.sin_cos();
        let p = [st * cp, st * sp, ct];
        let value = eval_extension(channel, sign, p);

        // Cartesian gradients of each spinor component.
        let mut grad = [[Complex64::new(0.0, 0.0); 4]; 3];
        for (axis, g) in grad.iter_mut().enumerate() {
            let mut fwd = p;
            fwd[axis] += h;
            let mut bwd = p;
            bwd[axis] -= h;
            let vf = eval_extension(channel, sign, fwd);
            let vb = eval_extension(channel, sign, bwd);
            for c in 0..4 {
                g[c] = (vf[c] - vb[c]) / (2.0 * h);
            }
        }

        // L_k = -i (x ^ grad)_k, componentwise.
        let mi = Complex64::new(0.0, -1.0);
        let mut l = [[Complex64::new(0.0, 0.0); 4]; 3];
        for c in 0..4 {
            l[0][c] = mi * (p[1] * grad[2][c] - p[2] * grad[1][c]);
            l[1][c] = mi * (p[2] * grad[0][c] - p[0] * grad[2][c]);
            l[2][c] = mi * (p[0] * grad[1][c] - p[1] * grad[0][c]);
        }

        // (1 + 2 S.L) psi, with 2 S.L = diag(sigma.L, sigma.L):
        // (sigma.L w)_1 = L3 w1 + (L1 - i L2) w2
        // (sigma.L w)_2 = (L1 + i L2) w1 - L3 w2
        let i = Complex64::new(0.0, 1.0);
        let so = |w1: usize, w2: usize, l: &[[Complex64; 4]; 3]| {
            (
                l[2][w1] + (l[0][w2] - i * l[1][w2]),
                (l[0][w1] + i * l[1][w1]) - l[2][w2],
            )
        };
        let (u0, u1) = so(0, 1, &l);
        let (u2, u3) = so(2, 3, &l);
        let applied = [
            value[0] + u0,
            value[1] + u1,
            value[2] + u2,
            value[3] + u3,
        ];

        let pairing: Complex64 = (0..4).map(|c| value[c].conj() * applied[c]).sum();
        num += node.weight * pairing.re;
        den += node.weight * value.iter().map(|z| z.norm_sqr()).sum::<f64>();
    }
    SpinOrbitEstimate {
        value: num / den,
        low_confidence,
    }
}
