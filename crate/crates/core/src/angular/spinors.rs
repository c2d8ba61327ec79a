//! Spinor spherical harmonics and the channel matrix representations.
//!
//! The two-spinor bases are
//!
//! ```text
//! Psi^{m}_{j-1/2} = (2j)^{-1/2}   ( sqrt(j+m)   Y^{m-1/2}_{j-1/2} ,  sqrt(j-m)   Y^{m+1/2}_{j-1/2} )
//! Psi^{m}_{j+1/2} = (2j+2)^{-1/2} ( sqrt(j+1-m) Y^{m-1/2}_{j+1/2} , -sqrt(j+1+m) Y^{m+1/2}_{j+1/2} )
//! ```
//!
//! and the four-spinor basis attaches them to the upper/lower blocks:
//! `Phi^+_{m,+-(j+1/2)} = (i Psi^m_{j+-1/2}, 0)`,
//! `Phi^-_{m,+-(j+1/2)} = (0, Psi^m_{j-+1/2})`.
//!
//! On each channel the operators `1 + 2 S.L`, `beta`, `i alpha.x_hat` act as
//! the 2x2 matrices `diag(-kappa, kappa)`, `diag(1, -1)`, `[[0,1],[-1,0]]`
//! on the amplitude pair `(f+, f-)`.

use super::harmonics::sph_harm;
use super::{AngularError, ChannelIndex};
use num_complex::Complex64;

const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const I: Complex64 = Complex64::new(0.0, 1.0);

/// Which total-angular-momentum coupling the two-spinor uses.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SpinorVariant {
    /// `Psi^{m_j}_{j-1/2}` (orbital degree `l = j - 1/2`).
    JMinusHalf,
    /// `Psi^{m_j}_{j+1/2}` (orbital degree `l = j + 1/2`).
    JPlusHalf,
}

/// Evaluate the two-spinor `Psi^{m_j}_{j -+ 1/2}` at `(theta, phi)`.
pub fn pauli_spinor(
    two_j: i32,
    two_mj: i32,
    variant: SpinorVariant,
    theta: f64,
    phi: f64,
) -> Result<[Complex64; 2], AngularError> {
    if two_j < 1 || two_j % 2 == 0 || two_mj.abs() > two_j || two_mj.rem_euclid(2) != 1 {
        return Err(AngularError::InvalidChannel {
            two_j,
            two_mj,
            kappa: 0,
        });
    }
    let order_up = (two_mj - 1) / 2;
    let order_dn = (two_mj + 1) / 2;
    let (degree, c_up, c_dn, norm) = match variant {
        SpinorVariant::JMinusHalf => {
            let l = (two_j - 1) / 2;
            // sqrt(j + m_j), sqrt(j - m_j), 1/sqrt(2j)
            (
                l as u32,
                (((two_j + two_mj) / 2) as f64).sqrt(),
                (((two_j - two_mj) / 2) as f64).sqrt(),
                1.0 / (two_j as f64).sqrt(),
            )
        }
        SpinorVariant::JPlusHalf => {
            let l = (two_j + 1) / 2;
            // sqrt(j + 1 - m_j), -sqrt(j + 1 + m_j), 1/sqrt(2j+2)
            (
                l as u32,
                (((two_j + 2 - two_mj) / 2) as f64).sqrt(),
                -(((two_j + 2 + two_mj) / 2) as f64).sqrt(),
                1.0 / ((two_j + 2) as f64).sqrt(),
            )
        }
    };
    // A vanishing coefficient can sit next to an out-of-range order
    // (e.g. m_j = j in the j-1/2 variant); skip the harmonic there.
    let up = if c_up == 0.0 {
        ZERO
    } else {
        c_up * sph_harm(degree, order_up, theta, phi)?
    };
    let dn = if c_dn == 0.0 {
        ZERO
    } else {
        c_dn * sph_harm(degree, order_dn, theta, phi)?
    };
    Ok([norm * up, norm * dn])
}

/// Sign label of the four-spinor basis element `Phi^{+-}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DiracSign {
    Plus,
    Minus,
}

/// Evaluate the four-spinor basis element `Phi^{+-}_{m_j, kappa}`.
pub fn dirac_spinor(
    channel: ChannelIndex,
    sign: DiracSign,
    theta: f64,
    phi: f64,
) -> [Complex64; 4] {
    let variant_for = |l: u32| {
        if l == (channel.two_j() - 1) as u32 / 2 {
            SpinorVariant::JMinusHalf
        } else {
            SpinorVariant::JPlusHalf
        }
    };
    match sign {
        DiracSign::Plus => {
            let psi = pauli_spinor(
                channel.two_j(),
                channel.two_mj(),
                variant_for(channel.l_upper()),
                theta,
                phi,
            )
            .expect("valid channel");
            [I * psi[0], I * psi[1], ZERO, ZERO]
        }
        DiracSign::Minus => {
            let psi = pauli_spinor(
                channel.two_j(),
                channel.two_mj(),
                variant_for(channel.l_lower()),
                theta,
                phi,
            )
            .expect("valid channel");
            [ZERO, ZERO, psi[0], psi[1]]
        }
    }
}

/// Scalar action of `1 + 2 S.L` on `Phi^{+-}`, computed algebraically through
/// `2 S.L = J^2 - L^2 - S^2` with the orbital degree read from the occupied
/// block. Equals `-kappa` on `Phi^+` and `+kappa` on `Phi^-`, exactly.
pub fn apply_spin_orbit(channel: ChannelIndex, sign: DiracSign) -> f64 {
    let l = match sign {
        DiracSign::Plus => channel.l_upper() as i64,
        DiracSign::Minus => channel.l_lower() as i64,
    };
    let two_j = channel.two_j() as i64;
    // 1 + j(j+1) - l(l+1) - 3/4, in exact quarter-integers.
    let quarters = two_j * (two_j + 2) - 4 * l * (l + 1) - 3;
    1.0 + quarters as f64 / 4.0
}

/// Channel operators with a 2x2 matrix representation on `(f+, f-)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ChannelOp {
    SpinOrbit,
    Beta,
    IAlphaXhat,
}

/// The 2x2 real channel matrix of `op` on the amplitude pair `(f+, f-)`.
pub fn apply_channel_matrix(op: ChannelOp, kappa: i32) -> [[f64; 2]; 2] {
    let k = kappa as f64;
    match op {
        ChannelOp::SpinOrbit => [[-k, 0.0], [0.0, k]],
        ChannelOp::Beta => [[1.0, 0.0], [0.0, -1.0]],
        ChannelOp::IAlphaXhat => [[0.0, 1.0], [-1.0, 0.0]],
    }
}

/// `sigma . x_hat` at the sphere point `(theta, phi)`.
pub fn sigma_dot_xhat(theta: f64, phi: f64) -> [[Complex64; 2]; 2] {
    let (st, ct) = theta.sin_cos();
    let eip = Complex64::new(0.0, phi).exp();
    [
        [Complex64::new(ct, 0.0), st * eip.conj()],
        [st * eip, Complex64::new(-ct, 0.0)],
    ]
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::angular::AngularGrid;

    fn phi_fn(
        channel: ChannelIndex,
        sign: DiracSign,
    ) -> impl Fn(f64, f64) -> [Complex64; 4] {
        move |t, p| dirac_spinor(channel, sign, t, p)
    }

    fn inner4(grid: &AngularGrid, f: &dyn Fn(f64, f64) -> [Complex64; 4], g: &dyn Fn(f64, f64) -> [Complex64; 4]) -> Complex64 {
        grid.nodes()
            .iter()
            .map(|n| {
                let a = f(n.theta, n.phi);
                let b = g(n.theta, n.phi);
                n.weight * (0..4).map(|c| a[c].conj() * b[c]).sum::<Complex64>()
            })
            .sum()
    }

    #[test]
    fn stretched_pauli_spinor_reduces_to_single_harmonic() {
        // j = 1/2, m_j = 1/2, variant j-1/2: coefficients (sqrt(1), sqrt(0)).
        let psi = pauli_spinor(1, 1, SpinorVariant::JMinusHalf, 0.9, 1.3).unwrap();
        let y00 = sph_harm(0, 0, 0.9, 1.3).unwrap();
        assert!((psi[0] - y00).norm() < 1e-15);
        assert_eq!(psi[1], ZERO);
    }

    #[test]
    fn pauli_spinor_mj_reflection_swaps_component_magnitudes() {
        let grid_points = [(0.4, 0.3), (1.2, 2.2), (2.8, 5.0)];
        for two_j in [1, 3, 5] {
            let mut two_mj = -two_j;
            while two_mj <= two_j {
                for variant in [SpinorVariant::JMinusHalf, SpinorVariant::JPlusHalf] {
                    for (t, p) in grid_points {
                        let a = pauli_spinor(two_j, two_mj, variant, t, p).unwrap();
                        let b = pauli_spinor(two_j, -two_mj, variant, t, p).unwrap();
                        assert!(
                            (a[0].norm() - b[1].norm()).abs() < 1e-12,
                            "2j={two_j} 2mj={two_mj}"
                        );
                        assert!((a[1].norm() - b[0].norm()).abs() < 1e-12);
                    }
                }
                two_mj += 2;
            }
        }
    }

    #[test]
    fn pauli_spinor_gram_is_identity_to_1e10() {
        let grid = AngularGrid::default_grid();
        let mut basis: Vec<(i32, i32, SpinorVariant)> = Vec::new();
        for two_j in [1, 3] {
            let mut two_mj = -two_j;
            while two_mj <= two_j {
                basis.push((two_j, two_mj, SpinorVariant::JMinusHalf));
                basis.push((two_j, two_mj, SpinorVariant::JPlusHalf));
                two_mj += 2;
            }
        }
        for (i, &(ja, ma, va)) in basis.iter().enumerate() {
            for (j, &(jb, mb, vb)) in basis.iter().enumerate() {
                let gram: Complex64 = grid
                    .nodes()
                    .iter()
                    .map(|n| {
                        let a = pauli_spinor(ja, ma, va, n.theta, n.phi).unwrap();
                        let b = pauli_spinor(jb, mb, vb, n.theta, n.phi).unwrap();
                        n.weight * (a[0].conj() * b[0] + a[1].conj() * b[1])
                    })
                    .sum();
                let expected = if i == j { 1.0 } else { 0.0 };
                assert!(
                    (gram - expected).norm() < 1e-10,
                    "Gram[{i}][{j}] = {gram}"
                );
            }
        }
    }

    #[test]
    fn dirac_spinor_norm_and_orthogonality() {
        let grid = AngularGrid::default_grid();
        let c_minus = ChannelIndex::new(1, 1, -1).unwrap();
        let c_plus = ChannelIndex::new(1, 1, 1).unwrap();

        let n = inner4(&grid, &phi_fn(c_minus, DiracSign::Plus), &phi_fn(c_minus, DiracSign::Plus));
        assert!((n.re - 1.0).abs() < 1e-12 && n.im.abs() < 1e-13);

        // Plus and minus signs occupy disjoint blocks: exactly zero.
        let z = inner4(&grid, &phi_fn(c_minus, DiracSign::Plus), &phi_fn(c_plus, DiracSign::Minus));
        assert_eq!(z, ZERO);

        let cross = inner4(&grid, &phi_fn(c_minus, DiracSign::Plus), &phi_fn(c_plus, DiracSign::Plus));
        assert!(cross.norm() < 1e-12);
    }

    #[test]
    fn dirac_basis_gram_up_to_j_seven_halves() {
        let grid = AngularGrid::default_grid();
        let channels = ChannelIndex::enumerate(7);
        // Evaluate every basis function once on the grid.
        let mut values: Vec<Vec<[Complex64; 4]>> = Vec::new();
        for &ch in &channels {
            for sign in [DiracSign::Plus, DiracSign::Minus] {
                values.push(
                    grid.nodes()
                        .iter()
                        .map(|n| dirac_spinor(ch, sign, n.theta, n.phi))
                        .collect(),
                );
            }
        }
        let mut worst = 0.0f64;
        for (i, vi) in values.iter().enumerate() {
            for (j, vj) in values.iter().enumerate() {
                let gram: Complex64 = grid
                    .nodes()
                    .iter()
                    .zip(vi.iter().zip(vj))
                    .map(|(n, (a, b))| {
                        n.weight * (0..4).map(|c| a[c].conj() * b[c]).sum::<Complex64>()
                    })
                    .sum();
                let expected = if i == j { 1.0 } else { 0.0 };
                worst = worst.max((gram - expected).norm());
            }
        }
        assert!(worst < 1e-10, "worst Gram deviation {worst}");
    }

    #[test]
    fn spin_orbit_eigenvalues_are_exactly_minus_kappa_on_plus() {
        // (j=1/2, kappa=-1), Phi^+: eigenvalue +1.
        let c = ChannelIndex::new(1, 1, -1).unwrap();
        assert_eq!(apply_spin_orbit(c, DiracSign::Plus), 1.0);
        // (j=1/2, kappa=+1), Phi^-: eigenvalue +1.
        let c = ChannelIndex::new(1, 1, 1).unwrap();
        assert_eq!(apply_spin_orbit(c, DiracSign::Minus), 1.0);
        // (j=3/2, kappa=2), Phi^+: eigenvalue -2.
        let c = ChannelIndex::new(3, 1, 2).unwrap();
        assert_eq!(apply_spin_orbit(c, DiracSign::Plus), -2.0);
        // Exhaustive: -kappa on Phi^+, +kappa on Phi^- for all j <= 7/2.
        for ch in ChannelIndex::enumerate(7) {
            assert_eq!(apply_spin_orbit(ch, DiracSign::Plus), -(ch.kappa() as f64));
            assert_eq!(apply_spin_orbit(ch, DiracSign::Minus), ch.kappa() as f64);
        }
    }

    #[test]
    fn channel_matrices_match_displayed_forms() {
        assert_eq!(
            apply_channel_matrix(ChannelOp::Beta, 3),
            [[1.0, 0.0], [0.0, -1.0]]
        );
        assert_eq!(
            apply_channel_matrix(ChannelOp::SpinOrbit, 1),
            [[-1.0, 0.0], [0.0, 1.0]]
        );
        let m = apply_channel_matrix(ChannelOp::IAlphaXhat, -2);
        assert_eq!(m, [[0.0, 1.0], [-1.0, 0.0]]);
        // [[0,1],[-1,0]]^2 = -I
        let sq = [
            [
                m[0][0] * m[0][0] + m[0][1] * m[1][0],
                m[0][0] * m[0][1] + m[0][1] * m[1][1],
            ],
            [
                m[1][0] * m[0][0] + m[1][1] * m[1][0],
                m[1][0] * m[0][1] + m[1][1] * m[1][1],
            ],
        ];
        assert_eq!(sq, [[-1.0, 0.0], [0.0, -1.0]]);
    }

    /// Quadrature representation check: `<Phi^s, Op Phi^s'>` reproduces the
    /// displayed 2x2 matrices for `beta` and `i alpha.x_hat` on every channel.
    #[test]
    fn channel_matrices_are_reproduced_by_quadrature() {
        let grid = AngularGrid::default_grid();
        let apply_beta = |v: [Complex64; 4]| [v[0], v[1], -v[2], -v[3]];
        let apply_i_alpha_xhat = |v: [Complex64; 4], t: f64, p: f64| {
            let s = sigma_dot_xhat(t, p);
            // i * alpha.x_hat with alpha.x_hat = [[0, sigma.x_hat], [sigma.x_hat, 0]]
            let up = [
                I * (s[0][0] * v[2] + s[0][1] * v[3]),
                I * (s[1][0] * v[2] + s[1][1] * v[3]),
            ];
            let dn = [
                I * (s[0][0] * v[0] + s[0][1] * v[1]),
                I * (s[1][0] * v[0] + s[1][1] * v[1]),
            ];
            [up[0], up[1], dn[0], dn[1]]
        };

        for ch in ChannelIndex::enumerate(5) {
            let signs = [DiracSign::Plus, DiracSign::Minus];
            let mut beta_rep = [[ZERO; 2]; 2];
            let mut iax_rep = [[ZERO; 2]; 2];
            for (a, &sa) in signs.iter().enumerate() {
                for (b, &sb) in signs.iter().enumerate() {
                    beta_rep[a][b] = grid
                        .nodes()
                        .iter()
                        .map(|n| {
                            let fa = dirac_spinor(ch, sa, n.theta, n.phi);
                            let fb = apply_beta(dirac_spinor(ch, sb, n.theta, n.phi));
                            n.weight * (0..4).map(|c| fa[c].conj() * fb[c]).sum::<Complex64>()
                        })
                        .sum();
                    iax_rep[a][b] = grid
                        .nodes()
                        .iter()
                        .map(|n| {
                            let fa = dirac_spinor(ch, sa, n.theta, n.phi);
                            let fb =
                                apply_i_alpha_xhat(dirac_spinor(ch, sb, n.theta, n.phi), n.theta, n.phi);
                            n.weight * (0..4).map(|c| fa[c].conj() * fb[c]).sum::<Complex64>()
                        })
                        .sum();
                }
            }
            let beta_expect = apply_channel_matrix(ChannelOp::Beta, ch.kappa());
            let iax_expect = apply_channel_matrix(ChannelOp::IAlphaXhat, ch.kappa());
            for a in 0..2 {
                for b in 0..2 {
                    assert!(
                        (beta_rep[a][b] - beta_expect[a][b]).norm() < 1e-12,
                        "beta on {ch}: [{a}][{b}] = {}",
                        beta_rep[a][b]
                    );
                    assert!(
                        (iax_rep[a][b] - iax_expect[a][b]).norm() < 1e-12,
                        "i alpha.x_hat on {ch}: [{a}][{b}] = {}",
                        iax_rep[a][b]
                    );
                }
            }
        }
    }

    /// Quadrature of `|(1+2S.L) psi|^2` over the sphere equals
    /// `sum kappa^2 (|a|^2 + |b|^2)` for any channel superposition.
    #[test]
    fn spin_orbit_quadrature_identity_for_assembled_spinors() {
        let grid = AngularGrid::default_grid();
        let combos: Vec<(ChannelIndex, f64, f64)> = vec![
            (ChannelIndex::new(1, 1, -1).unwrap(), 0.7, -0.3),
            (ChannelIndex::new(1, -1, 1).unwrap(), 1.1, 0.2),
            (ChannelIndex::new(3, 1, 2).unwrap(), -0.4, 0.9),
            (ChannelIndex::new(3, -3, -2).unwrap(), 0.25, 0.6),
        ];
        let norm2 = grid.integrate_real(|t, p| {
            let mut v = [ZERO; 4];
            for &(ch, a, b) in &combos {
                let so_plus = apply_spin_orbit(ch, DiracSign::Plus);
                let so_minus = apply_spin_orbit(ch, DiracSign::Minus);
                let fp = dirac_spinor(ch, DiracSign::Plus, t, p);
                let fm = dirac_spinor(ch, DiracSign::Minus, t, p);
                for c in 0..4 {
                    v[c] += a * so_plus * fp[c] + b * so_minus * fm[c];
                }
            }
            v.iter().map(|z| z.norm_sqr()).sum()
        });
        let expected: f64 = combos
            .iter()
            .map(|&(ch, a, b)| (ch.kappa() as f64).powi(2) * (a * a + b * b))
            .sum();
        assert!(
            (norm2 - expected).abs() < 1e-10 * expected,
            "{norm2} vs {expected}"
        );
    }
}
