//! Angular machinery for the partial-wave decomposition: spherical harmonics,
//! the two- and four-spinor angular bases, product quadrature on the sphere,
//! and the 2x2 channel representations of `1 + 2 S.L`, `beta`, and
//! `i alpha.x_hat`.
//!
//! Half-integer quantum numbers are stored as exact twice-integers (`2j`,
//! `2m_j`), which keeps channel indexing free of floating-point identity
//! hazards.

mod grid;
mod harmonics;
mod oracle;
mod spinors;

pub use grid::AngularGrid;
pub use harmonics::sph_harm;
pub use oracle::{finite_difference_spin_orbit_oracle, SpinOrbitEstimate};
pub use spinors::{
    apply_channel_matrix, apply_spin_orbit, dirac_spinor, pauli_spinor, ChannelOp, DiracSign,
    SpinorVariant,
};

use thiserror::Error;

#[derive(Debug, Error, PartialEq)]
pub enum AngularError {
    #[error("invalid spherical harmonic order: |l| = {l} exceeds degree n = {n}")]
    OrderExceedsDegree { n: u32, l: i32 },
    #[error("invalid channel: 2j = {two_j}, 2m_j = {two_mj}, kappa = {kappa}")]
    InvalidChannel { two_j: i32, two_mj: i32, kappa: i32 },
}

/// Partial-wave channel label `(j, m_j, kappa)` with `j` a positive
/// half-integer, `|m_j| <= j`, and `kappa = +-(j + 1/2)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct ChannelIndex {
    two_j: i32,
    two_mj: i32,
    kappa: i32,
}

impl ChannelIndex {
    pub fn new(two_j: i32, two_mj: i32, kappa: i32) -> Result<Self, AngularError> {
        let valid = two_j >= 1
            && two_j % 2 == 1
            && two_mj.abs() <= two_j
            && two_mj.rem_euclid(2) == 1
            && kappa.abs() == (two_j + 1) / 2;
        if !valid {
            return Err(AngularError::InvalidChannel {
                two_j,
                two_mj,
                kappa,
            });
        }
        Ok(ChannelIndex {
            two_j,
            two_mj,
            kappa,
        })
    }

    /// Channel from `kappa` alone (`j = |kappa| - 1/2`).
    pub fn from_kappa(kappa: i32, two_mj: i32) -> Result<Self, AngularError> {
        if kappa == 0 {
            return Err(AngularError::InvalidChannel {
                two_j: 0,
                two_mj,
                kappa,
            });
        }
        Self::new(2 * kappa.abs() - 1, two_mj, kappa)
    }

    pub fn two_j(&self) -> i32 {
        self.two_j
    }

    pub fn two_mj(&self) -> i32 {
        self.two_mj
    }

    pub fn kappa(&self) -> i32 {
        self.kappa
    }

    pub fn j(&self) -> f64 {
        self.two_j as f64 / 2.0
    }

    pub fn m_j(&self) -> f64 {
        self.two_mj as f64 / 2.0
    }

    /// Orbital degree of the upper (`Phi^+`) two-spinor block.
    pub fn l_upper(&self) -> u32 {
        if self.kappa > 0 {
            self.kappa as u32
        } else {
            (-self.kappa - 1) as u32
        }
    }

    /// Orbital degree of the lower (`Phi^-`) two-spinor block.
    pub fn l_lower(&self) -> u32 {
        if self.kappa > 0 {
            (self.kappa - 1) as u32
        } else {
            (-self.kappa) as u32
        }
    }

    /// All channels with `j <= two_j_max / 2`, in a fixed deterministic order.
    pub fn enumerate(two_j_max: i32) -> Vec<ChannelIndex> {
        let mut out = Vec::new();
        let mut two_j = 1;
        while two_j <= two_j_max {
            let half = (two_j + 1) / 2;
            for kappa in [-half, half] {
                let mut two_mj = -two_j;
                while two_mj <= two_j {
                    out.push(ChannelIndex {
                        two_j,
                        two_mj,
                        kappa,
                    });
                    two_mj += 2;
                }
            }
            two_j += 2;
        }
        out
    }
}

impl std::fmt::Display for ChannelIndex {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "(j={}/2, m_j={}/2, kappa={})",
            self.two_j, self.two_mj, self.kappa
        )
    }
}
