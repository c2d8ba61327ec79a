//! Channel-wise radial functionals of the inequality. With the partial-wave
//! decomposition `psi = sum (1/r)(f+ Phi+ + f- Phi-)`, the three integrals
//! reduce to
//!
//! ```text
//! I_lhs = sum_ch  int (f+^2 + f-^2) w/eta^2 dr
//! I_mid = sum_ch  kappa^2 int (f+^2 + f-^2) w/eta^2 dr
//! I_rhs = sum_ch  int ( (u+ - m f-)^2 + (u- - m f+)^2 ) w dr ,
//!         u+ = (d/dr + kappa/r) f+ ,  u- = (d/dr - kappa/r) f- ,
//! ```
//!
//! and the completed-square defect with coefficient `c` is
//!
//! ```text
//! D_c  = sum_ch  int ( (u+ - c kappa f+/eta - m f-)^2
//!                    + (u- + c kappa f-/eta - m f+)^2 ) w dr ,
//! ```
//!
//! which vanishes exactly on minimizers and is non-negative by construction.
//!
//! Weight values are cached on the base grid nodes; adaptive tail panels
//! evaluate the weight trees directly.

use super::grid::{RadialGrid, TailIntegral};
use super::profile::{RadialProfilePair, SpinorField};
use crate::weights::WeightExpr;

/// Radial functional evaluator for a fixed `(grid, omega, eta)` triple.
pub struct Functionals<'g> {
    grid: &'g RadialGrid,
    omega: WeightExpr,
    eta: WeightExpr,
    omega_nodes: Vec<f64>,
    eta_nodes: Vec<f64>,
    w_over_eta2_nodes: Vec<f64>,
}

impl<'g> Functionals<'g> {
    pub fn new(grid: &'g RadialGrid, omega: &WeightExpr, eta: &WeightExpr) -> Self {
        let omega_nodes: Vec<f64> = grid.nodes().iter().map(|&r| omega.eval(r)).collect();
        let eta_nodes: Vec<f64> = grid.nodes().iter().map(|&r| eta.eval(r)).collect();
        let w_over_eta2_nodes = omega_nodes
            .iter()
            .zip(&eta_nodes)
            .map(|(w, e)| w / (e * e))
            .collect();
        Functionals {
            grid,
            omega: omega.clone(),
            eta: eta.clone(),
            omega_nodes,
            eta_nodes,
            w_over_eta2_nodes,
        }
    }

    pub fn grid(&self) -> &RadialGrid {
        self.grid
    }

    fn omega_at(&self, idx: Option<usize>, r: f64) -> f64 {
        match idx {
            Some(i) => self.omega_nodes[i],
            None => self.omega.eval(r),
        }
    }

    fn eta_at(&self, idx: Option<usize>, r: f64) -> f64 {
        match idx {
            Some(i) => self.eta_nodes[i],
            None => self.eta.eval(r),
        }
    }

    fn w_over_eta2_at(&self, idx: Option<usize>, r: f64) -> f64 {
        match idx {
            Some(i) => self.w_over_eta2_nodes[i],
            None => {
                let e = self.eta.eval(r);
                self.omega.eval(r) / (e * e)
            }
        }
    }

    /// `int (f+^2 + f-^2) w/eta^2 dr` for one channel.
    pub fn lhs_channel(&self, pair: &RadialProfilePair) -> TailIntegral {
        self.grid.integrate_adaptive_indexed(|idx, r| {
            let fp = pair.f_plus.eval_at(idx, r);
            let fm = pair.f_minus.eval_at(idx, r);
            (fp * fp + fm * fm) * self.w_over_eta2_at(idx, r)
        })
    }

    /// `kappa^2` times the channel `lhs` integral.
    pub fn mid_channel(&self, pair: &RadialProfilePair) -> TailIntegral {
        let k2 = (pair.channel.kappa() as f64).powi(2);
        let base = self.lhs_channel(pair);
        TailIntegral {
            value: k2 * base.value,
            ..base
        }
    }

    /// `int ((u+ - m f-)^2 + (u- - m f+)^2) w dr` for one channel.
    pub fn rhs_channel(&self, pair: &RadialProfilePair, mass: f64) -> TailIntegral {
        let kappa = pair.channel.kappa() as f64;
        self.grid.integrate_adaptive_indexed(|idx, r| {
            let fp = pair.f_plus.eval_at(idx, r);
            let fm = pair.f_minus.eval_at(idx, r);
            let up = pair.f_plus.deriv_at(idx, r) + kappa * fp / r;
            let um = pair.f_minus.deriv_at(idx, r) - kappa * fm / r;
            let a = up - mass * fm;
            let b = um - mass * fp;
            (a * a + b * b) * self.omega_at(idx, r)
        })
    }

    /// Completed-square defect with coefficient `c` for one channel.
    pub fn defect_channel(&self, pair: &RadialProfilePair, c: f64, mass: f64) -> TailIntegral {
        let kappa = pair.channel.kappa() as f64;
        self.grid.integrate_adaptive_indexed(|idx, r| {
            let fp = pair.f_plus.eval_at(idx, r);
            let fm = pair.f_minus.eval_at(idx, r);
            let up = pair.f_plus.deriv_at(idx, r) + kappa * fp / r;
            let um = pair.f_minus.deriv_at(idx, r) - kappa * fm / r;
            let eta = self.eta_at(idx, r);
            let a = up - c * kappa * fp / eta - mass * fm;
            let b = um + c * kappa * fm / eta - mass * fp;
            (a * a + b * b) * self.omega_at(idx, r)
        })
    }

    fn sum_channels(
        &self,
        field: &SpinorField,
        mut one: impl FnMut(&RadialProfilePair) -> TailIntegral,
    ) -> TailIntegral {
        let mut total = TailIntegral {
            value: 0.0,
            converged: true,
            diverged: false,
            r_reached: self.grid.r_tail(),
        };
        for pair in field.pairs() {
            let part = one(pair);
            total.value += part.value;
            total.converged &= part.converged;
            total.diverged |= part.diverged;
            total.r_reached = total.r_reached.max(part.r_reached);
        }
        total
    }

    /// `int |psi|^2 w/eta^2 dx` in channel form.
    pub fn lhs(&self, field: &SpinorField) -> TailIntegral {
        self.sum_channels(field, |p| self.lhs_channel(p))
    }

    /// `int |(1+2 S.L) psi|^2 w/eta^2 dx` in channel form.
    pub fn mid(&self, field: &SpinorField) -> TailIntegral {
        self.sum_channels(field, |p| self.mid_channel(p))
    }

    /// `int |D_m psi|^2 w dx` in channel form.
    pub fn rhs(&self, field: &SpinorField, mass: f64) -> TailIntegral {
        self.sum_channels(field, |p| self.rhs_channel(p, mass))
    }

    /// The defect functional with coefficient `c` (non-negative; zero exactly
    /// on minimizers).
    pub fn defect(&self, field: &SpinorField, c: f64, mass: f64) -> TailIntegral {
        self.sum_channels(field, |p| self.defect_channel(p, c, mass))
    }
}
