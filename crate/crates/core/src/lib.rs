//! Numerical laboratory for a sharp weighted Hardy-type inequality for the
//! Dirac operator.
//!
//! Given a pair of radial positive weights `(omega, eta)` the inequality bounds
//! the weighted Dirac energy from below by weighted norms of the spinor and of
//! its spin-orbit image,
//!
//! ```text
//! (tau - gamma/2)^2 Int |psi|^2 w/eta^2  <=  (tau - gamma/2)^2 Int |(1+2S.L)psi|^2 w/eta^2
//!                                        <=  Int |D_m psi|^2 w ,
//! ```
//!
//! where `gamma` is the essential sup of `|(w' eta - w eta')/w|`, `tau` the
//! essential inf of `eta(r)/r`, and `D_m = -i alpha.grad + m beta`. For
//! suitable weights and `m = 0` the bound is attained by explicit spinor
//! fields.
//!
//! The crate computes the weight constants, reduces all functionals to radial
//! channel integrals through the partial-wave decomposition, constructs the
//! closed-form minimizers, and cross-checks the radial reduction against a 3D
//! finite-difference oracle. Everything is driven either through the library
//! API or the `hardy-dirac` command line tool.
//!
//! Module map:
//!
//! * [`algebra`] - dense complex matrices, Pauli/Dirac matrices, and the
//!   symmetric/anti-symmetric commutator identity.
//! * [`angular`] - spherical harmonics, spinor angular bases, angular
//!   quadrature, and the 2x2 channel representations.
//! * [`weights`] - the radial weight expression grammar, symbolic derivative,
//!   and the `gamma`/`tau` extremum analysis.
//! * [`radial`] - radial quadrature on `(0, inf)`, channel functionals,
//!   defect functional, and minimizer construction.
//! * [`verify`] - inequality reports, minimizer certification, sharpness
//!   scans, the 3D oracle, and the classical Hardy calibration.
//! * [`cli`] - the `hardy-dirac` command line front end.

pub mod algebra;
pub mod angular;
pub mod cli;
pub mod quad;
pub mod radial;
pub mod verify;
pub mod weights;
