//! Radial weight pairs `(omega, eta)`: parsing, exact symbolic
//! differentiation, and the two extremum constants of the inequality,
//!
//! ```text
//! gamma = ess sup |(omega' eta - omega eta') / omega| ,
//! tau   = ess inf  eta(r) / r ,
//! ```
//!
//! together with the validity condition `tau >= gamma/2 >= 0` and the sharp
//! constant `(tau - gamma/2)^2`. The weights produced by the grammar are
//! smooth, so the essential extrema are the ordinary extrema of the
//! continuous representative.

mod expr;
mod parse;
mod search;

pub use expr::WeightExpr;
pub use parse::{parse_weight, ParseError};
pub use search::{log_grid, scan_extremum, ExtremumResult, ExtremumSite};

pub(crate) use expr::{add, div, exp, lit, log, mul, pow, sub};

use thiserror::Error;

/// Default working domain `(r_min, r_max)` for the extremum analysis: spans
/// the singular origin and the tail for all presets.
pub const DEFAULT_DOMAIN: (f64, f64) = (1e-6, 1e3);
/// Log-spaced base grid size for the extremum scans.
pub const DEFAULT_GRID_POINTS: usize = 4096;
/// Relative golden-section position tolerance.
pub const DEFAULT_REFINE_TOL: f64 = 1e-10;

#[derive(Debug, Error)]
pub enum WeightError {
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error("weight '{expr}' is not positive at r = {r:.6e} (value {value:.6e})")]
    NonPositive { expr: String, r: f64, value: f64 },
    #[error("weight '{expr}' is not finite at r = {r:.6e}")]
    NonFinite { expr: String, r: f64 },
}

/// Verify that `w` evaluates to a positive value on the analysis grid.
/// Overflow to `+inf` is accepted (the function is positive, merely beyond
/// `f64` range); `NaN` and non-positive values are rejected.
pub fn check_positive_on_grid(
    w: &WeightExpr,
    domain: (f64, f64),
    points: usize,
) -> Result<(), WeightError> {
    for r in log_grid(domain.0, domain.1, points) {
        let v = w.eval(r);
        if v.is_nan() {
            return Err(WeightError::NonFinite {
                expr: w.to_text(),
                r,
            });
        }
        if v <= 0.0 {
            return Err(WeightError::NonPositive {
                expr: w.to_text(),
                r,
                value: v,
            });
        }
    }
    Ok(())
}

/// Essential supremum of `|(omega' eta - omega eta') / omega|` over the
/// domain, with the extremizing radius (or a boundary/divergence flag).
pub fn compute_gamma(
    omega: &WeightExpr,
    eta: &WeightExpr,
    domain: (f64, f64),
    refine_tol: f64,
) -> Result<ExtremumResult, WeightError> {
    check_positive_on_grid(omega, domain, DEFAULT_GRID_POINTS)?;
    check_positive_on_grid(eta, domain, DEFAULT_GRID_POINTS)?;
    if omega == eta {
        // omega' eta - omega eta' cancels identically.
        return Ok(ExtremumResult {
            value: 0.0,
            site: ExtremumSite::Constant,
        });
    }
    // (omega' eta - omega eta') / omega = eta * (omega'/omega - eta'/eta);
    // the log-derivative form survives radii where the weights overflow, and
    // an exactly cancelling pair (omega = eta) short-circuits to 0 before the
    // possibly infinite eta factor enters.
    let log_omega = omega.log_derivative();
    let log_eta = eta.log_derivative();
    let quotient = move |r: f64| {
        let diff = log_omega.eval(r) - log_eta.eval(r);
        if diff == 0.0 {
            0.0
        } else {
            (eta.eval(r) * diff).abs()
        }
    };
    Ok(scan_extremum(
        quotient,
        domain.0,
        domain.1,
        DEFAULT_GRID_POINTS,
        true,
        refine_tol,
    ))
}

/// Essential infimum of `eta(r)/r` over the domain, with the extremizing
/// radius (or a boundary/divergence flag).
pub fn compute_tau(
    eta: &WeightExpr,
    domain: (f64, f64),
    refine_tol: f64,
) -> Result<ExtremumResult, WeightError> {
    check_positive_on_grid(eta, domain, DEFAULT_GRID_POINTS)?;
    let quotient = move |r: f64| eta.eval(r) / r;
    Ok(scan_extremum(
        quotient,
        domain.0,
        domain.1,
        DEFAULT_GRID_POINTS,
        false,
        refine_tol,
    ))
}

/// The weight constants and validity verdict for a pair `(omega, eta)`.
#[derive(Debug, Clone)]
pub struct WeightAnalysis {
    pub omega_text: String,
    pub eta_text: String,
    pub gamma: f64,
    pub tau: f64,
    pub gamma_site: ExtremumSite,
    pub tau_site: ExtremumSite,
    /// `tau >= gamma/2 >= 0` and both extrema attained on the domain.
    pub valid: bool,
    /// `(tau - gamma/2)^2`.
    pub sharp_constant: f64,
    /// Human-readable notes accompanying an invalid or degenerate analysis.
    pub flags: Vec<String>,
}

impl WeightAnalysis {
    /// The completed-square coefficient `c = tau - gamma/2`.
    pub fn c(&self) -> f64 {
        self.tau - 0.5 * self.gamma
    }
}

/// Run both extremum searches and assemble the analysis.
pub fn analyze_pair(
    omega: &WeightExpr,
    eta: &WeightExpr,
    domain: (f64, f64),
) -> Result<WeightAnalysis, WeightError> {
    let gamma_res = compute_gamma(omega, eta, domain, DEFAULT_REFINE_TOL)?;
    let tau_res = compute_tau(eta, domain, DEFAULT_REFINE_TOL)?;
    let gamma = gamma_res.value;
    let tau = tau_res.value;
    let mut flags = Vec::new();
    if !gamma_res.site.trusted() {
        flags.push(format!("gamma {}", gamma_res.site));
    }
    if !tau_res.site.trusted() {
        flags.push(format!("tau {}", tau_res.site));
    }
    let order_ok = tau >= 0.5 * gamma && gamma >= 0.0;
    if !order_ok {
        flags.push(format!(
            "hypothesis tau >= gamma/2 >= 0 fails: tau = {tau:.6e}, gamma = {gamma:.6e}"
        ));
    }
    let valid = order_ok && gamma_res.site.trusted() && tau_res.site.trusted();
    let c = tau - 0.5 * gamma;
    Ok(WeightAnalysis {
        omega_text: omega.to_text(),
        eta_text: eta.to_text(),
        gamma,
        tau,
        gamma_site: gamma_res.site,
        tau_site: tau_res.site,
        valid,
        sharp_constant: c * c,
        flags,
    })
}

/// Built-in weight pairs, all with `omega = eta`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum WeightPreset {
    /// `omega = eta = exp(r)`: gamma = 0, tau = e, constant e^2.
    Exp,
    /// `omega = eta = (1+r)^a`: gamma = 0, tau = a^a/(a-1)^(a-1);
    /// minimizers require `a > 3`.
    Pol { a: f64 },
    /// `omega = eta = r`: gamma = 0, tau = 1, constant exactly 1.
    Kato,
}

impl WeightPreset {
    pub fn name(&self) -> String {
        match self {
            WeightPreset::Exp => "exp".into(),
            WeightPreset::Pol { a } => format!("pol(a={a})"),
            WeightPreset::Kato => "kato".into(),
        }
    }

    pub fn omega_text(&self) -> String {
        match self {
            WeightPreset::Exp => "exp(r)".into(),
            WeightPreset::Pol { a } => format!("(1+r)^{a}"),
            WeightPreset::Kato => "r".into(),
        }
    }

    pub fn eta_text(&self) -> String {
        self.omega_text()
    }

    pub fn omega(&self) -> WeightExpr {
        parse_weight(&self.omega_text()).expect("preset text parses")
    }

    pub fn eta(&self) -> WeightExpr {
        self.omega()
    }

    /// Radius attaining `tau`, used as a mandatory quadrature panel split.
    pub fn tau_radius(&self) -> Option<f64> {
        match self {
            WeightPreset::Exp => Some(1.0),
            WeightPreset::Pol { a } => Some(1.0 / (a - 1.0)),
            WeightPreset::Kato => None,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::E;

    const DOM: (f64, f64) = DEFAULT_DOMAIN;

    #[test]
    fn gamma_vanishes_exactly_when_weights_coincide() {
        for text in ["exp(r)", "(1+r)^4", "r", "r^2+exp(r)/(1+r)"] {
            let w = parse_weight(text).unwrap();
            let res = compute_gamma(&w, &w, DOM, 1e-10).unwrap();
            assert_eq!(res.value, 0.0, "gamma for omega = eta = {text}");
        }
    }

    #[test]
    fn gamma_of_r_squared_against_r_is_one() {
        let omega = parse_weight("r^2").unwrap();
        let eta = parse_weight("r").unwrap();
        let res = compute_gamma(&omega, &eta, DOM, 1e-10).unwrap();
        assert!((res.value - 1.0).abs() < 1e-12);
        assert_eq!(res.site, ExtremumSite::Constant);
    }

    #[test]
    fn tau_of_exponential_weight_is_e_at_one() {
        let eta = parse_weight("exp(r)").unwrap();
        let res = compute_tau(&eta, DOM, 1e-10).unwrap();
        assert!((res.value - E).abs() < 1e-9, "tau = {}", res.value);
        match res.site {
            ExtremumSite::Interior { r } => assert!((r - 1.0).abs() < 1e-6),
            other => panic!("expected interior, got {other:?}"),
        }
    }

    #[test]
    fn tau_of_quartic_weight_is_256_over_27_at_one_third() {
        let eta = parse_weight("(1+r)^4").unwrap();
        let res = compute_tau(&eta, DOM, 1e-10).unwrap();
        assert!((res.value - 256.0 / 27.0).abs() < 1e-9, "tau = {}", res.value);
        match res.site {
            ExtremumSite::Interior { r } => assert!((r - 1.0 / 3.0).abs() < 1e-6),
            other => panic!("expected interior, got {other:?}"),
        }
    }

    #[test]
    fn tau_of_identity_weight_is_exactly_one() {
        let eta = parse_weight("r").unwrap();
        let res = compute_tau(&eta, DOM, 1e-10).unwrap();
        assert_eq!(res.value, 1.0);
        assert_eq!(res.site, ExtremumSite::Constant);
    }

    #[test]
    fn tau_of_inverse_weight_is_flagged_divergent() {
        // eta = 1/r: eta/r = r^-2 trends to 0 at the outer boundary.
        let eta = parse_weight("1/r").unwrap();
        let res = compute_tau(&eta, DOM, 1e-10).unwrap();
        assert!(matches!(res.site, ExtremumSite::Divergent { .. }));
        let analysis = analyze_pair(&eta, &eta, DOM).unwrap();
        assert!(!analysis.valid);
        assert!(!analysis.flags.is_empty());
    }

    #[test]
    fn analyze_pair_matches_preset_constants() {
        let exp = parse_weight("exp(r)").unwrap();
        let a = analyze_pair(&exp, &exp, DOM).unwrap();
        assert_eq!(a.gamma, 0.0);
        assert!((a.tau - E).abs() < 1e-9);
        assert!(a.valid);
        assert!((a.sharp_constant - E * E).abs() < 1e-8);

        let r = parse_weight("r").unwrap();
        let a = analyze_pair(&r, &r, DOM).unwrap();
        assert_eq!(a.gamma, 0.0);
        assert_eq!(a.tau, 1.0);
        assert!(a.valid);
        assert_eq!(a.sharp_constant, 1.0);

        let r2 = parse_weight("r^2").unwrap();
        let a = analyze_pair(&r2, &r, DOM).unwrap();
        assert!((a.gamma - 1.0).abs() < 1e-12);
        assert!((a.tau - 1.0).abs() < 1e-12);
        assert!(a.valid);
        assert!((a.sharp_constant - 0.25).abs() < 1e-12);
    }

    #[test]
    fn log_weight_fails_positivity() {
        let w = parse_weight("log(r)").unwrap();
        assert!(matches!(
            check_positive_on_grid(&w, DOM, 512),
            Err(WeightError::NonPositive { .. })
        ));
    }

    #[test]
    fn doubling_density_moves_extrema_monotonically() {
        // Denser sampling can only raise a sup estimate / lower an inf
        // estimate, up to the refinement tolerance.
        let omega = parse_weight("exp(r)*(1+r)^2").unwrap();
        let eta = parse_weight("(1+r)^3").unwrap();
        let g1 = compute_gamma(&omega, &eta, DOM, 1e-10).unwrap().value;
        let t1 = compute_tau(&eta, DOM, 1e-10).unwrap().value;
        let g2 = {
            let domega = omega.differentiate();
            let deta = eta.differentiate();
            let f = |r: f64| {
                ((domega.eval(r) * eta.eval(r) - omega.eval(r) * deta.eval(r)) / omega.eval(r))
                    .abs()
            };
            scan_extremum(f, DOM.0, DOM.1, 2 * DEFAULT_GRID_POINTS, true, 1e-10).value
        };
        let t2 = {
            let f = |r: f64| eta.eval(r) / r;
            scan_extremum(f, DOM.0, DOM.1, 2 * DEFAULT_GRID_POINTS, false, 1e-10).value
        };
        assert!(g2 >= g1 - 1e-9 * g1.abs().max(1.0));
        assert!(t2 <= t1 + 1e-9 * t1.abs().max(1.0));
    }

    #[test]
    fn preset_texts_parse_and_analyze() {
        for preset in [
            WeightPreset::Exp,
            WeightPreset::Pol { a: 4.0 },
            WeightPreset::Kato,
        ] {
            let w = preset.omega();
            let a = analyze_pair(&w, &w, DOM).unwrap();
            assert!(a.valid, "{} should be valid", preset.name());
            if let Some(rt) = preset.tau_radius() {
                if let ExtremumSite::Interior { r } = a.tau_site {
                    assert!((r - rt).abs() < 1e-6);
                }
            }
        }
    }

    #[test]
    fn spec_derived_oracle_symbolic_vs_central_difference() {
        // Deterministic sample trees; central difference with
        // h = 1e-6 * (1 + r), compared at 100 radii.
        let trees = [
            "exp(r)/(1+r)^2",
            "r^3+2*r/(1+r)",
            "log(1+r^2)*exp(0-r)",
            "(1+r)^-2*exp(r/(1+r))",
            "r^0.5+1/(1+r)^1.5",
        ];
        for text in trees {
            let f = parse_weight(text).unwrap();
            let df = f.differentiate();
            for i in 0..100 {
                let r = 10f64.powf(-2.0 + 4.0 * i as f64 / 99.0);
                let h = 1e-6 * (1.0 + r);
                let fd = (f.eval(r + h) - f.eval(r - h)) / (2.0 * h);
                let sym = df.eval(r);
                let scale = sym.abs().max(fd.abs()).max(1.0);
                assert!(
                    (sym - fd).abs() <= 1e-6 * scale,
                    "{text} at r = {r}: sym {sym} vs fd {fd}"
                );
            }
        }
    }
}
