//! Adaptive Cash-Karp Runge-Kutta integration for the 2x2 radial systems,
//! with magnitude rescaling so that exponentially growing fundamental
//! solutions can be followed across the working domain. Scaled values carry a
//! cumulative `log_scale`; the represented solution is
//! `value * exp(log_scale)`.

/// State recorded at a requested radius.
#[derive(Debug, Clone, Copy)]
pub struct ScaledState {
    pub r: f64,
    /// `(f_plus, f_minus)` divided by `exp(log_scale)`.
    pub value: (f64, f64),
    pub log_scale: f64,
}

#[derive(Debug, Clone)]
pub struct IntegrationResult {
    pub samples: Vec<ScaledState>,
    /// Radius actually reached (equals the last target when `completed`).
    pub r_reached: f64,
    pub completed: bool,
    pub steps: usize,
}

const SAFETY: f64 = 0.9;
const MIN_FACTOR: f64 = 0.2;
const MAX_FACTOR: f64 = 5.0;
const RESCALE_THRESHOLD: f64 = 1e100;
const MAX_STEPS: usize = 2_000_000;

/// One Cash-Karp step: returns the 5th-order solution and the embedded
/// 4th/5th error estimate.
fn cash_karp_step<F: Fn(f64, [f64; 2]) -> [f64; 2]>(
    f: &F,
    t: f64,
    y: [f64; 2],
    h: f64,
) -> ([f64; 2], [f64; 2]) {
    let k1 = f(t, y);
    let add = |y: [f64; 2], terms: &[(f64, [f64; 2])]| {
        let mut out = y;
        for &(c, k) in terms {
            out[0] += h * c * k[0];
            out[1] += h * c * k[1];
        }
        out
    };
    let k2 = f(t + h / 5.0, add(y, &[(1.0 / 5.0, k1)]));
    let k3 = f(
        t + 3.0 * h / 10.0,
        add(y, &[(3.0 / 40.0, k1), (9.0 / 40.0, k2)]),
    );
    let k4 = f(
        t + 3.0 * h / 5.0,
        add(y, &[(3.0 / 10.0, k1), (-9.0 / 10.0, k2), (6.0 / 5.0, k3)]),
    );
    let k5 = f(
        t + h,
        add(
            y,
            &[
                (-11.0 / 54.0, k1),
                (5.0 / 2.0, k2),
                (-70.0 / 27.0, k3),
                (35.0 / 27.0, k4),
            ],
        ),
    );
    let k6 = f(
        t + 7.0 * h / 8.0,
        add(
            y,
            &[
                (1631.0 / 55296.0, k1),
                (175.0 / 512.0, k2),
                (575.0 / 13824.0, k3),
                (44275.0 / 110592.0, k4),
                (253.0 / 4096.0, k5),
            ],
        ),
    );
    let b5 = [
        37.0 / 378.0,
        0.0,
        250.0 / 621.0,
        125.0 / 594.0,
        0.0,
        512.0 / 1771.0,
    ];
    let b4 = [
        2825.0 / 27648.0,
        0.0,
        18575.0 / 48384.0,
        13525.0 / 55296.0,
        277.0 / 14336.0,
        1.0 / 4.0,
    ];
    let ks = [k1, k2, k3, k4, k5, k6];
    let mut y5 = y;
    let mut err = [0.0, 0.0];
    for i in 0..6 {
        y5[0] += h * b5[i] * ks[i][0];
        y5[1] += h * b5[i] * ks[i][1];
        err[0] += h * (b5[i] - b4[i]) * ks[i][0];
        err[1] += h * (b5[i] - b4[i]) * ks[i][1];
    }
    (y5, err)
}

/// Integrate `y' = f(r, y)` from `r0` through the increasing `targets`,
/// recording the (rescaled) state at each. Stops early on step-size
/// underflow or non-finite states.
pub fn integrate_outward<F: Fn(f64, [f64; 2]) -> [f64; 2]>(
    f: F,
    r0: f64,
    y0: [f64; 2],
    targets: &[f64],
    rel_tol: f64,
) -> IntegrationResult {
    let abs_tol = 1e-300;
    let mut r = r0;
    let mut y = y0;
    let mut log_scale = 0.0f64;
    let mut samples = Vec::with_capacity(targets.len());
    let mut h = (r0 * 1e-3).max(1e-12);
    let mut steps = 0usize;

    for &target in targets {
        debug_assert!(target >= r0);
        if target <= r {
            samples.push(ScaledState {
                r,
                value: (y[0], y[1]),
                log_scale,
            });
            continue;
        }
        loop {
            if steps >= MAX_STEPS || !y[0].is_finite() || !y[1].is_finite() || h <= f64::EPSILON * r
            {
                return IntegrationResult {
                    samples,
                    r_reached: r,
                    completed: false,
                    steps,
                };
            }
            let h_try = h.min(target - r);
            let (y_new, err) = cash_karp_step(&f, r, y, h_try);
            let scale0 = abs_tol + rel_tol * y[0].abs().max(y_new[0].abs());
            let scale1 = abs_tol + rel_tol * y[1].abs().max(y_new[1].abs());
            let err_ratio = (err[0] / scale0).abs().max((err[1] / scale1).abs());
            steps += 1;
            if err_ratio <= 1.0 {
                r += h_try;
                y = y_new;
                let norm = y[0].abs().max(y[1].abs());
                if norm > RESCALE_THRESHOLD {
                    y[0] /= norm;
                    y[1] /= norm;
                    log_scale += norm.ln();
                }
                let grow = if err_ratio > 0.0 {
                    (SAFETY * err_ratio.powf(-0.2)).clamp(MIN_FACTOR, MAX_FACTOR)
                } else {
                    MAX_FACTOR
                };
                h = (h_try * grow).min(r.max(1.0));
                if (target - r) <= f64::EPSILON * target {
                    break;
                }
            } else {
                h = h_try * (SAFETY * err_ratio.powf(-0.25)).clamp(MIN_FACTOR, 1.0);
            }
        }
        samples.push(ScaledState {
            r,
            value: (y[0], y[1]),
            log_scale,
        });
    }
    IntegrationResult {
        r_reached: r,
        completed: true,
        steps,
        samples,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn integrates_decoupled_exponentials() {
        // y1' = y1, y2' = -2 y2.
        let f = |_r: f64, y: [f64; 2]| [y[0], -2.0 * y[1]];
        let targets: Vec<f64> = (1..=20).map(|i| 0.1 + 0.2 * i as f64).collect();
        let res = integrate_outward(f, 0.1, [1.0, 1.0], &targets, 1e-10);
        assert!(res.completed);
        for s in &res.samples {
            let expect0 = (s.r - 0.1).exp();
            let expect1 = (-2.0 * (s.r - 0.1)).exp();
            let got0 = s.value.0 * s.log_scale.exp();
            let got1 = s.value.1 * s.log_scale.exp();
            assert!((got0 - expect0).abs() < 1e-8 * expect0);
            assert!((got1 - expect1).abs() < 1e-8);
        }
    }

    #[test]
    fn rescaling_tracks_fast_growth() {
        // y' = 5 y across a long range overflows without rescaling.
        let f = |_r: f64, y: [f64; 2]| [5.0 * y[0], 5.0 * y[1]];
        let targets = [200.0];
        let res = integrate_outward(f, 0.0, [1.0, 1.0], &targets, 1e-9);
        assert!(res.completed);
        let s = &res.samples[0];
        // log of the true value: 5 * 200 = 1000.
        let log_value = s.value.0.ln() + s.log_scale;
        assert!((log_value - 1000.0).abs() < 1e-4 * 1000.0);
    }

    #[test]
    fn coupled_rotation_preserves_norm() {
        // y1' = y2, y2' = -y1: circle.
        let f = |_r: f64, y: [f64; 2]| [y[1], -y[0]];
        let res = integrate_outward(f, 0.0, [1.0, 0.0], &[3.0], 1e-11);
        assert!(res.completed);
        let s = &res.samples[0];
        assert!((s.value.0 - 3.0f64.cos()).abs() < 1e-9);
        assert!((s.value.1 + 3.0f64.sin()).abs() < 1e-9);
    }
}
