//! Orthonormal spherical harmonics `Y_n^l` with the Condon-Shortley phase,
//! evaluated through the stable normalized associated Legendre recurrence.
//!
//! The phase convention makes the spinor spherical harmonic coefficient
//! formulas valid verbatim, matching the standard relativistic quantum
//! mechanics reference.

use super::AngularError;
use num_complex::Complex64;
use std::f64::consts::PI;

/// Normalized associated Legendre `Pbar_n^m(cos theta)` for `m >= 0`,
/// including the Condon-Shortley `(-1)^m`, such that
/// `Y_n^m = Pbar_n^m(cos theta) e^{i m phi}`.
fn normalized_legendre(n: u32, m: u32, cos_theta: f64, sin_theta: f64) -> f64 {
    debug_assert!(m <= n);
    // Pbar_m^m by the diagonal recurrence; the leading minus carries the
    // Condon-Shortley phase.
    let mut pmm = (1.0 / (4.0 * PI)).sqrt();
    for k in 1..=m {
        let kf = k as f64;
        pmm *= -((2.0 * kf + 1.0) / (2.0 * kf)).sqrt() * sin_theta;
    }
    if n == m {
        return pmm;
    }
    // Pbar_{m+1}^m
    let mut p_prev = pmm;
    let mut p_curr = cos_theta * ((2 * m + 3) as f64).sqrt() * pmm;
    if n == m + 1 {
        return p_curr;
    }
    for deg in (m + 2)..=n {
        let df = deg as f64;
        let mf = m as f64;
        let a = ((4.0 * df * df - 1.0) / (df * df - mf * mf)).sqrt();
        let b = (((df - 1.0) * (df - 1.0) - mf * mf) / (4.0 * (df - 1.0) * (df - 1.0) - 1.0))
            .sqrt();
        let p_next = a * (cos_theta * p_curr - b * p_prev);
        p_prev = p_curr;
        p_curr = p_next;
    }
    p_curr
}

/// Spherical harmonic `Y_n^l(theta, phi)`, orthonormal on the unit sphere,
/// Condon-Shortley phase. Fails if `|l| > n`.
pub fn sph_harm(n: u32, l: i32, theta: f64, phi: f64) -> Result<Complex64, AngularError> {
    if l.unsigned_abs() > n {
        return Err(AngularError::OrderExceedsDegree { n, l });
    }
    let m = l.unsigned_abs();
    let (sin_t, cos_t) = theta.sin_cos();
    let p = normalized_legendre(n, m, cos_t, sin_t);
    let phase = Complex64::new(0.0, m as f64 * phi).exp();
    let y_pos = p * phase;
    if l >= 0 {
        Ok(y_pos)
    } else {
        // Y_n^{-m} = (-1)^m conj(Y_n^m)
        let sign = if m % 2 == 0 { 1.0 } else { -1.0 };
        Ok(sign * y_pos.conj())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn close(a: Complex64, b: Complex64, tol: f64) -> bool {
        (a - b).norm() <= tol
    }

    #[test]
    fn constant_mode_is_inverse_sqrt_4pi() {
        let y = sph_harm(0, 0, 1.234, 5.67).unwrap();
        assert!(close(
            y,
            Complex64::new(1.0 / (4.0 * PI).sqrt(), 0.0),
            1e-15
        ));
    }

    #[test]
    fn low_degree_closed_forms() {
        let theta: f64 = 1.1;
        let phi: f64 = 0.7;
        let (st, ct) = theta.sin_cos();

        let y10 = sph_harm(1, 0, theta, phi).unwrap();
        assert!(close(
            y10,
            Complex64::new((3.0 / (4.0 * PI)).sqrt() * ct, 0.0),
            1e-14
        ));

        // Condon-Shortley: Y_1^1 carries a leading minus.
        let y11 = sph_harm(1, 1, theta, phi).unwrap();
        let expected = -(3.0 / (8.0 * PI)).sqrt() * st * Complex64::new(0.0, phi).exp();
        assert!(close(y11, expected, 1e-14));

        let y1m1 = sph_harm(1, -1, theta, phi).unwrap();
        let expected = (3.0 / (8.0 * PI)).sqrt() * st * Complex64::new(0.0, -phi).exp();
        assert!(close(y1m1, expected, 1e-14));

        let y21 = sph_harm(2, 1, theta, phi).unwrap();
        let expected = -(15.0 / (8.0 * PI)).sqrt() * st * ct * Complex64::new(0.0, phi).exp();
        assert!(close(y21, expected, 1e-14));
    }

    #[test]
    fn order_beyond_degree_is_rejected() {
        assert!(sph_harm(0, 1, 0.3, 0.4).is_err());
        assert!(sph_harm(2, -3, 0.3, 0.4).is_err());
        assert!(sph_harm(2, 2, 0.3, 0.4).is_ok());
    }

    #[test]
    fn addition_theorem_sum_rule() {
        // sum_l |Y_n^l|^2 = (2n+1)/(4 pi) at any angle.
        for n in 0..=12u32 {
            for (theta, phi) in [(0.1, 0.0), (1.0, 2.0), (2.5, 4.0), (3.0, 1.2)] {
                let sum: f64 = (-(n as i32)..=n as i32)
                    .map(|l| sph_harm(n, l, theta, phi).unwrap().norm_sqr())
                    .sum();
                let expected = (2.0 * n as f64 + 1.0) / (4.0 * PI);
                assert!(
                    (sum - expected).abs() < 1e-12 * expected,
                    "n = {n}, theta = {theta}"
                );
            }
        }
    }
}
