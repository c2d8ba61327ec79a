//! Dense complex matrix kernel: Pauli and Dirac matrices, Hermiticity
//! predicates, and the commutator identity
//! `2 Re<A u, S u> = <[S, A] u, u>` for a symmetric `S` and an
//! anti-symmetric `A`.
//!
//! All built-in matrices have exact entries in `{0, +-1, +-i}`, so the
//! structural identities (anticommutators, squares) are tested with zero
//! tolerance.

use num_complex::Complex64;
use thiserror::Error;

/// Relative gate used by the Hermiticity predicates on user-supplied input:
/// max-entry deviation must not exceed `HERMITICITY_TOL * max_abs_entry`.
pub const HERMITICITY_TOL: f64 = 1e-12;

#[derive(Debug, Error)]
pub enum AlgebraError {
    #[error("matrix index {index} out of range 1..=3")]
    IndexOutOfRange { index: usize },
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("operator S is not Hermitian at tolerance {HERMITICITY_TOL:e}")]
    NotHermitian,
    #[error("operator A is not anti-Hermitian at tolerance {HERMITICITY_TOL:e}")]
    NotAntiHermitian,
}

/// Dense row-major complex matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct ComplexMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Complex64>,
}

impl ComplexMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        assert!(rows > 0 && cols > 0, "dims must be positive");
        ComplexMatrix {
            rows,
            cols,
            data: vec![Complex64::new(0.0, 0.0); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = Complex64::new(1.0, 0.0);
        }
        m
    }

    /// Build from nested rows; panics on ragged input.
    pub fn from_rows(rows: &[Vec<Complex64>]) -> Self {
        let r = rows.len();
        assert!(r > 0);
        let c = rows[0].len();
        assert!(c > 0 && rows.iter().all(|row| row.len() == c), "ragged rows");
        ComplexMatrix {
            rows: r,
            cols: c,
            data: rows.iter().flatten().copied().collect(),
        }
    }

    pub fn dims(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    /// Largest entry modulus.
    pub fn max_abs(&self) -> f64 {
        self.data.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    /// Frobenius norm.
    pub fn norm_frobenius(&self) -> f64 {
        self.data.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    pub fn is_finite(&self) -> bool {
        self.data.iter().all(|z| z.re.is_finite() && z.im.is_finite())
    }

    pub fn dagger(&self) -> ComplexMatrix {
        let mut out = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out[(j, i)] = self[(i, j)].conj();
            }
        }
        out
    }

    pub fn add(&self, other: &ComplexMatrix) -> ComplexMatrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| a + b)
            .collect();
        ComplexMatrix {
            rows: self.rows,
            cols: self.cols,
            data,
        }
    }

    pub fn sub(&self, other: &ComplexMatrix) -> ComplexMatrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| a - b)
            .collect();
        ComplexMatrix {
            rows: self.rows,
            cols: self.cols,
            data,
        }
    }

    pub fn scale(&self, s: Complex64) -> ComplexMatrix {
        ComplexMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|z| z * s).collect(),
        }
    }

    pub fn mul(&self, other: &ComplexMatrix) -> ComplexMatrix {
        assert_eq!(
            self.cols, other.rows,
            "mul dims: {}x{} * {}x{}",
            self.rows, self.cols, other.rows, other.cols
        );
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self[(i, k)];
                if a == Complex64::new(0.0, 0.0) {
                    continue;
                }
                for j in 0..other.cols {
                    out[(i, j)] += a * other[(k, j)];
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[Complex64]) -> Vec<Complex64> {
        assert_eq!(self.cols, v.len());
        (0..self.rows)
            .map(|i| (0..self.cols).map(|j| self[(i, j)] * v[j]).sum())
            .collect()
    }

    /// Anticommutator `{self, other} = self*other + other*self`.
    pub fn anticommutator(&self, other: &ComplexMatrix) -> ComplexMatrix {
        self.mul(other).add(&other.mul(self))
    }

    /// Commutator `[self, other] = self*other - other*self`.
    pub fn commutator(&self, other: &ComplexMatrix) -> ComplexMatrix {
        self.mul(other).sub(&other.mul(self))
    }

    /// Max-entry deviation from `self = self^dagger`.
    pub fn hermiticity_defect(&self) -> f64 {
        self.sub(&self.dagger()).max_abs()
    }

    /// Max-entry deviation from `self = -self^dagger`.
    pub fn antihermiticity_defect(&self) -> f64 {
        self.add(&self.dagger()).max_abs()
    }

    /// Hermitian up to `HERMITICITY_TOL * max_abs` (zero matrix counts).
    pub fn is_hermitian(&self) -> bool {
        self.is_square() && self.hermiticity_defect() <= HERMITICITY_TOL * self.max_abs().max(1e-300)
    }

    /// Anti-Hermitian up to the same relative gate.
    pub fn is_antihermitian(&self) -> bool {
        self.is_square()
            && self.antihermiticity_defect() <= HERMITICITY_TOL * self.max_abs().max(1e-300)
    }
}

impl std::ops::Index<(usize, usize)> for ComplexMatrix {
    type Output = Complex64;
    fn index(&self, (i, j): (usize, usize)) -> &Complex64 {
        debug_assert!(i < self.rows && j < self.cols);
        &self.data[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for ComplexMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Complex64 {
        debug_assert!(i < self.rows && j < self.cols);
        &mut self.data[i * self.cols + j]
    }
}

const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);
const I: Complex64 = Complex64::new(0.0, 1.0);

/// Pauli matrix `sigma_1`, `sigma_2`, or `sigma_3`.
pub fn pauli(index: usize) -> Result<ComplexMatrix, AlgebraError> {
    let rows = match index {
        1 => [[ZERO, ONE], [ONE, ZERO]],
        2 => [[ZERO, -I], [I, ZERO]],
        3 => [[ONE, ZERO], [ZERO, -ONE]],
        _ => return Err(AlgebraError::IndexOutOfRange { index }),
    };
    Ok(ComplexMatrix::from_rows(&[rows[0].to_vec(), rows[1].to_vec()]))
}

/// Dirac matrix `alpha_j` in the standard representation: off-diagonal
/// 2x2 blocks holding `sigma_j`.
pub fn dirac_alpha(index: usize) -> Result<ComplexMatrix, AlgebraError> {
    let s = pauli(index)?;
    let mut m = ComplexMatrix::zeros(4, 4);
    for i in 0..2 {
        for j in 0..2 {
            m[(i, j + 2)] = s[(i, j)];
            m[(i + 2, j)] = s[(i, j)];
        }
    }
    Ok(m)
}

/// Dirac matrix `beta = diag(I_2, -I_2)`.
pub fn dirac_beta() -> ComplexMatrix {
    let mut m = ComplexMatrix::zeros(4, 4);
    m[(0, 0)] = ONE;
    m[(1, 1)] = ONE;
    m[(2, 2)] = -ONE;
    m[(3, 3)] = -ONE;
    m
}

/// `<x, y> = sum conj(x_i) y_i`.
pub fn inner(x: &[Complex64], y: &[Complex64]) -> Complex64 {
    assert_eq!(x.len(), y.len());
    x.iter().zip(y).map(|(a, b)| a.conj() * b).sum()
}

pub fn vec_norm(x: &[Complex64]) -> f64 {
    x.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
}

/// Checks the identity `2 Re<A u, S u> = <[S, A] u, u>` for a Hermitian `S`
/// and an anti-Hermitian `A`, returning the absolute residual
/// `|2 Re<A u, S u> - <[S, A] u, u>|`. The residual is zero up to rounding
/// for any valid input.
///
/// Inputs that fail the symmetry predicates at the built-in tolerance are
/// rejected rather than silently evaluated.
pub fn commutator_identity_check(
    s: &ComplexMatrix,
    a: &ComplexMatrix,
    u: &[Complex64],
) -> Result<f64, AlgebraError> {
    if !s.is_square() || !a.is_square() || s.dims() != a.dims() || s.dims().0 != u.len() {
        return Err(AlgebraError::DimensionMismatch(format!(
            "S {:?}, A {:?}, u length {}",
            s.dims(),
            a.dims(),
            u.len()
        )));
    }
    if !s.is_hermitian() {
        return Err(AlgebraError::NotHermitian);
    }
    if !a.is_antihermitian() {
        return Err(AlgebraError::NotAntiHermitian);
    }
    let au = a.mul_vec(u);
    let su = s.mul_vec(u);
    let lhs = 2.0 * inner(&au, &su).re;
    let rhs = inner(&s.commutator(a).mul_vec(u), u);
    Ok(Complex64::new(lhs - rhs.re, -rhs.im).norm())
}

/// Scale against which the commutator residual should be measured:
/// `||S||_F ||A||_F ||u||^2`.
pub fn commutator_residual_scale(s: &ComplexMatrix, a: &ComplexMatrix, u: &[Complex64]) -> f64 {
    let un = vec_norm(u);
    s.norm_frobenius() * a.norm_frobenius() * un * un
}

/// Random Hermitian / anti-Hermitian pair plus vector, for randomized checks
/// of the commutator identity. Entries are Gaussian before
/// (anti-)symmetrization.
pub fn random_commutator_instance<R: rand::Rng>(
    rng: &mut R,
    dim: usize,
) -> (ComplexMatrix, ComplexMatrix, Vec<Complex64>) {
    let mut gauss = || {
        // Box-Muller.
        let u1: f64 = rng.gen_range(f64::MIN_POSITIVE..1.0);
        let u2: f64 = rng.gen_range(0.0..1.0);
        (-2.0 * u1.ln()).sqrt() * (2.0 * std::f64::consts::PI * u2).cos()
    };
    let mut random_matrix = |dim: usize| {
        let mut m = ComplexMatrix::zeros(dim, dim);
        for i in 0..dim {
            for j in 0..dim {
                m[(i, j)] = Complex64::new(gauss(), gauss());
            }
        }
        m
    };
    let g = random_matrix(dim);
    let s = g.add(&g.dagger()).scale(Complex64::new(0.5, 0.0));
    let h = random_matrix(dim);
    let a = h.sub(&h.dagger()).scale(Complex64::new(0.5, 0.0));
    let u = (0..dim).map(|_| Complex64::new(gauss(), gauss())).collect();
    (s, a, u)
}
