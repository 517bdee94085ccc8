//! Minimal complex 2x2 matrix arithmetic.
//!
//! Everything in this crate lives on a single qubit, so a fixed-size matrix
//! type with a closed-form Hermitian eigendecomposition beats a general
//! linear-algebra dependency.

use num_complex::Complex64;
use std::ops::{Add, Mul, Neg, Sub};

pub const I: Complex64 = Complex64::new(0.0, 1.0);

/// Complex 2x2 matrix, row-major.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Mat2 {
    pub e: [[Complex64; 2]; 2],
}

impl Mat2 {
    pub fn new(a: Complex64, b: Complex64, c: Complex64, d: Complex64) -> Self {
        Self {
            e: [[a, b], [c, d]],
        }
    }

    pub fn zero() -> Self {
        Self::from_real(0.0, 0.0, 0.0, 0.0)
    }

    pub fn identity() -> Self {
        Self::from_real(1.0, 0.0, 0.0, 1.0)
    }

    pub fn from_real(a: f64, b: f64, c: f64, d: f64) -> Self {
        Self::new(
            Complex64::new(a, 0.0),
            Complex64::new(b, 0.0),
            Complex64::new(c, 0.0),
            Complex64::new(d, 0.0),
        )
    }

    /// diag(a, d)
    pub fn diag(a: f64, d: f64) -> Self {
        Self::from_real(a, 0.0, 0.0, d)
    }

    pub fn sigma_x() -> Self {
        Self::from_real(0.0, 1.0, 1.0, 0.0)
    }

    pub fn sigma_y() -> Self {
        Self::new(
            Complex64::new(0.0, 0.0),
            Complex64::new(0.0, -1.0),
            Complex64::new(0.0, 1.0),
            Complex64::new(0.0, 0.0),
        )
    }

    pub fn sigma_z() -> Self {
        Self::from_real(1.0, 0.0, 0.0, -1.0)
    }

    /// Lowering operator in the (excited, ground) basis: |g><e|.
    pub fn sigma_minus() -> Self {
        Self::from_real(0.0, 0.0, 1.0, 0.0)
    }

    /// Raising operator in the (excited, ground) basis: |e><g|.
    pub fn sigma_plus() -> Self {
        Self::from_real(0.0, 1.0, 0.0, 0.0)
    }

    pub fn trace(&self) -> Complex64 {
        self.e[0][0] + self.e[1][1]
    }

    /// Conjugate transpose.
    pub fn adjoint(&self) -> Self {
        Self::new(
            self.e[0][0].conj(),
            self.e[1][0].conj(),
            self.e[0][1].conj(),
            self.e[1][1].conj(),
        )
    }

    pub fn scale(&self, s: f64) -> Self {
        self.scale_c(Complex64::new(s, 0.0))
    }

    pub fn scale_c(&self, s: Complex64) -> Self {
        let mut out = *self;
        for r in 0..2 {
            for c in 0..2 {
                out.e[r][c] *= s;
            }
        }
        out
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.e
            .iter()
            .flatten()
            .map(|z| z.norm_sqr())
            .sum::<f64>()
            .sqrt()
    }

    pub fn max_abs(&self) -> f64 {
        self.e
            .iter()
            .flatten()
            .map(|z| z.norm())
            .fold(0.0, f64::max)
    }

    pub fn commutator(&self, other: &Self) -> Self {
        *self * *other - *other * *self
    }

    pub fn anticommutator(&self, other: &Self) -> Self {
        *self * *other + *other * *self
    }

    /// Deviation from Hermiticity, ||A - A^dag||_F.
    pub fn hermiticity_defect(&self) -> f64 {
        (*self - self.adjoint()).frobenius_norm()
    }

    /// Eigendecomposition of a Hermitian matrix.
    ///
    /// Returns eigenvalues in descending order together with orthonormal
    /// eigenvectors as columns, so `A v_i = lam_i v_i`. Off-Hermitian parts
    /// of the input are ignored (only the upper triangle and the real
    /// diagonal are read).
    pub fn eigh(&self) -> ([f64; 2], [[Complex64; 2]; 2]) {
        let a = self.e[0][0].re;
        let d = self.e[1][1].re;
        let c = self.e[0][1];
        let mean = 0.5 * (a + d);
        let half = 0.5 * (a - d);
        let r = (half * half + c.norm_sqr()).sqrt();
        let evals = [mean + r, mean - r];

        if r == 0.0 {
            return (
                evals,
                [
                    [Complex64::new(1.0, 0.0), Complex64::new(0.0, 0.0)],
                    [Complex64::new(0.0, 0.0), Complex64::new(1.0, 0.0)],
                ],
            );
        }
        if c.norm() == 0.0 {
            // already diagonal; order by eigenvalue
            return if a >= d {
                (
                    evals,
                    [
                        [Complex64::new(1.0, 0.0), Complex64::new(0.0, 0.0)],
                        [Complex64::new(0.0, 0.0), Complex64::new(1.0, 0.0)],
                    ],
                )
            } else {
                (
                    evals,
                    [
                        [Complex64::new(0.0, 0.0), Complex64::new(1.0, 0.0)],
                        [Complex64::new(1.0, 0.0), Complex64::new(0.0, 0.0)],
                    ],
                )
            };
        }
        // (H - lam_+) v = 0  =>  v_+ = (c, r - half) up to normalization;
        // v_- is its orthogonal complement.
        let v0 = c;
        let v1 = Complex64::new(r - half, 0.0);
        let norm = (v0.norm_sqr() + v1.norm_sqr()).sqrt();
        let vp = [v0 / norm, v1 / norm];
        let vm = [-v1.conj() / norm, v0.conj() / norm];
        (evals, [[vp[0], vm[0]], [vp[1], vm[1]]])
    }

    /// Eigenvalues of a Hermitian matrix, descending.
    pub fn eigvals_hermitian(&self) -> [f64; 2] {
        self.eigh().0
    }
}

impl Add for Mat2 {
    type Output = Mat2;
    fn add(self, rhs: Mat2) -> Mat2 {
        let mut out = self;
        for r in 0..2 {
            for c in 0..2 {
                out.e[r][c] += rhs.e[r][c];
            }
        }
        out
    }
}

impl Sub for Mat2 {
    type Output = Mat2;
    fn sub(self, rhs: Mat2) -> Mat2 {
        let mut out = self;
        for r in 0..2 {
            for c in 0..2 {
                out.e[r][c] -= rhs.e[r][c];
            }
        }
        out
    }
}

impl Neg for Mat2 {
    type Output = Mat2;
    fn neg(self) -> Mat2 {
        self.scale(-1.0)
    }
}

impl Mul for Mat2 {
    type Output = Mat2;
    fn mul(self, rhs: Mat2) -> Mat2 {
        let mut out = Mat2::zero();
        for r in 0..2 {
            for c in 0..2 {
                out.e[r][c] = self.e[r][0] * rhs.e[0][c] + self.e[r][1] * rhs.e[1][c];
            }
        }
        out
    }
}
