//! Small dense 2×2 complex matrices.
//!
//! Everything spectral in this crate reduces to 2×2 blocks, so these helpers
//! are written out explicitly instead of pulling in a general matrix type.
//! The operator norm uses the closed form for singular values of a 2×2
//! matrix, so no iteration is involved anywhere.

use num_complex::Complex64;
use std::ops::{Add, Mul, Neg, Sub};

pub type C64 = Complex64;

/// Column-vector in ℂ².
pub type Vec2 = [C64; 2];

/// Dense 2×2 complex matrix, row-major.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Mat2 {
    pub e: [[C64; 2]; 2],
}

pub const ZERO: C64 = C64::new(0.0, 0.0);
pub const ONE: C64 = C64::new(1.0, 0.0);
pub const I: C64 = C64::new(0.0, 1.0);

impl Mat2 {
    pub fn new(c00: C64, c01: C64, c10: C64, c11: C64) -> Self {
        Mat2 {
            e: [[c00, c01], [c10, c11]],
        }
    }

    pub fn identity() -> Self {
        Mat2::new(ONE, ZERO, ZERO, ONE)
    }

    pub fn zero() -> Self {
        Mat2::new(ZERO, ZERO, ZERO, ZERO)
    }

    pub fn diag(d0: C64, d1: C64) -> Self {
        Mat2::new(d0, ZERO, ZERO, d1)
    }

    /// Rank-one matrix |x⟩⟨y| (conjugates `y`).
    pub fn outer(x: Vec2, y: Vec2) -> Self {
        Mat2::new(
            x[0] * y[0].conj(),
            x[0] * y[1].conj(),
            x[1] * y[0].conj(),
            x[1] * y[1].conj(),
        )
    }

    pub fn adjoint(&self) -> Self {
        Mat2::new(
            self.e[0][0].conj(),
            self.e[1][0].conj(),
            self.e[0][1].conj(),
            self.e[1][1].conj(),
        )
    }

    pub fn det(&self) -> C64 {
        self.e[0][0] * self.e[1][1] - self.e[0][1] * self.e[1][0]
    }

    pub fn trace(&self) -> C64 {
        self.e[0][0] + self.e[1][1]
    }

    pub fn scale(&self, s: C64) -> Self {
        Mat2::new(
            s * self.e[0][0],
            s * self.e[0][1],
            s * self.e[1][0],
            s * self.e[1][1],
        )
    }

    pub fn mul_vec(&self, v: Vec2) -> Vec2 {
        [
            self.e[0][0] * v[0] + self.e[0][1] * v[1],
            self.e[1][0] * v[0] + self.e[1][1] * v[1],
        ]
    }

    /// Squared Frobenius norm.
    pub fn frob_sq(&self) -> f64 {
        self.e
            .iter()
            .flatten()
            .map(|z| z.norm_sqr())
            .sum()
    }

    /// Operator norm (largest singular value), in closed form:
    /// σ² solves σ⁴ − ‖A‖_F² σ² + |det A|² = 0.
    pub fn op_norm(&self) -> f64 {
        let t = self.frob_sq();
        let d = self.det().norm_sqr();
        let disc = (t * t - 4.0 * d).max(0.0);
        (0.5 * (t + disc.sqrt())).sqrt()
    }

    /// ‖A*A − I‖ in operator norm; zero exactly when A is unitary.
    pub fn unitarity_defect(&self) -> f64 {
        (self.adjoint() * *self - Mat2::identity()).op_norm()
    }

    /// Max entrywise absolute difference.
    pub fn max_abs_diff(&self, other: &Mat2) -> f64 {
        let d = *self - *other;
        d.e.iter()
            .flatten()
            .map(|z| z.norm())
            .fold(0.0, f64::max)
    }
}

impl Add for Mat2 {
    type Output = Mat2;
    fn add(self, rhs: Mat2) -> Mat2 {
        Mat2::new(
            self.e[0][0] + rhs.e[0][0],
            self.e[0][1] + rhs.e[0][1],
            self.e[1][0] + rhs.e[1][0],
            self.e[1][1] + rhs.e[1][1],
        )
    }
}

impl Sub for Mat2 {
    type Output = Mat2;
    fn sub(self, rhs: Mat2) -> Mat2 {
        Mat2::new(
            self.e[0][0] - rhs.e[0][0],
            self.e[0][1] - rhs.e[0][1],
            self.e[1][0] - rhs.e[1][0],
            self.e[1][1] - rhs.e[1][1],
        )
    }
}

impl Neg for Mat2 {
    type Output = Mat2;
    fn neg(self) -> Mat2 {
        self.scale(C64::new(-1.0, 0.0))
    }
}

impl Mul for Mat2 {
    type Output = Mat2;
    fn mul(self, rhs: Mat2) -> Mat2 {
        let a = &self.e;
        let b = &rhs.e;
        Mat2::new(
            a[0][0] * b[0][0] + a[0][1] * b[1][0],
            a[0][0] * b[0][1] + a[0][1] * b[1][1],
            a[1][0] * b[0][0] + a[1][1] * b[1][0],
            a[1][0] * b[0][1] + a[1][1] * b[1][1],
        )
    }
}

pub fn vec2_norm(v: Vec2) -> f64 {
    (v[0].norm_sqr() + v[1].norm_sqr()).sqrt()
}

pub fn vec2_sub(a: Vec2, b: Vec2) -> Vec2 {
    [a[0] - b[0], a[1] - b[1]]
}

pub fn vec2_scale(s: C64, v: Vec2) -> Vec2 {
    [s * v[0], s * v[1]]
}

/// ⟨a, b⟩ with the convention of conjugating the first argument.
pub fn vec2_dot(a: Vec2, b: Vec2) -> C64 {
    a[0].conj() * b[0] + a[1].conj() * b[1]
}
