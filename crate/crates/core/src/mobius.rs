//! Complex scalars and unimodular 2×2 matrices acting as Möbius transformations.
//!
//! Only the sign-invariant quantities `β = tr² − 4` and `γ = tr[f,g] − 2` are
//! meant to leave this module as canonical data; a raw trace is defined only
//! up to the PSL sign `M ↦ −M`.

use std::fmt;
use std::ops::{Mul, Neg};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::tol;

pub type Complex = num_complex::Complex64;

pub(crate) const ZERO: Complex = Complex::new(0.0, 0.0);
pub(crate) const ONE: Complex = Complex::new(1.0, 0.0);

pub(crate) fn c(re: f64, im: f64) -> Complex {
    Complex::new(re, im)
}

pub(crate) fn real(re: f64) -> Complex {
    Complex::new(re, 0.0)
}

pub fn is_finite(z: Complex) -> bool {
    z.re.is_finite() && z.im.is_finite()
}

pub(crate) fn ensure_finite(z: Complex, what: &'static str) -> Result<Complex> {
    if is_finite(z) {
        Ok(z)
    } else {
        Err(Error::NonFinite(what))
    }
}

/// Möbius class of a non-identity element.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum ElementClass {
    Identity,
    Parabolic,
    Elliptic,
    Loxodromic,
}

/// Row-major matrix `[[a, b], [c, d]]`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Matrix2 {
    pub a: Complex,
    pub b: Complex,
    pub c: Complex,
    pub d: Complex,
}

impl Matrix2 {
    pub const IDENTITY: Matrix2 = Matrix2 {
        a: ONE,
        b: ZERO,
        c: ZERO,
        d: ONE,
    };

    pub const fn new(a: Complex, b: Complex, c: Complex, d: Complex) -> Self {
        Matrix2 { a, b, c, d }
    }

    /// Matrix with real entries.
    pub fn real(a: f64, b: f64, c: f64, d: f64) -> Self {
        Matrix2::new(real(a), real(b), real(c), real(d))
    }

    pub fn diagonal(lambda: Complex) -> Self {
        Matrix2::new(lambda, ZERO, ZERO, lambda.inv())
    }

    pub fn det(&self) -> Complex {
        self.a * self.d - self.b * self.c
    }

    /// Trace of this particular lift; only defined up to sign in PSL(2,ℂ).
    pub fn trace(&self) -> Complex {
        self.a + self.d
    }

    /// `β = tr² − 4`, invariant under `M ↦ −M`.
    pub fn beta(&self) -> Complex {
        let t = self.trace();
        t * t - 4.0
    }

    pub fn is_unimodular(&self) -> bool {
        (self.det() - ONE).norm() <= tol::DET
    }

    pub fn is_finite(&self) -> bool {
        [self.a, self.b, self.c, self.d].into_iter().all(is_finite)
    }

    /// Largest entrywise distance to `other`.
    pub fn max_abs_diff(&self, other: &Matrix2) -> f64 {
        [
            self.a - other.a,
            self.b - other.b,
            self.c - other.c,
            self.d - other.d,
        ]
        .iter()
        .map(|z| z.norm())
        .fold(0.0, f64::max)
    }

    /// Inverse of a unimodular matrix, `[[d, −b], [−c, a]]`.
    pub fn inverse(&self) -> Result<Matrix2> {
        let drift = (self.det() - ONE).norm();
        if drift > tol::DET_INVERSE {
            return Err(Error::NonUnimodular(drift));
        }
        Ok(self.adjugate())
    }

    fn adjugate(&self) -> Matrix2 {
        Matrix2::new(self.d, -self.b, -self.c, self.a)
    }

    /// `xⁿ` by binary exponentiation; `x⁰ = I`.
    pub fn pow(&self, mut n: u64) -> Matrix2 {
        let mut base = *self;
        let mut acc = Matrix2::IDENTITY;
        while n > 0 {
            if n & 1 == 1 {
                acc = acc * base;
            }
            n >>= 1;
            if n > 0 {
                base = base * base;
            }
        }
        acc
    }

    /// Divides every entry by the principal square root of the determinant.
    pub fn normalize_det(&self) -> Result<Matrix2> {
        let det = self.det();
        if det.norm() < tol::SINGULAR {
            return Err(Error::SingularMatrix(det.norm()));
        }
        let s = det.sqrt();
        Ok(Matrix2::new(self.a / s, self.b / s, self.c / s, self.d / s))
    }

    pub fn conjugate_by(&self, h: &Matrix2) -> Matrix2 {
        *h * *self * h.adjugate()
    }

    pub fn classify(&self) -> ElementClass {
        let plus = self.max_abs_diff(&Matrix2::IDENTITY);
        let minus = (-*self).max_abs_diff(&Matrix2::IDENTITY);
        if plus.min(minus) <= tol::CLASS {
            return ElementClass::Identity;
        }
        let beta = self.beta();
        if beta.norm() <= tol::CLASS {
            ElementClass::Parabolic
        } else if beta.im.abs() <= tol::CLASS && beta.re >= -4.0 - tol::CLASS && beta.re < 0.0 {
            ElementClass::Elliptic
        } else {
            ElementClass::Loxodromic
        }
    }
}

impl Mul for Matrix2 {
    type Output = Matrix2;

    fn mul(self, y: Matrix2) -> Matrix2 {
        Matrix2::new(
            self.a * y.a + self.b * y.c,
            self.a * y.b + self.b * y.d,
            self.c * y.a + self.d * y.c,
            self.c * y.b + self.d * y.d,
        )
    }
}

impl Neg for Matrix2 {
    type Output = Matrix2;

    fn neg(self) -> Matrix2 {
        Matrix2::new(-self.a, -self.b, -self.c, -self.d)
    }
}

impl fmt::Display for Matrix2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[[{}, {}], [{}, {}]]", self.a, self.b, self.c, self.d)
    }
}

pub fn mat_mul(x: &Matrix2, y: &Matrix2) -> Matrix2 {
    *x * *y
}

pub fn mat_inverse(x: &Matrix2) -> Result<Matrix2> {
    x.inverse()
}

pub fn mat_power(x: &Matrix2, n: u64) -> Matrix2 {
    x.pow(n)
}

/// `[f, g] = f g f⁻¹ g⁻¹`, using adjugates as inverses (inputs are unimodular).
pub fn commutator(f: &Matrix2, g: &Matrix2) -> Matrix2 {
    *f * *g * f.adjugate() * g.adjugate()
}

pub fn classify(x: &Matrix2) -> ElementClass {
    x.classify()
}

pub fn normalize_det(x: &Matrix2) -> Result<Matrix2> {
    x.normalize_det()
}
