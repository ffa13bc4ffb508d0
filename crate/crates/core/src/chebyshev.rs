//! Chebyshev polynomials of the first kind over ℂ.
//!
//! `T₀ = 1`, `T₁ = z`, `Tₙ₊₁ = 2z Tₙ − Tₙ₋₁`, equivalently `Tₙ(cosh w) = cosh(nw)`.
//! The three-term recursion is the evaluation path used everywhere else in the
//! crate; [`cheb_closed`] exists to cross-check it.

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::mobius::{Complex, ONE};

/// Largest degree for which exact coefficients are generated.
pub const DEGREE_CAP: usize = 64;

/// Exact integer coefficients of `Tₙ`; `coeffs[k]` multiplies `zᵏ`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ChebCoeffs {
    pub n: usize,
    #[serde(serialize_with = "serialize_bigints")]
    pub coeffs: Vec<BigInt>,
}

fn serialize_bigints<S: serde::Serializer>(v: &[BigInt], s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_seq(v.iter().map(|c| c.to_string()))
}

impl ChebCoeffs {
    /// Horner evaluation at a complex point.
    pub fn eval(&self, z: Complex) -> Complex {
        self.coeffs.iter().rev().fold(Complex::new(0.0, 0.0), |acc, k| {
            acc * z + Complex::new(bigint_to_f64(k), 0.0)
        })
    }

    /// Exact Horner evaluation at an integer point.
    pub fn eval_int(&self, z: &BigInt) -> BigInt {
        self.coeffs.iter().rev().fold(BigInt::zero(), |acc, k| acc * z + k)
    }
}

pub(crate) fn bigint_to_f64(k: &BigInt) -> f64 {
    num_traits::ToPrimitive::to_f64(k).unwrap_or(f64::NAN)
}

/// `Tₙ(z)` by the three-term recursion.
pub fn cheb_recursive(n: usize, z: Complex) -> Complex {
    if n == 0 {
        return ONE;
    }
    let (mut prev, mut cur) = (ONE, z);
    for _ in 1..n {
        let next = 2.0 * z * cur - prev;
        prev = cur;
        cur = next;
    }
    cur
}

/// `Tₙ(z) = ½((z − √(z²−1))ⁿ + (z + √(z²−1))ⁿ)`.
///
/// Either square-root branch gives the same value, since swapping the
/// branch swaps the two summands.
pub fn cheb_closed(n: usize, z: Complex) -> Complex {
    let root = (z * z - 1.0).sqrt();
    let n = n as i32;
    0.5 * ((z - root).powi(n) + (z + root).powi(n))
}

/// Exact coefficients of `Tₙ`, generated by the recursion over big integers.
pub fn cheb_coeffs(n: usize) -> Result<ChebCoeffs> {
    if n > DEGREE_CAP {
        return Err(Error::DegreeCap {
            requested: n,
            cap: DEGREE_CAP,
        });
    }
    let mut prev: Vec<BigInt> = vec![BigInt::one()];
    if n == 0 {
        return Ok(ChebCoeffs { n, coeffs: prev });
    }
    let mut cur: Vec<BigInt> = vec![BigInt::zero(), BigInt::one()];
    for _ in 1..n {
        let mut next = vec![BigInt::zero(); cur.len() + 1];
        for (k, coef) in cur.iter().enumerate() {
            next[k + 1] += coef * 2;
        }
        for (k, coef) in prev.iter().enumerate() {
            next[k] -= coef;
        }
        prev = cur;
        cur = next;
    }
    Ok(ChebCoeffs { n, coeffs: cur })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mobius::{c, real};

    fn ints(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&k| BigInt::from(k)).collect()
    }

    #[test]
    fn recursion_values() {
        assert_eq!(cheb_recursive(0, c(7.0, 2.0)), ONE);
        assert_eq!(cheb_recursive(2, real(3.0)), real(17.0));
        assert_eq!(cheb_recursive(3, real(2.0)), real(26.0));
    }

    #[test]
    fn closed_form_values() {
        let z = c(0.3, 0.4);
        assert!((cheb_closed(1, z) - z).norm() < 1e-15);
        for n in 0..=64 {
            assert!((cheb_closed(n, ONE) - ONE).norm() < 1e-12, "n={n}");
        }
        let z = real(1.5);
        assert!((cheb_closed(5, z) - cheb_recursive(5, z)).norm() < 1e-12);
    }

    #[test]
    fn closed_form_is_branch_independent() {
        let z = c(0.7, -1.3);
        let root = (z * z - 1.0).sqrt();
        for n in [3, 8, 17] {
            let k = n as i32;
            let other = 0.5 * ((z + root).powi(k) + (z - root).powi(k));
            assert!((cheb_closed(n, z) - other).norm() <= 1e-12 * other.norm().max(1.0));
        }
    }

    #[test]
    fn coefficient_tables() {
        assert_eq!(cheb_coeffs(0).unwrap().coeffs, ints(&[1]));
        assert_eq!(cheb_coeffs(4).unwrap().coeffs, ints(&[1, 0, -8, 0, 8]));
        assert_eq!(
            cheb_coeffs(8).unwrap().coeffs,
            ints(&[1, 0, -32, 0, 160, 0, -256, 0, 128])
        );
        assert!(matches!(cheb_coeffs(65), Err(Error::DegreeCap { requested: 65, cap: 64 })));
    }

    #[test]
    fn coefficient_structure() {
        for n in 1..=DEGREE_CAP {
            let t = cheb_coeffs(n).unwrap();
            assert_eq!(t.coeffs.len(), n + 1);
            assert_eq!(t.coeffs[n], BigInt::one() << (n - 1));
            for (k, coef) in t.coeffs.iter().enumerate() {
                if (n - k) % 2 == 1 {
                    assert!(coef.is_zero(), "n={n} k={k}");
                }
            }
        }
    }

    #[test]
    fn coefficients_match_recursion_at_integers() {
        for n in 0..=20 {
            let t = cheb_coeffs(n).unwrap();
            for z in -3i64..=3 {
                let exact = t.eval_int(&BigInt::from(z));
                let rec = cheb_recursive(n, real(z as f64));
                assert_eq!(bigint_to_f64(&exact), rec.re, "n={n} z={z}");
            }
        }
    }
}
