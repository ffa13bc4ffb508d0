//! Exact bivariate polynomials in `(γ, β)` with big-integer coefficients.
//!
//! Used to regenerate the trace polynomials from their recursions and compare
//! them, coefficient for coefficient, against the factored forms in
//! [`identities`].

pub mod identities;
mod parse;

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::chebyshev::{bigint_to_f64, ChebCoeffs};
use crate::error::{Error, Result};
use crate::mobius::{Complex, ZERO};
use crate::recursions::SubgroupFamily;

pub use parse::parse_poly;

/// Largest sequence index accepted by [`gen_sequence_poly`].
pub const SEQUENCE_CAP: usize = 32;

/// Sum of `coef · γⁱ βʲ`, keyed by `(i, j)`. Zero coefficients are never stored.
#[derive(Debug, Clone, PartialEq, Eq, Default, Hash)]
pub struct BivarPoly {
    terms: BTreeMap<(u32, u32), BigInt>,
}

impl BivarPoly {
    pub fn zero() -> Self {
        BivarPoly::default()
    }

    pub fn constant(k: impl Into<BigInt>) -> Self {
        BivarPoly::monomial(k, 0, 0)
    }

    pub fn monomial(k: impl Into<BigInt>, gamma_exp: u32, beta_exp: u32) -> Self {
        let mut p = BivarPoly::zero();
        p.add_term((gamma_exp, beta_exp), k.into());
        p
    }

    pub fn gamma() -> Self {
        BivarPoly::monomial(1, 1, 0)
    }

    pub fn beta() -> Self {
        BivarPoly::monomial(1, 0, 1)
    }

    /// Univariate polynomial in `γ` from coefficients indexed by power.
    pub fn from_gamma_coeffs(coeffs: &[BigInt]) -> Self {
        let mut p = BivarPoly::zero();
        for (k, c) in coeffs.iter().enumerate() {
            p.add_term((k as u32, 0), c.clone());
        }
        p
    }

    pub fn from_cheb(t: &ChebCoeffs) -> Self {
        BivarPoly::from_gamma_coeffs(&t.coeffs)
    }

    fn add_term(&mut self, exps: (u32, u32), coef: BigInt) {
        if coef.is_zero() {
            return;
        }
        let slot = self.terms.entry(exps).or_insert_with(BigInt::zero);
        *slot += coef;
        if slot.is_zero() {
            self.terms.remove(&exps);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&(u32, u32), &BigInt)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, gamma_exp: u32, beta_exp: u32) -> BigInt {
        self.terms
            .get(&(gamma_exp, beta_exp))
            .cloned()
            .unwrap_or_else(BigInt::zero)
    }

    /// Total degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().map(|(i, j)| i + j).max()
    }

    pub fn int_scale(&self, k: &BigInt) -> BivarPoly {
        if k.is_zero() {
            return BivarPoly::zero();
        }
        BivarPoly {
            terms: self.terms.iter().map(|(e, c)| (*e, c * k)).collect(),
        }
    }

    pub fn pow(&self, mut n: u32) -> BivarPoly {
        let mut base = self.clone();
        let mut acc = BivarPoly::constant(1);
        while n > 0 {
            if n & 1 == 1 {
                acc = &acc * &base;
            }
            n >>= 1;
            if n > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Horner evaluation: outer in `γ`, inner in `β`.
    pub fn eval(&self, gamma: Complex, beta: Complex) -> Complex {
        let Some(max_g) = self.terms.keys().map(|(i, _)| *i).max() else {
            return ZERO;
        };
        let mut rows: Vec<BTreeMap<u32, &BigInt>> = vec![BTreeMap::new(); max_g as usize + 1];
        for ((i, j), c) in &self.terms {
            rows[*i as usize].insert(*j, c);
        }
        rows.iter().rev().fold(ZERO, |acc, row| {
            acc * gamma + horner_beta(row, beta)
        })
    }

    /// Replaces `β` by `replacement` and expands.
    pub fn substitute_beta(&self, replacement: &BivarPoly) -> BivarPoly {
        let max_b = self.terms.keys().map(|(_, j)| *j).max().unwrap_or(0);
        let mut powers = Vec::with_capacity(max_b as usize + 1);
        powers.push(BivarPoly::constant(1));
        for k in 1..=max_b as usize {
            let next = &powers[k - 1] * replacement;
            powers.push(next);
        }
        let mut out = BivarPoly::zero();
        for ((i, j), c) in &self.terms {
            let gamma_part = BivarPoly::monomial(c.clone(), *i, 0);
            out = &out + &(&gamma_part * &powers[*j as usize]);
        }
        out
    }
}

fn horner_beta(row: &BTreeMap<u32, &BigInt>, beta: Complex) -> Complex {
    let Some(&max_b) = row.keys().next_back() else {
        return ZERO;
    };
    (0..=max_b).rev().fold(ZERO, |acc, j| {
        let c = row.get(&j).map(|c| bigint_to_f64(c)).unwrap_or(0.0);
        acc * beta + c
    })
}

impl Add for &BivarPoly {
    type Output = BivarPoly;

    fn add(self, rhs: &BivarPoly) -> BivarPoly {
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(*e, c.clone());
        }
        out
    }
}

impl Sub for &BivarPoly {
    type Output = BivarPoly;

    fn sub(self, rhs: &BivarPoly) -> BivarPoly {
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(*e, -c.clone());
        }
        out
    }
}

impl Mul for &BivarPoly {
    type Output = BivarPoly;

    fn mul(self, rhs: &BivarPoly) -> BivarPoly {
        let mut out = BivarPoly::zero();
        for ((i1, j1), c1) in &self.terms {
            for ((i2, j2), c2) in &rhs.terms {
                out.add_term((i1 + i2, j1 + j2), c1 * c2);
            }
        }
        out
    }
}

impl Neg for &BivarPoly {
    type Output = BivarPoly;

    fn neg(self) -> BivarPoly {
        BivarPoly {
            terms: self.terms.iter().map(|(e, c)| (*e, -c)).collect(),
        }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for BivarPoly {
            type Output = BivarPoly;
            fn $m(self, rhs: BivarPoly) -> BivarPoly {
                (&self).$m(&rhs)
            }
        }
    };
}

forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for BivarPoly {
    type Output = BivarPoly;
    fn neg(self) -> BivarPoly {
        -&self
    }
}

impl fmt::Display for BivarPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        // highest total degree first
        let mut terms: Vec<_> = self.terms.iter().collect();
        terms.sort_by(|a, b| (b.0 .0 + b.0 .1, b.0 .0).cmp(&(a.0 .0 + a.0 .1, a.0 .0)));
        for (k, ((i, j), c)) in terms.into_iter().enumerate() {
            let neg = c.is_negative();
            let mag = c.abs();
            match (k, neg) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            let bare = *i == 0 && *j == 0;
            if !mag.is_one() || bare {
                write!(f, "{mag}")?;
            }
            for (sym, e) in [("γ", *i), ("β", *j)] {
                match e {
                    0 => {}
                    1 => write!(f, "{sym}")?,
                    _ => write!(f, "{sym}^{e}")?,
                }
            }
        }
        Ok(())
    }
}

/// What [`gen_sequence_poly`] should iterate.
#[derive(Debug, Clone)]
pub enum SequenceSpec {
    /// The commutator component `γ` of the family's `n`th subgroup.
    Family(SubgroupFamily),
    /// `β(fⁿ)`.
    BetaPower,
    /// `aₙ^{u,v}` with polynomial parameters.
    Raw { u: BivarPoly, v: BivarPoly },
}

/// `aₙ^{u,v}` in the polynomial ring.
pub fn a_seq_poly(u: &BivarPoly, v: &BivarPoly, n: usize) -> BivarPoly {
    if n == 0 {
        return BivarPoly::zero();
    }
    let coef = u + &BivarPoly::constant(2);
    let two_v = v.int_scale(&BigInt::from(2));
    let (mut prev, mut cur) = (BivarPoly::zero(), v.clone());
    for _ in 1..n {
        let next = &(&(&coef * &cur) - &prev) + &two_v;
        prev = cur;
        cur = next;
    }
    cur
}

fn gamma() -> BivarPoly {
    BivarPoly::gamma()
}

fn beta() -> BivarPoly {
    BivarPoly::beta()
}

/// `γ − β − 4`, the value of `β(fg)` when `g` has order two.
pub fn beta_fg_poly() -> BivarPoly {
    &(&gamma() - &beta()) - &BivarPoly::constant(4)
}

/// Runs the family's recursion exactly.
pub fn gen_sequence_poly(spec: &SequenceSpec, n: usize) -> Result<BivarPoly> {
    if n > SEQUENCE_CAP {
        return Err(Error::DegreeCap {
            requested: n,
            cap: SEQUENCE_CAP,
        });
    }
    let (g, b) = (gamma(), beta());
    Ok(match spec {
        SequenceSpec::BetaPower => a_seq_poly(&b, &b, n),
        SequenceSpec::Raw { u, v } => a_seq_poly(u, v, n),
        SequenceSpec::Family(SubgroupFamily::PowerOfF) => a_seq_poly(&b, &g, n),
        SequenceSpec::Family(SubgroupFamily::ConjugatePower) => {
            let gn = a_seq_poly(&b, &g, n);
            let bn = a_seq_poly(&b, &b, n);
            &gn * &(&gn - &bn)
        }
        SequenceSpec::Family(SubgroupFamily::ProductPower) => a_seq_poly(&beta_fg_poly(), &g, n),
        SequenceSpec::Family(SubgroupFamily::CommutatorPower) => {
            let u = &g * &(&g + &BivarPoly::constant(4));
            let v = &g * &(&g - &b);
            a_seq_poly(&u, &v, n)
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mobius::{c, real};
    use crate::recursions::{gamma_commutator_power, gamma_fg_power, gamma_power, lambda_n};

    fn p(s: &str) -> BivarPoly {
        parse_poly(s).unwrap()
    }

    #[test]
    fn ring_operations() {
        assert!((&gamma() + &(-&gamma())).is_zero());
        let d = &gamma() - &beta();
        assert_eq!(&d * &d, p("g^2 - 2gb + b^2"));
        assert_eq!(&(&beta() + &BivarPoly::constant(4)) * &gamma(), p("gb + 4g"));
        assert_eq!(d.int_scale(&BigInt::from(0)), BivarPoly::zero());
        assert_eq!(d.int_scale(&BigInt::from(-3)), p("3b - 3g"));
        assert_eq!(d.pow(3), &(&d * &d) * &d);
    }

    #[test]
    fn evaluation() {
        assert_eq!(p("g(b+4)").eval(real(1.0), real(0.0)), real(4.0));
        let x = 0.801_937_74;
        let v = p("g(g-b-1)^2").eval(real(x), real(-3.0));
        assert!((v.re - x * (x + 2.0) * (x + 2.0)).abs() < 1e-12);
        assert!((v.re - 6.295).abs() < 1e-3);
        assert_eq!(BivarPoly::zero().eval(c(3.0, 1.0), c(-2.0, 5.0)), ZERO);
    }

    #[test]
    fn substitution() {
        let fg = beta_fg_poly();
        assert_eq!(p("b(b+4)").substitute_beta(&fg), p("(g-b-4)(g-b)"));
        assert_eq!(beta().substitute_beta(&beta()), beta());
        assert_eq!(p("(b+3)^2").substitute_beta(&fg), p("(g-b-1)^2"));
    }

    #[test]
    fn generated_sequences() {
        let fam = |f| SequenceSpec::Family(f);
        assert_eq!(
            gen_sequence_poly(&fam(SubgroupFamily::PowerOfF), 4).unwrap(),
            p("g(b+4)(b+2)^2")
        );
        assert_eq!(
            gen_sequence_poly(&fam(SubgroupFamily::CommutatorPower), 4).unwrap(),
            p("g(g-b)(g+2)^2(g^2+4g+2)^2")
        );
        for f in SubgroupFamily::ALL {
            assert!(gen_sequence_poly(&fam(f), 0).unwrap().is_zero());
        }
        assert!(matches!(
            gen_sequence_poly(&SequenceSpec::BetaPower, 33),
            Err(Error::DegreeCap { requested: 33, cap: 32 })
        ));
    }

    #[test]
    fn generated_polys_match_numeric_recursions() {
        let (g, b) = (c(0.9, -0.4), c(-1.7, 0.6));
        let fam = |f| SequenceSpec::Family(f);
        for n in 0..=10 {
            let rel = |x: Complex, y: Complex| (x - y).norm() / y.norm().max(1.0);
            let pf = gen_sequence_poly(&fam(SubgroupFamily::PowerOfF), n).unwrap();
            assert!(rel(pf.eval(g, b), gamma_power(g, b, n)) < 1e-9);
            let cp = gen_sequence_poly(&fam(SubgroupFamily::ConjugatePower), n).unwrap();
            // degree 4n with large mixed-sign coefficients; f64 evaluation loses digits
            assert!(rel(cp.eval(g, b), lambda_n(g, b, n)) < 1e-7);
            let pp = gen_sequence_poly(&fam(SubgroupFamily::ProductPower), n).unwrap();
            assert!(rel(pp.eval(g, b), gamma_fg_power(g, b, n)) < 1e-9);
            let kp = gen_sequence_poly(&fam(SubgroupFamily::CommutatorPower), n).unwrap();
            assert!(rel(kp.eval(g, b), gamma_commutator_power(g, b, n)) < 1e-9);
        }
    }

    #[test]
    fn display_round_trips_through_parser() {
        for s in ["g(g-b)(g+2)^2", "-3g^2b + 7", "0", "b - 1"] {
            let poly = p(s);
            let shown = poly.to_string();
            assert_eq!(parse_poly(&shown).unwrap(), poly, "{shown}");
        }
    }
}
