//! Brute-force cross-check: realize a character as a concrete pair of
//! matrices, multiply words out, and compare traces against the recursions.
//!
//! Normal form: `f = [[s, 1], [0, 1/s]]` with `s − 1/s = √β`,
//! `g = [[a, 0], [c, 1/a]]` with `a − 1/a = √β̃`. Expanding the commutator
//! gives `tr[f,g] − 2 = c² + p·c` with `p = (s − 1/s)(a − 1/a)`, so `c` is a
//! root of `c² + p·c − γ = 0`.

use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::characters::{character_from_matrices, PrincipalCharacter};
use crate::error::{Error, Result};
use crate::mobius::{commutator, Complex, Matrix2, ONE, ZERO};
use crate::recursions::{
    beta_commutator, beta_fg_power, beta_power, gamma_commutator_power, gamma_fg_power,
    gamma_power, lambda_n, SubgroupFamily,
};
use crate::tol;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Realization {
    pub f: Matrix2,
    pub g: Matrix2,
    pub source: PrincipalCharacter,
    /// Largest deviation of the recomputed character from `source`.
    pub residual: f64,
}

/// Which root of the `c`-quadratic to take.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RootChoice {
    Larger,
    Smaller,
}

/// `x` with `x − 1/x = √β` (so `(x + 1/x)² = β + 4`).
fn diagonal_entry(beta: Complex) -> Complex {
    let root = beta.sqrt();
    let trace = (beta + 4.0).sqrt();
    // Both (t + √β)/2 and (−t + √β)/2 solve x − 1/x = √β; take the larger.
    let plus = (trace + root) / 2.0;
    let flipped = (root - trace) / 2.0;
    if plus.norm() >= flipped.norm() {
        plus
    } else {
        flipped
    }
}

pub fn realize(ch: &PrincipalCharacter) -> Result<Realization> {
    realize_with(ch, RootChoice::Larger)
}

pub fn realize_with(ch: &PrincipalCharacter, choice: RootChoice) -> Result<Realization> {
    if ch.is_degenerate() {
        return Err(Error::DegenerateCharacter);
    }
    let (f, s_diff) = if ch.beta_f.norm() <= tol::PARAB {
        (Matrix2::new(ONE, ONE, ZERO, ONE), ZERO)
    } else {
        let s = diagonal_entry(ch.beta_f);
        (Matrix2::new(s, ONE, ZERO, s.inv()), s - s.inv())
    };
    let a = diagonal_entry(ch.beta_g);
    let a_diff = a - a.inv();
    let p = s_diff * a_diff;
    let disc = (p * p + 4.0 * ch.gamma).sqrt();
    let (r1, r2) = ((-p + disc) / 2.0, (-p - disc) / 2.0);
    let (big, small) = if r1.norm() >= r2.norm() { (r1, r2) } else { (r2, r1) };
    let c = match choice {
        RootChoice::Larger => big,
        RootChoice::Smaller => small,
    };
    let g = Matrix2::new(a, ZERO, c, a.inv());
    let residual = character_from_matrices(&f, &g).max_abs_diff(ch);
    Ok(Realization {
        f,
        g,
        source: *ch,
        residual,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Letter {
    F,
    G,
    FInv,
    GInv,
}

/// A word in `f`, `g` and their inverses, evaluated left to right.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct Word {
    pub letters: Vec<Letter>,
}

impl Word {
    pub fn new(letters: Vec<Letter>) -> Self {
        Word { letters }
    }

    pub fn repeat(&self, n: usize) -> Word {
        Word::new(self.letters.repeat(n))
    }

    pub fn then(&self, other: &Word) -> Word {
        let mut letters = self.letters.clone();
        letters.extend_from_slice(&other.letters);
        Word::new(letters)
    }

    pub fn inverse(&self) -> Word {
        Word::new(
            self.letters
                .iter()
                .rev()
                .map(|l| match l {
                    Letter::F => Letter::FInv,
                    Letter::G => Letter::GInv,
                    Letter::FInv => Letter::F,
                    Letter::GInv => Letter::G,
                })
                .collect(),
        )
    }
}

/// `F`, `G` and lowercase `f`, `g` for the inverses.
impl FromStr for Word {
    type Err = Error;

    fn from_str(s: &str) -> Result<Word> {
        s.chars()
            .map(|ch| match ch {
                'F' => Ok(Letter::F),
                'G' => Ok(Letter::G),
                'f' => Ok(Letter::FInv),
                'g' => Ok(Letter::GInv),
                other => Err(Error::Parse(format!("bad letter `{other}` in word"))),
            })
            .collect::<Result<Vec<_>>>()
            .map(Word::new)
    }
}

impl fmt::Display for Word {
    fn fmt(&self, out: &mut fmt::Formatter<'_>) -> fmt::Result {
        for l in &self.letters {
            let ch = match l {
                Letter::F => 'F',
                Letter::G => 'G',
                Letter::FInv => 'f',
                Letter::GInv => 'g',
            };
            write!(out, "{ch}")?;
        }
        Ok(())
    }
}

pub fn word_eval(r: &Realization, w: &Word) -> Matrix2 {
    let f_inv = Matrix2::new(r.f.d, -r.f.b, -r.f.c, r.f.a);
    let g_inv = Matrix2::new(r.g.d, -r.g.b, -r.g.c, r.g.a);
    w.letters.iter().fold(Matrix2::IDENTITY, |acc, l| {
        acc * match l {
            Letter::F => r.f,
            Letter::G => r.g,
            Letter::FInv => f_inv,
            Letter::GInv => g_inv,
        }
    })
}

/// The generating pair of the `n`th subgroup of `family`, as words.
pub fn family_words(family: SubgroupFamily, n: usize) -> (Word, Word) {
    let f = Word::new(vec![Letter::F]);
    let g = Word::new(vec![Letter::G]);
    match family {
        SubgroupFamily::PowerOfF => (f.repeat(n), g),
        SubgroupFamily::ConjugatePower => {
            let fpow = f.repeat(n);
            let conj = g.then(&fpow).then(&g.inverse());
            (fpow, conj)
        }
        SubgroupFamily::ProductPower => (g.then(&f).repeat(n), f),
        SubgroupFamily::CommutatorPower => {
            let k = g.then(&f).then(&g.inverse()).then(&f.inverse());
            (k.repeat(n), f)
        }
    }
}

/// The recursion-side prediction for a family member, without the
/// elliptic-collapse guard of [`crate::recursions::subgroup_character`].
pub fn predicted_character(
    ch: &PrincipalCharacter,
    family: SubgroupFamily,
    n: usize,
) -> Result<PrincipalCharacter> {
    let (g, b) = (ch.gamma, ch.beta_f);
    Ok(match family {
        SubgroupFamily::PowerOfF => {
            PrincipalCharacter::new(gamma_power(g, b, n), beta_power(b, n), ch.beta_g)
        }
        SubgroupFamily::ConjugatePower => {
            let bn = beta_power(b, n);
            PrincipalCharacter::new(lambda_n(g, b, n), bn, bn)
        }
        SubgroupFamily::ProductPower => {
            if !ch.g_has_order_two() {
                return Err(Error::InapplicableFamily("ProductPower needs β(g) = −4".into()));
            }
            PrincipalCharacter::new(gamma_fg_power(g, b, n), beta_fg_power(g, b, n), b)
        }
        SubgroupFamily::CommutatorPower => PrincipalCharacter::new(
            gamma_commutator_power(g, b, n),
            beta_power(beta_commutator(g), n),
            b,
        ),
    })
}

fn rel_err(predicted: Complex, actual: Complex) -> f64 {
    (predicted - actual).norm() / actual.norm().max(1.0)
}

/// Largest relative error between the predicted and the matrix-computed
/// character of the family's `n`th subgroup.
pub fn check_identity(ch: &PrincipalCharacter, family: SubgroupFamily, n: usize) -> Result<f64> {
    let predicted = predicted_character(ch, family, n)?;
    let r = realize(ch)?;
    let (x, y) = family_words(family, n);
    let actual = character_from_matrices(&word_eval(&r, &x), &word_eval(&r, &y));
    Ok(rel_err(predicted.gamma, actual.gamma)
        .max(rel_err(predicted.beta_f, actual.beta_f))
        .max(rel_err(predicted.beta_g, actual.beta_g)))
}

/// `|β([g,f]) − γ(γ+4)|` computed from a realization.
pub fn commutator_beta_error(ch: &PrincipalCharacter) -> Result<f64> {
    let r = realize(ch)?;
    let k = commutator(&r.g, &r.f);
    Ok(rel_err(beta_commutator(ch.gamma), k.beta()))
}

/// `count` characters with every component modulus in `[0.1, 4]` and
/// uniformly random argument, reproducible from `seed`.
pub fn random_characters(count: usize, seed: u64) -> Vec<PrincipalCharacter> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut draw = || Complex::from_polar(rng.gen_range(0.1..=4.0), rng.gen_range(-PI..PI));
    (0..count)
        .map(|_| {
            let (g, b, bt) = (draw(), draw(), draw());
            PrincipalCharacter::new(g, b, bt)
        })
        .collect()
}

#[derive(Debug, Clone, Serialize)]
pub struct OracleFailure {
    pub family: &'static str,
    pub n: usize,
    pub character: PrincipalCharacter,
    pub error: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct OracleSummary {
    pub checks: usize,
    pub max_error: f64,
    pub failures: Vec<OracleFailure>,
}

/// Every family for `n = 1..=depth` over `chars`. `ProductPower` runs on the
/// order-two version of each character.
pub fn oracle_suite(chars: &[PrincipalCharacter], depth: usize, tolerance: f64) -> OracleSummary {
    let mut summary = OracleSummary { checks: 0, max_error: 0.0, failures: Vec::new() };
    for ch in chars {
        for family in SubgroupFamily::ALL {
            let ch = match family {
                SubgroupFamily::ProductPower => ch.with_order_two_g(),
                _ => *ch,
            };
            for n in 1..=depth {
                let error = check_identity(&ch, family, n).unwrap_or(f64::INFINITY);
                summary.checks += 1;
                summary.max_error = summary.max_error.max(error);
                if !(error <= tolerance) {
                    summary.failures.push(OracleFailure { family: family.name(), n, character: ch, error });
                }
            }
        }
    }
    summary
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mobius::{c, real};

    #[test]
    fn realizes_parabolic_pair() {
        let r = realize(&PrincipalCharacter::real(1.0, 0.0, 0.0)).unwrap();
        assert_eq!(r.f, Matrix2::real(1.0, 1.0, 0.0, 1.0));
        assert!(r.g.max_abs_diff(&Matrix2::real(1.0, 0.0, 1.0, 1.0)) < 1e-15);
        assert!(r.residual < 1e-15);
    }

    #[test]
    fn realizes_figure_eight() {
        let ch = PrincipalCharacter::new(c(0.5, 3f64.sqrt() / 2.0), ZERO, ZERO);
        let r = realize(&ch).unwrap();
        assert!((r.g.c * r.g.c - ch.gamma).norm() < 1e-12);
        assert!(r.residual <= 1e-12);
    }

    #[test]
    fn both_roots_realize_the_character() {
        let ch = PrincipalCharacter::new(c(0.3, -1.1), c(2.0, 0.7), c(-1.5, 0.2));
        for choice in [RootChoice::Larger, RootChoice::Smaller] {
            assert!(realize_with(&ch, choice).unwrap().residual < 1e-12);
        }
    }

    #[test]
    fn degenerate_is_rejected() {
        let err = realize(&PrincipalCharacter::real(0.0, 1.0, 1.0)).unwrap_err();
        assert_eq!(err, Error::DegenerateCharacter);
        assert!(check_identity(&PrincipalCharacter::real(0.0, 1.0, 1.0), SubgroupFamily::PowerOfF, 2).is_err());
    }

    #[test]
    fn words() {
        let ch = PrincipalCharacter::new(c(1.2, 0.4), c(0.5, -0.3), real(2.0));
        let r = realize(&ch).unwrap();
        assert_eq!(word_eval(&r, &"F".parse().unwrap()), r.f);
        let k = word_eval(&r, &"FGfg".parse().unwrap());
        assert!(k.max_abs_diff(&commutator(&r.f, &r.g)) < 1e-12);
        let f5 = word_eval(&r, &Word::new(vec![Letter::F]).repeat(5));
        assert!(f5.max_abs_diff(&r.f.pow(5)) < 1e-9);
        assert_eq!("FGfg".parse::<Word>().unwrap().to_string(), "FGfg");
        assert!("FX".parse::<Word>().is_err());
    }

    #[test]
    fn identities_at_fixed_points() {
        let ch = PrincipalCharacter::new(c(1.2, -0.7), c(0.4, 0.1), c(-4.0, 0.0));
        assert!(check_identity(&ch, SubgroupFamily::PowerOfF, 1).unwrap() < 1e-14);
        assert!(check_identity(&ch, SubgroupFamily::ConjugatePower, 1).unwrap() < 1e-9);
        assert!(check_identity(&ch, SubgroupFamily::CommutatorPower, 3).unwrap() < 1e-8);
        for fam in SubgroupFamily::ALL {
            for n in 1..=8 {
                assert!(check_identity(&ch, fam, n).unwrap() < 1e-8, "{fam:?} n={n}");
            }
        }
        assert!(commutator_beta_error(&ch).unwrap() < 1e-10);
    }

    #[test]
    fn product_power_needs_order_two() {
        let ch = PrincipalCharacter::new(c(1.2, -0.7), c(0.4, 0.1), c(1.0, 0.0));
        assert!(matches!(
            check_identity(&ch, SubgroupFamily::ProductPower, 2),
            Err(Error::InapplicableFamily(_))
        ));
    }
}
