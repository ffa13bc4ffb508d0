//! Trace-polynomial sequences for powers of elements in a two-generator group.
//!
//! Everything is built on one linear recurrence,
//!
//! ```text
//! a₀ = 0,  a₁ = v,  aₙ₊₁ = (2 + u)·aₙ − aₙ₋₁ + 2v,
//! ```
//!
//! which with `u = β` produces both `β(fⁿ)` (seed `v = β`) and `γ(fⁿ, g)`
//! (seed `v = γ`). Substituting `β(fg) = γ − β − 4` gives the `(fg)ⁿ` family,
//! and `u = γ(γ+4)`, `v = γ(γ−β)` the commutator-power family.
//!
//! The closed forms (`*_closed`) are verification paths; callers should use
//! the recursions, which do not divide by `β`.

use serde::{Deserialize, Serialize};

use crate::characters::{elliptic_root_of_unity, PrincipalCharacter};
use crate::chebyshev::cheb_recursive;
use crate::error::{Error, Result};
use crate::mobius::{Complex, ZERO};
use crate::tol;

/// Parameters of the recurrence `aₙ^{u,v}`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SeqParams {
    pub u: Complex,
    pub v: Complex,
}

impl SeqParams {
    pub fn eval(&self, n: usize) -> Complex {
        a_seq(self.u, self.v, n)
    }
}

/// The four subgroup families whose characters have closed recursions.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum SubgroupFamily {
    /// `⟨fⁿ, g⟩`
    PowerOfF,
    /// `⟨fⁿ, g fⁿ g⁻¹⟩`
    ConjugatePower,
    /// `⟨(gf)ⁿ, f⟩`, needs `g` of order two
    ProductPower,
    /// `⟨[g,f]ⁿ, f⟩`
    CommutatorPower,
}

impl SubgroupFamily {
    pub const ALL: [SubgroupFamily; 4] = [
        SubgroupFamily::PowerOfF,
        SubgroupFamily::ConjugatePower,
        SubgroupFamily::ProductPower,
        SubgroupFamily::CommutatorPower,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            SubgroupFamily::PowerOfF => "PowerOfF",
            SubgroupFamily::ConjugatePower => "ConjugatePower",
            SubgroupFamily::ProductPower => "ProductPower",
            SubgroupFamily::CommutatorPower => "CommutatorPower",
        }
    }
}

impl std::str::FromStr for SubgroupFamily {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let key: String = s
            .chars()
            .filter(|c| c.is_ascii_alphanumeric())
            .collect::<String>()
            .to_ascii_lowercase();
        match key.as_str() {
            "poweroff" | "power" => Ok(SubgroupFamily::PowerOfF),
            "conjugatepower" | "conjugate" => Ok(SubgroupFamily::ConjugatePower),
            "productpower" | "product" => Ok(SubgroupFamily::ProductPower),
            "commutatorpower" | "commutator" => Ok(SubgroupFamily::CommutatorPower),
            _ => Err(Error::Parse(format!("unknown subgroup family `{s}`"))),
        }
    }
}

/// `aₙ^{u,v}` from `a₀ = 0`, `a₁ = v`, `aₙ₊₁ = (2+u)aₙ − aₙ₋₁ + 2v`.
pub fn a_seq(u: Complex, v: Complex, n: usize) -> Complex {
    if n == 0 {
        return ZERO;
    }
    let coef = u + 2.0;
    let (mut prev, mut cur) = (ZERO, v);
    for _ in 1..n {
        let next = coef * cur - prev + 2.0 * v;
        prev = cur;
        cur = next;
    }
    cur
}

/// `β(fⁿ) = 2Tₙ(1 + β/2) − 2`.
pub fn beta_power(beta: Complex, n: usize) -> Complex {
    2.0 * cheb_recursive(n, 1.0 + beta / 2.0) - 2.0
}

/// `γ(fⁿ, g) = γ·β(fⁿ)/β`, evaluated by the recursion so that the
/// parabolic limit `n²γ` needs no special handling beyond `|β| ≤ tol::PARAB`.
pub fn gamma_power(gamma: Complex, beta: Complex, n: usize) -> Complex {
    if beta.norm() <= tol::PARAB {
        return gamma * (n * n) as f64;
    }
    a_seq(beta, gamma, n)
}

/// The ratio form `γ·β(fⁿ)/β`; loses precision as `β → 0`.
pub fn gamma_power_by_ratio(gamma: Complex, beta: Complex, n: usize) -> Complex {
    if beta.norm() <= tol::PARAB {
        return gamma * (n * n) as f64;
    }
    gamma * beta_power(beta, n) / beta
}

/// `αₙ = γ(fⁿ,g) − β(fⁿ)`.
pub fn alpha_n(gamma: Complex, beta: Complex, n: usize) -> Complex {
    gamma_power(gamma, beta, n) - beta_power(beta, n)
}

/// `λₙ = γₙ(γₙ − βₙ)`, the commutator parameter of `⟨fⁿ, g fⁿ g⁻¹⟩`.
pub fn lambda_n(gamma: Complex, beta: Complex, n: usize) -> Complex {
    let gn = gamma_power(gamma, beta, n);
    gn * (gn - beta_power(beta, n))
}

/// `(2+β ∓ √β√(4+β))ⁿ` summed, minus `2ⁿ⁺¹`: the bracket shared by the
/// closed forms. Swapping the root branch swaps the two powers.
fn closed_bracket(beta: Complex, n: usize) -> Complex {
    let root = beta.sqrt() * (beta + 4.0).sqrt();
    let k = n as i32;
    (2.0 + beta - root).powi(k) + (2.0 + beta + root).powi(k) - 2f64.powi(k + 1)
}

fn require_nonparabolic(beta: Complex) -> Result<()> {
    if beta.norm() <= tol::PARAB {
        Err(Error::InapplicableFamily(
            "closed form divides by β; β is parabolic".into(),
        ))
    } else {
        Ok(())
    }
}

/// Closed form of `αₙ`.
pub fn alpha_n_closed(gamma: Complex, beta: Complex, n: usize) -> Result<Complex> {
    require_nonparabolic(beta)?;
    let alpha1 = gamma - beta;
    Ok(2f64.powi(-(n as i32)) * closed_bracket(beta, n) * alpha1 / beta)
}

/// Closed form of `γₙ`; the undefined factor in the printed display is `γ₁ = γ`.
pub fn gamma_n_closed(gamma: Complex, beta: Complex, n: usize) -> Result<Complex> {
    require_nonparabolic(beta)?;
    Ok(2f64.powi(-(n as i32)) * closed_bracket(beta, n) * gamma / beta)
}

/// Closed form `λₙ = λ₁ / (4ⁿβ²) · [bracket]²`.
pub fn lambda_n_closed(gamma: Complex, beta: Complex, n: usize) -> Result<Complex> {
    require_nonparabolic(beta)?;
    let lambda1 = gamma * (gamma - beta);
    let bracket = closed_bracket(beta, n);
    Ok(lambda1 / (4f64.powi(n as i32) * beta * beta) * bracket * bracket)
}

/// `γ((gf)ⁿ, f) = aₙ^{γ−β−4, γ}` for `g` of order two.
pub fn gamma_fg_power(gamma: Complex, beta: Complex, n: usize) -> Complex {
    a_seq(gamma - beta - 4.0, gamma, n)
}

/// `β((gf)ⁿ) = β((fg)ⁿ)` with `β(fg) = γ − β − 4`.
pub fn beta_fg_power(gamma: Complex, beta: Complex, n: usize) -> Complex {
    beta_power(gamma - beta - 4.0, n)
}

/// `β([g,f]) = γ(γ+4)`.
pub fn beta_commutator(gamma: Complex) -> Complex {
    gamma * (gamma + 4.0)
}

/// `γ(f, [g,f]ⁿ)`: `γ₀ = 0`, `γ₁ = γ(γ−β)`,
/// `γₙ₊₁ = (γ² + 4γ + 2)γₙ − γₙ₋₁ + 2γ(γ−β)`.
pub fn gamma_commutator_power(gamma: Complex, beta: Complex, n: usize) -> Complex {
    a_seq(beta_commutator(gamma), gamma * (gamma - beta), n)
}

fn collapse_check(beta: Complex, power: Complex, n: usize, what: &str) -> Result<()> {
    if n >= 2 && power.norm() <= tol::ELLIPTIC_MATCH {
        if let Some(p) = elliptic_root_of_unity(beta, n as u32) {
            return Err(Error::EllipticCollapse {
                n,
                detail: format!("{what}: β = −4sin²({p}π/{n})"),
            });
        }
    }
    Ok(())
}

/// Principal character of the `n`th subgroup in `family`.
pub fn subgroup_character(
    ch: &PrincipalCharacter,
    family: SubgroupFamily,
    n: usize,
) -> Result<PrincipalCharacter> {
    if n == 0 {
        return Err(Error::InapplicableFamily("n must be positive".into()));
    }
    if ch.is_degenerate() {
        return Err(Error::InapplicableFamily("γ = 0".into()));
    }
    let (gamma, beta) = (ch.gamma, ch.beta_f);
    match family {
        SubgroupFamily::PowerOfF => {
            let bn = beta_power(beta, n);
            collapse_check(beta, bn, n, "fⁿ is the identity")?;
            Ok(PrincipalCharacter::new(gamma_power(gamma, beta, n), bn, ch.beta_g))
        }
        SubgroupFamily::ConjugatePower => {
            let bn = beta_power(beta, n);
            collapse_check(beta, bn, n, "fⁿ is the identity")?;
            Ok(PrincipalCharacter::new(lambda_n(gamma, beta, n), bn, bn))
        }
        SubgroupFamily::ProductPower => {
            if !ch.g_has_order_two() {
                return Err(Error::InapplicableFamily(
                    "ProductPower needs β(g) = −4".into(),
                ));
            }
            let bn = beta_fg_power(gamma, beta, n);
            collapse_check(gamma - beta - 4.0, bn, n, "(gf)ⁿ is the identity")?;
            Ok(PrincipalCharacter::new(gamma_fg_power(gamma, beta, n), bn, beta))
        }
        SubgroupFamily::CommutatorPower => {
            let bc = beta_commutator(gamma);
            let bn = beta_power(bc, n);
            collapse_check(bc, bn, n, "[g,f]ⁿ is the identity")?;
            Ok(PrincipalCharacter::new(
                gamma_commutator_power(gamma, beta, n),
                bn,
                beta,
            ))
        }
    }
}
