//! Principal characters `(γ, β, β̃)` and the conversions around them.

use std::f64::consts::PI;

use num_integer::Integer;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::mobius::{c, commutator, ensure_finite, Complex, Matrix2};
use crate::tol;

/// `(γ(f,g), β(f), β(g))`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PrincipalCharacter {
    pub gamma: Complex,
    pub beta_f: Complex,
    pub beta_g: Complex,
}

#[derive(Serialize, Deserialize)]
struct CharacterJson {
    gamma: [f64; 2],
    beta_f: [f64; 2],
    beta_g: [f64; 2],
}

fn pair(z: Complex) -> [f64; 2] {
    [z.re, z.im]
}

impl Serialize for PrincipalCharacter {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        CharacterJson {
            gamma: pair(self.gamma),
            beta_f: pair(self.beta_f),
            beta_g: pair(self.beta_g),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for PrincipalCharacter {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let raw = CharacterJson::deserialize(d)?;
        PrincipalCharacter::try_new(
            c(raw.gamma[0], raw.gamma[1]),
            c(raw.beta_f[0], raw.beta_f[1]),
            c(raw.beta_g[0], raw.beta_g[1]),
        )
        .map_err(serde::de::Error::custom)
    }
}

impl PrincipalCharacter {
    pub const fn new(gamma: Complex, beta_f: Complex, beta_g: Complex) -> Self {
        PrincipalCharacter { gamma, beta_f, beta_g }
    }

    /// Rejects non-finite components.
    pub fn try_new(gamma: Complex, beta_f: Complex, beta_g: Complex) -> Result<Self> {
        Ok(PrincipalCharacter {
            gamma: ensure_finite(gamma, "gamma")?,
            beta_f: ensure_finite(beta_f, "beta_f")?,
            beta_g: ensure_finite(beta_g, "beta_g")?,
        })
    }

    pub fn real(gamma: f64, beta_f: f64, beta_g: f64) -> Self {
        PrincipalCharacter::new(c(gamma, 0.0), c(beta_f, 0.0), c(beta_g, 0.0))
    }

    /// `γ = 0`: f and g share a fixed point, which no Kleinian group allows.
    pub fn is_degenerate(&self) -> bool {
        self.gamma.norm() <= tol::DEGENERATE
    }

    pub fn g_has_order_two(&self) -> bool {
        (self.beta_g + 4.0).norm() <= tol::CONTEXT
    }

    pub fn max_abs_diff(&self, other: &PrincipalCharacter) -> f64 {
        (self.gamma - other.gamma)
            .norm()
            .max((self.beta_f - other.beta_f).norm())
            .max((self.beta_g - other.beta_g).norm())
    }

    /// The same `(γ, β)` with `g` replaced by an involution.
    pub fn with_order_two_g(&self) -> PrincipalCharacter {
        PrincipalCharacter::new(self.gamma, self.beta_f, c(-4.0, 0.0))
    }
}

/// Translation length and holonomy of two generators, plus the complex
/// distance `δ + iθ` between their axes.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GeometricData {
    pub tau_f: f64,
    pub theta_f: f64,
    pub tau_g: f64,
    pub theta_g: f64,
    pub delta: f64,
    pub theta: f64,
}

pub fn character_from_matrices(f: &Matrix2, g: &Matrix2) -> PrincipalCharacter {
    PrincipalCharacter::new(commutator(f, g).trace() - 2.0, f.beta(), g.beta())
}

/// `γ = β(f) + β(g) + β(fg) − tr f · tr g · tr fg + 8`.
pub fn fricke_gamma(tr_f: Complex, tr_g: Complex, tr_fg: Complex) -> Complex {
    let beta = |t: Complex| t * t - 4.0;
    beta(tr_f) + beta(tr_g) + beta(tr_fg) - tr_f * tr_g * tr_fg + 8.0
}

fn require_order_two(ch: &PrincipalCharacter) -> Result<()> {
    if ch.g_has_order_two() {
        Ok(())
    } else {
        Err(Error::NotOrderTwo(ch.beta_g.to_string()))
    }
}

/// `β(fg) = γ − β − 4` when `g` has order two.
pub fn beta_fg_order2(ch: &PrincipalCharacter) -> Result<Complex> {
    require_order_two(ch)?;
    Ok(ch.gamma - ch.beta_f - 4.0)
}

/// One of the finite groups `⟨f, φ⟩` can collapse to when `f` has small order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct SmallOrderCase {
    pub order: u32,
    pub group: &'static str,
}

pub const SMALL_ORDER_CASES: [SmallOrderCase; 5] = [
    SmallOrderCase { order: 2, group: "Klein 4-group" },
    SmallOrderCase { order: 3, group: "A4 or S4" },
    SmallOrderCase { order: 4, group: "S4" },
    SmallOrderCase { order: 5, group: "A5" },
    SmallOrderCase { order: 6, group: "(2,3,6) Euclidean triangle group" },
];

/// The two order-two extensions sharing `(γ, β)` with a given character.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Order2Shadow {
    pub same: PrincipalCharacter,
    pub flipped: PrincipalCharacter,
    /// Elementary groups the shadow may be, given the order of `f`.
    pub exceptions: Vec<SmallOrderCase>,
}

/// `((γ, β, −4), (β − γ, β, −4))` with the small-order exception data for `f`.
pub fn order2_shadow(ch: &PrincipalCharacter) -> Order2Shadow {
    let minus4 = c(-4.0, 0.0);
    let exceptions = elliptic_order(ch.beta_f, 6)
        .and_then(|p| SMALL_ORDER_CASES.iter().find(|case| case.order == p).copied())
        .into_iter()
        .collect();
    Order2Shadow {
        same: PrincipalCharacter::new(ch.gamma, ch.beta_f, minus4),
        flipped: PrincipalCharacter::new(ch.beta_f - ch.gamma, ch.beta_f, minus4),
        exceptions,
    }
}

/// `((γ, γ−β−4, −4), (β−γ, −γ−4, −4))`. The first map is an involution.
pub fn character_involutions(
    ch: &PrincipalCharacter,
) -> Result<(PrincipalCharacter, PrincipalCharacter)> {
    require_order_two(ch)?;
    let (g, b) = (ch.gamma, ch.beta_f);
    let minus4 = c(-4.0, 0.0);
    Ok((
        PrincipalCharacter::new(g, g - b - 4.0, minus4),
        PrincipalCharacter::new(b - g, -g - 4.0, minus4),
    ))
}

/// `β = 4sinh²((τ+iθ)/2)` for both generators and `γ = (β_f β_g / 4) sinh²(δ+iθ)`.
pub fn geometric_to_params(geo: &GeometricData) -> PrincipalCharacter {
    let beta_of = |tau: f64, theta: f64| {
        let s = (c(tau, theta) / 2.0).sinh();
        4.0 * s * s
    };
    let beta_f = beta_of(geo.tau_f, geo.theta_f);
    let beta_g = beta_of(geo.tau_g, geo.theta_g);
    let s = c(geo.delta, geo.theta).sinh();
    PrincipalCharacter::new(beta_f * beta_g / 4.0 * s * s, beta_f, beta_g)
}

/// Inverts `β = 4sinh²(w/2)`, returning `w = τ + iθ` with `τ ≥ 0` and
/// `θ ∈ (−π, π]` (and `θ ≥ 0` when `τ = 0`).
pub fn params_to_geometric(beta: Complex) -> Complex {
    let w = 2.0 * (beta.sqrt() / 2.0).asinh();
    let mut w = if w.re < 0.0 { -w } else { w };
    w.im = wrap_angle(w.im);
    if w.re.abs() <= f64::EPSILON && w.im < 0.0 {
        w.im = -w.im;
    }
    w
}

fn wrap_angle(theta: f64) -> f64 {
    let mut t = theta % (2.0 * PI);
    if t <= -PI {
        t += 2.0 * PI;
    } else if t > PI {
        t -= 2.0 * PI;
    }
    t
}

/// `−4sin²(pπ/n)`, the `β` of a rotation through `2pπ/n`.
pub fn elliptic_beta(p: u32, n: u32) -> f64 {
    let s = (p as f64 * PI / n as f64).sin();
    -4.0 * s * s
}

/// Smallest `n ≤ max_order` with `β = −4sin²(pπ/n)` for some `p` coprime to `n`.
pub fn elliptic_order(beta: Complex, max_order: u32) -> Option<u32> {
    if beta.im.abs() > tol::ELLIPTIC_MATCH {
        return None;
    }
    (2..=max_order).find(|&n| {
        (1..=n / 2)
            .filter(|p| p.gcd(&n) == 1)
            .any(|p| (beta.re - elliptic_beta(p, n)).abs() <= tol::ELLIPTIC_MATCH)
    })
}

/// Some `p ∈ 1..n` with `β = −4sin²(pπ/n)`, i.e. the `n`th power is trivial.
pub fn elliptic_root_of_unity(beta: Complex, n: u32) -> Option<u32> {
    if beta.im.abs() > tol::ELLIPTIC_MATCH || n < 2 {
        return None;
    }
    (1..n).find(|&p| (beta.re - elliptic_beta(p, n)).abs() <= tol::ELLIPTIC_MATCH)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mobius::real;

    fn upper() -> Matrix2 {
        Matrix2::real(1.0, 1.0, 0.0, 1.0)
    }

    fn close(a: Complex, b: Complex, eps: f64) -> bool {
        (a - b).norm() <= eps
    }

    #[test]
    fn characters_of_matrix_pairs() {
        let id = character_from_matrices(&Matrix2::IDENTITY, &Matrix2::IDENTITY);
        assert_eq!(id, PrincipalCharacter::real(0.0, 0.0, 0.0));
        assert!(id.is_degenerate());

        let ch = character_from_matrices(&upper(), &Matrix2::real(1.0, 0.0, 1.0, 1.0));
        assert_eq!(ch, PrincipalCharacter::real(1.0, 0.0, 0.0));

        let fig8 = c(0.5, 3f64.sqrt() / 2.0);
        let omega = fig8.sqrt();
        let g = Matrix2::new(real(1.0), real(0.0), omega, real(1.0));
        let ch = character_from_matrices(&upper(), &g);
        assert!(close(ch.gamma, fig8, 1e-14));
        assert!(close(ch.beta_f, real(0.0), 1e-14) && close(ch.beta_g, real(0.0), 1e-14));
    }

    #[test]
    fn fricke_values() {
        assert_eq!(fricke_gamma(real(2.0), real(2.0), real(2.0)), real(0.0));
        assert_eq!(fricke_gamma(real(3.0), real(3.0), real(3.0)), real(-4.0));
        // tr g = 0: γ = β + β(fg) + 4.
        let (tf, tfg) = (c(1.3, 0.2), c(-0.4, 2.0));
        let gamma = fricke_gamma(tf, real(0.0), tfg);
        let beta = tf * tf - 4.0;
        let beta_fg = tfg * tfg - 4.0;
        assert!(close(beta_fg, gamma - beta - 4.0, 1e-12));
    }

    #[test]
    fn fricke_on_realized_pair() {
        let f = Matrix2::real(2.0, 1.0, 1.0, 1.0);
        let g = Matrix2::real(1.0, -1.0, -1.0, 2.0);
        let fg = f * g;
        let direct = character_from_matrices(&f, &g).gamma;
        let via = fricke_gamma(f.trace(), g.trace(), fg.trace());
        assert!(close(direct, via, 1e-12));
    }

    #[test]
    fn order_two_reductions() {
        let g623 = PrincipalCharacter::real(-1.0, -1.0, -4.0);
        assert_eq!(beta_fg_order2(&g623).unwrap(), real(-4.0));

        let gamma = 0.801_937_735_804_838;
        let ch = PrincipalCharacter::real(gamma, -3.0, -4.0);
        assert!(close(beta_fg_order2(&ch).unwrap(), real(-0.198_062_264_195_162), 1e-12));

        let trigger = PrincipalCharacter::new(c(0.5, 1.0), c(-3.5, 1.0), real(-4.0));
        assert!(close(beta_fg_order2(&trigger).unwrap(), real(0.0), 1e-15));

        let not_two = PrincipalCharacter::real(1.0, 0.0, 0.0);
        assert!(matches!(beta_fg_order2(&not_two), Err(Error::NotOrderTwo(_))));
    }

    #[test]
    fn shadows() {
        let sh = order2_shadow(&PrincipalCharacter::real(1.0, 0.0, 0.0));
        assert_eq!(sh.same, PrincipalCharacter::real(1.0, 0.0, -4.0));
        assert_eq!(sh.flipped, PrincipalCharacter::real(-1.0, 0.0, -4.0));
        assert!(sh.exceptions.is_empty());

        let sh = order2_shadow(&PrincipalCharacter::real(0.7, -3.0, 1.0));
        assert_eq!(sh.exceptions.len(), 1);
        assert_eq!(sh.exceptions[0].group, "A4 or S4");

        for beta in [elliptic_beta(1, 5), elliptic_beta(2, 5)] {
            let sh = order2_shadow(&PrincipalCharacter::real(0.7, beta, 1.0));
            assert_eq!(sh.exceptions[0].group, "A5");
        }
        let sh = order2_shadow(&PrincipalCharacter::real(0.7, -4.0, 1.0));
        assert_eq!(sh.exceptions[0].order, 2);
        let sh = order2_shadow(&PrincipalCharacter::real(0.7, -1.0, 1.0));
        assert_eq!(sh.exceptions[0].order, 6);
        // order 7 is outside the list
        let sh = order2_shadow(&PrincipalCharacter::real(0.7, elliptic_beta(1, 7), 1.0));
        assert!(sh.exceptions.is_empty());
    }

    #[test]
    fn involutions() {
        let (a, b) = character_involutions(&PrincipalCharacter::real(-1.0, -1.0, -4.0)).unwrap();
        assert_eq!(a, PrincipalCharacter::real(-1.0, -4.0, -4.0));
        assert_eq!(b, PrincipalCharacter::real(0.0, -3.0, -4.0));

        let ch = PrincipalCharacter::new(c(0.3, -1.2), c(2.0, 0.5), real(-4.0));
        let (once, _) = character_involutions(&ch).unwrap();
        let (twice, _) = character_involutions(&once).unwrap();
        assert!(twice.max_abs_diff(&ch) < 1e-15);

        let gamma = 0.801_937_735_804_838;
        let (a, _) = character_involutions(&PrincipalCharacter::real(gamma, -3.0, -4.0)).unwrap();
        assert!(close(a.beta_f, real(gamma - 1.0), 1e-15));
        assert!(close(a.beta_f, real(-0.198_062_264_195_162), 1e-12));

        assert!(character_involutions(&PrincipalCharacter::real(1.0, 0.0, 0.0)).is_err());
    }

    fn geo(tau_f: f64, theta_f: f64, delta: f64, theta: f64) -> GeometricData {
        GeometricData { tau_f, theta_f, tau_g: 0.3, theta_g: 0.2, delta, theta }
    }

    #[test]
    fn geometric_conversions() {
        let ch = geometric_to_params(&geo(0.0, PI, 1.0, 0.0));
        assert!(close(ch.beta_f, real(-4.0), 1e-12));
        let ch = geometric_to_params(&geo(0.0, 2.0 * PI / 3.0, 1.0, 0.0));
        assert!(close(ch.beta_f, real(-3.0), 1e-12));
        let ch = geometric_to_params(&geo(0.7, 0.1, 0.0, 0.0));
        assert_eq!(ch.gamma, real(0.0));

        assert_eq!(params_to_geometric(real(0.0)), real(0.0));
        assert!(close(params_to_geometric(real(-4.0)), c(0.0, PI), 1e-7));
        assert!(close(params_to_geometric(real(-3.0)), c(0.0, 2.0 * PI / 3.0), 1e-12));
    }

    #[test]
    fn geometric_round_trip() {
        for &(re, im) in &[(0.3, 0.0), (-1.5, 0.2), (5.0, -3.0), (-3.9, 0.0), (-8.0, 0.0), (0.01, -2.0)] {
            let beta = c(re, im);
            let w = params_to_geometric(beta);
            assert!(w.re >= 0.0 && w.im > -PI && w.im <= PI, "{w}");
            let g = GeometricData { tau_f: w.re, theta_f: w.im, tau_g: 0.0, theta_g: 0.0, delta: 0.0, theta: 0.0 };
            assert!(close(geometric_to_params(&g).beta_f, beta, 1e-9), "{beta}");
        }
    }

    #[test]
    fn elliptic_matching() {
        assert_eq!(elliptic_order(real(-3.0), 6), Some(3));
        assert_eq!(elliptic_order(real(-2.0), 6), Some(4));
        assert_eq!(elliptic_order(real(-2.5), 6), None);
        assert_eq!(elliptic_order(c(-3.0, 0.1), 6), None);
        assert_eq!(elliptic_root_of_unity(real(-3.0), 3), Some(1));
        assert_eq!(elliptic_root_of_unity(real(-3.0), 6), Some(2));
        assert_eq!(elliptic_root_of_unity(real(-3.0), 4), None);
    }

    #[test]
    fn json_field_names() {
        let ch = PrincipalCharacter::new(c(0.5, 0.25), real(-3.0), real(-4.0));
        let s = serde_json::to_string(&ch).unwrap();
        assert_eq!(s, r#"{"gamma":[0.5,0.25],"beta_f":[-3.0,0.0],"beta_g":[-4.0,0.0]}"#);
        let back: PrincipalCharacter = serde_json::from_str(&s).unwrap();
        assert_eq!(back, ch);
    }
}
