//! Necessary conditions for a principal character to come from a Kleinian
//! group, with the exceptional configurations each one allows.
//!
//! Every check returns an [`InequalityReport`]. [`battery`] runs them all and
//! folds the failures into a [`Verdict`]: a failure with no live exception is
//! unconditional, one that can only be explained by the order-two shadow being
//! elementary is conditional, and one whose hypotheses are known not to hold
//! (a power collapsing to the identity, an order-two generator, ...) is
//! excused.

use std::f64::consts::PI;
use std::fmt;

use num_integer::Integer;
use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use crate::characters::{elliptic_order, elliptic_root_of_unity, SmallOrderCase, SMALL_ORDER_CASES};
use crate::chebyshev::cheb_recursive;
use crate::error::{Error, Result};
use crate::mobius::Complex;
use crate::recursions::a_seq;
use crate::tol;
use crate::PrincipalCharacter;

/// Depth of the `n`-indexed families when none is given.
pub const DEFAULT_DEPTH: usize = 8;

/// Printed lower bound for `|γ| + |β + 2 + √2|`.
pub const SQRT2_SHIFT_BOUND: f64 = 0.117875;

/// `2 − 2cos(π/7)`.
pub fn gamma_f2_constant() -> f64 {
    2.0 - 2.0 * (PI / 7.0).cos()
}

/// `(√5 − 1)/2`.
pub fn beta_plus_2_constant() -> f64 {
    (5f64.sqrt() - 1.0) / 2.0
}

/// `(3 − √5)/2`.
pub fn golden_constant() -> f64 {
    (3.0 - 5f64.sqrt()) / 2.0
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Applicability {
    Unconditional,
    RequiresOrder2G,
    RequiresFNotOrder2,
    /// Holds only at minimizers of `|γ| + |β − β₀|`; never a discreteness test.
    ExtremalOnly,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Element {
    F,
    FG,
}

/// The three configurations excluded from the equal-trace commutator bound.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CaoCase {
    CommutatorZero,
    CommutatorIsBeta,
    FgOrderTwo,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Exception {
    Degenerate,
    /// `elementⁿ` is the identity: rotation through `2pπ/n`.
    PowerIdentity { element: Element, p: u32, n: u32 },
    /// `f^power` has order two.
    OrderTwo { power: u32 },
    Cao(CaoCase),
    /// `f` has order `≤ 6`, so the order-two shadow may be elementary.
    ShadowElementary(SmallOrderCase),
}

impl Exception {
    /// Excusing exceptions mean the inequality's hypotheses fail outright.
    /// The only non-excusing kind is the shadow one, which depends on the group.
    pub fn is_excusing(&self) -> bool {
        !matches!(self, Exception::ShadowElementary(_))
    }

    pub fn ruled_out_by(&self, a: &Assumptions) -> bool {
        match (*self, a.f_order) {
            (Exception::ShadowElementary(_), _) if a.g_order2 => true,
            (Exception::ShadowElementary(case), Some(FOrder::Finite(k))) => k != case.order,
            (Exception::PowerIdentity { element: Element::F, n, .. }, Some(FOrder::Finite(k))) => {
                n % k != 0
            }
            (Exception::OrderTwo { power }, Some(FOrder::Finite(k))) => k / k.gcd(&power) != 2,
            (
                Exception::ShadowElementary(_)
                | Exception::PowerIdentity { element: Element::F, .. }
                | Exception::OrderTwo { .. },
                Some(FOrder::Infinite),
            ) => true,
            _ => false,
        }
    }
}

impl fmt::Display for Exception {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Exception::Degenerate => write!(f, "γ = 0"),
            Exception::PowerIdentity { element: Element::F, p, n } => {
                write!(f, "β = −4sin²({p}π/{n})")
            }
            Exception::PowerIdentity { element: Element::FG, p, n } => {
                write!(f, "β(fg) = −4sin²({p}π/{n})")
            }
            Exception::OrderTwo { power: 1 } => write!(f, "f has order 2 (β(f) = −4)"),
            Exception::OrderTwo { power } => write!(f, "f^{power} has order 2"),
            Exception::Cao(CaoCase::CommutatorZero) => write!(f, "γ(fg, gf) = 0"),
            Exception::Cao(CaoCase::CommutatorIsBeta) => write!(f, "γ(fg, gf) = β(fg)"),
            Exception::Cao(CaoCase::FgOrderTwo) => write!(f, "β(fg) = −4"),
            Exception::ShadowElementary(case) => write!(
                f,
                "f elliptic of order {}; order-two shadow may be the {}",
                case.order, case.group
            ),
        }
    }
}

impl Serialize for Exception {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct InequalityReport {
    pub name: String,
    pub lhs: f64,
    pub bound: f64,
    pub margin: f64,
    pub satisfied: bool,
    pub exceptions: Vec<Exception>,
    pub applicability: Applicability,
}

impl InequalityReport {
    fn new(name: impl Into<String>, lhs: f64, bound: f64, applicability: Applicability) -> Self {
        // NaN only comes out of overflowing recursions, where every term is huge
        let lhs = if lhs.is_nan() { f64::INFINITY } else { lhs };
        let margin = lhs - bound;
        InequalityReport {
            name: name.into(),
            lhs,
            bound,
            margin,
            satisfied: margin >= -tol::INEQ,
            exceptions: Vec::new(),
            applicability,
        }
    }

    fn with(mut self, ex: impl IntoIterator<Item = Exception>) -> Self {
        for e in ex {
            if !self.exceptions.contains(&e) {
                self.exceptions.push(e);
            }
        }
        self
    }

    /// `|margin| ≤ 1e−9`.
    pub fn is_sharp(&self) -> bool {
        self.margin.abs() <= tol::SHARP
    }

    /// Name with any `[n]` suffix removed.
    pub fn base_name(&self) -> &str {
        base_name(&self.name)
    }
}

pub fn base_name(name: &str) -> &str {
    name.split('[').next().unwrap_or(name)
}

fn degenerate(ch: &PrincipalCharacter) -> Option<Exception> {
    ch.is_degenerate().then_some(Exception::Degenerate)
}

fn near(z: Complex, w: Complex) -> bool {
    (z - w).norm() <= tol::CONTEXT
}

/// `fⁿ = 1` for `f` with parameter `beta`, given `β(fⁿ) = beta_n`.
fn power_identity(element: Element, beta: Complex, beta_n: Complex, n: usize) -> Option<Exception> {
    if beta_n.norm() > tol::ELLIPTIC_MATCH {
        return None;
    }
    elliptic_root_of_unity(beta, n as u32).map(|p| Exception::PowerIdentity {
        element,
        p,
        n: n as u32,
    })
}

fn order_two(beta_m: Complex, power: usize) -> Option<Exception> {
    near(beta_m, Complex::new(-4.0, 0.0)).then_some(Exception::OrderTwo { power: power as u32 })
}

/// `|γ| + |β| ≥ 1`.
pub fn jorgensen(ch: &PrincipalCharacter) -> InequalityReport {
    let lhs = ch.gamma.norm() + ch.beta_f.norm();
    InequalityReport::new("jorgensen", lhs, 1.0, Applicability::Unconditional).with(degenerate(ch))
}

/// `|γ − β − 4| + |γ| ≥ 1` and `|γ + 4| + |β − γ| ≥ 1`.
pub fn lem15_pair(ch: &PrincipalCharacter) -> (InequalityReport, InequalityReport) {
    lem15_named(ch.gamma, ch.beta_f, ch, 1, "lem15_first", "lem15_second")
}

fn lem15_named(
    gamma: Complex,
    beta: Complex,
    ch: &PrincipalCharacter,
    power: usize,
    first: &str,
    second: &str,
) -> (InequalityReport, InequalityReport) {
    let ex: Vec<Exception> = degenerate(ch).into_iter().chain(order_two(beta, power)).collect();
    let a = (gamma - beta - 4.0).norm() + gamma.norm();
    let b = (gamma + 4.0).norm() + (beta - gamma).norm();
    (
        InequalityReport::new(first, a, 1.0, Applicability::RequiresFNotOrder2).with(ex.clone()),
        InequalityReport::new(second, b, 1.0, Applicability::RequiresFNotOrder2).with(ex),
    )
}

/// Jørgensen for `⟨fⁿ, g⟩`: `|aₙ^{β,γ}| + |aₙ^{β,β}| ≥ 1`.
pub fn an_family(ch: &PrincipalCharacter, n: usize) -> InequalityReport {
    let (g, b) = (ch.gamma, ch.beta_f);
    let gn = a_seq(b, g, n);
    let bn = a_seq(b, b, n);
    let lhs = gn.norm() + bn.norm();
    InequalityReport::new(format!("a_n[{n}]"), lhs, 1.0, Applicability::Unconditional)
        .with(degenerate(ch))
        .with(power_identity(Element::F, b, bn, n))
}

/// The pair [`lem15_pair`] applied to `⟨fⁿ, g⟩`.
pub fn an_lem15_family(ch: &PrincipalCharacter, n: usize) -> (InequalityReport, InequalityReport) {
    let (g, b) = (ch.gamma, ch.beta_f);
    let gn = a_seq(b, g, n);
    let bn = a_seq(b, b, n);
    let (first, second) = lem15_named(
        gn,
        bn,
        ch,
        n,
        &format!("a_n_lem15_first[{n}]"),
        &format!("a_n_lem15_second[{n}]"),
    );
    let collapse = power_identity(Element::F, b, bn, n);
    (first.with(collapse), second.with(collapse))
}

/// Jørgensen for `⟨(fg)ⁿ, g⟩` in the order-two context, where
/// `β(fg) = γ − β − 4`: `|aₙ^{u,γ}| + |aₙ^{u,u}| ≥ 1` with `u = γ − β − 4`.
pub fn fg_family(ch: &PrincipalCharacter, n: usize) -> InequalityReport {
    let u = ch.gamma - ch.beta_f - 4.0;
    let gn = a_seq(u, ch.gamma, n);
    let bn = a_seq(u, u, n);
    InequalityReport::new(
        format!("fg_family[{n}]"),
        gn.norm() + bn.norm(),
        1.0,
        Applicability::RequiresOrder2G,
    )
    .with(degenerate(ch))
    .with(power_identity(Element::FG, u, bn, n))
}

/// `|γ(f², g)| = |γ(β + 4)| ≥ 2 − 2cos(π/7)`.
pub fn gamma_f2_bound(ch: &PrincipalCharacter) -> InequalityReport {
    let (g, b) = (ch.gamma, ch.beta_f);
    let commutator = g * (b + 4.0);
    let beta_fg = g - b - 4.0;
    let zero = Complex::new(0.0, 0.0);
    let cao = [
        near(commutator, zero).then_some(CaoCase::CommutatorZero),
        near(commutator, beta_fg).then_some(CaoCase::CommutatorIsBeta),
        near(beta_fg, Complex::new(-4.0, 0.0)).then_some(CaoCase::FgOrderTwo),
    ];
    InequalityReport::new(
        "gamma_f2",
        commutator.norm(),
        gamma_f2_constant(),
        Applicability::RequiresFNotOrder2,
    )
    .with(degenerate(ch))
    .with(order_two(b, 1))
    .with(cao.into_iter().flatten().map(Exception::Cao))
}

/// Bounds of the form `|γ| + |β − β₀|^k ≥ r` in the order-two context.
pub fn beta_shift_bounds(ch: &PrincipalCharacter) -> Vec<InequalityReport> {
    let (g, b) = (ch.gamma.norm(), ch.beta_f);
    let s5 = 5f64.sqrt();
    let shift = |b0: f64| (b + b0).norm();
    let req = Applicability::RequiresOrder2G;
    let rows = [
        ("beta_plus_1_sq", g + shift(1.0).powi(2), 1.0),
        ("beta_plus_1", g + shift(1.0), 1.0),
        ("beta_plus_2", g + shift(2.0), beta_plus_2_constant()),
        ("golden_plus", g + shift((3.0 + s5) / 2.0), golden_constant()),
        ("golden_minus", g + shift((3.0 - s5) / 2.0), golden_constant()),
        ("beta_plus_2_sqrt2", g + shift(2.0 + 2f64.sqrt()), SQRT2_SHIFT_BOUND),
    ];
    rows.into_iter()
        .map(|(name, lhs, bound)| InequalityReport::new(name, lhs, bound, req).with(degenerate(ch)))
        .collect()
}

/// `|γ| ≥ 1` when `fg` is parabolic.
pub fn parabolic_case(ch: &PrincipalCharacter) -> Result<InequalityReport> {
    let off = (ch.gamma - ch.beta_f - 4.0).norm();
    if off > tol::CONTEXT {
        return Err(Error::NotParabolicFg(off));
    }
    Ok(
        InequalityReport::new("parabolic_case", ch.gamma.norm(), 1.0, Applicability::RequiresOrder2G)
            .with(degenerate(ch)),
    )
}

/// Necessary condition at minimizers of `|γ| + |β − β₀|`:
/// `2|T_k(½(γ − β − 2)) − 1| ≥ |γ − β − 4|`, reported for `k = n + 1` and `k = n`.
pub fn cheb_min_bound(ch: &PrincipalCharacter, n: usize) -> Result<[InequalityReport; 2]> {
    let u = ch.gamma - ch.beta_f - 4.0;
    if u.norm() <= tol::DEGENERATE {
        return Err(Error::ParabolicFg);
    }
    let z = (ch.gamma - ch.beta_f - 2.0) / 2.0;
    let row = |k: usize| {
        let lhs = 2.0 * (cheb_recursive(k, z) - 1.0).norm();
        InequalityReport::new(format!("cheb_min_T{k}"), lhs, u.norm(), Applicability::ExtremalOnly)
    };
    Ok([row(n + 1), row(n)])
}

/// Bisection for a sign change of `f` on `[lo, hi]`, to width `tol`.
pub fn bisect(f: impl Fn(f64) -> f64, mut lo: f64, mut hi: f64, tol: f64) -> Option<f64> {
    let (mut flo, fhi) = (f(lo), f(hi));
    if flo == 0.0 {
        return Some(lo);
    }
    if fhi == 0.0 {
        return Some(hi);
    }
    if flo.signum() == fhi.signum() {
        return None;
    }
    while hi - lo > tol {
        let mid = 0.5 * (lo + hi);
        let fm = f(mid);
        if fm == 0.0 {
            return Some(mid);
        }
        if fm.signum() == flo.signum() {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
        }
    }
    Some(0.5 * (lo + hi))
}

/// Root in `[0, 1]` of `y²(y+√2)²(y+2√2)²(y+2+√2) = 1`.
pub fn solve_threshold_sqrt2() -> f64 {
    let r2 = 2f64.sqrt();
    let g = |y: f64| y * y * (y + r2).powi(2) * (y + 2.0 * r2).powi(2) * (y + 2.0 + r2);
    bisect(|y| g(y) - 1.0, 0.0, 1.0, 1e-12).expect("g(0) < 1 < g(1)")
}

/// Root in `[0, 1]` of `x²(x + 2) = 1`.
pub fn solve_threshold_beta_plus_2() -> f64 {
    bisect(|x| x * x * (x + 2.0) - 1.0, 0.0, 1.0, 1e-12).expect("bracketed")
}

/// Root in `[0, 1]` of `s² + √5·s = 1`.
pub fn solve_threshold_golden() -> f64 {
    bisect(|s| s * s + 5f64.sqrt() * s - 1.0, 0.0, 1.0, 1e-12).expect("bracketed")
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FOrder {
    Infinite,
    Finite(u32),
}

/// What the caller knows about the group beyond its character.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct Assumptions {
    pub f_order: Option<FOrder>,
    pub g_order2: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ConditionalFailure {
    pub name: String,
    pub exceptions: Vec<Exception>,
}

#[derive(Debug, Clone, PartialEq)]
pub enum Verdict {
    PassesAll,
    ViolatesUnconditional(Vec<String>),
    ViolatesConditional(Vec<ConditionalFailure>),
    Degenerate,
}

impl Verdict {
    pub fn label(&self) -> &'static str {
        match self {
            Verdict::PassesAll => "PassesAll",
            Verdict::ViolatesUnconditional(_) => "ViolatesUnconditional",
            Verdict::ViolatesConditional(_) => "ViolatesConditional",
            Verdict::Degenerate => "Degenerate",
        }
    }

    /// `0` pass, `2` unconditional, `3` conditional, `4` degenerate.
    pub fn code(&self) -> u8 {
        match self {
            Verdict::PassesAll => 0,
            Verdict::ViolatesUnconditional(_) => 2,
            Verdict::ViolatesConditional(_) => 3,
            Verdict::Degenerate => 4,
        }
    }

    pub fn is_pass(&self) -> bool {
        matches!(self, Verdict::PassesAll)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct BatteryReport {
    pub verdict: Verdict,
    pub reports: Vec<InequalityReport>,
}

impl BatteryReport {
    /// First report in battery order that counts against the character.
    pub fn first_violation(&self) -> Option<&InequalityReport> {
        let names: Vec<&str> = match &self.verdict {
            Verdict::ViolatesUnconditional(v) => v.iter().map(String::as_str).collect(),
            Verdict::ViolatesConditional(v) => v.iter().map(|c| c.name.as_str()).collect(),
            _ => return None,
        };
        self.reports.iter().find(|r| names.contains(&r.name.as_str()))
    }

    pub fn report(&self, name: &str) -> Option<&InequalityReport> {
        self.reports.iter().find(|r| r.name == name)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report fields serialize")
    }
}

impl Serialize for BatteryReport {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("BatteryReport", 3)?;
        st.serialize_field("verdict", self.verdict.label())?;
        match &self.verdict {
            Verdict::ViolatesUnconditional(v) => {
                let rows: Vec<ConditionalFailure> = v
                    .iter()
                    .map(|n| ConditionalFailure { name: n.clone(), exceptions: Vec::new() })
                    .collect();
                st.serialize_field("violations", &rows)?;
            }
            Verdict::ViolatesConditional(v) => st.serialize_field("violations", v)?,
            _ => st.serialize_field("violations", &Vec::<ConditionalFailure>::new())?,
        }
        st.serialize_field("reports", &self.reports)?;
        st.end()
    }
}

/// Base names in battery order; index + 1 is the scan's violation code.
pub const BATTERY_NAMES: [&str; 15] = [
    "jorgensen",
    "lem15_first",
    "lem15_second",
    "a_n",
    "a_n_lem15_first",
    "a_n_lem15_second",
    "fg_family",
    "gamma_f2",
    "beta_plus_1_sq",
    "beta_plus_1",
    "beta_plus_2",
    "golden_plus",
    "golden_minus",
    "beta_plus_2_sqrt2",
    "parabolic_case",
];

/// 1-based position of a report's base name in [`BATTERY_NAMES`].
pub fn battery_index(name: &str) -> Option<usize> {
    let base = base_name(name);
    BATTERY_NAMES.iter().position(|n| *n == base).map(|i| i + 1)
}

/// Every report of the battery, in order, before any verdict logic.
pub fn battery_reports(ch: &PrincipalCharacter, depth: usize) -> Vec<InequalityReport> {
    let depth = depth.max(1);
    // tests proved for (γ, β, −4) pick up the small-order cases of the shadow
    let shadow: Vec<Exception> = if ch.g_has_order_two() {
        Vec::new()
    } else {
        elliptic_order(ch.beta_f, 6)
            .and_then(|p| SMALL_ORDER_CASES.iter().find(|c| c.order == p).copied())
            .map(Exception::ShadowElementary)
            .into_iter()
            .collect()
    };

    let mut out = vec![jorgensen(ch)];
    let (a, b) = lem15_pair(ch);
    out.extend([a, b]);
    for n in 1..=depth {
        out.push(an_family(ch, n));
    }
    for n in 1..=depth {
        let (a, b) = an_lem15_family(ch, n);
        out.extend([a, b]);
    }
    for n in 1..=depth {
        out.push(fg_family(ch, n).with(shadow.clone()));
    }
    out.push(gamma_f2_bound(ch).with(shadow.clone()));
    out.extend(beta_shift_bounds(ch).into_iter().map(|r| r.with(shadow.clone())));
    if let Ok(r) = parabolic_case(ch) {
        out.push(r.with(shadow.clone()));
    }
    out
}

/// Runs every test to `depth` and classifies the failures.
pub fn battery(ch: &PrincipalCharacter, assumptions: &Assumptions, depth: usize) -> BatteryReport {
    let reports = battery_reports(ch, depth);
    let verdict = classify(ch, &reports, assumptions);
    BatteryReport { verdict, reports }
}

fn classify(ch: &PrincipalCharacter, reports: &[InequalityReport], a: &Assumptions) -> Verdict {
    if ch.is_degenerate() {
        return Verdict::Degenerate;
    }
    let mut hard = Vec::new();
    let mut soft = Vec::new();
    for r in reports {
        if r.satisfied || r.applicability == Applicability::ExtremalOnly {
            continue;
        }
        let live: Vec<Exception> =
            r.exceptions.iter().copied().filter(|e| !e.ruled_out_by(a)).collect();
        if live.is_empty() {
            hard.push(r.name.clone());
        } else if !live.iter().any(Exception::is_excusing) {
            soft.push(ConditionalFailure { name: r.name.clone(), exceptions: live });
        }
    }
    if !hard.is_empty() {
        Verdict::ViolatesUnconditional(hard)
    } else if !soft.is_empty() {
        Verdict::ViolatesConditional(soft)
    } else {
        Verdict::PassesAll
    }
}

/// Evaluates one named inequality, including `cheb_min_T{k}` and indexed
/// family members such as `fg_family[3]`.
pub fn evaluate_named(ch: &PrincipalCharacter, name: &str) -> Option<InequalityReport> {
    if let Some(k) = name.strip_prefix("cheb_min_T").and_then(|k| k.parse::<usize>().ok()) {
        let n = k.checked_sub(1)?;
        return cheb_min_bound(ch, n).ok().map(|[a, _]| a);
    }
    let depth = name
        .split_once('[')
        .and_then(|(_, rest)| rest.strip_suffix(']'))
        .and_then(|n| n.parse::<usize>().ok())
        .unwrap_or(1);
    if name == "parabolic_case" {
        return parabolic_case(ch).ok();
    }
    battery_reports(ch, depth).into_iter().find(|r| r.name == name)
}
