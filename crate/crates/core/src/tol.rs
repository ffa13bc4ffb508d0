//! Named comparison tolerances shared across modules.

/// Classification of Möbius elements (parabolic / elliptic / identity).
pub const CLASS: f64 = 1e-9;
/// Allowed determinant drift for a matrix to count as unimodular.
pub const DET: f64 = 1e-10;
/// Looser determinant check used by `mat_inverse`.
pub const DET_INVERSE: f64 = 1e-9;
/// Below this `|det|` a matrix cannot be normalized.
pub const SINGULAR: f64 = 1e-14;
/// `|β|` at or below this is treated as parabolic.
pub const PARAB: f64 = 1e-10;
/// A report is satisfied iff its margin is at least `-INEQ`.
pub const INEQ: f64 = 1e-12;
/// Equality at a sharp point.
pub const SHARP: f64 = 1e-9;
/// `|γ|` at or below this marks a degenerate character.
pub const DEGENERATE: f64 = 1e-12;
/// Matching `β` against the elliptic values `−4sin²(pπ/n)`.
pub const ELLIPTIC_MATCH: f64 = 1e-9;
/// Checks such as `β̃ = −4` and `γ = β + 4`.
pub const CONTEXT: f64 = 1e-9;
