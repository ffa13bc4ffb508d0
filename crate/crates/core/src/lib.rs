//! Trace polynomials and Jørgensen-type necessary conditions for discreteness
//! of two-generator subgroups of PSL(2,ℂ).
//!
//! A two-generator group `⟨f, g⟩` is described up to conjugacy by its
//! principal character `(γ, β, β̃) = (tr[f,g] − 2, tr²f − 4, tr²g − 4)`.
//! This crate computes the characters of the standard subgroup families
//! (`⟨fⁿ,g⟩`, `⟨fⁿ,gfⁿg⁻¹⟩`, `⟨(gf)ⁿ,f⟩`, `⟨[g,f]ⁿ,f⟩`) from Chebyshev-style
//! recursions, regenerates their trace polynomials exactly over the integers,
//! and runs a battery of inequalities every Kleinian character must satisfy.
//!
//! Every numeric identity has an independent check in [`oracle`], which
//! realizes a character as explicit matrices and multiplies words out.

pub mod catalog;
pub mod characters;
pub mod chebyshev;
pub mod cli;
pub mod error;
pub mod inequalities;
pub mod mobius;
pub mod oracle;
pub mod recursions;
pub mod scan;
pub mod sympoly;
pub mod tol;

pub use characters::PrincipalCharacter;
pub use error::{Error, Result};
pub use mobius::{Complex, Matrix2};
