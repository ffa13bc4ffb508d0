use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("matrix is not unimodular (|det - 1| = {0:e})")]
    NonUnimodular(f64),
    #[error("matrix is singular (|det| = {0:e})")]
    SingularMatrix(f64),
    #[error("degree {requested} exceeds the cap of {cap}")]
    DegreeCap { requested: usize, cap: usize },
    #[error("g is not of order two (β(g) = {0})")]
    NotOrderTwo(String),
    #[error("subgroup family not applicable: {0}")]
    InapplicableFamily(String),
    #[error("power {n} of the generator is the identity ({detail})")]
    EllipticCollapse { n: usize, detail: String },
    #[error("degenerate character: γ = 0")]
    DegenerateCharacter,
    #[error("fg is parabolic (γ = β + 4)")]
    ParabolicFg,
    #[error("fg is not parabolic (|γ - β - 4| = {0:e})")]
    NotParabolicFg(f64),
    #[error("non-finite value in {0}")]
    NonFinite(&'static str),
    #[error("invalid scan: {0}")]
    InvalidScan(String),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
