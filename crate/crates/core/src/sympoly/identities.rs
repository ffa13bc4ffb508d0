//! Printed trace-polynomial factorizations, checked against the recursions.
//!
//! Each entry keeps the factored text as printed and is expanded when the
//! table is loaded. The generated side always comes from a recursion, never
//! from the printed text.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Zero;
use serde::Serialize;

use super::{gen_sequence_poly, parse_poly, BivarPoly, SequenceSpec};
use crate::chebyshev::cheb_coeffs;
use crate::recursions::SubgroupFamily;

/// Where the generated side of an identity comes from.
#[derive(Debug, Clone)]
pub enum Source {
    /// `Tₙ(z)` from the big-integer recursion (variable stored in the `γ` slot).
    Chebyshev(usize),
    /// `2Tₙ(z/2) − 2`, the shape `β(xⁿ)` takes in terms of `z = tr x`.
    ChebyshevShift(usize),
    Sequence(SequenceSpec, usize),
}

impl Source {
    pub fn generate(&self) -> BivarPoly {
        match self {
            Source::Chebyshev(n) => BivarPoly::from_cheb(&cheb_coeffs(*n).expect("n within cap")),
            Source::ChebyshevShift(n) => chebyshev_shift(*n),
            Source::Sequence(spec, n) => gen_sequence_poly(spec, *n).expect("n within cap"),
        }
    }
}

fn chebyshev_shift(n: usize) -> BivarPoly {
    let t = cheb_coeffs(n).expect("n within cap");
    let coeffs: Vec<BigInt> = t
        .coeffs
        .iter()
        .enumerate()
        .map(|(k, c)| {
            let doubled: BigInt = c * 2;
            let (q, r) = doubled.div_rem(&(BigInt::from(1) << k));
            assert!(r.is_zero(), "2·c_k is divisible by 2^k for Chebyshev coefficients");
            q
        })
        .collect();
    &BivarPoly::from_gamma_coeffs(&coeffs) - &BivarPoly::constant(2)
}

#[derive(Debug, Clone)]
pub struct PrintedIdentity {
    pub name: String,
    pub text: &'static str,
    pub printed: BivarPoly,
    pub source: Source,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct IdentityCheck {
    pub identity: String,
    pub status: Status,
}

const CHEBYSHEV: [&str; 9] = [
    "1",
    "z",
    "2z^2-1",
    "4z^3-3z",
    "8z^4-8z^2+1",
    "16z^5-20z^3+5z",
    "32z^6-48z^4+18z^2-1",
    "64z^7-112z^5+56z^3-7z",
    "128z^8-256z^6+160z^4-32z^2+1",
];

/// `γ(fⁿ, g)` for `n = 1..6`.
const POWER_OF_F: [&str; 6] = [
    "g",
    "g(b+4)",
    "g(b+3)^2",
    "g(b+4)(b+2)^2",
    "g(b^2+5b+5)^2",
    "g(b+4)(b+3)^2(b+1)^2",
];

/// The list `γ₀ … γ₁₀` following the `γₙ` recursion; it matches the
/// `u = γ − β − 4` sequence, i.e. the `⟨(gf)ⁿ, f⟩` family.
const GAMMA_LIST: [&str; 11] = [
    "0",
    "g",
    "g(g-b)",
    "g(g-b-1)^2",
    "g(g-b)(g-b-2)^2",
    "g(1+3b+b^2-3g-2bg+g^2)^2",
    "g(g-b)(g-b-1)^2(g-b-3)^2",
    "g(-1-6b-5b^2-b^3+6g+10bg+3b^2g-5g^2-3bg^2+g^3)^2",
    "g(g-b)(g-b-2)^2(2+4b+b^2-4g-2bg+g^2)^2",
    "g(g-b-1)^2(-1-9b-6b^2-b^3+9g+12bg+3b^2g-6g^2-3bg^2+g^3)^2",
    "g(g-b)(5+5b+b^2-5g-2bg+g^2)^2(1+3b+b^2-3g-2bg+g^2)^2",
];

/// `γ(f, [g,f]ⁿ)` for `n = 0..5`.
const COMMUTATOR_POWER: [&str; 6] = [
    "0",
    "g(g-b)",
    "g(g-b)(g+2)^2",
    "g(g-b)(g+1)^2(g+3)^2",
    "g(g-b)(g+2)^2(g^2+4g+2)^2",
    "g(g-b)(g^2+3g+1)^2(g^2+5g+5)^2",
];

/// `2Tₙ(x/2) − 2` with `x = γ − β − 2`, as factored in the inequality proofs.
const CHEBYSHEV_SHIFT: [(usize, &str); 7] = [
    (2, "(z-2)(z+2)"),
    (3, "(z-2)(z+1)^2"),
    (4, "z^2(z+2)(z-2)"),
    (5, "z^5-5z^3+5z-2"),
    (5, "(z-2)(z^2+z-1)^2"),
    (8, "z^8-8z^6+20z^4-16z^2"),
    (8, "z^2(z-2)(z+2)(z^2-2)^2"),
];

fn entry(name: String, text: &'static str, source: Source) -> PrintedIdentity {
    let printed = parse_poly(text).unwrap_or_else(|e| panic!("bad table entry {name}: {e}"));
    PrintedIdentity { name, text, printed, source }
}

/// The full table, expanded.
pub fn printed_identities() -> Vec<PrintedIdentity> {
    let mut out = Vec::new();
    for (n, text) in CHEBYSHEV.iter().enumerate() {
        out.push(entry(format!("chebyshev_T{n}"), text, Source::Chebyshev(n)));
    }
    for (k, text) in POWER_OF_F.iter().enumerate() {
        let n = k + 1;
        let spec = SequenceSpec::Family(SubgroupFamily::PowerOfF);
        out.push(entry(format!("gamma_f{n}_g"), text, Source::Sequence(spec, n)));
    }
    for (n, text) in GAMMA_LIST.iter().enumerate() {
        let spec = SequenceSpec::Family(SubgroupFamily::ProductPower);
        out.push(entry(format!("gamma_list_{n}"), text, Source::Sequence(spec, n)));
    }
    for (n, text) in COMMUTATOR_POWER.iter().enumerate() {
        let spec = SequenceSpec::Family(SubgroupFamily::CommutatorPower);
        out.push(entry(format!("gamma_f_commutator{n}"), text, Source::Sequence(spec, n)));
    }
    out.push(entry(
        "gamma_f_conjugate".into(),
        "g(g-b)",
        Source::Sequence(SequenceSpec::Family(SubgroupFamily::ConjugatePower), 1),
    ));
    for (k, (n, text)) in CHEBYSHEV_SHIFT.iter().enumerate() {
        out.push(entry(
            format!("chebyshev_shift_T{n}_{k}"),
            text,
            Source::ChebyshevShift(*n),
        ));
    }
    out
}

/// Checks an arbitrary table; a mismatch becomes a `Fail` entry.
pub fn verify_identities(table: &[PrintedIdentity]) -> Vec<IdentityCheck> {
    table
        .iter()
        .map(|id| IdentityCheck {
            identity: id.name.clone(),
            status: if id.printed == id.source.generate() {
                Status::Pass
            } else {
                Status::Fail
            },
        })
        .collect()
}

pub fn verify_printed_identities() -> Vec<IdentityCheck> {
    verify_identities(&printed_identities())
}

/// Adds one to the constant term of the named identity's printed side.
pub fn perturb(table: &mut [PrintedIdentity], name: &str) -> bool {
    match table.iter_mut().find(|id| id.name == name) {
        Some(id) => {
            id.printed = &id.printed + &BivarPoly::constant(1);
            true
        }
        None => false,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn every_printed_identity_passes() {
        let report = verify_printed_identities();
        let failed: Vec<_> = report.iter().filter(|c| c.status == Status::Fail).collect();
        assert!(failed.is_empty(), "{failed:?}");
        assert_eq!(report.len(), 9 + 6 + 11 + 6 + 1 + 7);
    }

    #[test]
    fn named_entries() {
        let report = verify_printed_identities();
        let status = |n: &str| report.iter().find(|c| c.identity == n).unwrap().status;
        assert_eq!(status("gamma_f5_g"), Status::Pass);
        assert_eq!(status("gamma_list_7"), Status::Pass);
    }

    #[test]
    fn perturbed_entry_fails() {
        let mut table = printed_identities();
        assert!(perturb(&mut table, "gamma_list_7"));
        assert!(!perturb(&mut table, "no_such_identity"));
        let report = verify_identities(&table);
        let failed: Vec<_> = report.iter().filter(|c| c.status == Status::Fail).collect();
        assert_eq!(failed.len(), 1);
        assert_eq!(failed[0].identity, "gamma_list_7");
    }

    #[test]
    fn gamma_list_is_not_the_power_family() {
        // The printed list does not follow γ(fⁿ, g) beyond n = 1.
        let table = printed_identities();
        let printed = &table.iter().find(|i| i.name == "gamma_list_2").unwrap().printed;
        let power = gen_sequence_poly(&SequenceSpec::Family(SubgroupFamily::PowerOfF), 2).unwrap();
        assert_ne!(printed, &power);
    }

    #[test]
    fn json_shape() {
        let check = IdentityCheck { identity: "x".into(), status: Status::Pass };
        assert_eq!(
            serde_json::to_string(&check).unwrap(),
            r#"{"identity":"x","status":"pass"}"#
        );
    }
}
