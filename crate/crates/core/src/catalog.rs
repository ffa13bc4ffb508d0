//! Named groups whose characters saturate the inequalities.
//!
//! Irrational values are kept as formula strings next to the number they
//! evaluate to, so sharpness can be checked well past the printed digits.

use std::f64::consts::PI;

use serde::Serialize;

use crate::inequalities::evaluate_named;
use crate::mobius::{c, real, Complex};
use crate::oracle::{realize, Realization};
use crate::tol;
use crate::PrincipalCharacter;

#[derive(Debug, Clone, Serialize)]
pub struct Formulas {
    pub gamma: &'static str,
    pub beta_f: &'static str,
    pub beta_g: &'static str,
}

#[derive(Debug, Clone, Serialize)]
pub struct KnownGroup {
    pub name: &'static str,
    pub description: &'static str,
    pub formulas: Formulas,
    pub character: PrincipalCharacter,
    pub sharp_for: Vec<&'static str>,
    pub provenance: &'static str,
    /// Finite-group data rather than a Kleinian group.
    pub elementary: bool,
    pub realization: Option<Realization>,
}

#[derive(Debug, Clone, Serialize)]
pub struct SharpnessCheck {
    pub group: &'static str,
    pub inequality: &'static str,
    pub margin: f64,
    pub sharp: bool,
}

struct Row {
    name: &'static str,
    description: &'static str,
    formulas: [&'static str; 3],
    values: [Complex; 3],
    sharp_for: &'static [&'static str],
    provenance: &'static str,
    elementary: bool,
}

fn rows() -> Vec<Row> {
    let s5 = 5f64.sqrt();
    let minus4 = real(-4.0);
    let g237 = 4.0 * ((2.0 * PI / 7.0).cos().powi(2) - (PI / 7.0).sin().powi(2));
    let a5_beta = real(-(5.0 + s5) / 2.0);
    vec![
        Row {
            name: "fig8",
            description: "figure-eight knot complement group",
            formulas: ["(1+i√3)/2", "0", "0"],
            values: [c(0.5, 3f64.sqrt() / 2.0), real(0.0), real(0.0)],
            sharp_for: &["jorgensen"],
            provenance: "Jørgensen inequality, parabolic generators",
            elementary: false,
        },
        Row {
            name: "237",
            description: "(2,3,7) hyperbolic triangle group",
            formulas: ["4(cos²(2π/7) − sin²(π/7))", "−3", "−4"],
            values: [real(g237), real(-3.0), minus4],
            sharp_for: &["lem15_first"],
            provenance: "lem15 bound, first inequality",
            elementary: false,
        },
        Row {
            name: "237_second",
            description: "(2,3,7) hyperbolic triangle group, second generating pair",
            formulas: ["−4", "−3", "−4"],
            values: [minus4, real(-3.0), minus4],
            sharp_for: &["lem15_second"],
            provenance: "lem15 bound, second inequality",
            elementary: false,
        },
        Row {
            name: "245",
            description: "(2,4,5) hyperbolic triangle group",
            formulas: ["(√5−1)/2", "−2", "−4"],
            values: [real((s5 - 1.0) / 2.0), real(-2.0), minus4],
            sharp_for: &["beta_plus_2"],
            provenance: "|γ| + |β+2| bound",
            elementary: false,
        },
        Row {
            name: "g623",
            description: "generalized triangle group Γ(6,2;3)",
            formulas: ["−1", "−1", "−4"],
            values: [real(-1.0), real(-1.0), minus4],
            sharp_for: &["beta_plus_1", "beta_plus_1_sq"],
            provenance: "|γ| + |β+1| bounds",
            elementary: false,
        },
        // The two golden rows saturate their bound but are not Kleinian: the
        // battery rejects both (see the tests). Kept for the sharpness figure.
        Row {
            name: "z2_10_10_5_plus",
            description: "ℤ₂-extension of the (10,10,5) triangle group, β = −(3+√5)/2",
            formulas: ["(√5−3)/2", "−(3+√5)/2", "−4"],
            values: [real((s5 - 3.0) / 2.0), real(-(3.0 + s5) / 2.0), minus4],
            sharp_for: &["golden_plus"],
            provenance: "|γ| + |β + (3±√5)/2| bound",
            elementary: false,
        },
        Row {
            name: "z2_10_10_5_minus",
            description: "ℤ₂-extension of the (10,10,5) triangle group, β = −(3−√5)/2",
            formulas: ["(√5−3)/2", "−(3−√5)/2", "−4"],
            values: [real((s5 - 3.0) / 2.0), real(-(3.0 - s5) / 2.0), minus4],
            sharp_for: &["golden_minus"],
            provenance: "|γ| + |β + (3±√5)/2| bound",
            elementary: false,
        },
        Row {
            name: "a5_first",
            description: "A₅ data left over in the second-order Jørgensen bound",
            formulas: ["2cos(π/5) − 2", "−(5+√5)/2", "−4"],
            values: [real(2.0 * (PI / 5.0).cos() - 2.0), a5_beta, minus4],
            sharp_for: &[],
            provenance: "finite group A₅",
            elementary: true,
        },
        Row {
            name: "a5_second",
            description: "A₅ data left over in the second-order Jørgensen bound",
            formulas: ["2cos(2π/5) − 2", "−(5+√5)/2", "−4"],
            values: [real(2.0 * (2.0 * PI / 5.0).cos() - 2.0), a5_beta, minus4],
            sharp_for: &[],
            provenance: "finite group A₅",
            elementary: true,
        },
    ]
}

pub fn catalog_entries() -> Vec<KnownGroup> {
    rows()
        .into_iter()
        .map(|r| {
            let [g, b, bt] = r.values;
            let character = PrincipalCharacter::new(g, b, bt);
            KnownGroup {
                name: r.name,
                description: r.description,
                formulas: Formulas {
                    gamma: r.formulas[0],
                    beta_f: r.formulas[1],
                    beta_g: r.formulas[2],
                },
                character,
                sharp_for: r.sharp_for.to_vec(),
                provenance: r.provenance,
                elementary: r.elementary,
                realization: realize(&character).ok(),
            }
        })
        .collect()
}

pub fn lookup(name: &str) -> Option<KnownGroup> {
    catalog_entries().into_iter().find(|e| e.name == name)
}

/// Evaluates each `sharp_for` inequality at the entry's character.
pub fn verify_sharpness(entry: &KnownGroup) -> Vec<SharpnessCheck> {
    entry
        .sharp_for
        .iter()
        .map(|&name| {
            let margin = evaluate_named(&entry.character, name)
                .map(|r| r.margin)
                .unwrap_or(f64::NAN);
            SharpnessCheck {
                group: entry.name,
                inequality: name,
                margin,
                sharp: margin.abs() <= tol::SHARP,
            }
        })
        .collect()
}
