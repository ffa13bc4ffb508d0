//! Command-line front end. [`run`] does all the work and returns the bytes to
//! print and the exit code, so the binary is a thin shell around it.

use std::path::PathBuf;
use std::str::FromStr;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::catalog::{catalog_entries, lookup, verify_sharpness, KnownGroup, SharpnessCheck};
use crate::error::Error;
use crate::inequalities::{battery, Assumptions, FOrder, DEFAULT_DEPTH};
use crate::mobius::Complex;
use crate::oracle::{oracle_suite, random_characters, realize};
use crate::recursions::{subgroup_character, SubgroupFamily};
use crate::scan::{run_scan, write_csv, write_pgm, ScanSpec};
use crate::sympoly::identities::{perturb, printed_identities, verify_identities, Status};
use crate::PrincipalCharacter;

pub const EXIT_USAGE: i32 = 1;
pub const EXIT_DEGENERATE: i32 = 4;
pub const EXIT_IDENTITY_FAILURE: i32 = 5;

/// Characters in the oracle part of `verify`, and the seed they come from.
const VERIFY_CHARACTERS: usize = 24;
const VERIFY_SEED: u64 = 0x5eed;

const COMPLEX_HELP: &str = "Complex literals: an optional real part and an optional imaginary part \
suffixed with i, e.g. -3, 0.5+0.8660254i, 2i, 1e-3-4i. A Unicode minus (−) is accepted. \
Surds are not parsed; `check --catalog <name>` uses the exact values of a catalog entry.";

#[derive(Debug, Parser)]
#[command(name = "kleinian", version, about = "Discreteness tests for two-generator groups", after_help = COMPLEX_HELP)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Pgm,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Run the inequality battery on (γ, β(f), β(g)); exit 0 pass, 2 violation,
    /// 3 violation explained only by exceptional cases, 4 degenerate.
    Check {
        /// γ = tr[f,g] − 2
        #[arg(allow_hyphen_values = true, value_parser = parse_complex, required_unless_present = "catalog")]
        gamma: Option<Complex>,
        /// β(f) = tr²f − 4
        #[arg(allow_hyphen_values = true, value_parser = parse_complex, required_unless_present = "catalog")]
        beta: Option<Complex>,
        /// β(g) = tr²g − 4
        #[arg(allow_hyphen_values = true, value_parser = parse_complex, required_unless_present = "catalog")]
        beta_g: Option<Complex>,
        /// Take the exact character of a catalog entry instead of literals.
        #[arg(long, conflicts_with_all = ["gamma", "beta", "beta_g"])]
        catalog: Option<String>,
        /// Depth of the n-indexed families.
        #[arg(long = "n", default_value_t = DEFAULT_DEPTH)]
        depth: usize,
        /// Known order of f: a positive integer, or `none` for infinite order.
        #[arg(long, value_parser = parse_f_order)]
        assume_f_order: Option<FOrder>,
        /// g is known to have order two.
        #[arg(long)]
        assume_g_order2: bool,
    },
    /// Check every printed trace identity exactly and the recursions against
    /// explicit matrices.
    Verify {
        #[arg(long = "n", default_value_t = DEFAULT_DEPTH)]
        depth: usize,
        #[arg(long, hide = true)]
        perturb: Option<String>,
    },
    /// Battery verdicts over a rectangle of γ values with β(g) = −4.
    Scan {
        /// β(f) for the whole slice.
        #[arg(long, allow_hyphen_values = true, value_parser = parse_complex)]
        beta: Complex,
        #[arg(long, allow_hyphen_values = true, value_parser = parse_complex)]
        gamma_min: Complex,
        #[arg(long, allow_hyphen_values = true, value_parser = parse_complex)]
        gamma_max: Complex,
        #[arg(long, default_value_t = 64)]
        nx: usize,
        #[arg(long, default_value_t = 64)]
        ny: usize,
        #[arg(long = "n", default_value_t = DEFAULT_DEPTH)]
        depth: usize,
        #[arg(long, value_enum, default_value_t = Format::Csv)]
        format: Format,
        /// Output file; stdout when absent.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Worker threads; the output does not depend on this.
        #[arg(long, default_value_t = 1)]
        workers: usize,
    },
    /// Named groups, their characters and the bounds they attain.
    Catalog,
    /// Explicit matrices f, g with the given character.
    Realize {
        #[arg(allow_hyphen_values = true, value_parser = parse_complex)]
        gamma: Complex,
        #[arg(allow_hyphen_values = true, value_parser = parse_complex)]
        beta: Complex,
        #[arg(allow_hyphen_values = true, value_parser = parse_complex)]
        beta_g: Complex,
    },
    /// Character of the nth subgroup of a family (PowerOfF, ConjugatePower,
    /// ProductPower, CommutatorPower).
    Subgroup {
        family: SubgroupFamily,
        n: usize,
        #[arg(allow_hyphen_values = true, value_parser = parse_complex)]
        gamma: Complex,
        #[arg(allow_hyphen_values = true, value_parser = parse_complex)]
        beta: Complex,
        #[arg(allow_hyphen_values = true, value_parser = parse_complex)]
        beta_g: Complex,
    },
}

/// Parses `re`, `imi`, `re±imi`, with `−` accepted for `-`.
pub fn parse_complex(s: &str) -> Result<Complex, String> {
    let cleaned: String = s.trim().replace('−', "-").chars().filter(|c| !c.is_whitespace()).collect();
    let z = Complex::from_str(&cleaned).map_err(|_| format!("not a complex literal: `{s}`"))?;
    if z.re.is_finite() && z.im.is_finite() {
        Ok(z)
    } else {
        Err(format!("non-finite value: `{s}`"))
    }
}

fn parse_f_order(s: &str) -> Result<FOrder, String> {
    if s.eq_ignore_ascii_case("none") {
        return Ok(FOrder::Infinite);
    }
    match s.parse::<u32>() {
        Ok(k) if k >= 1 => Ok(FOrder::Finite(k)),
        _ => Err(format!("expected a positive order or `none`, got `{s}`")),
    }
}

#[derive(Debug, Default)]
pub struct Outcome {
    pub stdout: Vec<u8>,
    pub stderr: String,
    pub code: i32,
}

impl Outcome {
    fn ok(stdout: impl Into<Vec<u8>>) -> Self {
        Outcome { stdout: stdout.into(), stderr: String::new(), code: 0 }
    }

    fn fail(code: i32, msg: impl Into<String>) -> Self {
        Outcome { stdout: Vec::new(), stderr: msg.into(), code }
    }
}

fn json<T: Serialize>(value: &T) -> Vec<u8> {
    let mut out = serde_json::to_vec_pretty(value).expect("serializable");
    out.push(b'\n');
    out
}

fn error_code(e: &Error) -> i32 {
    match e {
        Error::DegenerateCharacter => EXIT_DEGENERATE,
        _ => EXIT_USAGE,
    }
}

/// Parses `args` (program name first) and runs the command.
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    match Cli::try_parse_from(args) {
        Ok(cli) => execute(cli.command),
        Err(e) if !e.use_stderr() => Outcome::ok(e.to_string()),
        Err(e) => Outcome::fail(EXIT_USAGE, e.to_string()),
    }
}

pub fn execute(cmd: Command) -> Outcome {
    match cmd {
        Command::Check { gamma, beta, beta_g, catalog, depth, assume_f_order, assume_g_order2 } => {
            let ch = match (catalog, gamma, beta, beta_g) {
                (Some(name), ..) => match lookup(&name) {
                    Some(e) => e.character,
                    None => {
                        return Outcome::fail(EXIT_USAGE, format!("error: no catalog entry `{name}`\n"))
                    }
                },
                (None, Some(g), Some(b), Some(bt)) => PrincipalCharacter::new(g, b, bt),
                _ => return Outcome::fail(EXIT_USAGE, "error: need γ, β(f), β(g) or --catalog\n"),
            };
            let a = Assumptions { f_order: assume_f_order, g_order2: assume_g_order2 };
            let rep = battery(&ch, &a, depth);
            Outcome { stdout: json(&rep), stderr: String::new(), code: rep.verdict.code() as i32 }
        }
        Command::Verify { depth, perturb: target } => cmd_verify(depth, target.as_deref()),
        Command::Scan { beta, gamma_min, gamma_max, nx, ny, depth, format, out, workers } => {
            let spec = ScanSpec { beta, gamma_min, gamma_max, nx, ny, depth };
            cmd_scan(&spec, format, out, workers)
        }
        Command::Catalog => {
            #[derive(Serialize)]
            struct Row<'a> {
                #[serde(flatten)]
                entry: &'a KnownGroup,
                sharpness: Vec<SharpnessCheck>,
            }
            let entries = catalog_entries();
            let rows: Vec<Row> =
                entries.iter().map(|e| Row { entry: e, sharpness: verify_sharpness(e) }).collect();
            Outcome::ok(json(&rows))
        }
        Command::Realize { gamma, beta, beta_g } => {
            match realize(&PrincipalCharacter::new(gamma, beta, beta_g)) {
                Ok(r) => Outcome::ok(json(&r)),
                Err(e) => Outcome::fail(error_code(&e), format!("error: {e}\n")),
            }
        }
        Command::Subgroup { family, n, gamma, beta, beta_g } => {
            #[derive(Serialize)]
            struct Sub {
                family: &'static str,
                n: usize,
                source: PrincipalCharacter,
                character: PrincipalCharacter,
            }
            let source = PrincipalCharacter::new(gamma, beta, beta_g);
            match subgroup_character(&source, family, n) {
                Ok(character) => {
                    Outcome::ok(json(&Sub { family: family.name(), n, source, character }))
                }
                Err(e) => Outcome::fail(error_code(&e), format!("error: {e}\n")),
            }
        }
    }
}

fn cmd_verify(depth: usize, target: Option<&str>) -> Outcome {
    let mut table = printed_identities();
    if let Some(name) = target {
        if !perturb(&mut table, name) {
            return Outcome::fail(EXIT_USAGE, format!("error: no identity named `{name}`\n"));
        }
    }
    let checks = verify_identities(&table);
    let failed: Vec<&str> = checks
        .iter()
        .filter(|c| c.status == Status::Fail)
        .map(|c| c.identity.as_str())
        .collect();

    let chars = random_characters(VERIFY_CHARACTERS, VERIFY_SEED);
    let oracle = oracle_suite(&chars, depth, 1e-8);

    let mut out = format!(
        "symbolic: {}/{} identities match their recursions\n",
        checks.len() - failed.len(),
        checks.len()
    );
    out += &format!(
        "oracle: {} matrix checks (n ≤ {depth}), max relative error {:.2e}\n",
        oracle.checks, oracle.max_error
    );
    if failed.is_empty() && oracle.failures.is_empty() {
        out += "all identities pass\n";
        return Outcome::ok(out);
    }
    for name in &failed {
        out += &format!("FAIL {name}\n");
    }
    for f in &oracle.failures {
        out += &format!("FAIL oracle {} n={} error {:.2e}\n", f.family, f.n, f.error);
    }
    Outcome { stdout: out.into_bytes(), stderr: String::new(), code: EXIT_IDENTITY_FAILURE }
}

fn cmd_scan(spec: &ScanSpec, format: Format, out: Option<PathBuf>, workers: usize) -> Outcome {
    let points = match run_scan(spec, workers) {
        Ok(p) => p,
        Err(e) => return Outcome::fail(EXIT_USAGE, format!("error: {e}\n")),
    };
    let mut buf = Vec::new();
    let written = match format {
        Format::Csv => write_csv(&points, &mut buf),
        Format::Pgm => write_pgm(spec, &points, &mut buf),
    };
    if let Err(e) = written {
        return Outcome::fail(EXIT_USAGE, format!("error: {e}\n"));
    }
    match out {
        None => Outcome::ok(buf),
        Some(path) => match std::fs::write(&path, &buf) {
            Ok(()) => Outcome::ok(Vec::new()),
            Err(e) => Outcome::fail(EXIT_USAGE, format!("error: {}: {e}\n", path.display())),
        },
    }
}
