//! Battery scans over a rectangle of `γ` values on a fixed `β` slice.
//!
//! Rows are computed in parallel and merged in row order, so the output does
//! not depend on the number of workers.

use std::io::Write;

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::inequalities::{battery, battery_index, Assumptions};
use crate::mobius::{c, Complex};
use crate::PrincipalCharacter;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScanSpec {
    pub beta: Complex,
    pub gamma_min: Complex,
    pub gamma_max: Complex,
    pub nx: usize,
    pub ny: usize,
    pub depth: usize,
}

impl ScanSpec {
    pub fn validate(&self) -> Result<()> {
        if self.nx < 2 || self.ny < 2 {
            return Err(Error::InvalidScan(format!(
                "resolution {}x{} must be at least 2x2",
                self.nx, self.ny
            )));
        }
        let (lo, hi) = (self.gamma_min, self.gamma_max);
        if !(hi.re > lo.re && hi.im > lo.im) {
            return Err(Error::InvalidScan(format!("degenerate rectangle {lo} .. {hi}")));
        }
        if ![lo, hi, self.beta].iter().all(|z| z.re.is_finite() && z.im.is_finite()) {
            return Err(Error::NonFinite("scan spec"));
        }
        Ok(())
    }

    /// Grid point in column `i`, row `j`; row 0 is the top edge (largest `Im γ`).
    pub fn gamma_at(&self, i: usize, j: usize) -> Complex {
        let (lo, hi) = (self.gamma_min, self.gamma_max);
        let re = lo.re + (hi.re - lo.re) * i as f64 / (self.nx - 1) as f64;
        let im = hi.im - (hi.im - lo.im) * j as f64 / (self.ny - 1) as f64;
        c(re, im)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ScanPoint {
    pub gamma: Complex,
    pub verdict_code: u8,
    pub first_violated: Option<String>,
    /// Position of `first_violated` in the battery order, `0` for none.
    pub index: u8,
}

fn scan_point(spec: &ScanSpec, gamma: Complex) -> ScanPoint {
    let ch = PrincipalCharacter::new(gamma, spec.beta, c(-4.0, 0.0));
    let rep = battery(&ch, &Assumptions::default(), spec.depth);
    let first = rep.first_violation().map(|r| r.name.clone());
    let index = first.as_deref().and_then(battery_index).unwrap_or(0) as u8;
    ScanPoint { gamma, verdict_code: rep.verdict.code(), first_violated: first, index }
}

/// All grid points, row-major from the top row, using `workers` threads.
pub fn run_scan(spec: &ScanSpec, workers: usize) -> Result<Vec<ScanPoint>> {
    spec.validate()?;
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(workers.max(1))
        .build()
        .map_err(|e| Error::InvalidScan(e.to_string()))?;
    let rows: Vec<Vec<ScanPoint>> = pool.install(|| {
        (0..spec.ny)
            .into_par_iter()
            .map(|j| (0..spec.nx).map(|i| scan_point(spec, spec.gamma_at(i, j))).collect())
            .collect()
    });
    Ok(rows.into_iter().flatten().collect())
}

/// `re_gamma,im_gamma,verdict_code,first_violated`, one row per point.
pub fn write_csv<W: Write>(points: &[ScanPoint], out: W) -> std::io::Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(["re_gamma", "im_gamma", "verdict_code", "first_violated"])?;
    for p in points {
        w.write_record([
            p.gamma.re.to_string(),
            p.gamma.im.to_string(),
            p.verdict_code.to_string(),
            p.first_violated.clone().unwrap_or_default(),
        ])?;
    }
    w.flush()
}

/// Binary greymap; pixel = 17 × battery index of the first violation.
pub fn write_pgm<W: Write>(spec: &ScanSpec, points: &[ScanPoint], mut out: W) -> std::io::Result<()> {
    write!(out, "P5\n{} {}\n255\n", spec.nx, spec.ny)?;
    let pixels: Vec<u8> = points.iter().map(|p| p.index.saturating_mul(17)).collect();
    out.write_all(&pixels)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn spec(nx: usize, ny: usize) -> ScanSpec {
        ScanSpec {
            beta: c(0.0, 0.0),
            gamma_min: c(-0.1, -0.1),
            gamma_max: c(0.1, 0.1),
            nx,
            ny,
            depth: 4,
        }
    }

    #[test]
    fn near_origin_violates_jorgensen() {
        let pts = run_scan(&spec(2, 2), 1).unwrap();
        assert_eq!(pts.len(), 4);
        for p in &pts {
            assert_eq!(p.verdict_code, 2);
            assert_eq!(p.first_violated.as_deref(), Some("jorgensen"));
            assert_eq!(p.index, 1);
        }
    }

    #[test]
    fn figure_eight_point_passes() {
        let h = 3f64.sqrt() / 2.0;
        let s = ScanSpec { gamma_min: c(0.0, 0.0), gamma_max: c(0.5, h), ..spec(3, 3) };
        let pts = run_scan(&s, 2).unwrap();
        // top-right corner is (1+i√3)/2
        let p = &pts[2];
        assert!((p.gamma - c(0.5, h)).norm() < 1e-15);
        assert_eq!(p.verdict_code, 0);
    }

    #[test]
    fn pgm_header() {
        let s = spec(3, 2);
        let pts = run_scan(&s, 1).unwrap();
        let mut buf = Vec::new();
        write_pgm(&s, &pts, &mut buf).unwrap();
        assert!(buf.starts_with(b"P5\n3 2\n255\n"));
        assert_eq!(buf.len(), b"P5\n3 2\n255\n".len() + 6);
    }

    #[test]
    fn rejects_bad_specs() {
        assert!(run_scan(&spec(1, 4), 1).is_err());
        let flat = ScanSpec { gamma_max: c(0.1, -0.1), ..spec(2, 2) };
        assert!(matches!(run_scan(&flat, 1), Err(Error::InvalidScan(_))));
    }
}
