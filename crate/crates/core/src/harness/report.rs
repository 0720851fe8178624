//! Verification reports: one row per check, emitted as JSON, CSV or a
//! markdown table with the result-to-suite traceability matrix.

use std::io::Write;

use serde::{Deserialize, Serialize};

use crate::error::Result;

use super::config::Config;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CheckResult {
    pub name: String,
    /// Which mathematical result the check exercises.
    pub reference: String,
    pub lhs: f64,
    pub rhs: f64,
    pub error: f64,
    pub tolerance: f64,
    pub pass: bool,
}

impl CheckResult {
    /// Numerical comparison: `error = |lhs - rhs|`, scaled by `|rhs|` when `relative`.
    pub fn compare(name: impl Into<String>, reference: &str, lhs: f64, rhs: f64, tolerance: f64, relative: bool) -> Self {
        let mut error = (lhs - rhs).abs();
        if relative && rhs != 0.0 {
            error /= rhs.abs();
        }
        Self::measured(name, reference, lhs, rhs, error, tolerance)
    }

    /// A precomputed error measure against a tolerance.
    pub fn measured(name: impl Into<String>, reference: &str, lhs: f64, rhs: f64, error: f64, tolerance: f64) -> Self {
        let pass = error.is_finite() && error <= tolerance;
        CheckResult { name: name.into(), reference: reference.into(), lhs, rhs, error, tolerance, pass }
    }

    /// A yes/no outcome; `lhs` and `rhs` carry whatever diagnostic fits.
    pub fn flag(name: impl Into<String>, reference: &str, ok: bool, lhs: f64, rhs: f64) -> Self {
        CheckResult {
            name: name.into(),
            reference: reference.into(),
            lhs,
            rhs,
            error: if ok { 0.0 } else { 1.0 },
            tolerance: 0.0,
            pass: ok,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub suite: String,
    pub config: Config,
    pub checks: Vec<CheckResult>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ReportFormat {
    Json,
    Csv,
    Markdown,
}

impl std::str::FromStr for ReportFormat {
    type Err = String;
    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "json" => Ok(ReportFormat::Json),
            "csv" => Ok(ReportFormat::Csv),
            "markdown" | "md" => Ok(ReportFormat::Markdown),
            _ => Err(format!("unknown report format `{s}`")),
        }
    }
}

/// Names of the results the checks exercise.
pub mod refs {
    pub const MOYAL: &str = "Moyal identity for the Fourier-Wigner transform";
    pub const ORTHONORMAL_BASIS: &str = "Special Hermite functions form an orthonormal basis";
    pub const RANK_ONE: &str = "Rank-one rule and kernel form of the Weyl transform";
    pub const RADIAL: &str = "Radial symbols give multiples of the Hermite projections";
    pub const HOMOMORPHISM: &str = "Weyl transform turns twisted convolution into composition";
    pub const HEAT_KERNEL: &str = "Weyl transform of the special Hermite heat kernel is the Hermite semigroup";
    pub const HEAT_SEMIGROUP: &str = "Semigroup law for the special Hermite heat kernel";
    pub const BERGMAN_ISOMETRY: &str = "Hermite-Bergman isometry";
    pub const STRIP_NORM: &str = "Strip-norm characterization of analytic vectors";
    pub const GUTZMER: &str = "Gutzmer-type identity";
    pub const BARGMANN_LINK: &str = "Bargmann transform links Hermite and Taylor coefficients";
    pub const EXPONENTIAL_BOUND: &str = "Hermite coefficient bound under exponential decay";
    pub const GAUSSIAN_BOUND: &str = "Hermite coefficient bound under Gaussian decay";
    pub const HARDY: &str = "Hardy uncertainty trichotomy and its polynomial-times-Gaussian extension";
    pub const ANALYTIC_FACTORIZATION: &str = "Factorization of analytic vectors";
    pub const ANALYTIC_MAPPING: &str = "Weyl transforms of exponentially decaying symbols map into analytic vectors";
    pub const TENSOR_ESTIMATE: &str = "Weighted estimate for special Hermite coefficients of Fourier-Wigner transforms";
    pub const ENTIRE_FACTORIZATION: &str = "Factorization of entire vectors";
    pub const ENTIRE_MAPPING: &str = "Weyl transforms of Gaussian-decaying symbols map into entire vectors";
    pub const CLOSURE: &str = "Closure of the decay classes under twisted convolution";
    pub const SCHWARTZ: &str = "Weyl transforms of Schwartz symbols map L2 into Schwartz functions";
}

/// Results covered by the harness and the suite that exercises each.
pub const TRACEABILITY: &[(&str, &str)] = &[
    (refs::MOYAL, "moyal"),
    (refs::ORTHONORMAL_BASIS, "moyal"),
    (refs::RANK_ONE, "weyl"),
    (refs::RADIAL, "weyl"),
    (refs::HOMOMORPHISM, "twisted-algebra"),
    (refs::HEAT_KERNEL, "semigroups"),
    (refs::HEAT_SEMIGROUP, "semigroups"),
    (refs::BERGMAN_ISOMETRY, "bergman"),
    (refs::STRIP_NORM, "bergman"),
    (refs::GUTZMER, "gutzmer"),
    (refs::BARGMANN_LINK, "bounds-3.9"),
    (refs::EXPONENTIAL_BOUND, "bounds-3.9"),
    (refs::GAUSSIAN_BOUND, "bounds-4.7"),
    (refs::HARDY, "hardy"),
    (refs::ANALYTIC_FACTORIZATION, "factorize-analytic"),
    (refs::ANALYTIC_MAPPING, "factorize-analytic"),
    (refs::TENSOR_ESTIMATE, "factorize-analytic"),
    (refs::ENTIRE_FACTORIZATION, "factorize-entire"),
    (refs::ENTIRE_MAPPING, "factorize-entire"),
    (refs::CLOSURE, "closure"),
    (refs::SCHWARTZ, "schwartz"),
];

impl VerificationReport {
    pub fn new(suite: &str, config: &Config) -> Self {
        VerificationReport { suite: suite.into(), config: config.clone(), checks: Vec::new() }
    }

    pub fn push(&mut self, check: CheckResult) {
        self.checks.push(check);
    }

    pub fn extend(&mut self, other: VerificationReport) {
        self.checks.extend(other.checks);
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    pub fn failures(&self) -> usize {
        self.checks.iter().filter(|c| !c.pass).count()
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)?)
    }

    pub fn write<W: Write>(&self, format: ReportFormat, mut w: W) -> Result<()> {
        match format {
            ReportFormat::Json => {
                w.write_all(self.to_json()?.as_bytes())?;
                w.write_all(b"\n")?;
            }
            ReportFormat::Csv => {
                let mut out = csv::Writer::from_writer(w);
                for c in &self.checks {
                    out.serialize(c).map_err(std::io::Error::other)?;
                }
                out.flush()?;
            }
            ReportFormat::Markdown => self.write_markdown(w)?,
        }
        Ok(())
    }

    fn write_markdown<W: Write>(&self, mut w: W) -> Result<()> {
        writeln!(w, "# Verification report: `{}`\n", self.suite)?;
        writeln!(w, "{} checks, {} failing.\n", self.checks.len(), self.failures())?;
        writeln!(w, "## Traceability\n\n| Result | Suite | Checks | Status |\n|---|---|---|---|")?;
        for (result, suite) in TRACEABILITY {
            let hits: Vec<&CheckResult> = self.checks.iter().filter(|c| c.reference == *result).collect();
            let status = match (hits.is_empty(), hits.iter().all(|c| c.pass)) {
                (true, _) => "not run",
                (false, true) => "pass",
                (false, false) => "FAIL",
            };
            writeln!(w, "| {result} | {suite} | {} | {status} |", hits.len())?;
        }
        writeln!(w, "\n## Checks\n\n| Check | Result | lhs | rhs | error | tolerance | pass |\n|---|---|---|---|---|---|---|")?;
        for c in &self.checks {
            writeln!(w, "| {} | {} | {:.6e} | {:.6e} | {:.3e} | {:.1e} | {} |", c.name, c.reference, c.lhs, c.rhs, c.error, c.tolerance, c.pass)?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample() -> VerificationReport {
        let mut r = VerificationReport::new("demo", &Config::default());
        r.push(CheckResult::compare("a", TRACEABILITY[0].0, 1.0, 1.0 + 1e-9, 1e-8, false));
        r.push(CheckResult::flag("b", TRACEABILITY[1].0, false, 0.0, 0.0));
        r
    }

    #[test]
    fn json_round_trips() {
        let r = sample();
        let back: VerificationReport = serde_json::from_str(&r.to_json().unwrap()).unwrap();
        assert_eq!(back, r);
        assert!(!r.passed() && r.failures() == 1);
    }

    #[test]
    fn csv_has_one_row_per_check() {
        let mut buf = Vec::new();
        sample().write(ReportFormat::Csv, &mut buf).unwrap();
        let s = String::from_utf8(buf).unwrap();
        assert_eq!(s.lines().count(), 3);
        assert!(s.starts_with("name,reference,lhs,rhs,error,tolerance,pass"));
    }

    #[test]
    fn markdown_lists_every_result() {
        let mut buf = Vec::new();
        sample().write(ReportFormat::Markdown, &mut buf).unwrap();
        let s = String::from_utf8(buf).unwrap();
        for (result, _) in TRACEABILITY {
            assert!(s.contains(result));
        }
    }
}
