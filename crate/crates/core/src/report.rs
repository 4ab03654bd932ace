//! Schema-versioned reports shared by the command line and the C interface.

use std::collections::BTreeMap;
use std::fmt::Write;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::ideal::{DegreeInventory, NzdReport, HARD_DEGREE_CAP};
use crate::linalg::{is_prime, DEFAULT_PRIME};
use crate::orbits::{classify_component, is_trifocal, is_trifocal_randomized, signature, Component, Signature};
use crate::tensor::Tensor333;

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ConfigError {
    #[error("{0} is not a prime")]
    NotPrime(u32),
    #[error("prime {0} is too small; use at least 5")]
    PrimeTooSmall(u32),
    #[error("degree cap {0} exceeds the hard cap {HARD_DEGREE_CAP}")]
    CapTooLarge(u32),
    #[error("oversample factor must be at least 1")]
    Oversample,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RunConfig {
    pub prime: u32,
    pub seed: u64,
    pub degree_cap: u32,
    pub oversample: usize,
    pub permutation_tolerant: bool,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig { prime: DEFAULT_PRIME, seed: 1, degree_cap: 6, oversample: 2, permutation_tolerant: false }
    }
}

impl RunConfig {
    pub fn validate(&self) -> Result<(), ConfigError> {
        if !is_prime(self.prime as u64) {
            return Err(ConfigError::NotPrime(self.prime));
        }
        if self.prime < 5 {
            return Err(ConfigError::PrimeTooSmall(self.prime));
        }
        if self.degree_cap > HARD_DEGREE_CAP {
            return Err(ConfigError::CapTooLarge(self.degree_cap));
        }
        if self.oversample == 0 {
            return Err(ConfigError::Oversample);
        }
        Ok(())
    }
}

/// Every JSON report: schema version, command, configuration and result.
#[derive(Debug, Clone, Serialize)]
pub struct Envelope<'a, T: Serialize> {
    pub schema_version: u32,
    pub command: &'a str,
    pub config: &'a RunConfig,
    pub result: T,
}

pub fn to_json<T: Serialize>(command: &str, config: &RunConfig, result: T) -> String {
    let env = Envelope { schema_version: SCHEMA_VERSION, command, config, result };
    serde_json::to_string_pretty(&env).expect("reports serialize")
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckReport {
    pub signature: Signature,
    pub component: Component,
    pub is_trifocal: bool,
    pub reason: String,
}

/// The membership test together with the signature and component.
pub fn check_report(t: &Tensor333, cfg: &RunConfig, randomize: bool) -> CheckReport {
    let v = if randomize {
        is_trifocal_randomized(t, cfg.permutation_tolerant, cfg.seed)
    } else {
        is_trifocal(t, cfg.permutation_tolerant)
    };
    CheckReport {
        signature: signature(t),
        component: classify_component(t),
        is_trifocal: v.is_trifocal,
        reason: v.reason,
    }
}

pub fn check_text(r: &CheckReport) -> String {
    let s = &r.signature;
    let mut out = String::new();
    let _ = writeln!(out, "trifocal: {}", if r.is_trifocal { "yes" } else { "no" });
    let _ = writeln!(out, "reason: {}", r.reason);
    let _ = writeln!(out, "P-Rank {}  F-Rank {}", s.prank, s.frank);
    let _ = writeln!(out, "cubics vanish (A,B,C): {:?}", s.m3_axis_vanishing);
    if let Some(m5) = s.m5_vanishing {
        let _ = writeln!(out, "degree 5 modules vanish: {m5}");
    }
    if let Some(flags) = &s.m6_flags {
        for (l, v) in flags {
            let _ = writeln!(out, "degree 6 module {l} vanishes: {v}");
        }
    }
    let _ = writeln!(out, "component: {}", r.component);
    out
}

#[derive(Debug, Clone, Serialize)]
pub struct DiscoverReport<'a> {
    pub counts: BTreeMap<u32, u64>,
    pub degrees: &'a [DegreeInventory],
}

pub fn discover_text(degrees: &[DegreeInventory]) -> String {
    let mut out = String::new();
    let _ = writeln!(
        out,
        "{:>6}  {:<20} {:>9} {:>8} {:>5} {:>7} {:>10}",
        "degree", "label", "kronecker", "in ideal", "new", "dim", "generators"
    );
    for d in degrees {
        for l in &d.labels {
            let _ = writeln!(
                out,
                "{:>6}  {:<20} {:>9} {:>8} {:>5} {:>7} {:>10}",
                d.degree,
                l.label.to_string(),
                l.kronecker,
                l.ideal_multiplicity,
                l.new_generators,
                l.module_dim,
                l.new_generators as u64 * l.module_dim
            );
        }
        let _ = writeln!(out, "degree {}: {} new minimal generators", d.degree, d.new_generator_count());
    }
    out
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct HilbertRow {
    pub degree: u32,
    pub ambient: u64,
    pub ideal: u64,
    pub quotient: u64,
}

pub fn hilbert_text(rows: &[HilbertRow]) -> String {
    let mut out = format!("{:>6} {:>10} {:>10} {:>10}\n", "degree", "ambient", "ideal", "quotient");
    for r in rows {
        let _ = writeln!(out, "{:>6} {:>10} {:>10} {:>10}", r.degree, r.ambient, r.ideal, r.quotient);
    }
    out
}

pub fn nzd_text(r: &NzdReport) -> String {
    let mut out = format!("prime {}  witness degree {}  cap {}\n", r.prime, r.f_degree, r.cap);
    let _ = writeln!(out, "{:>6} {:>10} {:>10} {:>10} {:>6}", "degree", "H(R/J)", "shifted", "H(R/J+f)", "holds");
    for row in &r.rows {
        let _ = writeln!(
            out,
            "{:>6} {:>10} {:>10} {:>10} {:>6}",
            row.degree, row.quotient, row.shifted, row.with_f, row.holds
        );
    }
    let verdict = match r.first_failure {
        None => "non-zero-divisor through the cap".to_string(),
        Some(d) => format!("zero divisor: identity fails in degree {d}"),
    };
    let _ = writeln!(out, "verdict: {verdict}");
    out
}
