//! Structured verification reports shared by the library verifiers and the CLI.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::complex::SimplicialComplex;
use crate::linalg::{FieldSpec, DEFAULT_CHARACTERISTIC};

/// Identifiers of the checked statements, as they appear in reports.
pub mod theorem {
    pub const BALL_DUALITY: &str = "eq1-ball";
    pub const MANIFOLD_DUALITY: &str = "thm1.1";
    pub const QUOTIENT_DUALITY: &str = "cor1.4";
    pub const MULTIPLICITY: &str = "lem2.1";
    pub const SIGMA_LAYER: &str = "thm2.3i-linear";
    pub const SCHENZEL: &str = "thm3.2";
    pub const SIGMA_QUOTIENT: &str = "thm3.3";
    pub const MONOTONICITY: &str = "thm3.7";
    pub const LINK_BOUND: &str = "cor4.2";
    pub const A_INVARIANT: &str = "thm-a-invariant";
    pub const BARY_UNIMODAL: &str = "thm3.9";
    pub const FLIP_WLP: &str = "thm4.2";
    pub const STELLAR_WLP: &str = "thm4.3";
    pub const EXCISION_SEQUENCE: &str = "lem4.4";
    pub const GORENSTEIN: &str = "remark-gorenstein";
    pub const NONE: &str = "none";
    /// Alternate `verify` subcommand name for the Σ-quotient check.
    pub const SIGMA_QUOTIENT_ALIAS: &str = "thm33";

    /// Every identifier a `verify` subcommand can report.
    pub const ALL: [&str; 15] = [
        BALL_DUALITY,
        MANIFOLD_DUALITY,
        QUOTIENT_DUALITY,
        MULTIPLICITY,
        SIGMA_LAYER,
        SCHENZEL,
        SIGMA_QUOTIENT,
        MONOTONICITY,
        LINK_BOUND,
        A_INVARIANT,
        BARY_UNIMODAL,
        FLIP_WLP,
        STELLAR_WLP,
        EXCISION_SEQUENCE,
        GORENSTEIN,
    ];
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    Pass,
    Fail,
    PreconditionFailure,
    /// A value was computed and recorded; no claim is asserted.
    Recorded,
}

impl Verdict {
    pub fn from_bool(ok: bool) -> Verdict {
        if ok {
            Verdict::Pass
        } else {
            Verdict::Fail
        }
    }

    /// Process exit code: 0 for pass/recorded, 1 for fail, 2 for precondition failure.
    pub fn exit_code(self) -> i32 {
        match self {
            Verdict::Pass | Verdict::Recorded => 0,
            Verdict::Fail => 1,
            Verdict::PreconditionFailure => 2,
        }
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Verdict::Pass => "pass",
            Verdict::Fail => "fail",
            Verdict::PreconditionFailure => "precondition-failure",
            Verdict::Recorded => "recorded",
        };
        f.write_str(s)
    }
}

/// A named input with the SHA-256 digest of its canonical JSON form.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct InputDigest {
    pub name: String,
    pub sha256: String,
}

/// SHA-256 of `{"vertices": [...], "facets": [[...], ...]}` with sorted entries.
pub fn complex_digest(k: &SimplicialComplex) -> String {
    let canonical = serde_json::json!({
        "vertices": k.vertices(),
        "facets": k.facets(),
    });
    hex::encode(Sha256::digest(canonical.to_string().as_bytes()))
}

/// Field and randomness settings for a verification run.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Settings {
    pub field: FieldSpec,
    pub seed: u64,
    /// Number of random trials for best-of-k genericity checks.
    pub trials: usize,
    /// Sampling attempts per l.s.o.p.
    pub attempts: usize,
}

impl Settings {
    pub fn new(field: FieldSpec, seed: u64) -> Settings {
        Settings {
            field,
            seed,
            ..Settings::default()
        }
    }
}

impl Default for Settings {
    fn default() -> Settings {
        Settings {
            field: FieldSpec::prime(DEFAULT_CHARACTERISTIC)
                .expect("default characteristic is prime"),
            seed: 0,
            trials: 5,
            attempts: crate::graded::DEFAULT_LSOP_ATTEMPTS,
        }
    }
}

/// Outcome of one verification or computation.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Report {
    pub command: String,
    pub theorem: String,
    /// Name of the primary input as given by the caller (empty if unnamed).
    pub subject: String,
    pub inputs: Vec<InputDigest>,
    pub field: String,
    pub characteristic: u32,
    pub seeds: Vec<u64>,
    pub vectors: BTreeMap<String, Vec<i64>>,
    pub verdict: Verdict,
    pub summary: String,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
}

impl Report {
    pub fn new(command: &str, theorem: &str, field: FieldSpec) -> Report {
        Report {
            command: command.to_string(),
            theorem: theorem.to_string(),
            subject: String::new(),
            inputs: Vec::new(),
            field: field.to_string(),
            characteristic: field.characteristic(),
            seeds: Vec::new(),
            vectors: BTreeMap::new(),
            verdict: Verdict::Recorded,
            summary: String::new(),
            notes: Vec::new(),
        }
    }

    pub fn input(mut self, name: &str, k: &SimplicialComplex) -> Report {
        self.inputs.push(InputDigest {
            name: name.to_string(),
            sha256: complex_digest(k),
        });
        self
    }

    pub fn seed(mut self, seed: u64) -> Report {
        if !self.seeds.contains(&seed) {
            self.seeds.push(seed);
        }
        self
    }

    pub fn vector<T: Copy + Into<i64>>(mut self, name: &str, v: &[T]) -> Report {
        self.vectors
            .insert(name.to_string(), v.iter().map(|&x| x.into()).collect());
        self
    }

    pub fn note(mut self, note: impl Into<String>) -> Report {
        self.notes.push(note.into());
        self
    }

    pub fn with_subject(mut self, subject: &str) -> Report {
        self.subject = subject.to_string();
        self
    }

    pub fn finish(mut self, verdict: Verdict, summary: impl Into<String>) -> Report {
        self.verdict = verdict;
        self.summary = summary.into();
        self
    }

    pub fn precondition(self, summary: impl Into<String>) -> Report {
        self.finish(Verdict::PreconditionFailure, summary)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports serialize")
    }

    /// Plain-text rendering of the same content as the JSON form.
    pub fn to_text(&self) -> String {
        let mut out = format!(
            "{} [{}] {}: {}\n",
            self.command, self.theorem, self.subject, self.verdict
        );
        out.push_str(&format!("  field: {}\n", self.field));
        if !self.seeds.is_empty() {
            out.push_str(&format!("  seeds: {:?}\n", self.seeds));
        }
        for (k, v) in &self.vectors {
            out.push_str(&format!("  {k}: {v:?}\n"));
        }
        for i in &self.inputs {
            out.push_str(&format!("  input {}: {}\n", i.name, i.sha256));
        }
        for n in &self.notes {
            out.push_str(&format!("  note: {n}\n"));
        }
        out.push_str(&format!("  {}\n", self.summary));
        out
    }
}
