//! Versioned JSON documents for complexes, vertex maps and reports.
//!
//! Unknown fields are rejected. Writers emit the canonical form: edges as
//! sorted pairs `[u, v]` with `u < v`, in lexicographic order; optional
//! fields omitted when absent.

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::complex::FlagComplex;
use crate::config::Limits;
use crate::error::Error;
use crate::isometry::Isometry;
use crate::loops::LoopPath;
use crate::verdict::{Verdict, Witness};

pub const COMPLEX_FORMAT: &str = "flagcurv-complex/1";
pub const MAP_FORMAT: &str = "flagcurv-map/1";
pub const REPORT_FORMAT: &str = "flagcurv-report/1";

#[derive(Debug, thiserror::Error)]
pub enum FormatError {
    #[error("line {line}, column {column}: {message}")]
    Syntax { line: usize, column: usize, message: String },
    #[error("unsupported format {found:?}, expected {expected:?}")]
    Version { found: String, expected: &'static str },
    #[error(transparent)]
    Invalid(#[from] Error),
}

impl From<serde_json::Error> for FormatError {
    fn from(e: serde_json::Error) -> Self {
        let message = e.to_string();
        // serde_json appends " at line L column C"; keep the bare message.
        let message = match message.rfind(" at line ") {
            Some(i) => message[..i].to_string(),
            None => message,
        };
        FormatError::Syntax { line: e.line(), column: e.column(), message }
    }
}

fn check_format(found: &str, expected: &'static str) -> Result<(), FormatError> {
    if found != expected {
        return Err(FormatError::Version { found: found.to_string(), expected });
    }
    Ok(())
}

fn to_pretty_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("serializable");
    s.push('\n');
    s
}

/// On-disk complex.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ComplexFile {
    pub format: String,
    pub vertex_count: usize,
    pub edges: Vec<[usize; 2]>,
    /// Explicit simplices. The complex used is always the flag completion
    /// of the 1-skeleton; the list only feeds the flagness check.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub simplices: Option<Vec<Vec<usize>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub labels: Option<Vec<String>>,
    /// Vertices on the edge of a finite window cut from a larger complex.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub boundary: Option<Vec<usize>>,
}

impl ComplexFile {
    pub fn from_complex(c: &FlagComplex) -> Self {
        ComplexFile {
            format: COMPLEX_FORMAT.to_string(),
            vertex_count: c.vertex_count(),
            edges: c.edges().map(|(u, v)| [u, v]).collect(),
            simplices: None,
            labels: c.labels().map(<[String]>::to_vec),
            boundary: (!c.boundary().is_empty()).then(|| c.boundary().to_vec()),
        }
    }

    pub fn parse(text: &str) -> Result<Self, FormatError> {
        let file: ComplexFile = serde_json::from_str(text)?;
        check_format(&file.format, COMPLEX_FORMAT)?;
        Ok(file)
    }

    /// Rewrites edges, simplices and boundary in canonical order.
    pub fn canonicalize(&mut self) {
        for e in &mut self.edges {
            e.sort_unstable();
        }
        self.edges.sort_unstable();
        self.edges.dedup();
        if let Some(simplices) = &mut self.simplices {
            for s in simplices.iter_mut() {
                s.sort_unstable();
                s.dedup();
            }
            simplices.sort();
            simplices.dedup();
        }
        if let Some(b) = &mut self.boundary {
            b.sort_unstable();
            b.dedup();
        }
    }

    /// Edges of the file plus the edges of every explicit simplex.
    fn all_edges(&self) -> Vec<(usize, usize)> {
        let mut edges: Vec<(usize, usize)> = self.edges.iter().map(|e| (e[0], e[1])).collect();
        for s in self.simplices.iter().flatten() {
            for (i, &u) in s.iter().enumerate() {
                for &v in &s[i + 1..] {
                    if u != v {
                        edges.push((u, v));
                    }
                }
            }
        }
        edges
    }

    pub fn to_complex(&self) -> Result<FlagComplex, FormatError> {
        let mut c = FlagComplex::new(self.vertex_count, &self.all_edges())?;
        if let Some(labels) = &self.labels {
            c = c.with_labels(labels.clone())?;
        }
        if let Some(b) = &self.boundary {
            c = c.with_boundary(b.clone())?;
        }
        Ok(c)
    }

    /// The flagness check: with explicit simplices, whether they (together
    /// with the listed edges) form the flag completion of their 1-skeleton.
    pub fn flag_verdict(&self) -> Result<Verdict, Error> {
        let Some(simplices) = &self.simplices else { return Ok(Verdict::Pass) };
        let mut list = simplices.clone();
        list.extend(self.edges.iter().map(|e| e.to_vec()));
        list.extend((0..self.vertex_count).map(|v| vec![v]));
        crate::curvature::check_flag(self.vertex_count, &list)
    }

    pub fn to_json(&self) -> String {
        to_pretty_json(self)
    }
}

/// On-disk vertex map: `image[v]` is the image of `v`, `null` outside the
/// domain.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MapFile {
    pub format: String,
    pub image: Vec<Option<usize>>,
}

impl MapFile {
    pub fn from_isometry(h: &Isometry) -> Self {
        MapFile { format: MAP_FORMAT.to_string(), image: h.images().to_vec() }
    }

    pub fn parse(text: &str) -> Result<Self, FormatError> {
        let file: MapFile = serde_json::from_str(text)?;
        check_format(&file.format, MAP_FORMAT)?;
        Ok(file)
    }

    pub fn to_isometry(&self, c: &FlagComplex) -> Result<Isometry, FormatError> {
        Ok(Isometry::new(c, self.image.clone())?)
    }

    pub fn to_json(&self) -> String {
        to_pretty_json(self)
    }
}

/// Lowercase hex SHA-256.
pub fn sha256_hex(bytes: &[u8]) -> String {
    Sha256::digest(bytes).iter().map(|b| format!("{b:02x}")).collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InputDigest {
    pub role: String,
    pub sha256: String,
}

/// Settings that can change a result. Thread count is deliberately absent:
/// it never changes one.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ReportConfig {
    pub limits: Limits,
    pub seed: u64,
}

/// Outcome of one requested check.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "status")]
pub enum Outcome {
    Pass,
    Fail { witness: Witness },
    Unknown { undecided: Vec<LoopPath> },
    /// The check could not run (a cap was hit, a parameter was invalid).
    Error { message: String },
}

impl From<Verdict> for Outcome {
    fn from(v: Verdict) -> Self {
        match v {
            Verdict::Pass => Outcome::Pass,
            Verdict::Fail { witness } => Outcome::Fail { witness },
            Verdict::Unknown { undecided } => Outcome::Unknown { undecided },
        }
    }
}

/// One requested check.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CheckEntry {
    pub check: String,
    #[serde(flatten)]
    pub outcome: Outcome,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub details: Option<serde_json::Value>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub elapsed_ms: Option<u64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Report {
    pub format: String,
    pub tool_version: String,
    pub command: String,
    pub inputs: Vec<InputDigest>,
    pub config: ReportConfig,
    pub checks: Vec<CheckEntry>,
}

impl Report {
    pub fn new(command: &str, inputs: Vec<InputDigest>, config: ReportConfig) -> Self {
        Report {
            format: REPORT_FORMAT.to_string(),
            tool_version: env!("CARGO_PKG_VERSION").to_string(),
            command: command.to_string(),
            inputs,
            config,
            checks: Vec::new(),
        }
    }

    pub fn parse(text: &str) -> Result<Self, FormatError> {
        let report: Report = serde_json::from_str(text)?;
        check_format(&report.format, REPORT_FORMAT)?;
        Ok(report)
    }

    pub fn to_json(&self) -> String {
        to_pretty_json(self)
    }

    /// 1 when any check failed, otherwise 2 when any is unknown or errored,
    /// otherwise 0.
    pub fn exit_code(&self) -> i32 {
        let outcomes = || self.checks.iter().map(|c| &c.outcome);
        if outcomes().any(|o| matches!(o, Outcome::Fail { .. })) {
            1
        } else if outcomes().any(|o| matches!(o, Outcome::Unknown { .. } | Outcome::Error { .. })) {
            2
        } else {
            0
        }
    }
}
