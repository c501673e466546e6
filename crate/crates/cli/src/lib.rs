//! Corpus handling and the conservativity check behind the `incompat`
//! binary.

use std::fmt;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use incompat_core::semantics::SemanticError;
use incompat_core::{decide, parse, translate, Formula, LogicId};

/// Exit codes of the binary.
pub mod exit {
    pub const VALID: i32 = 0;
    pub const INVALID: i32 = 1;
    pub const USAGE: i32 = 2;
    pub const RESOURCE: i32 = 3;
    pub const DISAGREEMENT: i32 = 4;
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "lowercase")]
pub enum Expected {
    Valid,
    Invalid,
    #[default]
    Unspecified,
}

impl Expected {
    pub fn from_verdict(valid: bool) -> Expected {
        if valid {
            Expected::Valid
        } else {
            Expected::Invalid
        }
    }

    pub fn admits(self, valid: bool) -> bool {
        self == Expected::Unspecified || self == Expected::from_verdict(valid)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CorpusEntry {
    pub logic: String,
    #[serde(default)]
    pub premises: Vec<String>,
    pub conclusion: String,
    #[serde(default)]
    pub expected: Expected,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

/// An entry with its formulas parsed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Parsed {
    pub line: usize,
    pub logic: LogicId,
    pub premises: Vec<Formula>,
    pub conclusion: Formula,
    pub expected: Expected,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CorpusError {
    pub line: usize,
    pub message: String,
}

impl fmt::Display for CorpusError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "corpus line {}: {}", self.line, self.message)
    }
}

impl std::error::Error for CorpusError {}

/// Reads a JSON-lines corpus; blank lines and lines starting with `//`
/// are skipped.
pub fn read_corpus(text: &str) -> Result<Vec<Parsed>, CorpusError> {
    let mut out = Vec::new();
    for (k, raw) in text.lines().enumerate() {
        let line = k + 1;
        let raw = raw.trim();
        if raw.is_empty() || raw.starts_with("//") {
            continue;
        }
        let err = |message: String| CorpusError { line, message };
        let e: CorpusEntry = serde_json::from_str(raw).map_err(|e| err(e.to_string()))?;
        let logic: LogicId = e.logic.parse().map_err(|e| err(format!("{e}")))?;
        let sig = logic.signature();
        let premises = e
            .premises
            .iter()
            .map(|p| parse(p, sig))
            .collect::<Result<Vec<_>, _>>()
            .map_err(|e| err(e.to_string()))?;
        let conclusion = parse(&e.conclusion, sig).map_err(|e| err(e.to_string()))?;
        out.push(Parsed {
            line,
            logic,
            premises,
            conclusion,
            expected: e.expected,
        });
    }
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ConservativityRow {
    pub line: usize,
    pub sequent: String,
    pub source_valid: bool,
    pub target_valid: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ConservativityReport {
    pub source: String,
    pub target: String,
    pub entries: Vec<ConservativityRow>,
    /// Lines where the two verdicts differ.
    pub mismatches: Vec<usize>,
}

pub fn sequent_text(premises: &[Formula], conclusion: &Formula) -> String {
    let ps: Vec<String> = premises.iter().map(|p| p.to_string()).collect();
    if ps.is_empty() {
        format!("|- {conclusion}")
    } else {
        format!("{} |- {conclusion}", ps.join(", "))
    }
}

/// Decides every entry in `source` (an mbC-family logic) and its
/// translation in the matching incompatibility logic.
pub fn conservativity(entries: &[Parsed], source: LogicId) -> Result<ConservativityReport, SemanticError> {
    let target = source
        .translation_target()
        .expect("conservativity needs an mbC-family source");
    let rows = entries
        .par_iter()
        .map(|e| {
            let s = decide(source, &e.premises, &e.conclusion)?.valid;
            let tp: Vec<Formula> = e.premises.iter().map(translate).collect();
            let t = decide(target, &tp, &translate(&e.conclusion))?.valid;
            Ok(ConservativityRow {
                line: e.line,
                sequent: sequent_text(&e.premises, &e.conclusion),
                source_valid: s,
                target_valid: t,
            })
        })
        .collect::<Result<Vec<_>, SemanticError>>()?;
    let mismatches = rows
        .iter()
        .filter(|r| r.source_valid != r.target_valid)
        .map(|r| r.line)
        .collect();
    Ok(ConservativityReport {
        source: source.name().into(),
        target: target.name().into(),
        entries: rows,
        mismatches,
    })
}

/// Honors `THREADS` when set; a malformed value is ignored.
pub fn configure_threads() {
    if let Some(n) = std::env::var("THREADS").ok().and_then(|s| s.parse::<usize>().ok()) {
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n.max(1)).build_global();
    }
}
