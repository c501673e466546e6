//! Decision by row-branching, row-eliminating truth tables over the
//! two-valued restricted Nmatrices.
//!
//! A table lists the subformulas of the formula under test in ascending
//! complexity. Atoms take both values, classical connectives are computed,
//! `#` and `!` branch per [`ConstraintProfile`], and rows violating one of
//! the logic's [`Erasure`] conditions are removed. A formula is valid iff it
//! is 1 in every surviving row; a sequent `G |- f` is tested through
//! `((g1 & g2) & ...) -> f`.

mod profile;
mod table;

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::formula::{sequent_formula, Formula};
use crate::logic::LogicId;

pub use profile::{ConstraintProfile, Erasure, IncBranching};
pub use table::{ErasureMode, TableOptions, DEFAULT_ROW_CAP};

pub(crate) use table::Columns;
use table::{Flow, Search};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SemanticError {
    #[error("`{formula}` is not a formula of {logic}")]
    Signature { logic: LogicId, formula: String },
    #[error("row limit of {cap} exceeded")]
    RowCap { cap: u64 },
}

/// Values of one row, aligned with [`Table::columns`].
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Row(pub Vec<bool>);

/// A formula-to-value map, in column order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Assignment {
    pub entries: Vec<(Formula, bool)>,
}

impl Assignment {
    pub fn get(&self, f: &Formula) -> Option<bool> {
        self.entries.iter().find(|(g, _)| g == f).map(|(_, v)| *v)
    }
}

impl fmt::Display for Assignment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (g, v) in &self.entries {
            writeln!(f, "{}={}", g, *v as u8)?;
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Verdict {
    pub valid: bool,
    /// Present iff `valid` is false.
    pub countermodel: Option<Assignment>,
}

/// Surviving rows of a table.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Table {
    pub logic: LogicId,
    pub columns: Vec<Formula>,
    pub rows: Vec<Row>,
}

fn check_signature(logic: LogicId, fs: &[&Formula]) -> Result<(), SemanticError> {
    let sig = logic.signature();
    match fs.iter().find(|f| !f.fits(sig)) {
        Some(f) => Err(SemanticError::Signature {
            logic,
            formula: f.to_string(),
        }),
        None => Ok(()),
    }
}

pub fn build_table(logic: LogicId, f: &Formula) -> Result<Table, SemanticError> {
    build_table_with(logic, f, TableOptions::default())
}

pub fn build_table_with(
    logic: LogicId,
    f: &Formula,
    options: TableOptions,
) -> Result<Table, SemanticError> {
    check_signature(logic, &[f])?;
    let profile = ConstraintProfile::of(logic);
    let columns = Columns::for_roots(logic, std::slice::from_ref(f));
    let mut search = Search::new(&profile, &columns, options);
    let mut rows = Vec::new();
    search.run(&mut |row| {
        rows.push(Row(row.to_vec()));
        Flow::Continue
    })?;
    Ok(Table {
        logic,
        columns: columns.formulas.clone(),
        rows,
    })
}

pub fn decide(logic: LogicId, premises: &[Formula], conclusion: &Formula) -> Result<Verdict, SemanticError> {
    decide_with(logic, premises, conclusion, TableOptions::default())
}

/// Decides `premises |- conclusion`, returning the first surviving row (in
/// table order) that falsifies the test formula when there is one.
pub fn decide_with(
    logic: LogicId,
    premises: &[Formula],
    conclusion: &Formula,
    options: TableOptions,
) -> Result<Verdict, SemanticError> {
    let refs: Vec<&Formula> = premises.iter().chain([conclusion]).collect();
    check_signature(logic, &refs)?;
    let test = sequent_formula(premises, conclusion);
    let profile = ConstraintProfile::of(logic);
    let columns = Columns::for_roots(logic, std::slice::from_ref(&test));
    let mut search = Search::new(&profile, &columns, options);

    // a falsifying row gives 1 to every conjunct of the fold and 0 to the
    // conclusion and the test formula
    let mut pin = |f: &Formula, v: bool| {
        if let Some(i) = columns.position(f) {
            search.required[i] = Some(v);
        }
    };
    pin(&test, false);
    pin(conclusion, false);
    let mut acc: Option<Formula> = None;
    for g in premises {
        pin(g, true);
        let next = match acc.take() {
            None => g.clone(),
            Some(a) => Formula::and(a, g.clone()),
        };
        pin(&next, true);
        acc = Some(next);
    }

    let mut found: Option<Vec<bool>> = None;
    search.run(&mut |row| {
        found = Some(row.to_vec());
        Flow::Stop
    })?;
    Ok(match found {
        None => Verdict {
            valid: true,
            countermodel: None,
        },
        Some(row) => Verdict {
            valid: false,
            countermodel: Some(Assignment {
                entries: columns.formulas.iter().cloned().zip(row).collect(),
            }),
        },
    })
}

/// Checks a single row against `logic`: `columns` must list each formula
/// after its immediate subformulas. Returns a description of the first
/// problem found.
pub fn check_row(logic: LogicId, columns: &[Formula], values: &[bool]) -> Result<(), String> {
    if columns.len() != values.len() {
        return Err("row length does not match the column count".into());
    }
    let cols = Columns::from_list(columns.to_vec())
        .map_err(|f| format!("`{f}` is listed before one of its subformulas"))?;
    let profile = ConstraintProfile::of(logic);
    let search = Search::new(&profile, &cols, TableOptions::default());
    match search.reject_reason(values) {
        Some(reason) => Err(reason),
        None => Ok(()),
    }
}

/// Export formats for [`export_table`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TableFormat {
    Csv,
    Json,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TableDocument {
    pub logic: String,
    pub subformulas: Vec<String>,
    pub rows: Vec<Vec<u8>>,
}

impl From<&Table> for TableDocument {
    fn from(t: &Table) -> Self {
        TableDocument {
            logic: t.logic.name().to_string(),
            subformulas: t.columns.iter().map(|f| f.to_string()).collect(),
            rows: t
                .rows
                .iter()
                .map(|r| r.0.iter().map(|&b| b as u8).collect())
                .collect(),
        }
    }
}

pub fn export_table(table: &Table, format: TableFormat) -> String {
    match format {
        TableFormat::Csv => {
            let mut w = csv::WriterBuilder::new()
                .terminator(csv::Terminator::Any(b'\n'))
                .from_writer(Vec::new());
            w.write_record(table.columns.iter().map(|f| f.to_string()))
                .expect("in-memory write");
            for row in &table.rows {
                w.write_record(row.0.iter().map(|&b| if b { "1" } else { "0" }))
                    .expect("in-memory write");
            }
            String::from_utf8(w.into_inner().expect("in-memory flush")).expect("utf-8 output")
        }
        TableFormat::Json => {
            let mut s = serde_json::to_string_pretty(&TableDocument::from(table))
                .expect("table documents serialize");
            s.push('\n');
            s
        }
    }
}

#[cfg(test)]
mod tests;
