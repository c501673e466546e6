//! Row-branching, row-eliminating truth tables.

use std::collections::{HashMap, HashSet};

use crate::formula::{subformulas_of_all, BinOp, Formula, UnOp};
use crate::logic::LogicId;

use super::profile::{ConstraintProfile, Erasure};
use super::SemanticError;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) enum Node {
    Var,
    Bin(BinOp, usize, usize),
    Un(UnOp, usize),
}

/// One instantiated erasure condition over column indices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) enum Constraint {
    Commutation { left: usize, right: usize },
    SelfIncompatibility { inc: usize, base: usize, neg: usize },
    NegatedSelfIncompatibility { node: usize, base: usize, neg: usize },
    NegatedContradiction { node: usize, base: usize, neg: usize, incs: Vec<usize> },
    ConsistencyExplosion { circ: usize, base: usize, neg: usize },
    ConsistencyCompleteness { circ: usize, base: usize, neg: usize },
    NegatedConsistency { node: usize, base: usize, neg: usize },
    ContradictionConsistency { node: usize, circ: usize },
}

impl Constraint {
    fn last_member(&self) -> usize {
        use Constraint::*;
        match self {
            Commutation { left, right } => *left.max(right),
            SelfIncompatibility { inc, base, neg } => *inc.max(base).max(neg),
            NegatedSelfIncompatibility { node, base, neg }
            | NegatedConsistency { node, base, neg } => *node.max(base).max(neg),
            NegatedContradiction { node, base, neg, incs } => incs
                .iter()
                .copied()
                .chain([*node, *base, *neg])
                .max()
                .unwrap_or(*node),
            ConsistencyExplosion { circ, base, neg } | ConsistencyCompleteness { circ, base, neg } => {
                *circ.max(base).max(neg)
            }
            ContradictionConsistency { node, circ } => *node.max(circ),
        }
    }

    fn describe(&self, cols: &Columns) -> String {
        use Constraint::*;
        let f = |i: &usize| cols.formulas[*i].to_string();
        match self {
            Commutation { left, right } => format!("`{}` and `{}` differ", f(left), f(right)),
            SelfIncompatibility { inc, .. } => format!("`{}` is 0 without both halves 1", f(inc)),
            NegatedSelfIncompatibility { node, .. } | NegatedConsistency { node, .. } => {
                format!("`{}` is 1 without both halves 1", f(node))
            }
            NegatedContradiction { node, .. } => format!("`{}` is 1 against its clause", f(node)),
            ConsistencyExplosion { circ, .. } => format!("`{}` is 1 with both halves 1", f(circ)),
            ConsistencyCompleteness { circ, .. } => {
                format!("`{}` is 0 without both halves 1", f(circ))
            }
            ContradictionConsistency { node, circ } => {
                format!("`{}` is 1 while `{}` is 0", f(node), f(circ))
            }
        }
    }

    /// True when the row must be erased.
    fn violated(&self, v: &[bool]) -> bool {
        use Constraint::*;
        match self {
            Commutation { left, right } => v[*left] != v[*right],
            SelfIncompatibility { inc, base, neg } => !v[*inc] && !(v[*base] && v[*neg]),
            NegatedSelfIncompatibility { node, base, neg } => v[*node] && !(v[*base] && v[*neg]),
            NegatedContradiction {
                node,
                base,
                neg,
                incs,
            } => v[*node] && (incs.iter().any(|i| !v[*i]) || (v[*base] && v[*neg])),
            ConsistencyExplosion { circ, base, neg } => v[*circ] && v[*base] && v[*neg],
            ConsistencyCompleteness { circ, base, neg } => !v[*circ] && !(v[*base] && v[*neg]),
            NegatedConsistency { node, base, neg } => v[*node] && !(v[*base] && v[*neg]),
            ContradictionConsistency { node, circ } => v[*node] && !v[*circ],
        }
    }
}

/// The ordered column list of a table together with its index structure.
#[derive(Clone, Debug)]
pub(crate) struct Columns {
    pub formulas: Vec<Formula>,
    pub nodes: Vec<Node>,
    pub index: HashMap<Formula, usize>,
}

impl Columns {
    /// Columns for `roots` under `logic`: the subformulas, plus for the mbC
    /// family the companions their consistency conditions mention.
    pub fn for_roots(logic: LogicId, roots: &[Formula]) -> Columns {
        let mut list = subformulas_of_all(roots);
        if logic.is_mbc_family() {
            close_for_consistency(logic, &mut list);
        }
        Columns::from_list(list).expect("subformula lists are closed")
    }

    /// Index an explicit list; fails if some child is missing or appears
    /// after its parent, returning the offending formula.
    pub fn from_list(formulas: Vec<Formula>) -> Result<Columns, Formula> {
        let mut index = HashMap::with_capacity(formulas.len());
        let mut nodes = Vec::with_capacity(formulas.len());
        for (i, f) in formulas.iter().enumerate() {
            let node = match f {
                Formula::Var(_) => Node::Var,
                Formula::Binary(op, l, r) => {
                    let (Some(&li), Some(&ri)) = (index.get(&**l), index.get(&**r)) else {
                        return Err(f.clone());
                    };
                    Node::Bin(*op, li, ri)
                }
                Formula::Unary(op, c) => {
                    let Some(&ci) = index.get(&**c) else {
                        return Err(f.clone());
                    };
                    Node::Un(*op, ci)
                }
            };
            nodes.push(node);
            index.entry(f.clone()).or_insert(i);
        }
        Ok(Columns {
            formulas,
            nodes,
            index,
        })
    }

    pub fn len(&self) -> usize {
        self.formulas.len()
    }

    pub fn position(&self, f: &Formula) -> Option<usize> {
        self.index.get(f).copied()
    }

    fn neg_of(&self, i: usize) -> Option<usize> {
        self.position(&Formula::neg(self.formulas[i].clone()))
    }

    pub fn constraints(&self, profile: &ConstraintProfile) -> Vec<Constraint> {
        let mut out = Vec::new();
        for (i, f) in self.formulas.iter().enumerate() {
            match self.nodes[i] {
                Node::Bin(BinOp::Inc, l, r) => {
                    if profile.has(Erasure::Commutation) {
                        if let Some(j) = f.commuted().and_then(|g| self.position(&g)) {
                            if i < j {
                                out.push(Constraint::Commutation { left: i, right: j });
                            }
                        }
                    }
                    if profile.has(Erasure::SelfIncompatibility) {
                        // either orientation of a # !a
                        if f.as_inc_with_own_negation().is_some() {
                            out.push(Constraint::SelfIncompatibility { inc: i, base: l, neg: r });
                        } else if f.as_negation_inc_self().is_some() {
                            out.push(Constraint::SelfIncompatibility { inc: i, base: r, neg: l });
                        }
                    }
                }
                Node::Un(UnOp::Neg, c) => {
                    let inner = &self.formulas[c];
                    if profile.has(Erasure::NegatedSelfIncompatibility)
                        && inner.as_inc_with_own_negation().is_some()
                    {
                        let Node::Bin(_, base, neg) = self.nodes[c] else { unreachable!() };
                        out.push(Constraint::NegatedSelfIncompatibility { node: i, base, neg });
                    }
                    if let Some(a) = inner.as_contradiction() {
                        let Node::Bin(_, base, neg) = self.nodes[c] else { unreachable!() };
                        if profile.has(Erasure::NegatedContradiction) {
                            let incs = [
                                Formula::inc(a.clone(), Formula::neg(a.clone())),
                                Formula::inc(Formula::neg(a.clone()), a.clone()),
                            ]
                            .iter()
                            .filter_map(|g| self.position(g))
                            .collect();
                            out.push(Constraint::NegatedContradiction {
                                node: i,
                                base,
                                neg,
                                incs,
                            });
                        }
                        if profile.has(Erasure::ContradictionConsistency) {
                            if let Some(circ) = self.position(&Formula::circ(a.clone())) {
                                out.push(Constraint::ContradictionConsistency { node: i, circ });
                            }
                        }
                    }
                    if profile.has(Erasure::NegatedConsistency) {
                        if let Node::Un(UnOp::Circ, base) = self.nodes[c] {
                            if let Some(neg) = self.neg_of(base) {
                                out.push(Constraint::NegatedConsistency { node: i, base, neg });
                            }
                        }
                    }
                }
                Node::Un(UnOp::Circ, base) => {
                    if let Some(neg) = self.neg_of(base) {
                        if profile.has(Erasure::ConsistencyExplosion) {
                            out.push(Constraint::ConsistencyExplosion { circ: i, base, neg });
                        }
                        if profile.has(Erasure::ConsistencyCompleteness) {
                            out.push(Constraint::ConsistencyCompleteness { circ: i, base, neg });
                        }
                    }
                }
                _ => {}
            }
        }
        out
    }
}

/// Adds `!a` for every listed `@a`, and under mbCcl `@a` for every listed
/// `!(a & !a)`, then restores the complexity order.
fn close_for_consistency(logic: LogicId, list: &mut Vec<Formula>) {
    let mut seen: HashSet<Formula> = list.iter().cloned().collect();
    let mut i = 0;
    while i < list.len() {
        let f = list[i].clone();
        let mut extra = Vec::new();
        if let Formula::Unary(UnOp::Circ, a) = &f {
            extra.push(Formula::neg((**a).clone()));
        }
        if logic == LogicId::MbCcl {
            if let Some(a) = f.negated().and_then(Formula::as_contradiction) {
                extra.push(Formula::circ(a.clone()));
            }
        }
        for g in extra {
            if seen.insert(g.clone()) {
                list.push(g);
            }
        }
        i += 1;
    }
    list.sort_by_key(|g| g.complexity());
}

/// When constraints are checked.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum ErasureMode {
    /// As soon as every member of a constraint has a value.
    #[default]
    Eager,
    /// Only on completed rows.
    PostHoc,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct TableOptions {
    /// Maximum number of rows the search may visit, counting rows
    /// abandoned part-way as well as completed ones.
    pub row_cap: u64,
    pub mode: ErasureMode,
}

pub const DEFAULT_ROW_CAP: u64 = 1 << 22;

impl Default for TableOptions {
    fn default() -> Self {
        TableOptions {
            row_cap: DEFAULT_ROW_CAP,
            mode: ErasureMode::Eager,
        }
    }
}

pub(crate) enum Flow {
    Continue,
    Stop,
}

pub(crate) struct Search<'a> {
    pub profile: &'a ConstraintProfile,
    pub columns: &'a Columns,
    constraints: Vec<Constraint>,
    completing: Vec<Vec<usize>>,
    /// Rows not matching these values are skipped; they cannot be the rows
    /// the caller is looking for.
    pub required: Vec<Option<bool>>,
    options: TableOptions,
    visited: u64,
}

impl<'a> Search<'a> {
    pub fn new(profile: &'a ConstraintProfile, columns: &'a Columns, options: TableOptions) -> Self {
        let constraints = columns.constraints(profile);
        let mut completing = vec![Vec::new(); columns.len()];
        for (k, c) in constraints.iter().enumerate() {
            completing[c.last_member()].push(k);
        }
        Search {
            profile,
            columns,
            constraints,
            completing,
            required: vec![None; columns.len()],
            options,
            visited: 0,
        }
    }

    fn choices(&self, i: usize, row: &[bool]) -> &'static [bool] {
        const BOTH: &[bool] = &[false, true];
        const T: &[bool] = &[true];
        const F: &[bool] = &[false];
        let det = |b: bool| if b { T } else { F };
        match self.columns.nodes[i] {
            Node::Var => BOTH,
            Node::Bin(BinOp::And, l, r) => det(row[l] && row[r]),
            Node::Bin(BinOp::Or, l, r) => det(row[l] || row[r]),
            Node::Bin(BinOp::Imp, l, r) => det(!row[l] || row[r]),
            Node::Bin(BinOp::Inc, l, r) => self.profile.inc_values(row[l], row[r]),
            Node::Un(UnOp::Neg, c) => self.profile.neg_values(row[c]),
            Node::Un(UnOp::Circ, c) => self.profile.circ_values(row[c]),
        }
    }

    /// Depth-first, 0 before 1: surviving rows arrive in lexicographic order.
    pub fn run(&mut self, visit: &mut dyn FnMut(&[bool]) -> Flow) -> Result<(), SemanticError> {
        let mut row = vec![false; self.columns.len()];
        if row.is_empty() {
            return Ok(());
        }
        self.step(0, &mut row, visit).map(|_| ())
    }

    fn step(
        &mut self,
        i: usize,
        row: &mut Vec<bool>,
        visit: &mut dyn FnMut(&[bool]) -> Flow,
    ) -> Result<Flow, SemanticError> {
        for &v in self.choices(i, row) {
            if self.required[i].is_some_and(|want| want != v) {
                self.tick()?;
                continue;
            }
            row[i] = v;
            if self.options.mode == ErasureMode::Eager
                && self.completing[i]
                    .iter()
                    .any(|&k| self.constraints[k].violated(row))
            {
                self.tick()?;
                continue;
            }
            if i + 1 < row.len() {
                if let Flow::Stop = self.step(i + 1, row, visit)? {
                    return Ok(Flow::Stop);
                }
                continue;
            }
            self.tick()?;
            if self.options.mode == ErasureMode::PostHoc
                && self.constraints.iter().any(|c| c.violated(row))
            {
                continue;
            }
            if let Flow::Stop = visit(row) {
                return Ok(Flow::Stop);
            }
        }
        Ok(Flow::Continue)
    }

    /// Counts a row that was completed or abandoned part-way.
    fn tick(&mut self) -> Result<(), SemanticError> {
        self.visited += 1;
        if self.visited > self.options.row_cap {
            return Err(SemanticError::RowCap {
                cap: self.options.row_cap,
            });
        }
        Ok(())
    }

    /// Why `row` is not a surviving row, if it is not.
    pub fn reject_reason(&self, row: &[bool]) -> Option<String> {
        for i in 0..row.len() {
            if !self.choices(i, row).contains(&row[i]) {
                return Some(format!(
                    "value {} of `{}` is not allowed by its arguments",
                    row[i] as u8, self.columns.formulas[i]
                ));
            }
        }
        self.constraints
            .iter()
            .find(|c| c.violated(row))
            .map(|c| format!("erased: {}", c.describe(self.columns)))
    }
}
