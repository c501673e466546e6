//! Labelled analytic tableaux for bI, nbI, nbIciw, nbIci and nbIcl.
//!
//! A tableau starts from `0(f)` where `f` is the test formula of the
//! sequent. Non-branching rules are applied before branching ones, FIFO
//! within each class; closure is checked after every added node. A branch
//! closes on `L(f)`, `L'(f)` with `L != L'`, or on `L(a # b)`, `L'(b # a)`.

use std::collections::{HashMap, HashSet, VecDeque};
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::formula::{sequent_formula, BinOp, Formula, UnOp};
use crate::logic::LogicId;
use crate::parse::parse;
use crate::semantics::{check_row, Assignment};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TableauError {
    #[error("{0} has no tableau calculus")]
    Unsupported(LogicId),
    #[error("`{formula}` is not a formula of {logic}")]
    Signature { logic: LogicId, formula: String },
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Labelled {
    pub label: bool,
    pub formula: Formula,
}

impl Labelled {
    pub fn new(label: bool, formula: Formula) -> Labelled {
        Labelled { label, formula }
    }
}

impl std::fmt::Display for Labelled {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}({})", self.label as u8, self.formula)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Status {
    /// Inner node.
    Inner,
    /// Leaf of a complete open branch.
    Open,
    /// Leaf of a closed branch, with the indices of the clashing nodes.
    Closed(usize, usize),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Node {
    pub id: usize,
    pub parent: Option<usize>,
    pub item: Labelled,
    /// Rule name and the node it was applied to; roots have none.
    pub rule: Option<(String, usize)>,
    pub status: Status,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Outcome {
    Closed,
    /// Carries the leaf of the first open branch (depth-first, left to right).
    Open { leaf: usize },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Tableau {
    pub logic: LogicId,
    pub nodes: Vec<Node>,
    pub outcome: Outcome,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
struct Rule {
    name: &'static str,
    branching: bool,
}

/// Conclusion sets of the rule applicable to `x` in `logic`, if any.
fn expand(logic: LogicId, x: &Labelled) -> Option<(Rule, Vec<Vec<Labelled>>)> {
    use Formula::*;
    let lin = |name| Rule {
        name,
        branching: false,
    };
    let br = |name| Rule {
        name,
        branching: true,
    };
    let l = |b: bool, f: &Formula| Labelled::new(b, f.clone());
    let ext = logic != LogicId::Bi && logic != LogicId::Nbi;
    Some(match (&x.formula, x.label) {
        (Var(_), _) => return None,
        (Binary(BinOp::And, a, b), true) => (lin("1&"), vec![vec![l(true, a), l(true, b)]]),
        (Binary(BinOp::And, a, b), false) => (br("0&"), vec![vec![l(false, a)], vec![l(false, b)]]),
        (Binary(BinOp::Or, a, b), true) => (br("1|"), vec![vec![l(true, a)], vec![l(true, b)]]),
        (Binary(BinOp::Or, a, b), false) => (lin("0|"), vec![vec![l(false, a), l(false, b)]]),
        (Binary(BinOp::Imp, a, b), true) => (br("1->"), vec![vec![l(false, a)], vec![l(true, b)]]),
        (Binary(BinOp::Imp, a, b), false) => (lin("0->"), vec![vec![l(true, a), l(false, b)]]),
        (Binary(BinOp::Inc, a, b), true) => (br("1#"), vec![vec![l(false, a)], vec![l(false, b)]]),
        (Binary(BinOp::Inc, a, b), false) if ext => {
            if b.negated() == Some(a) {
                (lin("R1"), vec![vec![l(true, a), l(true, b)]])
            } else if a.negated() == Some(b) {
                (lin("R2"), vec![vec![l(true, b), l(true, a)]])
            } else {
                return None;
            }
        }
        (Binary(BinOp::Inc, _, _), false) => return None,
        (Unary(UnOp::Neg, a), false) => (lin("0!"), vec![vec![l(true, a)]]),
        (Unary(UnOp::Neg, a), true) => {
            if logic == LogicId::NbIci {
                if let Some(c) = a.as_inc_with_own_negation() {
                    return Some((lin("R3"), vec![vec![l(true, c), Labelled::new(true, Formula::neg(c.clone()))]]));
                }
            }
            if logic == LogicId::NbIcl {
                if let Some(c) = a.as_contradiction() {
                    return Some((
                        br("R4"),
                        vec![vec![l(false, c)], vec![Labelled::new(false, Formula::neg(c.clone()))]],
                    ));
                }
            }
            return None;
        }
        (Unary(UnOp::Circ, _), _) => return None,
    })
}

/// Per-branch state, cloned at each branching.
#[derive(Clone)]
struct Branch {
    /// Labelled formula -> node id.
    seen: HashMap<Labelled, usize>,
    linear: VecDeque<usize>,
    branching: VecDeque<usize>,
    last: usize,
}

struct Builder {
    logic: LogicId,
    nodes: Vec<Node>,
    first_open: Option<usize>,
}

impl Builder {
    fn add(
        &mut self,
        branch: &mut Branch,
        item: Labelled,
        rule: Option<(String, usize)>,
    ) -> Option<(usize, usize)> {
        let id = self.nodes.len();
        let parent = (id > 0).then_some(branch.last);
        self.nodes.push(Node {
            id,
            parent,
            item: item.clone(),
            rule,
            status: Status::Inner,
        });
        branch.last = id;
        if branch.seen.contains_key(&item) {
            return None;
        }
        let opposite = Labelled::new(!item.label, item.formula.clone());
        if let Some(&j) = branch.seen.get(&opposite) {
            return Some((j, id));
        }
        if let Some(twin) = item.formula.commuted() {
            if let Some(&j) = branch.seen.get(&Labelled::new(!item.label, twin)) {
                return Some((j, id));
            }
        }
        if let Some((rule, _)) = expand(self.logic, &item) {
            if rule.branching {
                branch.branching.push_back(id);
            } else {
                branch.linear.push_back(id);
            }
        }
        branch.seen.insert(item, id);
        None
    }

    fn close(&mut self, clash: (usize, usize)) {
        let leaf = self.nodes.len() - 1;
        self.nodes[leaf].status = Status::Closed(clash.0, clash.1);
    }

    fn grow(&mut self, mut branch: Branch) {
        loop {
            let Some(id) = branch.linear.pop_front().or_else(|| branch.branching.pop_front()) else {
                let leaf = branch.last;
                self.nodes[leaf].status = Status::Open;
                self.first_open.get_or_insert(leaf);
                return;
            };
            let premiss = self.nodes[id].item.clone();
            let (rule, sets) = expand(self.logic, &premiss).expect("queued nodes expand");
            let tag = Some((rule.name.to_string(), id));
            if sets.len() == 1 {
                for item in sets.into_iter().next().unwrap() {
                    if let Some(clash) = self.add(&mut branch, item, tag.clone()) {
                        self.close(clash);
                        return;
                    }
                }
                continue;
            }
            for set in sets {
                let mut b = branch.clone();
                let mut closed = false;
                for item in set {
                    if let Some(clash) = self.add(&mut b, item, tag.clone()) {
                        self.close(clash);
                        closed = true;
                        break;
                    }
                }
                if !closed {
                    self.grow(b);
                }
            }
            return;
        }
    }
}

/// Builds the complete tableau for `premises |- conclusion`.
pub fn derive(logic: LogicId, premises: &[Formula], conclusion: &Formula) -> Result<Tableau, TableauError> {
    if !logic.has_tableaux() {
        return Err(TableauError::Unsupported(logic));
    }
    let sig = logic.signature();
    if let Some(f) = premises.iter().chain([conclusion]).find(|f| !f.fits(sig)) {
        return Err(TableauError::Signature {
            logic,
            formula: f.to_string(),
        });
    }
    let mut b = Builder {
        logic,
        nodes: Vec::new(),
        first_open: None,
    };
    let mut branch = Branch {
        seen: HashMap::new(),
        linear: VecDeque::new(),
        branching: VecDeque::new(),
        last: 0,
    };
    let root = Labelled::new(false, sequent_formula(premises, conclusion));
    b.add(&mut branch, root, None);
    b.grow(branch);
    let outcome = match b.first_open {
        Some(leaf) => Outcome::Open { leaf },
        None => Outcome::Closed,
    };
    Ok(Tableau {
        logic,
        nodes: b.nodes,
        outcome,
    })
}

impl Tableau {
    pub fn is_closed(&self) -> bool {
        self.outcome == Outcome::Closed
    }

    /// Node ids from the root to `leaf`.
    pub fn branch(&self, leaf: usize) -> Vec<usize> {
        let mut out = vec![leaf];
        let mut cur = leaf;
        while let Some(p) = self.nodes[cur].parent {
            out.push(p);
            cur = p;
        }
        out.reverse();
        out
    }

    /// Leaves of open branches, depth-first left to right.
    pub fn open_leaves(&self) -> Vec<usize> {
        self.nodes
            .iter()
            .filter(|n| n.status == Status::Open)
            .map(|n| n.id)
            .collect()
    }

    fn children(&self) -> Vec<Vec<usize>> {
        let mut out = vec![Vec::new(); self.nodes.len()];
        for n in &self.nodes {
            if let Some(p) = n.parent {
                out[p].push(n.id);
            }
        }
        out
    }

    /// Reads a countermodel off the open branches, verified against the
    /// truth-table row checker.
    pub fn countermodel(&self) -> Option<Result<Assignment, Discrepancy>> {
        let leaves = self.open_leaves();
        if leaves.is_empty() {
            return None;
        }
        let mut failures = Vec::new();
        for &leaf in &leaves {
            let (cols, vals) = self.row_from_branch(leaf);
            match check_row(self.logic, &cols, &vals) {
                Ok(()) => {
                    return Some(Ok(Assignment {
                        entries: cols.into_iter().zip(vals).collect(),
                    }))
                }
                Err(reason) => failures.push((leaf, reason)),
            }
        }
        Some(Err(Discrepancy {
            root: self.nodes[0].item.formula.to_string(),
            failures,
        }))
    }

    /// Branch labels for listed subformulas; twins copy each other; the
    /// rest default to 0, or 1 where the logic forces it.
    fn row_from_branch(&self, leaf: usize) -> (Vec<Formula>, Vec<bool>) {
        let mut known: HashMap<Formula, bool> = HashMap::new();
        for id in self.branch(leaf) {
            let item = &self.nodes[id].item;
            known.entry(item.formula.clone()).or_insert(item.label);
        }
        let cols = crate::formula::subformulas(&self.nodes[0].item.formula);
        let mut vals: Vec<bool> = Vec::with_capacity(cols.len());
        let mut at: HashMap<&Formula, usize> = HashMap::new();
        for (i, f) in cols.iter().enumerate() {
            let v = if let Some(&v) = known.get(f) {
                v
            } else if let Some(v) = f.commuted().and_then(|g| known.get(&g).copied()) {
                v
            } else {
                let get = |g: &Formula| vals[at[g]];
                match f {
                    Formula::Var(_) => false,
                    Formula::Binary(BinOp::And, a, b) => get(a) && get(b),
                    Formula::Binary(BinOp::Or, a, b) => get(a) || get(b),
                    Formula::Binary(BinOp::Imp, a, b) => !get(a) || get(b),
                    Formula::Binary(BinOp::Inc, a, b) => {
                        if let Some(&j) = f.commuted().as_ref().and_then(|g| at.get(g)) {
                            vals[j]
                        } else if get(a) && get(b) {
                            false
                        } else {
                            // 1 is always allowed off the diagonal and
                            // keeps the incompatibility clauses quiet
                            true
                        }
                    }
                    // labelled items carry every forced 1; an unlabelled
                    // negation of a true formula is free
                    Formula::Unary(UnOp::Neg, a) => !get(a),
                    Formula::Unary(UnOp::Circ, _) => false,
                }
            };
            at.insert(f, i);
            vals.push(v);
        }
        (cols, vals)
    }

    pub fn render(&self, format: TreeFormat) -> String {
        match format {
            TreeFormat::Text => self.render_text(),
            TreeFormat::Json => {
                let mut s = serde_json::to_string_pretty(&TreeDocument::from(self))
                    .expect("tree documents serialize");
                s.push('\n');
                s
            }
        }
    }

    fn render_text(&self) -> String {
        let children = self.children();
        let mut out = String::new();
        let mut stack = vec![(0usize, 0usize)];
        while let Some((id, depth)) = stack.pop() {
            let n = &self.nodes[id];
            let _ = write!(out, "{}{}", "  ".repeat(depth), n.item);
            if let Some((rule, from)) = &n.rule {
                let _ = write!(out, "  <- {} of {}", rule, self.nodes[*from].item);
            }
            match &n.status {
                Status::Inner => {}
                Status::Open => out.push_str(" [open]"),
                Status::Closed(a, b) => {
                    let _ = write!(out, " [closed: {} / {}]", self.nodes[*a].item, self.nodes[*b].item);
                }
            }
            out.push('\n');
            let kids = &children[id];
            let d = if kids.len() > 1 { depth + 1 } else { depth };
            for &k in kids.iter().rev() {
                stack.push((k, d));
            }
        }
        out
    }
}

/// No open branch yielded a row accepted by the truth-table checker.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Discrepancy {
    pub root: String,
    /// Open leaf and the checker's complaint.
    pub failures: Vec<(usize, String)>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TreeFormat {
    Text,
    Json,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TreeNode {
    pub id: usize,
    pub parent: Option<usize>,
    pub label: u8,
    pub formula: String,
    pub rule: Option<String>,
    pub status: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TreeDocument {
    pub logic: String,
    pub nodes: Vec<TreeNode>,
}

impl From<&Tableau> for TreeDocument {
    fn from(t: &Tableau) -> Self {
        let nodes = t
            .nodes
            .iter()
            .map(|n| TreeNode {
                id: n.id,
                parent: n.parent,
                label: n.item.label as u8,
                formula: n.item.formula.to_string(),
                rule: n.rule.as_ref().map(|(r, from)| format!("{r}@{from}")),
                status: match n.status {
                    Status::Inner => "inner".into(),
                    Status::Open => "open".into(),
                    Status::Closed(a, b) => format!("closed@{a},{b}"),
                },
            })
            .collect();
        TreeDocument {
            logic: t.logic.name().to_string(),
            nodes,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("malformed tableau document: {0}")]
pub struct ReadError(String);

/// Reads back the structured rendering.
pub fn read_tree(text: &str) -> Result<Tableau, ReadError> {
    let doc: TreeDocument = serde_json::from_str(text).map_err(|e| ReadError(e.to_string()))?;
    let logic: LogicId = doc.logic.parse().map_err(|e: crate::logic::UnknownLogic| ReadError(e.to_string()))?;
    let bad = |m: &str| ReadError(m.to_string());
    let mut nodes = Vec::with_capacity(doc.nodes.len());
    for (i, n) in doc.nodes.iter().enumerate() {
        if n.id != i || n.parent.is_some_and(|p| p >= i) {
            return Err(bad("node ids must be sequential with parents first"));
        }
        let formula = parse(&n.formula, logic.signature()).map_err(|e| ReadError(e.to_string()))?;
        let rule = match &n.rule {
            None => None,
            Some(r) => {
                let (name, from) = r.rsplit_once('@').ok_or_else(|| bad("rule without source"))?;
                Some((name.to_string(), from.parse().map_err(|_| bad("bad rule source"))?))
            }
        };
        let status = match n.status.as_str() {
            "inner" => Status::Inner,
            "open" => Status::Open,
            s => {
                let pair = s.strip_prefix("closed@").ok_or_else(|| bad("unknown status"))?;
                let (a, b) = pair.split_once(',').ok_or_else(|| bad("bad clash"))?;
                Status::Closed(
                    a.parse().map_err(|_| bad("bad clash"))?,
                    b.parse().map_err(|_| bad("bad clash"))?,
                )
            }
        };
        nodes.push(Node {
            id: i,
            parent: n.parent,
            item: Labelled::new(n.label != 0, formula),
            rule,
            status,
        });
    }
    if nodes.is_empty() {
        return Err(bad("no nodes"));
    }
    let outcome = match nodes.iter().find(|n| n.status == Status::Open) {
        Some(n) => Outcome::Open { leaf: n.id },
        None => Outcome::Closed,
    };
    Ok(Tableau {
        logic,
        nodes,
        outcome,
    })
}

/// All formulas occurring on a branch, for analyticity checks.
pub fn branch_formulas(t: &Tableau, leaf: usize) -> HashSet<Formula> {
    t.branch(leaf)
        .into_iter()
        .map(|id| t.nodes[id].item.formula.clone())
        .collect()
}
