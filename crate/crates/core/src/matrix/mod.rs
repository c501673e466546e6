//! Finite matrices and Nmatrices.
//!
//! An [`Algebra`] stores every operation as a table of cells; a cell is a
//! bitmask over element indices, so a deterministic algebra is one whose
//! cells are all singletons. Binary tables are indexed `x * n + y`.

mod congruence;
mod file;
mod nmatrix;
mod refute;

use std::collections::{BTreeMap, HashMap};

use thiserror::Error;

use crate::formula::{BinOp, Connective, Formula, UnOp};
use crate::hilbert::{Presentation, Schema, METAVARIABLES};

pub use congruence::{congruences, leibniz, Congruence, MAX_CONGRUENCE_ELEMENTS};
pub use file::{FileError, MatrixDocument};
pub use nmatrix::{nmatrix_decide, nmatrix_decide_with, NmatrixOptions, NmatrixVerdict};
pub use refute::{gamma_family, refute_characterization, Refutation, WitnessFamily, GAMMA_CAP};

pub type Cell = u64;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MatrixError {
    #[error("{0}")]
    Malformed(String),
    #[error("the algebra has no `{0}` operation")]
    MissingOperation(&'static str),
    #[error("{0} needs a deterministic algebra")]
    NotDeterministic(&'static str),
    #[error("{what} is limited to {limit}, got {got}")]
    TooLarge { what: &'static str, limit: usize, got: usize },
    #[error("no largest congruence is compatible with the filter")]
    NoLargestCongruence,
    #[error("search limit of {0} steps exceeded")]
    SearchCap(u64),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Algebra {
    pub elements: Vec<String>,
    pub ops: BTreeMap<Connective, Vec<Cell>>,
}

/// An algebra with a designated set; deterministic or not.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Matrix {
    pub algebra: Algebra,
    pub designated: Cell,
}

pub fn singleton(x: usize) -> Cell {
    1 << x
}

pub fn members(c: Cell) -> impl Iterator<Item = usize> {
    (0..64).filter(move |i| c & (1 << i) != 0)
}

impl Algebra {
    pub fn new(elements: Vec<String>, ops: BTreeMap<Connective, Vec<Cell>>) -> Result<Algebra, MatrixError> {
        let n = elements.len();
        if n == 0 || n > 64 {
            return Err(MatrixError::Malformed(format!("an algebra needs 1 to 64 elements, got {n}")));
        }
        let full: Cell = if n == 64 { !0 } else { (1 << n) - 1 };
        for (c, table) in &ops {
            let want = n.pow(c.arity() as u32);
            if table.len() != want {
                return Err(MatrixError::Malformed(format!(
                    "`{}` needs {want} cells, got {}",
                    c.key(),
                    table.len()
                )));
            }
            if let Some(i) = table.iter().position(|&cell| cell == 0 || cell & !full != 0) {
                return Err(MatrixError::Malformed(format!("`{}` cell {i} is empty or out of range", c.key())));
            }
        }
        Ok(Algebra { elements, ops })
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn index(&self, name: &str) -> Option<usize> {
        self.elements.iter().position(|e| e == name)
    }

    pub fn is_deterministic(&self) -> bool {
        self.ops.values().all(|t| t.iter().all(|c| c.count_ones() == 1))
    }

    pub fn full(&self) -> Cell {
        (1..=self.len()).fold(0, |acc, i| acc | singleton(i - 1))
    }

    fn table(&self, c: Connective) -> Result<&[Cell], MatrixError> {
        self.ops
            .get(&c)
            .map(|t| t.as_slice())
            .ok_or(MatrixError::MissingOperation(c.key()))
    }

    /// The cell of `c` at `args`.
    pub fn cell(&self, c: Connective, args: &[usize]) -> Result<Cell, MatrixError> {
        let t = self.table(c)?;
        Ok(match args {
            [x] => t[*x],
            [x, y] => t[x * self.len() + y],
            _ => unreachable!("connectives are unary or binary"),
        })
    }

    /// Value of a deterministic operation.
    pub fn apply(&self, c: Connective, args: &[usize]) -> Result<usize, MatrixError> {
        Ok(self.cell(c, args)?.trailing_zeros() as usize)
    }

    /// Evaluates `f` in a deterministic algebra.
    pub fn eval(&self, f: &Formula, v: &HashMap<String, usize>) -> Result<usize, MatrixError> {
        match f {
            Formula::Var(name) => v
                .get(name)
                .copied()
                .ok_or_else(|| MatrixError::Malformed(format!("atom `{name}` has no value"))),
            Formula::Binary(op, l, r) => self.apply(Connective::Bin(*op), &[self.eval(l, v)?, self.eval(r, v)?]),
            Formula::Unary(op, c) => self.apply(Connective::Un(*op), &[self.eval(c, v)?]),
        }
    }

    /// Checks that every connective of `f` has a table.
    pub fn supports(&self, f: &Formula) -> Result<(), MatrixError> {
        match f {
            Formula::Var(_) => Ok(()),
            Formula::Binary(op, l, r) => {
                self.table(Connective::Bin(*op))?;
                self.supports(l)?;
                self.supports(r)
            }
            Formula::Unary(op, c) => {
                self.table(Connective::Un(*op))?;
                self.supports(c)
            }
        }
    }
}

impl Matrix {
    pub fn new(algebra: Algebra, designated: Cell) -> Result<Matrix, MatrixError> {
        if designated == 0 || designated == algebra.full() || designated & !algebra.full() != 0 {
            return Err(MatrixError::Malformed(
                "the designated set must be a nonempty proper subset".into(),
            ));
        }
        Ok(Matrix { algebra, designated })
    }

    pub fn is_designated(&self, x: usize) -> bool {
        self.designated & singleton(x) != 0
    }
}

/// Names of the elements in `set`, in element order.
pub fn names(a: &Algebra, set: Cell) -> Vec<&str> {
    members(set).filter(|&i| i < a.len()).map(|i| a.elements[i].as_str()).collect()
}

/// The subset named by `names`.
pub fn subset(a: &Algebra, names: &[&str]) -> Result<Cell, MatrixError> {
    names.iter().try_fold(0, |acc, n| {
        a.index(n)
            .map(|i| acc | singleton(i))
            .ok_or_else(|| MatrixError::Malformed(format!("unknown element `{n}`")))
    })
}

/// True iff every instance of `s` evaluates into `set` in a deterministic
/// algebra.
pub fn schema_holds(a: &Algebra, set: Cell, s: &Schema) -> Result<bool, MatrixError> {
    if !a.is_deterministic() {
        return Err(MatrixError::NotDeterministic("schema checking"));
    }
    a.supports(&s.template)?;
    let metas: Vec<String> = s
        .template
        .atoms()
        .into_iter()
        .filter(|m| METAVARIABLES.contains(&m.as_str()))
        .collect();
    let n = a.len();
    let mut v: HashMap<String, usize> = HashMap::new();
    let total = n.pow(metas.len() as u32);
    for code in 0..total {
        let mut c = code;
        for m in metas.iter().rev() {
            v.insert(m.clone(), c % n);
            c /= n;
        }
        if set & singleton(a.eval(&s.template, &v)?) == 0 {
            return Ok(false);
        }
    }
    Ok(true)
}

pub fn schema_valid(m: &Matrix, s: &Schema) -> Result<bool, MatrixError> {
    schema_holds(&m.algebra, m.designated, s)
}

/// `set` is a filter of the presentation: all axioms land in it and it is
/// closed under Modus Ponens.
pub fn is_filter(a: &Algebra, lp: &Presentation, set: Cell) -> Result<bool, MatrixError> {
    for s in &lp.schemas {
        if !schema_holds(a, set, s)? {
            return Ok(false);
        }
    }
    let imp = Connective::Bin(BinOp::Imp);
    for x in members(set) {
        for y in 0..a.len() {
            if set & singleton(a.apply(imp, &[x, y])?) != 0 && set & singleton(y) == 0 {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

fn deterministic(n: usize, f: impl Fn(usize, usize) -> usize) -> Vec<Cell> {
    (0..n * n).map(|k| singleton(f(k / n, k % n))).collect()
}

fn named(elements: &[&str]) -> Vec<String> {
    elements.iter().map(|s| s.to_string()).collect()
}

/// The five-element algebra over `u, 1, a, b, 0`; with `negation` it is the
/// expansion by `!u = !0 = 1, !1 = 0, !a = b, !b = a`.
fn lattice_algebra(negation: bool) -> Algebra {
    const U: usize = 0;
    const I: usize = 1;
    const A: usize = 2;
    const B: usize = 3;
    const O: usize = 4;
    // order 0 < a, b < 1 < u
    let leq = |x: usize, y: usize| x == y || x == O || y == U || (y == I && x != U);
    let join = |x, y| {
        if leq(x, y) {
            y
        } else if leq(y, x) {
            x
        } else {
            I
        }
    };
    let meet = |x, y| {
        if leq(x, y) {
            x
        } else if leq(y, x) {
            y
        } else {
            O
        }
    };
    let imp = [
        [U, U, A, B, O],
        [U, I, A, B, O],
        [U, I, I, B, B],
        [U, I, A, I, A],
        [U, I, I, I, I],
    ];
    let inc = [
        [O, O, O, O, I],
        [O, O, B, A, I],
        [O, B, B, I, I],
        [O, A, I, A, I],
        [I, I, I, I, I],
    ];
    let mut ops = BTreeMap::new();
    ops.insert(Connective::Bin(BinOp::Or), deterministic(5, join));
    ops.insert(Connective::Bin(BinOp::And), deterministic(5, meet));
    ops.insert(Connective::Bin(BinOp::Imp), deterministic(5, |x, y| imp[x][y]));
    ops.insert(Connective::Bin(BinOp::Inc), deterministic(5, |x, y| inc[x][y]));
    if negation {
        let neg = [I, O, B, A, I];
        ops.insert(Connective::Un(UnOp::Neg), neg.iter().map(|&x| singleton(x)).collect());
    }
    Algebra::new(named(&["u", "1", "a", "b", "0"]), ops).expect("builtin tables are total")
}

/// Two-element algebras over `0, 1`; `inc` gives the cell of `x # y`.
fn two_valued(inc: impl Fn(usize, usize) -> Cell, negation: bool) -> Algebra {
    let mut ops = BTreeMap::new();
    ops.insert(Connective::Bin(BinOp::Or), deterministic(2, |x, y| x | y));
    ops.insert(Connective::Bin(BinOp::And), deterministic(2, |x, y| x & y));
    ops.insert(Connective::Bin(BinOp::Imp), deterministic(2, |x, y| (1 - x) | y));
    ops.insert(Connective::Bin(BinOp::Inc), (0..4).map(|k| inc(k / 2, k % 2)).collect());
    if negation {
        // !0 = {1}, !1 = {0, 1}
        ops.insert(Connective::Un(UnOp::Neg), vec![0b10, 0b11]);
    }
    Algebra::new(named(&["0", "1"]), ops).expect("builtin tables are total")
}

pub const BUILTINS: [&str; 5] = ["L", "Lplus", "two_bI", "two_nbI", "nand2"];

/// The named structures, with their usual designated sets: `{u, 1}` for
/// `L` and `Lplus`, `{1}` for the two-element ones.
pub fn builtin(name: &str) -> Option<Matrix> {
    let restricted = |x: usize, y: usize| if x == 1 && y == 1 { 0b01 } else { 0b11 };
    let nand = |x: usize, y: usize| if x == 1 && y == 1 { 0b01 } else { 0b10 };
    let (algebra, designated) = match name {
        "L" => (lattice_algebra(false), 0b00011),
        "Lplus" => (lattice_algebra(true), 0b00011),
        "two_bI" => (two_valued(restricted, false), 0b10),
        "two_nbI" => (two_valued(restricted, true), 0b10),
        "nand2" => (two_valued(nand, false), 0b10),
        _ => return None,
    };
    Some(Matrix::new(algebra, designated).expect("builtin designated sets are proper"))
}

#[cfg(test)]
mod tests;
