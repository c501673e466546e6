//! The Γₙ family and the falsifier for candidate finite Nmatrices over the
//! bI signature.
//!
//! A candidate either fails to validate some bI schema (or Modus Ponens),
//! or, once sound, is too strong: with `n` elements, two of `p0..pn` share
//! a value, which makes `Γₙ` undesignatable, so `Γₙ ⊨ p0` holds in the
//! candidate although it fails in bI.

use crate::formula::{Formula, Substitution};
use crate::hilbert::{presentation, METAVARIABLES};
use crate::logic::LogicId;
use crate::semantics::{decide, SemanticError};

use super::nmatrix::{nmatrix_decide_with, NmatrixOptions};
use super::{Matrix, MatrixError};
use crate::formula::{BinOp, Connective};

pub const GAMMA_CAP: usize = 4;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WitnessFamily {
    pub n: usize,
    /// `phi_ij` for `i` then `j` ascending.
    pub formulas: Vec<Formula>,
    pub goal: Formula,
}

/// `phi_ij = p_i # q_j` when `i < j`, else `~(p_i # q_j)`, for
/// `0 <= i, j <= n`.
pub fn gamma_family(n: usize) -> Result<WitnessFamily, MatrixError> {
    if n > GAMMA_CAP {
        return Err(MatrixError::TooLarge {
            what: "the witness family",
            limit: GAMMA_CAP,
            got: n,
        });
    }
    let p = |i: usize| Formula::var(format!("p{i}"));
    let q = |j: usize| Formula::var(format!("q{j}"));
    let mut formulas = Vec::with_capacity((n + 1) * (n + 1));
    for i in 0..=n {
        for j in 0..=n {
            let inc = Formula::inc(p(i), q(j));
            formulas.push(if i < j { inc } else { Formula::classical_neg(inc) });
        }
    }
    Ok(WitnessFamily {
        n,
        formulas,
        goal: p(0),
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Refutation {
    /// A bI schema with an atomic instance the candidate refutes.
    UnsoundSchema {
        schema: &'static str,
        instance: Formula,
        witness: Vec<(Formula, usize)>,
    },
    /// Modus Ponens fails: `x` designated, some value of `x -> y`
    /// designated, `y` not.
    UnsoundRule { x: usize, y: usize },
    /// The candidate validates `Γₙ ⊨ p0`; `bi_invalid` records that bI's
    /// own decision procedure rejects the same sequent.
    Overstrength { n: usize, bi_invalid: bool },
    /// Neither kind of witness was found.
    Inconclusive { reason: String },
}

impl std::fmt::Display for Refutation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Refutation::UnsoundSchema { schema, .. } => write!(f, "UNSOUND: {schema}"),
            Refutation::UnsoundRule { .. } => write!(f, "UNSOUND: MP"),
            Refutation::Overstrength { n, .. } => write!(f, "OVERSTRONG: Gamma_{n} |= p0"),
            Refutation::Inconclusive { reason } => write!(f, "INCONCLUSIVE: {reason}"),
        }
    }
}

pub fn refute_characterization(m: &Matrix, options: NmatrixOptions) -> Result<Refutation, MatrixError> {
    for op in [BinOp::And, BinOp::Or, BinOp::Imp, BinOp::Inc] {
        m.algebra.cell(Connective::Bin(op), &[0, 0])?;
    }
    let mut atomic = Substitution::new();
    for (meta, atom) in METAVARIABLES.iter().zip(["p", "q", "r"]) {
        atomic.insert(meta.to_string(), Formula::var(atom));
    }
    for s in presentation(LogicId::Bi).schemas {
        let instance = s.template.substitute(&atomic);
        let v = match nmatrix_decide_with(m, &[], &instance, options) {
            Ok(v) => v,
            Err(MatrixError::SearchCap(cap)) => {
                return Ok(Refutation::Inconclusive {
                    reason: format!("search limit {cap} reached on {}", s.name),
                })
            }
            Err(e) => return Err(e),
        };
        if let Some(witness) = v.witness {
            return Ok(Refutation::UnsoundSchema {
                schema: s.name,
                instance,
                witness,
            });
        }
    }
    let n = m.algebra.len();
    for x in 0..n {
        for y in 0..n {
            let cell = m.algebra.cell(Connective::Bin(BinOp::Imp), &[x, y])?;
            if m.is_designated(x) && !m.is_designated(y) && cell & m.designated != 0 {
                return Ok(Refutation::UnsoundRule { x, y });
            }
        }
    }
    let family = match gamma_family(n) {
        Ok(f) => f,
        Err(MatrixError::TooLarge { limit, .. }) => {
            return Ok(Refutation::Inconclusive {
                reason: format!("{n} elements exceed the witness-family limit {limit}"),
            })
        }
        Err(e) => return Err(e),
    };
    let v = match nmatrix_decide_with(m, &family.formulas, &family.goal, options) {
        Ok(v) => v,
        Err(MatrixError::SearchCap(cap)) => {
            return Ok(Refutation::Inconclusive {
                reason: format!("search limit {cap} reached on Gamma_{n}"),
            })
        }
        Err(e) => return Err(e),
    };
    if !v.valid {
        return Ok(Refutation::Inconclusive {
            reason: format!("sound on atomic instances and Gamma_{n} is not valid"),
        });
    }
    let bi_invalid = match decide(LogicId::Bi, &family.formulas, &family.goal) {
        Ok(verdict) => !verdict.valid,
        Err(SemanticError::RowCap { cap }) => {
            return Ok(Refutation::Inconclusive {
                reason: format!("bI table for Gamma_{n} exceeded {cap} rows"),
            })
        }
        Err(e) => return Err(MatrixError::Malformed(e.to_string())),
    };
    Ok(Refutation::Overstrength { n, bi_invalid })
}
