//! Logics of formal incompatibility and their LFI neighbours.
//!
//! ```
//! use incompat_core::{decide, parse, LogicId, Signature};
//!
//! let comm = parse("(p # q) -> (q # p)", Signature::Bi).unwrap();
//! assert!(decide(LogicId::Bi, &[], &comm).unwrap().valid);
//! ```

pub mod formula;
pub mod generate;
pub mod hilbert;
pub mod logic;
pub mod matrix;
pub mod parse;
pub mod semantics;
pub mod tableau;
pub mod translate;

pub use formula::{subformulas, BinOp, Connective, Formula, Sequent, Signature, Substitution, UnOp};
pub use logic::LogicId;
pub use parse::{parse, parse_list, parse_sequent, render, ParseError};
pub use semantics::{build_table, decide, export_table, TableFormat, Verdict};
pub use translate::{invert, translate};

#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/formulas.md")]
    mod formulas {}
    #[doc = include_str!("../../../book/src/truth-tables.md")]
    mod truth_tables {}
    #[doc = include_str!("../../../book/src/tableaux.md")]
    mod tableaux {}
    #[doc = include_str!("../../../book/src/hilbert.md")]
    mod hilbert {}
    #[doc = include_str!("../../../book/src/matrices.md")]
    mod matrices {}
    #[doc = include_str!("../../../book/src/translation.md")]
    mod translation {}
    #[doc = include_str!("../../../book/src/cli.md")]
    mod cli {}
}
