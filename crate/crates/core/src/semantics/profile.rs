//! Per-logic branching tables and row-erasure conditions over the
//! two-element Boolean algebra.

use crate::logic::LogicId;

/// How `#` branches.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum IncBranching {
    /// `1 # 1 = {0}`, every other cell `{0, 1}`.
    Restricted,
    /// Deterministic Sheffer stroke: `0` iff both arguments are `1`.
    Sheffer,
}

/// The row-erasure conditions, each a predicate over a completed row.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Erasure {
    /// `a # b` and `b # a` receive different values.
    Commutation,
    /// `a # !a` (or `!a # a`) is 0 while `a` or `!a` is 0.
    SelfIncompatibility,
    /// `!(a # !a)` is 1 while `a` or `!a` is 0.
    NegatedSelfIncompatibility,
    /// `!(a & !a)` is 1 while `a # !a` is 0, `!a # a` is 0, or `a`, `!a`
    /// are both 1.
    NegatedContradiction,
    /// `@a`, `a` and `!a` all 1.
    ConsistencyExplosion,
    /// `@a` is 0 while `a` or `!a` is 0.
    ConsistencyCompleteness,
    /// `!@a` is 1 while `a` or `!a` is 0.
    NegatedConsistency,
    /// `!(a & !a)` is 1 while `@a` is 0.
    ContradictionConsistency,
}

/// A logic's truth-table semantics.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConstraintProfile {
    pub logic: LogicId,
    pub inc: IncBranching,
    pub erasures: Vec<Erasure>,
}

impl ConstraintProfile {
    pub fn of(logic: LogicId) -> ConstraintProfile {
        use Erasure::*;
        let (inc, erasures) = match logic {
            LogicId::Bi | LogicId::Nbi => (IncBranching::Restricted, vec![Commutation]),
            LogicId::NbIciw => (
                IncBranching::Restricted,
                vec![Commutation, SelfIncompatibility],
            ),
            LogicId::NbIci => (
                IncBranching::Restricted,
                vec![Commutation, SelfIncompatibility, NegatedSelfIncompatibility],
            ),
            LogicId::NbIcl => (
                IncBranching::Restricted,
                vec![Commutation, SelfIncompatibility, NegatedContradiction],
            ),
            LogicId::CplSheffer | LogicId::NbiSheffer => {
                (IncBranching::Sheffer, vec![Commutation])
            }
            LogicId::Mbc => (IncBranching::Restricted, vec![ConsistencyExplosion]),
            LogicId::MbCciw => (
                IncBranching::Restricted,
                vec![ConsistencyExplosion, ConsistencyCompleteness],
            ),
            LogicId::MbCci => (
                IncBranching::Restricted,
                vec![ConsistencyExplosion, ConsistencyCompleteness, NegatedConsistency],
            ),
            LogicId::MbCcl => (
                IncBranching::Restricted,
                vec![
                    ConsistencyExplosion,
                    ConsistencyCompleteness,
                    ContradictionConsistency,
                ],
            ),
        };
        ConstraintProfile {
            logic,
            inc,
            erasures,
        }
    }

    pub fn has(&self, e: Erasure) -> bool {
        self.erasures.contains(&e)
    }

    /// Values `a # b` may take.
    pub fn inc_values(&self, a: bool, b: bool) -> &'static [bool] {
        match (self.inc, a && b) {
            (_, true) => &[false],
            (IncBranching::Restricted, false) => &[false, true],
            (IncBranching::Sheffer, false) => &[true],
        }
    }

    /// Values `!a` may take: `!0 = {1}`, `!1 = {0, 1}`.
    pub fn neg_values(&self, a: bool) -> &'static [bool] {
        if a {
            &[false, true]
        } else {
            &[true]
        }
    }

    /// `@a` branches freely; its restrictions are erasure conditions.
    pub fn circ_values(&self, _a: bool) -> &'static [bool] {
        &[false, true]
    }
}
