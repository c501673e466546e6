//! Formula syntax shared by every engine.
//!
//! A [`Formula`] is an ordinary finite tree. Three signatures are in use:
//! the LFI signature `{|, &, ->, !, @}`, the incompatibility signature
//! `{|, &, ->, #}` and its expansion by a paraconsistent negation `!`.

use std::collections::{BTreeMap, HashSet};
use std::fmt;

use serde::{Deserialize, Serialize};

/// Binary connectives.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum BinOp {
    And,
    Or,
    Imp,
    /// Incompatibility, written `#`.
    Inc,
}

/// Unary connectives.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum UnOp {
    /// Paraconsistent negation, written `!`.
    Neg,
    /// Consistency operator, written `@`.
    Circ,
}

/// A connective of either arity, used for signature membership and for
/// keying operation tables.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Connective {
    Bin(BinOp),
    Un(UnOp),
}

impl Connective {
    pub fn arity(self) -> usize {
        match self {
            Connective::Bin(_) => 2,
            Connective::Un(_) => 1,
        }
    }

    /// Token used by the concrete grammar.
    pub fn symbol(self) -> &'static str {
        match self {
            Connective::Bin(op) => op.symbol(),
            Connective::Un(op) => op.symbol(),
        }
    }

    /// Key used in matrix description files.
    pub fn key(self) -> &'static str {
        match self {
            Connective::Bin(BinOp::And) => "and",
            Connective::Bin(BinOp::Or) => "or",
            Connective::Bin(BinOp::Imp) => "imp",
            Connective::Bin(BinOp::Inc) => "inc",
            Connective::Un(UnOp::Neg) => "neg",
            Connective::Un(UnOp::Circ) => "circ",
        }
    }

    pub fn from_key(key: &str) -> Option<Connective> {
        Some(match key {
            "and" => Connective::Bin(BinOp::And),
            "or" => Connective::Bin(BinOp::Or),
            "imp" => Connective::Bin(BinOp::Imp),
            "inc" => Connective::Bin(BinOp::Inc),
            "neg" => Connective::Un(UnOp::Neg),
            "circ" => Connective::Un(UnOp::Circ),
            _ => return None,
        })
    }
}

impl BinOp {
    pub fn symbol(self) -> &'static str {
        match self {
            BinOp::And => "&",
            BinOp::Or => "|",
            BinOp::Imp => "->",
            BinOp::Inc => "#",
        }
    }
}

impl UnOp {
    pub fn symbol(self) -> &'static str {
        match self {
            UnOp::Neg => "!",
            UnOp::Circ => "@",
        }
    }
}

/// The three signatures of the formula language.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Signature {
    /// `{|, &, ->, !, @}`
    Lfi,
    /// `{|, &, ->, #}`
    Bi,
    /// `{|, &, ->, #, !}`
    Nbi,
}

impl Signature {
    pub fn contains(self, c: Connective) -> bool {
        match c {
            Connective::Bin(BinOp::And | BinOp::Or | BinOp::Imp) => true,
            Connective::Bin(BinOp::Inc) => matches!(self, Signature::Bi | Signature::Nbi),
            Connective::Un(UnOp::Neg) => matches!(self, Signature::Lfi | Signature::Nbi),
            Connective::Un(UnOp::Circ) => self == Signature::Lfi,
        }
    }

    /// Connectives with their arities, in a fixed order.
    pub fn connectives(self) -> Vec<(Connective, usize)> {
        ALL_CONNECTIVES
            .iter()
            .copied()
            .filter(|c| self.contains(*c))
            .map(|c| (c, c.arity()))
            .collect()
    }

    pub fn name(self) -> &'static str {
        match self {
            Signature::Lfi => "LFI",
            Signature::Bi => "bI",
            Signature::Nbi => "nbI",
        }
    }
}

pub const ALL_CONNECTIVES: [Connective; 6] = [
    Connective::Bin(BinOp::Or),
    Connective::Bin(BinOp::And),
    Connective::Bin(BinOp::Imp),
    Connective::Bin(BinOp::Inc),
    Connective::Un(UnOp::Neg),
    Connective::Un(UnOp::Circ),
];

/// A propositional formula.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Formula {
    Var(String),
    Binary(BinOp, Box<Formula>, Box<Formula>),
    Unary(UnOp, Box<Formula>),
}

impl Formula {
    pub fn var(name: impl Into<String>) -> Formula {
        Formula::Var(name.into())
    }

    pub fn binary(op: BinOp, left: Formula, right: Formula) -> Formula {
        Formula::Binary(op, Box::new(left), Box::new(right))
    }

    pub fn and(left: Formula, right: Formula) -> Formula {
        Formula::binary(BinOp::And, left, right)
    }

    pub fn or(left: Formula, right: Formula) -> Formula {
        Formula::binary(BinOp::Or, left, right)
    }

    pub fn imp(left: Formula, right: Formula) -> Formula {
        Formula::binary(BinOp::Imp, left, right)
    }

    pub fn inc(left: Formula, right: Formula) -> Formula {
        Formula::binary(BinOp::Inc, left, right)
    }

    pub fn neg(child: Formula) -> Formula {
        Formula::Unary(UnOp::Neg, Box::new(child))
    }

    pub fn circ(child: Formula) -> Formula {
        Formula::Unary(UnOp::Circ, Box::new(child))
    }

    /// `bot(a, b)`: `(a & b) & (a # b)`.
    pub fn bottom(a: Formula, b: Formula) -> Formula {
        Formula::and(Formula::and(a.clone(), b.clone()), Formula::inc(a, b))
    }

    /// Classical negation definable wherever `#` is: `a -> bot(a, a)`.
    pub fn classical_neg(a: Formula) -> Formula {
        Formula::imp(a.clone(), Formula::bottom(a.clone(), a))
    }

    /// `top(a)`: `a -> a`.
    pub fn top(a: Formula) -> Formula {
        Formula::imp(a.clone(), a)
    }

    pub fn is_var(&self) -> bool {
        matches!(self, Formula::Var(_))
    }

    pub fn as_var(&self) -> Option<&str> {
        match self {
            Formula::Var(name) => Some(name),
            _ => None,
        }
    }

    /// The connective at the root, if any.
    pub fn connective(&self) -> Option<Connective> {
        match self {
            Formula::Var(_) => None,
            Formula::Binary(op, _, _) => Some(Connective::Bin(*op)),
            Formula::Unary(op, _) => Some(Connective::Un(*op)),
        }
    }

    /// If this is `!a`, returns `a`.
    pub fn negated(&self) -> Option<&Formula> {
        match self {
            Formula::Unary(UnOp::Neg, a) => Some(a),
            _ => None,
        }
    }

    /// If this is `a # b`, returns `(a, b)`.
    pub fn as_inc(&self) -> Option<(&Formula, &Formula)> {
        match self {
            Formula::Binary(BinOp::Inc, a, b) => Some((a, b)),
            _ => None,
        }
    }

    /// If this is `a & b`, returns `(a, b)`.
    pub fn as_and(&self) -> Option<(&Formula, &Formula)> {
        match self {
            Formula::Binary(BinOp::And, a, b) => Some((a, b)),
            _ => None,
        }
    }

    /// For `a # !a` returns `a`.
    pub fn as_inc_with_own_negation(&self) -> Option<&Formula> {
        let (a, b) = self.as_inc()?;
        (b.negated() == Some(a)).then_some(a)
    }

    /// For `!a # a` returns `a`.
    pub fn as_negation_inc_self(&self) -> Option<&Formula> {
        let (a, b) = self.as_inc()?;
        (a.negated() == Some(b)).then_some(b)
    }

    /// For `a & !a` returns `a`.
    pub fn as_contradiction(&self) -> Option<&Formula> {
        let (a, b) = self.as_and()?;
        (b.negated() == Some(a)).then_some(a)
    }

    /// The commuted incompatibility `b # a` of `a # b`.
    pub fn commuted(&self) -> Option<Formula> {
        let (a, b) = self.as_inc()?;
        Some(Formula::inc(b.clone(), a.clone()))
    }

    /// Number of connective occurrences; atoms have complexity 0.
    pub fn complexity(&self) -> usize {
        match self {
            Formula::Var(_) => 0,
            Formula::Binary(_, l, r) => l.complexity() + r.complexity() + 1,
            Formula::Unary(_, c) => c.complexity() + 1,
        }
    }

    /// Whether every connective lies in `sig`.
    pub fn fits(&self, sig: Signature) -> bool {
        self.first_outside(sig).is_none()
    }

    /// First connective (pre-order) that `sig` lacks.
    pub fn first_outside(&self, sig: Signature) -> Option<Connective> {
        match self {
            Formula::Var(_) => None,
            Formula::Binary(op, l, r) => {
                let c = Connective::Bin(*op);
                if !sig.contains(c) {
                    return Some(c);
                }
                l.first_outside(sig).or_else(|| r.first_outside(sig))
            }
            Formula::Unary(op, child) => {
                let c = Connective::Un(*op);
                if !sig.contains(c) {
                    return Some(c);
                }
                child.first_outside(sig)
            }
        }
    }

    /// Atom names in order of first occurrence.
    pub fn atoms(&self) -> Vec<String> {
        let mut seen = HashSet::new();
        let mut out = Vec::new();
        self.visit_post_order(&mut |f| {
            if let Formula::Var(name) = f {
                if seen.insert(name.clone()) {
                    out.push(name.clone());
                }
            }
        });
        out
    }

    /// Left-to-right post-order traversal.
    pub fn visit_post_order<'a>(&'a self, visit: &mut impl FnMut(&'a Formula)) {
        match self {
            Formula::Var(_) => {}
            Formula::Binary(_, l, r) => {
                l.visit_post_order(visit);
                r.visit_post_order(visit);
            }
            Formula::Unary(_, c) => c.visit_post_order(visit),
        }
        visit(self);
    }

    /// Homomorphic replacement of atoms; unmapped atoms stay put.
    pub fn substitute(&self, s: &Substitution) -> Formula {
        match self {
            Formula::Var(name) => s.get(name).cloned().unwrap_or_else(|| self.clone()),
            Formula::Binary(op, l, r) => Formula::binary(*op, l.substitute(s), r.substitute(s)),
            Formula::Unary(op, c) => Formula::Unary(*op, Box::new(c.substitute(s))),
        }
    }
}

impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&crate::parse::render(self))
    }
}

/// Distinct subformulas, by ascending complexity; ties keep the order of
/// first occurrence in a left-to-right post-order walk. `f` itself is last.
pub fn subformulas(f: &Formula) -> Vec<Formula> {
    subformulas_of_all(std::slice::from_ref(f))
}

/// Distinct subformulas of several formulas, ordered as in [`subformulas`]
/// with first occurrence taken across the formulas in the given order.
pub fn subformulas_of_all(fs: &[Formula]) -> Vec<Formula> {
    let mut seen: HashSet<&Formula> = HashSet::new();
    let mut ordered: Vec<&Formula> = Vec::new();
    for f in fs {
        f.visit_post_order(&mut |g| {
            if seen.insert(g) {
                ordered.push(g);
            }
        });
    }
    // stable: equal complexities keep first-occurrence order
    ordered.sort_by_key(|g| g.complexity());
    ordered.into_iter().cloned().collect()
}

/// Map from atom names to formulas.
pub type Substitution = BTreeMap<String, Formula>;

/// Left-associated conjunction `((g1 & g2) & ...) & gm`; `None` when empty.
pub fn conjunction(premises: &[Formula]) -> Option<Formula> {
    let mut iter = premises.iter().cloned();
    let first = iter.next()?;
    Some(iter.fold(first, Formula::and))
}

/// The single formula whose validity decides `premises |- conclusion`:
/// the conclusion itself, or `conjunction(premises) -> conclusion`.
pub fn sequent_formula(premises: &[Formula], conclusion: &Formula) -> Formula {
    match conjunction(premises) {
        None => conclusion.clone(),
        Some(c) => Formula::imp(c, conclusion.clone()),
    }
}

/// A consequence claim `premises |- conclusion` over one signature.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Sequent {
    pub premises: Vec<Formula>,
    pub conclusion: Formula,
}

impl Sequent {
    pub fn new(premises: Vec<Formula>, conclusion: Formula) -> Sequent {
        Sequent {
            premises,
            conclusion,
        }
    }

    pub fn formulas(&self) -> impl Iterator<Item = &Formula> {
        self.premises.iter().chain(std::iter::once(&self.conclusion))
    }

    pub fn fits(&self, sig: Signature) -> bool {
        self.formulas().all(|f| f.fits(sig))
    }

    pub fn test_formula(&self) -> Formula {
        sequent_formula(&self.premises, &self.conclusion)
    }
}

impl fmt::Display for Sequent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let premises: Vec<String> = self.premises.iter().map(|p| p.to_string()).collect();
        if premises.is_empty() {
            write!(f, "|- {}", self.conclusion)
        } else {
            write!(f, "{} |- {}", premises.join(", "), self.conclusion)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::parse;

    fn nbi(s: &str) -> Formula {
        parse(s, Signature::Nbi).unwrap()
    }

    #[test]
    fn subformula_order_follows_complexity_then_post_order() {
        let got = subformulas(&nbi("p#q -> q#p"));
        let want: Vec<Formula> = ["p", "q", "p#q", "q#p", "p#q -> q#p"]
            .iter()
            .map(|s| nbi(s))
            .collect();
        assert_eq!(got, want);
        assert_eq!(subformulas(&nbi("p")), vec![nbi("p")]);
        assert_eq!(subformulas(&nbi("p & p")), vec![nbi("p"), nbi("p&p")]);
    }

    #[test]
    fn complexity_counts_unary_connectives() {
        assert_eq!(nbi("p").complexity(), 0);
        assert_eq!(nbi("p # q").complexity(), 1);
        assert_eq!(nbi("!p").complexity(), 1);
        assert_eq!(nbi("!(p & !q)").complexity(), 3);
    }

    #[test]
    fn substitution_is_homomorphic() {
        let mut s = Substitution::new();
        s.insert("p".into(), nbi("q#r"));
        assert_eq!(nbi("p->p").substitute(&s), nbi("(q#r)->(q#r)"));
        assert_eq!(nbi("p#q").substitute(&Substitution::new()), nbi("p#q"));

        let lfi = |t: &str| parse(t, Signature::Lfi).unwrap();
        let mut s = Substitution::new();
        s.insert("p".into(), lfi("p&q"));
        assert_eq!(lfi("@p").substitute(&s), lfi("@(p&q)"));
    }

    #[test]
    fn sequent_formula_folds_left() {
        let g = [nbi("a"), nbi("b"), nbi("c")];
        assert_eq!(sequent_formula(&g, &nbi("d")), nbi("((a & b) & c) -> d"));
        assert_eq!(sequent_formula(&[], &nbi("d")), nbi("d"));
    }

    #[test]
    fn shape_helpers() {
        assert_eq!(nbi("p # !p").as_inc_with_own_negation(), Some(&nbi("p")));
        assert_eq!(nbi("!p # p").as_negation_inc_self(), Some(&nbi("p")));
        assert_eq!(nbi("p # q").as_inc_with_own_negation(), None);
        assert_eq!(nbi("p & !p").as_contradiction(), Some(&nbi("p")));
        assert_eq!(nbi("p # q").commuted(), Some(nbi("q # p")));
    }
}
