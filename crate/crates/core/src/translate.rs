//! The translation from the LFI signature into the incompatibility
//! signature, replacing every `@a` by `a # !a`, and its partial inverse.

use crate::formula::{BinOp, Formula, UnOp};

/// Translates an LFI formula: atoms are fixed, `|`, `&`, `->`, `!` are
/// kept, and `@a` becomes `T(a) # !T(a)`.
pub fn translate(f: &Formula) -> Formula {
    match f {
        Formula::Var(_) => f.clone(),
        Formula::Binary(op, l, r) => Formula::binary(*op, translate(l), translate(r)),
        Formula::Unary(UnOp::Neg, c) => Formula::neg(translate(c)),
        Formula::Unary(UnOp::Circ, c) => {
            let t = translate(c);
            Formula::inc(t.clone(), Formula::neg(t))
        }
    }
}

/// Recovers the LFI preimage of `f`, or `None` when `f` is outside the
/// image of [`translate`] (some `a # b` has `b` different from `!a`).
pub fn invert(f: &Formula) -> Option<Formula> {
    Some(match f {
        Formula::Var(_) => f.clone(),
        Formula::Binary(BinOp::Inc, l, r) => {
            if r.negated() != Some(&**l) {
                return None;
            }
            Formula::circ(invert(l)?)
        }
        Formula::Binary(op, l, r) => Formula::binary(*op, invert(l)?, invert(r)?),
        Formula::Unary(UnOp::Neg, c) => Formula::neg(invert(c)?),
        Formula::Unary(UnOp::Circ, _) => return None,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::formula::Signature;
    use crate::parse::parse;

    fn lfi(s: &str) -> Formula {
        parse(s, Signature::Lfi).unwrap()
    }

    fn nbi(s: &str) -> Formula {
        parse(s, Signature::Nbi).unwrap()
    }

    #[test]
    fn consistency_becomes_self_incompatibility() {
        assert_eq!(translate(&lfi("@p")), nbi("p # !p"));
        assert_eq!(translate(&lfi("@(p&q) -> !p")), nbi("((p&q) # !(p&q)) -> !p"));
        assert_eq!(translate(&lfi("p")), nbi("p"));
        assert_eq!(translate(&lfi("@@p")), nbi("(p # !p) # !(p # !p)"));
    }

    #[test]
    fn inverse() {
        assert_eq!(invert(&nbi("p # !p")), Some(lfi("@p")));
        assert_eq!(invert(&nbi("p # q")), None);
        assert_eq!(invert(&nbi("!(p # !p)")), Some(lfi("!@p")));
        assert_eq!(invert(&nbi("!p # p")), None);
        assert_eq!(invert(&nbi("(p # q) # !(p # q)")), None);
    }
}
