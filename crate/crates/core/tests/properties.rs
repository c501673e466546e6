use std::collections::HashSet;

use proptest::prelude::*;

use incompat_core::formula::{subformulas, BinOp, Formula, UnOp};
use incompat_core::generate::Generator;
use incompat_core::hilbert::{check_proof, presentation, Justification, Line, Proof};
use incompat_core::matrix::{builtin, nmatrix_decide};
use incompat_core::{decide, invert, parse, render, translate, LogicId, Signature, Substitution};

fn formula(sig: Signature) -> impl Strategy<Value = Formula> {
    let leaf = prop::sample::select(vec!["p", "q", "r", "s1"]).prop_map(Formula::var);
    leaf.prop_recursive(5, 32, 2, move |inner| {
        let mut ops: Vec<BoxedStrategy<Formula>> = vec![
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Formula::and(a, b)).boxed(),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Formula::or(a, b)).boxed(),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Formula::imp(a, b)).boxed(),
        ];
        if sig != Signature::Lfi {
            ops.push((inner.clone(), inner.clone()).prop_map(|(a, b)| Formula::inc(a, b)).boxed());
        }
        if sig != Signature::Bi {
            ops.push(inner.clone().prop_map(Formula::neg).boxed());
        }
        if sig == Signature::Lfi {
            ops.push(inner.clone().prop_map(Formula::circ).boxed());
        }
        prop::strategy::Union::new(ops)
    })
}

/// Every `x # y` has the form `a # !a` and no `@` occurs.
fn in_image(f: &Formula) -> bool {
    subformulas(f).iter().all(|g| match g {
        Formula::Binary(BinOp::Inc, a, b) => **b == Formula::neg((**a).clone()),
        Formula::Unary(UnOp::Circ, _) => false,
        _ => true,
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(400))]

    #[test]
    fn render_then_parse_is_identity(f in formula(Signature::Nbi)) {
        prop_assert_eq!(parse(&render(&f), Signature::Nbi).unwrap(), f);
    }

    #[test]
    fn render_then_parse_lfi(f in formula(Signature::Lfi)) {
        prop_assert_eq!(parse(&render(&f), Signature::Lfi).unwrap(), f);
    }

    #[test]
    fn translation_inverts(f in formula(Signature::Lfi)) {
        let t = translate(&f);
        prop_assert!(t.fits(Signature::Nbi));
        prop_assert!(in_image(&t));
        prop_assert_eq!(invert(&t), Some(f));
    }

    #[test]
    fn image_is_the_subformula_predicate(f in formula(Signature::Nbi)) {
        prop_assert_eq!(invert(&f).is_some(), in_image(&f));
    }

    #[test]
    fn renaming_atoms_preserves_validity(f in formula(Signature::Nbi)) {
        let mut s = Substitution::new();
        for (k, a) in f.atoms().iter().enumerate() {
            s.insert(a.clone(), Formula::var(format!("z{k}")));
        }
        for logic in [LogicId::Bi, LogicId::Nbi, LogicId::NbIcl] {
            let g = f.substitute(&s);
            let sig = logic.signature();
            if f.fits(sig) {
                prop_assert_eq!(decide(logic, &[], &f).unwrap().valid, decide(logic, &[], &g).unwrap().valid);
            }
        }
    }
}

#[test]
fn translation_is_injective() {
    let mut g = Generator::new(0, Signature::Lfi, 4, 8);
    let mut seen = std::collections::HashMap::new();
    for _ in 0..10_000 {
        let f = g.formula();
        let t = translate(&f);
        if let Some(old) = seen.insert(t, f.clone()) {
            assert_eq!(old, f);
        }
    }
}

#[test]
fn monotonicity() {
    for logic in LogicId::ALL {
        let mut g = Generator::new(21, logic.signature(), 3, 6);
        for _ in 0..200 {
            let (premises, conclusion) = g.sequent(2);
            if decide(logic, &premises, &conclusion).unwrap().valid {
                let mut more = premises.clone();
                more.push(g.formula());
                assert!(decide(logic, &more, &conclusion).unwrap().valid, "{logic}");
            }
        }
    }
}

#[test]
fn premise_order_does_not_matter() {
    for logic in LogicId::ALL {
        let mut g = Generator::new(22, logic.signature(), 3, 6);
        for _ in 0..200 {
            let (mut premises, conclusion) = g.sequent(3);
            let a = decide(logic, &premises, &conclusion).unwrap().valid;
            premises.reverse();
            assert_eq!(a, decide(logic, &premises, &conclusion).unwrap().valid, "{logic}");
        }
    }
}

#[test]
fn deduction_theorem() {
    for logic in LogicId::ALL {
        let mut g = Generator::new(23, logic.signature(), 3, 6);
        for _ in 0..150 {
            let (mut premises, beta) = g.sequent(2);
            let alpha = g.formula();
            let folded = decide(logic, &premises, &Formula::imp(alpha.clone(), beta.clone())).unwrap();
            premises.push(alpha);
            assert_eq!(decide(logic, &premises, &beta).unwrap().valid, folded.valid, "{logic}");
        }
    }
}

#[test]
fn bi_fragment_is_conservative() {
    // Adding negation (nbI) over the bI signature proves no new negation-free
    // theorems beyond bI's, and every bI theorem stays one.
    let mut g = Generator::new(24, Signature::Bi, 3, 7);
    for _ in 0..500 {
        let f = g.formula();
        let bi = decide(LogicId::Bi, &[], &f).unwrap().valid;
        assert_eq!(bi, decide(LogicId::Nbi, &[], &f).unwrap().valid, "{f}");
    }
}

#[test]
fn stronger_logics_prove_more() {
    let chains: [&[LogicId]; 3] = [
        &[LogicId::Bi, LogicId::Nbi, LogicId::NbIciw, LogicId::NbIci],
        &[LogicId::NbIciw, LogicId::NbIcl],
        &[LogicId::Mbc, LogicId::MbCciw, LogicId::MbCci],
    ];
    for chain in chains {
        let sig = chain.last().unwrap().signature();
        let mut g = Generator::new(25, sig, 3, 7);
        for _ in 0..300 {
            let f = g.formula();
            let mut before = false;
            for &l in chain {
                if !f.fits(l.signature()) {
                    continue;
                }
                let v = decide(l, &[], &f).unwrap().valid;
                assert!(v || !before, "{l} loses {f}");
                before = v;
            }
        }
    }
    let mut g = Generator::new(26, Signature::Lfi, 3, 7);
    for _ in 0..300 {
        let f = g.formula();
        if decide(LogicId::MbCciw, &[], &f).unwrap().valid {
            assert!(decide(LogicId::MbCcl, &[], &f).unwrap().valid, "{f}");
        }
    }
}

#[test]
fn random_proofs_are_sound() {
    // Proofs assembled from random axiom instances and every applicable
    // Modus Ponens step.
    for logic in LogicId::ALL {
        let lp = presentation(logic);
        let mut g = Generator::new(27, logic.signature(), 2, 3);
        for _ in 0..20 {
            let mut lines: Vec<Line> = Vec::new();
            for s in &lp.schemas {
                let mut sub = Substitution::new();
                for m in incompat_core::hilbert::METAVARIABLES {
                    sub.insert(m.to_string(), g.formula());
                }
                lines.push(Line {
                    formula: s.template.substitute(&sub),
                    justification: Justification::Axiom(s.name.to_string()),
                });
            }
            let mut known: HashSet<Formula> = lines.iter().map(|l| l.formula.clone()).collect();
            for _round in 0..2 {
                let n = lines.len();
                for j in 0..n {
                    if let Formula::Binary(BinOp::Imp, a, b) = &lines[j].formula {
                        if let Some(i) = lines.iter().position(|l| l.formula == **a) {
                            if known.insert((**b).clone()) {
                                lines.push(Line {
                                    formula: (**b).clone(),
                                    justification: Justification::Mp(i + 1, j + 1),
                                });
                            }
                        }
                    }
                }
            }
            let proof = Proof {
                logic: Some(logic),
                premises: vec![],
                lines,
            };
            check_proof(&lp, &proof).unwrap();
            for l in &proof.lines {
                assert!(decide(logic, &[], &l.formula).unwrap().valid, "{logic}: {}", l.formula);
            }
        }
    }
}

#[test]
fn deterministic_matrices_evaluate() {
    let m = builtin("L").unwrap();
    let mut g = Generator::new(28, Signature::Bi, 2, 6);
    for _ in 0..300 {
        let f = g.formula();
        let atoms = f.atoms();
        let mut any_undesignated = false;
        for code in 0..m.algebra.len().pow(atoms.len() as u32) {
            let mut c = code;
            let env: std::collections::HashMap<String, usize> = atoms
                .iter()
                .rev()
                .map(|a| {
                    let v = c % m.algebra.len();
                    c /= m.algebra.len();
                    (a.clone(), v)
                })
                .collect();
            let v = m.algebra.eval(&f, &env).unwrap();
            any_undesignated |= !m.is_designated(v);
        }
        assert_eq!(nmatrix_decide(&m, &[], &f).unwrap().valid, !any_undesignated, "{f}");
    }
}
