use super::*;
use crate::formula::Signature;
use crate::hilbert::{presentation, schema};
use crate::logic::LogicId;
use crate::parse::parse;

fn el(m: &Matrix, name: &str) -> usize {
    m.algebra.index(name).unwrap()
}

#[test]
fn lattice_tables() {
    let l = builtin("L").unwrap();
    let op = |c, x: &str, y: &str| {
        let r = l.algebra.apply(Connective::Bin(c), &[el(&l, x), el(&l, y)]).unwrap();
        l.algebra.elements[r].clone()
    };
    assert_eq!(op(BinOp::Inc, "1", "a"), "b");
    assert_eq!(op(BinOp::Imp, "a", "0"), "b");
    assert_eq!(op(BinOp::Or, "a", "b"), "1");
    assert_eq!(op(BinOp::And, "a", "b"), "0");
    assert_eq!(op(BinOp::Or, "u", "0"), "u");
    let lp = builtin("Lplus").unwrap();
    let neg = |x: &str| lp.algebra.elements[lp.algebra.apply(Connective::Un(UnOp::Neg), &[el(&lp, x)]).unwrap()].clone();
    assert_eq!(neg("a"), "b");
    assert_eq!(neg("u"), "1");
    assert_eq!(neg("1"), "0");
}

#[test]
fn models_and_filters() {
    let l = builtin("L").unwrap();
    assert!(schema_valid(&l, schema("Ip").unwrap()).unwrap());
    let only_u = Matrix::new(l.algebra.clone(), subset(&l.algebra, &["u"]).unwrap()).unwrap();
    assert!(!schema_valid(&only_u, schema("Ax1").unwrap()).unwrap());
    let lp = builtin("Lplus").unwrap();
    assert!(schema_valid(&lp, schema("Ax11").unwrap()).unwrap());
    assert!(matches!(
        schema_valid(&l, schema("Ax11").unwrap()),
        Err(MatrixError::MissingOperation("neg"))
    ));

    let bi = presentation(LogicId::Bi);
    let fa = subset(&l.algebra, &["u", "1", "a"]).unwrap();
    let fb = subset(&l.algebra, &["u", "1", "b"]).unwrap();
    assert!(is_filter(&l.algebra, &bi, fa).unwrap());
    assert!(is_filter(&l.algebra, &bi, fb).unwrap());
    assert!(!is_filter(&l.algebra, &bi, subset(&l.algebra, &["u"]).unwrap()).unwrap());
}

#[test]
fn congruences_and_leibniz() {
    for name in ["L", "Lplus"] {
        let m = builtin(name).unwrap();
        let cs = congruences(&m.algebra).unwrap();
        let names: Vec<String> = cs.iter().map(|c| c.describe(&m.algebra)).collect();
        assert_eq!(names, ["Nabla", "Delta"], "{name}");
        let fa = subset(&m.algebra, &["u", "1", "a"]).unwrap();
        let fb = subset(&m.algebra, &["u", "1", "b"]).unwrap();
        assert!(leibniz(&m.algebra, fa).unwrap().is_identity());
        assert!(leibniz(&m.algebra, fb).unwrap().is_identity());
        assert!(leibniz(&m.algebra, m.algebra.full()).unwrap().is_total());
    }
    let one = Algebra::new(vec!["x".into()], BTreeMap::new()).unwrap();
    let cs = congruences(&one).unwrap();
    assert_eq!(cs.len(), 1);
    assert!(cs[0].is_identity() && cs[0].is_total());
}

#[test]
fn nmatrix_search() {
    let two = builtin("two_bI").unwrap();
    let f = |s: &str| parse(s, Signature::Bi).unwrap();
    let v = nmatrix_decide(&two, &[], &f("(p#q)->(q#p)")).unwrap();
    let w = v.witness.unwrap();
    let got: Vec<(String, usize)> = w.iter().take(4).map(|(g, x)| (g.to_string(), *x)).collect();
    assert_eq!(
        got,
        [("p".into(), 0), ("q".into(), 0), ("p # q".into(), 1), ("q # p".into(), 0)]
    );
    assert!(nmatrix_decide(&two, &[], &f("(p#q)->(p->(q->r))")).unwrap().valid);

    let nand = builtin("nand2").unwrap();
    let g = gamma_family(2).unwrap();
    assert!(nmatrix_decide(&nand, &g.formulas, &g.goal).unwrap().valid);
}

#[test]
fn factorized_matches_plain() {
    let two = builtin("two_bI").unwrap();
    for n in 0..=2 {
        let g = gamma_family(n).unwrap();
        let run = |factorized| {
            nmatrix_decide_with(&two, &g.formulas, &g.goal, NmatrixOptions { factorized, ..Default::default() }).unwrap()
        };
        let (a, b) = (run(true), run(false));
        assert_eq!(a.valid, b.valid);
        assert_eq!(a.witness, b.witness);
    }
}

#[test]
fn gamma() {
    let g = gamma_family(1).unwrap();
    let want: Vec<Formula> = ["~(p0#q0)", "p0#q1", "~(p1#q0)", "~(p1#q1)"]
        .iter()
        .map(|s| parse(s, Signature::Bi).unwrap())
        .collect();
    assert_eq!(g.formulas, want);
    assert_eq!(gamma_family(0).unwrap().formulas.len(), 1);
    assert!(gamma_family(GAMMA_CAP + 1).is_err());
}

#[test]
fn refutations() {
    let opts = NmatrixOptions::default();
    let r = refute_characterization(&builtin("two_bI").unwrap(), opts).unwrap();
    assert_eq!(r.to_string(), "UNSOUND: Comm");
    let r = refute_characterization(&builtin("nand2").unwrap(), opts).unwrap();
    assert_eq!(r, Refutation::Overstrength { n: 2, bi_invalid: true });
    let a = builtin("two_bI").unwrap().algebra;
    assert!(Matrix::new(a.clone(), 0).is_err());
    assert!(Matrix::new(a.clone(), a.full()).is_err());
}

#[test]
fn file_round_trip() {
    for name in BUILTINS {
        let m = builtin(name).unwrap();
        let doc = MatrixDocument::from_matrix(&m);
        let text = serde_json::to_string(&doc).unwrap();
        assert_eq!(MatrixDocument::parse(&text).unwrap().to_matrix().unwrap(), m, "{name}");
    }
    let bad = r#"{"elements":["0","1"],"designated":[],"ops":{}}"#;
    assert!(MatrixDocument::parse(bad).unwrap().to_matrix().is_err());
    let empty_cell = r#"{"elements":["0","1"],"designated":["1"],"ops":{"neg":[[],["0"]]}}"#;
    assert!(MatrixDocument::parse(empty_cell).unwrap().to_matrix().is_err());
}
