use super::*;
use crate::formula::Signature;
use crate::parse::{parse, parse_list};

fn f(logic: LogicId, s: &str) -> Formula {
    parse(s, logic.signature()).unwrap()
}

fn valid(logic: LogicId, premises: &str, conclusion: &str) -> bool {
    let g = if premises.is_empty() {
        vec![]
    } else {
        parse_list(premises, logic.signature()).unwrap()
    };
    decide(logic, &g, &f(logic, conclusion)).unwrap().valid
}

#[test]
fn row_counts() {
    let rows = |s: &str| build_table(LogicId::Bi, &f(LogicId::Bi, s)).unwrap().rows.len();
    assert_eq!(rows("p#q"), 7);
    assert_eq!(rows("(p#q)&(q#p)"), 7);
    assert_eq!(rows("p#p"), 3);
    assert_eq!(rows("p"), 2);
}

#[test]
fn rows_are_lexicographic() {
    let t = build_table(LogicId::Nbi, &f(LogicId::Nbi, "!p # p")).unwrap();
    let mut sorted = t.rows.clone();
    sorted.sort();
    assert_eq!(t.rows, sorted);
}

#[test]
fn csv_export() {
    let t = build_table(LogicId::Bi, &f(LogicId::Bi, "p")).unwrap();
    assert_eq!(export_table(&t, TableFormat::Csv), "p\n0\n1\n");
    let t = build_table(LogicId::Nbi, &f(LogicId::Nbi, "!p")).unwrap();
    assert_eq!(export_table(&t, TableFormat::Csv), "p,!p\n0,1\n1,0\n1,1\n");
    let t = build_table(LogicId::Bi, &f(LogicId::Bi, "p#p")).unwrap();
    assert_eq!(export_table(&t, TableFormat::Csv).lines().count(), 4);
}

#[test]
fn json_export() {
    let t = build_table(LogicId::Bi, &f(LogicId::Bi, "p#q")).unwrap();
    let doc: TableDocument = serde_json::from_str(&export_table(&t, TableFormat::Json)).unwrap();
    assert_eq!(doc.logic, "bI");
    assert_eq!(doc.subformulas, ["p", "q", "p # q"]);
    assert_eq!(doc.rows.len(), 7);
}

#[test]
fn paraconsistent_countermodel() {
    let l = LogicId::Nbi;
    let v = decide(l, &[f(l, "p"), f(l, "!p")], &f(l, "q")).unwrap();
    let m = v.countermodel.unwrap();
    assert_eq!(m.get(&f(l, "p")), Some(true));
    assert_eq!(m.get(&f(l, "!p")), Some(true));
    assert_eq!(m.get(&f(l, "q")), Some(false));
}

#[test]
fn verdicts() {
    use LogicId::*;
    assert!(valid(Bi, "", "(p#q)->(p->(q->r))"));
    assert!(valid(Bi, "", "(p#q)->(q#p)"));
    assert!(!valid(NbIciw, "", "!(p#!p)->(p&!p)"));
    assert!(valid(NbIci, "", "(p#!p)|(p&!p)"));
    assert!(valid(NbIcl, "", "(p#!p)|(p&!p)"));
    assert!(valid(NbIcl, "", "!(p&!p)->!(!p&p)"));
    // cl then bc1 by cases on Ax10; the converse is what fails
    assert!(valid(MbCcl, "", "!(p&!p)->!(!p&p)"));
    assert!(!valid(MbCcl, "", "!(!p&p)->!(p&!p)"));
    assert!(valid(Mbc, "@p, p, !p", "q"));
    assert!(valid(Nbi, "", "(p#p)->(p->(p->q))"));
    assert!(valid(NbIci, "", "(p#!p)#!(p#!p)"));
    assert!(valid(Bi, "p, ~p", "q"));
    assert!(valid(CplSheffer, "", "((p#q)->~(p&q)) & (~(p&q)->(p#q))"));
    assert!(valid(MbCci, "", "!@p & @p -> q"));
}

#[test]
fn signature_is_checked() {
    let p = parse("@p", Signature::Lfi).unwrap();
    assert!(matches!(
        decide(LogicId::Bi, &[], &p),
        Err(SemanticError::Signature { .. })
    ));
}

#[test]
fn row_cap_is_reported() {
    let l = LogicId::Bi;
    let opts = TableOptions {
        row_cap: 3,
        ..TableOptions::default()
    };
    let err = build_table_with(l, &f(l, "p#q"), opts).unwrap_err();
    assert_eq!(err, SemanticError::RowCap { cap: 3 });
}

#[test]
fn check_row_explains() {
    let l = LogicId::Bi;
    let cols = vec![f(l, "p"), f(l, "q"), f(l, "p#q"), f(l, "q#p")];
    assert!(check_row(l, &cols, &[false, false, true, true]).is_ok());
    assert!(check_row(l, &cols, &[false, false, true, false]).is_err());
    assert!(check_row(l, &cols, &[true, true, true, true]).is_err());
    assert!(check_row(l, &cols[2..], &[true, true]).is_err());
}
