use incompat_cli::{conservativity, read_corpus, Expected};
use incompat_core::LogicId;

#[test]
fn skips_comments_and_blank_lines() {
    let text = "// header\n\n{\"logic\":\"mbC\",\"conclusion\":\"@p -> @p\",\"expected\":\"valid\"}\n";
    let c = read_corpus(text).unwrap();
    assert_eq!(c.len(), 1);
    assert_eq!(c[0].line, 3);
    assert_eq!(c[0].expected, Expected::Valid);
    assert!(c[0].premises.is_empty());
}

#[test]
fn errors_carry_the_line() {
    let bad_logic = "{\"logic\":\"mbC\",\"conclusion\":\"p\"}\n{\"logic\":\"S5\",\"conclusion\":\"p\"}";
    assert_eq!(read_corpus(bad_logic).unwrap_err().line, 2);
    // `#` is outside the consistency signature
    let bad_formula = "{\"logic\":\"mbC\",\"conclusion\":\"p # q\"}";
    assert_eq!(read_corpus(bad_formula).unwrap_err().line, 1);
    assert_eq!(read_corpus("{").unwrap_err().line, 1);
}

#[test]
fn expected_defaults_to_unspecified() {
    let c = read_corpus("{\"logic\":\"mbCci\",\"premises\":[\"p\"],\"conclusion\":\"p\"}").unwrap();
    assert_eq!(c[0].expected, Expected::Unspecified);
    assert!(c[0].expected.admits(true) && c[0].expected.admits(false));
    assert!(!Expected::Valid.admits(false));
}

#[test]
fn conservativity_reports_lines() {
    let text = "{\"logic\":\"mbC\",\"premises\":[\"p\",\"!p\"],\"conclusion\":\"q\"}\n\n{\"logic\":\"mbC\",\"premises\":[\"@p\",\"p\",\"!p\"],\"conclusion\":\"q\"}";
    let r = conservativity(&read_corpus(text).unwrap(), LogicId::Mbc).unwrap();
    assert_eq!((r.source.as_str(), r.target.as_str()), ("mbC", "nbI"));
    let lines: Vec<(usize, bool, bool)> = r.entries.iter().map(|e| (e.line, e.source_valid, e.target_valid)).collect();
    assert_eq!(lines, [(1, false, false), (3, true, true)]);
    assert!(r.mismatches.is_empty());
}
