use std::path::PathBuf;
use std::process::{Command, Output};

fn root() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../..")
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_incompat"))
        .args(args)
        .current_dir(root())
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn code(o: &Output) -> i32 {
    o.status.code().unwrap()
}

fn schema(name: &str) -> jsonschema::JSONSchema {
    let path = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("schemas").join(name);
    let v: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap();
    jsonschema::JSONSchema::compile(&v).unwrap()
}

fn assert_valid(schema_name: &str, text: &str) {
    let v: serde_json::Value = serde_json::from_str(text).unwrap();
    let s = schema(schema_name);
    let msgs: Vec<String> = match s.validate(&v) {
        Ok(()) => Vec::new(),
        Err(errors) => errors.map(|e| e.to_string()).collect(),
    };
    assert!(msgs.is_empty(), "{schema_name}: {msgs:?}\n{text}");
}

#[test]
fn decide_examples() {
    let o = run(&["decide", "--logic", "nbI", "p, !p |- q", "--countermodel"]);
    assert_eq!(code(&o), 1);
    let out = stdout(&o);
    assert!(out.starts_with("invalid\n"));
    for line in ["p=1", "!p=1", "q=0"] {
        assert!(out.lines().any(|l| l == line), "{out}");
    }

    let o = run(&["decide", "--logic", "bI", "|- (p#q)->(q#p)"]);
    assert_eq!((code(&o), stdout(&o).as_str()), (0, "valid\n"));

    let o = run(&["decide", "--logic", "nbIci", "|- (p#!p)|(p&!p)", "--engine", "both"]);
    assert_eq!((code(&o), stdout(&o).as_str()), (0, "valid\nengines agree\n"));

    let o = run(&["decide", "--logic", "nbIcl", "p |- q", "--engine", "tableau", "--countermodel"]);
    assert_eq!(code(&o), 1);
    assert!(stdout(&o).contains("p=1\nq=0\n"), "{}", stdout(&o));
}

#[test]
fn exit_codes() {
    assert_eq!(code(&run(&["decide", "--logic", "bI", "p &"])), 2);
    assert_eq!(code(&run(&["decide", "--logic", "bI", "|- !p"])), 2);
    assert_eq!(code(&run(&["decide", "--logic", "nope", "|- p"])), 2);
    assert_eq!(code(&run(&["decide", "--logic", "mbC", "|- p", "--engine", "both"])), 2);
    assert_eq!(code(&run(&["frobnicate"])), 2);
    // a formula needing more rows than allowed
    assert_eq!(code(&run(&["decide", "--logic", "nbI", "|- ((p#q)&(r#s))->((q#p)&(s#r))", "--row-cap", "2"])), 3);
    assert_eq!(code(&run(&["table", "--logic", "bI", "p#q", "--row-cap", "3"])), 3);
    assert_eq!(code(&run(&["untranslate", "p # q"])), 1);
    assert_eq!(code(&run(&["check-proof", "no/such.proof"])), 2);
}

#[test]
fn json_reports_validate() {
    let o = run(&["decide", "--logic", "nbI", "p, !p |- q", "--countermodel", "--json"]);
    assert_valid("decide.schema.json", &stdout(&o));
    let o = run(&["decide", "--logic", "nbIcl", "|- p | !p", "--engine", "both", "--json"]);
    assert_valid("decide.schema.json", &stdout(&o));
    let o = run(&["table", "--logic", "nbIci", "!(p#!p)", "--format", "json"]);
    assert_valid("table.schema.json", &stdout(&o));
    let o = run(&["tableau", "--logic", "nbIcl", "|- !(p&!p) -> (p#!p)", "--json"]);
    assert_valid("tableau.schema.json", &stdout(&o));
    let o = run(&["conservativity", "--corpus", "corpus/conservativity.jsonl", "--ax", "ci", "--json"]);
    assert_eq!(code(&o), 0);
    assert_valid("conservativity.schema.json", &stdout(&o));
    let o = run(&["corpus-run", "--corpus", "corpus/conservativity.jsonl", "--json"]);
    assert_valid("corpus-run.schema.json", &stdout(&o));
    let entry = schema("corpus-entry.schema.json");
    let text = std::fs::read_to_string(root().join("corpus/conservativity.jsonl")).unwrap();
    for line in text.lines() {
        let v: serde_json::Value = serde_json::from_str(line).unwrap();
        assert!(entry.is_valid(&v), "{line}");
    }
}

#[test]
fn output_is_canonical() {
    let args = ["conservativity", "--corpus", "corpus/conservativity.jsonl", "--ax", "cl"];
    let one = Command::new(env!("CARGO_BIN_EXE_incompat"))
        .args(args)
        .current_dir(root())
        .env("THREADS", "1")
        .output()
        .unwrap();
    let many = Command::new(env!("CARGO_BIN_EXE_incompat"))
        .args(args)
        .current_dir(root())
        .env("THREADS", "8")
        .output()
        .unwrap();
    assert_eq!(one.stdout, many.stdout);
    assert_eq!(run(&args).stdout, run(&args).stdout);
    let s = ["sample", "--logic", "nbIci", "--seed", "5", "--count", "20"];
    assert_eq!(run(&s).stdout, run(&s).stdout);
}

#[test]
fn matrix_commands() {
    let o = run(&["matrix", "congruences", "--builtin", "L"]);
    assert_eq!(stdout(&o), "Delta, Nabla\n");
    let o = run(&["matrix", "congruences", "--builtin", "Lplus"]);
    assert_eq!(stdout(&o), "Delta, Nabla\n");
    let o = run(&["matrix", "leibniz", "--builtin", "L", "--filter", "u,1,a"]);
    assert_eq!(stdout(&o), "Delta\n");
    let o = run(&["matrix", "refute", "--builtin", "two_bI"]);
    assert!(stdout(&o).starts_with("UNSOUND: Comm\n"));
    let o = run(&["matrix", "refute", "--builtin", "nand2"]);
    assert!(stdout(&o).starts_with("OVERSTRONG: Gamma_2 |= p0\n"));
    let o = run(&["matrix", "gamma", "--n", "2", "--decide"]);
    assert_eq!(code(&o), 1);
    assert!(stdout(&o).ends_with("bI: invalid\n"));
    let o = run(&["matrix", "check-model", "--builtin", "Lplus", "--logic", "nbIcl"]);
    assert_eq!(code(&o), 0, "{}", stdout(&o));
    let o = run(&["matrix", "check-model", "--builtin", "L", "--logic", "bI", "--filter", "u,1,b"]);
    assert_eq!(stdout(&o), "filter\n");
    let o = run(&["matrix", "refute", "--file", "matrices/three_valued.json"]);
    assert!(stdout(&o).starts_with("UNSOUND: Comm\n"), "{}", String::from_utf8_lossy(&o.stderr));
}

#[test]
fn conservativity_examples() {
    let dir = std::env::temp_dir().join(format!("incompat-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("c.jsonl");
    std::fs::write(
        &path,
        concat!(
            r#"{"logic":"mbC","premises":["@p","p","!p"],"conclusion":"q","expected":"valid"}"#,
            "\n",
            r#"{"logic":"mbC","premises":["p","!p"],"conclusion":"q","expected":"invalid"}"#,
            "\n",
            r#"{"logic":"mbCcl","premises":[],"conclusion":"!(p&!p)->@p","expected":"valid"}"#,
            "\n"
        ),
    )
    .unwrap();
    let p = path.to_str().unwrap();
    let o = run(&["conservativity", "--corpus", p, "--json"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    let pairs: Vec<(bool, bool)> = v["entries"]
        .as_array()
        .unwrap()
        .iter()
        .map(|e| (e["source_valid"].as_bool().unwrap(), e["target_valid"].as_bool().unwrap()))
        .collect();
    assert_eq!(pairs[..2], [(true, true), (false, false)]);
    let o = run(&["conservativity", "--corpus", p, "--ax", "cl", "--json"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["entries"][2]["source_valid"], true);
    assert_eq!(v["entries"][2]["target_valid"], true);
    let _ = std::fs::remove_dir_all(dir);
}

#[test]
fn shipped_proofs_check() {
    for entry in std::fs::read_dir(root().join("proofs")).unwrap() {
        let path = entry.unwrap().path();
        let o = run(&["check-proof", path.to_str().unwrap()]);
        assert_eq!(code(&o), 0, "{}: {}", path.display(), stdout(&o));
    }
}

#[test]
fn translation_commands() {
    assert_eq!(stdout(&run(&["translate", "@p -> !@q"])), "p # !p -> !(q # !q)\n");
    assert_eq!(stdout(&run(&["untranslate", "p # !p -> !(q # !q)"])), "@p -> !@q\n");
}
