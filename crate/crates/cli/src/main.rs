use std::fmt::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use serde::Serialize;
use serde_json::json;

use incompat_cli::{configure_threads, conservativity, exit, read_corpus, sequent_text, CorpusEntry, Expected, Parsed};
use incompat_core::generate::Generator;
use incompat_core::hilbert::{check_proof, parse_script, presentation};
use incompat_core::matrix::{
    builtin, congruences, gamma_family, is_filter, leibniz, refute_characterization, schema_valid, subset, Matrix,
    MatrixDocument, NmatrixOptions, Refutation, BUILTINS,
};
use incompat_core::semantics::{build_table_with, decide_with, Assignment, ErasureMode, SemanticError, TableOptions};
use incompat_core::tableau::{derive, Outcome, TreeFormat};
use incompat_core::{export_table, invert, parse, parse_sequent, translate, Formula, LogicId, Signature, TableFormat};

/// Decision procedures for the logics of formal incompatibility and the
/// mbC family.
///
/// Exit codes: 0 valid / success, 1 invalid / check failed, 2 usage or
/// input error, 3 resource limit, 4 engines disagree.
#[derive(Parser)]
#[command(name = "incompat", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Decide a sequent `G1, G2 |- f`.
    Decide(DecideArgs),
    /// Print the truth table of a formula.
    Table(TableArgs),
    /// Print the complete tableau of a sequent.
    Tableau(TableauArgs),
    /// Translate an LFI formula, replacing `@a` by `a # !a`.
    Translate { formula: String },
    /// Invert the translation, failing outside its image.
    Untranslate { formula: String },
    /// Finite matrices and Nmatrices.
    #[command(subcommand)]
    Matrix(MatrixCommand),
    /// Compare mbC-family verdicts with those of the translated sequents.
    Conservativity(ConservativityArgs),
    /// Decide every corpus entry and compare with its expectation.
    CorpusRun(CorpusRunArgs),
    /// Check a Hilbert proof script and confirm its conclusion semantically.
    CheckProof(CheckProofArgs),
    /// Emit seeded random corpus entries, labelled by the table engine.
    Sample(SampleArgs),
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Engine {
    Table,
    Tableau,
    Both,
}

#[derive(Args)]
struct DecideArgs {
    #[arg(long)]
    logic: LogicId,
    /// `G1, G2 |- f`; `|- f` or plain `f` for no premises.
    sequent: String,
    #[arg(long, value_enum, default_value = "table")]
    engine: Engine,
    /// Print a falsifying assignment when invalid.
    #[arg(long)]
    countermodel: bool,
    #[arg(long)]
    json: bool,
    /// Maximum number of table rows visited.
    #[arg(long)]
    row_cap: Option<u64>,
}

#[derive(Clone, Copy, ValueEnum)]
enum TableOutput {
    Text,
    Csv,
    Json,
}

#[derive(Args)]
struct TableArgs {
    #[arg(long)]
    logic: LogicId,
    formula: String,
    #[arg(long, value_enum, default_value = "text")]
    format: TableOutput,
    /// Erase rows after completion instead of as soon as possible.
    #[arg(long)]
    post_hoc: bool,
    #[arg(long)]
    row_cap: Option<u64>,
}

#[derive(Args)]
struct TableauArgs {
    #[arg(long)]
    logic: LogicId,
    sequent: String,
    #[arg(long)]
    json: bool,
    #[arg(long)]
    countermodel: bool,
}

#[derive(Args)]
struct Source {
    /// One of L, Lplus, two_bI, two_nbI, nand2.
    #[arg(long, group = "source")]
    builtin: Option<String>,
    /// A matrix description file.
    #[arg(long, alias = "nmatrix", group = "source")]
    file: Option<PathBuf>,
    /// Override the designated set, as comma-separated element names.
    #[arg(long)]
    designated: Option<String>,
}

#[derive(Subcommand)]
enum MatrixCommand {
    /// Check every axiom and Modus Ponens, or with --filter whether a set is
    /// a logic filter.
    CheckModel {
        #[command(flatten)]
        source: Source,
        #[arg(long)]
        logic: LogicId,
        #[arg(long)]
        filter: Option<String>,
    },
    /// List the congruences of the algebra.
    Congruences {
        #[command(flatten)]
        source: Source,
    },
    /// The largest congruence compatible with a set.
    Leibniz {
        #[command(flatten)]
        source: Source,
        #[arg(long)]
        filter: String,
    },
    /// Try to show that the structure does not characterize bI.
    Refute {
        #[command(flatten)]
        source: Source,
        #[arg(long)]
        unfactorized: bool,
    },
    /// Print the witness family, optionally deciding it in bI.
    Gamma {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        decide: bool,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Ax {
    None,
    Ciw,
    Ci,
    Cl,
}

#[derive(Args)]
struct ConservativityArgs {
    #[arg(long)]
    corpus: PathBuf,
    #[arg(long, value_enum, default_value = "none")]
    ax: Ax,
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct CorpusRunArgs {
    #[arg(long)]
    corpus: PathBuf,
    #[arg(long, value_enum, default_value = "table")]
    engine: Engine,
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct CheckProofArgs {
    file: PathBuf,
    /// Logic to check against when the script names none.
    #[arg(long)]
    logic: Option<LogicId>,
}

#[derive(Args)]
struct SampleArgs {
    #[arg(long)]
    logic: LogicId,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = 10)]
    count: usize,
    #[arg(long, default_value_t = 3)]
    atoms: usize,
    #[arg(long, default_value_t = 6)]
    complexity: usize,
    #[arg(long, default_value_t = 2)]
    premises: usize,
    /// Keep only entries with this verdict.
    #[arg(long, value_enum)]
    only: Option<Verdictish>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Verdictish {
    Valid,
    Invalid,
}

/// A failure carrying its exit code.
struct Failure {
    code: i32,
    message: String,
}

type Run = Result<i32, Failure>;

fn usage(message: impl std::fmt::Display) -> Failure {
    Failure {
        code: exit::USAGE,
        message: message.to_string(),
    }
}

fn semantic(e: SemanticError) -> Failure {
    let code = match e {
        SemanticError::RowCap { .. } => exit::RESOURCE,
        SemanticError::Signature { .. } => exit::USAGE,
    };
    Failure {
        code,
        message: e.to_string(),
    }
}

fn read(path: &PathBuf) -> Result<String, Failure> {
    std::fs::read_to_string(path).map_err(|e| usage(format!("{}: {e}", path.display())))
}

fn verdict_code(valid: bool) -> i32 {
    if valid {
        exit::VALID
    } else {
        exit::INVALID
    }
}

fn word(valid: bool) -> &'static str {
    if valid {
        "valid"
    } else {
        "invalid"
    }
}

fn options(row_cap: Option<u64>) -> TableOptions {
    let mut o = TableOptions::default();
    if let Some(c) = row_cap {
        o.row_cap = c;
    }
    o
}

fn assignment_json(a: &Assignment) -> serde_json::Value {
    a.entries
        .iter()
        .map(|(f, v)| json!({"formula": f.to_string(), "value": *v as u8}))
        .collect()
}

/// Verdict of one engine, with a countermodel when invalid.
struct EngineVerdict {
    valid: bool,
    countermodel: Option<Assignment>,
}

fn run_table(logic: LogicId, premises: &[Formula], conclusion: &Formula, row_cap: Option<u64>) -> Result<EngineVerdict, Failure> {
    let v = decide_with(logic, premises, conclusion, options(row_cap)).map_err(semantic)?;
    Ok(EngineVerdict {
        valid: v.valid,
        countermodel: v.countermodel,
    })
}

fn run_tableau(logic: LogicId, premises: &[Formula], conclusion: &Formula) -> Result<EngineVerdict, Failure> {
    let t = derive(logic, premises, conclusion).map_err(usage)?;
    let countermodel = match t.countermodel() {
        None => None,
        Some(Ok(a)) => Some(a),
        Some(Err(d)) => {
            return Err(Failure {
                code: exit::DISAGREEMENT,
                message: format!(
                    "DISCREPANCY: no open branch of the tableau for {} gives an admissible row: {:?}",
                    d.root, d.failures
                ),
            })
        }
    };
    Ok(EngineVerdict {
        valid: t.is_closed(),
        countermodel,
    })
}

fn sequent(logic: LogicId, text: &str) -> Result<(Vec<Formula>, Formula), Failure> {
    let s = parse_sequent(text, logic.signature()).map_err(usage)?;
    Ok((s.premises, s.conclusion))
}

fn cmd_decide(a: DecideArgs) -> Run {
    let (premises, conclusion) = sequent(a.logic, &a.sequent)?;
    if a.engine != Engine::Table && !a.logic.has_tableaux() {
        return Err(usage(format!("{} has no tableau calculus", a.logic)));
    }
    let (v, other) = match a.engine {
        Engine::Table => (run_table(a.logic, &premises, &conclusion, a.row_cap)?, None),
        Engine::Tableau => (run_tableau(a.logic, &premises, &conclusion)?, None),
        Engine::Both => {
            let t = run_table(a.logic, &premises, &conclusion, a.row_cap)?;
            let u = run_tableau(a.logic, &premises, &conclusion)?;
            let agree = t.valid == u.valid;
            (t, Some((u, agree)))
        }
    };
    let text = sequent_text(&premises, &conclusion);
    if let Some((u, false)) = &other {
        return Err(Failure {
            code: exit::DISAGREEMENT,
            message: format!(
                "DISAGREEMENT in {} on {text}: table says {}, tableau says {}",
                a.logic,
                word(v.valid),
                word(u.valid)
            ),
        });
    }
    if a.json {
        let mut doc = json!({
            "logic": a.logic.name(),
            "sequent": text,
            "engine": match a.engine { Engine::Table => "table", Engine::Tableau => "tableau", Engine::Both => "both" },
            "valid": v.valid,
            "countermodel": if a.countermodel { v.countermodel.as_ref().map(assignment_json) } else { None },
        });
        if other.is_some() {
            doc["engines_agree"] = json!(true);
        }
        println!("{}", serde_json::to_string_pretty(&doc).expect("json"));
    } else {
        println!("{}", word(v.valid));
        if other.is_some() {
            println!("engines agree");
        }
        if a.countermodel {
            if let Some(m) = &v.countermodel {
                print!("{m}");
            }
        }
    }
    Ok(verdict_code(v.valid))
}

fn cmd_table(a: TableArgs) -> Run {
    let f = parse(&a.formula, a.logic.signature()).map_err(usage)?;
    let mut o = options(a.row_cap);
    if a.post_hoc {
        o.mode = ErasureMode::PostHoc;
    }
    let t = build_table_with(a.logic, &f, o).map_err(semantic)?;
    match a.format {
        TableOutput::Csv => print!("{}", export_table(&t, TableFormat::Csv)),
        TableOutput::Json => print!("{}", export_table(&t, TableFormat::Json)),
        TableOutput::Text => {
            let heads: Vec<String> = t.columns.iter().map(|c| c.to_string()).collect();
            let mut out = heads.join(" | ");
            out.push('\n');
            for r in &t.rows {
                let cells: Vec<String> = r
                    .0
                    .iter()
                    .zip(&heads)
                    .map(|(&v, h)| format!("{:<w$}", v as u8, w = h.chars().count()))
                    .collect();
                let _ = writeln!(out, "{}", cells.join(" | ").trim_end());
            }
            let _ = writeln!(out, "{} rows", t.rows.len());
            print!("{out}");
        }
    }
    Ok(exit::VALID)
}

fn cmd_tableau(a: TableauArgs) -> Run {
    let (premises, conclusion) = sequent(a.logic, &a.sequent)?;
    let t = derive(a.logic, &premises, &conclusion).map_err(usage)?;
    if a.json {
        print!("{}", t.render(TreeFormat::Json));
    } else {
        print!("{}", t.render(TreeFormat::Text));
        match t.outcome {
            Outcome::Closed => println!("closed"),
            Outcome::Open { leaf } => println!("open at node {leaf}"),
        }
    }
    if a.countermodel {
        match t.countermodel() {
            Some(Ok(m)) => print!("{m}"),
            Some(Err(d)) => {
                return Err(Failure {
                    code: exit::DISAGREEMENT,
                    message: format!("DISCREPANCY: {:?}", d.failures),
                })
            }
            None => {}
        }
    }
    Ok(verdict_code(t.is_closed()))
}

fn load(source: &Source) -> Result<Matrix, Failure> {
    let mut m = match (&source.builtin, &source.file) {
        (Some(name), None) => builtin(name)
            .ok_or_else(|| usage(format!("unknown builtin `{name}`; choose one of {}", BUILTINS.join(", "))))?,
        (None, Some(path)) => {
            let doc = MatrixDocument::parse(&read(path)?).map_err(usage)?;
            doc.to_matrix().map_err(usage)?
        }
        _ => return Err(usage("give exactly one of --builtin or --file")),
    };
    if let Some(d) = &source.designated {
        let set = names_to_set(&m, d)?;
        m = Matrix::new(m.algebra, set).map_err(usage)?;
    }
    Ok(m)
}

fn names_to_set(m: &Matrix, list: &str) -> Result<u64, Failure> {
    let names: Vec<&str> = list.split(',').map(str::trim).filter(|s| !s.is_empty()).collect();
    subset(&m.algebra, &names).map_err(usage)
}

fn cmd_matrix(c: MatrixCommand) -> Run {
    match c {
        MatrixCommand::CheckModel { source, logic, filter } => {
            let m = load(&source)?;
            let lp = presentation(logic);
            if let Some(list) = filter {
                let set = names_to_set(&m, &list)?;
                let ok = is_filter(&m.algebra, &lp, set).map_err(usage)?;
                println!("{}", if ok { "filter" } else { "not a filter" });
                return Ok(verdict_code(ok));
            }
            let mut all = true;
            for s in &lp.schemas {
                let ok = schema_valid(&m, s).map_err(usage)?;
                all &= ok;
                println!("{} {}", s.name, if ok { "valid" } else { "INVALID" });
            }
            let imp = incompat_core::Connective::Bin(incompat_core::BinOp::Imp);
            let n = m.algebra.len();
            let mut mp = true;
            for x in 0..n {
                for y in 0..n {
                    let cell = m.algebra.cell(imp, &[x, y]).map_err(usage)?;
                    if m.is_designated(x) && !m.is_designated(y) && cell & m.designated != 0 {
                        mp = false;
                    }
                }
            }
            println!("MP {}", if mp { "sound" } else { "UNSOUND" });
            Ok(verdict_code(all && mp))
        }
        MatrixCommand::Congruences { source } => {
            let m = load(&source)?;
            let mut cs = congruences(&m.algebra).map_err(usage)?;
            cs.sort_by_key(|c| std::cmp::Reverse(c.blocks.len()));
            let names: Vec<String> = cs.iter().map(|c| c.describe(&m.algebra)).collect();
            println!("{}", names.join(", "));
            Ok(exit::VALID)
        }
        MatrixCommand::Leibniz { source, filter } => {
            let m = load(&source)?;
            let set = names_to_set(&m, &filter)?;
            let c = leibniz(&m.algebra, set).map_err(usage)?;
            println!("{}", c.describe(&m.algebra));
            Ok(exit::VALID)
        }
        MatrixCommand::Refute { source, unfactorized } => {
            let m = load(&source)?;
            let o = NmatrixOptions {
                factorized: !unfactorized,
                ..NmatrixOptions::default()
            };
            let r = refute_characterization(&m, o).map_err(usage)?;
            println!("{r}");
            match &r {
                Refutation::UnsoundSchema { instance, witness, .. } => {
                    println!("instance: {instance}");
                    for (f, v) in witness {
                        println!("  {f} = {}", m.algebra.elements[*v]);
                    }
                }
                Refutation::UnsoundRule { x, y } => {
                    println!("x = {}, y = {}", m.algebra.elements[*x], m.algebra.elements[*y]);
                }
                Refutation::Overstrength { bi_invalid, .. } => {
                    println!("bI: {}", word(!bi_invalid));
                }
                Refutation::Inconclusive { .. } => return Ok(exit::INVALID),
            }
            Ok(exit::VALID)
        }
        MatrixCommand::Gamma { n, decide: run } => {
            let fam = gamma_family(n).map_err(usage)?;
            for f in &fam.formulas {
                println!("{f}");
            }
            println!("|- {}", fam.goal);
            if run {
                let v = decide_with(LogicId::Bi, &fam.formulas, &fam.goal, TableOptions::default()).map_err(semantic)?;
                println!("bI: {}", word(v.valid));
                return Ok(verdict_code(v.valid));
            }
            Ok(exit::VALID)
        }
    }
}

fn corpus(path: &PathBuf) -> Result<Vec<Parsed>, Failure> {
    read_corpus(&read(path)?).map_err(usage)
}

fn cmd_conservativity(a: ConservativityArgs) -> Run {
    let source = match a.ax {
        Ax::None => LogicId::Mbc,
        Ax::Ciw => LogicId::MbCciw,
        Ax::Ci => LogicId::MbCci,
        Ax::Cl => LogicId::MbCcl,
    };
    let entries = corpus(&a.corpus)?;
    if let Some(e) = entries.iter().find(|e| !e.logic.is_mbc_family()) {
        return Err(usage(format!("corpus line {}: {} is not an mbC-family logic", e.line, e.logic)));
    }
    let report = conservativity(&entries, source).map_err(semantic)?;
    if a.json {
        println!("{}", serde_json::to_string_pretty(&report).expect("json"));
    } else {
        for r in &report.entries {
            println!(
                "{:>4}  {}:{:<7}  {}:{:<7}  {}",
                r.line,
                report.source,
                word(r.source_valid),
                report.target,
                word(r.target_valid),
                r.sequent
            );
        }
        println!(
            "{} entries, {} mismatches ({} vs {})",
            report.entries.len(),
            report.mismatches.len(),
            report.source,
            report.target
        );
    }
    Ok(verdict_code(report.mismatches.is_empty()))
}

#[derive(Serialize)]
struct RunRow {
    line: usize,
    logic: &'static str,
    sequent: String,
    expected: Expected,
    valid: bool,
    ok: bool,
}

fn cmd_corpus_run(a: CorpusRunArgs) -> Run {
    let entries = corpus(&a.corpus)?;
    if a.engine != Engine::Table {
        if let Some(e) = entries.iter().find(|e| !e.logic.has_tableaux()) {
            return Err(usage(format!("corpus line {}: {} has no tableau calculus", e.line, e.logic)));
        }
    }
    let rows: Vec<RunRow> = entries
        .par_iter()
        .map(|e| {
            let valid = match a.engine {
                Engine::Table => run_table(e.logic, &e.premises, &e.conclusion, None)?.valid,
                Engine::Tableau => run_tableau(e.logic, &e.premises, &e.conclusion)?.valid,
                Engine::Both => {
                    let t = run_table(e.logic, &e.premises, &e.conclusion, None)?.valid;
                    let u = run_tableau(e.logic, &e.premises, &e.conclusion)?.valid;
                    if t != u {
                        return Err(Failure {
                            code: exit::DISAGREEMENT,
                            message: format!(
                                "DISAGREEMENT at corpus line {} in {}: table says {}, tableau says {}",
                                e.line,
                                e.logic,
                                word(t),
                                word(u)
                            ),
                        });
                    }
                    t
                }
            };
            Ok(RunRow {
                line: e.line,
                logic: e.logic.name(),
                sequent: sequent_text(&e.premises, &e.conclusion),
                expected: e.expected,
                valid,
                ok: e.expected.admits(valid),
            })
        })
        .collect::<Result<_, Failure>>()?;
    let failed = rows.iter().filter(|r| !r.ok).count();
    if a.json {
        println!("{}", serde_json::to_string_pretty(&json!({"entries": rows, "failed": failed})).expect("json"));
    } else {
        for r in &rows {
            println!(
                "{:>4}  {:<9} {:<7} {}{}",
                r.line,
                r.logic,
                word(r.valid),
                r.sequent,
                if r.ok { "" } else { "  [UNEXPECTED]" }
            );
        }
        println!("{} entries, {} unexpected", rows.len(), failed);
    }
    Ok(verdict_code(failed == 0))
}

fn cmd_check_proof(a: CheckProofArgs) -> Run {
    let text = read(&a.file)?;
    let default = a.logic.map(LogicId::signature).unwrap_or(Signature::Nbi);
    let proof = parse_script(&text, default).map_err(usage)?;
    let logic = match (proof.logic, a.logic) {
        (Some(s), Some(f)) if s != f => {
            return Err(usage(format!("the script is for {s}, not {f}")));
        }
        (Some(l), _) | (None, Some(l)) => l,
        (None, None) => return Err(usage("the script names no logic; pass --logic")),
    };
    let lp = presentation(logic);
    if let Err(r) = check_proof(&lp, &proof) {
        println!("rejected: {r}");
        return Ok(exit::INVALID);
    }
    let conclusion = proof.conclusion().expect("accepted proofs are nonempty");
    println!("accepted in {logic}: {}", sequent_text(&proof.premises, conclusion));
    let v = decide_with(logic, &proof.premises, conclusion, TableOptions::default()).map_err(semantic)?;
    println!("semantically {}", word(v.valid));
    if !v.valid {
        return Err(Failure {
            code: exit::DISAGREEMENT,
            message: format!("DISAGREEMENT: the proof is accepted but the table finds the sequent invalid in {logic}"),
        });
    }
    Ok(exit::VALID)
}

fn cmd_sample(a: SampleArgs) -> Run {
    let mut g = Generator::new(a.seed, a.logic.signature(), a.atoms, a.complexity);
    let mut emitted = 0;
    let mut tries = 0usize;
    while emitted < a.count {
        tries += 1;
        if tries > a.count.saturating_mul(1000).max(1000) {
            return Err(usage("could not find enough entries with the requested verdict"));
        }
        let (premises, conclusion) = g.sequent(a.premises);
        let valid = decide_with(a.logic, &premises, &conclusion, TableOptions::default())
            .map_err(semantic)?
            .valid;
        if a.only.is_some_and(|o| (o == Verdictish::Valid) != valid) {
            continue;
        }
        let e = CorpusEntry {
            logic: a.logic.name().into(),
            premises: premises.iter().map(|p| p.to_string()).collect(),
            conclusion: conclusion.to_string(),
            expected: Expected::from_verdict(valid),
            note: Some(format!("sample seed {} #{}", a.seed, emitted)),
        };
        println!("{}", serde_json::to_string(&e).expect("json"));
        emitted += 1;
    }
    Ok(exit::VALID)
}

fn main() -> ExitCode {
    // die quietly when piped into `head`
    #[cfg(unix)]
    unsafe {
        libc::signal(libc::SIGPIPE, libc::SIG_DFL);
    }
    configure_threads();
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            let code = if e.use_stderr() { exit::USAGE } else { exit::VALID };
            return ExitCode::from(code as u8);
        }
    };
    let r = match cli.command {
        Command::Decide(a) => cmd_decide(a),
        Command::Table(a) => cmd_table(a),
        Command::Tableau(a) => cmd_tableau(a),
        Command::Translate { formula } => parse(&formula, Signature::Lfi)
            .map_err(usage)
            .map(|f| {
                println!("{}", translate(&f));
                exit::VALID
            }),
        Command::Untranslate { formula } => parse(&formula, Signature::Nbi).map_err(usage).map(|f| match invert(&f) {
            Some(g) => {
                println!("{g}");
                exit::VALID
            }
            None => {
                println!("not in the image of the translation");
                exit::INVALID
            }
        }),
        Command::Matrix(c) => cmd_matrix(c),
        Command::Conservativity(a) => cmd_conservativity(a),
        Command::CorpusRun(a) => cmd_corpus_run(a),
        Command::CheckProof(a) => cmd_check_proof(a),
        Command::Sample(a) => cmd_sample(a),
    };
    match r {
        Ok(code) => ExitCode::from(code as u8),
        Err(f) => {
            eprintln!("{}", f.message);
            ExitCode::from(f.code as u8)
        }
    }
}
