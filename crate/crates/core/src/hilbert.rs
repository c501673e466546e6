//! Axiom schemas, per-logic presentations and a checker for Hilbert proofs
//! with Modus Ponens as the only rule.
//!
//! Schema templates are formulas over the metavariables `α`, `β`, `γ`,
//! which can never be object atoms (those are lowercase ASCII).
//!
//! Proof scripts are line oriented:
//!
//! ```text
//! logic mbC                    ; optional, names the logic
//! premise @p
//! axiom bc1 @p -> (p -> (!p -> q))
//! mp 1 2 p -> (!p -> q)        ; line 2 is line 1 -> this line
//! ```

use std::collections::BTreeMap;
use std::fmt;
use std::sync::OnceLock;

use thiserror::Error;

use crate::formula::{Formula, Signature, Substitution};
use crate::logic::LogicId;
use crate::parse::{parse, ParseError};

pub const METAVARIABLES: [&str; 3] = ["α", "β", "γ"];

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Schema {
    pub name: &'static str,
    pub template: Formula,
    /// Smallest signature the template lives in.
    pub signature: Signature,
}

impl fmt::Display for Schema {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}", self.name, self.template)
    }
}

// name, template over a/b/c, signature
const SOURCES: &[(&str, &str, Signature)] = &[
    ("Ax1", "a -> (b -> a)", Signature::Bi),
    ("Ax2", "(a -> (b -> c)) -> ((a -> b) -> (a -> c))", Signature::Bi),
    ("Ax3", "a -> (b -> (a & b))", Signature::Bi),
    ("Ax4", "(a & b) -> a", Signature::Bi),
    ("Ax5", "(a & b) -> b", Signature::Bi),
    ("Ax6", "a -> (a | b)", Signature::Bi),
    ("Ax7", "b -> (a | b)", Signature::Bi),
    ("Ax8", "(a -> c) -> ((b -> c) -> ((a | b) -> c))", Signature::Bi),
    ("Ax9", "(a -> b) | a", Signature::Bi),
    ("Ax10", "a | !a", Signature::Lfi),
    ("bc1", "@a -> (a -> (!a -> b))", Signature::Lfi),
    ("ciw", "@a | (a & !a)", Signature::Lfi),
    ("ci", "!@a -> (a & !a)", Signature::Lfi),
    ("cl", "!(a & !a) -> @a", Signature::Lfi),
    ("Ip", "(a # b) -> (a -> (b -> c))", Signature::Bi),
    ("Comm", "(a # b) -> (b # a)", Signature::Bi),
    ("Ex", "((a & b) -> bot(a, b)) -> (a # b)", Signature::Bi),
    ("ciw#", "(a # b) | (a & b)", Signature::Bi),
    ("Ax11", "a | !a", Signature::Nbi),
    ("ci#", "!(a # b) -> (a & b)", Signature::Nbi),
    ("cl#", "!(a & b) -> (a # b)", Signature::Nbi),
    ("ciw*", "(a # !a) | (a & !a)", Signature::Nbi),
    ("ci*", "!(a # !a) -> (a & !a)", Signature::Nbi),
    ("cl*", "!(a & !a) -> (a # !a)", Signature::Nbi),
    ("cc*", "(a # !a) # !(a # !a)", Signature::Nbi),
];

fn build_registry() -> Vec<Schema> {
    let mut meta = Substitution::new();
    for (obj, m) in ["a", "b", "c"].iter().zip(METAVARIABLES) {
        meta.insert(obj.to_string(), Formula::var(m));
    }
    SOURCES
        .iter()
        .map(|&(name, text, signature)| {
            let parsed = parse(text, signature).unwrap_or_else(|e| panic!("schema {name}: {e}"));
            Schema {
                name,
                template: parsed.substitute(&meta),
                signature,
            }
        })
        .collect()
}

/// Every schema, in a fixed order.
pub fn registry() -> &'static [Schema] {
    static REGISTRY: OnceLock<Vec<Schema>> = OnceLock::new();
    REGISTRY.get_or_init(build_registry)
}

pub fn schema(name: &str) -> Option<&'static Schema> {
    registry().iter().find(|s| s.name == name)
}

/// A logic's axiom schemas; Modus Ponens is the only rule.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Presentation {
    pub logic: LogicId,
    pub schemas: Vec<&'static Schema>,
}

pub fn presentation(logic: LogicId) -> Presentation {
    let positive = ["Ax1", "Ax2", "Ax3", "Ax4", "Ax5", "Ax6", "Ax7", "Ax8", "Ax9"];
    let mut names: Vec<&str> = positive.to_vec();
    let bi = ["Ip", "Comm"];
    match logic {
        LogicId::Mbc | LogicId::MbCciw | LogicId::MbCci | LogicId::MbCcl => {
            names.extend(["Ax10", "bc1"]);
            match logic {
                LogicId::MbCciw => names.push("ciw"),
                LogicId::MbCci => names.push("ci"),
                LogicId::MbCcl => names.push("cl"),
                _ => {}
            }
        }
        LogicId::Bi => names.extend(bi),
        LogicId::CplSheffer => names.extend(["Ip", "Comm", "Ex"]),
        LogicId::Nbi | LogicId::NbIciw | LogicId::NbIci | LogicId::NbIcl | LogicId::NbiSheffer => {
            names.extend(["Ip", "Comm", "Ax11"]);
            match logic {
                LogicId::NbIciw => names.push("ciw*"),
                LogicId::NbIci => names.push("ci*"),
                LogicId::NbIcl => names.push("cl*"),
                LogicId::NbiSheffer => names.push("Ex"),
                _ => {}
            }
        }
    }
    Presentation {
        logic,
        schemas: names
            .into_iter()
            .map(|n| schema(n).expect("presentations name registered schemas"))
            .collect(),
    }
}

impl Presentation {
    pub fn get(&self, name: &str) -> Option<&'static Schema> {
        self.schemas.iter().copied().find(|s| s.name == name)
    }
}

/// The unique substitution of the metavariables turning the template into
/// `f`, if there is one.
pub fn match_schema(s: &Schema, f: &Formula) -> Option<Substitution> {
    let mut out = BTreeMap::new();
    unify(&s.template, f, &mut out).then_some(out)
}

fn unify(t: &Formula, f: &Formula, s: &mut Substitution) -> bool {
    match (t, f) {
        (Formula::Var(m), _) if METAVARIABLES.contains(&m.as_str()) => match s.get(m) {
            Some(bound) => bound == f,
            None => {
                s.insert(m.clone(), f.clone());
                true
            }
        },
        (Formula::Var(a), Formula::Var(b)) => a == b,
        (Formula::Binary(o1, l1, r1), Formula::Binary(o2, l2, r2)) => {
            o1 == o2 && unify(l1, l2, s) && unify(r1, r2, s)
        }
        (Formula::Unary(o1, c1), Formula::Unary(o2, c2)) => o1 == o2 && unify(c1, c2, s),
        _ => false,
    }
}

/// Names of the schemas of `lp` that `f` instantiates.
pub fn axiom_instances(lp: &Presentation, f: &Formula) -> Vec<&'static str> {
    lp.schemas
        .iter()
        .filter(|s| match_schema(s, f).is_some())
        .map(|s| s.name)
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Justification {
    Premise,
    Axiom(String),
    /// 1-based lines `minor` and `major`, where `major` is `minor -> this`.
    Mp(usize, usize),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Line {
    pub formula: Formula,
    pub justification: Justification,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Proof {
    /// Logic named by the script, if any.
    pub logic: Option<LogicId>,
    pub premises: Vec<Formula>,
    pub lines: Vec<Line>,
}

impl Proof {
    pub fn conclusion(&self) -> Option<&Formula> {
        self.lines.last().map(|l| &l.formula)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
#[error("line {line}: {reason}")]
pub struct Rejection {
    /// 1-based.
    pub line: usize,
    pub reason: String,
}

pub fn check_proof(lp: &Presentation, pr: &Proof) -> Result<(), Rejection> {
    let sig = lp.logic.signature();
    let reject = |line: usize, reason: String| Err(Rejection { line, reason });
    if pr.lines.is_empty() {
        return reject(0, "empty proof".into());
    }
    for (k, line) in pr.lines.iter().enumerate() {
        let n = k + 1;
        if let Some(c) = line.formula.first_outside(sig) {
            return reject(n, format!("`{}` is not a connective of {}", c.symbol(), lp.logic));
        }
        match &line.justification {
            Justification::Premise => {
                if !pr.premises.contains(&line.formula) {
                    return reject(n, format!("`{}` is not a premise", line.formula));
                }
            }
            Justification::Axiom(name) => {
                let Some(s) = lp.get(name) else {
                    return reject(n, format!("{name} is not an axiom of {}", lp.logic));
                };
                if match_schema(s, &line.formula).is_none() {
                    return reject(n, format!("`{}` is not an instance of {}", line.formula, s));
                }
            }
            &Justification::Mp(i, j) => {
                if i == 0 || j == 0 || i >= n || j >= n {
                    return reject(n, format!("mp {i} {j} must cite earlier lines"));
                }
                let minor = &pr.lines[i - 1].formula;
                let major = &pr.lines[j - 1].formula;
                if *major != Formula::imp(minor.clone(), line.formula.clone()) {
                    return reject(n, format!("line {j} is not line {i} -> `{}`", line.formula));
                }
            }
        }
    }
    Ok(())
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ScriptError {
    #[error("script line {line}: {message}")]
    Syntax { line: usize, message: String },
    #[error("script line {line}: {source}")]
    Formula { line: usize, source: ParseError },
}

/// Parses a proof script. Formulas are read in the signature of the logic
/// named by a `logic` line, or in `default` when there is none.
pub fn parse_script(text: &str, default: Signature) -> Result<Proof, ScriptError> {
    let mut proof = Proof {
        logic: None,
        premises: Vec::new(),
        lines: Vec::new(),
    };
    let mut sig = default;
    for (k, raw) in text.lines().enumerate() {
        let n = k + 1;
        let syntax = |message: String| ScriptError::Syntax { line: n, message };
        let content = raw.split(';').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        let (keyword, rest) = content.split_once(char::is_whitespace).unwrap_or((content, ""));
        let rest = rest.trim();
        let formula = |text: &str, sig| parse(text, sig).map_err(|source| ScriptError::Formula { line: n, source });
        match keyword {
            "logic" => {
                if !proof.lines.is_empty() || proof.logic.is_some() {
                    return Err(syntax("`logic` must come first".into()));
                }
                let l: LogicId = rest.parse().map_err(|e| syntax(format!("{e}")))?;
                sig = l.signature();
                proof.logic = Some(l);
            }
            "premise" => {
                let f = formula(rest, sig)?;
                if !proof.premises.contains(&f) {
                    proof.premises.push(f.clone());
                }
                proof.lines.push(Line {
                    formula: f,
                    justification: Justification::Premise,
                });
            }
            "axiom" => {
                let (name, body) = rest
                    .split_once(char::is_whitespace)
                    .ok_or_else(|| syntax("expected `axiom <name> <formula>`".into()))?;
                proof.lines.push(Line {
                    formula: formula(body.trim(), sig)?,
                    justification: Justification::Axiom(name.to_string()),
                });
            }
            "mp" => {
                let mut parts = rest.splitn(3, char::is_whitespace);
                let mut index = || {
                    parts
                        .next()
                        .and_then(|s| s.parse::<usize>().ok())
                        .ok_or_else(|| syntax("expected `mp <i> <j> <formula>`".into()))
                };
                let i = index()?;
                let j = index()?;
                let body = parts.next().unwrap_or("").trim();
                proof.lines.push(Line {
                    formula: formula(body, sig)?,
                    justification: Justification::Mp(i, j),
                });
            }
            other => return Err(syntax(format!("unknown keyword `{other}`"))),
        }
    }
    Ok(proof)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f(s: &str, sig: Signature) -> Formula {
        parse(s, sig).unwrap()
    }

    #[test]
    fn registry_is_complete() {
        for name in [
            "Ax1", "Ax2", "Ax3", "Ax4", "Ax5", "Ax6", "Ax7", "Ax8", "Ax9", "Ax10", "Ax11", "bc1", "ciw", "ci", "cl",
            "Ip", "Comm", "Ex", "ciw#", "ci#", "cl#", "ciw*", "ci*", "cl*", "cc*",
        ] {
            assert!(schema(name).is_some(), "{name}");
        }
        assert_eq!(registry().len(), 25);
    }

    #[test]
    fn matching() {
        let sig = Signature::Nbi;
        let s = match_schema(schema("Ax1").unwrap(), &f("p->(q->p)", sig)).unwrap();
        assert_eq!(s["α"], f("p", sig));
        assert_eq!(s["β"], f("q", sig));
        let s = match_schema(schema("Ip").unwrap(), &f("(p#!p)->(p->(!p->q))", sig)).unwrap();
        assert_eq!((&s["α"], &s["β"], &s["γ"]), (&f("p", sig), &f("!p", sig), &f("q", sig)));
        assert!(match_schema(schema("Ax1").unwrap(), &f("p->(q->r)", sig)).is_none());
    }

    #[test]
    fn instances() {
        let bi = presentation(LogicId::Bi);
        assert_eq!(axiom_instances(&bi, &f("(p#q)->(q#p)", Signature::Bi)), ["Comm"]);
        assert!(axiom_instances(&bi, &f("p", Signature::Bi)).is_empty());
        let nbi = presentation(LogicId::Nbi);
        assert_eq!(axiom_instances(&nbi, &f("p | !p", Signature::Nbi)), ["Ax11"]);
    }

    #[test]
    fn checks_scripts() {
        let script = "logic mbC\npremise @p\npremise p\npremise !p\naxiom bc1 @p -> (p -> (!p -> q))\n\
                      mp 1 4 p -> (!p -> q)\nmp 2 5 !p -> q\nmp 3 6 q\n";
        let pr = parse_script(script, Signature::Nbi).unwrap();
        assert_eq!(pr.logic, Some(LogicId::Mbc));
        assert_eq!(pr.premises.len(), 3);
        assert!(check_proof(&presentation(LogicId::Mbc), &pr).is_ok());

        let bad = "premise p\npremise q\nmp 1 2 r";
        let pr = parse_script(bad, Signature::Bi).unwrap();
        assert_eq!(check_proof(&presentation(LogicId::Bi), &pr).unwrap_err().line, 3);

        let wrong_logic = "axiom Ax11 p | !p";
        let pr = parse_script(wrong_logic, Signature::Nbi).unwrap();
        assert!(check_proof(&presentation(LogicId::Nbi), &pr).is_ok());
        assert!(check_proof(&presentation(LogicId::Bi), &pr).is_err());
    }
}
