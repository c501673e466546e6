//! Concrete syntax.
//!
//! ```text
//! formula := imp
//! imp     := or ("->" imp)?
//! or      := and ("|" and)*
//! and     := inc ("&" inc)*
//! inc     := unary ("#" unary)*
//! unary   := ("!" | "@" | "~") unary | atom | "(" formula ")"
//!          | "bot(" formula "," formula ")" | "top(" formula ")"
//! atom    := [a-z][a-z0-9_]*
//! ```
//!
//! `~a`, `bot(a, b)` and `top(a)` are expanded while parsing and never
//! survive into the tree.

use thiserror::Error;

use crate::formula::{BinOp, Connective, Formula, Signature, UnOp};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("syntax error at {position}: {message}")]
    Syntax { position: usize, message: String },
    #[error("`{symbol}` at {position} is not a connective of {signature}")]
    Signature {
        position: usize,
        symbol: &'static str,
        signature: &'static str,
    },
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Atom(String),
    LParen,
    RParen,
    Comma,
    Inc,
    And,
    Or,
    Arrow,
    Neg,
    Circ,
    Tilde,
}

fn tokenize(text: &str) -> Result<Vec<(usize, Tok)>, ParseError> {
    let bytes = text.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i];
        let start = i;
        let tok = match c {
            b' ' | b'\t' | b'\n' | b'\r' => {
                i += 1;
                continue;
            }
            b'(' => Tok::LParen,
            b')' => Tok::RParen,
            b',' => Tok::Comma,
            b'#' => Tok::Inc,
            b'&' => Tok::And,
            b'|' => Tok::Or,
            b'!' => Tok::Neg,
            b'@' => Tok::Circ,
            b'~' => Tok::Tilde,
            b'-' if bytes.get(i + 1) == Some(&b'>') => {
                i += 2;
                out.push((start, Tok::Arrow));
                continue;
            }
            b'a'..=b'z' => {
                let mut j = i + 1;
                while j < bytes.len()
                    && (bytes[j].is_ascii_lowercase() || bytes[j].is_ascii_digit() || bytes[j] == b'_')
                {
                    j += 1;
                }
                out.push((start, Tok::Atom(text[i..j].to_string())));
                i = j;
                continue;
            }
            _ => {
                let ch = text[i..].chars().next().unwrap_or('?');
                return Err(ParseError::Syntax {
                    position: start,
                    message: format!("unexpected character `{ch}`"),
                });
            }
        };
        out.push((start, tok));
        i += 1;
    }
    Ok(out)
}

struct Parser {
    toks: Vec<(usize, Tok)>,
    pos: usize,
    end: usize,
    sig: Signature,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(_, t)| t)
    }

    fn offset(&self) -> usize {
        self.toks.get(self.pos).map(|(o, _)| *o).unwrap_or(self.end)
    }

    fn bump(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.pos).map(|(_, t)| t.clone());
        self.pos += 1;
        t
    }

    fn err<T>(&self, message: impl Into<String>) -> Result<T, ParseError> {
        Err(ParseError::Syntax {
            position: self.offset(),
            message: message.into(),
        })
    }

    fn expect(&mut self, want: Tok, what: &str) -> Result<(), ParseError> {
        if self.peek() == Some(&want) {
            self.pos += 1;
            Ok(())
        } else {
            self.err(format!("expected {what}"))
        }
    }

    fn allow(&self, c: Connective, position: usize) -> Result<(), ParseError> {
        if self.sig.contains(c) {
            Ok(())
        } else {
            Err(ParseError::Signature {
                position,
                symbol: c.symbol(),
                signature: self.sig.name(),
            })
        }
    }

    fn sugar_allowed(&self, position: usize, symbol: &'static str) -> Result<(), ParseError> {
        if self.sig.contains(Connective::Bin(BinOp::Inc)) {
            Ok(())
        } else {
            Err(ParseError::Signature {
                position,
                symbol,
                signature: self.sig.name(),
            })
        }
    }

    fn formula(&mut self) -> Result<Formula, ParseError> {
        let left = self.or()?;
        if self.peek() == Some(&Tok::Arrow) {
            self.pos += 1;
            let right = self.formula()?;
            return Ok(Formula::imp(left, right));
        }
        Ok(left)
    }

    fn or(&mut self) -> Result<Formula, ParseError> {
        let mut left = self.and()?;
        while self.peek() == Some(&Tok::Or) {
            self.pos += 1;
            let right = self.and()?;
            left = Formula::or(left, right);
        }
        Ok(left)
    }

    fn and(&mut self) -> Result<Formula, ParseError> {
        let mut left = self.inc()?;
        while self.peek() == Some(&Tok::And) {
            self.pos += 1;
            let right = self.inc()?;
            left = Formula::and(left, right);
        }
        Ok(left)
    }

    fn inc(&mut self) -> Result<Formula, ParseError> {
        let mut left = self.unary()?;
        while self.peek() == Some(&Tok::Inc) {
            let at = self.offset();
            self.allow(Connective::Bin(BinOp::Inc), at)?;
            self.pos += 1;
            let right = self.unary()?;
            left = Formula::inc(left, right);
        }
        Ok(left)
    }

    fn unary(&mut self) -> Result<Formula, ParseError> {
        let at = self.offset();
        match self.bump() {
            Some(Tok::Neg) => {
                self.allow(Connective::Un(UnOp::Neg), at)?;
                Ok(Formula::neg(self.unary()?))
            }
            Some(Tok::Circ) => {
                self.allow(Connective::Un(UnOp::Circ), at)?;
                Ok(Formula::circ(self.unary()?))
            }
            Some(Tok::Tilde) => {
                self.sugar_allowed(at, "~")?;
                Ok(Formula::classical_neg(self.unary()?))
            }
            Some(Tok::LParen) => {
                let f = self.formula()?;
                self.expect(Tok::RParen, "`)`")?;
                Ok(f)
            }
            Some(Tok::Atom(name)) => {
                let call = self.peek() == Some(&Tok::LParen);
                match name.as_str() {
                    "bot" if call => {
                        self.sugar_allowed(at, "bot")?;
                        self.pos += 1;
                        let a = self.formula()?;
                        self.expect(Tok::Comma, "`,`")?;
                        let b = self.formula()?;
                        self.expect(Tok::RParen, "`)`")?;
                        Ok(Formula::bottom(a, b))
                    }
                    "top" if call => {
                        self.sugar_allowed(at, "top")?;
                        self.pos += 1;
                        let a = self.formula()?;
                        self.expect(Tok::RParen, "`)`")?;
                        Ok(Formula::top(a))
                    }
                    _ => Ok(Formula::var(name)),
                }
            }
            Some(_) => {
                self.pos -= 1;
                self.err("expected a formula")
            }
            None => self.err("unexpected end of input"),
        }
    }
}

/// Parses `text` as a formula over `sig`.
pub fn parse(text: &str, sig: Signature) -> Result<Formula, ParseError> {
    let mut p = Parser {
        toks: tokenize(text)?,
        pos: 0,
        end: text.len(),
        sig,
    };
    let f = p.formula()?;
    if p.pos < p.toks.len() {
        return p.err("unexpected trailing input");
    }
    Ok(f)
}

/// Parses a comma-separated list of formulas; the empty string gives `[]`.
pub fn parse_list(text: &str, sig: Signature) -> Result<Vec<Formula>, ParseError> {
    let toks = tokenize(text)?;
    if toks.is_empty() {
        return Ok(Vec::new());
    }
    let mut p = Parser {
        toks,
        pos: 0,
        end: text.len(),
        sig,
    };
    let mut out = vec![p.formula()?];
    while p.peek() == Some(&Tok::Comma) {
        p.pos += 1;
        out.push(p.formula()?);
    }
    if p.pos < p.toks.len() {
        return p.err("expected `,` or end of input");
    }
    Ok(out)
}

/// Parses `g1, ..., gm |- phi` (premises may be empty: `|- phi`).
pub fn parse_sequent(text: &str, sig: Signature) -> Result<crate::formula::Sequent, ParseError> {
    let Some(split) = text.find("|-") else {
        return Err(ParseError::Syntax {
            position: 0,
            message: "expected `|-` separating premises from the conclusion".into(),
        });
    };
    let premises = parse_list(&text[..split], sig)?;
    let conclusion = parse(&text[split + 2..], sig).map_err(|e| shift(e, split + 2))?;
    Ok(crate::formula::Sequent::new(premises, conclusion))
}

fn shift(e: ParseError, by: usize) -> ParseError {
    match e {
        ParseError::Syntax { position, message } => ParseError::Syntax {
            position: position + by,
            message,
        },
        ParseError::Signature {
            position,
            symbol,
            signature,
        } => ParseError::Signature {
            position: position + by,
            symbol,
            signature,
        },
    }
}

fn precedence(f: &Formula) -> u8 {
    match f {
        Formula::Binary(BinOp::Imp, ..) => 1,
        Formula::Binary(BinOp::Or, ..) => 2,
        Formula::Binary(BinOp::And, ..) => 3,
        Formula::Binary(BinOp::Inc, ..) => 4,
        Formula::Unary(..) => 5,
        Formula::Var(_) => 6,
    }
}

/// Canonical rendering with the fewest parentheses that reparse to `f`.
pub fn render(f: &Formula) -> String {
    let mut out = String::new();
    write_formula(f, &mut out);
    out
}

fn write_formula(f: &Formula, out: &mut String) {
    match f {
        Formula::Var(name) => out.push_str(name),
        Formula::Unary(op, child) => {
            out.push_str(op.symbol());
            write_child(child, precedence(child) < 5, out);
        }
        Formula::Binary(op, l, r) => {
            let p = precedence(f);
            // `->` associates to the right, the others to the left
            let (left_parens, right_parens) = if *op == BinOp::Imp {
                (precedence(l) <= p, precedence(r) < p)
            } else {
                (precedence(l) < p, precedence(r) <= p)
            };
            write_child(l, left_parens, out);
            out.push(' ');
            out.push_str(op.symbol());
            out.push(' ');
            write_child(r, right_parens, out);
        }
    }
}

fn write_child(f: &Formula, parens: bool, out: &mut String) {
    if parens {
        out.push('(');
        write_formula(f, out);
        out.push(')');
    } else {
        write_formula(f, out);
    }
}
