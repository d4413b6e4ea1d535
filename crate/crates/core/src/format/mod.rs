//! Reading and writing problem files.
//!
//! Problems use a TPTP-like concrete syntax: one `fof(name, role, F).`
//! clause per sequent member, `%` line comments, and linear connectives
//! written `*`, `&`, `+`, `|`, `-o`, `!`, `?` with constants `1`, `0`,
//! `top`, `bot`. Axiom clauses form the antecedent multiset, the single
//! conjecture clause is the succedent.

mod lex;

pub mod iltp;

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::formula::{Formula, Sequent};

use lex::{Lexed, Spanned, Tok};

/// Provability status carried in a `% Status : <value>` header comment.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum ProblemStatus {
    Theorem,
    NonTheorem,
    #[default]
    Unknown,
}

impl ProblemStatus {
    pub fn as_str(self) -> &'static str {
        match self {
            ProblemStatus::Theorem => "Theorem",
            ProblemStatus::NonTheorem => "Non-Theorem",
            ProblemStatus::Unknown => "Unknown",
        }
    }

    fn from_str_opt(s: &str) -> Option<ProblemStatus> {
        match s {
            "Theorem" => Some(ProblemStatus::Theorem),
            "Non-Theorem" => Some(ProblemStatus::NonTheorem),
            "Unknown" => Some(ProblemStatus::Unknown),
            _ => None,
        }
    }
}

impl fmt::Display for ProblemStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// A linear logic problem: labelled axioms plus exactly one conjecture.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Problem {
    /// Display name; for files this is conventionally the file stem.
    pub name: String,
    /// Header comment lines (text after `%`, trimmed), in order. A line of
    /// the form `Status : <value>` carries the problem status.
    pub header_comments: Vec<String>,
    pub axioms: Vec<(String, Formula)>,
    pub conjecture: (String, Formula),
}

impl Problem {
    pub fn new(
        name: impl Into<String>,
        axioms: Vec<(String, Formula)>,
        conjecture: (String, Formula),
    ) -> Problem {
        Problem {
            name: name.into(),
            header_comments: Vec::new(),
            axioms,
            conjecture,
        }
    }

    /// The sequent `axioms ⊢ conjecture`.
    pub fn to_sequent(&self) -> Sequent {
        Sequent::new(
            self.axioms.iter().map(|(_, f)| f.clone()),
            self.conjecture.1.clone(),
        )
    }

    pub fn status(&self) -> ProblemStatus {
        self.header_comments
            .iter()
            .find_map(|line| parse_status_line(line))
            .unwrap_or_default()
    }

    /// Sets or replaces the `Status :` header line.
    pub fn set_status(&mut self, status: ProblemStatus) {
        let line = format!("Status : {}", status.as_str());
        if let Some(slot) = self
            .header_comments
            .iter_mut()
            .find(|l| parse_status_line(l).is_some())
        {
            *slot = line;
        } else {
            self.header_comments.insert(0, line);
        }
    }

    pub fn with_status(mut self, status: ProblemStatus) -> Problem {
        self.set_status(status);
        self
    }

    pub fn push_comment(&mut self, text: impl Into<String>) {
        self.header_comments.push(text.into());
    }

    /// Equality of logical content: clause labels, formulas and status.
    /// Ignores the display name and non-status comments.
    pub fn structurally_eq(&self, other: &Problem) -> bool {
        self.axioms == other.axioms
            && self.conjecture == other.conjecture
            && self.status() == other.status()
    }
}

fn parse_status_line(line: &str) -> Option<ProblemStatus> {
    let rest = line.trim().strip_prefix("Status")?;
    // tolerate ILTP-style qualifiers such as "Status (intuit.) :"
    let rest = rest.trim_start();
    let rest = if let Some(r) = rest.strip_prefix('(') {
        let (_, tail) = r.split_once(')')?;
        tail.trim_start()
    } else {
        rest
    };
    let value = rest.strip_prefix(':')?.trim();
    ProblemStatus::from_str_opt(value)
}

#[derive(Clone, Debug, Error, PartialEq, Eq)]
pub enum ParseError {
    #[error("{line}:{col}: {message}")]
    Syntax { line: u32, col: u32, message: String },
    #[error("line {line}: duplicate conjecture clause")]
    DuplicateConjecture { line: u32 },
    #[error("input contains no conjecture clause")]
    MissingConjecture,
}

impl ParseError {
    pub(crate) fn syntax(line: u32, col: u32, message: impl Into<String>) -> ParseError {
        ParseError::Syntax {
            line,
            col,
            message: message.into(),
        }
    }
}

/// Parses a problem file. Whitespace- and comment-insensitive; comments
/// appearing before the first clause are kept as header comments.
pub fn parse_problem(text: &str) -> Result<Problem, ParseError> {
    let Lexed { tokens, comments } = lex::lex(text)?;
    let mut p = Parser::new(&tokens);

    let mut axioms = Vec::new();
    let mut conjecture: Option<(String, Formula)> = None;
    let mut first_clause_line = u32::MAX;

    while !p.at_end() {
        let clause_line = p.peek_line();
        first_clause_line = first_clause_line.min(clause_line);
        p.expect_ident("fof")?;
        p.expect(&Tok::LParen)?;
        let label = p.any_name()?;
        p.expect(&Tok::Comma)?;
        let role = p.any_name()?;
        p.expect(&Tok::Comma)?;
        let formula = p.formula_ll(0)?;
        p.expect(&Tok::RParen)?;
        p.expect(&Tok::Period)?;
        match role.as_str() {
            "axiom" | "hypothesis" => axioms.push((label, formula)),
            "conjecture" => {
                if conjecture.is_some() {
                    return Err(ParseError::DuplicateConjecture { line: clause_line });
                }
                conjecture = Some((label, formula));
            }
            other => {
                return Err(ParseError::syntax(
                    clause_line,
                    1,
                    format!("unknown clause role `{other}`"),
                ));
            }
        }
    }

    let conjecture = conjecture.ok_or(ParseError::MissingConjecture)?;
    let header_comments = comments
        .into_iter()
        .filter(|(line, _)| *line < first_clause_line)
        .map(|(_, text)| text)
        .collect();

    Ok(Problem {
        name: conjecture.0.clone(),
        header_comments,
        axioms,
        conjecture,
    })
}

/// Canonical text: header comments, then one clause per line with the
/// formula wrapped in parentheses and minimal parentheses inside.
pub fn serialize_problem(p: &Problem) -> String {
    let mut out = String::new();
    for line in &p.header_comments {
        out.push_str("% ");
        out.push_str(line);
        out.push('\n');
    }
    for (label, f) in &p.axioms {
        out.push_str(&format!("fof({label}, axiom, ({f})).\n"));
    }
    let (label, f) = &p.conjecture;
    out.push_str(&format!("fof({label}, conjecture, ({f})).\n"));
    out
}

// Precedence levels, tight to loose: unary ! ? (6); * (5); & (4); + (3);
// | (2); -o (1). All binaries left-associative except -o (right).
fn level(f: &Formula) -> u8 {
    use Formula::*;
    match f {
        Atom(_) | One | Zero | Top | Bot => 7,
        Bang(_) | Quest(_) => 6,
        Tensor(..) => 5,
        With(..) => 4,
        Plus(..) => 3,
        Par(..) => 2,
        Limp(..) => 1,
    }
}

fn fmt_ll(f: &Formula, out: &mut fmt::Formatter<'_>, min: u8) -> fmt::Result {
    use Formula::*;
    let lv = level(f);
    let paren = lv < min;
    if paren {
        out.write_str("(")?;
    }
    match f {
        Atom(p) => out.write_str(p)?,
        One => out.write_str("1")?,
        Zero => out.write_str("0")?,
        Top => out.write_str("top")?,
        Bot => out.write_str("bot")?,
        Bang(a) => {
            out.write_str("! ")?;
            fmt_ll(a, out, 6)?;
        }
        Quest(a) => {
            out.write_str("? ")?;
            fmt_ll(a, out, 6)?;
        }
        Tensor(a, b) => {
            fmt_ll(a, out, 5)?;
            out.write_str(" * ")?;
            fmt_ll(b, out, 6)?;
        }
        With(a, b) => {
            fmt_ll(a, out, 4)?;
            out.write_str(" & ")?;
            fmt_ll(b, out, 5)?;
        }
        Plus(a, b) => {
            fmt_ll(a, out, 3)?;
            out.write_str(" + ")?;
            fmt_ll(b, out, 4)?;
        }
        Par(a, b) => {
            fmt_ll(a, out, 2)?;
            out.write_str(" | ")?;
            fmt_ll(b, out, 3)?;
        }
        Limp(a, b) => {
            fmt_ll(a, out, 2)?;
            out.write_str(" -o ")?;
            fmt_ll(b, out, 1)?;
        }
    }
    if paren {
        out.write_str(")")?;
    }
    Ok(())
}

impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt_ll(self, f, 0)
    }
}

pub(crate) struct Parser<'a> {
    tokens: &'a [Spanned],
    pos: usize,
}

impl<'a> Parser<'a> {
    pub(crate) fn new(tokens: &'a [Spanned]) -> Parser<'a> {
        Parser { tokens, pos: 0 }
    }

    pub(crate) fn at_end(&self) -> bool {
        self.pos >= self.tokens.len()
    }

    fn peek(&self) -> Option<&Spanned> {
        self.tokens.get(self.pos)
    }

    pub(crate) fn peek_line(&self) -> u32 {
        self.peek().map(|t| t.line).unwrap_or(0)
    }

    fn here(&self) -> (u32, u32) {
        match self.peek() {
            Some(t) => (t.line, t.col),
            None => self
                .tokens
                .last()
                .map(|t| (t.line, t.col + 1))
                .unwrap_or((1, 1)),
        }
    }

    fn err(&self, message: impl Into<String>) -> ParseError {
        let (line, col) = self.here();
        ParseError::syntax(line, col, message)
    }

    fn advance(&mut self) -> Option<&'a Spanned> {
        let t = self.tokens.get(self.pos);
        if t.is_some() {
            self.pos += 1;
        }
        t
    }

    pub(crate) fn expect(&mut self, tok: &Tok) -> Result<(), ParseError> {
        match self.peek() {
            Some(t) if &t.tok == tok => {
                self.pos += 1;
                Ok(())
            }
            Some(t) => Err(self.err(format!("expected `{tok}`, found `{}`", t.tok))),
            None => Err(self.err(format!("expected `{tok}`, found end of input"))),
        }
    }

    pub(crate) fn expect_ident(&mut self, word: &str) -> Result<(), ParseError> {
        match self.peek() {
            Some(Spanned { tok: Tok::Ident(w), .. }) if w == word => {
                self.pos += 1;
                Ok(())
            }
            Some(t) => Err(self.err(format!("expected `{word}`, found `{}`", t.tok))),
            None => Err(self.err(format!("expected `{word}`, found end of input"))),
        }
    }

    /// Clause names may be identifiers or bare integers.
    pub(crate) fn any_name(&mut self) -> Result<String, ParseError> {
        match self.peek() {
            Some(Spanned { tok: Tok::Ident(w), .. }) => {
                let w = w.clone();
                self.pos += 1;
                Ok(w)
            }
            Some(Spanned { tok: Tok::Int(n), .. }) => {
                let n = n.clone();
                self.pos += 1;
                Ok(n)
            }
            Some(t) => Err(self.err(format!("expected a name, found `{}`", t.tok))),
            None => Err(self.err("expected a name, found end of input")),
        }
    }

    /// Linear formulas by precedence climbing; `min` is the loosest level
    /// allowed without parentheses.
    pub(crate) fn formula_ll(&mut self, min: u8) -> Result<Formula, ParseError> {
        let mut lhs = self.unary_ll()?;
        loop {
            let (op_level, right_assoc) = match self.peek().map(|t| &t.tok) {
                Some(Tok::Star) => (5, false),
                Some(Tok::Amp) => (4, false),
                Some(Tok::Plus) => (3, false),
                Some(Tok::Bar) => (2, false),
                Some(Tok::Limp) => (1, true),
                _ => break,
            };
            if op_level < min {
                break;
            }
            let op = self.advance().unwrap().tok.clone();
            let rhs = self.formula_ll(if right_assoc { op_level } else { op_level + 1 })?;
            lhs = match op {
                Tok::Star => Formula::tensor(lhs, rhs),
                Tok::Amp => Formula::with(lhs, rhs),
                Tok::Plus => Formula::plus(lhs, rhs),
                Tok::Bar => Formula::par(lhs, rhs),
                Tok::Limp => Formula::limp(lhs, rhs),
                _ => unreachable!(),
            };
        }
        Ok(lhs)
    }

    fn unary_ll(&mut self) -> Result<Formula, ParseError> {
        match self.peek().map(|t| t.tok.clone()) {
            Some(Tok::Bang) => {
                self.pos += 1;
                Ok(Formula::bang(self.unary_ll()?))
            }
            Some(Tok::Quest) => {
                self.pos += 1;
                Ok(Formula::quest(self.unary_ll()?))
            }
            Some(Tok::LParen) => {
                self.pos += 1;
                let f = self.formula_ll(0)?;
                self.expect(&Tok::RParen)?;
                Ok(f)
            }
            Some(Tok::Int(n)) => {
                let out = match n.as_str() {
                    "1" => Ok(Formula::One),
                    "0" => Ok(Formula::Zero),
                    other => Err(self.err(format!("`{other}` is not a formula constant"))),
                };
                if out.is_ok() {
                    self.pos += 1;
                }
                out
            }
            Some(Tok::Ident(w)) => {
                let out = match w.as_str() {
                    "top" => Formula::Top,
                    "bot" => Formula::Bot,
                    _ => Formula::Atom(w.clone()),
                };
                self.pos += 1;
                Ok(out)
            }
            Some(other) => Err(self.err(format!("expected a formula, found `{other}`"))),
            None => Err(self.err("expected a formula, found end of input")),
        }
    }
}
