//! Reader for intuitionistic problems in TPTP fof syntax, as used by the
//! ILTP collection: connectives `~`, `&`, `|`, `=>`, `<=>` and the
//! constants `$true`/`$false`. Only the propositional fragment is read.

use crate::il::{ILFormula, ILSequent};

use super::lex::{self, Lexed, Spanned, Tok};
use super::{parse_status_line, ParseError, Parser, ProblemStatus};

/// An intuitionistic problem: axioms and one conjecture.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ILProblem {
    pub name: String,
    pub header_comments: Vec<String>,
    pub axioms: Vec<(String, ILFormula)>,
    pub conjecture: (String, ILFormula),
}

impl ILProblem {
    pub fn to_sequent(&self) -> ILSequent {
        ILSequent::new(
            self.axioms.iter().map(|(_, f)| f.clone()),
            self.conjecture.1.clone(),
        )
    }

    /// Status declared in the header, e.g. `% Status (intuit.) : Theorem`.
    pub fn status(&self) -> ProblemStatus {
        self.header_comments
            .iter()
            .find_map(|line| parse_status_line(line))
            .unwrap_or_default()
    }
}

pub fn parse_il_problem(text: &str) -> Result<ILProblem, ParseError> {
    let Lexed { tokens, comments } = lex::lex(text)?;
    let mut p = Parser::new(&tokens);

    let mut axioms = Vec::new();
    let mut conjecture: Option<(String, ILFormula)> = None;
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
        let formula = il_formula(&mut p, 0)?;
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

    Ok(ILProblem {
        name: conjecture.0.clone(),
        header_comments,
        axioms,
        conjecture,
    })
}

// looser to tighter: <=> (1), => (2), | (3), & (4), ~ / primary
fn il_formula(p: &mut Parser, min: u8) -> Result<ILFormula, ParseError> {
    let mut lhs = il_unary(p)?;
    loop {
        let (op_level, right_assoc) = match p.peek_tok() {
            Some(Tok::Biimp) => (1, true),
            Some(Tok::Arrow) => (2, true),
            Some(Tok::Bar) => (3, false),
            Some(Tok::Amp) => (4, false),
            _ => break,
        };
        if op_level < min {
            break;
        }
        let op = p.take_tok();
        let rhs = il_formula(p, if right_assoc { op_level } else { op_level + 1 })?;
        lhs = match op {
            Tok::Biimp => ILFormula::equiv(lhs, rhs),
            Tok::Arrow => ILFormula::imp(lhs, rhs),
            Tok::Bar => ILFormula::or(lhs, rhs),
            Tok::Amp => ILFormula::and(lhs, rhs),
            _ => unreachable!(),
        };
    }
    Ok(lhs)
}

fn il_unary(p: &mut Parser) -> Result<ILFormula, ParseError> {
    match p.peek_tok().cloned() {
        Some(Tok::Tilde) => {
            p.take_tok();
            Ok(ILFormula::not(il_unary(p)?))
        }
        Some(Tok::LParen) => {
            p.take_tok();
            let f = il_formula(p, 0)?;
            p.expect(&Tok::RParen)?;
            Ok(f)
        }
        Some(Tok::DollarWord(w)) => {
            let out = match w.as_str() {
                "true" => Ok(ILFormula::True),
                "false" => Ok(ILFormula::False),
                other => Err(p.error_here(format!("unknown constant `${other}`"))),
            };
            if out.is_ok() {
                p.take_tok();
            }
            out
        }
        Some(Tok::Ident(w)) => {
            p.take_tok();
            Ok(ILFormula::Atom(w))
        }
        Some(other) => Err(p.error_here(format!("expected a formula, found `{other}`"))),
        None => Err(p.error_here("expected a formula, found end of input")),
    }
}

impl<'a> Parser<'a> {
    fn peek_tok(&self) -> Option<&Tok> {
        self.peek_spanned().map(|t| &t.tok)
    }

    fn take_tok(&mut self) -> Tok {
        let t = self.peek_spanned().expect("take_tok past end").tok.clone();
        self.pos += 1;
        t
    }

    fn error_here(&self, message: impl Into<String>) -> ParseError {
        self.err(message)
    }

    fn peek_spanned(&self) -> Option<&Spanned> {
        self.tokens.get(self.pos)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn atom(s: &str) -> ILFormula {
        ILFormula::atom(s)
    }

    #[test]
    fn parses_iltp_style_input() {
        let text = "\
% Status (intuit.) : Theorem
fof(axiom1, axiom, a => b).
fof(con, conjecture, (~b => ~a) & (a <=> a)).
";
        let p = parse_il_problem(text).unwrap();
        assert_eq!(p.status(), ProblemStatus::Theorem);
        assert_eq!(p.axioms[0].1, ILFormula::imp(atom("a"), atom("b")));
        assert_eq!(
            p.conjecture.1,
            ILFormula::and(
                ILFormula::imp(ILFormula::not(atom("b")), ILFormula::not(atom("a"))),
                ILFormula::equiv(atom("a"), atom("a")),
            )
        );
    }

    #[test]
    fn imp_is_right_associative() {
        let p = parse_il_problem("fof(c, conjecture, a => b => c).").unwrap();
        assert_eq!(
            p.conjecture.1,
            ILFormula::imp(atom("a"), ILFormula::imp(atom("b"), atom("c")))
        );
    }

    #[test]
    fn constants_parse() {
        let p = parse_il_problem("fof(c, conjecture, $true & ~$false).").unwrap();
        assert_eq!(
            p.conjecture.1,
            ILFormula::and(ILFormula::True, ILFormula::not(ILFormula::False))
        );
    }
}
