//! Shared lexer for the problem-file syntaxes (linear and intuitionistic).

use super::ParseError;

#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) enum Tok {
    Ident(String),
    DollarWord(String),
    Int(String),
    LParen,
    RParen,
    LBracket,
    RBracket,
    Comma,
    Period,
    Star,
    Amp,
    Plus,
    Bar,
    Bang,
    Quest,
    Tilde,
    Limp,   // -o
    Arrow,  // =>
    Biimp,  // <=>
}

impl std::fmt::Display for Tok {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        use Tok::*;
        match self {
            Ident(s) => write!(f, "{s}"),
            DollarWord(s) => write!(f, "${s}"),
            Int(s) => write!(f, "{s}"),
            LParen => write!(f, "("),
            RParen => write!(f, ")"),
            LBracket => write!(f, "["),
            RBracket => write!(f, "]"),
            Comma => write!(f, ","),
            Period => write!(f, "."),
            Star => write!(f, "*"),
            Amp => write!(f, "&"),
            Plus => write!(f, "+"),
            Bar => write!(f, "|"),
            Bang => write!(f, "!"),
            Quest => write!(f, "?"),
            Tilde => write!(f, "~"),
            Limp => write!(f, "-o"),
            Arrow => write!(f, "=>"),
            Biimp => write!(f, "<=>"),
        }
    }
}

#[derive(Clone, Debug)]
pub(crate) struct Spanned {
    pub tok: Tok,
    pub line: u32,
    pub col: u32,
}

/// Lexer output: the token stream plus every `%` comment (text without the
/// marker), tagged with the line it appeared on.
pub(crate) struct Lexed {
    pub tokens: Vec<Spanned>,
    pub comments: Vec<(u32, String)>,
}

pub(crate) fn lex(input: &str) -> Result<Lexed, ParseError> {
    let mut tokens = Vec::new();
    let mut comments = Vec::new();
    let mut chars = input.chars().peekable();
    let mut line: u32 = 1;
    let mut col: u32 = 1;

    macro_rules! bump {
        () => {{
            let c = chars.next();
            if c == Some('\n') {
                line += 1;
                col = 1;
            } else if c.is_some() {
                col += 1;
            }
            c
        }};
    }

    while let Some(&c) = chars.peek() {
        let (tline, tcol) = (line, col);
        match c {
            ' ' | '\t' | '\r' | '\n' => {
                bump!();
            }
            '%' => {
                bump!();
                let mut text = String::new();
                while let Some(&c) = chars.peek() {
                    if c == '\n' {
                        break;
                    }
                    text.push(c);
                    bump!();
                }
                comments.push((tline, text.trim().to_string()));
            }
            '(' | ')' | '[' | ']' | ',' | '.' | '*' | '&' | '+' | '|' | '!' | '?' | '~' => {
                bump!();
                let tok = match c {
                    '(' => Tok::LParen,
                    ')' => Tok::RParen,
                    '[' => Tok::LBracket,
                    ']' => Tok::RBracket,
                    ',' => Tok::Comma,
                    '.' => Tok::Period,
                    '*' => Tok::Star,
                    '&' => Tok::Amp,
                    '+' => Tok::Plus,
                    '|' => Tok::Bar,
                    '!' => Tok::Bang,
                    '?' => Tok::Quest,
                    _ => Tok::Tilde,
                };
                tokens.push(Spanned { tok, line: tline, col: tcol });
            }
            '-' => {
                bump!();
                match chars.peek() {
                    Some('o') => {
                        bump!();
                        tokens.push(Spanned { tok: Tok::Limp, line: tline, col: tcol });
                    }
                    _ => {
                        return Err(ParseError::syntax(tline, tcol, "expected `-o`"));
                    }
                }
            }
            '=' => {
                bump!();
                match chars.peek() {
                    Some('>') => {
                        bump!();
                        tokens.push(Spanned { tok: Tok::Arrow, line: tline, col: tcol });
                    }
                    _ => {
                        return Err(ParseError::syntax(tline, tcol, "expected `=>`"));
                    }
                }
            }
            '<' => {
                bump!();
                if chars.peek() == Some(&'=') {
                    bump!();
                    if chars.peek() == Some(&'>') {
                        bump!();
                        tokens.push(Spanned { tok: Tok::Biimp, line: tline, col: tcol });
                        continue;
                    }
                }
                return Err(ParseError::syntax(tline, tcol, "expected `<=>`"));
            }
            '$' => {
                bump!();
                let mut word = String::new();
                while let Some(&c) = chars.peek() {
                    if c.is_ascii_alphanumeric() || c == '_' {
                        word.push(c);
                        bump!();
                    } else {
                        break;
                    }
                }
                if word.is_empty() {
                    return Err(ParseError::syntax(tline, tcol, "bare `$`"));
                }
                tokens.push(Spanned { tok: Tok::DollarWord(word), line: tline, col: tcol });
            }
            c if c.is_ascii_digit() => {
                let mut num = String::new();
                while let Some(&c) = chars.peek() {
                    if c.is_ascii_digit() {
                        num.push(c);
                        bump!();
                    } else {
                        break;
                    }
                }
                tokens.push(Spanned { tok: Tok::Int(num), line: tline, col: tcol });
            }
            c if c.is_ascii_alphabetic() || c == '_' => {
                let mut word = String::new();
                while let Some(&c) = chars.peek() {
                    if c.is_ascii_alphanumeric() || c == '_' {
                        word.push(c);
                        bump!();
                    } else {
                        break;
                    }
                }
                tokens.push(Spanned { tok: Tok::Ident(word), line: tline, col: tcol });
            }
            other => {
                return Err(ParseError::syntax(
                    tline,
                    tcol,
                    format!("unexpected character `{other}`"),
                ));
            }
        }
    }

    Ok(Lexed { tokens, comments })
}
