//! Concrete syntax for formulas.
//!
//! Binary connectives, loosest to tightest:
//!
//! | text  | connective | associativity |
//! |-------|------------|---------------|
//! | `=>`  | `≻`        | none          |
//! | `<->` | `↔`        | none          |
//! | `->`  | `→`        | right         |
//! | `\|`  | `∨`        | left          |
//! | `&`   | `∧`        | left          |
//! | `(+)` | `⊕`        | left          |
//! | `(*)` | `⊙`        | left          |
//! | `(-)` | `⊖`        | left          |
//!
//! then `~` (negation), then `J{k/d}(φ)` / `I{k/d}(φ)`, atoms
//! (`[a-z][a-zA-Z0-9_]*`, `T`, `F`) and parentheses.

use std::fmt;

use thiserror::Error;

use crate::syntax::Formula;
use crate::truth::Index;

/// Byte range into the parsed text.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SourceSpan {
    pub start: usize,
    pub end: usize,
}

impl SourceSpan {
    fn new(start: usize, end: usize) -> SourceSpan {
        debug_assert!(start <= end);
        SourceSpan { start, end }
    }
}

impl fmt::Display for SourceSpan {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}..{}", self.start, self.end)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ParseErrorKind {
    Lexical(char),
    UnexpectedToken { found: String, expected: &'static str },
    UnbalancedParens,
    MalformedIndex(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("{kind} at {span}")]
pub struct ParseError {
    pub kind: ParseErrorKind,
    pub span: SourceSpan,
}

impl fmt::Display for ParseErrorKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ParseErrorKind::Lexical(c) => write!(f, "unexpected character {c:?}"),
            ParseErrorKind::UnexpectedToken { found, expected } => {
                write!(f, "unexpected {found}, expected {expected}")
            }
            ParseErrorKind::UnbalancedParens => f.write_str("unbalanced parentheses"),
            ParseErrorKind::MalformedIndex(msg) => write!(f, "malformed index: {msg}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Ident(String),
    Top,
    Bot,
    J,
    I,
    Num(String),
    Tilde,
    Cond,
    Iff,
    Imp,
    Or,
    And,
    OPlus,
    OTimes,
    OMinus,
    LParen,
    RParen,
    LBrace,
    RBrace,
    Slash,
    Eof,
}

impl Tok {
    fn describe(&self) -> String {
        match self {
            Tok::Ident(s) => format!("identifier `{s}`"),
            Tok::Num(s) => format!("number `{s}`"),
            Tok::Eof => "end of input".to_string(),
            other => format!("`{}`", other.text()),
        }
    }

    fn text(&self) -> &'static str {
        match self {
            Tok::Top => "T",
            Tok::Bot => "F",
            Tok::J => "J",
            Tok::I => "I",
            Tok::Tilde => "~",
            Tok::Cond => "=>",
            Tok::Iff => "<->",
            Tok::Imp => "->",
            Tok::Or => "|",
            Tok::And => "&",
            Tok::OPlus => "(+)",
            Tok::OTimes => "(*)",
            Tok::OMinus => "(-)",
            Tok::LParen => "(",
            Tok::RParen => ")",
            Tok::LBrace => "{",
            Tok::RBrace => "}",
            Tok::Slash => "/",
            Tok::Ident(_) | Tok::Num(_) | Tok::Eof => "",
        }
    }
}

fn lex(text: &str) -> Result<Vec<(Tok, SourceSpan)>, ParseError> {
    let bytes = text.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i];
        let start = i;
        let rest = &text[i..];
        let fixed = [
            ("<->", Tok::Iff),
            ("(+)", Tok::OPlus),
            ("(*)", Tok::OTimes),
            ("(-)", Tok::OMinus),
            ("=>", Tok::Cond),
            ("->", Tok::Imp),
        ];
        if let Some((s, tok)) = fixed.iter().find(|(s, _)| rest.starts_with(s)) {
            i += s.len();
            out.push((tok.clone(), SourceSpan::new(start, i)));
            continue;
        }
        let single = match c {
            b'~' => Some(Tok::Tilde),
            b'|' => Some(Tok::Or),
            b'&' => Some(Tok::And),
            b'(' => Some(Tok::LParen),
            b')' => Some(Tok::RParen),
            b'{' => Some(Tok::LBrace),
            b'}' => Some(Tok::RBrace),
            b'/' => Some(Tok::Slash),
            b'T' => Some(Tok::Top),
            b'F' => Some(Tok::Bot),
            b'J' => Some(Tok::J),
            b'I' => Some(Tok::I),
            _ => None,
        };
        if let Some(tok) = single {
            i += 1;
            out.push((tok, SourceSpan::new(start, i)));
            continue;
        }
        if c.is_ascii_whitespace() {
            i += 1;
        } else if c.is_ascii_lowercase() {
            while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_') {
                i += 1;
            }
            out.push((Tok::Ident(text[start..i].to_string()), SourceSpan::new(start, i)));
        } else if c.is_ascii_digit() {
            while i < bytes.len() && bytes[i].is_ascii_digit() {
                i += 1;
            }
            out.push((Tok::Num(text[start..i].to_string()), SourceSpan::new(start, i)));
        } else {
            let ch = rest.chars().next().expect("nonempty rest");
            return Err(ParseError {
                kind: ParseErrorKind::Lexical(ch),
                span: SourceSpan::new(start, start + ch.len_utf8()),
            });
        }
    }
    out.push((Tok::Eof, SourceSpan::new(text.len(), text.len())));
    Ok(out)
}

struct Parser {
    toks: Vec<(Tok, SourceSpan)>,
    pos: usize,
    open_parens: Vec<SourceSpan>,
}

// Binding levels for the binary connectives.
const COND: u8 = 1;
const IFF: u8 = 2;
const IMP: u8 = 3;
const OR: u8 = 4;
const AND: u8 = 5;
const OPLUS: u8 = 6;
const OTIMES: u8 = 7;
const OMINUS: u8 = 8;
const UNARY: u8 = 9;
const ATOM: u8 = 10;

fn binary_level(tok: &Tok) -> Option<u8> {
    Some(match tok {
        Tok::Cond => COND,
        Tok::Iff => IFF,
        Tok::Imp => IMP,
        Tok::Or => OR,
        Tok::And => AND,
        Tok::OPlus => OPLUS,
        Tok::OTimes => OTIMES,
        Tok::OMinus => OMINUS,
        _ => return None,
    })
}

fn build_binary(level: u8, a: Formula, b: Formula) -> Formula {
    match level {
        COND => Formula::cond(a, b),
        IFF => Formula::iff(a, b),
        IMP => Formula::imp(a, b),
        OR => Formula::or(a, b),
        AND => Formula::and(a, b),
        OPLUS => Formula::oplus(a, b),
        OTIMES => Formula::otimes(a, b),
        _ => Formula::ominus(a, b),
    }
}

impl Parser {
    fn peek(&self) -> &(Tok, SourceSpan) {
        &self.toks[self.pos]
    }

    fn bump(&mut self) -> (Tok, SourceSpan) {
        let t = self.toks[self.pos].clone();
        if t.0 != Tok::Eof {
            self.pos += 1;
        }
        t
    }

    fn unexpected(&self, expected: &'static str) -> ParseError {
        let (tok, span) = self.peek();
        // A stray `)` or a premature end inside parentheses is a balance problem.
        if *tok == Tok::RParen && self.open_parens.is_empty() {
            return ParseError {
                kind: ParseErrorKind::UnbalancedParens,
                span: *span,
            };
        }
        if *tok == Tok::Eof {
            if let Some(open) = self.open_parens.last() {
                return ParseError {
                    kind: ParseErrorKind::UnbalancedParens,
                    span: SourceSpan::new(open.start, span.end),
                };
            }
        }
        ParseError {
            kind: ParseErrorKind::UnexpectedToken {
                found: tok.describe(),
                expected,
            },
            span: *span,
        }
    }

    fn expect(&mut self, want: Tok, expected: &'static str) -> Result<SourceSpan, ParseError> {
        if self.peek().0 == want {
            Ok(self.bump().1)
        } else {
            Err(self.unexpected(expected))
        }
    }

    /// Parses a formula whose top connective binds at least as tightly as `min`.
    fn formula(&mut self, min: u8) -> Result<Formula, ParseError> {
        let mut lhs = self.unary()?;
        loop {
            let Some(level) = binary_level(&self.peek().0) else {
                return Ok(lhs);
            };
            if level < min {
                return Ok(lhs);
            }
            self.bump();
            lhs = match level {
                COND | IFF => {
                    let rhs = self.formula(level + 1)?;
                    let f = build_binary(level, lhs, rhs);
                    if binary_level(&self.peek().0) == Some(level) {
                        return Err(self.unexpected("parentheses around non-associative connective"));
                    }
                    f
                }
                IMP => {
                    let rhs = self.formula(IMP)?;
                    build_binary(level, lhs, rhs)
                }
                _ => {
                    let rhs = self.formula(level + 1)?;
                    build_binary(level, lhs, rhs)
                }
            };
        }
    }

    fn unary(&mut self) -> Result<Formula, ParseError> {
        if self.peek().0 == Tok::Tilde {
            self.bump();
            return Ok(Formula::not(self.unary()?));
        }
        self.primary()
    }

    fn primary(&mut self) -> Result<Formula, ParseError> {
        let (tok, span) = self.peek().clone();
        match tok {
            Tok::Ident(name) => {
                self.bump();
                Ok(Formula::Var(name))
            }
            Tok::Top => {
                self.bump();
                Ok(Formula::Top)
            }
            Tok::Bot => {
                self.bump();
                Ok(Formula::Bot)
            }
            Tok::J | Tok::I => {
                self.bump();
                let index = self.index()?;
                let body = self.parenthesized()?;
                Ok(if tok == Tok::J {
                    Formula::j(index, body)
                } else {
                    Formula::i(index, body)
                })
            }
            Tok::LParen => self.parenthesized(),
            _ => {
                let _ = span;
                Err(self.unexpected("a formula"))
            }
        }
    }

    fn parenthesized(&mut self) -> Result<Formula, ParseError> {
        let open = self.expect(Tok::LParen, "`(`")?;
        self.open_parens.push(open);
        let inner = self.formula(COND)?;
        self.expect(Tok::RParen, "`)`")?;
        self.open_parens.pop();
        Ok(inner)
    }

    fn index(&mut self) -> Result<Index, ParseError> {
        let open = self.expect(Tok::LBrace, "`{` starting an index")?;
        let malformed = |span: SourceSpan, msg: String| ParseError {
            kind: ParseErrorKind::MalformedIndex(msg),
            span,
        };
        let number = |p: &mut Parser| -> Result<u64, ParseError> {
            let (tok, span) = p.peek().clone();
            match tok {
                Tok::Num(s) => {
                    p.bump();
                    s.parse::<u64>()
                        .map_err(|_| malformed(span, format!("number `{s}` too large")))
                }
                _ => Err(malformed(span, format!("expected a number, found {}", tok.describe()))),
            }
        };
        let k = number(self)?;
        let (tok, span) = self.peek().clone();
        if tok != Tok::Slash {
            return Err(malformed(span, "expected `/` in index".to_string()));
        }
        self.bump();
        let d = number(self)?;
        let (tok, close) = self.peek().clone();
        if tok != Tok::RBrace {
            return Err(malformed(close, "expected `}` closing the index".to_string()));
        }
        self.bump();
        Index::new(k, d).map_err(|_| {
            malformed(
                SourceSpan::new(open.start, close.end),
                format!("{k}/{d} is not a rational in [0, 1]"),
            )
        })
    }
}

/// Parses one formula.
pub fn parse(text: &str) -> Result<Formula, ParseError> {
    let toks = lex(text)?;
    let mut p = Parser {
        toks,
        pos: 0,
        open_parens: Vec::new(),
    };
    let f = p.formula(COND)?;
    if p.peek().0 != Tok::Eof {
        return Err(p.unexpected("end of input"));
    }
    Ok(f)
}

/// Parses a corpus: one formula per line, blank lines and `#` comments ignored.
///
/// Returns `(line number, formula)` pairs with 1-based line numbers.
pub fn parse_corpus(text: &str) -> Result<Vec<(usize, Formula)>, (usize, ParseError)> {
    let mut out = Vec::new();
    for (no, line) in text.lines().enumerate() {
        let body = line.split('#').next().unwrap_or("");
        if body.trim().is_empty() {
            continue;
        }
        out.push((no + 1, parse(body).map_err(|e| (no + 1, e))?));
    }
    Ok(out)
}

fn level_of(f: &Formula) -> u8 {
    match f {
        Formula::Cond(..) => COND,
        Formula::Iff(..) => IFF,
        Formula::Imp(..) => IMP,
        Formula::Or(..) => OR,
        Formula::And(..) => AND,
        Formula::OPlus(..) => OPLUS,
        Formula::OTimes(..) => OTIMES,
        Formula::OMinus(..) => OMINUS,
        Formula::Not(_) => UNARY,
        _ => ATOM,
    }
}

fn op_text(f: &Formula) -> &'static str {
    match f {
        Formula::Cond(..) => "=>",
        Formula::Iff(..) => "<->",
        Formula::Imp(..) => "->",
        Formula::Or(..) => "|",
        Formula::And(..) => "&",
        Formula::OPlus(..) => "(+)",
        Formula::OTimes(..) => "(*)",
        _ => "(-)",
    }
}

/// Renders a formula with the fewest parentheses that parse back to it.
pub fn print(f: &Formula) -> String {
    let mut out = String::new();
    write_formula(f, 0, &mut out);
    out
}

fn write_formula(f: &Formula, min: u8, out: &mut String) {
    let level = level_of(f);
    let wrap = level < min;
    if wrap {
        out.push('(');
    }
    match f {
        Formula::Var(name) => out.push_str(name),
        Formula::Top => out.push('T'),
        Formula::Bot => out.push('F'),
        Formula::Not(a) => {
            out.push('~');
            write_formula(a, UNARY, out);
        }
        Formula::J(idx, a) | Formula::I(idx, a) => {
            out.push(if matches!(f, Formula::J(..)) { 'J' } else { 'I' });
            out.push_str(&format!("{{{idx}}}("));
            write_formula(a, 0, out);
            out.push(')');
        }
        Formula::Cond(a, b)
        | Formula::Iff(a, b)
        | Formula::Imp(a, b)
        | Formula::Or(a, b)
        | Formula::And(a, b)
        | Formula::OPlus(a, b)
        | Formula::OTimes(a, b)
        | Formula::OMinus(a, b) => {
            let (left_min, right_min) = match level {
                COND | IFF => (level + 1, level + 1),
                IMP => (IMP + 1, IMP),
                _ => (level, level + 1),
            };
            write_formula(a, left_min, out);
            out.push(' ');
            out.push_str(op_text(f));
            out.push(' ');
            write_formula(b, right_min, out);
        }
    }
    if wrap {
        out.push(')');
    }
}

impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&print(self))
    }
}
