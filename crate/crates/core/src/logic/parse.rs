//! ASCII concrete syntax.
//!
//! Precedence from tightest: `~`, then `&` and `&.`, then `|` and `|.`,
//! then `->`. `->` associates to the right; `&` and `|` chains associate to
//! the left. A level may not mix two different connectives, and `&.` / `|.`
//! may not be chained at all, because the Sasaki operations are not
//! associative. Both cases need explicit parentheses.

use thiserror::Error;

use super::Formula;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ParseError {
    #[error("unexpected character {ch:?} at {pos}")]
    UnexpectedChar { pos: usize, ch: char },
    #[error("expected {expected} at {pos}, found {found}")]
    Unexpected {
        pos: usize,
        expected: &'static str,
        found: String,
    },
    #[error("unexpected end of input, expected {expected}")]
    UnexpectedEnd { expected: &'static str },
    #[error("chained {op:?} at {pos} is ambiguous; add parentheses")]
    AmbiguousChain { pos: usize, op: &'static str },
    #[error("{second:?} at {pos} follows {first:?} at the same level; add parentheses")]
    MixedConnectives {
        pos: usize,
        first: &'static str,
        second: &'static str,
    },
    #[error("\"<->\" at {pos} is not part of the language; assert both implications instead")]
    Biconditional { pos: usize },
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Atom(String),
    Bottom,
    Top,
    Not,
    Arrow,
    SAnd,
    SOr,
    And,
    Or,
    LParen,
    RParen,
}

impl Tok {
    fn describe(&self) -> String {
        match self {
            Tok::Atom(a) => format!("atom {a:?}"),
            Tok::Bottom => "\"_|_\"".into(),
            Tok::Top => "\"T\"".into(),
            Tok::Not => "\"~\"".into(),
            Tok::Arrow => "\"->\"".into(),
            Tok::SAnd => "\"&.\"".into(),
            Tok::SOr => "\"|.\"".into(),
            Tok::And => "\"&\"".into(),
            Tok::Or => "\"|\"".into(),
            Tok::LParen => "\"(\"".into(),
            Tok::RParen => "\")\"".into(),
        }
    }
}

fn lex(text: &str) -> Result<Vec<(usize, Tok)>, ParseError> {
    let bytes = text.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let rest = &text[i..];
        let c = rest.chars().next().expect("in bounds");
        if c.is_whitespace() {
            i += c.len_utf8();
            continue;
        }
        let (tok, len) = if rest.starts_with("<->") {
            return Err(ParseError::Biconditional { pos: i });
        } else if rest.starts_with("->") {
            (Tok::Arrow, 2)
        } else if rest.starts_with("_|_") {
            (Tok::Bottom, 3)
        } else if rest.starts_with("&.") {
            (Tok::SAnd, 2)
        } else if rest.starts_with("|.") {
            (Tok::SOr, 2)
        } else {
            match c {
                '&' => (Tok::And, 1),
                '|' => (Tok::Or, 1),
                '~' => (Tok::Not, 1),
                '(' => (Tok::LParen, 1),
                ')' => (Tok::RParen, 1),
                'T' => (Tok::Top, 1),
                'a'..='z' => {
                    let len = rest
                        .find(|ch: char| !(ch.is_ascii_alphanumeric() || ch == '_'))
                        .unwrap_or(rest.len());
                    (Tok::Atom(rest[..len].to_string()), len)
                }
                _ => return Err(ParseError::UnexpectedChar { pos: i, ch: c }),
            }
        };
        out.push((i, tok));
        i += len;
    }
    Ok(out)
}

struct Parser {
    toks: Vec<(usize, Tok)>,
    at: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.at).map(|(_, t)| t)
    }

    fn pos(&self) -> usize {
        self.toks.get(self.at).map_or(usize::MAX, |(p, _)| *p)
    }

    fn bump(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.at).map(|(_, t)| t.clone());
        self.at += 1;
        t
    }

    fn implication(&mut self) -> Result<Formula, ParseError> {
        let lhs = self.level(1)?;
        if self.peek() == Some(&Tok::Arrow) {
            self.bump();
            let rhs = self.implication()?;
            return Ok(Formula::implies(lhs, rhs));
        }
        Ok(lhs)
    }

    /// Level 1 is disjunction, level 2 conjunction.
    fn level(&mut self, level: u8) -> Result<Formula, ParseError> {
        let (plain, sasaki) = if level == 1 {
            (Tok::Or, Tok::SOr)
        } else {
            (Tok::And, Tok::SAnd)
        };
        let operand = |p: &mut Parser| if level == 1 { p.level(2) } else { p.unary() };
        let mut lhs = operand(self)?;
        let mut first: Option<Tok> = None;
        while let Some(t) = self.peek().cloned() {
            if t != plain && t != sasaki {
                break;
            }
            let pos = self.pos();
            match &first {
                Some(f) if *f != t => {
                    return Err(ParseError::MixedConnectives {
                        pos,
                        first: symbol(f),
                        second: symbol(&t),
                    })
                }
                Some(f) if *f == sasaki => return Err(ParseError::AmbiguousChain { pos, op: symbol(f) }),
                _ => {}
            }
            self.bump();
            let rhs = operand(self)?;
            lhs = match (&t, level) {
                (Tok::Or, _) => Formula::join(lhs, rhs),
                (Tok::SOr, _) => Formula::sdisj(lhs, rhs),
                (Tok::And, _) => Formula::meet(lhs, rhs),
                _ => Formula::sconj(lhs, rhs),
            };
            first = Some(t);
        }
        Ok(lhs)
    }

    fn unary(&mut self) -> Result<Formula, ParseError> {
        let pos = self.pos();
        match self.bump() {
            Some(Tok::Not) => Ok(Formula::neg(self.unary()?)),
            Some(Tok::Atom(a)) => Ok(Formula::atom(&a)),
            Some(Tok::Bottom) => Ok(Formula::bottom()),
            Some(Tok::Top) => Ok(Formula::top()),
            Some(Tok::LParen) => {
                let inner = self.implication()?;
                let pos = self.pos();
                match self.bump() {
                    Some(Tok::RParen) => Ok(inner),
                    Some(t) => Err(ParseError::Unexpected {
                        pos,
                        expected: "\")\"",
                        found: t.describe(),
                    }),
                    None => Err(ParseError::UnexpectedEnd { expected: "\")\"" }),
                }
            }
            Some(t) => Err(ParseError::Unexpected {
                pos,
                expected: "a formula",
                found: t.describe(),
            }),
            None => Err(ParseError::UnexpectedEnd { expected: "a formula" }),
        }
    }
}

fn symbol(t: &Tok) -> &'static str {
    match t {
        Tok::And => "&",
        Tok::SAnd => "&.",
        Tok::Or => "|",
        Tok::SOr => "|.",
        Tok::Arrow => "->",
        _ => "?",
    }
}

pub fn parse_formula(text: &str) -> Result<Formula, ParseError> {
    let mut p = Parser {
        toks: lex(text)?,
        at: 0,
    };
    let f = p.implication()?;
    match p.toks.get(p.at) {
        None => Ok(f),
        Some((pos, t)) => Err(ParseError::Unexpected {
            pos: *pos,
            expected: "end of input",
            found: t.describe(),
        }),
    }
}
