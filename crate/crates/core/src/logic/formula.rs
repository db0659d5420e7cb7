//! Requirement formulas and their concrete syntax.
//!
//! ```text
//! formula := disj ( "->" formula )?          right-associative
//! disj    := conj ( "|" conj )*
//! conj    := unary ( "&" unary )*
//! unary   := "<>" unary | primary
//! primary := "(" formula ")" | "true" | "false" | atom
//! atom    := ident ( "[" ( ident ( "," ident )* )? "]" )?
//! ident   := [A-Za-z0-9_.+:-]+   ("-" not followed by ">")
//! ```

use std::fmt;

use thiserror::Error;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Atom {
    pub event: String,
    /// Other events of the trace, sorted. `None` means any trace.
    pub trace: Option<Vec<String>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Formula {
    True,
    False,
    Atom(Atom),
    And(Box<Formula>, Box<Formula>),
    Or(Box<Formula>, Box<Formula>),
    Imp(Box<Formula>, Box<Formula>),
    Modal(Box<Formula>),
}

impl Formula {
    pub fn atom(event: &str) -> Formula {
        Formula::Atom(Atom { event: event.to_string(), trace: None })
    }

    pub fn traced(event: &str, trace: &[&str]) -> Formula {
        let mut t: Vec<String> = trace.iter().map(|s| s.to_string()).collect();
        t.sort();
        t.dedup();
        Formula::Atom(Atom { event: event.to_string(), trace: Some(t) })
    }

    pub fn and(a: Formula, b: Formula) -> Formula {
        Formula::And(Box::new(a), Box::new(b))
    }

    pub fn or(a: Formula, b: Formula) -> Formula {
        Formula::Or(Box::new(a), Box::new(b))
    }

    pub fn imp(a: Formula, b: Formula) -> Formula {
        Formula::Imp(Box::new(a), Box::new(b))
    }

    pub fn modal(a: Formula) -> Formula {
        Formula::Modal(Box::new(a))
    }

    pub fn has_modality(&self) -> bool {
        match self {
            Formula::True | Formula::False | Formula::Atom(_) => false,
            Formula::Modal(_) => true,
            Formula::And(a, b) | Formula::Or(a, b) | Formula::Imp(a, b) => a.has_modality() || b.has_modality(),
        }
    }

    fn precedence(&self) -> u8 {
        match self {
            Formula::Imp(..) => 1,
            Formula::Or(..) => 2,
            Formula::And(..) => 3,
            Formula::Modal(_) => 4,
            _ => 5,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
#[error("parse error at offset {pos}: expected one of [{}], found {found}", expected.join(", "))]
pub struct ParseError {
    pub pos: usize,
    pub expected: Vec<String>,
    pub found: String,
}

pub fn parse_formula(text: &str) -> Result<Formula, ParseError> {
    let mut p = Parser { src: text.as_bytes(), pos: 0 };
    let f = p.formula()?;
    p.skip_ws();
    if p.pos < p.src.len() {
        return Err(p.error(&["end of input", "->", "|", "&"]));
    }
    Ok(f)
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

fn is_ident_byte(b: u8) -> bool {
    b.is_ascii_alphanumeric() || matches!(b, b'_' | b'.' | b'+' | b':' | b'-')
}

impl Parser<'_> {
    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn eat(&mut self, tok: &str) -> bool {
        self.skip_ws();
        if self.src[self.pos..].starts_with(tok.as_bytes()) {
            self.pos += tok.len();
            true
        } else {
            false
        }
    }

    fn error(&self, expected: &[&str]) -> ParseError {
        let found = match self.src.get(self.pos) {
            None => "end of input".to_string(),
            Some(_) => {
                let rest = String::from_utf8_lossy(&self.src[self.pos..]);
                format!("`{}`", rest.chars().next().unwrap_or('?'))
            }
        };
        ParseError { pos: self.pos, expected: expected.iter().map(|s| s.to_string()).collect(), found }
    }

    fn formula(&mut self) -> Result<Formula, ParseError> {
        let lhs = self.disj()?;
        if self.eat("->") {
            let rhs = self.formula()?;
            return Ok(Formula::imp(lhs, rhs));
        }
        Ok(lhs)
    }

    fn disj(&mut self) -> Result<Formula, ParseError> {
        let mut f = self.conj()?;
        while self.eat("|") {
            f = Formula::or(f, self.conj()?);
        }
        Ok(f)
    }

    fn conj(&mut self) -> Result<Formula, ParseError> {
        let mut f = self.unary()?;
        while self.eat("&") {
            f = Formula::and(f, self.unary()?);
        }
        Ok(f)
    }

    fn unary(&mut self) -> Result<Formula, ParseError> {
        if self.eat("<>") {
            return Ok(Formula::modal(self.unary()?));
        }
        self.primary()
    }

    fn primary(&mut self) -> Result<Formula, ParseError> {
        if self.eat("(") {
            let f = self.formula()?;
            if !self.eat(")") {
                return Err(self.error(&[")"]));
            }
            return Ok(f);
        }
        self.skip_ws();
        let Some(name) = self.ident() else {
            return Err(self.error(&["(", "<>", "true", "false", "identifier"]));
        };
        match name.as_str() {
            "true" => return Ok(Formula::True),
            "false" => return Ok(Formula::False),
            _ => {}
        }
        let trace = if self.eat("[") {
            let mut items = Vec::new();
            if !self.eat("]") {
                loop {
                    self.skip_ws();
                    let Some(t) = self.ident() else {
                        return Err(self.error(&["identifier"]));
                    };
                    items.push(t);
                    if self.eat("]") {
                        break;
                    }
                    if !self.eat(",") {
                        return Err(self.error(&[",", "]"]));
                    }
                }
            }
            items.sort();
            items.dedup();
            Some(items)
        } else {
            None
        };
        Ok(Formula::Atom(Atom { event: name, trace }))
    }

    fn ident(&mut self) -> Option<String> {
        let start = self.pos;
        while self.pos < self.src.len() && is_ident_byte(self.src[self.pos]) {
            if self.src[self.pos] == b'-' && self.src.get(self.pos + 1) == Some(&b'>') {
                break;
            }
            self.pos += 1;
        }
        (self.pos > start).then(|| String::from_utf8_lossy(&self.src[start..self.pos]).into_owned())
    }
}

impl fmt::Display for Atom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.event)?;
        if let Some(t) = &self.trace {
            write!(f, "[{}]", t.join(","))?;
        }
        Ok(())
    }
}

impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fn child(f: &mut fmt::Formatter<'_>, c: &Formula, min: u8) -> fmt::Result {
            if c.precedence() < min {
                write!(f, "({c})")
            } else {
                write!(f, "{c}")
            }
        }
        match self {
            Formula::True => write!(f, "true"),
            Formula::False => write!(f, "false"),
            Formula::Atom(a) => write!(f, "{a}"),
            Formula::And(a, b) => {
                child(f, a, 3)?;
                write!(f, " & ")?;
                child(f, b, 4)
            }
            Formula::Or(a, b) => {
                child(f, a, 2)?;
                write!(f, " | ")?;
                child(f, b, 3)
            }
            Formula::Imp(a, b) => {
                child(f, a, 2)?;
                write!(f, " -> ")?;
                child(f, b, 1)
            }
            Formula::Modal(a) => {
                write!(f, "<>")?;
                child(f, a, 4)
            }
        }
    }
}
