//! A small s-expression reader with source positions.

use std::fmt;

use thiserror::Error;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Pos {
    pub line: usize,
    pub col: usize,
}

impl fmt::Display for Pos {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.line, self.col)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("{pos}: {message}")]
pub struct ParseError {
    pub pos: Pos,
    pub message: String,
}

impl ParseError {
    pub fn new(pos: Pos, message: impl Into<String>) -> Self {
        ParseError { pos, message: message.into() }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Sexp {
    Atom(String, Pos),
    List(Vec<Sexp>, Pos),
}

impl Sexp {
    pub fn pos(&self) -> Pos {
        match self {
            Sexp::Atom(_, p) | Sexp::List(_, p) => *p,
        }
    }

    pub fn as_atom(&self) -> Option<&str> {
        match self {
            Sexp::Atom(a, _) => Some(a),
            Sexp::List(..) => None,
        }
    }

    pub fn as_list(&self) -> Option<&[Sexp]> {
        match self {
            Sexp::List(items, _) => Some(items),
            Sexp::Atom(..) => None,
        }
    }

    /// Splits `(head args…)` into its head atom and arguments.
    pub fn as_form(&self) -> Option<(&str, &[Sexp])> {
        let items = self.as_list()?;
        let (head, rest) = items.split_first()?;
        Some((head.as_atom()?, rest))
    }
}

/// Reads every top-level form of `text`. `;` starts a comment running to the
/// end of the line.
pub fn read_all(text: &str) -> Result<Vec<Sexp>, ParseError> {
    let mut stack: Vec<(Vec<Sexp>, Pos)> = Vec::new();
    let mut top = Vec::new();
    let mut chars = text.chars().peekable();
    let mut pos = Pos { line: 1, col: 1 };
    let advance = |c: char, pos: &mut Pos| {
        if c == '\n' {
            pos.line += 1;
            pos.col = 1;
        } else {
            pos.col += 1;
        }
    };
    while let Some(&c) = chars.peek() {
        let here = pos;
        match c {
            ';' => {
                while let Some(&c) = chars.peek() {
                    if c == '\n' {
                        break;
                    }
                    advance(c, &mut pos);
                    chars.next();
                }
            }
            c if c.is_whitespace() => {
                advance(c, &mut pos);
                chars.next();
            }
            '(' => {
                advance(c, &mut pos);
                chars.next();
                stack.push((Vec::new(), here));
            }
            ')' => {
                advance(c, &mut pos);
                chars.next();
                let (items, start) =
                    stack.pop().ok_or_else(|| ParseError::new(here, "unmatched `)`"))?;
                let list = Sexp::List(items, start);
                match stack.last_mut() {
                    Some((parent, _)) => parent.push(list),
                    None => top.push(list),
                }
            }
            _ => {
                let mut atom = String::new();
                while let Some(&c) = chars.peek() {
                    if c.is_whitespace() || c == '(' || c == ')' || c == ';' {
                        break;
                    }
                    atom.push(c);
                    advance(c, &mut pos);
                    chars.next();
                }
                let a = Sexp::Atom(atom, here);
                match stack.last_mut() {
                    Some((parent, _)) => parent.push(a),
                    None => top.push(a),
                }
            }
        }
    }
    if let Some((_, start)) = stack.pop() {
        return Err(ParseError::new(start, "unclosed `(`"));
    }
    Ok(top)
}

/// Reads exactly one form.
pub fn read_one(text: &str) -> Result<Sexp, ParseError> {
    let mut forms = read_all(text)?;
    match forms.len() {
        1 => Ok(forms.pop().unwrap()),
        0 => Err(ParseError::new(Pos { line: 1, col: 1 }, "expected an expression")),
        _ => Err(ParseError::new(forms[1].pos(), "unexpected trailing input")),
    }
}
