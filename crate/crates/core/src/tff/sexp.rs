//! A small S-expression reader shared by the `.tffx` and `.llpx` formats.

use std::fmt;

use crate::dkparse::Span;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Sexp {
    Atom(String, Span),
    Str(String, Span),
    List(Vec<Sexp>, Span),
}

/// A format error: syntax or structure, located in the source.
#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
#[error("{span}: {msg}")]
pub struct FormatError {
    pub span: Span,
    pub msg: String,
}

impl FormatError {
    pub fn new(span: Span, msg: impl Into<String>) -> Self {
        FormatError {
            span,
            msg: msg.into(),
        }
    }
}

impl Sexp {
    pub fn span(&self) -> Span {
        match self {
            Sexp::Atom(_, s) | Sexp::Str(_, s) | Sexp::List(_, s) => *s,
        }
    }

    pub fn atom(&self) -> Option<&str> {
        match self {
            Sexp::Atom(a, _) => Some(a),
            _ => None,
        }
    }

    pub fn list(&self) -> Option<&[Sexp]> {
        match self {
            Sexp::List(xs, _) => Some(xs),
            _ => None,
        }
    }

    /// The head atom of a non-empty list.
    pub fn head(&self) -> Option<&str> {
        self.list().and_then(|xs| xs.first()).and_then(Sexp::atom)
    }

    pub fn expect_list(&self, what: &str) -> Result<&[Sexp], FormatError> {
        self.list().ok_or_else(|| {
            FormatError::new(self.span(), format!("expected {what}, found `{self}`"))
        })
    }

    pub fn expect_atom(&self, what: &str) -> Result<&str, FormatError> {
        self.atom().ok_or_else(|| {
            FormatError::new(self.span(), format!("expected {what}, found `{self}`"))
        })
    }
}

impl fmt::Display for Sexp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Sexp::Atom(a, _) => write!(f, "{a}"),
            Sexp::Str(s, _) => write!(f, "{s:?}"),
            Sexp::List(xs, _) => {
                write!(f, "(")?;
                for (i, x) in xs.iter().enumerate() {
                    if i > 0 {
                        write!(f, " ")?;
                    }
                    write!(f, "{x}")?;
                }
                write!(f, ")")
            }
        }
    }
}

/// Reads every top-level S-expression. `;` starts a line comment.
pub fn read_all(text: &str) -> Result<Vec<Sexp>, FormatError> {
    let mut stack: Vec<(Vec<Sexp>, Span)> = Vec::new();
    let mut top = Vec::new();
    let (mut line, mut col) = (1u32, 1u32);
    let mut chars = text.chars().peekable();
    let push =
        |stack: &mut Vec<(Vec<Sexp>, Span)>, top: &mut Vec<Sexp>, e: Sexp| match stack.last_mut() {
            Some((xs, _)) => xs.push(e),
            None => top.push(e),
        };
    while let Some(&c) = chars.peek() {
        let span = Span { line, col };
        let mut advance = |c: char| {
            if c == '\n' {
                line += 1;
                col = 1;
            } else {
                col += 1;
            }
        };
        match c {
            _ if c.is_whitespace() => {
                chars.next();
                advance(c);
            }
            ';' => {
                while let Some(&c) = chars.peek() {
                    if c == '\n' {
                        break;
                    }
                    chars.next();
                    advance(c);
                }
            }
            '(' => {
                chars.next();
                advance(c);
                stack.push((Vec::new(), span));
            }
            ')' => {
                chars.next();
                advance(c);
                let (xs, sp) = stack
                    .pop()
                    .ok_or_else(|| FormatError::new(span, "unbalanced `)`"))?;
                push(&mut stack, &mut top, Sexp::List(xs, sp));
            }
            '"' => {
                chars.next();
                advance(c);
                let mut s = String::new();
                loop {
                    match chars.next() {
                        Some('"') => {
                            advance('"');
                            break;
                        }
                        Some(c) => {
                            advance(c);
                            s.push(c);
                        }
                        None => return Err(FormatError::new(span, "unterminated string")),
                    }
                }
                push(&mut stack, &mut top, Sexp::Str(s, span));
            }
            _ => {
                let mut a = String::new();
                while let Some(&c) = chars.peek() {
                    if c.is_whitespace() || matches!(c, '(' | ')' | ';' | '"') {
                        break;
                    }
                    a.push(c);
                    chars.next();
                    advance(c);
                }
                push(&mut stack, &mut top, Sexp::Atom(a, span));
            }
        }
    }
    if let Some((_, sp)) = stack.pop() {
        return Err(FormatError::new(sp, "unclosed `(`"));
    }
    Ok(top)
}

/// Reads exactly one S-expression.
pub fn read_one(text: &str) -> Result<Sexp, FormatError> {
    let mut all = read_all(text)?;
    match all.len() {
        1 => Ok(all.pop().unwrap()),
        0 => Err(FormatError::new(Span { line: 1, col: 1 }, "empty input")),
        _ => Err(FormatError::new(
            all[1].span(),
            "trailing input after the first expression",
        )),
    }
}
