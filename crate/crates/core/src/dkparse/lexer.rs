use super::ast::Span;
use super::SyntaxError;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Tok {
    Ident(String),
    Type,
    Def,
    Colon,
    Dot,
    LParen,
    RParen,
    LBrack,
    RBrack,
    Comma,
    FatArrow,
    Arrow,
    ColonEq,
    LongArrow,
    Pragma(String),
    Comment(String),
    Eof,
}

impl Tok {
    pub fn describe(&self) -> String {
        match self {
            Tok::Ident(s) => format!("identifier `{s}`"),
            Tok::Type => "`Type`".into(),
            Tok::Def => "`def`".into(),
            Tok::Colon => "`:`".into(),
            Tok::Dot => "`.`".into(),
            Tok::LParen => "`(`".into(),
            Tok::RParen => "`)`".into(),
            Tok::LBrack => "`[`".into(),
            Tok::RBrack => "`]`".into(),
            Tok::Comma => "`,`".into(),
            Tok::FatArrow => "`=>`".into(),
            Tok::Arrow => "`->`".into(),
            Tok::ColonEq => "`:=`".into(),
            Tok::LongArrow => "`-->`".into(),
            Tok::Pragma(p) => format!("`{p}`"),
            Tok::Comment(_) => "comment".into(),
            Tok::Eof => "end of input".into(),
        }
    }
}

fn is_start(c: char) -> bool {
    c.is_ascii_alphabetic() || c == '_'
}

fn is_cont(c: char) -> bool {
    c.is_ascii_alphanumeric() || c == '_' || c == '\''
}

pub fn tokenize(text: &str) -> Result<Vec<(Tok, Span)>, SyntaxError> {
    let chars: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let (mut i, mut line, mut col) = (0usize, 1u32, 1u32);

    macro_rules! bump {
        () => {{
            if chars[i] == '\n' {
                line += 1;
                col = 1;
            } else {
                col += 1;
            }
            i += 1;
        }};
    }

    while i < chars.len() {
        let c = chars[i];
        let span = Span { line, col };
        let next = chars.get(i + 1).copied();
        if c.is_whitespace() {
            bump!();
            continue;
        }
        if c == '(' && next == Some(';') {
            bump!();
            bump!();
            let start = i;
            let mut depth = 1;
            loop {
                if i >= chars.len() {
                    return Err(SyntaxError::new(span, vec!["`;)`".into()], "end of input"));
                }
                if chars[i] == '(' && chars.get(i + 1) == Some(&';') {
                    depth += 1;
                    bump!();
                    bump!();
                } else if chars[i] == ';' && chars.get(i + 1) == Some(&')') {
                    depth -= 1;
                    if depth == 0 {
                        let body: String = chars[start..i].iter().collect();
                        bump!();
                        bump!();
                        out.push((Tok::Comment(body.replace("\r\n", "\n")), span));
                        break;
                    }
                    bump!();
                    bump!();
                } else {
                    bump!();
                }
            }
            continue;
        }
        if is_start(c) {
            let start = i;
            while i < chars.len() && is_cont(chars[i]) {
                bump!();
            }
            // `mod.id`: a dot glued to an identifier on both sides.
            if i + 1 < chars.len() && chars[i] == '.' && is_start(chars[i + 1]) {
                bump!();
                while i < chars.len() && is_cont(chars[i]) {
                    bump!();
                }
            }
            let word: String = chars[start..i].iter().collect();
            let tok = match word.as_str() {
                "Type" => Tok::Type,
                "def" => Tok::Def,
                _ => Tok::Ident(word),
            };
            out.push((tok, span));
            continue;
        }
        if c == '#' {
            let start = i;
            bump!();
            while i < chars.len() && chars[i].is_ascii_alphabetic() {
                bump!();
            }
            let word: String = chars[start..i].iter().collect();
            out.push((Tok::Pragma(word), span));
            continue;
        }
        let (tok, len) = match (c, next, chars.get(i + 2).copied()) {
            ('-', Some('-'), Some('>')) => (Tok::LongArrow, 3),
            ('-', Some('>'), _) => (Tok::Arrow, 2),
            ('=', Some('>'), _) => (Tok::FatArrow, 2),
            (':', Some('='), _) => (Tok::ColonEq, 2),
            (':', _, _) => (Tok::Colon, 1),
            ('.', _, _) => (Tok::Dot, 1),
            ('(', _, _) => (Tok::LParen, 1),
            (')', _, _) => (Tok::RParen, 1),
            ('[', _, _) => (Tok::LBrack, 1),
            (']', _, _) => (Tok::RBrack, 1),
            (',', _, _) => (Tok::Comma, 1),
            _ => {
                return Err(SyntaxError::new(
                    span,
                    vec!["a token".into()],
                    &format!("character `{c}`"),
                ))
            }
        };
        for _ in 0..len {
            bump!();
        }
        out.push((tok, span));
    }
    out.push((Tok::Eof, Span { line, col }));
    Ok(out)
}
