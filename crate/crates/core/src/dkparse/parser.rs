use super::ast::{Entry, Expr, Located, Span};
use super::lexer::{tokenize, Tok};
use super::SyntaxError;

struct Parser {
    toks: Vec<(Tok, Span)>,
    pos: usize,
}

impl Parser {
    /// Current significant token; comments inside entries are skipped.
    fn peek(&mut self) -> &Tok {
        self.skip_comments();
        &self.toks[self.pos].0
    }

    fn peek2(&mut self) -> &Tok {
        self.skip_comments();
        let mut j = self.pos + 1;
        while matches!(self.toks.get(j), Some((Tok::Comment(_), _))) {
            j += 1;
        }
        &self.toks[j.min(self.toks.len() - 1)].0
    }

    fn span(&mut self) -> Span {
        self.skip_comments();
        self.toks[self.pos].1
    }

    fn skip_comments(&mut self) {
        while let Tok::Comment(_) = self.toks[self.pos].0 {
            self.pos += 1;
        }
    }

    fn bump(&mut self) -> Tok {
        self.skip_comments();
        let t = self.toks[self.pos].0.clone();
        if t != Tok::Eof {
            self.pos += 1;
        }
        t
    }

    fn error(&mut self, expected: &[&str]) -> SyntaxError {
        let span = self.span();
        let found = self.peek().describe();
        SyntaxError::new(
            span,
            expected.iter().map(|s| s.to_string()).collect(),
            &found,
        )
    }

    fn expect(&mut self, t: Tok) -> Result<(), SyntaxError> {
        if *self.peek() == t {
            self.bump();
            Ok(())
        } else {
            Err(self.error(&[&t.describe()]))
        }
    }

    fn local_ident(&mut self) -> Result<String, SyntaxError> {
        match self.peek().clone() {
            Tok::Ident(s) if !s.contains('.') => {
                self.bump();
                Ok(s)
            }
            _ => Err(self.error(&["unqualified identifier"])),
        }
    }

    fn file(&mut self) -> Result<Vec<Located>, SyntaxError> {
        let mut out = Vec::new();
        loop {
            let (tok, span) = self.toks[self.pos].clone();
            let entry = match tok {
                Tok::Eof => return Ok(out),
                Tok::Comment(c) => {
                    self.pos += 1;
                    Entry::Comment(c)
                }
                _ => self.entry()?,
            };
            out.push(Located { span, entry });
        }
    }

    fn entry(&mut self) -> Result<Entry, SyntaxError> {
        match self.peek().clone() {
            Tok::Def => {
                self.bump();
                let name = self.local_ident()?;
                self.expect(Tok::Colon)?;
                let ty = self.term()?;
                self.expect(Tok::ColonEq)?;
                let body = self.term()?;
                self.expect(Tok::Dot)?;
                Ok(Entry::Def { name, ty, body })
            }
            Tok::LBrack => {
                self.bump();
                let mut ctx = Vec::new();
                if *self.peek() != Tok::RBrack {
                    loop {
                        let x = self.local_ident()?;
                        self.expect(Tok::Colon)?;
                        let ty = self.term()?;
                        ctx.push((x, ty));
                        match self.peek() {
                            Tok::Comma => {
                                self.bump();
                            }
                            Tok::RBrack => break,
                            _ => return Err(self.error(&["`,`", "`]`"])),
                        }
                    }
                }
                self.expect(Tok::RBrack)?;
                let lhs = self.app()?;
                self.expect(Tok::LongArrow)?;
                let rhs = self.term()?;
                self.expect(Tok::Dot)?;
                Ok(Entry::Rule { ctx, lhs, rhs })
            }
            Tok::Pragma(p) if p == "#ASSERT" => {
                self.bump();
                let term = self.app()?;
                self.expect(Tok::Colon)?;
                let ty = self.term()?;
                self.expect(Tok::Dot)?;
                Ok(Entry::Assert { term, ty })
            }
            Tok::Pragma(p) if p == "#REQUIRE" => {
                self.bump();
                let m = self.local_ident()?;
                self.expect(Tok::Dot)?;
                Ok(Entry::Require(m))
            }
            Tok::Ident(_) => {
                let name = self.local_ident()?;
                self.expect(Tok::Colon)?;
                let ty = self.term()?;
                self.expect(Tok::Dot)?;
                Ok(Entry::Decl { name, ty })
            }
            _ => Err(self.error(&["declaration", "`def`", "`[`", "`#ASSERT`", "`#REQUIRE`"])),
        }
    }

    fn term(&mut self) -> Result<Expr, SyntaxError> {
        if let (Tok::Ident(x), Tok::Colon) = (self.peek().clone(), self.peek2().clone()) {
            if x.contains('.') {
                return Err(self.error(&["unqualified binder name"]));
            }
            self.bump();
            self.bump();
            let a = self.app()?;
            return match self.peek() {
                Tok::Arrow => {
                    self.bump();
                    Ok(Expr::Pi(Some(x), Box::new(a), Box::new(self.term()?)))
                }
                Tok::FatArrow => {
                    self.bump();
                    Ok(Expr::Lam(x, Box::new(a), Box::new(self.term()?)))
                }
                _ => Err(self.error(&["`->`", "`=>`"])),
            };
        }
        let a = self.app()?;
        if *self.peek() == Tok::Arrow {
            self.bump();
            let b = self.term()?;
            return Ok(Expr::Pi(None, Box::new(a), Box::new(b)));
        }
        Ok(a)
    }

    fn app(&mut self) -> Result<Expr, SyntaxError> {
        let mut e = self.atom()?;
        while matches!(self.peek(), Tok::Ident(_) | Tok::Type | Tok::LParen) {
            let a = self.atom()?;
            e = Expr::App(Box::new(e), Box::new(a));
        }
        Ok(e)
    }

    fn atom(&mut self) -> Result<Expr, SyntaxError> {
        match self.peek().clone() {
            Tok::Ident(s) => {
                self.bump();
                Ok(Expr::Ident(s))
            }
            Tok::Type => {
                self.bump();
                Ok(Expr::Type)
            }
            Tok::LParen => {
                self.bump();
                let e = self.term()?;
                self.expect(Tok::RParen)?;
                Ok(e)
            }
            _ => Err(self.error(&["identifier", "`Type`", "`(`"])),
        }
    }
}

/// Parses a whole `.dk` file.
pub fn parse_file(text: &str) -> Result<Vec<Located>, SyntaxError> {
    let toks = tokenize(text)?;
    Parser { toks, pos: 0 }.file()
}

/// Parses a single term, requiring the input to end after it.
pub fn parse_term(text: &str) -> Result<Expr, SyntaxError> {
    let toks = tokenize(text)?;
    let mut p = Parser { toks, pos: 0 };
    let e = p.term()?;
    if *p.peek() != Tok::Eof {
        return Err(p.error(&["end of input"]));
    }
    Ok(e)
}
