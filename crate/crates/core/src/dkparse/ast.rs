//! Surface syntax trees.

/// Source position, 1-based.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Span {
    pub line: u32,
    pub col: u32,
}

impl std::fmt::Display for Span {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}:{}", self.line, self.col)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Expr {
    /// A plain or qualified (`mod.id`) identifier.
    Ident(String),
    Type,
    App(Box<Expr>, Box<Expr>),
    Lam(String, Box<Expr>, Box<Expr>),
    /// `x : A -> B`, or `A -> B` when the binder is `None`.
    Pi(Option<String>, Box<Expr>, Box<Expr>),
}

impl Expr {
    pub fn ident(s: &str) -> Expr {
        Expr::Ident(s.to_string())
    }

    pub fn app(f: Expr, a: Expr) -> Expr {
        Expr::App(Box::new(f), Box::new(a))
    }

    pub fn apps<I: IntoIterator<Item = Expr>>(f: Expr, args: I) -> Expr {
        args.into_iter().fold(f, Expr::app)
    }

    pub fn lam(x: &str, a: Expr, b: Expr) -> Expr {
        Expr::Lam(x.to_string(), Box::new(a), Box::new(b))
    }

    pub fn pi(x: &str, a: Expr, b: Expr) -> Expr {
        Expr::Pi(Some(x.to_string()), Box::new(a), Box::new(b))
    }

    pub fn arrow(a: Expr, b: Expr) -> Expr {
        Expr::Pi(None, Box::new(a), Box::new(b))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Entry {
    Decl {
        name: String,
        ty: Expr,
    },
    Def {
        name: String,
        ty: Expr,
        body: Expr,
    },
    Rule {
        ctx: Vec<(String, Expr)>,
        lhs: Expr,
        rhs: Expr,
    },
    Assert {
        term: Expr,
        ty: Expr,
    },
    Require(String),
    Comment(String),
}

/// An entry with the position of its first token. Equality ignores the span.
#[derive(Clone, Debug)]
pub struct Located {
    pub span: Span,
    pub entry: Entry,
}

impl PartialEq for Located {
    fn eq(&self, other: &Self) -> bool {
        self.entry == other.entry
    }
}

impl Eq for Located {}
