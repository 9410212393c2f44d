//! Name resolution between surface expressions and kernel terms.
//!
//! An identifier resolves to, in order: the nearest local binder, the
//! constant `cur.x` of the current module, or the unique `m.x` among all
//! loaded modules.

use std::collections::HashMap;

use super::ast::{Entry, Expr};
use crate::kernel::{BinderName, Name, Sort, Term, TermKind};

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum ScopeError {
    #[error("unbound identifier `{0}`")]
    Unbound(String),
    #[error("ambiguous identifier `{0}`: could be {alts}", alts = .1.join(", "))]
    Ambiguous(String, Vec<String>),
    #[error("free variable `{0}` of the right-hand side does not occur in the left-hand side")]
    FvViolation(String),
}

/// Short-name table for every loaded constant.
#[derive(Clone, Debug, Default)]
pub struct Names {
    short: HashMap<String, Vec<Name>>,
    all: HashMap<Name, ()>,
}

pub fn short_name(q: &str) -> &str {
    q.rsplit_once('.').map(|(_, s)| s).unwrap_or(q)
}

pub fn qualify(module: &str, x: &str) -> Name {
    Name::from(format!("{module}.{x}"))
}

impl Names {
    pub fn new() -> Self {
        Names::default()
    }

    pub fn insert(&mut self, q: &Name) {
        if self.all.insert(q.clone(), ()).is_none() {
            self.short
                .entry(short_name(q).to_string())
                .or_default()
                .push(q.clone());
        }
    }

    pub fn contains(&self, q: &str) -> bool {
        self.all.contains_key(q)
    }

    pub fn resolve(&self, cur: &str, x: &str) -> Result<Name, ScopeError> {
        if x.contains('.') {
            return match self.all.get_key_value(x) {
                Some((q, _)) => Ok(q.clone()),
                None => Err(ScopeError::Unbound(x.to_string())),
            };
        }
        let cands = self.short.get(x).map(|v| v.as_slice()).unwrap_or(&[]);
        let local = format!("{cur}.{x}");
        if let Some(q) = cands.iter().find(|q| ***q == *local) {
            return Ok(q.clone());
        }
        match cands {
            [] => Err(ScopeError::Unbound(x.to_string())),
            [q] => Ok(q.clone()),
            many => Err(ScopeError::Ambiguous(
                x.to_string(),
                many.iter().map(|q| q.to_string()).collect(),
            )),
        }
    }
}

/// A resolved entry: every constant is qualified.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum KEntry {
    Decl {
        name: Name,
        ty: Term,
    },
    Def {
        name: Name,
        ty: Term,
        body: Term,
    },
    Rule {
        ctx: Vec<(BinderName, Term)>,
        lhs: Term,
        rhs: Term,
    },
    Assert {
        term: Term,
        ty: Term,
    },
    Require(String),
    Comment(String),
}

pub fn elaborate(
    names: &Names,
    cur: &str,
    locals: &mut Vec<String>,
    e: &Expr,
) -> Result<Term, ScopeError> {
    Ok(match e {
        Expr::Type => Term::typ(),
        Expr::Ident(x) => {
            if let Some(k) = locals.iter().rposition(|l| l == x) {
                Term::var(locals.len() - 1 - k)
            } else {
                Term::cst(names.resolve(cur, x)?)
            }
        }
        Expr::App(f, a) => Term::app(
            elaborate(names, cur, locals, f)?,
            elaborate(names, cur, locals, a)?,
        ),
        Expr::Lam(x, a, b) => {
            let a = elaborate(names, cur, locals, a)?;
            locals.push(x.clone());
            let b = elaborate(names, cur, locals, b);
            locals.pop();
            Term::new(TermKind::Lam(BinderName::new(x), a, b?))
        }
        Expr::Pi(x, a, b) => {
            let a = elaborate(names, cur, locals, a)?;
            // An anonymous binder can never be referenced.
            locals.push(x.clone().unwrap_or_default());
            let b = elaborate(names, cur, locals, b);
            locals.pop();
            let x = x.as_deref().unwrap_or("_");
            Term::new(TermKind::Pi(BinderName::new(x), a, b?))
        }
    })
}

/// Resolves one entry of module `cur`. `names` must already contain every
/// earlier declaration.
pub fn elaborate_entry(names: &Names, cur: &str, e: &Entry) -> Result<KEntry, ScopeError> {
    let closed = |x: &Expr| elaborate(names, cur, &mut Vec::new(), x);
    Ok(match e {
        Entry::Decl { name, ty } => KEntry::Decl {
            name: qualify(cur, name),
            ty: closed(ty)?,
        },
        Entry::Def { name, ty, body } => KEntry::Def {
            name: qualify(cur, name),
            ty: closed(ty)?,
            body: closed(body)?,
        },
        Entry::Rule { ctx, lhs, rhs } => {
            let mut locals = Vec::new();
            let mut kctx = Vec::new();
            for (x, t) in ctx {
                kctx.push((BinderName::new(x), elaborate(names, cur, &mut locals, t)?));
                locals.push(x.clone());
            }
            let lhs = elaborate(names, cur, &mut locals, lhs)?;
            let rhs = elaborate(names, cur, &mut locals, rhs).map_err(|e| match e {
                ScopeError::Unbound(x) => ScopeError::FvViolation(x),
                e => e,
            })?;
            KEntry::Rule {
                ctx: kctx,
                lhs,
                rhs,
            }
        }
        Entry::Assert { term, ty } => KEntry::Assert {
            term: closed(term)?,
            ty: closed(ty)?,
        },
        Entry::Require(m) => KEntry::Require(m.clone()),
        Entry::Comment(c) => KEntry::Comment(c.clone()),
    })
}

fn is_ident(s: &str) -> bool {
    let mut cs = s.chars();
    matches!(cs.next(), Some(c) if c.is_ascii_alphabetic() || c == '_')
        && cs.all(|c| c.is_ascii_alphanumeric() || c == '_' || c == '\'')
        && s != "Type"
        && s != "def"
}

fn fresh_binder(x: &str, locals: &[String]) -> String {
    let mut x = if is_ident(x) {
        x.to_string()
    } else {
        "x".to_string()
    };
    while locals.contains(&x) {
        x.push('\'');
    }
    x
}

/// Turns a kernel term back into surface syntax for module `cur`.
///
/// Constants print short when that resolves back to the same name and no
/// local binder hides it; binders are primed until distinct.
pub fn unelaborate(names: &Names, cur: &str, locals: &mut Vec<String>, t: &Term) -> Expr {
    match &**t {
        TermKind::Sort(Sort::Type) => Expr::Type,
        TermKind::Sort(Sort::Kind) => Expr::ident("Kind"),
        TermKind::Var(i) => match locals.len().checked_sub(i + 1) {
            Some(k) => Expr::Ident(locals[k].clone()),
            None => Expr::Ident(format!("#{i}")),
        },
        TermKind::Const(q) => {
            let s = short_name(q);
            let short_ok = !locals.iter().any(|l| l == s)
                && names.resolve(cur, s).map(|r| r == *q).unwrap_or(false);
            Expr::Ident(if short_ok {
                s.to_string()
            } else {
                q.to_string()
            })
        }
        TermKind::App(f, a) => Expr::app(
            unelaborate(names, cur, locals, f),
            unelaborate(names, cur, locals, a),
        ),
        TermKind::Lam(x, a, b) => {
            let a = unelaborate(names, cur, locals, a);
            let x = fresh_binder(x.as_str(), locals);
            locals.push(x.clone());
            let b = unelaborate(names, cur, locals, b);
            locals.pop();
            Expr::Lam(x, Box::new(a), Box::new(b))
        }
        TermKind::Pi(x, a, b) => {
            let a = unelaborate(names, cur, locals, a);
            if b.has_var(0) {
                let x = fresh_binder(x.as_str(), locals);
                locals.push(x.clone());
                let b = unelaborate(names, cur, locals, b);
                locals.pop();
                Expr::Pi(Some(x), Box::new(a), Box::new(b))
            } else {
                locals.push(String::new());
                let b = unelaborate(names, cur, locals, b);
                locals.pop();
                Expr::Pi(None, Box::new(a), Box::new(b))
            }
        }
    }
}

pub fn unelaborate_entry(names: &Names, cur: &str, e: &KEntry) -> Entry {
    let closed = |t: &Term| unelaborate(names, cur, &mut Vec::new(), t);
    match e {
        KEntry::Decl { name, ty } => Entry::Decl {
            name: short_name(name).to_string(),
            ty: closed(ty),
        },
        KEntry::Def { name, ty, body } => Entry::Def {
            name: short_name(name).to_string(),
            ty: closed(ty),
            body: closed(body),
        },
        KEntry::Rule { ctx, lhs, rhs } => {
            let mut locals = Vec::new();
            let mut sctx = Vec::new();
            for (x, t) in ctx {
                let t = unelaborate(names, cur, &mut locals, t);
                let x = fresh_binder(x.as_str(), &locals);
                locals.push(x.clone());
                sctx.push((x, t));
            }
            Entry::Rule {
                ctx: sctx,
                lhs: unelaborate(names, cur, &mut locals, lhs),
                rhs: unelaborate(names, cur, &mut locals, rhs),
            }
        }
        KEntry::Assert { term, ty } => Entry::Assert {
            term: closed(term),
            ty: closed(ty),
        },
        KEntry::Require(m) => Entry::Require(m.clone()),
        KEntry::Comment(c) => Entry::Comment(c.clone()),
    }
}
