//! Terms of the λΠ-calculus modulo.
//!
//! Bound variables are de Bruijn indices; binders keep a display name that
//! takes no part in equality, so derived `PartialEq` is α-equality.

use std::fmt;
use std::hash::{Hash, Hasher};
use std::ops::Deref;
use std::sync::Arc;

/// Qualified global name, e.g. `logic.prf`.
pub type Name = Arc<str>;

/// The two sorts of the calculus.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Sort {
    Type,
    Kind,
}

/// Display name of a binder. Always compares equal.
#[derive(Clone)]
pub struct BinderName(pub Arc<str>);

impl BinderName {
    pub fn new(s: &str) -> Self {
        BinderName(Arc::from(s))
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }
}

impl PartialEq for BinderName {
    fn eq(&self, _: &Self) -> bool {
        true
    }
}

impl Eq for BinderName {}

impl Hash for BinderName {
    fn hash<H: Hasher>(&self, _: &mut H) {}
}

impl fmt::Debug for BinderName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum TermKind {
    Var(usize),
    Const(Name),
    App(Term, Term),
    Lam(BinderName, Term, Term),
    Pi(BinderName, Term, Term),
    Sort(Sort),
}

/// A shared, immutable kernel term.
#[derive(Clone, Eq)]
pub struct Term(Arc<TermKind>);

impl PartialEq for Term {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || *self.0 == *other.0
    }
}

impl Hash for Term {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.0.hash(state)
    }
}

impl Deref for Term {
    type Target = TermKind;

    fn deref(&self) -> &TermKind {
        &self.0
    }
}

impl fmt::Debug for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &*self.0 {
            TermKind::Var(i) => write!(f, "#{i}"),
            TermKind::Const(c) => write!(f, "{c}"),
            TermKind::App(a, b) => write!(f, "({a:?} {b:?})"),
            TermKind::Lam(x, a, b) => write!(f, "(\\{x:?}:{a:?}. {b:?})"),
            TermKind::Pi(x, a, b) => write!(f, "(Pi {x:?}:{a:?}. {b:?})"),
            TermKind::Sort(Sort::Type) => write!(f, "Type"),
            TermKind::Sort(Sort::Kind) => write!(f, "Kind"),
        }
    }
}

impl Term {
    pub fn new(kind: TermKind) -> Self {
        Term(Arc::new(kind))
    }

    pub fn var(i: usize) -> Self {
        Term::new(TermKind::Var(i))
    }

    pub fn cst(name: impl Into<Name>) -> Self {
        Term::new(TermKind::Const(name.into()))
    }

    pub fn app(f: Term, a: Term) -> Self {
        Term::new(TermKind::App(f, a))
    }

    /// Left-nested application `f a1 ... an`.
    pub fn apps<I: IntoIterator<Item = Term>>(f: Term, args: I) -> Self {
        args.into_iter().fold(f, Term::app)
    }

    pub fn lam(x: &str, ty: Term, body: Term) -> Self {
        Term::new(TermKind::Lam(BinderName::new(x), ty, body))
    }

    pub fn pi(x: &str, ty: Term, body: Term) -> Self {
        Term::new(TermKind::Pi(BinderName::new(x), ty, body))
    }

    /// Non-dependent product; `cod` is given in the outer context.
    pub fn arrow(dom: Term, cod: Term) -> Self {
        Term::pi("_", dom, cod.shift(1))
    }

    pub fn typ() -> Self {
        Term::new(TermKind::Sort(Sort::Type))
    }

    pub fn kind() -> Self {
        Term::new(TermKind::Sort(Sort::Kind))
    }

    pub fn kind_ref(&self) -> &TermKind {
        &self.0
    }

    pub fn is_kind(&self) -> bool {
        matches!(&*self.0, TermKind::Sort(Sort::Kind))
    }

    pub fn as_sort(&self) -> Option<Sort> {
        match &*self.0 {
            TermKind::Sort(s) => Some(*s),
            _ => None,
        }
    }

    /// Splits `h a1 ... an` into `h` and `[a1, ..., an]`.
    pub fn unapply(&self) -> (Term, Vec<Term>) {
        let mut args = Vec::new();
        let mut head = self.clone();
        while let TermKind::App(f, a) = &*head.0 {
            args.push(a.clone());
            let next = f.clone();
            head = next;
        }
        args.reverse();
        (head, args)
    }

    /// Head constant of an application spine, if any.
    pub fn head_const(&self) -> Option<&Name> {
        let mut t = self;
        loop {
            match &*t.0 {
                TermKind::App(f, _) => t = f,
                TermKind::Const(c) => return Some(c),
                _ => return None,
            }
        }
    }

    /// Number of nodes.
    pub fn size(&self) -> usize {
        match &*self.0 {
            TermKind::Var(_) | TermKind::Const(_) | TermKind::Sort(_) => 1,
            TermKind::App(a, b) | TermKind::Lam(_, a, b) | TermKind::Pi(_, a, b) => {
                1 + a.size() + b.size()
            }
        }
    }

    /// Adds `d` to every variable at or above `cutoff`.
    pub fn shift_from(&self, d: isize, cutoff: usize) -> Term {
        if d == 0 || !self.has_free_var_from(cutoff) {
            return self.clone();
        }
        match &*self.0 {
            TermKind::Var(i) if *i >= cutoff => {
                let j = *i as isize + d;
                debug_assert!(j >= 0, "negative de Bruijn index");
                Term::var(j as usize)
            }
            TermKind::Var(_) | TermKind::Const(_) | TermKind::Sort(_) => self.clone(),
            TermKind::App(a, b) => Term::app(a.shift_from(d, cutoff), b.shift_from(d, cutoff)),
            TermKind::Lam(x, a, b) => Term::new(TermKind::Lam(
                x.clone(),
                a.shift_from(d, cutoff),
                b.shift_from(d, cutoff + 1),
            )),
            TermKind::Pi(x, a, b) => Term::new(TermKind::Pi(
                x.clone(),
                a.shift_from(d, cutoff),
                b.shift_from(d, cutoff + 1),
            )),
        }
    }

    pub fn shift(&self, d: isize) -> Term {
        self.shift_from(d, 0)
    }

    /// True if some variable with index >= `cutoff` (relative to this term) occurs free.
    pub fn has_free_var_from(&self, cutoff: usize) -> bool {
        match &*self.0 {
            TermKind::Var(i) => *i >= cutoff,
            TermKind::Const(_) | TermKind::Sort(_) => false,
            TermKind::App(a, b) => a.has_free_var_from(cutoff) || b.has_free_var_from(cutoff),
            TermKind::Lam(_, a, b) | TermKind::Pi(_, a, b) => {
                a.has_free_var_from(cutoff) || b.has_free_var_from(cutoff + 1)
            }
        }
    }

    /// True if the free variable with index `i` occurs.
    pub fn has_var(&self, i: usize) -> bool {
        match &*self.0 {
            TermKind::Var(j) => *j == i,
            TermKind::Const(_) | TermKind::Sort(_) => false,
            TermKind::App(a, b) => a.has_var(i) || b.has_var(i),
            TermKind::Lam(_, a, b) | TermKind::Pi(_, a, b) => a.has_var(i) || b.has_var(i + 1),
        }
    }

    /// Collects the free variables (as indices relative to this term) into `out`.
    pub fn free_vars(&self, out: &mut Vec<usize>) {
        fn go(t: &Term, depth: usize, out: &mut Vec<usize>) {
            match &**t {
                TermKind::Var(i) if *i >= depth => {
                    let v = i - depth;
                    if !out.contains(&v) {
                        out.push(v);
                    }
                }
                TermKind::Var(_) | TermKind::Const(_) | TermKind::Sort(_) => {}
                TermKind::App(a, b) => {
                    go(a, depth, out);
                    go(b, depth, out);
                }
                TermKind::Lam(_, a, b) | TermKind::Pi(_, a, b) => {
                    go(a, depth, out);
                    go(b, depth + 1, out);
                }
            }
        }
        go(self, 0, out)
    }

    /// Renames every binder through `rename`, keeping the structure.
    pub fn with_binder_names(&self, rename: &mut impl FnMut(&str) -> String) -> Term {
        match &*self.0 {
            TermKind::Var(_) | TermKind::Const(_) | TermKind::Sort(_) => self.clone(),
            TermKind::App(a, b) => {
                Term::app(a.with_binder_names(rename), b.with_binder_names(rename))
            }
            TermKind::Lam(x, a, b) => Term::lam(
                &rename(x.as_str()),
                a.with_binder_names(rename),
                b.with_binder_names(rename),
            ),
            TermKind::Pi(x, a, b) => Term::pi(
                &rename(x.as_str()),
                a.with_binder_names(rename),
                b.with_binder_names(rename),
            ),
        }
    }
}
