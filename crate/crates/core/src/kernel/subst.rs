//! Substitution on de Bruijn terms.

use super::term::{BinderName, Term, TermKind};

/// A simultaneous substitution for the free variables of a term.
///
/// Slot `i` holds the replacement for `Var(i)`; replacements live in the same
/// context as the term they are applied to. Empty slots leave the variable alone.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Substitution {
    pub names: Vec<BinderName>,
    pub values: Vec<Option<Term>>,
}

impl Substitution {
    pub fn new(n: usize) -> Self {
        Substitution {
            names: (0..n).map(|i| BinderName::new(&format!("x{i}"))).collect(),
            values: vec![None; n],
        }
    }

    /// Builds a substitution whose slots are named after `names`, innermost last.
    pub fn for_context(names: &[BinderName]) -> Self {
        let n = names.len();
        Substitution {
            names: names.iter().rev().cloned().collect(),
            values: vec![None; n],
        }
    }

    pub fn bind(&mut self, i: usize, t: Term) {
        if i >= self.values.len() {
            self.values.resize(i + 1, None);
            while self.names.len() < self.values.len() {
                let k = self.names.len();
                self.names.push(BinderName::new(&format!("x{k}")));
            }
        }
        self.values[i] = Some(t);
    }

    pub fn get(&self, i: usize) -> Option<&Term> {
        self.values.get(i).and_then(|v| v.as_ref())
    }

    /// Looks a slot up by its display name.
    pub fn get_named(&self, name: &str) -> Option<&Term> {
        self.names
            .iter()
            .position(|n| n.as_str() == name)
            .and_then(|i| self.get(i))
    }
}

/// Applies `sigma` to `t` simultaneously, without capture.
pub fn substitute(t: &Term, sigma: &Substitution) -> Term {
    fn go(t: &Term, sigma: &Substitution, depth: usize) -> Term {
        if !t.has_free_var_from(depth) {
            return t.clone();
        }
        match &**t {
            TermKind::Var(i) => match sigma.get(i - depth) {
                Some(v) => v.shift(depth as isize),
                None => t.clone(),
            },
            TermKind::Const(_) | TermKind::Sort(_) => t.clone(),
            TermKind::App(a, b) => Term::app(go(a, sigma, depth), go(b, sigma, depth)),
            TermKind::Lam(x, a, b) => Term::new(TermKind::Lam(
                x.clone(),
                go(a, sigma, depth),
                go(b, sigma, depth + 1),
            )),
            TermKind::Pi(x, a, b) => Term::new(TermKind::Pi(
                x.clone(),
                go(a, sigma, depth),
                go(b, sigma, depth + 1),
            )),
        }
    }
    go(t, sigma, 0)
}

/// Replaces `Var(i)` by `vals[i]` for `i < vals.len()` and lowers the other
/// free variables by `vals.len()`. The values live in the outer context.
pub fn instantiate_many(t: &Term, vals: &[Term]) -> Term {
    fn go(t: &Term, vals: &[Term], depth: usize) -> Term {
        if !t.has_free_var_from(depth) {
            return t.clone();
        }
        match &**t {
            TermKind::Var(i) => {
                let k = i - depth;
                if k < vals.len() {
                    vals[k].shift(depth as isize)
                } else {
                    Term::var(i - vals.len())
                }
            }
            TermKind::Const(_) | TermKind::Sort(_) => t.clone(),
            TermKind::App(a, b) => Term::app(go(a, vals, depth), go(b, vals, depth)),
            TermKind::Lam(x, a, b) => Term::new(TermKind::Lam(
                x.clone(),
                go(a, vals, depth),
                go(b, vals, depth + 1),
            )),
            TermKind::Pi(x, a, b) => Term::new(TermKind::Pi(
                x.clone(),
                go(a, vals, depth),
                go(b, vals, depth + 1),
            )),
        }
    }
    go(t, vals, 0)
}

/// β-instantiation: `body` lives under one binder, `arg` outside it.
pub fn instantiate(body: &Term, arg: &Term) -> Term {
    instantiate_many(body, std::slice::from_ref(arg))
}

/// Abstracts the free variable `Var(k)`: the result lives under one more
/// binder, which stands for the old `Var(k)`. Other free variables are raised
/// by one, so `instantiate(abstract_var(t, k), Var(k)) == t`.
pub fn abstract_var(t: &Term, k: usize) -> Term {
    fn go(t: &Term, k: usize, depth: usize) -> Term {
        if !t.has_free_var_from(depth) {
            return t.clone();
        }
        match &**t {
            TermKind::Var(i) => {
                let j = i - depth;
                if j == k {
                    Term::var(depth)
                } else {
                    Term::var(i + 1)
                }
            }
            TermKind::Const(_) | TermKind::Sort(_) => t.clone(),
            TermKind::App(a, b) => Term::app(go(a, k, depth), go(b, k, depth)),
            TermKind::Lam(x, a, b) => Term::new(TermKind::Lam(
                x.clone(),
                go(a, k, depth),
                go(b, k, depth + 1),
            )),
            TermKind::Pi(x, a, b) => Term::new(TermKind::Pi(
                x.clone(),
                go(a, k, depth),
                go(b, k, depth + 1),
            )),
        }
    }
    go(t, k, 0)
}
