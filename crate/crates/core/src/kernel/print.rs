//! Diagnostic printer for kernel terms, in the surface syntax.

use super::term::{Sort, Term, TermKind};

/// Prints `t` with `names` naming the enclosing context (innermost last).
/// Binder names are primed as needed so the output reads back unambiguously.
pub fn pretty(t: &Term, names: &[String]) -> String {
    let mut scope: Vec<String> = names.to_vec();
    let mut out = String::new();
    write_term(t, &mut scope, &mut out, Prec::Top);
    out
}

pub fn pretty_closed(t: &Term) -> String {
    pretty(t, &[])
}

#[derive(Clone, Copy, PartialEq, PartialOrd)]
enum Prec {
    Top,
    App,
    Atom,
}

fn fresh(base: &str, scope: &[String], body: &Term) -> String {
    let base = if base.is_empty() { "x" } else { base };
    let mut name = base.to_string();
    // A name is unusable if it already names a binder that the body can see.
    while scope
        .iter()
        .rev()
        .enumerate()
        .any(|(i, n)| *n == name && body.has_var(i + 1))
    {
        name.push('\'');
    }
    name
}

fn write_term(t: &Term, scope: &mut Vec<String>, out: &mut String, prec: Prec) {
    match &**t {
        TermKind::Var(i) => match scope.len().checked_sub(i + 1) {
            Some(k) => out.push_str(&scope[k]),
            None => out.push_str(&format!("#{i}")),
        },
        TermKind::Const(c) => out.push_str(c),
        TermKind::Sort(Sort::Type) => out.push_str("Type"),
        TermKind::Sort(Sort::Kind) => out.push_str("Kind"),
        TermKind::App(_, _) => {
            let (h, args) = t.unapply();
            if prec > Prec::App {
                out.push('(');
            }
            write_term(&h, scope, out, Prec::Atom);
            for a in &args {
                out.push(' ');
                write_term(a, scope, out, Prec::Atom);
            }
            if prec > Prec::App {
                out.push(')');
            }
        }
        TermKind::Lam(x, a, b) | TermKind::Pi(x, a, b) => {
            let is_pi = matches!(&**t, TermKind::Pi(..));
            if prec > Prec::Top {
                out.push('(');
            }
            if is_pi && !b.has_var(0) {
                write_term(a, scope, out, Prec::App);
                out.push_str(" -> ");
                scope.push(String::from("_"));
                write_term(b, scope, out, Prec::Top);
                scope.pop();
            } else {
                let name = fresh(x.as_str(), scope, b);
                out.push_str(&name);
                out.push_str(" : ");
                write_term(a, scope, out, Prec::App);
                out.push_str(if is_pi { " -> " } else { " => " });
                scope.push(name);
                write_term(b, scope, out, Prec::Top);
                scope.pop();
            }
            if prec > Prec::Top {
                out.push(')');
            }
        }
    }
}
