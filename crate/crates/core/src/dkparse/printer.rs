use super::ast::{Entry, Expr, Located};

#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
enum Prec {
    Term,
    App,
    Atom,
}

fn prec_of(e: &Expr) -> Prec {
    match e {
        Expr::Ident(_) | Expr::Type => Prec::Atom,
        Expr::App(..) => Prec::App,
        Expr::Lam(..) | Expr::Pi(..) => Prec::Term,
    }
}

fn write(e: &Expr, at: Prec, out: &mut String) {
    if prec_of(e) < at {
        out.push('(');
        write(e, Prec::Term, out);
        out.push(')');
        return;
    }
    match e {
        Expr::Ident(s) => out.push_str(s),
        Expr::Type => out.push_str("Type"),
        Expr::App(f, a) => {
            write(f, Prec::App, out);
            out.push(' ');
            write(a, Prec::Atom, out);
        }
        Expr::Lam(x, a, b) => {
            out.push_str(x);
            out.push_str(" : ");
            write(a, Prec::App, out);
            out.push_str(" => ");
            write(b, Prec::Term, out);
        }
        Expr::Pi(x, a, b) => {
            if let Some(x) = x {
                out.push_str(x);
                out.push_str(" : ");
            }
            write(a, Prec::App, out);
            out.push_str(" -> ");
            write(b, Prec::Term, out);
        }
    }
}

pub fn print_expr(e: &Expr) -> String {
    let mut s = String::new();
    write(e, Prec::Term, &mut s);
    s
}

fn app_level(e: &Expr) -> String {
    let mut s = String::new();
    write(e, Prec::App, &mut s);
    s
}

/// Canonical text of one entry, without a trailing newline.
pub fn print_entry(e: &Entry) -> String {
    match e {
        Entry::Decl { name, ty } => format!("{name} : {}.", print_expr(ty)),
        Entry::Def { name, ty, body } => {
            format!(
                "def {name} : {} :=\n  {}.",
                print_expr(ty),
                print_expr(body)
            )
        }
        Entry::Rule { ctx, lhs, rhs } => {
            let ctx: Vec<String> = ctx
                .iter()
                .map(|(x, t)| format!("{x} : {}", print_expr(t)))
                .collect();
            format!(
                "[{}] {} --> {}.",
                ctx.join(", "),
                app_level(lhs),
                print_expr(rhs)
            )
        }
        Entry::Assert { term, ty } => format!("#ASSERT {} : {}.", app_level(term), print_expr(ty)),
        Entry::Require(m) => format!("#REQUIRE {m}."),
        Entry::Comment(c) => format!("(;{c};)"),
    }
}

pub fn print_file(entries: &[Located]) -> String {
    let mut out = String::new();
    for l in entries {
        out.push_str(&print_entry(&l.entry));
        out.push('\n');
    }
    out
}
