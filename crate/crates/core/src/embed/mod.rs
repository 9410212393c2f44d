//! Embedding of typed first-order theories into the logical framework.
//!
//! Connectives and quantifiers become constants of the `logic` module; a
//! theory `T` becomes a module `T` whose constants are its symbols, axioms
//! and rewrite rules.

use std::fmt;
use std::str::FromStr;

use crate::dkparse::{KEntry, Names};
use crate::kernel::{BinderName, Term};
use crate::session::{resolve_text, CheckError, Session};
use crate::tff::{CtxEntry, Formula, Item, TffContext, TffTerm, TffType, Theory};

pub const LOGIC: &str = "logic";
pub const LOGIC_DECLS: &str = include_str!("logic.dk");
pub const LOGIC_RULES: &str = include_str!("logic_rules.dk");

/// Modules a theory may not be named after.
pub const RESERVED_MODULES: &[&str] = &[LOGIC, crate::llproof::RULES, crate::llproof::CERT];

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub enum Mode {
    /// Connectives and rule constants stay abstract.
    Deep,
    /// `prf` and the rule constants compute.
    #[default]
    Shallow,
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Mode::Deep => "deep",
            Mode::Shallow => "shallow",
        })
    }
}

impl FromStr for Mode {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "deep" => Ok(Mode::Deep),
            "shallow" => Ok(Mode::Shallow),
            _ => Err(format!("unknown mode `{s}` (expected deep or shallow)")),
        }
    }
}

/// Source text of the `logic` module.
pub fn logic_text(mode: Mode) -> String {
    match mode {
        Mode::Deep => LOGIC_DECLS.to_string(),
        Mode::Shallow => format!("{LOGIC_DECLS}\n{LOGIC_RULES}"),
    }
}

/// The resolved `logic` module.
pub fn prelude(mode: Mode) -> Vec<KEntry> {
    resolve_text(&mut Names::new(), LOGIC, &logic_text(mode)).expect("the logic prelude resolves")
}

pub fn logic(c: &str) -> Term {
    Term::cst(format!("{LOGIC}.{c}"))
}

pub fn prf(p: Term) -> Term {
    Term::app(logic("prf"), p)
}

pub fn term_of(ty: Term) -> Term {
    Term::app(logic("term"), ty)
}

pub fn false_() -> Term {
    logic("False")
}

/// The constant for symbol `f` of theory `thy`.
pub fn sym(thy: &str, f: &str) -> Term {
    Term::cst(format!("{thy}.{f}"))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Binder {
    Type,
    Term,
    Hyp,
}

/// Named binders in scope, innermost last. Lookups are kind-aware so a type
/// variable and a term variable may share a name.
#[derive(Clone, Debug, Default)]
pub struct KScope {
    stack: Vec<(Binder, String)>,
}

impl KScope {
    pub fn new() -> Self {
        KScope::default()
    }

    pub fn push(&mut self, kind: Binder, x: &str) {
        self.stack.push((kind, x.to_string()));
    }

    pub fn pop(&mut self) {
        self.stack.pop();
    }

    pub fn len(&self) -> usize {
        self.stack.len()
    }

    pub fn is_empty(&self) -> bool {
        self.stack.is_empty()
    }

    pub fn truncate(&mut self, n: usize) {
        self.stack.truncate(n);
    }

    /// De Bruijn index of the innermost binder of `kind` named `x`.
    pub fn index(&self, kind: Binder, x: &str) -> Option<usize> {
        self.stack
            .iter()
            .rev()
            .position(|(k, y)| *k == kind && y == x)
    }

    pub fn binds(&self, x: &str) -> bool {
        self.stack.iter().any(|(_, y)| y == x)
    }

    pub fn names(&self) -> Vec<String> {
        self.stack.iter().map(|(_, x)| x.clone()).collect()
    }
}

// An unbound name becomes an unqualified constant, which the kernel then
// rejects as unknown.
fn lookup(sc: &KScope, kind: Binder, x: &str) -> Term {
    sc.index(kind, x)
        .map(Term::var)
        .unwrap_or_else(|| Term::cst(x))
}

pub fn translate_type(thy: &str, sc: &KScope, t: &TffType) -> Term {
    match t {
        TffType::Var(a) => lookup(sc, Binder::Type, a),
        TffType::Cons(c, args) => {
            Term::apps(sym(thy, c), args.iter().map(|a| translate_type(thy, sc, a)))
        }
    }
}

pub fn translate_term(thy: &str, sc: &KScope, e: &TffTerm) -> Term {
    match e {
        TffTerm::Var(x) => lookup(sc, Binder::Term, x),
        TffTerm::Fun(f, tys, args) => Term::apps(
            sym(thy, f),
            tys.iter()
                .map(|t| translate_type(thy, sc, t))
                .chain(args.iter().map(|a| translate_term(thy, sc, a))),
        ),
    }
}

pub fn translate_formula(thy: &str, sc: &mut KScope, f: &Formula) -> Term {
    let bin = |c: &str, a: &Formula, b: &Formula, sc: &mut KScope| {
        let a = translate_formula(thy, sc, a);
        let b = translate_formula(thy, sc, b);
        Term::apps(logic(c), [a, b])
    };
    match f {
        Formula::True => logic("True"),
        Formula::False => logic("False"),
        Formula::Not(a) => Term::app(logic("not"), translate_formula(thy, sc, a)),
        Formula::And(a, b) => bin("and", a, b, sc),
        Formula::Or(a, b) => bin("or", a, b, sc),
        Formula::Imp(a, b) => bin("imp", a, b, sc),
        Formula::Iff(a, b) => bin("eqv", a, b, sc),
        Formula::Eq(ty, a, b) => Term::apps(
            logic("eq"),
            [
                translate_type(thy, sc, ty),
                translate_term(thy, sc, a),
                translate_term(thy, sc, b),
            ],
        ),
        Formula::Pred(p, tys, args) => Term::apps(
            sym(thy, p),
            tys.iter()
                .map(|t| translate_type(thy, sc, t))
                .chain(args.iter().map(|a| translate_term(thy, sc, a))),
        ),
        Formula::Forall(x, ty, body) | Formula::Exists(x, ty, body) => {
            let q = if matches!(f, Formula::Forall(..)) {
                "forall"
            } else {
                "exists"
            };
            let ty = translate_type(thy, sc, ty);
            Term::apps(logic(q), [ty.clone(), abstract_term(thy, sc, x, ty, body)])
        }
        Formula::ForallType(a, body) | Formula::ExistsType(a, body) => {
            let q = if matches!(f, Formula::ForallType(..)) {
                "foralltype"
            } else {
                "existstype"
            };
            Term::app(logic(q), abstract_type(thy, sc, a, body))
        }
    }
}

/// `λx : term ty. ⟦body⟧`, with `ty` already translated in `sc`.
pub fn abstract_term(thy: &str, sc: &mut KScope, x: &str, ty: Term, body: &Formula) -> Term {
    sc.push(Binder::Term, x);
    let b = translate_formula(thy, sc, body);
    sc.pop();
    Term::lam(x, term_of(ty), b)
}

/// `λa : type. ⟦body⟧`.
pub fn abstract_type(thy: &str, sc: &mut KScope, a: &str, body: &Formula) -> Term {
    sc.push(Binder::Type, a);
    let b = translate_formula(thy, sc, body);
    sc.pop();
    Term::lam(a, logic("type"), b)
}

/// Translates a rule context, leaving its binders pushed on `sc`.
pub fn translate_context(thy: &str, sc: &mut KScope, ctx: &[CtxEntry]) -> Vec<(BinderName, Term)> {
    ctx.iter()
        .map(|e| match e {
            CtxEntry::TyVar(a) => {
                sc.push(Binder::Type, a);
                (BinderName::new(a), logic("type"))
            }
            CtxEntry::Var(x, ty) => {
                let t = term_of(translate_type(thy, sc, ty));
                sc.push(Binder::Term, x);
                (BinderName::new(x), t)
            }
        })
        .collect()
}

/// Type variables first, then term variables.
pub fn context_entries(ctx: &TffContext) -> Vec<CtxEntry> {
    ctx.tvars
        .iter()
        .map(|a| CtxEntry::TyVar(a.clone()))
        .chain(
            ctx.vars
                .iter()
                .map(|(x, t)| CtxEntry::Var(x.clone(), t.clone())),
        )
        .collect()
}

// Π a1..am : type. term τ1 -> .. -> term τn -> cod
fn scheme(
    thy: &str,
    tvars: &[String],
    args: &[TffType],
    cod: impl FnOnce(&KScope) -> Term,
) -> Term {
    let mut sc = KScope::new();
    for a in tvars {
        sc.push(Binder::Type, a);
    }
    let mut t = cod(&sc);
    for a in args.iter().rev() {
        t = Term::arrow(term_of(translate_type(thy, &sc, a)), t);
    }
    for a in tvars.iter().rev() {
        t = Term::pi(a, logic("type"), t);
    }
    t
}

pub fn translate_item(thy: &str, it: &Item) -> KEntry {
    let q = |n: &str| crate::dkparse::scope::qualify(thy, n);
    match it {
        Item::TypeCons { name, arity } => {
            let mut t = logic("type");
            for _ in 0..*arity {
                t = Term::arrow(logic("type"), t);
            }
            KEntry::Decl {
                name: q(name),
                ty: t,
            }
        }
        Item::Fun {
            name,
            tvars,
            args,
            ret,
        } => KEntry::Decl {
            name: q(name),
            ty: scheme(thy, tvars, args, |sc| term_of(translate_type(thy, sc, ret))),
        },
        Item::Pred { name, tvars, args } => KEntry::Decl {
            name: q(name),
            ty: scheme(thy, tvars, args, |_| logic("Prop")),
        },
        Item::Axiom { name, formula } => KEntry::Decl {
            name: q(name),
            ty: prf(translate_formula(thy, &mut KScope::new(), formula)),
        },
        Item::TermRule { ctx, lhs, rhs } => {
            let mut sc = KScope::new();
            let ctx = translate_context(thy, &mut sc, ctx);
            KEntry::Rule {
                ctx,
                lhs: translate_term(thy, &sc, lhs),
                rhs: translate_term(thy, &sc, rhs),
            }
        }
        Item::PropRule { ctx, lhs, rhs } => {
            let mut sc = KScope::new();
            let ctx = translate_context(thy, &mut sc, ctx);
            KEntry::Rule {
                ctx,
                lhs: translate_formula(thy, &mut sc, lhs),
                rhs: translate_formula(thy, &mut sc, rhs),
            }
        }
        Item::Ext(name) => {
            let rule = crate::llproof::ext::builtin(name)
                .expect("extension rules are checked before translation");
            KEntry::Decl {
                name: rule.constant(thy),
                ty: rule.kernel_type(thy),
            }
        }
    }
}

/// The module for `thy`: a requirement on `logic` followed by one entry per
/// item.
pub fn translate_theory(thy: &Theory) -> Vec<KEntry> {
    std::iter::once(KEntry::Require(LOGIC.to_string()))
        .chain(thy.items.iter().map(|it| translate_item(&thy.name, it)))
        .collect()
}

/// Loads the `logic` module into `sess`.
pub fn load_prelude(sess: &mut Session, mode: Mode) -> Result<Vec<KEntry>, CheckError> {
    let entries = prelude(mode);
    sess.load_kentries(LOGIC, &entries)?;
    Ok(entries)
}

/// Loads the translation of `thy` into `sess`, which must hold `logic`.
pub fn load_theory(sess: &mut Session, thy: &Theory) -> Result<Vec<KEntry>, CheckError> {
    let entries = translate_theory(thy);
    sess.load_kentries(&thy.name, &entries)?;
    Ok(entries)
}
