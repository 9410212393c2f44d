//! Reading `.tffx` theories and TFF formulas from S-expressions.
//!
//! Symbols are resolved against the declarations read so far: an atom is a
//! variable when bound in scope, otherwise a declared symbol. Explicit type
//! arguments come first in an application, their count fixed by the
//! symbol's declaration.

use super::ast::{CtxEntry, Formula, Item, TffTerm, TffType, Theory};
use super::check::{is_name, Env};
use super::sexp::{read_one, FormatError, Sexp};
use crate::dkparse::Span;

/// Names bound around an expression.
#[derive(Clone, Debug, Default)]
pub struct Scope {
    pub tvars: Vec<String>,
    pub vars: Vec<String>,
}

impl Scope {
    pub fn new() -> Self {
        Scope::default()
    }

    fn has_var(&self, x: &str) -> bool {
        self.vars.iter().any(|y| y == x)
    }

    fn has_tvar(&self, a: &str) -> bool {
        self.tvars.iter().any(|b| b == a)
    }
}

fn err(s: &Sexp, msg: impl Into<String>) -> FormatError {
    FormatError::new(s.span(), msg)
}

pub fn name(s: &Sexp, what: &str) -> Result<String, FormatError> {
    let a = s.expect_atom(what)?;
    if !is_name(a) {
        return Err(err(s, format!("`{a}` is not a valid {what}")));
    }
    Ok(a.to_string())
}

pub fn read_type(env: &Env, scope: &Scope, s: &Sexp) -> Result<TffType, FormatError> {
    match s {
        Sexp::Atom(a, _) if scope.has_tvar(a) => Ok(TffType::Var(a.clone())),
        Sexp::Atom(a, _) => match env.types.get(a.as_str()) {
            Some(0) => Ok(TffType::Cons(a.clone(), vec![])),
            Some(m) => Err(err(
                s,
                format!("type constructor `{a}` expects {m} arguments"),
            )),
            None => Err(err(s, format!("unknown type `{a}`"))),
        },
        Sexp::List(xs, _) => {
            let (c, args) = xs.split_first().ok_or_else(|| err(s, "empty type"))?;
            let c = c.expect_atom("type constructor")?;
            let m = *env
                .types
                .get(c)
                .ok_or_else(|| err(s, format!("unknown type constructor `{c}`")))?;
            if m != args.len() {
                return Err(err(
                    s,
                    format!(
                        "type constructor `{c}` expects {m} arguments, got {}",
                        args.len()
                    ),
                ));
            }
            let args = args
                .iter()
                .map(|a| read_type(env, scope, a))
                .collect::<Result<_, _>>()?;
            Ok(TffType::Cons(c.to_string(), args))
        }
        Sexp::Str(..) => Err(err(s, "expected a type")),
    }
}

/// Splits `(f τ1..τm e1..en)` into type and term arguments.
fn split_app<'a>(
    s: &'a Sexp,
    symbol: &str,
    m: usize,
    n: usize,
    env: &Env,
    scope: &Scope,
    args: &'a [Sexp],
) -> Result<(Vec<TffType>, &'a [Sexp]), FormatError> {
    if args.len() != m + n {
        return Err(err(
            s,
            format!(
                "`{symbol}` expects {m} type and {n} term arguments, got {} arguments",
                args.len()
            ),
        ));
    }
    let tys = args[..m]
        .iter()
        .map(|a| read_type(env, scope, a))
        .collect::<Result<_, _>>()?;
    Ok((tys, &args[m..]))
}

pub fn read_term(env: &Env, scope: &Scope, s: &Sexp) -> Result<TffTerm, FormatError> {
    match s {
        Sexp::Atom(a, _) if scope.has_var(a) => Ok(TffTerm::Var(a.clone())),
        Sexp::Atom(a, _) => match env.funs.get(a.as_str()) {
            Some(f) if f.tvars.is_empty() && f.args.is_empty() => Ok(TffTerm::cst(a)),
            Some(_) => Err(err(s, format!("`{a}` needs arguments"))),
            None => Err(err(s, format!("unknown term `{a}`"))),
        },
        Sexp::List(xs, _) => {
            let (f, rest) = xs.split_first().ok_or_else(|| err(s, "empty term"))?;
            let f = f.expect_atom("function symbol")?;
            let sig = env
                .funs
                .get(f)
                .ok_or_else(|| err(s, format!("unknown function `{f}`")))?;
            let (tys, args) = split_app(s, f, sig.tvars.len(), sig.args.len(), env, scope, rest)?;
            let args = args
                .iter()
                .map(|a| read_term(env, scope, a))
                .collect::<Result<_, _>>()?;
            Ok(TffTerm::Fun(f.to_string(), tys, args))
        }
        Sexp::Str(..) => Err(err(s, "expected a term")),
    }
}

/// Reads a binder list `((x τ) ...)`, extending `scope`; returns the binders.
fn term_binders(
    env: &Env,
    scope: &mut Scope,
    s: &Sexp,
) -> Result<Vec<(String, TffType)>, FormatError> {
    let mut out = Vec::new();
    for b in s.expect_list("binder list")? {
        let xs = b.expect_list("binder `(x type)`")?;
        if xs.len() != 2 {
            return Err(err(b, "binder must be `(x type)`"));
        }
        let x = name(&xs[0], "variable name")?;
        let t = read_type(env, scope, &xs[1])?;
        scope.vars.push(x.clone());
        out.push((x, t));
    }
    Ok(out)
}

pub fn read_formula(env: &Env, scope: &Scope, s: &Sexp) -> Result<Formula, FormatError> {
    let mut scope = scope.clone();
    formula(env, &mut scope, s)
}

fn formula(env: &Env, scope: &mut Scope, s: &Sexp) -> Result<Formula, FormatError> {
    match s {
        Sexp::Atom(a, _) => match a.as_str() {
            "$true" => Ok(Formula::True),
            "$false" => Ok(Formula::False),
            _ => match env.preds.get(a.as_str()) {
                Some(p) if p.tvars.is_empty() && p.args.is_empty() => {
                    Ok(Formula::pred(a, vec![], vec![]))
                }
                Some(_) => Err(err(s, format!("`{a}` needs arguments"))),
                None => Err(err(s, format!("unknown proposition `{a}`"))),
            },
        },
        Sexp::Str(..) => Err(err(s, "expected a formula")),
        Sexp::List(xs, _) => {
            let (h, rest) = xs.split_first().ok_or_else(|| err(s, "empty formula"))?;
            let h = h.expect_atom("connective or predicate")?;
            let arity = |n: usize| -> Result<(), FormatError> {
                if rest.len() == n {
                    Ok(())
                } else {
                    Err(err(
                        s,
                        format!("`{h}` expects {n} arguments, got {}", rest.len()),
                    ))
                }
            };
            match h {
                "not" => {
                    arity(1)?;
                    Ok(super::ast::not(formula(env, scope, &rest[0])?))
                }
                "and" | "or" | "imp" | "iff" => {
                    if rest.len() < 2 || (matches!(h, "imp" | "iff") && rest.len() != 2) {
                        return Err(err(s, format!("`{h}` expects two arguments")));
                    }
                    let mut fs = rest
                        .iter()
                        .map(|a| formula(env, scope, a))
                        .collect::<Result<Vec<_>, _>>()?;
                    let mut acc = fs.pop().unwrap();
                    while let Some(f) = fs.pop() {
                        acc = match h {
                            "and" => Formula::and(f, acc),
                            "or" => Formula::or(f, acc),
                            "imp" => Formula::imp(f, acc),
                            _ => Formula::iff(f, acc),
                        };
                    }
                    Ok(acc)
                }
                "=" | "!=" => {
                    arity(3)?;
                    let t = read_type(env, scope, &rest[0])?;
                    let a = read_term(env, scope, &rest[1])?;
                    let b = read_term(env, scope, &rest[2])?;
                    let eq = Formula::Eq(t, a, b);
                    Ok(if h == "=" { eq } else { super::ast::not(eq) })
                }
                "forall" | "exists" => {
                    arity(2)?;
                    let depth = scope.vars.len();
                    let bs = term_binders(env, scope, &rest[0])?;
                    if bs.is_empty() {
                        return Err(err(&rest[0], "empty binder list"));
                    }
                    let mut body = formula(env, scope, &rest[1]);
                    scope.vars.truncate(depth);
                    for (x, t) in bs.into_iter().rev() {
                        body = body.map(|b| {
                            if h == "forall" {
                                Formula::forall(&x, t, b)
                            } else {
                                Formula::exists(&x, t, b)
                            }
                        });
                    }
                    body
                }
                "forall-type" | "exists-type" => {
                    arity(2)?;
                    let names = rest[0]
                        .expect_list("type variable list")?
                        .iter()
                        .map(|a| name(a, "type variable"))
                        .collect::<Result<Vec<_>, _>>()?;
                    if names.is_empty() {
                        return Err(err(&rest[0], "empty binder list"));
                    }
                    let depth = scope.tvars.len();
                    scope.tvars.extend(names.iter().cloned());
                    let mut body = formula(env, scope, &rest[1]);
                    scope.tvars.truncate(depth);
                    for a in names.into_iter().rev() {
                        body = body.map(|b| {
                            if h == "forall-type" {
                                Formula::forall_type(&a, b)
                            } else {
                                Formula::exists_type(&a, b)
                            }
                        });
                    }
                    body
                }
                p => {
                    let sig = env
                        .preds
                        .get(p)
                        .ok_or_else(|| err(s, format!("unknown predicate `{p}`")))?;
                    let (tys, args) =
                        split_app(s, p, sig.tvars.len(), sig.args.len(), env, scope, rest)?;
                    let args = args
                        .iter()
                        .map(|a| read_term(env, scope, a))
                        .collect::<Result<_, _>>()?;
                    Ok(Formula::Pred(p.to_string(), tys, args))
                }
            }
        }
    }
}

fn name_list(s: &Sexp, what: &str) -> Result<Vec<String>, FormatError> {
    s.expect_list(what)?
        .iter()
        .map(|a| name(a, "type variable"))
        .collect()
}

fn rule_ctx(env: &Env, s: &Sexp) -> Result<(Vec<CtxEntry>, Scope), FormatError> {
    let mut scope = Scope::new();
    let mut ctx = Vec::new();
    for b in s.expect_list("rule context")? {
        let xs = b.expect_list("context entry")?;
        if xs.len() != 2 {
            return Err(err(b, "context entry must be `(x type)` or `(a type)`"));
        }
        let x = name(&xs[0], "variable name")?;
        if xs[1].atom() == Some("type") {
            scope.tvars.push(x.clone());
            ctx.push(CtxEntry::TyVar(x));
        } else {
            let t = read_type(env, &scope, &xs[1])?;
            scope.vars.push(x.clone());
            ctx.push(CtxEntry::Var(x, t));
        }
    }
    Ok((ctx, scope))
}

fn item(env: &Env, s: &Sexp) -> Result<Item, FormatError> {
    let xs = s.expect_list("theory item")?;
    let head = s
        .head()
        .ok_or_else(|| err(s, "theory item must start with a keyword"))?;
    let arity = |n: usize| -> Result<(), FormatError> {
        if xs.len() == n + 1 {
            Ok(())
        } else {
            Err(err(
                s,
                format!("`{head}` item expects {n} fields, got {}", xs.len() - 1),
            ))
        }
    };
    match head {
        "type" => {
            arity(2)?;
            let arity = xs[2]
                .expect_atom("arity")?
                .parse::<usize>()
                .map_err(|_| err(&xs[2], "arity must be a natural number"))?;
            Ok(Item::TypeCons {
                name: name(&xs[1], "type name")?,
                arity,
            })
        }
        "fun" => {
            arity(4)?;
            let tvars = name_list(&xs[2], "type variable list")?;
            let scope = Scope {
                tvars: tvars.clone(),
                vars: vec![],
            };
            let args = xs[3]
                .expect_list("argument type list")?
                .iter()
                .map(|t| read_type(env, &scope, t))
                .collect::<Result<_, _>>()?;
            Ok(Item::Fun {
                name: name(&xs[1], "function name")?,
                args,
                ret: read_type(env, &scope, &xs[4])?,
                tvars,
            })
        }
        "pred" => {
            arity(3)?;
            let tvars = name_list(&xs[2], "type variable list")?;
            let scope = Scope {
                tvars: tvars.clone(),
                vars: vec![],
            };
            let args = xs[3]
                .expect_list("argument type list")?
                .iter()
                .map(|t| read_type(env, &scope, t))
                .collect::<Result<_, _>>()?;
            Ok(Item::Pred {
                name: name(&xs[1], "predicate name")?,
                tvars,
                args,
            })
        }
        "axiom" => {
            arity(2)?;
            Ok(Item::Axiom {
                name: name(&xs[1], "axiom name")?,
                formula: read_formula(env, &Scope::new(), &xs[2])?,
            })
        }
        "rewrite-term" => {
            arity(3)?;
            let (ctx, scope) = rule_ctx(env, &xs[1])?;
            Ok(Item::TermRule {
                ctx,
                lhs: read_term(env, &scope, &xs[2])?,
                rhs: read_term(env, &scope, &xs[3])?,
            })
        }
        "rewrite-prop" => {
            arity(3)?;
            let (ctx, scope) = rule_ctx(env, &xs[1])?;
            Ok(Item::PropRule {
                ctx,
                lhs: read_formula(env, &scope, &xs[2])?,
                rhs: read_formula(env, &scope, &xs[3])?,
            })
        }
        "ext" => {
            arity(1)?;
            Ok(Item::Ext(name(&xs[1], "extension rule name")?))
        }
        other => Err(err(s, format!("unknown theory item `{other}`"))),
    }
}

/// A theory together with the source position of each item.
#[derive(Clone, Debug)]
pub struct ParsedTheory {
    pub theory: Theory,
    pub spans: Vec<Span>,
}

/// Reads a `.tffx` theory. Only the structure is checked here; use
/// `wf_theory` for typing.
pub fn parse_theory(text: &str) -> Result<ParsedTheory, FormatError> {
    let s = read_one(text)?;
    let xs = s.expect_list("`(theory NAME ITEM...)`")?;
    if s.head() != Some("theory") || xs.len() < 2 {
        return Err(err(&s, "expected `(theory NAME ITEM...)`"));
    }
    let name = name(&xs[1], "theory name")?;
    let mut env = Env::new();
    let mut thy = Theory {
        name,
        items: vec![],
    };
    let mut spans = Vec::new();
    for x in &xs[2..] {
        let it = item(&env, x)?;
        thy.items.push(it);
        spans.push(x.span());
        env = Env::of(&thy);
    }
    Ok(ParsedTheory { theory: thy, spans })
}
