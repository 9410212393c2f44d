//! Reader for `.llpx` certificates.

use super::ast::{Abstraction, LLProof, LLRule, TypeAbstraction};
use crate::tff::check::instantiate;
use crate::tff::parse::name;
use crate::tff::sexp::{read_one, FormatError, Sexp};
use crate::tff::{read_formula, read_term, read_type, Env, Formula, Scope, TffTerm, TffType};

/// A goal with its refutation, over a named theory.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Certificate {
    pub name: String,
    /// A theory name or a path to a `.tffx` file.
    pub theory: String,
    pub goal: Formula,
    pub proof: LLProof,
}

fn err(s: &Sexp, msg: impl Into<String>) -> FormatError {
    FormatError::new(s.span(), msg)
}

struct Header<'a> {
    name: String,
    theory: String,
    goal: &'a Sexp,
    proof: &'a Sexp,
}

fn header(s: &Sexp) -> Result<Header<'_>, FormatError> {
    let shape = "`(certificate NAME (theory REF) (goal F) (proof NODE))`";
    let xs = s.expect_list(shape)?;
    if s.head() != Some("certificate") || xs.len() != 5 {
        return Err(err(s, format!("expected {shape}")));
    }
    fn field<'a>(x: &'a Sexp, tag: &str) -> Result<&'a Sexp, FormatError> {
        match x.list() {
            Some([h, v]) if h.atom() == Some(tag) => Ok(v),
            _ => Err(err(x, format!("expected `({tag} ...)`"))),
        }
    }
    let theory = match field(&xs[2], "theory")? {
        Sexp::Atom(a, _) | Sexp::Str(a, _) => a.clone(),
        other => return Err(err(other, "expected a theory name or path")),
    };
    Ok(Header {
        name: name(&xs[1], "certificate name")?,
        theory,
        goal: field(&xs[3], "goal")?,
        proof: field(&xs[4], "proof")?,
    })
}

/// The theory a certificate refers to, read without resolving anything else.
pub fn theory_ref(text: &str) -> Result<String, FormatError> {
    Ok(header(&read_one(text)?)?.theory)
}

/// Reads a certificate against the symbols of its theory.
pub fn parse_certificate(text: &str, env: &Env) -> Result<Certificate, FormatError> {
    let s = read_one(text)?;
    let h = header(&s)?;
    let goal = read_formula(env, &Scope::new(), h.goal)?;
    let proof = read_node(env, &mut Scope::new(), h.proof)?;
    Ok(Certificate {
        name: h.name,
        theory: h.theory,
        goal,
        proof,
    })
}

/// `(x τ) F` starting at `xs[0]`.
fn abstraction(env: &Env, scope: &Scope, xs: &[Sexp]) -> Result<Abstraction, FormatError> {
    let b = xs[0].expect_list("binder `(x type)`")?;
    if b.len() != 2 {
        return Err(err(&xs[0], "binder must be `(x type)`"));
    }
    let var = name(&b[0], "variable name")?;
    let ty = read_type(env, scope, &b[1])?;
    let mut inner = scope.clone();
    inner.vars.push(var.clone());
    let body = read_formula(env, &inner, &xs[1])?;
    Ok(Abstraction { var, ty, body })
}

/// `a F` starting at `xs[0]`.
fn type_abstraction(env: &Env, scope: &Scope, xs: &[Sexp]) -> Result<TypeAbstraction, FormatError> {
    let var = name(&xs[0], "type variable")?;
    let mut inner = scope.clone();
    inner.tvars.push(var.clone());
    let body = read_formula(env, &inner, &xs[1])?;
    Ok(TypeAbstraction { var, body })
}

fn terms(env: &Env, scope: &Scope, s: &Sexp) -> Result<Vec<TffTerm>, FormatError> {
    s.expect_list("term list")?
        .iter()
        .map(|t| read_term(env, scope, t))
        .collect()
}

fn types(env: &Env, scope: &Scope, s: &Sexp) -> Result<Vec<TffType>, FormatError> {
    s.expect_list("type list")?
        .iter()
        .map(|t| read_type(env, scope, t))
        .collect()
}

/// Number of fixed arguments after the tag.
fn arg_count(tag: &str) -> Option<usize> {
    Some(match tag {
        "bot" | "nottop" => 0,
        "ax" | "cut" | "notnot" => 1,
        "neq" | "and" | "or" | "imp" | "iff" | "notand" | "notor" | "notimp" | "notiff" => 2,
        "sym" => 3,
        "exists" | "forall" | "notexists" | "notforall" => 3,
        "existstype" | "foralltype" | "notexiststype" | "notforalltype" => 3,
        "pred" | "fun" => 4,
        "subst" => 4,
        "ext" => 3,
        _ => return None,
    })
}

/// Reads one proof node. Names the node introduces are bound in `scope`
/// while its premises are read.
pub fn read_node(env: &Env, scope: &mut Scope, s: &Sexp) -> Result<LLProof, FormatError> {
    let xs = s.expect_list("proof node")?;
    let tag = s
        .head()
        .ok_or_else(|| err(s, "expected `(RULE ARGS... PREMISES...)`"))?;
    let k = arg_count(tag).ok_or_else(|| err(s, format!("unknown rule `{tag}`")))?;
    if xs.len() < 1 + k {
        return Err(err(s, format!("rule `{tag}` expects {k} arguments")));
    }
    let a = &xs[1..1 + k];
    let mut rest = &xs[1 + k..];
    let mut hyps_sexp = None;
    if let Some((last, init)) = rest.split_last() {
        if last.head() == Some("hyps") {
            hyps_sexp = Some(last);
            rest = init;
        }
    }
    let f = |i: usize| read_formula(env, scope, &a[i]);
    let ty = |i: usize| read_type(env, scope, &a[i]);
    let tm = |i: usize| read_term(env, scope, &a[i]);
    let mut bind_var = None;
    let mut bind_tvar = None;
    let rule = match tag {
        "bot" => LLRule::Bot,
        "nottop" => LLRule::NotTop,
        "ax" => LLRule::Ax(f(0)?),
        "cut" => LLRule::Cut(f(0)?),
        "notnot" => LLRule::NotNot(f(0)?),
        "neq" => LLRule::Neq(ty(0)?, tm(1)?),
        "sym" => LLRule::Sym(ty(0)?, tm(1)?, tm(2)?),
        "and" => LLRule::And(f(0)?, f(1)?),
        "or" => LLRule::Or(f(0)?, f(1)?),
        "imp" => LLRule::Imp(f(0)?, f(1)?),
        "iff" => LLRule::Iff(f(0)?, f(1)?),
        "notand" => LLRule::NotAnd(f(0)?, f(1)?),
        "notor" => LLRule::NotOr(f(0)?, f(1)?),
        "notimp" => LLRule::NotImp(f(0)?, f(1)?),
        "notiff" => LLRule::NotIff(f(0)?, f(1)?),
        "exists" | "notforall" => {
            let abs = abstraction(env, scope, a)?;
            let c = name(&a[2], "fresh constant")?;
            bind_var = Some(c.clone());
            if tag == "exists" {
                LLRule::Exists(abs, c)
            } else {
                LLRule::NotForall(abs, c)
            }
        }
        "forall" | "notexists" => {
            let abs = abstraction(env, scope, a)?;
            let t = tm(2)?;
            if tag == "forall" {
                LLRule::Forall(abs, t)
            } else {
                LLRule::NotExists(abs, t)
            }
        }
        "existstype" | "notforalltype" => {
            let abs = type_abstraction(env, scope, a)?;
            let c = name(&a[2], "fresh type")?;
            bind_tvar = Some(c.clone());
            if tag == "existstype" {
                LLRule::ExistsType(abs, c)
            } else {
                LLRule::NotForallType(abs, c)
            }
        }
        "foralltype" | "notexiststype" => {
            let abs = type_abstraction(env, scope, a)?;
            let t = ty(2)?;
            if tag == "foralltype" {
                LLRule::ForallType(abs, t)
            } else {
                LLRule::NotExistsType(abs, t)
            }
        }
        "pred" | "fun" => {
            let sym = a[0].expect_atom("symbol")?;
            let (tvars, args, ret) = if tag == "pred" {
                let p = env
                    .preds
                    .get(sym)
                    .ok_or_else(|| err(&a[0], format!("unknown predicate `{sym}`")))?;
                (&p.tvars, &p.args, None)
            } else {
                let g = env
                    .funs
                    .get(sym)
                    .ok_or_else(|| err(&a[0], format!("unknown function `{sym}`")))?;
                (&g.tvars, &g.args, Some(&g.ret))
            };
            let tys = types(env, scope, &a[1])?;
            if tys.len() != tvars.len() {
                return Err(err(
                    &a[1],
                    format!("`{sym}` expects {} type arguments", tvars.len()),
                ));
            }
            let lhs = terms(env, scope, &a[2])?;
            let rhs = terms(env, scope, &a[3])?;
            for (side, ts) in [(&a[2], &lhs), (&a[3], &rhs)] {
                if ts.len() != args.len() {
                    return Err(err(
                        side,
                        format!("`{sym}` expects {} term arguments", args.len()),
                    ));
                }
            }
            let eq_types = args.iter().map(|t| instantiate(t, tvars, &tys)).collect();
            match ret {
                None => LLRule::Pred {
                    name: sym.to_string(),
                    tys,
                    lhs,
                    rhs,
                    eq_types,
                },
                Some(ret) => LLRule::Fun {
                    name: sym.to_string(),
                    result: instantiate(ret, tvars, &tys),
                    tys,
                    lhs,
                    rhs,
                    eq_types,
                },
            }
        }
        "subst" => {
            let abs = abstraction(env, scope, a)?;
            LLRule::Subst(abs, tm(2)?, tm(3)?)
        }
        "ext" => {
            let n = name(&a[0], "extension rule name")?;
            LLRule::Ext {
                name: n,
                abs: abstraction(env, scope, &a[1..])?,
            }
        }
        _ => unreachable!("tag checked by arg_count"),
    };
    let hyps = hyps_sexp
        .map(|h| {
            h.list().unwrap()[1..]
                .iter()
                .map(|x| read_formula(env, scope, x))
                .collect::<Result<Vec<_>, _>>()
        })
        .transpose()?;
    let (nv, nt) = (scope.vars.len(), scope.tvars.len());
    scope.vars.extend(bind_var);
    scope.tvars.extend(bind_tvar);
    let premises = rest
        .iter()
        .map(|p| read_node(env, scope, p))
        .collect::<Result<Vec<_>, _>>();
    scope.vars.truncate(nv);
    scope.tvars.truncate(nt);
    Ok(LLProof {
        rule,
        premises: premises?,
        hyps,
    })
}
