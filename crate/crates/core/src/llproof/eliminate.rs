//! Replaces `Pred` and `Fun` nodes by chains of `Subst` nodes.
//!
//! For `P(t1..tn), ¬P(u1..un)` the i-th link rewrites `t_i` into `u_i`
//! under `λx. P(u1..u(i-1), x, t(i+1)..tn)`; its first premise is the
//! original i-th premise and the chain ends with `Ax(P(u1..un))`. `Fun`
//! works the same way on `¬(f(..) = f(u1..un))` and ends with `Neq`.

use std::collections::BTreeSet;

use thiserror::Error;

use super::ast::{Abstraction, LLProof, LLRule, NodePath};
use crate::tff::{not, Env, Formula, TffTerm, TffType};

#[derive(Clone, Debug, Error, PartialEq, Eq)]
#[error("{path}: `{rule}` relates {lhs} terms to {rhs} terms with {tys} equality types")]
pub struct ElimError {
    pub path: NodePath,
    pub rule: &'static str,
    pub lhs: usize,
    pub rhs: usize,
    pub tys: usize,
}

pub fn eliminate_pred_fun(env: &Env, p: &LLProof) -> Result<LLProof, ElimError> {
    go(env, p, &mut Vec::new())
}

fn go(env: &Env, p: &LLProof, path: &mut Vec<usize>) -> Result<LLProof, ElimError> {
    let mut premises = Vec::with_capacity(p.premises.len());
    for (i, q) in p.premises.iter().enumerate() {
        path.push(i);
        let r = go(env, q, path);
        path.pop();
        premises.push(r?);
    }
    let (name, tys, lhs, rhs, eq_types, result) = match &p.rule {
        LLRule::Pred {
            name,
            tys,
            lhs,
            rhs,
            eq_types,
        } => (name, tys, lhs, rhs, eq_types, None),
        LLRule::Fun {
            name,
            tys,
            lhs,
            rhs,
            eq_types,
            result,
        } => (name, tys, lhs, rhs, eq_types, Some(result)),
        _ => {
            return Ok(LLProof {
                rule: p.rule.clone(),
                premises,
                hyps: p.hyps.clone(),
            })
        }
    };
    let n = lhs.len();
    if rhs.len() != n || eq_types.len() != n || premises.len() != n {
        return Err(ElimError {
            path: NodePath(path.clone()),
            rule: p.rule.tag(),
            lhs: n,
            rhs: rhs.len(),
            tys: eq_types.len(),
        });
    }
    let x = fresh_var(env, lhs.iter().chain(rhs), tys);
    let whole = TffTerm::fun(name, tys.clone(), rhs.clone());
    // The formula under the abstraction of link i.
    let at = |i: usize| -> Formula {
        let args: Vec<TffTerm> = rhs[..i]
            .iter()
            .cloned()
            .chain(std::iter::once(TffTerm::Var(x.clone())))
            .chain(lhs[i + 1..].iter().cloned())
            .collect();
        match result {
            None => Formula::pred(name, tys.clone(), args),
            Some(ty) => not(Formula::Eq(
                ty.clone(),
                TffTerm::fun(name, tys.clone(), args),
                whole.clone(),
            )),
        }
    };
    let mut tail = LLProof::leaf(match result {
        None => LLRule::Ax(Formula::pred(name, tys.clone(), rhs.clone())),
        Some(ty) => LLRule::Neq(ty.clone(), whole.clone()),
    });
    for (i, pi) in premises.into_iter().enumerate().rev() {
        let abs = Abstraction::new(&x, eq_types[i].clone(), at(i));
        tail = LLProof::new(
            LLRule::Subst(abs, lhs[i].clone(), rhs[i].clone()),
            vec![pi, tail],
        );
    }
    tail.hyps = p.hyps.clone();
    Ok(tail)
}

/// A variable name occurring nowhere in the terms and not a theory symbol.
fn fresh_var<'a>(env: &Env, terms: impl Iterator<Item = &'a TffTerm>, tys: &[TffType]) -> String {
    let mut vars = BTreeSet::new();
    let mut tvars = BTreeSet::new();
    for t in terms {
        t.free_vars(&mut vars, &mut tvars);
    }
    for ty in tys {
        ty.free_vars(&mut tvars);
    }
    (0..)
        .map(|i| {
            if i == 0 {
                "x".to_string()
            } else {
                format!("x{i}")
            }
        })
        .find(|x| !vars.contains(x) && !tvars.contains(x) && !env.declares(x))
        .expect("an unused name")
}
