//! Reduction modulo β and the signature's rewrite rules, and conversion.

use super::subst::{instantiate, instantiate_many, Substitution};
use super::term::{Term, TermKind};
use super::{Fuel, KResult, KernelError};
use crate::signature::{RewriteRule, Signature};

/// Purely syntactic first-order matching of `lhs` (living in a pattern
/// context of `delta_len` variables) against `subject`.
pub fn match_pattern(lhs: &Term, delta_len: usize, subject: &Term) -> Option<Substitution> {
    fn go(p: &Term, n: usize, s: &Term, sigma: &mut Substitution) -> bool {
        match (&**p, &**s) {
            (TermKind::Var(i), _) if *i < n => match sigma.get(*i) {
                Some(prev) => prev == s,
                None => {
                    sigma.bind(*i, s.clone());
                    true
                }
            },
            (TermKind::Var(i), TermKind::Var(j)) => *i - n == *j,
            (TermKind::Const(a), TermKind::Const(b)) => a == b,
            (TermKind::Sort(a), TermKind::Sort(b)) => a == b,
            (TermKind::App(pf, pa), TermKind::App(sf, sa)) => {
                go(pf, n, sf, sigma) && go(pa, n, sa, sigma)
            }
            _ => false,
        }
    }
    let mut sigma = Substitution::new(delta_len);
    if go(lhs, delta_len, subject, &mut sigma) {
        Some(sigma)
    } else {
        None
    }
}

fn bind(sigma: &mut [Option<Term>], i: usize, s: &Term) -> bool {
    match &sigma[i] {
        Some(prev) => prev == s,
        None => {
            sigma[i] = Some(s.clone());
            true
        }
    }
}

/// Matches a non-variable pattern against a subject already in whnf.
fn match_whnf(
    sig: &Signature,
    p: &Term,
    s: &Term,
    sigma: &mut [Option<Term>],
    fuel: &mut Fuel,
) -> KResult<bool> {
    let (ph, pargs) = p.unapply();
    let (sh, sargs) = s.unapply();
    if pargs.len() != sargs.len() {
        return Ok(false);
    }
    let heads_agree = match (&*ph, &*sh) {
        (TermKind::Const(a), TermKind::Const(b)) => a == b,
        (TermKind::Sort(a), TermKind::Sort(b)) => a == b,
        _ => false,
    };
    if !heads_agree {
        return Ok(false);
    }
    for (pa, sa) in pargs.iter().zip(&sargs) {
        if !match_arg(sig, pa, sa, sigma, fuel)? {
            return Ok(false);
        }
    }
    Ok(true)
}

fn match_arg(
    sig: &Signature,
    p: &Term,
    s: &Term,
    sigma: &mut [Option<Term>],
    fuel: &mut Fuel,
) -> KResult<bool> {
    if let TermKind::Var(i) = &**p {
        return Ok(bind(sigma, *i, s));
    }
    let w = whnf(sig, s, fuel)?;
    match_whnf(sig, p, &w, sigma, fuel)
}

/// Tries the rules of `rules` in order on the spine `args`.
fn rewrite_spine(
    sig: &Signature,
    rules: &[std::sync::Arc<RewriteRule>],
    args: &[Term],
    fuel: &mut Fuel,
) -> KResult<Option<Term>> {
    let mut cache: Vec<Option<Term>> = vec![None; args.len()];
    'rules: for rule in rules {
        let k = rule.args.len();
        if k > args.len() {
            continue;
        }
        let mut sigma: Vec<Option<Term>> = vec![None; rule.ctx.len()];
        for (i, p) in rule.args.iter().enumerate() {
            let ok = if let TermKind::Var(j) = &**p {
                bind(&mut sigma, *j, &args[i])
            } else {
                if cache[i].is_none() {
                    cache[i] = Some(whnf(sig, &args[i], fuel)?);
                }
                let w = cache[i].clone().unwrap();
                match_whnf(sig, p, &w, &mut sigma, fuel)?
            };
            if !ok {
                continue 'rules;
            }
        }
        fuel.tick()?;
        let vals: Vec<Term> = sigma
            .into_iter()
            .map(|v| v.unwrap_or_else(Term::typ))
            .collect();
        let rhs = instantiate_many(&rule.rhs, &vals);
        return Ok(Some(Term::apps(rhs, args[k..].iter().cloned())));
    }
    Ok(None)
}

/// Weak-head normal form under β and the signature's rules.
pub fn whnf(sig: &Signature, t: &Term, fuel: &mut Fuel) -> KResult<Term> {
    let mut t = t.clone();
    loop {
        match &*t {
            TermKind::App(..) | TermKind::Const(_) => {}
            _ => return Ok(t),
        }
        let (head, args) = t.unapply();
        match &*head {
            TermKind::Lam(_, _, body) if !args.is_empty() => {
                fuel.tick()?;
                let r = instantiate(body, &args[0]);
                t = Term::apps(r, args[1..].iter().cloned());
            }
            TermKind::Const(c) => {
                let rules = sig.rules_for(c);
                if rules.is_empty() {
                    return Ok(t);
                }
                match rewrite_spine(sig, rules, &args, fuel)? {
                    Some(r) => t = r,
                    None => return Ok(t),
                }
            }
            _ => return Ok(t),
        }
    }
}

/// Full βΓ-normal form.
pub fn normalize(sig: &Signature, t: &Term, fuel: &mut Fuel) -> KResult<Term> {
    let w = whnf(sig, t, fuel)?;
    let r = match &*w {
        TermKind::App(..) => {
            let (h, args) = w.unapply();
            let h2 = normalize(sig, &h, fuel)?;
            let mut nargs = Vec::with_capacity(args.len());
            for a in &args {
                nargs.push(normalize(sig, a, fuel)?);
            }
            let rebuilt = Term::apps(h2, nargs);
            if rebuilt != w && rebuilt.head_const().is_some() {
                // Normalized arguments may enable a nonlinear rule.
                let again = whnf(sig, &rebuilt, fuel)?;
                if again != rebuilt {
                    return normalize(sig, &again, fuel);
                }
            }
            rebuilt
        }
        TermKind::Lam(x, a, b) => Term::new(TermKind::Lam(
            x.clone(),
            normalize(sig, a, fuel)?,
            normalize(sig, b, fuel)?,
        )),
        TermKind::Pi(x, a, b) => Term::new(TermKind::Pi(
            x.clone(),
            normalize(sig, a, fuel)?,
            normalize(sig, b, fuel)?,
        )),
        _ => w.clone(),
    };
    Ok(r)
}

/// Decides `a ≡βΓ b` by comparing weak-head normal forms.
pub fn convertible(sig: &Signature, a: &Term, b: &Term, fuel: &mut Fuel) -> KResult<bool> {
    conv(sig, a, b, fuel, 0)
}

fn conv(sig: &Signature, a: &Term, b: &Term, fuel: &mut Fuel, depth: u32) -> KResult<bool> {
    if a == b {
        return Ok(true);
    }
    if depth >= fuel.max_conv_depth {
        return Err(KernelError::FuelExhausted("conversion depth"));
    }
    let a = whnf(sig, a, fuel)?;
    let b = whnf(sig, b, fuel)?;
    if a == b {
        return Ok(true);
    }
    let d = depth + 1;
    match (&*a, &*b) {
        (TermKind::Sort(x), TermKind::Sort(y)) => Ok(x == y),
        (TermKind::Pi(_, a1, b1), TermKind::Pi(_, a2, b2))
        | (TermKind::Lam(_, a1, b1), TermKind::Lam(_, a2, b2)) => {
            Ok(conv(sig, a1, a2, fuel, d)? && conv(sig, b1, b2, fuel, d)?)
        }
        (TermKind::Lam(_, _, body), _) if sig.eta => {
            let other = Term::app(b.shift(1), Term::var(0));
            conv(sig, body, &other, fuel, d)
        }
        (_, TermKind::Lam(_, _, body)) if sig.eta => {
            let other = Term::app(a.shift(1), Term::var(0));
            conv(sig, &other, body, fuel, d)
        }
        _ => {
            let (ha, xs) = a.unapply();
            let (hb, ys) = b.unapply();
            let heads = match (&*ha, &*hb) {
                (TermKind::Var(i), TermKind::Var(j)) => i == j,
                (TermKind::Const(c1), TermKind::Const(c2)) => c1 == c2,
                _ => false,
            };
            if heads && xs.len() == ys.len() {
                let mut all = true;
                for (x, y) in xs.iter().zip(&ys) {
                    if !conv(sig, x, y, fuel, d)? {
                        all = false;
                        break;
                    }
                }
                if all {
                    return Ok(true);
                }
            }
            // A stuck spine may still unlock a nonlinear rule once its
            // arguments are normal, so the heads alone are not conclusive.
            let nonlinear = |h: &Term| match &**h {
                TermKind::Const(c) => sig.has_nonlinear(c),
                _ => false,
            };
            if nonlinear(&ha) || nonlinear(&hb) {
                let na = normalize(sig, &a, fuel)?;
                let nb = normalize(sig, &b, fuel)?;
                return Ok(na == nb);
            }
            Ok(false)
        }
    }
}
