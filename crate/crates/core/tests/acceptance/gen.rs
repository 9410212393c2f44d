//! Random well-formed theories, contexts, types, terms and formulas, and
//! the kernel judgements their translations must satisfy.

use std::collections::HashMap;

use rand::rngs::StdRng;
use rand::seq::SliceRandom;
use rand::Rng;

use lpm_core::embed::{
    context_entries, load_prelude, load_theory, logic, term_of, translate_context,
    translate_formula, translate_term, translate_type, KScope, Mode,
};
use lpm_core::kernel::{check, LocalCtx, Term};
use lpm_core::session::Session;
use lpm_core::tff::{
    infer_term, wf_formula, wf_theory, wf_type, CtxEntry, Env, Formula, Item, TffContext, TffTerm,
    TffType, Theory,
};
use lpm_core::Fuel;

/// Which function and predicate symbols may appear.
type Allowed<'a> = &'a dyn Fn(&str) -> bool;

pub struct Gen<'a> {
    pub rng: &'a mut StdRng,
    pub env: &'a Env,
    fresh: usize,
}

/// Binds the type variables of `pat` so that it equals `ty`.
fn match_type(
    pat: &TffType,
    ty: &TffType,
    tvars: &[String],
    sub: &mut HashMap<String, TffType>,
) -> bool {
    match pat {
        TffType::Var(a) if tvars.contains(a) => match sub.get(a) {
            Some(t) => t == ty,
            None => {
                sub.insert(a.clone(), ty.clone());
                true
            }
        },
        TffType::Var(_) => pat == ty,
        TffType::Cons(c, args) => match ty {
            TffType::Cons(d, targs) if c == d && args.len() == targs.len() => args
                .iter()
                .zip(targs)
                .all(|(p, t)| match_type(p, t, tvars, sub)),
            _ => false,
        },
    }
}

fn subst(ty: &TffType, sub: &HashMap<String, TffType>) -> TffType {
    match ty {
        TffType::Var(a) => sub.get(a).cloned().unwrap_or_else(|| ty.clone()),
        TffType::Cons(c, args) => {
            TffType::Cons(c.clone(), args.iter().map(|t| subst(t, sub)).collect())
        }
    }
}

impl<'a> Gen<'a> {
    pub fn new(rng: &'a mut StdRng, env: &'a Env) -> Self {
        Gen { rng, env, fresh: 0 }
    }

    fn fresh(&mut self, prefix: &str) -> String {
        self.fresh += 1;
        format!("{prefix}{}", self.fresh)
    }

    fn sorted<T>(map: &HashMap<String, T>) -> Vec<(&String, &T)> {
        let mut v: Vec<_> = map.iter().collect();
        v.sort_by(|a, b| a.0.cmp(b.0));
        v
    }

    /// `None` when no closed type exists over `tvars`.
    pub fn ty(&mut self, tvars: &[String], depth: usize) -> Option<TffType> {
        let cons: Vec<(String, usize)> = Self::sorted(&self.env.types)
            .into_iter()
            .map(|(c, &n)| (c.clone(), n))
            .filter(|&(_, n)| depth > 0 || n == 0)
            .collect();
        let n_choices = cons.len() + tvars.len();
        if n_choices == 0 {
            return None;
        }
        let k = self.rng.gen_range(0..n_choices);
        if k >= cons.len() {
            return Some(TffType::Var(tvars[k - cons.len()].clone()));
        }
        let (c, n) = &cons[k];
        let args = (0..*n)
            .map(|_| self.ty(tvars, depth - 1))
            .collect::<Option<_>>()?;
        Some(TffType::Cons(c.clone(), args))
    }

    pub fn term(
        &mut self,
        ctx: &TffContext,
        ty: &TffType,
        depth: usize,
        allowed: Allowed,
    ) -> Option<TffTerm> {
        let mut options: Vec<TffTerm> = ctx
            .vars
            .iter()
            .filter(|(_, t)| t == ty)
            .map(|(x, _)| TffTerm::Var(x.clone()))
            .collect();
        let mut funs = Vec::new();
        for (f, sig) in Self::sorted(&self.env.funs) {
            if !allowed(f) || (depth == 0 && !sig.args.is_empty()) {
                continue;
            }
            let mut sub = HashMap::new();
            if match_type(&sig.ret, ty, &sig.tvars, &mut sub) {
                funs.push((f.clone(), sig.clone(), sub));
            }
        }
        funs.shuffle(self.rng);
        // Prefer variables at the leaves, applications above.
        if !options.is_empty() && (depth == 0 || self.rng.gen_bool(0.3)) {
            return options.choose(self.rng).cloned();
        }
        for (f, sig, mut sub) in funs {
            for a in &sig.tvars {
                if !sub.contains_key(a) {
                    let t = self.ty(&ctx.tvars, 1)?;
                    sub.insert(a.clone(), t);
                }
            }
            let args: Option<Vec<TffTerm>> = sig
                .args
                .iter()
                .map(|a| self.term(ctx, &subst(a, &sub), depth.saturating_sub(1), allowed))
                .collect();
            if let Some(args) = args {
                let tys = sig.tvars.iter().map(|a| sub[a].clone()).collect();
                return Some(TffTerm::Fun(f, tys, args));
            }
        }
        options.pop()
    }

    pub fn formula(&mut self, ctx: &mut TffContext, depth: usize, allowed: Allowed) -> Formula {
        let b = |f: Formula| Box::new(f);
        let pick = if depth == 0 {
            self.rng.gen_range(0..4)
        } else {
            self.rng.gen_range(0..13)
        };
        match pick {
            0 => Formula::True,
            1 => Formula::False,
            2 => self.atom(ctx, allowed),
            3 => {
                let Some(ty) = self.ty(&ctx.tvars, 1) else {
                    return Formula::True;
                };
                match (
                    self.term(ctx, &ty, 2, allowed),
                    self.term(ctx, &ty, 2, allowed),
                ) {
                    (Some(t), Some(u)) => Formula::Eq(ty, t, u),
                    _ => Formula::False,
                }
            }
            4 => Formula::Not(b(self.formula(ctx, depth - 1, allowed))),
            5..=8 => {
                let x = b(self.formula(ctx, depth - 1, allowed));
                let y = b(self.formula(ctx, depth - 1, allowed));
                match pick {
                    5 => Formula::And(x, y),
                    6 => Formula::Or(x, y),
                    7 => Formula::Imp(x, y),
                    _ => Formula::Iff(x, y),
                }
            }
            9 | 10 => {
                let Some(ty) = self.ty(&ctx.tvars, 1) else {
                    return Formula::True;
                };
                let x = self.fresh("v");
                ctx.vars.push((x.clone(), ty.clone()));
                let body = b(self.formula(ctx, depth - 1, allowed));
                ctx.vars.pop();
                if pick == 9 {
                    Formula::Forall(x, ty, body)
                } else {
                    Formula::Exists(x, ty, body)
                }
            }
            _ => {
                let a = self.fresh("A");
                ctx.tvars.push(a.clone());
                let body = b(self.formula(ctx, depth - 1, allowed));
                ctx.tvars.pop();
                if pick == 11 {
                    Formula::ForallType(a, body)
                } else {
                    Formula::ExistsType(a, body)
                }
            }
        }
    }

    fn atom(&mut self, ctx: &TffContext, allowed: Allowed) -> Formula {
        let preds: Vec<_> = Self::sorted(&self.env.preds)
            .into_iter()
            .filter(|(p, _)| allowed(p))
            .map(|(p, s)| (p.clone(), s.clone()))
            .collect();
        let Some((p, sig)) = preds.choose(self.rng).cloned() else {
            return Formula::True;
        };
        let mut sub = HashMap::new();
        for a in &sig.tvars {
            match self.ty(&ctx.tvars, 1) {
                Some(t) => sub.insert(a.clone(), t),
                None => return Formula::True,
            };
        }
        let args: Option<Vec<TffTerm>> = sig
            .args
            .iter()
            .map(|a| self.term(ctx, &subst(a, &sub), 2, allowed))
            .collect();
        match args {
            Some(args) => {
                Formula::Pred(p, sig.tvars.iter().map(|a| sub[a].clone()).collect(), args)
            }
            None => Formula::True,
        }
    }

    /// A context whose types are all inhabited by closed types or variables.
    pub fn context(&mut self) -> TffContext {
        let mut ctx = TffContext::new();
        let need_tvar = !self.env.types.values().any(|&n| n == 0);
        let ntv = self.rng.gen_range(usize::from(need_tvar)..=2);
        for _ in 0..ntv {
            let a = self.fresh("A");
            ctx.tvars.push(a);
        }
        for _ in 0..self.rng.gen_range(0..=3) {
            if let Some(ty) = self.ty(&ctx.tvars.clone(), 2) {
                let x = self.fresh("v");
                ctx.vars.push((x, ty));
            }
        }
        ctx
    }
}

fn tvar_names(n: usize) -> Vec<String> {
    (0..n).map(|i| format!("a{i}")).collect()
}

fn add(thy: &mut Theory, it: Item) {
    thy.items.push(it);
}

/// A small random theory. Every constructor gets a constant, so every type
/// is inhabited; rules on `fN` and `pN` only mention lower-numbered symbols,
/// so rewriting terminates.
pub fn theory(rng: &mut StdRng, n: usize) -> Theory {
    let mut thy = Theory {
        name: format!("g{n}"),
        items: vec![],
    };
    let ncons = rng.gen_range(1..=3);
    for k in 0..ncons {
        let arity = if k == 0 { 0 } else { rng.gen_range(0..=2) };
        add(
            &mut thy,
            Item::TypeCons {
                name: format!("T{k}"),
                arity,
            },
        );
        let tvars = tvar_names(arity);
        let ret = TffType::Cons(
            format!("T{k}"),
            tvars.iter().map(|a| TffType::Var(a.clone())).collect(),
        );
        add(
            &mut thy,
            Item::Fun {
                name: format!("d{k}"),
                tvars,
                args: vec![],
                ret,
            },
        );
    }
    let nfun = rng.gen_range(1..=4);
    let npred = rng.gen_range(1..=3);
    for (kind, count) in [("f", nfun), ("p", npred)] {
        for i in 0..count {
            let env = Env::of(&thy);
            let mut g = Gen::new(rng, &env);
            let tvars = tvar_names(g.rng.gen_range(0..=1));
            let nargs = g.rng.gen_range(0..=2);
            let args: Vec<TffType> = (0..nargs).map(|_| g.ty(&tvars, 1).unwrap()).collect();
            let name = format!("{kind}{i}");
            if kind == "f" {
                let ret = g.ty(&tvars, 1).unwrap();
                add(
                    &mut thy,
                    Item::Fun {
                        name,
                        tvars,
                        args,
                        ret,
                    },
                );
            } else {
                add(&mut thy, Item::Pred { name, tvars, args });
            }
        }
    }
    let rank = |s: &str| -> Option<usize> { s[1..].parse().ok() };
    for _ in 0..rng.gen_range(0..=2) {
        let env = Env::of(&thy);
        let mut g = Gen::new(rng, &env);
        let formula = g.formula(&mut TffContext::new(), 2, &|_| true);
        let name = format!("ax{}", thy.items.len());
        add(&mut thy, Item::Axiom { name, formula });
    }
    for _ in 0..rng.gen_range(0..=2) {
        let env = Env::of(&thy);
        let i = rng.gen_range(0..nfun);
        let sig = env.funs[&format!("f{i}")].clone();
        let mut g = Gen::new(rng, &env);
        let ctx_entries: Vec<CtxEntry> = sig
            .tvars
            .iter()
            .map(|a| CtxEntry::TyVar(a.clone()))
            .chain(
                sig.args
                    .iter()
                    .enumerate()
                    .map(|(k, t)| CtxEntry::Var(format!("x{k}"), t.clone())),
            )
            .collect();
        let ctx = TffContext::from_entries(&env, &ctx_entries).unwrap();
        let lhs = TffTerm::Fun(
            format!("f{i}"),
            sig.tvars.iter().map(|a| TffType::Var(a.clone())).collect(),
            (0..sig.args.len())
                .map(|k| TffTerm::Var(format!("x{k}")))
                .collect(),
        );
        let smaller = |f: &str| f.starts_with('d') || (f.starts_with('f') && rank(f) < Some(i));
        if let Some(rhs) = g.term(&ctx, &sig.ret, 2, &smaller) {
            add(
                &mut thy,
                Item::TermRule {
                    ctx: ctx_entries,
                    lhs,
                    rhs,
                },
            );
        }
    }
    if rng.gen_bool(0.5) {
        let env = Env::of(&thy);
        let i = rng.gen_range(0..npred);
        let sig = env.preds[&format!("p{i}")].clone();
        let mut g = Gen::new(rng, &env);
        let ctx_entries: Vec<CtxEntry> = sig
            .tvars
            .iter()
            .map(|a| CtxEntry::TyVar(a.clone()))
            .chain(
                sig.args
                    .iter()
                    .enumerate()
                    .map(|(k, t)| CtxEntry::Var(format!("x{k}"), t.clone())),
            )
            .collect();
        let mut ctx = TffContext::from_entries(&env, &ctx_entries).unwrap();
        let lhs = Formula::Pred(
            format!("p{i}"),
            sig.tvars.iter().map(|a| TffType::Var(a.clone())).collect(),
            (0..sig.args.len())
                .map(|k| TffTerm::Var(format!("x{k}")))
                .collect(),
        );
        let smaller = |p: &str| !p.starts_with('p') || rank(p) < Some(i);
        let rhs = g.formula(&mut ctx, 2, &smaller);
        add(
            &mut thy,
            Item::PropRule {
                ctx: ctx_entries,
                lhs,
                rhs,
            },
        );
    }
    thy
}

fn judge(
    sess: &Session,
    ctx: &LocalCtx,
    t: &Term,
    ty: &Term,
    what: &dyn Fn() -> String,
) -> Result<(), String> {
    let mut fuel = Fuel::default();
    check(&sess.sig, ctx, t, ty, &mut fuel).map_err(|e| format!("{}: {e}", what()))
}

/// Loads `thy` and checks the four translation judgements on random
/// objects over it. Returns the number of judgements checked.
pub fn check_theory(rng: &mut StdRng, thy: &Theory, mode: Mode) -> Result<usize, String> {
    let env = wf_theory(thy).map_err(|e| format!("generated theory is ill-formed: {e}"))?;
    let mut sess = Session::new(Fuel::default());
    load_prelude(&mut sess, mode).map_err(|e| e.to_string())?;
    load_theory(&mut sess, thy).map_err(|e| format!("theory rejected: {e}"))?;
    let mut count = 1;
    let name = &thy.name;
    let mut g = Gen::new(rng, &env);
    for _ in 0..4 {
        let tctx = g.context();
        let mut sc = KScope::new();
        let entries = translate_context(name, &mut sc, &context_entries(&tctx));
        let mut kctx = LocalCtx::new();
        for (x, ty) in entries {
            judge(&sess, &kctx, &ty, &Term::typ(), &|| {
                format!("context entry {x:?}")
            })?;
            kctx.push(x, ty);
            count += 1;
        }
        for _ in 0..3 {
            let Some(ty) = g.ty(&tctx.tvars, 2) else {
                break;
            };
            wf_type(&env, &tctx.tvars, &ty).map_err(|e| format!("generator: {e}"))?;
            let kty = translate_type(name, &sc, &ty);
            judge(&sess, &kctx, &kty, &logic("type"), &|| format!("type {ty}"))?;
            count += 1;
            let Some(t) = g.term(&tctx, &ty, 3, &|_| true) else {
                continue;
            };
            let inferred = infer_term(&env, &tctx, &t).map_err(|e| format!("generator: {e}"))?;
            if inferred != ty {
                return Err(format!("generator: {t} has type {inferred}, not {ty}"));
            }
            let kt = translate_term(name, &sc, &t);
            judge(&sess, &kctx, &kt, &term_of(kty.clone()), &|| {
                format!("term {t} : {ty}")
            })?;
            count += 1;
        }
        for _ in 0..3 {
            let mut c = tctx.clone();
            let f = g.formula(&mut c, 3, &|_| true);
            wf_formula(&env, &tctx, &f).map_err(|e| format!("generator: {f}: {e}"))?;
            let kf = translate_formula(name, &mut sc, &f);
            judge(&sess, &kctx, &kf, &logic("Prop"), &|| {
                format!("formula {f}")
            })?;
            count += 1;
        }
    }
    Ok(count)
}
