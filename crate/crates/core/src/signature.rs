//! The global context Γ: declarations and rewrite rules, checked on entry.

use std::collections::{HashMap, HashSet};
use std::sync::Arc;

use thiserror::Error;

use crate::kernel::typing::LocalCtx;
use crate::kernel::{
    check, infer, pretty, whnf, BinderName, Fuel, KernelError, Name, Sort, Term, TermKind,
};

/// A rule `lhs ↪Δ rhs`. `ctx` is Δ, outermost first; `lhs` and `rhs` live in Δ.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RewriteRule {
    pub ctx: Vec<(BinderName, Term)>,
    pub lhs: Term,
    pub rhs: Term,
    /// The common type of both sides.
    pub ty: Term,
    pub head: Name,
    /// Arguments of the left-hand side spine.
    pub args: Vec<Term>,
    pub linear: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SigEntry {
    Decl(Name, Term),
    Rule(Arc<RewriteRule>),
}

#[derive(Clone, Debug, Error, PartialEq, Eq)]
pub enum SigError {
    #[error("`{0}` is already declared")]
    DuplicateName(String),
    #[error("type of `{name}` is `{ty}`, whose type `{found}` is not a sort")]
    NotASort {
        name: String,
        ty: String,
        found: String,
    },
    #[error("ill-typed {side}: {source}")]
    IllTypedSide {
        side: &'static str,
        source: KernelError,
    },
    #[error("free variable `{0}` of the right-hand side does not occur in the left-hand side")]
    FvViolation(String),
    #[error("left-hand side `{0}` is not a pattern")]
    NonPatternLhs(String),
    #[error(transparent)]
    Kernel(#[from] KernelError),
}

impl SigError {
    pub fn is_fuel(&self) -> bool {
        match self {
            SigError::Kernel(e) | SigError::IllTypedSide { source: e, .. } => e.is_fuel(),
            _ => false,
        }
    }
}

fn side(side: &'static str, e: KernelError) -> SigError {
    if e.is_fuel() {
        SigError::Kernel(e)
    } else {
        SigError::IllTypedSide { side, source: e }
    }
}

#[derive(Clone, Debug, Default)]
pub struct Signature {
    entries: Vec<SigEntry>,
    types: HashMap<Name, Term>,
    rules: HashMap<Name, Vec<Arc<RewriteRule>>>,
    nonlinear: HashSet<Name>,
    /// Enables η in conversion.
    pub eta: bool,
}

impl PartialEq for Signature {
    fn eq(&self, other: &Self) -> bool {
        self.eta == other.eta && self.entries == other.entries
    }
}

impl Eq for Signature {}

fn ctx_names(ctx: &[(BinderName, Term)]) -> Vec<String> {
    ctx.iter().map(|(x, _)| x.as_str().to_string()).collect()
}

/// True if `t` is a constant applied to patterns, with pattern variables below `n`.
fn is_pattern_arg(t: &Term, n: usize) -> bool {
    match &**t {
        TermKind::Var(i) => *i < n,
        TermKind::Const(_) | TermKind::Sort(_) => true,
        TermKind::App(..) => {
            let (h, args) = t.unapply();
            matches!(&*h, TermKind::Const(_)) && args.iter().all(|a| is_pattern_arg(a, n))
        }
        _ => false,
    }
}

fn count_vars(t: &Term, counts: &mut HashMap<usize, usize>) {
    match &**t {
        TermKind::Var(i) => *counts.entry(*i).or_default() += 1,
        TermKind::App(a, b) => {
            count_vars(a, counts);
            count_vars(b, counts);
        }
        _ => {}
    }
}

impl Signature {
    pub fn new() -> Self {
        Signature::default()
    }

    pub fn entries(&self) -> &[SigEntry] {
        &self.entries
    }

    pub fn type_of(&self, c: &str) -> Option<&Term> {
        self.types.get(c)
    }

    pub fn contains(&self, c: &str) -> bool {
        self.types.contains_key(c)
    }

    pub fn rules_for(&self, c: &str) -> &[Arc<RewriteRule>] {
        self.rules.get(c).map(|v| v.as_slice()).unwrap_or(&[])
    }

    /// True if some rule headed by `c` repeats a pattern variable.
    pub fn has_nonlinear(&self, c: &str) -> bool {
        self.nonlinear.contains(c)
    }

    /// Declared constants in installation order.
    pub fn decl_names(&self) -> impl Iterator<Item = &Name> {
        self.entries.iter().filter_map(|e| match e {
            SigEntry::Decl(n, _) => Some(n),
            SigEntry::Rule(_) => None,
        })
    }

    /// (Decl): `name : ty` with `ty` typed by a sort.
    pub fn declare(&mut self, name: &str, ty: Term, fuel: &mut Fuel) -> Result<(), SigError> {
        if self.contains(name) {
            return Err(SigError::DuplicateName(name.to_string()));
        }
        let ctx = LocalCtx::new();
        let s = infer(self, &ctx, &ty, fuel).map_err(|e| side("type", e))?;
        let w = whnf(self, &s, fuel)?;
        if w.as_sort().is_none() {
            return Err(SigError::NotASort {
                name: name.to_string(),
                ty: pretty(&ty, &[]),
                found: pretty(&w, &[]),
            });
        }
        self.push_decl(Name::from(name), ty);
        Ok(())
    }

    /// `def name : ty := body`, i.e. a declaration plus `[] name ↪ body`.
    pub fn define(
        &mut self,
        name: &str,
        ty: Term,
        body: Term,
        fuel: &mut Fuel,
    ) -> Result<(), SigError> {
        if self.contains(name) {
            return Err(SigError::DuplicateName(name.to_string()));
        }
        let ctx = LocalCtx::new();
        let s = infer(self, &ctx, &ty, fuel).map_err(|e| side("type", e))?;
        let w = whnf(self, &s, fuel)?;
        if w.as_sort().is_none() {
            return Err(SigError::NotASort {
                name: name.to_string(),
                ty: pretty(&ty, &[]),
                found: pretty(&w, &[]),
            });
        }
        check(self, &ctx, &body, &ty, fuel).map_err(|e| side("definition body", e))?;
        self.push_decl(Name::from(name), ty);
        if let Err(e) = self.add_rewrite(vec![], Term::cst(name), body, fuel) {
            self.pop_decl(name);
            return Err(e);
        }
        Ok(())
    }

    /// (Rew): installs `lhs ↪Δ rhs` after checking both sides at a common type.
    pub fn add_rewrite(
        &mut self,
        ctx: Vec<(BinderName, Term)>,
        lhs: Term,
        rhs: Term,
        fuel: &mut Fuel,
    ) -> Result<(), SigError> {
        let names = ctx_names(&ctx);
        let n = ctx.len();
        let (head, args) = lhs.unapply();
        let head = match &*head {
            TermKind::Const(c) => c.clone(),
            _ => return Err(SigError::NonPatternLhs(pretty(&lhs, &names))),
        };
        if !args.iter().all(|a| is_pattern_arg(a, n)) {
            return Err(SigError::NonPatternLhs(pretty(&lhs, &names)));
        }
        let mut lfv = Vec::new();
        lhs.free_vars(&mut lfv);
        let mut rfv = Vec::new();
        rhs.free_vars(&mut rfv);
        if let Some(v) = rfv.iter().find(|v| !lfv.contains(v)) {
            let name = names
                .len()
                .checked_sub(v + 1)
                .map(|k| names[k].clone())
                .unwrap_or_else(|| format!("#{v}"));
            return Err(SigError::FvViolation(name));
        }

        // Δ must be well formed.
        let mut lctx = LocalCtx::new();
        for (x, ty) in &ctx {
            let s = infer(self, &lctx, ty, fuel).map_err(|e| side("context", e))?;
            let w = whnf(self, &s, fuel)?;
            if w.as_sort().is_none() {
                return Err(SigError::NotASort {
                    name: x.as_str().to_string(),
                    ty: pretty(ty, &lctx.names()),
                    found: pretty(&w, &lctx.names()),
                });
            }
            lctx.push(x.clone(), ty.clone());
        }

        let a = infer(self, &lctx, &lhs, fuel).map_err(|e| side("left-hand side", e))?;
        if !a.is_kind() {
            let s = infer(self, &lctx, &a, fuel).map_err(|e| side("rule type", e))?;
            let w = whnf(self, &s, fuel)?;
            if w.as_sort().is_none() {
                return Err(SigError::NotASort {
                    name: head.to_string(),
                    ty: pretty(&a, &names),
                    found: pretty(&w, &names),
                });
            }
        } else {
            return Err(SigError::IllTypedSide {
                side: "left-hand side",
                source: KernelError::SortError("rule at type Kind".into()),
            });
        }
        check(self, &lctx, &rhs, &a, fuel).map_err(|e| side("right-hand side", e))?;

        let mut counts = HashMap::new();
        count_vars(&lhs, &mut counts);
        let linear = counts.values().all(|&k| k <= 1);
        self.push_rule(RewriteRule {
            ctx,
            lhs,
            rhs,
            ty: a,
            head,
            args,
            linear,
        });
        Ok(())
    }

    fn push_decl(&mut self, name: Name, ty: Term) {
        self.types.insert(name.clone(), ty.clone());
        self.entries.push(SigEntry::Decl(name, ty));
    }

    fn pop_decl(&mut self, name: &str) {
        self.types.remove(name);
        if let Some(SigEntry::Decl(n, _)) = self.entries.last() {
            if &**n == name {
                self.entries.pop();
            }
        }
    }

    fn push_rule(&mut self, rule: RewriteRule) {
        let rule = Arc::new(rule);
        if !rule.linear {
            self.nonlinear.insert(rule.head.clone());
        }
        self.rules
            .entry(rule.head.clone())
            .or_default()
            .push(rule.clone());
        self.entries.push(SigEntry::Rule(rule));
    }

    /// Installs a rule with no checks at all. Only for kernel unit tests.
    #[cfg(test)]
    pub(crate) fn install_unchecked(&mut self, ctx: Vec<(BinderName, Term)>, lhs: Term, rhs: Term) {
        let (head, args) = lhs.unapply();
        let head = match &*head {
            TermKind::Const(c) => c.clone(),
            _ => panic!("rule head must be a constant"),
        };
        let mut counts = HashMap::new();
        count_vars(&lhs, &mut counts);
        let linear = counts.values().all(|&k| k <= 1);
        self.push_rule(RewriteRule {
            ctx,
            lhs,
            rhs,
            ty: Term::typ(),
            head,
            args,
            linear,
        });
    }

    /// Re-derives every judgment from the empty signature.
    pub fn replay(&self, fuel: Fuel) -> Result<Signature, SigError> {
        let mut fresh = Signature {
            eta: self.eta,
            ..Signature::default()
        };
        for e in &self.entries {
            let mut f = fuel;
            match e {
                SigEntry::Decl(n, ty) => fresh.declare(n, ty.clone(), &mut f)?,
                SigEntry::Rule(r) => {
                    fresh.add_rewrite(r.ctx.clone(), r.lhs.clone(), r.rhs.clone(), &mut f)?
                }
            }
        }
        Ok(fresh)
    }

    /// Constants that have no rewrite rule headed by them.
    pub fn undefined_decls(&self) -> Vec<Name> {
        self.decl_names()
            .filter(|n| self.rules_for(n).is_empty())
            .cloned()
            .collect()
    }

    pub fn sort_of_decl(&self, c: &str, fuel: &mut Fuel) -> Option<Sort> {
        let ty = self.type_of(c)?;
        let s = infer(self, &LocalCtx::new(), ty, fuel).ok()?;
        whnf(self, &s, fuel).ok()?.as_sort()
    }
}
