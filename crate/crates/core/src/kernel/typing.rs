//! Type inference and checking.

use super::print::pretty;
use super::reduce::{convertible, normalize, whnf};
use super::subst::instantiate;
use super::term::{BinderName, Sort, Term, TermKind};
use super::{Fuel, KResult, KernelError};
use crate::signature::Signature;

/// Local typing context. Each type lives in the context of the entries before it.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct LocalCtx {
    entries: Vec<(BinderName, Term)>,
}

impl LocalCtx {
    pub fn new() -> Self {
        LocalCtx::default()
    }

    pub fn from_entries(entries: Vec<(BinderName, Term)>) -> Self {
        LocalCtx { entries }
    }

    pub fn push(&mut self, x: BinderName, ty: Term) {
        self.entries.push((x, ty));
    }

    pub fn pop(&mut self) {
        self.entries.pop();
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn entries(&self) -> &[(BinderName, Term)] {
        &self.entries
    }

    /// Type of `Var(i)`, lifted into the full context.
    pub fn lookup(&self, i: usize) -> Option<Term> {
        let k = self.entries.len().checked_sub(i + 1)?;
        Some(self.entries[k].1.shift(i as isize + 1))
    }

    pub fn names(&self) -> Vec<String> {
        self.entries
            .iter()
            .map(|(x, _)| x.as_str().to_string())
            .collect()
    }
}

fn show(t: &Term, ctx: &LocalCtx) -> String {
    pretty(t, &ctx.names())
}

/// Reduces `ty` to a sort, or reports what it was.
fn expect_sort(
    sig: &Signature,
    ctx: &LocalCtx,
    ty: &Term,
    what: &str,
    fuel: &mut Fuel,
) -> KResult<Sort> {
    let w = whnf(sig, ty, fuel)?;
    w.as_sort().ok_or_else(|| {
        KernelError::SortError(format!("{what} has type `{}`, not a sort", show(&w, ctx)))
    })
}

fn expect_type(sig: &Signature, ctx: &LocalCtx, dom: &Term, fuel: &mut Fuel) -> KResult<()> {
    let s = infer(sig, ctx, dom, fuel)?;
    match expect_sort(sig, ctx, &s, "domain", fuel)? {
        Sort::Type => Ok(()),
        Sort::Kind => Err(KernelError::SortError(format!(
            "domain `{}` must have type Type",
            show(dom, ctx)
        ))),
    }
}

/// Infers the type of `t` in `ctx`.
pub fn infer(sig: &Signature, ctx: &LocalCtx, t: &Term, fuel: &mut Fuel) -> KResult<Term> {
    let mut ctx = ctx.clone();
    infer_in(sig, &mut ctx, t, fuel)
}

fn infer_in(sig: &Signature, ctx: &mut LocalCtx, t: &Term, fuel: &mut Fuel) -> KResult<Term> {
    match &**t {
        TermKind::Sort(Sort::Type) => Ok(Term::kind()),
        TermKind::Sort(Sort::Kind) => Err(KernelError::UntypableKind),
        TermKind::Var(i) => ctx.lookup(*i).ok_or(KernelError::UnboundVar(*i)),
        TermKind::Const(c) => sig
            .type_of(c)
            .cloned()
            .ok_or_else(|| KernelError::UnknownConst(c.to_string())),
        TermKind::App(f, a) => {
            let tf = infer_in(sig, ctx, f, fuel)?;
            let w = whnf(sig, &tf, fuel)?;
            match &*w {
                TermKind::Pi(_, dom, cod) => {
                    check_in(sig, ctx, a, dom, fuel)?;
                    Ok(instantiate(cod, a))
                }
                _ => Err(KernelError::NotAFunction {
                    term: show(f, ctx),
                    ty: show(&w, ctx),
                }),
            }
        }
        TermKind::Lam(x, a, body) => {
            expect_type(sig, ctx, a, fuel)?;
            ctx.push(x.clone(), a.clone());
            let b = infer_in(sig, ctx, body, fuel);
            ctx.pop();
            let b = b?;
            if b.is_kind() {
                return Err(KernelError::SortError(format!(
                    "body of `{}` has type Kind",
                    show(t, ctx)
                )));
            }
            Ok(Term::new(TermKind::Pi(x.clone(), a.clone(), b)))
        }
        TermKind::Pi(x, a, b) => {
            expect_type(sig, ctx, a, fuel)?;
            ctx.push(x.clone(), a.clone());
            let r = infer_in(sig, ctx, b, fuel)
                .and_then(|sb| expect_sort(sig, ctx, &sb, "codomain", fuel));
            ctx.pop();
            Ok(Term::new(TermKind::Sort(r?)))
        }
    }
}

/// Checks `t` against `expected` up to conversion.
pub fn check(
    sig: &Signature,
    ctx: &LocalCtx,
    t: &Term,
    expected: &Term,
    fuel: &mut Fuel,
) -> KResult<()> {
    let mut ctx = ctx.clone();
    check_in(sig, &mut ctx, t, expected, fuel)
}

fn check_in(
    sig: &Signature,
    ctx: &mut LocalCtx,
    t: &Term,
    expected: &Term,
    fuel: &mut Fuel,
) -> KResult<()> {
    let found = infer_in(sig, ctx, t, fuel)?;
    if convertible(sig, &found, expected, fuel)? {
        return Ok(());
    }
    // Report normal forms when they are cheap to get.
    let mut spare = Fuel::new(fuel.steps.min(10_000), fuel.max_conv_depth);
    let nf = |x: &Term, f: &mut Fuel| normalize(sig, x, f).unwrap_or_else(|_| x.clone());
    let e = nf(expected, &mut spare);
    let g = nf(&found, &mut spare);
    Err(KernelError::TypeMismatch {
        term: show(t, ctx),
        expected: show(&e, ctx),
        found: show(&g, ctx),
    })
}
