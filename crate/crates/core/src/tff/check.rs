//! Well-formedness of types, terms, formulas and theories.

use std::collections::{BTreeSet, HashMap, HashSet};

use super::ast::{CtxEntry, Formula, Item, TffTerm, TffType, Theory};

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum TffError {
    #[error("unknown type constructor `{0}`")]
    UnknownConstructor(String),
    #[error("`{symbol}` expects {expected} {what} arguments, got {found}")]
    ArityMismatch {
        symbol: String,
        what: &'static str,
        expected: usize,
        found: usize,
    },
    #[error("unbound type variable `{0}`")]
    UnboundTypeVariable(String),
    #[error("unknown symbol `{0}`")]
    UnknownSymbol(String),
    #[error("unbound variable `{0}`")]
    UnboundVariable(String),
    #[error("argument {index} of `{symbol}` has type {found}, expected {expected}")]
    ArgTypeMismatch {
        symbol: String,
        index: usize,
        expected: Box<TffType>,
        found: Box<TffType>,
    },
    #[error("equality at type {expected} relates a term of type {found}")]
    EqTypeMismatch {
        expected: Box<TffType>,
        found: Box<TffType>,
    },
    #[error("left-hand side of a formula rule must be atomic")]
    NonAtomicLhs,
    #[error("left-hand side of a term rule must be a function application")]
    NonPatternLhs,
    #[error("variable `{0}` of the right-hand side does not occur in the left-hand side")]
    FvViolation(String),
    #[error("rule sides have different types: {lhs} and {rhs}")]
    RuleTypeMismatch {
        lhs: Box<TffType>,
        rhs: Box<TffType>,
    },
    #[error("symbol `{0}` is already declared")]
    DuplicateSymbol(String),
    #[error("variable `{0}` is bound twice in a rule context")]
    DuplicateVariable(String),
    #[error("unknown extension rule `{0}`")]
    UnknownExt(String),
    #[error("extension rule `{ext}` requires {missing}")]
    ExtRequirement { ext: String, missing: String },
    #[error("`{0}` is not a valid name")]
    InvalidName(String),
}

/// A failing theory item.
#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
#[error("item {}: {kind}", item + 1)]
pub struct TheoryError {
    pub item: usize,
    pub kind: TffError,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FunSig {
    pub tvars: Vec<String>,
    pub args: Vec<TffType>,
    pub ret: TffType,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PredSig {
    pub tvars: Vec<String>,
    pub args: Vec<TffType>,
}

/// Symbol tables of a theory prefix.
#[derive(Clone, Debug, Default)]
pub struct Env {
    pub types: HashMap<String, usize>,
    pub funs: HashMap<String, FunSig>,
    pub preds: HashMap<String, PredSig>,
    pub axioms: Vec<(String, Formula)>,
    pub exts: Vec<String>,
    names: HashSet<String>,
}

const RESERVED: &[&str] = &[
    "not", "and", "or", "imp", "iff", "forall", "exists", "type", "Type", "def", "Kind",
];

pub fn is_name(s: &str) -> bool {
    let mut cs = s.chars();
    matches!(cs.next(), Some(c) if c.is_ascii_alphabetic() || c == '_')
        && cs.all(|c| c.is_ascii_alphanumeric() || c == '_' || c == '\'')
        && !RESERVED.contains(&s)
}

/// The constant an extension rule is declared as.
pub fn ext_constant(name: &str) -> String {
    format!("R_{name}")
}

/// Simultaneous substitution of type variables.
pub fn instantiate(ty: &TffType, tvars: &[String], tys: &[TffType]) -> TffType {
    match ty {
        TffType::Var(a) => match tvars.iter().position(|b| b == a) {
            Some(i) => tys[i].clone(),
            None => ty.clone(),
        },
        TffType::Cons(c, args) => TffType::Cons(
            c.clone(),
            args.iter().map(|t| instantiate(t, tvars, tys)).collect(),
        ),
    }
}

/// Term variables with their types, plus the type variables in scope.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct TffContext {
    pub tvars: Vec<String>,
    pub vars: Vec<(String, TffType)>,
}

impl TffContext {
    pub fn new() -> Self {
        TffContext::default()
    }

    pub fn lookup(&self, x: &str) -> Option<&TffType> {
        self.vars.iter().rev().find(|(y, _)| y == x).map(|(_, t)| t)
    }

    pub fn has_tvar(&self, a: &str) -> bool {
        self.tvars.iter().any(|b| b == a)
    }

    /// Builds a rule context, rejecting duplicate bindings.
    pub fn from_entries(env: &Env, entries: &[CtxEntry]) -> Result<Self, TffError> {
        let mut ctx = TffContext::new();
        for e in entries {
            match e {
                CtxEntry::TyVar(a) => {
                    if ctx.has_tvar(a) {
                        return Err(TffError::DuplicateVariable(a.clone()));
                    }
                    ctx.tvars.push(a.clone());
                }
                CtxEntry::Var(x, t) => {
                    if ctx.lookup(x).is_some() {
                        return Err(TffError::DuplicateVariable(x.clone()));
                    }
                    wf_type(env, &ctx.tvars, t)?;
                    ctx.vars.push((x.clone(), t.clone()));
                }
            }
        }
        Ok(ctx)
    }
}

impl Env {
    pub fn new() -> Self {
        Env::default()
    }

    /// Symbol tables of `thy`, without checking it.
    pub fn of(thy: &Theory) -> Env {
        let mut env = Env::new();
        for it in &thy.items {
            env.record(it);
        }
        env
    }

    pub fn declares(&self, name: &str) -> bool {
        self.names.contains(name)
    }

    fn record(&mut self, it: &Item) {
        match it {
            Item::TypeCons { name, arity } => {
                self.types.insert(name.clone(), *arity);
            }
            Item::Fun {
                name,
                tvars,
                args,
                ret,
            } => {
                self.funs.insert(
                    name.clone(),
                    FunSig {
                        tvars: tvars.clone(),
                        args: args.clone(),
                        ret: ret.clone(),
                    },
                );
            }
            Item::Pred { name, tvars, args } => {
                self.preds.insert(
                    name.clone(),
                    PredSig {
                        tvars: tvars.clone(),
                        args: args.clone(),
                    },
                );
            }
            Item::Axiom { name, formula } => self.axioms.push((name.clone(), formula.clone())),
            Item::Ext(name) => {
                self.exts.push(name.clone());
                self.names.insert(ext_constant(name));
            }
            Item::TermRule { .. } | Item::PropRule { .. } => {}
        }
        if let Some(n) = it.declared() {
            self.names.insert(n.to_string());
        }
    }
}

pub fn wf_type(env: &Env, tvars: &[String], ty: &TffType) -> Result<(), TffError> {
    match ty {
        TffType::Var(a) => {
            if tvars.iter().any(|b| b == a) {
                Ok(())
            } else {
                Err(TffError::UnboundTypeVariable(a.clone()))
            }
        }
        TffType::Cons(c, args) => {
            let m = *env
                .types
                .get(c)
                .ok_or_else(|| TffError::UnknownConstructor(c.clone()))?;
            if m != args.len() {
                return Err(TffError::ArityMismatch {
                    symbol: c.clone(),
                    what: "type",
                    expected: m,
                    found: args.len(),
                });
            }
            args.iter().try_for_each(|t| wf_type(env, tvars, t))
        }
    }
}

fn check_args(
    env: &Env,
    ctx: &TffContext,
    symbol: &str,
    (tvars, params): (&[String], &[TffType]),
    tys: &[TffType],
    args: &[TffTerm],
) -> Result<(), TffError> {
    let arity = |what, expected, found| TffError::ArityMismatch {
        symbol: symbol.to_string(),
        what,
        expected,
        found,
    };
    if tys.len() != tvars.len() {
        return Err(arity("type", tvars.len(), tys.len()));
    }
    if args.len() != params.len() {
        return Err(arity("term", params.len(), args.len()));
    }
    for t in tys {
        wf_type(env, &ctx.tvars, t)?;
    }
    for (i, (a, p)) in args.iter().zip(params).enumerate() {
        let expected = instantiate(p, tvars, tys);
        let found = infer_term(env, ctx, a)?;
        if found != expected {
            return Err(TffError::ArgTypeMismatch {
                symbol: symbol.to_string(),
                index: i + 1,
                expected: Box::new(expected),
                found: Box::new(found),
            });
        }
    }
    Ok(())
}

pub fn infer_term(env: &Env, ctx: &TffContext, e: &TffTerm) -> Result<TffType, TffError> {
    match e {
        TffTerm::Var(x) => ctx
            .lookup(x)
            .cloned()
            .ok_or_else(|| TffError::UnboundVariable(x.clone())),
        TffTerm::Fun(f, tys, args) => {
            let sig = env
                .funs
                .get(f)
                .ok_or_else(|| TffError::UnknownSymbol(f.clone()))?;
            check_args(env, ctx, f, (&sig.tvars, &sig.args), tys, args)?;
            Ok(instantiate(&sig.ret, &sig.tvars, tys))
        }
    }
}

pub fn wf_formula(env: &Env, ctx: &TffContext, f: &Formula) -> Result<(), TffError> {
    let mut ctx = ctx.clone();
    wf_formula_in(env, &mut ctx, f)
}

fn wf_formula_in(env: &Env, ctx: &mut TffContext, f: &Formula) -> Result<(), TffError> {
    match f {
        Formula::True | Formula::False => Ok(()),
        Formula::Not(a) => wf_formula_in(env, ctx, a),
        Formula::And(a, b) | Formula::Or(a, b) | Formula::Imp(a, b) | Formula::Iff(a, b) => {
            wf_formula_in(env, ctx, a)?;
            wf_formula_in(env, ctx, b)
        }
        Formula::Eq(t, a, b) => {
            wf_type(env, &ctx.tvars, t)?;
            for side in [a, b] {
                let found = infer_term(env, ctx, side)?;
                if &found != t {
                    return Err(TffError::EqTypeMismatch {
                        expected: Box::new(t.clone()),
                        found: Box::new(found),
                    });
                }
            }
            Ok(())
        }
        Formula::Pred(p, tys, args) => {
            let sig = env
                .preds
                .get(p)
                .ok_or_else(|| TffError::UnknownSymbol(p.clone()))?;
            check_args(env, ctx, p, (&sig.tvars, &sig.args), tys, args)
        }
        Formula::Forall(x, t, b) | Formula::Exists(x, t, b) => {
            wf_type(env, &ctx.tvars, t)?;
            ctx.vars.push((x.clone(), t.clone()));
            let r = wf_formula_in(env, ctx, b);
            ctx.vars.pop();
            r
        }
        Formula::ForallType(a, b) | Formula::ExistsType(a, b) => {
            ctx.tvars.push(a.clone());
            let r = wf_formula_in(env, ctx, b);
            ctx.tvars.pop();
            r
        }
    }
}

fn rule_fv(
    (lv, lt): (BTreeSet<String>, BTreeSet<String>),
    (rv, rt): (BTreeSet<String>, BTreeSet<String>),
) -> Result<(), TffError> {
    if let Some(x) = rv
        .difference(&lv)
        .next()
        .or_else(|| rt.difference(&lt).next())
    {
        return Err(TffError::FvViolation(x.clone()));
    }
    Ok(())
}

fn term_fv(t: &TffTerm) -> (BTreeSet<String>, BTreeSet<String>) {
    let (mut v, mut ty) = (BTreeSet::new(), BTreeSet::new());
    t.free_vars(&mut v, &mut ty);
    (v, ty)
}

fn formula_fv(f: &Formula) -> (BTreeSet<String>, BTreeSet<String>) {
    let (mut v, mut ty) = (BTreeSet::new(), BTreeSet::new());
    f.free_vars(&mut v, &mut ty);
    (v, ty)
}

/// Checks one item against the symbol tables of the preceding items.
pub fn wf_item(env: &Env, it: &Item) -> Result<(), TffError> {
    if let Some(n) = it.declared() {
        if !is_name(n) {
            return Err(TffError::InvalidName(n.to_string()));
        }
        if env.declares(n) {
            return Err(TffError::DuplicateSymbol(n.to_string()));
        }
    }
    let distinct = |tvars: &[String]| -> Result<(), TffError> {
        let mut seen = HashSet::new();
        for a in tvars {
            if !seen.insert(a) {
                return Err(TffError::DuplicateVariable(a.clone()));
            }
        }
        Ok(())
    };
    match it {
        Item::TypeCons { .. } => Ok(()),
        Item::Fun {
            tvars, args, ret, ..
        } => {
            distinct(tvars)?;
            args.iter()
                .chain([ret])
                .try_for_each(|t| wf_type(env, tvars, t))
        }
        Item::Pred { tvars, args, .. } => {
            distinct(tvars)?;
            args.iter().try_for_each(|t| wf_type(env, tvars, t))
        }
        Item::Axiom { formula, .. } => wf_formula(env, &TffContext::new(), formula),
        Item::TermRule { ctx, lhs, rhs } => {
            let ctx = TffContext::from_entries(env, ctx)?;
            if !matches!(lhs, TffTerm::Fun(..)) {
                return Err(TffError::NonPatternLhs);
            }
            let a = infer_term(env, &ctx, lhs)?;
            let b = infer_term(env, &ctx, rhs)?;
            if a != b {
                return Err(TffError::RuleTypeMismatch {
                    lhs: Box::new(a),
                    rhs: Box::new(b),
                });
            }
            rule_fv(term_fv(lhs), term_fv(rhs))
        }
        Item::PropRule { ctx, lhs, rhs } => {
            let ctx = TffContext::from_entries(env, ctx)?;
            if !lhs.is_atomic() {
                return Err(TffError::NonAtomicLhs);
            }
            wf_formula(env, &ctx, lhs)?;
            wf_formula(env, &ctx, rhs)?;
            rule_fv(formula_fv(lhs), formula_fv(rhs))
        }
        Item::Ext(name) => {
            let rule = crate::llproof::ext::builtin(name)
                .ok_or_else(|| TffError::UnknownExt(name.clone()))?;
            let c = ext_constant(name);
            if env.declares(&c) {
                return Err(TffError::DuplicateSymbol(c));
            }
            rule.check_requirements(env)
                .map_err(|missing| TffError::ExtRequirement {
                    ext: name.clone(),
                    missing,
                })
        }
    }
}

/// Checks every item in order and returns the symbol tables.
pub fn wf_theory(thy: &Theory) -> Result<Env, TheoryError> {
    let mut env = Env::new();
    if !is_name(&thy.name) {
        return Err(TheoryError {
            item: 0,
            kind: TffError::InvalidName(thy.name.clone()),
        });
    }
    for (i, it) in thy.items.iter().enumerate() {
        wf_item(&env, it).map_err(|kind| TheoryError { item: i, kind })?;
        env.record(it);
    }
    Ok(env)
}
