//! Types, terms, formulas and theories of polymorphic first-order logic
//! with rewrite rules.

use std::collections::BTreeSet;
use std::fmt;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum TffType {
    Var(String),
    Cons(String, Vec<TffType>),
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum TffTerm {
    Var(String),
    /// `f(τ1..τm; e1..en)`
    Fun(String, Vec<TffType>, Vec<TffTerm>),
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Formula {
    True,
    False,
    Not(Box<Formula>),
    And(Box<Formula>, Box<Formula>),
    Or(Box<Formula>, Box<Formula>),
    Imp(Box<Formula>, Box<Formula>),
    Iff(Box<Formula>, Box<Formula>),
    Eq(TffType, TffTerm, TffTerm),
    Pred(String, Vec<TffType>, Vec<TffTerm>),
    Forall(String, TffType, Box<Formula>),
    Exists(String, TffType, Box<Formula>),
    ForallType(String, Box<Formula>),
    ExistsType(String, Box<Formula>),
}

/// One entry of a rule context: a type variable or a typed term variable.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CtxEntry {
    TyVar(String),
    Var(String, TffType),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Item {
    TypeCons {
        name: String,
        arity: usize,
    },
    Fun {
        name: String,
        tvars: Vec<String>,
        args: Vec<TffType>,
        ret: TffType,
    },
    Pred {
        name: String,
        tvars: Vec<String>,
        args: Vec<TffType>,
    },
    Axiom {
        name: String,
        formula: Formula,
    },
    TermRule {
        ctx: Vec<CtxEntry>,
        lhs: TffTerm,
        rhs: TffTerm,
    },
    PropRule {
        ctx: Vec<CtxEntry>,
        lhs: Formula,
        rhs: Formula,
    },
    /// Registers a built-in extension rule by name.
    Ext(String),
}

impl Item {
    /// The symbol this item declares, if any.
    pub fn declared(&self) -> Option<&str> {
        match self {
            Item::TypeCons { name, .. }
            | Item::Fun { name, .. }
            | Item::Pred { name, .. }
            | Item::Axiom { name, .. } => Some(name),
            _ => None,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Theory {
    pub name: String,
    pub items: Vec<Item>,
}

impl Theory {
    pub fn prefix(&self, n: usize) -> Theory {
        Theory {
            name: self.name.clone(),
            items: self.items[..n].to_vec(),
        }
    }
}

pub fn not(f: Formula) -> Formula {
    Formula::Not(Box::new(f))
}

pub fn neq(ty: TffType, a: TffTerm, b: TffTerm) -> Formula {
    not(Formula::Eq(ty, a, b))
}

impl TffType {
    pub fn cons(name: &str, args: Vec<TffType>) -> TffType {
        TffType::Cons(name.to_string(), args)
    }

    pub fn free_vars(&self, out: &mut BTreeSet<String>) {
        match self {
            TffType::Var(a) => {
                out.insert(a.clone());
            }
            TffType::Cons(_, args) => args.iter().for_each(|t| t.free_vars(out)),
        }
    }

    pub fn subst(&self, a: &str, by: &TffType) -> TffType {
        match self {
            TffType::Var(b) if b == a => by.clone(),
            TffType::Var(_) => self.clone(),
            TffType::Cons(c, args) => {
                TffType::Cons(c.clone(), args.iter().map(|t| t.subst(a, by)).collect())
            }
        }
    }

    fn rename(&self, m: &[(String, String)]) -> TffType {
        match self {
            TffType::Var(a) => match m.iter().rev().find(|(x, _)| x == a) {
                Some((_, y)) => TffType::Var(y.clone()),
                None => self.clone(),
            },
            TffType::Cons(c, args) => {
                TffType::Cons(c.clone(), args.iter().map(|t| t.rename(m)).collect())
            }
        }
    }
}

impl TffTerm {
    pub fn fun(name: &str, tys: Vec<TffType>, args: Vec<TffTerm>) -> TffTerm {
        TffTerm::Fun(name.to_string(), tys, args)
    }

    pub fn cst(name: &str) -> TffTerm {
        TffTerm::Fun(name.to_string(), vec![], vec![])
    }

    /// Term variables, then type variables, occurring in the term.
    pub fn free_vars(&self, vars: &mut BTreeSet<String>, tvars: &mut BTreeSet<String>) {
        match self {
            TffTerm::Var(x) => {
                vars.insert(x.clone());
            }
            TffTerm::Fun(_, tys, args) => {
                tys.iter().for_each(|t| t.free_vars(tvars));
                args.iter().for_each(|a| a.free_vars(vars, tvars));
            }
        }
    }

    pub fn subst(&self, x: &str, by: &TffTerm) -> TffTerm {
        match self {
            TffTerm::Var(y) if y == x => by.clone(),
            TffTerm::Var(_) => self.clone(),
            TffTerm::Fun(f, tys, args) => TffTerm::Fun(
                f.clone(),
                tys.clone(),
                args.iter().map(|a| a.subst(x, by)).collect(),
            ),
        }
    }

    pub fn subst_type(&self, a: &str, by: &TffType) -> TffTerm {
        match self {
            TffTerm::Var(_) => self.clone(),
            TffTerm::Fun(f, tys, args) => TffTerm::Fun(
                f.clone(),
                tys.iter().map(|t| t.subst(a, by)).collect(),
                args.iter().map(|t| t.subst_type(a, by)).collect(),
            ),
        }
    }

    fn rename(&self, vm: &[(String, String)], tm: &[(String, String)]) -> TffTerm {
        match self {
            TffTerm::Var(x) => match vm.iter().rev().find(|(a, _)| a == x) {
                Some((_, y)) => TffTerm::Var(y.clone()),
                None => self.clone(),
            },
            TffTerm::Fun(f, tys, args) => TffTerm::Fun(
                f.clone(),
                tys.iter().map(|t| t.rename(tm)).collect(),
                args.iter().map(|a| a.rename(vm, tm)).collect(),
            ),
        }
    }
}

fn fresh(base: &str, avoid: &BTreeSet<String>) -> String {
    let mut x = base.to_string();
    while avoid.contains(&x) {
        x.push('\'');
    }
    x
}

impl Formula {
    pub fn and(a: Formula, b: Formula) -> Formula {
        Formula::And(Box::new(a), Box::new(b))
    }

    pub fn or(a: Formula, b: Formula) -> Formula {
        Formula::Or(Box::new(a), Box::new(b))
    }

    pub fn imp(a: Formula, b: Formula) -> Formula {
        Formula::Imp(Box::new(a), Box::new(b))
    }

    pub fn iff(a: Formula, b: Formula) -> Formula {
        Formula::Iff(Box::new(a), Box::new(b))
    }

    pub fn forall(x: &str, ty: TffType, body: Formula) -> Formula {
        Formula::Forall(x.to_string(), ty, Box::new(body))
    }

    pub fn exists(x: &str, ty: TffType, body: Formula) -> Formula {
        Formula::Exists(x.to_string(), ty, Box::new(body))
    }

    pub fn forall_type(a: &str, body: Formula) -> Formula {
        Formula::ForallType(a.to_string(), Box::new(body))
    }

    pub fn exists_type(a: &str, body: Formula) -> Formula {
        Formula::ExistsType(a.to_string(), Box::new(body))
    }

    pub fn pred(p: &str, tys: Vec<TffType>, args: Vec<TffTerm>) -> Formula {
        Formula::Pred(p.to_string(), tys, args)
    }

    pub fn is_atomic(&self) -> bool {
        matches!(self, Formula::Pred(..) | Formula::Eq(..))
    }

    /// Free term variables and free type variables.
    pub fn free_vars(&self, vars: &mut BTreeSet<String>, tvars: &mut BTreeSet<String>) {
        match self {
            Formula::True | Formula::False => {}
            Formula::Not(a) => a.free_vars(vars, tvars),
            Formula::And(a, b) | Formula::Or(a, b) | Formula::Imp(a, b) | Formula::Iff(a, b) => {
                a.free_vars(vars, tvars);
                b.free_vars(vars, tvars);
            }
            Formula::Eq(t, a, b) => {
                t.free_vars(tvars);
                a.free_vars(vars, tvars);
                b.free_vars(vars, tvars);
            }
            Formula::Pred(_, tys, args) => {
                tys.iter().for_each(|t| t.free_vars(tvars));
                args.iter().for_each(|a| a.free_vars(vars, tvars));
            }
            Formula::Forall(x, t, b) | Formula::Exists(x, t, b) => {
                t.free_vars(tvars);
                let mut inner = BTreeSet::new();
                b.free_vars(&mut inner, tvars);
                inner.remove(x);
                vars.extend(inner);
            }
            Formula::ForallType(a, b) | Formula::ExistsType(a, b) => {
                let mut inner = BTreeSet::new();
                b.free_vars(vars, &mut inner);
                inner.remove(a);
                tvars.extend(inner);
            }
        }
    }

    fn all_names(&self) -> BTreeSet<String> {
        let (mut v, mut t) = (BTreeSet::new(), BTreeSet::new());
        self.free_vars(&mut v, &mut t);
        v.extend(t);
        v
    }

    /// Capture-avoiding `self[x := by]`.
    pub fn subst(&self, x: &str, by: &TffTerm) -> Formula {
        let (mut bv, mut bt) = (BTreeSet::new(), BTreeSet::new());
        by.free_vars(&mut bv, &mut bt);
        self.subst_in(x, by, &bv, &bt)
    }

    fn subst_in(
        &self,
        x: &str,
        by: &TffTerm,
        bv: &BTreeSet<String>,
        bt: &BTreeSet<String>,
    ) -> Formula {
        let go = |f: &Formula| Box::new(f.subst_in(x, by, bv, bt));
        match self {
            Formula::True | Formula::False => self.clone(),
            Formula::Not(a) => Formula::Not(go(a)),
            Formula::And(a, b) => Formula::And(go(a), go(b)),
            Formula::Or(a, b) => Formula::Or(go(a), go(b)),
            Formula::Imp(a, b) => Formula::Imp(go(a), go(b)),
            Formula::Iff(a, b) => Formula::Iff(go(a), go(b)),
            Formula::Eq(t, a, b) => Formula::Eq(t.clone(), a.subst(x, by), b.subst(x, by)),
            Formula::Pred(p, tys, args) => Formula::Pred(
                p.clone(),
                tys.clone(),
                args.iter().map(|a| a.subst(x, by)).collect(),
            ),
            Formula::Forall(y, t, b) | Formula::Exists(y, t, b) => {
                let rebuild = |y: String, b: Formula| match self {
                    Formula::Forall(..) => Formula::Forall(y, t.clone(), Box::new(b)),
                    _ => Formula::Exists(y, t.clone(), Box::new(b)),
                };
                if y == x {
                    return self.clone();
                }
                if bv.contains(y) {
                    let mut avoid = b.all_names();
                    avoid.extend(bv.iter().cloned());
                    avoid.insert(x.to_string());
                    let y2 = fresh(y, &avoid);
                    let b2 = b.rename_vars(&[(y.clone(), y2.clone())], &[]);
                    return rebuild(y2, b2.subst_in(x, by, bv, bt));
                }
                rebuild(y.clone(), b.subst_in(x, by, bv, bt))
            }
            Formula::ForallType(a, b) | Formula::ExistsType(a, b) => {
                let rebuild = |a: String, b: Formula| match self {
                    Formula::ForallType(..) => Formula::ForallType(a, Box::new(b)),
                    _ => Formula::ExistsType(a, Box::new(b)),
                };
                if bt.contains(a) {
                    let mut avoid = b.all_names();
                    avoid.extend(bt.iter().cloned());
                    let a2 = fresh(a, &avoid);
                    let b2 = b.rename_vars(&[], &[(a.clone(), a2.clone())]);
                    return rebuild(a2, b2.subst_in(x, by, bv, bt));
                }
                rebuild(a.clone(), b.subst_in(x, by, bv, bt))
            }
        }
    }

    /// Capture-avoiding `self[a := by]` for a type variable.
    pub fn subst_type(&self, a: &str, by: &TffType) -> Formula {
        let mut bt = BTreeSet::new();
        by.free_vars(&mut bt);
        self.subst_type_in(a, by, &bt)
    }

    fn subst_type_in(&self, a: &str, by: &TffType, bt: &BTreeSet<String>) -> Formula {
        let go = |f: &Formula| Box::new(f.subst_type_in(a, by, bt));
        match self {
            Formula::True | Formula::False => self.clone(),
            Formula::Not(p) => Formula::Not(go(p)),
            Formula::And(p, q) => Formula::And(go(p), go(q)),
            Formula::Or(p, q) => Formula::Or(go(p), go(q)),
            Formula::Imp(p, q) => Formula::Imp(go(p), go(q)),
            Formula::Iff(p, q) => Formula::Iff(go(p), go(q)),
            Formula::Eq(t, l, r) => {
                Formula::Eq(t.subst(a, by), l.subst_type(a, by), r.subst_type(a, by))
            }
            Formula::Pred(p, tys, args) => Formula::Pred(
                p.clone(),
                tys.iter().map(|t| t.subst(a, by)).collect(),
                args.iter().map(|t| t.subst_type(a, by)).collect(),
            ),
            Formula::Forall(x, t, b) => Formula::Forall(x.clone(), t.subst(a, by), go(b)),
            Formula::Exists(x, t, b) => Formula::Exists(x.clone(), t.subst(a, by), go(b)),
            Formula::ForallType(b2, body) | Formula::ExistsType(b2, body) => {
                let rebuild = |v: String, body: Formula| match self {
                    Formula::ForallType(..) => Formula::ForallType(v, Box::new(body)),
                    _ => Formula::ExistsType(v, Box::new(body)),
                };
                if b2 == a {
                    return self.clone();
                }
                if bt.contains(b2) {
                    let mut avoid = body.all_names();
                    avoid.extend(bt.iter().cloned());
                    avoid.insert(a.to_string());
                    let v = fresh(b2, &avoid);
                    let body = body.rename_vars(&[], &[(b2.clone(), v.clone())]);
                    return rebuild(v, body.subst_type_in(a, by, bt));
                }
                rebuild(b2.clone(), body.subst_type_in(a, by, bt))
            }
        }
    }

    /// Renames free occurrences; used only with names fresh for `self`.
    fn rename_vars(&self, vm: &[(String, String)], tm: &[(String, String)]) -> Formula {
        let go = |f: &Formula| Box::new(f.rename_vars(vm, tm));
        match self {
            Formula::True | Formula::False => self.clone(),
            Formula::Not(a) => Formula::Not(go(a)),
            Formula::And(a, b) => Formula::And(go(a), go(b)),
            Formula::Or(a, b) => Formula::Or(go(a), go(b)),
            Formula::Imp(a, b) => Formula::Imp(go(a), go(b)),
            Formula::Iff(a, b) => Formula::Iff(go(a), go(b)),
            Formula::Eq(t, a, b) => Formula::Eq(t.rename(tm), a.rename(vm, tm), b.rename(vm, tm)),
            Formula::Pred(p, tys, args) => Formula::Pred(
                p.clone(),
                tys.iter().map(|t| t.rename(tm)).collect(),
                args.iter().map(|a| a.rename(vm, tm)).collect(),
            ),
            Formula::Forall(x, t, b) | Formula::Exists(x, t, b) => {
                let vm2: Vec<_> = vm.iter().filter(|(a, _)| a != x).cloned().collect();
                let b = Box::new(b.rename_vars(&vm2, tm));
                match self {
                    Formula::Forall(..) => Formula::Forall(x.clone(), t.rename(tm), b),
                    _ => Formula::Exists(x.clone(), t.rename(tm), b),
                }
            }
            Formula::ForallType(a, b) | Formula::ExistsType(a, b) => {
                let tm2: Vec<_> = tm.iter().filter(|(x, _)| x != a).cloned().collect();
                let b = Box::new(b.rename_vars(vm, &tm2));
                match self {
                    Formula::ForallType(..) => Formula::ForallType(a.clone(), b),
                    _ => Formula::ExistsType(a.clone(), b),
                }
            }
        }
    }

    /// Equality up to renaming of bound variables.
    pub fn alpha_eq(&self, other: &Formula) -> bool {
        alpha(self, other, &mut Vec::new(), &mut Vec::new())
    }
}

type Pairs = Vec<(String, String)>;

fn var_eq(a: &str, b: &str, m: &Pairs) -> bool {
    for (x, y) in m.iter().rev() {
        if x == a || y == b {
            return x == a && y == b;
        }
    }
    a == b
}

fn ty_alpha(a: &TffType, b: &TffType, tm: &Pairs) -> bool {
    match (a, b) {
        (TffType::Var(x), TffType::Var(y)) => var_eq(x, y, tm),
        (TffType::Cons(c, xs), TffType::Cons(d, ys)) => {
            c == d && xs.len() == ys.len() && xs.iter().zip(ys).all(|(x, y)| ty_alpha(x, y, tm))
        }
        _ => false,
    }
}

fn term_alpha(a: &TffTerm, b: &TffTerm, vm: &Pairs, tm: &Pairs) -> bool {
    match (a, b) {
        (TffTerm::Var(x), TffTerm::Var(y)) => var_eq(x, y, vm),
        (TffTerm::Fun(f, ts, xs), TffTerm::Fun(g, us, ys)) => {
            f == g
                && ts.len() == us.len()
                && xs.len() == ys.len()
                && ts.iter().zip(us).all(|(x, y)| ty_alpha(x, y, tm))
                && xs.iter().zip(ys).all(|(x, y)| term_alpha(x, y, vm, tm))
        }
        _ => false,
    }
}

fn alpha(a: &Formula, b: &Formula, vm: &mut Pairs, tm: &mut Pairs) -> bool {
    use Formula::*;
    match (a, b) {
        (True, True) | (False, False) => true,
        (Not(x), Not(y)) => alpha(x, y, vm, tm),
        (And(a1, a2), And(b1, b2))
        | (Or(a1, a2), Or(b1, b2))
        | (Imp(a1, a2), Imp(b1, b2))
        | (Iff(a1, a2), Iff(b1, b2)) => alpha(a1, b1, vm, tm) && alpha(a2, b2, vm, tm),
        (Eq(t, a1, a2), Eq(u, b1, b2)) => {
            ty_alpha(t, u, tm) && term_alpha(a1, b1, vm, tm) && term_alpha(a2, b2, vm, tm)
        }
        (Pred(p, ts, xs), Pred(q, us, ys)) => {
            p == q
                && ts.len() == us.len()
                && xs.len() == ys.len()
                && ts.iter().zip(us).all(|(x, y)| ty_alpha(x, y, tm))
                && xs.iter().zip(ys).all(|(x, y)| term_alpha(x, y, vm, tm))
        }
        (Forall(x, t, f), Forall(y, u, g)) | (Exists(x, t, f), Exists(y, u, g)) => {
            if !ty_alpha(t, u, tm) {
                return false;
            }
            vm.push((x.clone(), y.clone()));
            let r = alpha(f, g, vm, tm);
            vm.pop();
            r
        }
        (ForallType(x, f), ForallType(y, g)) | (ExistsType(x, f), ExistsType(y, g)) => {
            tm.push((x.clone(), y.clone()));
            let r = alpha(f, g, vm, tm);
            tm.pop();
            r
        }
        _ => false,
    }
}

impl fmt::Display for TffType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TffType::Var(a) => write!(f, "{a}"),
            TffType::Cons(c, args) if args.is_empty() => write!(f, "{c}"),
            TffType::Cons(c, args) => {
                write!(f, "({c}")?;
                for a in args {
                    write!(f, " {a}")?;
                }
                write!(f, ")")
            }
        }
    }
}

impl fmt::Display for TffTerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TffTerm::Var(x) => write!(f, "{x}"),
            TffTerm::Fun(g, tys, args) if tys.is_empty() && args.is_empty() => write!(f, "{g}"),
            TffTerm::Fun(g, tys, args) => {
                write!(f, "({g}")?;
                for t in tys {
                    write!(f, " {t}")?;
                }
                for a in args {
                    write!(f, " {a}")?;
                }
                write!(f, ")")
            }
        }
    }
}

/// Prints in the `.tffx` S-expression syntax.
impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Formula::True => write!(f, "$true"),
            Formula::False => write!(f, "$false"),
            Formula::Not(a) => write!(f, "(not {a})"),
            Formula::And(a, b) => write!(f, "(and {a} {b})"),
            Formula::Or(a, b) => write!(f, "(or {a} {b})"),
            Formula::Imp(a, b) => write!(f, "(imp {a} {b})"),
            Formula::Iff(a, b) => write!(f, "(iff {a} {b})"),
            Formula::Eq(t, a, b) => write!(f, "(= {t} {a} {b})"),
            Formula::Pred(p, tys, args) => {
                write!(f, "{}", TffTerm::Fun(p.clone(), tys.clone(), args.clone()))
            }
            Formula::Forall(x, t, b) => write!(f, "(forall (({x} {t})) {b})"),
            Formula::Exists(x, t, b) => write!(f, "(exists (({x} {t})) {b})"),
            Formula::ForallType(a, b) => write!(f, "(forall-type ({a}) {b})"),
            Formula::ExistsType(a, b) => write!(f, "(exists-type ({a}) {b})"),
        }
    }
}
