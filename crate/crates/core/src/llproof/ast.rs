//! Proof trees of the low-level sequent calculus.
//!
//! Every sequent has the form `Γ ⊢ ⊥`. A node consumes some hypotheses of
//! its sequent and each premise adds new ones.

use std::fmt;

use crate::tff::{not, Formula, TffTerm, TffType};

/// `λx:ty. body`
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Abstraction {
    pub var: String,
    pub ty: TffType,
    pub body: Formula,
}

impl Abstraction {
    pub fn new(var: &str, ty: TffType, body: Formula) -> Self {
        Abstraction {
            var: var.to_string(),
            ty,
            body,
        }
    }

    pub fn apply(&self, t: &TffTerm) -> Formula {
        self.body.subst(&self.var, t)
    }
}

/// `λa:type. body`
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TypeAbstraction {
    pub var: String,
    pub body: Formula,
}

impl TypeAbstraction {
    pub fn new(var: &str, body: Formula) -> Self {
        TypeAbstraction {
            var: var.to_string(),
            body,
        }
    }

    pub fn apply(&self, t: &TffType) -> Formula {
        self.body.subst_type(&self.var, t)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LLRule {
    Bot,
    NotTop,
    Ax(Formula),
    Cut(Formula),
    Neq(TffType, TffTerm),
    Sym(TffType, TffTerm, TffTerm),
    NotNot(Formula),
    And(Formula, Formula),
    Or(Formula, Formula),
    Imp(Formula, Formula),
    Iff(Formula, Formula),
    NotAnd(Formula, Formula),
    NotOr(Formula, Formula),
    NotImp(Formula, Formula),
    NotIff(Formula, Formula),
    /// The fresh constant is named by the string.
    Exists(Abstraction, String),
    Forall(Abstraction, TffTerm),
    NotExists(Abstraction, TffTerm),
    NotForall(Abstraction, String),
    ExistsType(TypeAbstraction, String),
    ForallType(TypeAbstraction, TffType),
    NotExistsType(TypeAbstraction, TffType),
    NotForallType(TypeAbstraction, String),
    /// `P(τ̄; t̄), ¬P(τ̄; ū)`; `eq_types[i]` is the type of `t_i` and `u_i`.
    Pred {
        name: String,
        tys: Vec<TffType>,
        lhs: Vec<TffTerm>,
        rhs: Vec<TffTerm>,
        eq_types: Vec<TffType>,
    },
    /// `f(τ̄; t̄) ≠_result f(τ̄; ū)`
    Fun {
        name: String,
        tys: Vec<TffType>,
        lhs: Vec<TffTerm>,
        rhs: Vec<TffTerm>,
        eq_types: Vec<TffType>,
        result: TffType,
    },
    /// Rewrites `t` into `u` under `P`.
    Subst(Abstraction, TffTerm, TffTerm),
    Ext {
        name: String,
        abs: Abstraction,
    },
}

/// Fresh names a rule binds for its single premise.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Eigen {
    None,
    Term(String, TffType),
    Type(String),
}

/// What a rule consumes and what each premise adds.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Shape {
    pub consumed: Vec<Formula>,
    pub eigen: Eigen,
    pub branches: Vec<Vec<Formula>>,
}

fn eq(ty: &TffType, a: &TffTerm, b: &TffTerm) -> Formula {
    Formula::Eq(ty.clone(), a.clone(), b.clone())
}

fn neq(ty: &TffType, a: &TffTerm, b: &TffTerm) -> Formula {
    not(eq(ty, a, b))
}

impl LLRule {
    pub fn tag(&self) -> &'static str {
        match self {
            LLRule::Bot => "bot",
            LLRule::NotTop => "nottop",
            LLRule::Ax(_) => "ax",
            LLRule::Cut(_) => "cut",
            LLRule::Neq(..) => "neq",
            LLRule::Sym(..) => "sym",
            LLRule::NotNot(_) => "notnot",
            LLRule::And(..) => "and",
            LLRule::Or(..) => "or",
            LLRule::Imp(..) => "imp",
            LLRule::Iff(..) => "iff",
            LLRule::NotAnd(..) => "notand",
            LLRule::NotOr(..) => "notor",
            LLRule::NotImp(..) => "notimp",
            LLRule::NotIff(..) => "notiff",
            LLRule::Exists(..) => "exists",
            LLRule::Forall(..) => "forall",
            LLRule::NotExists(..) => "notexists",
            LLRule::NotForall(..) => "notforall",
            LLRule::ExistsType(..) => "existstype",
            LLRule::ForallType(..) => "foralltype",
            LLRule::NotExistsType(..) => "notexiststype",
            LLRule::NotForallType(..) => "notforalltype",
            LLRule::Pred { .. } => "pred",
            LLRule::Fun { .. } => "fun",
            LLRule::Subst(..) => "subst",
            LLRule::Ext { .. } => "ext",
        }
    }

    /// `None` for an unregistered extension rule.
    pub fn shape(&self) -> Option<Shape> {
        use Formula as F;
        let b = |f: F| Box::new(f);
        let simple = |consumed: Vec<F>, branches: Vec<Vec<F>>| Shape {
            consumed,
            eigen: Eigen::None,
            branches,
        };
        Some(match self {
            LLRule::Bot => simple(vec![F::False], vec![]),
            LLRule::NotTop => simple(vec![not(F::True)], vec![]),
            LLRule::Ax(p) => simple(vec![p.clone(), not(p.clone())], vec![]),
            LLRule::Cut(p) => simple(vec![], vec![vec![p.clone()], vec![not(p.clone())]]),
            LLRule::Neq(ty, t) => simple(vec![neq(ty, t, t)], vec![]),
            LLRule::Sym(ty, t, u) => simple(vec![eq(ty, t, u), neq(ty, u, t)], vec![]),
            LLRule::NotNot(p) => simple(vec![not(not(p.clone()))], vec![vec![p.clone()]]),
            LLRule::And(p, q) => simple(
                vec![F::And(b(p.clone()), b(q.clone()))],
                vec![vec![p.clone(), q.clone()]],
            ),
            LLRule::Or(p, q) => simple(
                vec![F::Or(b(p.clone()), b(q.clone()))],
                vec![vec![p.clone()], vec![q.clone()]],
            ),
            LLRule::Imp(p, q) => simple(
                vec![F::Imp(b(p.clone()), b(q.clone()))],
                vec![vec![not(p.clone())], vec![q.clone()]],
            ),
            LLRule::Iff(p, q) => simple(
                vec![F::Iff(b(p.clone()), b(q.clone()))],
                vec![
                    vec![not(p.clone()), not(q.clone())],
                    vec![p.clone(), q.clone()],
                ],
            ),
            LLRule::NotAnd(p, q) => simple(
                vec![not(F::And(b(p.clone()), b(q.clone())))],
                vec![vec![not(p.clone())], vec![not(q.clone())]],
            ),
            LLRule::NotOr(p, q) => simple(
                vec![not(F::Or(b(p.clone()), b(q.clone())))],
                vec![vec![not(p.clone()), not(q.clone())]],
            ),
            LLRule::NotImp(p, q) => simple(
                vec![not(F::Imp(b(p.clone()), b(q.clone())))],
                vec![vec![p.clone(), not(q.clone())]],
            ),
            LLRule::NotIff(p, q) => simple(
                vec![not(F::Iff(b(p.clone()), b(q.clone())))],
                vec![
                    vec![not(p.clone()), q.clone()],
                    vec![p.clone(), not(q.clone())],
                ],
            ),
            LLRule::Exists(a, c) => Shape {
                consumed: vec![F::exists(&a.var, a.ty.clone(), a.body.clone())],
                eigen: Eigen::Term(c.clone(), a.ty.clone()),
                branches: vec![vec![a.apply(&TffTerm::Var(c.clone()))]],
            },
            LLRule::NotForall(a, c) => Shape {
                consumed: vec![not(F::forall(&a.var, a.ty.clone(), a.body.clone()))],
                eigen: Eigen::Term(c.clone(), a.ty.clone()),
                branches: vec![vec![not(a.apply(&TffTerm::Var(c.clone())))]],
            },
            LLRule::Forall(a, t) => simple(
                vec![F::forall(&a.var, a.ty.clone(), a.body.clone())],
                vec![vec![a.apply(t)]],
            ),
            LLRule::NotExists(a, t) => simple(
                vec![not(F::exists(&a.var, a.ty.clone(), a.body.clone()))],
                vec![vec![not(a.apply(t))]],
            ),
            LLRule::ExistsType(a, c) => Shape {
                consumed: vec![F::exists_type(&a.var, a.body.clone())],
                eigen: Eigen::Type(c.clone()),
                branches: vec![vec![a.apply(&TffType::Var(c.clone()))]],
            },
            LLRule::NotForallType(a, c) => Shape {
                consumed: vec![not(F::forall_type(&a.var, a.body.clone()))],
                eigen: Eigen::Type(c.clone()),
                branches: vec![vec![not(a.apply(&TffType::Var(c.clone())))]],
            },
            LLRule::ForallType(a, t) => simple(
                vec![F::forall_type(&a.var, a.body.clone())],
                vec![vec![a.apply(t)]],
            ),
            LLRule::NotExistsType(a, t) => simple(
                vec![not(F::exists_type(&a.var, a.body.clone()))],
                vec![vec![not(a.apply(t))]],
            ),
            LLRule::Pred {
                name,
                tys,
                lhs,
                rhs,
                eq_types,
            } => simple(
                vec![
                    F::pred(name, tys.clone(), lhs.clone()),
                    not(F::pred(name, tys.clone(), rhs.clone())),
                ],
                pairwise(eq_types, lhs, rhs),
            ),
            LLRule::Fun {
                name,
                tys,
                lhs,
                rhs,
                eq_types,
                result,
            } => simple(
                vec![neq(
                    result,
                    &TffTerm::fun(name, tys.clone(), lhs.clone()),
                    &TffTerm::fun(name, tys.clone(), rhs.clone()),
                )],
                pairwise(eq_types, lhs, rhs),
            ),
            LLRule::Subst(a, t, u) => simple(
                vec![a.apply(t)],
                vec![vec![neq(&a.ty, t, u)], vec![a.apply(u)]],
            ),
            LLRule::Ext { name, abs } => {
                let r = super::ext::builtin(name)?;
                simple(
                    vec![r.conclusion(&abs.var, &abs.body)],
                    r.branches(&abs.var, &abs.body),
                )
            }
        })
    }
}

fn pairwise(tys: &[TffType], ts: &[TffTerm], us: &[TffTerm]) -> Vec<Vec<Formula>> {
    tys.iter()
        .zip(ts.iter().zip(us))
        .map(|(ty, (t, u))| vec![neq(ty, t, u)])
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LLProof {
    pub rule: LLRule,
    pub premises: Vec<LLProof>,
    /// The hypotheses this node's parent introduced, as written. When
    /// present they must be congruent to the computed ones.
    pub hyps: Option<Vec<Formula>>,
}

impl LLProof {
    pub fn new(rule: LLRule, premises: Vec<LLProof>) -> Self {
        LLProof {
            rule,
            premises,
            hyps: None,
        }
    }

    pub fn leaf(rule: LLRule) -> Self {
        LLProof::new(rule, vec![])
    }

    pub fn with_hyps(mut self, hyps: Vec<Formula>) -> Self {
        self.hyps = Some(hyps);
        self
    }

    pub fn size(&self) -> usize {
        1 + self.premises.iter().map(LLProof::size).sum::<usize>()
    }

    /// The subtree at `path`.
    pub fn at(&self, path: &[usize]) -> Option<&LLProof> {
        match path.split_first() {
            None => Some(self),
            Some((i, rest)) => self.premises.get(*i)?.at(rest),
        }
    }

    pub fn at_mut(&mut self, path: &[usize]) -> Option<&mut LLProof> {
        match path.split_first() {
            None => Some(self),
            Some((i, rest)) => self.premises.get_mut(*i)?.at_mut(rest),
        }
    }

    /// Paths of every node in pre-order.
    pub fn paths(&self) -> Vec<Vec<usize>> {
        let mut out = vec![vec![]];
        for (i, p) in self.premises.iter().enumerate() {
            out.extend(p.paths().into_iter().map(|mut q| {
                q.insert(0, i);
                q
            }));
        }
        out
    }
}

/// Location of a node: premise indices from the root.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct NodePath(pub Vec<usize>);

impl fmt::Display for NodePath {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "root")?;
        for i in &self.0 {
            write!(f, ".{i}")?;
        }
        Ok(())
    }
}

fn join<T: fmt::Display>(xs: &[T]) -> String {
    xs.iter()
        .map(|x| x.to_string())
        .collect::<Vec<_>>()
        .join(" ")
}

impl fmt::Display for LLRule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let tag = self.tag();
        let abs = |a: &Abstraction| format!("({} {}) {}", a.var, a.ty, a.body);
        match self {
            LLRule::Bot | LLRule::NotTop => write!(f, "{tag}"),
            LLRule::Ax(p) | LLRule::Cut(p) | LLRule::NotNot(p) => write!(f, "{tag} {p}"),
            LLRule::Neq(ty, t) => write!(f, "{tag} {ty} {t}"),
            LLRule::Sym(ty, t, u) => write!(f, "{tag} {ty} {t} {u}"),
            LLRule::And(p, q)
            | LLRule::Or(p, q)
            | LLRule::Imp(p, q)
            | LLRule::Iff(p, q)
            | LLRule::NotAnd(p, q)
            | LLRule::NotOr(p, q)
            | LLRule::NotImp(p, q)
            | LLRule::NotIff(p, q) => write!(f, "{tag} {p} {q}"),
            LLRule::Exists(a, c) | LLRule::NotForall(a, c) => write!(f, "{tag} {} {c}", abs(a)),
            LLRule::Forall(a, t) | LLRule::NotExists(a, t) => write!(f, "{tag} {} {t}", abs(a)),
            LLRule::ExistsType(a, c) | LLRule::NotForallType(a, c) => {
                write!(f, "{tag} {} {} {c}", a.var, a.body)
            }
            LLRule::ForallType(a, t) | LLRule::NotExistsType(a, t) => {
                write!(f, "{tag} {} {} {t}", a.var, a.body)
            }
            LLRule::Pred {
                name,
                tys,
                lhs,
                rhs,
                ..
            }
            | LLRule::Fun {
                name,
                tys,
                lhs,
                rhs,
                ..
            } => {
                write!(
                    f,
                    "{tag} {name} ({}) ({}) ({})",
                    join(tys),
                    join(lhs),
                    join(rhs)
                )
            }
            LLRule::Subst(a, t, u) => write!(f, "{tag} {} {t} {u}", abs(a)),
            LLRule::Ext { name, abs: a } => write!(f, "{tag} {name} {}", abs(a)),
        }
    }
}

impl LLProof {
    fn write(&self, f: &mut fmt::Formatter<'_>, indent: usize) -> fmt::Result {
        write!(f, "{:indent$}({}", "", self.rule)?;
        for p in &self.premises {
            writeln!(f)?;
            p.write(f, indent + 2)?;
        }
        if let Some(h) = &self.hyps {
            write!(f, "\n{:w$}(hyps {})", "", join(h), w = indent + 2)?;
        }
        write!(f, ")")
    }
}

/// The `.llpx` node syntax, one node per line.
impl fmt::Display for LLProof {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.write(f, 0)
    }
}
