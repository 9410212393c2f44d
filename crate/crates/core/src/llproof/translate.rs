//! Compilation of proof trees into kernel terms.
//!
//! A node becomes its rule constant applied to the rule parameters, one
//! λ-abstraction per premise binding the hypotheses that premise adds, and
//! the variables of the hypotheses the node consumes.

use thiserror::Error;

use super::ast::{Eigen, LLProof, LLRule, NodePath};
use super::{ext, rule_const};
use crate::embed::{
    abstract_term, abstract_type, logic, prf, translate_formula, translate_term, translate_type,
    Binder, KScope,
};
use crate::kernel::{check, convertible, BinderName, Fuel, KernelError, LocalCtx, Name, Term};
use crate::signature::Signature;
use crate::tff::check::{infer_term, wf_type};
use crate::tff::{Env, Formula, TffContext, TffError, TffType};

#[derive(Clone, Debug, Error, PartialEq, Eq)]
pub enum ProofError {
    #[error("{path}: no hypothesis matches `{formula}`")]
    MissingHypothesis { path: NodePath, formula: String },
    #[error("{path}: `{name}` is not fresh")]
    Freshness { path: NodePath, name: String },
    #[error("{path}: bad witness: {err}")]
    Witness { path: NodePath, err: TffError },
    #[error("{path}: witness has type {found}, expected {expected}")]
    WitnessType {
        path: NodePath,
        expected: TffType,
        found: TffType,
    },
    #[error("{path}: rule `{rule}` needs {expected} premises, found {found}")]
    PremiseCount {
        path: NodePath,
        rule: &'static str,
        expected: usize,
        found: usize,
    },
    #[error("{path}: expected {expected} hypotheses, found {found}")]
    HypsCount {
        path: NodePath,
        expected: usize,
        found: usize,
    },
    #[error("{path}: unknown extension rule `{name}`")]
    UnknownExt { path: NodePath, name: String },
    #[error("{path}: `{rule}` node must be eliminated before compilation")]
    NotEliminated { path: NodePath, rule: &'static str },
    #[error("{path}: {err}")]
    Kernel { path: NodePath, err: KernelError },
}

impl ProofError {
    pub fn path(&self) -> &NodePath {
        match self {
            ProofError::MissingHypothesis { path, .. }
            | ProofError::Freshness { path, .. }
            | ProofError::Witness { path, .. }
            | ProofError::WitnessType { path, .. }
            | ProofError::PremiseCount { path, .. }
            | ProofError::HypsCount { path, .. }
            | ProofError::UnknownExt { path, .. }
            | ProofError::NotEliminated { path, .. }
            | ProofError::Kernel { path, .. } => path,
        }
    }

    pub fn is_fuel(&self) -> bool {
        matches!(self, ProofError::Kernel { err, .. } if err.is_fuel())
    }
}

/// A compiled node with the context it lives in.
#[derive(Clone, Debug)]
pub struct NodeTerm {
    pub path: NodePath,
    pub ctx: LocalCtx,
    pub term: Term,
}

enum Hyp {
    Local(String),
    Axiom(Name),
}

pub struct Translator<'a> {
    thy: &'a str,
    env: &'a Env,
    sig: &'a Signature,
    fuel: Fuel,
    sc: KScope,
    ctx: LocalCtx,
    tctx: TffContext,
    hyps: Vec<(Formula, Hyp)>,
    counter: usize,
    /// Every compiled node, children before parents.
    pub nodes: Vec<NodeTerm>,
}

impl<'a> Translator<'a> {
    /// `sig` must hold the translation of the theory `thy`.
    pub fn new(thy: &'a str, env: &'a Env, sig: &'a Signature, fuel: Fuel) -> Self {
        let hyps = env
            .axioms
            .iter()
            .map(|(n, f)| {
                (
                    f.clone(),
                    Hyp::Axiom(crate::dkparse::scope::qualify(thy, n)),
                )
            })
            .collect();
        Translator {
            thy,
            env,
            sig,
            fuel,
            sc: KScope::new(),
            ctx: LocalCtx::new(),
            tctx: TffContext::new(),
            hyps,
            counter: 0,
            nodes: Vec::new(),
        }
    }

    fn formula(&mut self, f: &Formula) -> Term {
        translate_formula(self.thy, &mut self.sc, f)
    }

    fn fresh_hyp_name(&mut self) -> String {
        loop {
            let h = format!("h{}", self.counter);
            self.counter += 1;
            if !self.env.declares(&h) && !self.sc.binds(&h) {
                return h;
            }
        }
    }

    /// Binds a hypothesis; returns its name and kernel type.
    fn push_hyp(&mut self, f: &Formula) -> (String, Term) {
        let h = self.fresh_hyp_name();
        let ty = prf(self.formula(f));
        self.ctx.push(BinderName::new(&h), ty.clone());
        self.sc.push(Binder::Hyp, &h);
        self.hyps.push((f.clone(), Hyp::Local(h.clone())));
        (h, ty)
    }

    fn pop_hyp(&mut self) {
        self.ctx.pop();
        self.sc.pop();
        self.hyps.pop();
    }

    fn hyp_term(&self, h: &Hyp) -> Term {
        match h {
            Hyp::Local(x) => Term::var(self.sc.index(Binder::Hyp, x).expect("bound hypothesis")),
            Hyp::Axiom(c) => Term::cst(c.clone()),
        }
    }

    fn hyp_type(&self, h: &Hyp) -> Option<Term> {
        match h {
            Hyp::Local(x) => self.ctx.lookup(self.sc.index(Binder::Hyp, x)?),
            Hyp::Axiom(c) => self.sig.type_of(c).cloned(),
        }
    }

    /// A hypothesis for `f`: syntactically equal first, then convertible.
    fn find(&mut self, f: &Formula, path: &NodePath) -> Result<Term, ProofError> {
        if let Some((_, h)) = self.hyps.iter().rev().find(|(g, _)| g.alpha_eq(f)) {
            return Ok(self.hyp_term(h));
        }
        let want = prf(self.formula(f));
        for (_, h) in self.hyps.iter().rev() {
            let Some(ty) = self.hyp_type(h) else { continue };
            let mut fuel = self.fuel;
            match convertible(self.sig, &want, &ty, &mut fuel) {
                Ok(true) => return Ok(self.hyp_term(h)),
                Ok(false) => {}
                Err(e) if e.is_fuel() => {
                    return Err(ProofError::Kernel {
                        path: path.clone(),
                        err: e,
                    })
                }
                Err(_) => {}
            }
        }
        Err(ProofError::MissingHypothesis {
            path: path.clone(),
            formula: f.to_string(),
        })
    }

    fn witness(&self, path: &NodePath, r: Result<(), TffError>) -> Result<(), ProofError> {
        r.map_err(|err| ProofError::Witness {
            path: path.clone(),
            err,
        })
    }

    fn check_witnesses(&self, rule: &LLRule, path: &NodePath) -> Result<(), ProofError> {
        match rule {
            LLRule::Forall(a, t) | LLRule::NotExists(a, t) => {
                let ty =
                    infer_term(self.env, &self.tctx, t).map_err(|err| ProofError::Witness {
                        path: path.clone(),
                        err,
                    })?;
                if ty != a.ty {
                    return Err(ProofError::WitnessType {
                        path: path.clone(),
                        expected: a.ty.clone(),
                        found: ty,
                    });
                }
                Ok(())
            }
            LLRule::ForallType(_, t) | LLRule::NotExistsType(_, t) => {
                self.witness(path, wf_type(self.env, &self.tctx.tvars, t))
            }
            _ => Ok(()),
        }
    }

    fn check_fresh(&self, eigen: &Eigen, path: &NodePath) -> Result<(), ProofError> {
        let clash = match eigen {
            Eigen::None => return Ok(()),
            Eigen::Term(c, _) => self.env.declares(c) || self.sc.index(Binder::Term, c).is_some(),
            Eigen::Type(a) => {
                self.env.types.contains_key(a) || self.sc.index(Binder::Type, a).is_some()
            }
        };
        if clash {
            let name = match eigen {
                Eigen::Term(c, _) | Eigen::Type(c) => c.clone(),
                Eigen::None => unreachable!(),
            };
            return Err(ProofError::Freshness {
                path: path.clone(),
                name,
            });
        }
        Ok(())
    }

    /// Rule parameters, translated in the current scope.
    fn args(&mut self, rule: &LLRule, path: &NodePath) -> Result<(Term, Vec<Term>), ProofError> {
        let thy = self.thy;
        let ty = |sc: &KScope, t| translate_type(thy, sc, t);
        let tm = |sc: &KScope, t| translate_term(thy, sc, t);
        let r = |c: &str| rule_const(c);
        Ok(match rule {
            LLRule::Bot => (r("R_bot"), vec![]),
            LLRule::NotTop => (r("R_ntop"), vec![]),
            LLRule::Ax(p) => (r("R_Ax"), vec![self.formula(p)]),
            LLRule::Cut(p) => (r("R_Cut"), vec![self.formula(p)]),
            LLRule::NotNot(p) => (r("R_nn"), vec![self.formula(p)]),
            LLRule::Neq(t, a) => (r("R_neq"), vec![ty(&self.sc, t), tm(&self.sc, a)]),
            LLRule::Sym(t, a, b) => (
                r("R_Sym"),
                vec![ty(&self.sc, t), tm(&self.sc, a), tm(&self.sc, b)],
            ),
            LLRule::And(p, q)
            | LLRule::Or(p, q)
            | LLRule::Imp(p, q)
            | LLRule::Iff(p, q)
            | LLRule::NotAnd(p, q)
            | LLRule::NotOr(p, q)
            | LLRule::NotImp(p, q)
            | LLRule::NotIff(p, q) => {
                let c = match rule {
                    LLRule::And(..) => "R_and",
                    LLRule::Or(..) => "R_or",
                    LLRule::Imp(..) => "R_imp",
                    LLRule::Iff(..) => "R_eqv",
                    LLRule::NotAnd(..) => "R_nand",
                    LLRule::NotOr(..) => "R_nor",
                    LLRule::NotImp(..) => "R_nimp",
                    _ => "R_neqv",
                };
                (r(c), vec![self.formula(p), self.formula(q)])
            }
            LLRule::Exists(a, _)
            | LLRule::NotForall(a, _)
            | LLRule::Forall(a, _)
            | LLRule::NotExists(a, _) => {
                let t = ty(&self.sc, &a.ty);
                let p = abstract_term(thy, &mut self.sc, &a.var, t.clone(), &a.body);
                match rule {
                    LLRule::Exists(..) => (r("R_ex"), vec![t, p]),
                    LLRule::NotForall(..) => (r("R_nall"), vec![t, p]),
                    LLRule::Forall(_, w) => (r("R_all"), vec![t, p, tm(&self.sc, w)]),
                    LLRule::NotExists(_, w) => (r("R_nex"), vec![t, p, tm(&self.sc, w)]),
                    _ => unreachable!(),
                }
            }
            LLRule::ExistsType(a, _)
            | LLRule::NotForallType(a, _)
            | LLRule::ForallType(a, _)
            | LLRule::NotExistsType(a, _) => {
                let p = abstract_type(thy, &mut self.sc, &a.var, &a.body);
                match rule {
                    LLRule::ExistsType(..) => (r("R_extype"), vec![p]),
                    LLRule::NotForallType(..) => (r("R_nalltype"), vec![p]),
                    LLRule::ForallType(_, w) => (r("R_alltype"), vec![p, ty(&self.sc, w)]),
                    LLRule::NotExistsType(_, w) => (r("R_nextype"), vec![p, ty(&self.sc, w)]),
                    _ => unreachable!(),
                }
            }
            LLRule::Subst(a, t, u) => {
                let tau = ty(&self.sc, &a.ty);
                let p = abstract_term(thy, &mut self.sc, &a.var, tau.clone(), &a.body);
                (r("R_Subst"), vec![tau, p, tm(&self.sc, t), tm(&self.sc, u)])
            }
            LLRule::Ext { name, abs } => {
                let e = ext::builtin(name).ok_or_else(|| ProofError::UnknownExt {
                    path: path.clone(),
                    name: name.clone(),
                })?;
                let t = ty(&self.sc, &abs.ty);
                let p = abstract_term(thy, &mut self.sc, &abs.var, t, &abs.body);
                (Term::cst(e.constant(thy)), vec![p])
            }
            LLRule::Pred { .. } | LLRule::Fun { .. } => {
                return Err(ProofError::NotEliminated {
                    path: path.clone(),
                    rule: rule.tag(),
                })
            }
        })
    }

    /// Compiles `p`, whose sequent is the current hypothesis stack.
    pub fn node(&mut self, p: &LLProof, path: &mut Vec<usize>) -> Result<Term, ProofError> {
        let here = NodePath(path.clone());
        let shape = p.rule.shape().ok_or_else(|| ProofError::UnknownExt {
            path: here.clone(),
            name: p.rule.tag().to_string(),
        })?;
        if p.premises.len() != shape.branches.len() {
            return Err(ProofError::PremiseCount {
                path: here,
                rule: p.rule.tag(),
                expected: shape.branches.len(),
                found: p.premises.len(),
            });
        }
        self.check_witnesses(&p.rule, &here)?;
        let (head, mut args) = self.args(&p.rule, &here)?;
        let consumed = shape
            .consumed
            .iter()
            .map(|c| self.find(c, &here))
            .collect::<Result<Vec<_>, _>>()?;
        for (i, (branch, premise)) in shape.branches.iter().zip(&p.premises).enumerate() {
            path.push(i);
            let r = self.branch(&shape.eigen, branch, premise, path);
            path.pop();
            args.push(r?);
        }
        args.extend(consumed);
        let term = Term::apps(head, args);
        self.nodes.push(NodeTerm {
            path: here,
            ctx: self.ctx.clone(),
            term: term.clone(),
        });
        Ok(term)
    }

    fn branch(
        &mut self,
        eigen: &Eigen,
        computed: &[Formula],
        premise: &LLProof,
        path: &mut Vec<usize>,
    ) -> Result<Term, ProofError> {
        let here = NodePath(path.clone());
        let hyps = match &premise.hyps {
            Some(h) if h.len() != computed.len() => {
                return Err(ProofError::HypsCount {
                    path: here,
                    expected: computed.len(),
                    found: h.len(),
                })
            }
            Some(h) => h.clone(),
            None => computed.to_vec(),
        };
        // The freshness check belongs to the parent node.
        let parent = NodePath(path[..path.len() - 1].to_vec());
        self.check_fresh(eigen, &parent)?;
        let binder = match eigen {
            Eigen::None => None,
            Eigen::Term(c, ty) => {
                let t = crate::embed::term_of(translate_type(self.thy, &self.sc, ty));
                self.ctx.push(BinderName::new(c), t.clone());
                self.sc.push(Binder::Term, c);
                self.tctx.vars.push((c.clone(), ty.clone()));
                Some((c.clone(), t))
            }
            Eigen::Type(a) => {
                self.ctx.push(BinderName::new(a), logic("type"));
                self.sc.push(Binder::Type, a);
                self.tctx.tvars.push(a.clone());
                Some((a.clone(), logic("type")))
            }
        };
        let bound: Vec<_> = hyps.iter().map(|h| self.push_hyp(h)).collect();
        let body = self.node(premise, path);
        for _ in &bound {
            self.pop_hyp();
        }
        if binder.is_some() {
            self.ctx.pop();
            self.sc.pop();
            match eigen {
                Eigen::Term(..) => {
                    self.tctx.vars.pop();
                }
                _ => {
                    self.tctx.tvars.pop();
                }
            }
        }
        let mut t = body?;
        for (h, ty) in bound.into_iter().rev() {
            t = Term::lam(&h, ty, t);
        }
        if let Some((x, ty)) = binder {
            t = Term::lam(&x, ty, t);
        }
        Ok(t)
    }

    /// `λh0 : prf ⟦¬goal⟧. ⟦proof⟧` and its expected type
    /// `prf ⟦¬goal⟧ -> prf False`.
    pub fn refutation(
        &mut self,
        goal: &Formula,
        proof: &LLProof,
    ) -> Result<(Term, Term), ProofError> {
        let neg = crate::tff::not(goal.clone());
        let ty = Term::arrow(prf(self.formula(&neg)), prf(logic("False")));
        let root = match &proof.hyps {
            Some(h) if h.len() != 1 => {
                return Err(ProofError::HypsCount {
                    path: NodePath::default(),
                    expected: 1,
                    found: h.len(),
                })
            }
            Some(h) => h[0].clone(),
            None => neg,
        };
        let (h, hty) = self.push_hyp(&root);
        let body = self.node(proof, &mut Vec::new());
        self.pop_hyp();
        Ok((Term::lam(&h, hty, body?), ty))
    }

    /// The first compiled node, children first, that fails to check.
    pub fn localize(&self) -> Option<ProofError> {
        for n in &self.nodes {
            let mut fuel = self.fuel;
            if let Err(err) = check(self.sig, &n.ctx, &n.term, &prf(logic("False")), &mut fuel) {
                return Some(ProofError::Kernel {
                    path: n.path.clone(),
                    err,
                });
            }
        }
        None
    }
}
