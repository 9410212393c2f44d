//! A direct check of proof trees on formulas, without the kernel.
//!
//! Hypotheses are matched up to α-equivalence only, so trees that rely on
//! rewriting are rejected here. `Pred` and `Fun` are checked natively.

use std::collections::BTreeSet;

use super::ast::{Eigen, LLProof, LLRule, NodePath};
use super::translate::ProofError;
use crate::tff::check::{infer_term, wf_type};
use crate::tff::{not, Env, Formula, TffContext, TffType};

struct Validator<'a> {
    env: &'a Env,
    gamma: Vec<Formula>,
    ctx: TffContext,
}

impl Validator<'_> {
    fn free_in_gamma(&self, x: &str, ty: bool) -> bool {
        self.gamma.iter().any(|f| {
            let (mut vs, mut ts) = (BTreeSet::new(), BTreeSet::new());
            f.free_vars(&mut vs, &mut ts);
            if ty {
                ts.contains(x)
            } else {
                vs.contains(x)
            }
        })
    }

    fn witness_ok(&self, rule: &LLRule, path: &NodePath) -> Result<(), ProofError> {
        let (abs_ty, t) = match rule {
            LLRule::Forall(a, t) | LLRule::NotExists(a, t) => (&a.ty, t),
            LLRule::ForallType(_, t) | LLRule::NotExistsType(_, t) => {
                return wf_type(self.env, &self.ctx.tvars, t).map_err(|err| ProofError::Witness {
                    path: path.clone(),
                    err,
                })
            }
            LLRule::Pred {
                lhs, rhs, eq_types, ..
            }
            | LLRule::Fun {
                lhs, rhs, eq_types, ..
            } => {
                for (ty, t) in eq_types.iter().cycle().zip(lhs.iter().chain(rhs)) {
                    self.term_has(t, ty, path)?;
                }
                return Ok(());
            }
            _ => return Ok(()),
        };
        self.term_has(t, abs_ty, path)
    }

    fn term_has(
        &self,
        t: &crate::tff::TffTerm,
        ty: &TffType,
        path: &NodePath,
    ) -> Result<(), ProofError> {
        let found = infer_term(self.env, &self.ctx, t).map_err(|err| ProofError::Witness {
            path: path.clone(),
            err,
        })?;
        if &found != ty {
            return Err(ProofError::WitnessType {
                path: path.clone(),
                expected: ty.clone(),
                found,
            });
        }
        Ok(())
    }

    fn node(&mut self, p: &LLProof, path: &mut Vec<usize>) -> Result<(), ProofError> {
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
        for c in &shape.consumed {
            if !self.gamma.iter().any(|g| g.alpha_eq(c)) {
                return Err(ProofError::MissingHypothesis {
                    path: here,
                    formula: c.to_string(),
                });
            }
        }
        self.witness_ok(&p.rule, &here)?;
        let fresh_err = |name: &str| ProofError::Freshness {
            path: here.clone(),
            name: name.to_string(),
        };
        match &shape.eigen {
            Eigen::None => {}
            Eigen::Term(c, _) => {
                if self.env.declares(c)
                    || self.free_in_gamma(c, false)
                    || self.ctx.lookup(c).is_some()
                {
                    return Err(fresh_err(c));
                }
            }
            Eigen::Type(a) => {
                if self.env.types.contains_key(a)
                    || self.free_in_gamma(a, true)
                    || self.ctx.has_tvar(a)
                {
                    return Err(fresh_err(a));
                }
            }
        }
        for (i, (branch, q)) in shape.branches.iter().zip(&p.premises).enumerate() {
            path.push(i);
            let r = self.branch(&shape.eigen, branch, q, path);
            path.pop();
            r?;
        }
        Ok(())
    }

    fn branch(
        &mut self,
        eigen: &Eigen,
        hyps: &[Formula],
        q: &LLProof,
        path: &mut Vec<usize>,
    ) -> Result<(), ProofError> {
        if let Some(written) = &q.hyps {
            let here = NodePath(path.clone());
            if written.len() != hyps.len() {
                return Err(ProofError::HypsCount {
                    path: here,
                    expected: hyps.len(),
                    found: written.len(),
                });
            }
            if let Some((_, h)) = written.iter().zip(hyps).find(|(a, b)| !a.alpha_eq(b)) {
                return Err(ProofError::MissingHypothesis {
                    path: here,
                    formula: h.to_string(),
                });
            }
        }
        match eigen {
            Eigen::None => {}
            Eigen::Term(c, ty) => self.ctx.vars.push((c.clone(), ty.clone())),
            Eigen::Type(a) => self.ctx.tvars.push(a.clone()),
        }
        let n = self.gamma.len();
        self.gamma.extend(hyps.iter().cloned());
        let r = self.node(q, path);
        self.gamma.truncate(n);
        match eigen {
            Eigen::None => {}
            Eigen::Term(..) => {
                self.ctx.vars.pop();
            }
            Eigen::Type(_) => {
                self.ctx.tvars.pop();
            }
        }
        r
    }
}

/// Checks that `proof` refutes `¬goal` under the axioms of `env`.
pub fn validate(env: &Env, goal: &Formula, proof: &LLProof) -> Result<(), ProofError> {
    let root = not(goal.clone());
    let mut v = Validator {
        env,
        gamma: env.axioms.iter().map(|(_, f)| f.clone()).collect(),
        ctx: TffContext::new(),
    };
    v.branch(&Eigen::None, &[root], proof, &mut Vec::new())
}
