//! Built-in extension rules: case analysis on booleans.

use crate::dkparse::scope::qualify;
use crate::embed::{false_, logic, prf, sym, term_of};
use crate::kernel::{Name, Term};
use crate::tff::check::{ext_constant, FunSig};
use crate::tff::{not, Env, Formula, TffTerm, TffType};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ExtRule {
    pub name: &'static str,
    /// `¬∀b:bool. P(b)` rather than `∃b:bool. P(b)`.
    negated: bool,
}

pub const BUILTINS: &[ExtRule] = &[
    ExtRule {
        name: "bool_case_nf",
        negated: true,
    },
    ExtRule {
        name: "bool_case_ex",
        negated: false,
    },
];

pub fn builtin(name: &str) -> Option<&'static ExtRule> {
    BUILTINS.iter().find(|r| r.name == name)
}

fn bool_ty() -> TffType {
    TffType::cons("bool", vec![])
}

impl ExtRule {
    /// The theory must declare `bool/0` and `true, false : bool`.
    pub fn check_requirements(&self, env: &Env) -> Result<(), String> {
        if env.types.get("bool") != Some(&0) {
            return Err("a nullary type constructor `bool`".into());
        }
        let constant = FunSig {
            tvars: vec![],
            args: vec![],
            ret: bool_ty(),
        };
        for c in ["true", "false"] {
            if env.funs.get(c) != Some(&constant) {
                return Err(format!("a constant `{c} : bool`"));
            }
        }
        Ok(())
    }

    pub fn constant(&self, thy: &str) -> Name {
        qualify(thy, &ext_constant(self.name))
    }

    /// `ΠP:(term bool -> Prop). (prf (S (P true)) -> prf False) ->
    /// (prf (S (P false)) -> prf False) -> prf C -> prf False`
    pub fn kernel_type(&self, thy: &str) -> Term {
        let bool_ = sym(thy, "bool");
        let p = Term::var(0);
        let side = |t: Term| {
            let a = Term::app(p.clone(), t);
            if self.negated {
                Term::app(logic("not"), a)
            } else {
                a
            }
        };
        let concl = if self.negated {
            Term::app(
                logic("not"),
                Term::apps(logic("forall"), [bool_.clone(), p.clone()]),
            )
        } else {
            Term::apps(logic("exists"), [bool_.clone(), p.clone()])
        };
        let branch = |t: Term| Term::arrow(prf(side(t)), prf(false_()));
        let body = Term::arrow(
            branch(sym(thy, "true")),
            Term::arrow(
                branch(sym(thy, "false")),
                Term::arrow(prf(concl), prf(false_())),
            ),
        );
        Term::pi("P", Term::arrow(term_of(bool_), logic("Prop")), body)
    }

    /// The formula the rule consumes, for the abstraction `λx:bool. body`.
    pub fn conclusion(&self, x: &str, body: &Formula) -> Formula {
        if self.negated {
            not(Formula::forall(x, bool_ty(), body.clone()))
        } else {
            Formula::exists(x, bool_ty(), body.clone())
        }
    }

    /// Hypotheses introduced in each branch.
    pub fn branches(&self, x: &str, body: &Formula) -> Vec<Vec<Formula>> {
        ["true", "false"]
            .iter()
            .map(|c| {
                let f = body.subst(x, &TffTerm::cst(c));
                vec![if self.negated { not(f) } else { f }]
            })
            .collect()
    }
}
