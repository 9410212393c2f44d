//! Certificates: a goal, its refutation and the kernel check tying them
//! together.

use thiserror::Error;

use super::ast::{LLProof, NodePath};
use super::eliminate::{eliminate_pred_fun, ElimError};
use super::translate::{ProofError, Translator};
use super::{load_rules, CERT, RULES};
use crate::dkparse::scope::qualify;
use crate::dkparse::KEntry;
use crate::embed::{load_prelude, load_theory, Mode, LOGIC, RESERVED_MODULES};
use crate::kernel::{Fuel, Term};
use crate::session::{CheckError, CheckErrorKind, Session};
use crate::signature::SigError;
use crate::tff::{wf_formula, wf_theory, Formula, TffContext, TffError, Theory, TheoryError};

/// Name of the defined constant in the certificate module.
pub const GOAL: &str = "goal";

#[derive(Clone, Debug, Error, PartialEq, Eq)]
pub enum CertError {
    #[error("theory `{0}` uses a reserved module name")]
    ReservedName(String),
    #[error("ill-formed theory: {0}")]
    Theory(#[from] TheoryError),
    #[error("ill-formed goal: {0}")]
    Goal(TffError),
    #[error("prelude rejected: {0}")]
    Prelude(CheckError),
    #[error(transparent)]
    Elim(#[from] ElimError),
    #[error(transparent)]
    Proof(#[from] ProofError),
}

impl CertError {
    pub fn is_fuel(&self) -> bool {
        match self {
            CertError::Prelude(e) => e.kind.is_fuel(),
            CertError::Proof(e) => e.is_fuel(),
            _ => false,
        }
    }

    /// The proof node the error points at, if any.
    pub fn path(&self) -> Option<&NodePath> {
        match self {
            CertError::Elim(e) => Some(&e.path),
            CertError::Proof(e) => Some(e.path()),
            _ => None,
        }
    }
}

/// A compiled certificate and the session holding everything it needs.
#[derive(Debug)]
pub struct Compiled {
    /// Has `logic`, `rules` and the theory loaded.
    pub session: Session,
    pub theory: Vec<KEntry>,
    /// The proof after `Pred`/`Fun` elimination.
    pub proof: LLProof,
    /// Entries of the certificate module.
    pub entries: Vec<KEntry>,
    pub term: Term,
    pub ty: Term,
}

/// Builds the certificate module for `proof` without checking it.
pub fn compile_certificate(
    thy: &Theory,
    goal: &Formula,
    proof: &LLProof,
    mode: Mode,
    fuel: Fuel,
) -> Result<Compiled, CertError> {
    if RESERVED_MODULES.contains(&thy.name.as_str()) {
        return Err(CertError::ReservedName(thy.name.clone()));
    }
    let env = wf_theory(thy)?;
    wf_formula(&env, &TffContext::new(), goal).map_err(CertError::Goal)?;
    let mut session = Session::new(fuel);
    load_prelude(&mut session, mode).map_err(CertError::Prelude)?;
    load_rules(&mut session, mode).map_err(CertError::Prelude)?;
    let theory = load_theory(&mut session, thy).map_err(CertError::Prelude)?;
    let proof = eliminate_pred_fun(&env, proof)?;
    let mut tr = Translator::new(&thy.name, &env, &session.sig, fuel);
    let (term, ty) = tr.refutation(goal, &proof)?;
    let entries = vec![
        KEntry::Require(LOGIC.to_string()),
        KEntry::Require(RULES.to_string()),
        KEntry::Require(thy.name.clone()),
        KEntry::Def {
            name: qualify(CERT, GOAL),
            ty: ty.clone(),
            body: term.clone(),
        },
    ];
    Ok(Compiled {
        session,
        theory,
        proof,
        entries,
        term,
        ty,
    })
}

/// Compiles and checks a certificate. A kernel failure is reported at the
/// first node, children before parents, whose own term is ill-typed.
pub fn check_certificate(
    thy: &Theory,
    goal: &Formula,
    proof: &LLProof,
    mode: Mode,
    fuel: Fuel,
) -> Result<Compiled, CertError> {
    let mut c = compile_certificate(thy, goal, proof, mode, fuel)?;
    if let Err(e) = c.session.load_kentries(CERT, &c.entries) {
        let err = match e.kind {
            CheckErrorKind::Kernel(err)
            | CheckErrorKind::Sig(SigError::Kernel(err))
            | CheckErrorKind::Sig(SigError::IllTypedSide { source: err, .. }) => err,
            _ => return Err(CertError::Prelude(e)),
        };
        // The failed definition left the signature untouched.
        let env = wf_theory(thy)?;
        let mut tr = Translator::new(&thy.name, &env, &c.session.sig, fuel);
        tr.refutation(goal, &c.proof)?;
        return Err(match tr.localize() {
            Some(e) => e.into(),
            None => ProofError::Kernel {
                path: NodePath::default(),
                err,
            }
            .into(),
        });
    }
    Ok(c)
}
