//! Sequent proofs, their rule constants, and their compilation into
//! certificates the kernel can check.

pub mod ast;
pub mod cert;
pub mod eliminate;
pub mod ext;
pub mod parse;
pub mod translate;
pub mod validate;

use crate::dkparse::{KEntry, Names};
use crate::embed::{logic_text, Mode, LOGIC};
use crate::kernel::Term;
use crate::session::{resolve_text, CheckError, Session};

pub use ast::{Abstraction, Eigen, LLProof, LLRule, NodePath, Shape, TypeAbstraction};
pub use cert::{check_certificate, compile_certificate, CertError, Compiled};
pub use eliminate::{eliminate_pred_fun, ElimError};
pub use parse::{parse_certificate, read_node, theory_ref, Certificate};
pub use translate::{ProofError, Translator};
pub use validate::validate;

pub const RULES: &str = "rules";
pub const CERT: &str = "cert";

pub const RULE_DECLS: &str = include_str!("rules.dk");
pub const LEMMAS: &str = include_str!("lemmas.dk");
pub const RULE_DEFS: &str = include_str!("rules_shallow.dk");

/// Source text of the `rules` module.
pub fn rules_text(mode: Mode) -> String {
    match mode {
        Mode::Deep => format!("#REQUIRE {LOGIC}.\n\n{RULE_DECLS}"),
        Mode::Shallow => format!("#REQUIRE {LOGIC}.\n\n{LEMMAS}\n{RULE_DECLS}\n{RULE_DEFS}"),
    }
}

/// The resolved `rules` module.
pub fn rules_prelude(mode: Mode) -> Vec<KEntry> {
    let mut names = Names::new();
    resolve_text(&mut names, LOGIC, &logic_text(mode)).expect("the logic prelude resolves");
    resolve_text(&mut names, RULES, &rules_text(mode)).expect("the rules prelude resolves")
}

pub fn load_rules(sess: &mut Session, mode: Mode) -> Result<Vec<KEntry>, CheckError> {
    let entries = rules_prelude(mode);
    sess.load_kentries(RULES, &entries)?;
    Ok(entries)
}

pub fn rule_const(c: &str) -> Term {
    Term::cst(format!("{RULES}.{c}"))
}
