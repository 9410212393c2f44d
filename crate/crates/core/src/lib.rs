//! A proof checker for the λΠ-calculus modulo rewriting, with translations
//! from typed first-order theories and sequent proofs.

pub mod dkparse;
pub mod driver;
pub mod embed;
pub mod kernel;
pub mod llproof;
pub mod session;
pub mod signature;
pub mod tff;

pub use kernel::{Fuel, KernelError, Term};
pub use signature::{SigError, Signature};
