//! The trusted core: terms, reduction, conversion and typing.

pub mod error;
pub mod print;
pub mod reduce;
pub mod subst;
pub mod term;
pub mod typing;

pub use error::{KResult, KernelError};
pub use print::{pretty, pretty_closed};
pub use reduce::{convertible, match_pattern, normalize, whnf};
pub use subst::{instantiate, instantiate_many, substitute, Substitution};
pub use term::{BinderName, Name, Sort, Term, TermKind};
pub use typing::{check, infer, LocalCtx};

pub const DEFAULT_STEPS: u64 = 100_000;
pub const DEFAULT_CONV_DEPTH: u32 = 10_000;

/// Step budget for one kernel operation.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Fuel {
    pub steps: u64,
    pub max_conv_depth: u32,
}

impl Default for Fuel {
    fn default() -> Self {
        Fuel {
            steps: DEFAULT_STEPS,
            max_conv_depth: DEFAULT_CONV_DEPTH,
        }
    }
}

impl Fuel {
    pub fn new(steps: u64, max_conv_depth: u32) -> Self {
        Fuel {
            steps,
            max_conv_depth,
        }
    }

    /// Consumes one rewrite or β step.
    pub fn tick(&mut self) -> KResult<()> {
        if self.steps == 0 {
            return Err(KernelError::FuelExhausted("rewrite steps"));
        }
        self.steps -= 1;
        Ok(())
    }
}
