//! A growing signature together with the module and name tables used to
//! resolve and check `.dk` entries.

use thiserror::Error;

use crate::dkparse::scope::elaborate_entry;
use crate::dkparse::{parse_file, KEntry, Located, Names, ScopeError, Span, SyntaxError};
use crate::kernel::typing::LocalCtx;
use crate::kernel::{check, infer, whnf, Fuel, KernelError};
use crate::signature::{SigError, Signature};

#[derive(Clone, Debug, Error, PartialEq, Eq)]
pub enum CheckErrorKind {
    #[error(transparent)]
    Scope(#[from] ScopeError),
    #[error(transparent)]
    Sig(#[from] SigError),
    #[error(transparent)]
    Kernel(#[from] KernelError),
    #[error("module `{0}` is not loaded")]
    MissingModule(String),
    #[error("module `{0}` is already loaded")]
    DuplicateModule(String),
}

impl CheckErrorKind {
    pub fn is_fuel(&self) -> bool {
        match self {
            CheckErrorKind::Sig(e) => e.is_fuel(),
            CheckErrorKind::Kernel(e) => e.is_fuel(),
            _ => false,
        }
    }
}

/// A failed entry, located in its module.
#[derive(Clone, Debug, Error, PartialEq, Eq)]
#[error("{module}:{span}: {kind}")]
pub struct CheckError {
    pub module: String,
    pub span: Span,
    pub kind: CheckErrorKind,
}

#[derive(Clone, Debug, Error, PartialEq, Eq)]
pub enum LoadError {
    #[error("{module}:{err}")]
    Syntax { module: String, err: SyntaxError },
    #[error(transparent)]
    Check(#[from] CheckError),
}

#[derive(Clone, Debug, Default)]
pub struct Session {
    pub sig: Signature,
    pub names: Names,
    modules: Vec<String>,
    /// Budget given afresh to each entry.
    pub fuel: Fuel,
}

impl Session {
    pub fn new(fuel: Fuel) -> Self {
        Session {
            fuel,
            ..Session::default()
        }
    }

    pub fn modules(&self) -> &[String] {
        &self.modules
    }

    pub fn has_module(&self, m: &str) -> bool {
        self.modules.iter().any(|x| x == m)
    }

    pub fn begin_module(&mut self, m: &str) -> Result<(), CheckErrorKind> {
        if self.has_module(m) {
            return Err(CheckErrorKind::DuplicateModule(m.to_string()));
        }
        self.modules.push(m.to_string());
        Ok(())
    }

    /// Checks and installs one resolved entry.
    pub fn add(&mut self, e: &KEntry) -> Result<(), CheckErrorKind> {
        let mut fuel = self.fuel;
        match e {
            KEntry::Decl { name, ty } => {
                self.sig.declare(name, ty.clone(), &mut fuel)?;
                self.names.insert(name);
            }
            KEntry::Def { name, ty, body } => {
                self.sig.define(name, ty.clone(), body.clone(), &mut fuel)?;
                self.names.insert(name);
            }
            KEntry::Rule { ctx, lhs, rhs } => {
                self.sig
                    .add_rewrite(ctx.clone(), lhs.clone(), rhs.clone(), &mut fuel)?;
            }
            KEntry::Assert { term, ty } => {
                let ctx = LocalCtx::new();
                let s = infer(&self.sig, &ctx, ty, &mut fuel)?;
                if whnf(&self.sig, &s, &mut fuel)?.as_sort().is_none() && !ty.is_kind() {
                    return Err(KernelError::SortError("asserted type is not a type".into()).into());
                }
                check(&self.sig, &ctx, term, ty, &mut fuel)?;
            }
            KEntry::Require(m) => {
                if !self.has_module(m) {
                    return Err(CheckErrorKind::MissingModule(m.clone()));
                }
            }
            KEntry::Comment(_) => {}
        }
        Ok(())
    }

    /// Resolves and checks the entries of module `m` in order.
    pub fn load_entries(
        &mut self,
        m: &str,
        entries: &[Located],
    ) -> Result<Vec<KEntry>, CheckError> {
        let at = |span: Span, kind: CheckErrorKind| CheckError {
            module: m.to_string(),
            span,
            kind,
        };
        let start = entries.first().map(|l| l.span).unwrap_or_default();
        self.begin_module(m).map_err(|k| at(start, k))?;
        let mut out = Vec::with_capacity(entries.len());
        for l in entries {
            let k = elaborate_entry(&self.names, m, &l.entry).map_err(|e| at(l.span, e.into()))?;
            self.add(&k).map_err(|e| at(l.span, e))?;
            out.push(k);
        }
        Ok(out)
    }

    pub fn load_text(&mut self, m: &str, text: &str) -> Result<Vec<KEntry>, LoadError> {
        let entries = parse_file(text).map_err(|err| LoadError::Syntax {
            module: m.to_string(),
            err,
        })?;
        Ok(self.load_entries(m, &entries)?)
    }

    /// Installs entries already resolved for module `m`.
    pub fn load_kentries(&mut self, m: &str, entries: &[KEntry]) -> Result<(), CheckError> {
        let at = |i: usize, kind: CheckErrorKind| CheckError {
            module: m.to_string(),
            span: Span {
                line: i as u32 + 1,
                col: 1,
            },
            kind,
        };
        self.begin_module(m).map_err(|k| at(0, k))?;
        for (i, e) in entries.iter().enumerate() {
            self.add(e).map_err(|k| at(i, k))?;
        }
        Ok(())
    }
}

/// Resolves the entries of `text` as module `m` without checking them,
/// recording each declared name in `names`.
pub fn resolve_text(names: &mut Names, m: &str, text: &str) -> Result<Vec<KEntry>, LoadError> {
    let entries = parse_file(text).map_err(|err| LoadError::Syntax {
        module: m.to_string(),
        err,
    })?;
    let mut out = Vec::with_capacity(entries.len());
    for l in &entries {
        let k = elaborate_entry(names, m, &l.entry).map_err(|e| CheckError {
            module: m.to_string(),
            span: l.span,
            kind: e.into(),
        })?;
        if let KEntry::Decl { name, .. } | KEntry::Def { name, .. } = &k {
            names.insert(name);
        }
        out.push(k);
    }
    Ok(out)
}
