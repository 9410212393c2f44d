//! File-level pipelines: checking `.dk` files, translating theories and
//! certificates to `.dk`, and the bundled examples.

use std::fs;
use std::path::{Path, PathBuf};

use thiserror::Error;

use crate::dkparse::scope::{unelaborate, unelaborate_entry};
use crate::dkparse::{parse_file, print_entry, Entry, KEntry, Names, SyntaxError};
use crate::embed::{self, load_prelude, prelude, Mode, LOGIC};
use crate::kernel::{normalize, Fuel, Term};
use crate::llproof::{
    self, check_certificate, parse_certificate, rules_prelude, CertError, Certificate, CERT, RULES,
};
use crate::session::{CheckError, Session};
use crate::tff::{parse_theory, wf_theory, FormatError, Theory, TheoryError};

#[derive(Debug, Error)]
pub enum DriverError {
    #[error("{}: {msg}", path.display())]
    Io { path: PathBuf, msg: String },
    #[error("{}:{err}", path.display())]
    Syntax { path: PathBuf, err: SyntaxError },
    #[error("{}:{}: {}", path.display(), err.span, err.msg)]
    Format { path: PathBuf, err: FormatError },
    #[error("{}:{}: {}", path.display(), err.span, err.kind)]
    Check { path: PathBuf, err: Box<CheckError> },
    #[error("{}:{span}: {err}", path.display())]
    Theory {
        path: PathBuf,
        span: crate::dkparse::Span,
        err: TheoryError,
    },
    #[error("{}: {err}", path.display())]
    Cert { path: PathBuf, err: Box<CertError> },
    #[error("{}: certificate is about theory `{found}`, not `{expected}`", path.display())]
    TheoryMismatch {
        path: PathBuf,
        expected: String,
        found: String,
    },
    #[error("modules require each other: {}", .0.join(" -> "))]
    Cycle(Vec<String>),
    #[error("{}: re-reading the emitted module gives different entries", path.display())]
    Drift { path: PathBuf },
    #[error("unknown example `{0}`")]
    UnknownExample(String),
}

impl DriverError {
    pub fn is_fuel(&self) -> bool {
        match self {
            DriverError::Check { err, .. } => err.kind.is_fuel(),
            DriverError::Cert { err, .. } => err.is_fuel(),
            _ => false,
        }
    }

    /// 1 for a rejected input, 2 for a syntax error, 3 when fuel runs out,
    /// 4 for I/O.
    pub fn exit_code(&self) -> i32 {
        match self {
            DriverError::Io { .. } => 4,
            DriverError::Syntax { .. } | DriverError::Format { .. } => 2,
            e if e.is_fuel() => 3,
            _ => 1,
        }
    }

    /// Source position of the error, when it has one.
    pub fn location(&self) -> Option<(PathBuf, crate::dkparse::Span)> {
        match self {
            DriverError::Syntax { path, err } => Some((path.clone(), err.span)),
            DriverError::Format { path, err } => Some((path.clone(), err.span)),
            DriverError::Check { path, err } => Some((path.clone(), err.span)),
            DriverError::Theory { path, span, .. } => Some((path.clone(), *span)),
            _ => None,
        }
    }
}

fn read(path: &Path) -> Result<String, DriverError> {
    fs::read_to_string(path).map_err(|e| DriverError::Io {
        path: path.to_path_buf(),
        msg: e.to_string(),
    })
}

fn write(path: &Path, text: &str) -> Result<(), DriverError> {
    fs::write(path, text).map_err(|e| DriverError::Io {
        path: path.to_path_buf(),
        msg: e.to_string(),
    })
}

pub fn module_name(path: &Path) -> String {
    path.file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_default()
}

/// Checks `.dk` files into one session. A `#REQUIRE m.` loads `m.dk` from
/// the requiring file's directory, or the built-in `logic` and `rules`
/// modules in the given mode when no such file exists.
pub struct Checker {
    pub session: Session,
    pub mode: Mode,
    loading: Vec<String>,
}

impl Checker {
    pub fn new(mode: Mode, fuel: Fuel) -> Self {
        Checker {
            session: Session::new(fuel),
            mode,
            loading: Vec::new(),
        }
    }

    fn require(&mut self, dir: &Path, m: &str, from: &Path) -> Result<(), DriverError> {
        if self.session.has_module(m) {
            return Ok(());
        }
        if self.loading.iter().any(|x| x == m) {
            let mut cycle = self.loading.clone();
            cycle.push(m.to_string());
            return Err(DriverError::Cycle(cycle));
        }
        let file = dir.join(format!("{m}.dk"));
        if file.is_file() {
            return self.load_file(&file).map(|_| ());
        }
        let at = |err| DriverError::Check {
            path: from.to_path_buf(),
            err: Box::new(err),
        };
        match m {
            LOGIC => load_prelude(&mut self.session, self.mode)
                .map(|_| ())
                .map_err(at),
            RULES => {
                self.require(dir, LOGIC, from)?;
                llproof::load_rules(&mut self.session, self.mode)
                    .map(|_| ())
                    .map_err(at)
            }
            // Left to the session, which reports the missing module.
            _ => Ok(()),
        }
    }

    /// Loads a file as the module named by its stem.
    pub fn load_file(&mut self, path: &Path) -> Result<Vec<KEntry>, DriverError> {
        let m = module_name(path);
        let text = read(path)?;
        let entries = parse_file(&text).map_err(|err| DriverError::Syntax {
            path: path.to_path_buf(),
            err,
        })?;
        let dir = path.parent().unwrap_or(Path::new("."));
        self.loading.push(m.clone());
        let mut r = Ok(());
        for l in &entries {
            if let Entry::Require(dep) = &l.entry {
                r = self.require(dir, dep, path);
                if r.is_err() {
                    break;
                }
            }
        }
        self.loading.pop();
        r?;
        if self.session.has_module(&m) {
            // Already pulled in by a requirement of an earlier file.
            return Ok(Vec::new());
        }
        self.session
            .load_entries(&m, &entries)
            .map_err(|err| DriverError::Check {
                path: path.to_path_buf(),
                err: Box::new(err),
            })
    }
}

/// Checks files in order against one growing signature.
pub fn check_files(paths: &[PathBuf], mode: Mode, fuel: Fuel) -> Result<Checker, DriverError> {
    let mut c = Checker::new(mode, fuel);
    for p in paths {
        c.load_file(p)?;
    }
    Ok(c)
}

/// Prints module `m`. `names` must hold the names of the modules loaded
/// before it and receives the names `m` declares.
pub fn emit_module(names: &mut Names, m: &str, entries: &[KEntry]) -> String {
    let mut out = String::new();
    for e in entries {
        out.push_str(&print_entry(&unelaborate_entry(names, m, e)));
        out.push('\n');
        if let KEntry::Decl { name, .. } | KEntry::Def { name, .. } = e {
            names.insert(name);
        }
    }
    out
}

/// One emitted module.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Emitted {
    pub module: String,
    pub path: PathBuf,
    pub text: String,
}

#[derive(Debug)]
pub struct Translation {
    pub theory: Theory,
    pub certificate: Option<Certificate>,
    /// In load order: logic, rules, the theory, then the certificate.
    pub files: Vec<Emitted>,
    /// The session the emitted files were re-checked in.
    pub session: Session,
}

/// Reads and checks a theory, locating errors at the offending item.
pub fn read_theory(path: &Path, text: &str) -> Result<Theory, DriverError> {
    let parsed = parse_theory(text).map_err(|err| DriverError::Format {
        path: path.to_path_buf(),
        err,
    })?;
    wf_theory(&parsed.theory).map_err(|err| DriverError::Theory {
        path: path.to_path_buf(),
        span: parsed.spans.get(err.item).copied().unwrap_or_default(),
        err,
    })?;
    Ok(parsed.theory)
}

/// Translates a theory and optionally a certificate over it, writes the
/// modules to `out`, and checks the written files again from scratch.
pub fn translate_texts(
    thy_path: &Path,
    thy_text: &str,
    proof: Option<(&Path, &str)>,
    mode: Mode,
    fuel: Fuel,
    out: &Path,
) -> Result<Translation, DriverError> {
    let theory = read_theory(thy_path, thy_text)?;
    let env = wf_theory(&theory).expect("checked by read_theory");
    let mut modules: Vec<(String, Vec<KEntry>)> = vec![
        (LOGIC.to_string(), prelude(mode)),
        (RULES.to_string(), rules_prelude(mode)),
    ];
    let mut certificate = None;
    match proof {
        Some((path, text)) => {
            let cert = parse_certificate(text, &env).map_err(|err| DriverError::Format {
                path: path.to_path_buf(),
                err,
            })?;
            // A bare name or a path to a file named after the theory.
            if module_name(Path::new(&cert.theory)) != theory.name {
                return Err(DriverError::TheoryMismatch {
                    path: path.to_path_buf(),
                    expected: theory.name.clone(),
                    found: cert.theory.clone(),
                });
            }
            let c =
                check_certificate(&theory, &cert.goal, &cert.proof, mode, fuel).map_err(|err| {
                    DriverError::Cert {
                        path: path.to_path_buf(),
                        err: Box::new(err),
                    }
                })?;
            modules.push((theory.name.clone(), c.theory));
            modules.push((CERT.to_string(), c.entries));
            certificate = Some(cert);
        }
        None => {
            let mut s = Session::new(fuel);
            let at = |err| DriverError::Check {
                path: thy_path.to_path_buf(),
                err: Box::new(err),
            };
            load_prelude(&mut s, mode).map_err(at)?;
            if embed::RESERVED_MODULES.contains(&theory.name.as_str()) {
                return Err(DriverError::Cert {
                    path: thy_path.to_path_buf(),
                    err: Box::new(CertError::ReservedName(theory.name.clone())),
                });
            }
            modules.push((
                theory.name.clone(),
                embed::load_theory(&mut s, &theory).map_err(at)?,
            ));
        }
    }
    fs::create_dir_all(out).map_err(|e| DriverError::Io {
        path: out.to_path_buf(),
        msg: e.to_string(),
    })?;
    let mut names = Names::new();
    let mut files = Vec::new();
    for (m, entries) in &modules {
        let text = emit_module(&mut names, m, entries);
        let path = out.join(format!("{m}.dk"));
        write(&path, &text)?;
        files.push(Emitted {
            module: m.clone(),
            path,
            text,
        });
    }
    let mut checker = Checker::new(mode, fuel);
    for (f, (_, entries)) in files.iter().zip(&modules) {
        let back = checker.load_file(&f.path)?;
        if &back != entries {
            return Err(DriverError::Drift {
                path: f.path.clone(),
            });
        }
    }
    Ok(Translation {
        theory,
        certificate,
        files,
        session: checker.session,
    })
}

pub fn translate_files(
    theory: &Path,
    proof: Option<&Path>,
    mode: Mode,
    fuel: Fuel,
    out: &Path,
) -> Result<Translation, DriverError> {
    let thy_text = read(theory)?;
    let proof_text = proof.map(read).transpose()?;
    translate_texts(
        theory,
        &thy_text,
        proof.zip(proof_text.as_deref()),
        mode,
        fuel,
        out,
    )
}

/// The bundled theories and certificates.
pub mod corpus {
    pub const BOOL: &str = include_str!("../corpus/bool.tffx");
    pub const BOOL_COMMUTE: &str = include_str!("../corpus/bool_commute.llpx");
    pub const SET: &str = include_str!("../corpus/set.tffx");
    pub const SET_DIFF: &str = include_str!("../corpus/set_diff.llpx");
    pub const PAIR: &str = include_str!("../corpus/pair.tffx");
    pub const PAIR_FST_SND: &str = include_str!("../corpus/pair_fst_snd.llpx");
    pub const PRED_DECOMP_THEORY: &str = include_str!("../corpus/pred_decomp.tffx");
    pub const PRED_DECOMP: &str = include_str!("../corpus/pred_decomp.llpx");
    /// The logic, the lemmas and the rule definitions as a single module.
    pub const MODULOGIC: &str = include_str!("../corpus/modulogic.dk");

    pub struct Example {
        pub name: &'static str,
        pub theory_file: &'static str,
        pub theory: &'static str,
        pub proof_file: &'static str,
        pub proof: &'static str,
    }

    pub const EXAMPLES: &[Example] = &[
        Example {
            name: "bool-commute",
            theory_file: "bool.tffx",
            theory: BOOL,
            proof_file: "bool_commute.llpx",
            proof: BOOL_COMMUTE,
        },
        Example {
            name: "set-diff",
            theory_file: "set.tffx",
            theory: SET,
            proof_file: "set_diff.llpx",
            proof: SET_DIFF,
        },
        Example {
            name: "pair-fst-snd",
            theory_file: "pair.tffx",
            theory: PAIR,
            proof_file: "pair_fst_snd.llpx",
            proof: PAIR_FST_SND,
        },
        Example {
            name: "pred-decomp",
            theory_file: "pred_decomp.tffx",
            theory: PRED_DECOMP_THEORY,
            proof_file: "pred_decomp.llpx",
            proof: PRED_DECOMP,
        },
    ];

    pub fn example(name: &str) -> Option<&'static Example> {
        EXAMPLES.iter().find(|e| e.name == name)
    }
}

#[derive(Debug)]
pub struct ExampleRun {
    pub translation: Translation,
    /// The certificate file.
    pub certificate: PathBuf,
    /// Normal form of the translated goal, in `.dk` syntax.
    pub normal_goal: String,
}

/// Runs a bundled example end to end, writing its sources and the emitted
/// modules to `out`.
pub fn run_example(
    name: &str,
    mode: Mode,
    fuel: Fuel,
    out: &Path,
) -> Result<ExampleRun, DriverError> {
    let ex = corpus::example(name).ok_or_else(|| DriverError::UnknownExample(name.to_string()))?;
    fs::create_dir_all(out).map_err(|e| DriverError::Io {
        path: out.to_path_buf(),
        msg: e.to_string(),
    })?;
    let thy_path = out.join(ex.theory_file);
    let proof_path = out.join(ex.proof_file);
    write(&thy_path, ex.theory)?;
    write(&proof_path, ex.proof)?;
    let translation = translate_texts(
        &thy_path,
        ex.theory,
        Some((&proof_path, ex.proof)),
        mode,
        fuel,
        out,
    )?;
    let cert = translation
        .certificate
        .as_ref()
        .expect("examples have proofs");
    let goal = embed::translate_formula(
        &translation.theory.name,
        &mut embed::KScope::new(),
        &cert.goal,
    );
    let mut f = fuel;
    let nf =
        normalize(&translation.session.sig, &goal, &mut f).map_err(|err| DriverError::Cert {
            path: proof_path.clone(),
            err: Box::new(CertError::Proof(llproof::ProofError::Kernel {
                path: llproof::NodePath::default(),
                err,
            })),
        })?;
    let normal_goal = show(&translation.session.names, &translation.theory.name, &nf);
    Ok(ExampleRun {
        certificate: out.join(format!("{CERT}.dk")),
        translation,
        normal_goal,
    })
}

/// A closed term in `.dk` syntax as seen from module `m`.
pub fn show(names: &Names, m: &str, t: &Term) -> String {
    crate::dkparse::print_expr(&unelaborate(names, m, &mut Vec::new(), t))
}
