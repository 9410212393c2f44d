//! Acceptance criteria, one line each. Pass criterion numbers as arguments
//! to run a subset.

mod boolrw;
mod gen;
mod mutate;

use std::fmt::Display;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use rayon::prelude::*;

use lpm_core::dkparse::scope::elaborate;
use lpm_core::dkparse::{
    parse_file, parse_term, print_entry, print_file, scope::unelaborate_entry,
};
use lpm_core::driver::{corpus, show, translate_texts};
use lpm_core::embed::{load_prelude, load_theory, logic_text, translate_formula, KScope, Mode};
use lpm_core::kernel::{convertible, normalize, whnf, Term};
use lpm_core::llproof::{
    check_certificate, eliminate_pred_fun, parse_certificate, rules_text, validate, CertError,
    Certificate, LLProof, LLRule, ProofError, CERT, RULES,
};
use lpm_core::session::Session;
use lpm_core::tff::{
    not, parse_theory, read_formula, sexp::read_one, wf_theory, Env, Formula, Item, Scope, TffTerm,
    TffType, Theory,
};
use lpm_core::Fuel;

type Outcome = Result<String, String>;
type Criterion = (u32, &'static str, fn() -> Outcome);

fn e<E: Display>(x: E) -> String {
    x.to_string()
}

fn fuel() -> Fuel {
    Fuel::default()
}

fn theory(text: &str) -> Theory {
    parse_theory(text).expect("corpus theory parses").theory
}

fn certificate(thy: &Theory, text: &str) -> Result<(Env, Certificate), String> {
    let env = wf_theory(thy).map_err(e)?;
    let cert = parse_certificate(text, &env).map_err(e)?;
    Ok((env, cert))
}

fn within(start: Instant, limit: Duration) -> Result<Duration, String> {
    let t = start.elapsed();
    if t > limit {
        return Err(format!("took {t:.2?}, limit {limit:?}"));
    }
    Ok(t)
}

const MODES: [Mode; 2] = [Mode::Deep, Mode::Shallow];

// --- 1 ---------------------------------------------------------------------

fn prelude_soundness() -> Outcome {
    let start = Instant::now();
    let mut s = Session::new(fuel());
    s.load_text("logic", &logic_text(Mode::Shallow))
        .map_err(e)?;
    s.load_text(RULES, &rules_text(Mode::Shallow)).map_err(e)?;
    let open: Vec<_> = s
        .sig
        .undefined_decls()
        .into_iter()
        .filter(|n| n.starts_with("rules."))
        .collect();
    if open.len() != 1 || &*open[0] != "rules.ExMid" {
        return Err(format!("open rule declarations: {open:?}"));
    }
    let t = within(start, Duration::from_secs(1))?;
    Ok(format!(
        "logic + rules checked, only rules.ExMid open, {t:.1?}"
    ))
}

// --- 2 ---------------------------------------------------------------------

// The certificate as printed for commutativity of `andb`, with the first
// abstraction read as `y = y`.
const COMMUTE_TERM: &str = "
x1 : prf (not (forall bool (x : term bool => forall bool (y : term bool => eq bool (andb x y) (andb y x))))) =>
  R_bool_case_nf
    (x : term bool => forall bool (y : term bool => eq bool (andb x y) (andb y x)))
    (x2 : prf (not (forall bool (y : term bool => eq bool y y))) =>
      R_nall bool
        (y : term bool => eq bool y y)
        (a : term bool => x3 : prf (not (eq bool a a)) => R_neq bool a x3)
        x2)
    (x4 : prf (not (forall bool (y : term bool => eq bool false false))) =>
      R_nall bool
        (y : term bool => eq bool false false)
        (a : term bool => x5 : prf (not (eq bool false false)) => R_neq bool false x5)
        x4)
    x1";

fn compare_term(c: &lpm_core::llproof::Compiled, text: &str) -> Result<(), String> {
    let expected = elaborate(
        &c.session.names,
        CERT,
        &mut Vec::new(),
        &parse_term(text).map_err(e)?,
    )
    .map_err(e)?;
    if expected != c.term {
        return Err(format!(
            "emitted term differs:\n{}",
            show(&c.session.names, CERT, &c.term)
        ));
    }
    Ok(())
}

fn bool_commute() -> Outcome {
    let start = Instant::now();
    let thy = theory(corpus::BOOL);
    let (_, cert) = certificate(&thy, corpus::BOOL_COMMUTE)?;
    for mode in MODES {
        let c = check_certificate(&thy, &cert.goal, &cert.proof, mode, fuel())
            .map_err(|x| format!("{mode}: {x}"))?;
        compare_term(&c, COMMUTE_TERM).map_err(|x| format!("{mode}: {x}"))?;
    }
    let t = within(start, Duration::from_secs(1))?;
    Ok(format!(
        "accepted in deep and shallow, term matches up to renaming, {t:.1?}"
    ))
}

// --- 3 ---------------------------------------------------------------------

const SET_DIFF_TERM: &str = "
x1 : prf (not (foralltype (a : type => forall (set a) (s : term (set a) => eqset a (minus a s s) (empty a))))) =>
R_nalltype (a : type => forall (set a) (s : term (set a) => eqset a (minus a s s) (empty a)))
 (tau : type => x2 : prf (not (forall (set tau) (s : term (set tau) => eqset tau (minus tau s s) (empty tau)))) =>
  R_nall (set tau) (s : term (set tau) => eqset tau (minus tau s s) (empty tau))
   (c1 : term (set tau) => x3 : prf (not (eqset tau (minus tau c1 c1) (empty tau))) =>
    R_nall tau (x : term tau => eqv (in tau x (minus tau c1 c1)) (in tau x (empty tau)))
     (c2 : term tau => x4 : prf (not (eqv (in tau c2 (minus tau c1 c1)) (in tau c2 (empty tau)))) =>
      R_neqv (in tau c2 (minus tau c1 c1)) (in tau c2 (empty tau))
       (x5 : prf (not (in tau c2 (minus tau c1 c1))) => x6 : prf (in tau c2 (empty tau)) => R_bot x6)
       (x7 : prf (in tau c2 (minus tau c1 c1)) => x8 : prf (not (in tau c2 (empty tau))) =>
        R_and (in tau c2 c1) (not (in tau c2 c1))
         (x9 : prf (in tau c2 c1) => x10 : prf (not (in tau c2 c1)) => R_Ax (in tau c2 c1) x9 x10)
         x7)
       x4)
     x3)
   x2)
 x1";

// The displayed tree, pre-order: rule and the sequent each node proves.
const SET_DIFF_TREE: &[(&str, &[&str])] = &[
    (
        "notforalltype",
        &["(not (forall-type (a) (forall ((s (set a))) (eqset a (minus a s s) (empty a)))))"],
    ),
    (
        "notforall",
        &["(not (forall ((s (set tau))) (eqset tau (minus tau s s) (empty tau))))"],
    ),
    (
        "notforall",
        &["(not (eqset tau (minus tau c1 c1) (empty tau)))"],
    ),
    (
        "notiff",
        &["(not (iff (in tau c2 (minus tau c1 c1)) (in tau c2 (empty tau))))"],
    ),
    (
        "bot",
        &[
            "(not (in tau c2 (minus tau c1 c1)))",
            "(in tau c2 (empty tau))",
        ],
    ),
    (
        "and",
        &[
            "(in tau c2 (minus tau c1 c1))",
            "(not (in tau c2 (empty tau)))",
        ],
    ),
    ("ax", &["(in tau c2 c1)", "(not (in tau c2 c1))"]),
];

fn node_sequent(root_goal: &Formula, proof: &LLProof, path: &[usize]) -> Vec<Formula> {
    match path.split_last() {
        None => vec![not(root_goal.clone())],
        Some((i, parent)) => {
            let p = proof.at(parent).expect("parent exists");
            p.rule.shape().expect("known rule").branches[*i].clone()
        }
    }
}

fn set_diff() -> Outcome {
    let start = Instant::now();
    let thy = theory(corpus::SET);
    let (env, cert) = certificate(&thy, corpus::SET_DIFF)?;
    let paths = cert.proof.paths();
    if paths.len() != SET_DIFF_TREE.len() {
        return Err(format!(
            "{} nodes, expected {}",
            paths.len(),
            SET_DIFF_TREE.len()
        ));
    }
    let scope = Scope {
        tvars: vec!["tau".into()],
        vars: vec!["c1".into(), "c2".into()],
    };
    for (path, (tag, shown)) in paths.iter().zip(SET_DIFF_TREE) {
        let node = cert.proof.at(path).unwrap();
        if node.rule.tag() != *tag {
            return Err(format!(
                "node {path:?} is {}, expected {tag}",
                node.rule.tag()
            ));
        }
        let got = node_sequent(&cert.goal, &cert.proof, path);
        let want: Vec<Formula> = shown
            .iter()
            .map(|s| read_formula(&env, &scope, &read_one(s).unwrap()))
            .collect::<Result<_, _>>()
            .map_err(e)?;
        if got.len() != want.len() || got.iter().zip(&want).any(|(a, b)| !a.alpha_eq(b)) {
            let got: Vec<String> = got.iter().map(|f| f.to_string()).collect();
            return Err(format!("node {path:?} proves {got:?}, expected {shown:?}"));
        }
    }
    for mode in MODES {
        let c = check_certificate(&thy, &cert.goal, &cert.proof, mode, fuel())
            .map_err(|x| format!("{mode}: {x}"))?;
        compare_term(&c, SET_DIFF_TERM).map_err(|x| format!("{mode}: {x}"))?;
    }
    let t = within(start, Duration::from_secs(1))?;
    Ok(format!(
        "accepted in deep and shallow, {} nodes match the displayed tree, {t:.1?}",
        paths.len()
    ))
}

// --- 4 ---------------------------------------------------------------------

fn pair_session(thy: &Theory) -> Result<Session, String> {
    let mut s = Session::new(fuel());
    load_prelude(&mut s, Mode::Shallow).map_err(e)?;
    load_theory(&mut s, thy).map_err(e)?;
    Ok(s)
}

fn pair_projections() -> Outcome {
    let start = Instant::now();
    let thy = theory(corpus::PAIR);
    let (_, cert) = certificate(&thy, corpus::PAIR_FST_SND)?;
    let t = TffType::cons("t", vec![]);
    let a = TffTerm::cst("a");
    let refl = Formula::Eq(t, a.clone(), a);
    let tr = |f: &Formula| translate_formula(&thy.name, &mut KScope::new(), f);

    let s = pair_session(&thy)?;
    if !convertible(&s.sig, &tr(&cert.goal), &tr(&refl), &mut fuel()).map_err(e)? {
        return Err("goal not convertible with a = a".into());
    }
    if cert.proof.size() != 1 {
        return Err("certificate is not a single node".into());
    }
    for mode in MODES {
        check_certificate(&thy, &cert.goal, &cert.proof, mode, fuel())
            .map_err(|x| format!("{mode}: {x}"))?;
    }
    let t = within(start, Duration::from_millis(100))?;

    // Without the projection rules neither holds.
    let bare = Theory {
        name: thy.name.clone(),
        items: thy
            .items
            .iter()
            .filter(|it| !matches!(it, Item::TermRule { .. }))
            .cloned()
            .collect(),
    };
    let s = pair_session(&bare)?;
    if convertible(&s.sig, &tr(&cert.goal), &tr(&refl), &mut fuel()).map_err(e)? {
        return Err("convertible without rewrite rules".into());
    }
    if check_certificate(&bare, &cert.goal, &cert.proof, Mode::Shallow, fuel()).is_ok() {
        return Err("certificate accepted without rewrite rules".into());
    }
    Ok(format!(
        "convertible with a = a, one-node certificate accepted, rejected without rules, {t:.1?}"
    ))
}

// --- 5 ---------------------------------------------------------------------

#[derive(Clone, Copy, Debug)]
enum Premise {
    Neq,
    Ax,
    Sym,
}

struct Instance {
    thy: Theory,
    goal: Formula,
    proof: LLProof,
    /// Whether each premise's hypothesis is actually available.
    expected: bool,
}

fn eq(ty: &TffType, a: &TffTerm, b: &TffTerm) -> Formula {
    Formula::Eq(ty.clone(), a.clone(), b.clone())
}

fn decomposition(rng: &mut StdRng, arity: usize, is_fun: bool) -> Instance {
    let tys = [TffType::cons("i", vec![]), TffType::cons("j", vec![])];
    let mut items = vec![
        Item::TypeCons {
            name: "i".into(),
            arity: 0,
        },
        Item::TypeCons {
            name: "j".into(),
            arity: 0,
        },
    ];
    for (k, ty) in tys.iter().enumerate() {
        for c in 0..3 {
            items.push(Item::Fun {
                name: format!("{}{c}", ["c", "d"][k]),
                tvars: vec![],
                args: vec![],
                ret: ty.clone(),
            });
        }
    }
    let mut eq_types = Vec::new();
    let (mut lhs, mut rhs, mut premises, mut axioms) = (vec![], vec![], vec![], vec![]);
    for _ in 0..arity {
        let k = rng.gen_range(0..2);
        let ty = tys[k].clone();
        let cst = |n: usize| TffTerm::cst(&format!("{}{n}", ["c", "d"][k]));
        let t = cst(rng.gen_range(0..3));
        let mut u = cst(rng.gen_range(0..3));
        let good = rng.gen_bool(0.8);
        let kind = [Premise::Neq, Premise::Ax, Premise::Sym][rng.gen_range(0..3)];
        let p = match kind {
            Premise::Neq => {
                u = if good { t.clone() } else { u };
                LLRule::Neq(ty.clone(), t.clone())
            }
            Premise::Ax => {
                if good {
                    axioms.push(eq(&ty, &t, &u));
                } else if rng.gen_bool(0.5) {
                    axioms.push(eq(&ty, &u, &t));
                }
                LLRule::Ax(eq(&ty, &t, &u))
            }
            Premise::Sym => {
                if good {
                    axioms.push(eq(&ty, &u, &t));
                } else if rng.gen_bool(0.5) {
                    axioms.push(eq(&ty, &t, &u));
                }
                LLRule::Sym(ty.clone(), u.clone(), t.clone())
            }
        };
        premises.push((kind, p));
        eq_types.push(ty);
        lhs.push(t);
        rhs.push(u);
    }
    let result = tys[0].clone();
    if is_fun {
        items.push(Item::Fun {
            name: "f".into(),
            tvars: vec![],
            args: eq_types.clone(),
            ret: result.clone(),
        });
    } else {
        items.push(Item::Pred {
            name: "P".into(),
            tvars: vec![],
            args: eq_types.clone(),
        });
    }
    for (n, f) in axioms.iter().enumerate() {
        items.push(Item::Axiom {
            name: format!("e{n}"),
            formula: f.clone(),
        });
    }
    // A premise closes its branch when the hypothesis it consumes is the
    // branch's `t ≠ u` or one of the axioms.
    let expected = premises
        .iter()
        .zip(lhs.iter().zip(&rhs))
        .zip(&eq_types)
        .all(|(((kind, _), (t, u)), ty)| match kind {
            Premise::Neq => t == u,
            Premise::Ax => axioms.contains(&eq(ty, t, u)),
            Premise::Sym => axioms.contains(&eq(ty, u, t)),
        });
    let premises: Vec<LLProof> = premises
        .into_iter()
        .map(|(_, p)| LLProof::leaf(p))
        .collect();
    let (goal, proof) = if is_fun {
        let goal = eq(
            &result,
            &TffTerm::fun("f", vec![], lhs.clone()),
            &TffTerm::fun("f", vec![], rhs.clone()),
        );
        let rule = LLRule::Fun {
            name: "f".into(),
            tys: vec![],
            lhs,
            rhs,
            eq_types,
            result,
        };
        (goal, LLProof::new(rule, premises))
    } else {
        let (pt, pu) = (
            Formula::pred("P", vec![], lhs.clone()),
            Formula::pred("P", vec![], rhs.clone()),
        );
        let rule = LLRule::Pred {
            name: "P".into(),
            tys: vec![],
            lhs,
            rhs,
            eq_types,
        };
        let proof = LLProof::new(
            LLRule::NotImp(pt.clone(), pu.clone()),
            vec![LLProof::new(rule, premises)],
        );
        (Formula::imp(pt, pu), proof)
    };
    Instance {
        thy: Theory {
            name: "inst".into(),
            items,
        },
        goal,
        proof,
        expected,
    }
}

fn pred_fun_decomposition() -> Outcome {
    let thy = theory(corpus::PRED_DECOMP_THEORY);
    let (env, cert) = certificate(&thy, corpus::PRED_DECOMP)?;
    let image = eliminate_pred_fun(&env, &cert.proof).map_err(e)?;
    if image.paths().iter().any(|p| {
        matches!(
            image.at(p).unwrap().rule,
            LLRule::Pred { .. } | LLRule::Fun { .. }
        )
    }) {
        return Err("elimination left a pred or fun node".into());
    }
    for mode in MODES {
        for (what, p) in [("original", &cert.proof), ("image", &image)] {
            check_certificate(&thy, &cert.goal, p, mode, fuel())
                .map_err(|x| format!("{what}, {mode}: {x}"))?;
        }
    }
    validate(&env, &cert.goal, &cert.proof).map_err(e)?;

    let mut rng = StdRng::seed_from_u64(0x5eed_0005);
    let (mut valid, mut invalid) = (0, 0);
    for n in 0..100 {
        let arity = n % 5;
        let inst = decomposition(&mut rng, arity, n % 2 == 1);
        let env = wf_theory(&inst.thy).map_err(|x| format!("instance {n}: {x}"))?;
        let native = validate(&env, &inst.goal, &inst.proof).is_ok();
        let image = eliminate_pred_fun(&env, &inst.proof).map_err(e)?;
        for mode in MODES {
            let kernel = check_certificate(&inst.thy, &inst.goal, &image, mode, fuel()).is_ok();
            if native != kernel || native != inst.expected {
                return Err(format!(
                    "instance {n} (arity {arity}, {mode}): native {native}, kernel {kernel}, expected {}",
                    inst.expected
                ));
            }
        }
        if native {
            valid += 1;
        } else {
            invalid += 1;
        }
    }
    if valid == 0 || invalid == 0 {
        return Err(format!(
            "degenerate sample: {valid} valid, {invalid} invalid"
        ));
    }
    Ok(format!(
        "pred-decomp and its image accepted; 100 instances agree ({valid} valid, {invalid} invalid)"
    ))
}

// --- 6 ---------------------------------------------------------------------

fn translation_correctness() -> Outcome {
    let start = Instant::now();
    let mut rng = StdRng::seed_from_u64(0x5eed_0006);
    let mut theories = vec![theory(corpus::BOOL), theory(corpus::SET)];
    for n in 0..200 {
        theories.push(gen::theory(&mut rng, n));
    }
    let mut checks = 0;
    for (n, thy) in theories.iter().enumerate() {
        let mode = MODES[n % 2];
        checks += gen::check_theory(&mut rng, thy, mode)
            .map_err(|x| format!("theory {} ({mode}): {x}", thy.name))?;
    }
    let t = within(start, Duration::from_secs(30))?;
    let count = |p: fn(&Item) -> bool| {
        theories
            .iter()
            .flat_map(|t| &t.items)
            .filter(|it| p(it))
            .count()
    };
    let rules = count(|it| matches!(it, Item::TermRule { .. } | Item::PropRule { .. }));
    let axioms = count(|it| matches!(it, Item::Axiom { .. }));
    Ok(format!(
        "{} theories ({rules} rewrite rules, {axioms} axioms), {checks} judgements, no failures, {t:.1?}",
        theories.len()
    ))
}

// --- 7 ---------------------------------------------------------------------

const MAX_SIZE: usize = 12;
/// Largest size for which every rewrite sequence is enumerated.
const EXHAUSTIVE_SIZE: usize = 6;
/// Largest size whose one-step reducts are all checked against `eval`.
const STEP_SIZE: usize = 9;

fn kernel_term(terms: &boolrw::Terms, built: &[Term], i: u32) -> Term {
    use boolrw::Node::*;
    let c = |s: &str| Term::cst(format!("bool.{s}"));
    let b = |j: u32| built[j as usize].clone();
    match terms.node(i) {
        T => c("true"),
        F => c("false"),
        Not(x) => Term::app(c("notb"), b(x)),
        And(x, y) => Term::apps(c("andb"), [b(x), b(y)]),
        Or(x, y) => Term::apps(c("orb"), [b(x), b(y)]),
        Ite(x, y, z) => Term::apps(c("ifte"), [c("bool"), b(x), b(y), b(z)]),
    }
}

fn children(n: boolrw::Node) -> Vec<u32> {
    use boolrw::Node::*;
    match n {
        T | F => vec![],
        Not(x) => vec![x],
        And(x, y) | Or(x, y) => vec![x, y],
        Ite(x, y, z) => vec![x, y, z],
    }
}

fn normalization_oracle() -> Outcome {
    let start = Instant::now();
    let mut s = Session::new(fuel());
    load_prelude(&mut s, Mode::Shallow).map_err(e)?;
    load_theory(&mut s, &theory(corpus::BOOL)).map_err(e)?;

    let nn_true = Term::app(
        Term::cst("bool.notb"),
        Term::app(Term::cst("bool.notb"), Term::cst("bool.true")),
    );
    if whnf(&s.sig, &nn_true, &mut fuel()).map_err(e)? != Term::cst("bool.true") {
        return Err("whnf (notb (notb true)) is not true".into());
    }

    let mut terms = boolrw::Terms::new();
    let by_size = terms.enumerate(MAX_SIZE);
    let all: Vec<u32> = by_size.iter().flatten().copied().collect();
    // Subterms of a term are enumerated before it, so `built` fills in order.
    let mut built: Vec<Term> = Vec::with_capacity(all.len());
    for &i in &all {
        assert_eq!(i as usize, built.len());
        let t = kernel_term(&terms, &built, i);
        built.push(t);
    }
    let expected: Vec<bool> = all.iter().map(|&i| terms.eval(i)).collect();

    // Every rewrite step preserves the denotation.
    let mut steps = 0usize;
    for &i in by_size[..=STEP_SIZE].iter().flatten() {
        let mut rs = Vec::new();
        terms.reducts(i, &mut rs);
        steps += rs.len();
        if let Some(&r) = rs.iter().find(|&&r| terms.eval(r) != terms.eval(i)) {
            return Err(format!("rewriting term {i} to term {r} changes its value"));
        }
    }
    // A closed term that is not a constant has a redex: the innermost
    // non-constant subterm has constant arguments, and all of those reduce.
    let constant =
        |t: &boolrw::Terms, j: u32| matches!(t.node(j), boolrw::Node::T | boolrw::Node::F);
    for &i in by_size[2..=5].iter().flatten() {
        if children(terms.node(i)).iter().all(|&j| constant(&terms, j)) {
            let mut rs = Vec::new();
            terms.reducts(i, &mut rs);
            if rs.is_empty() {
                return Err(format!(
                    "term {i} is a normal form other than true or false"
                ));
            }
        }
    }
    // Every rewrite sequence of the small terms.
    let mut exhaustive = 0usize;
    for &i in by_size[..=EXHAUSTIVE_SIZE].iter().flatten() {
        let nf = terms
            .normal_forms(i)
            .map_err(|c| format!("rewriting cycles through term {}", c.0))?;
        let want = if terms.eval(i) {
            boolrw::NF_TRUE
        } else {
            boolrw::NF_FALSE
        };
        if nf != want {
            return Err(format!(
                "term {i} reaches normal forms {nf:#b}, expected only {want:#b}"
            ));
        }
        exhaustive += 1;
    }
    let visited = terms.len();
    drop(terms);

    let (t, f) = (Term::cst("bool.true"), Term::cst("bool.false"));
    let sig = &s.sig;
    let disagreements: Vec<String> = built
        .par_iter()
        .zip(expected.par_iter())
        .filter_map(|(term, &value)| {
            let want = if value { &t } else { &f };
            match normalize(sig, term, &mut fuel()) {
                Ok(n) if &n == want => None,
                Ok(n) => Some(format!("{term:?} normalizes to {n:?}")),
                Err(x) => Some(format!("{term:?}: {x}")),
            }
        })
        .collect();
    if let Some(d) = disagreements.first() {
        return Err(format!("{} disagreements, first: {d}", disagreements.len()));
    }
    Ok(format!(
        "{} closed terms of size <= {MAX_SIZE} normalize to their value, 0 disagreements; \
         {steps} steps from size <= {STEP_SIZE} preserve values; \
         {exhaustive} terms of size <= {EXHAUSTIVE_SIZE} explored exhaustively ({visited} terms visited), {:.1?}",
        all.len(),
        start.elapsed()
    ))
}

// --- 8 ---------------------------------------------------------------------

fn mutation_rejection() -> Outcome {
    let (mut total, mut at_parse) = (0, 0);
    let mut kinds = std::collections::BTreeMap::new();
    for (thy_text, cert_text, sites) in [
        (corpus::BOOL, corpus::BOOL_COMMUTE, mutate::BOOL_SITES),
        (corpus::SET, corpus::SET_DIFF, mutate::SET_SITES),
    ] {
        let thy = theory(thy_text);
        let env = wf_theory(&thy).map_err(e)?;
        for m in mutate::mutations(cert_text, sites)? {
            total += 1;
            *kinds.entry(m.kind).or_insert(0) += 1;
            let what = format!("{} at {:?}: {}", m.kind, m.node, m.text);
            let cert = match parse_certificate(&m.text, &env) {
                Ok(c) => c,
                // A format error carries its source position.
                Err(_) => {
                    at_parse += 1;
                    continue;
                }
            };
            for mode in MODES {
                match check_certificate(&thy, &cert.goal, &cert.proof, mode, fuel()) {
                    Ok(_) => return Err(format!("accepted ({mode}): {what}")),
                    Err(x) => match x.path() {
                        Some(_)
                            if m.kind == "non-fresh constant"
                                && !matches!(x, CertError::Proof(ProofError::Freshness { .. })) =>
                        {
                            return Err(format!("not a freshness error ({mode}) `{x}`: {what}"))
                        }
                        Some(p) if cert.proof.at(&p.0).is_some() => {}
                        _ => return Err(format!("unlocalized error ({mode}) `{x}`: {what}")),
                    },
                }
            }
        }
    }
    if total < 50 {
        return Err(format!("only {total} mutations"));
    }
    let kinds: Vec<String> = kinds.iter().map(|(k, n)| format!("{n} {k}")).collect();
    Ok(format!(
        "{total} mutations rejected, {at_parse} by the reader and the rest at a proof node ({})",
        kinds.join(", ")
    ))
}

// --- 9 ---------------------------------------------------------------------

fn round_trip() -> Outcome {
    let dir = tempfile::tempdir().map_err(e)?;
    let mut files = 0;
    let mut texts: Vec<(String, String)> = Vec::new();
    for mode in MODES {
        for ex in corpus::EXAMPLES {
            let out = dir.path().join(format!("{}-{mode}", ex.name));
            let tr = translate_texts(
                &out.join(ex.theory_file),
                ex.theory,
                Some((&out.join(ex.proof_file), ex.proof)),
                mode,
                fuel(),
                &out,
            )
            .map_err(e)?;
            // Entry level: the printed form of each resolved entry reads back.
            let mut session = Session::new(fuel());
            for f in &tr.files {
                let parsed = parse_file(&f.text).map_err(e)?;
                let ks = session.load_entries(&f.module, &parsed).map_err(e)?;
                for k in &ks {
                    let entry = unelaborate_entry(&session.names, &f.module, k);
                    let back = parse_file(&print_entry(&entry)).map_err(e)?;
                    if back.len() != 1 || back[0].entry != entry {
                        return Err(format!(
                            "{}: entry does not read back: {}",
                            f.path.display(),
                            print_entry(&entry)
                        ));
                    }
                }
                texts.push((f.path.display().to_string(), f.text.clone()));
            }
        }
    }
    texts.push(("modulogic.dk".into(), corpus::MODULOGIC.into()));
    for (path, text) in &texts {
        let once = print_file(&parse_file(text).map_err(|x| format!("{path}: {x}"))?);
        let twice = print_file(&parse_file(&once).map_err(|x| format!("{path}: {x}"))?);
        if once != twice {
            return Err(format!("{path}: printer is not a fixed point"));
        }
        if path != "modulogic.dk" && &once != text {
            return Err(format!(
                "{path}: print (parse file) differs from the emitted text"
            ));
        }
        files += 1;
    }
    Ok(format!(
        "{files} files: emitted text reprints identically, printer fixed point holds"
    ))
}

// ---------------------------------------------------------------------------

fn main() -> ExitCode {
    let criteria: [Criterion; 9] = [
        (1, "prelude soundness", prelude_soundness),
        (2, "commutativity certificate", bool_commute),
        (3, "set difference certificate", set_diff),
        (4, "pair projections", pair_projections),
        (5, "pred/fun decomposition", pred_fun_decomposition),
        (6, "translation correctness", translation_correctness),
        (7, "normalization oracle", normalization_oracle),
        (8, "mutation rejection", mutation_rejection),
        (9, "round trip", round_trip),
    ];
    let only: Vec<u32> = std::env::args()
        .skip(1)
        .filter_map(|a| a.parse().ok())
        .collect();
    let mut failed = 0;
    for (n, name, f) in criteria {
        if !only.is_empty() && !only.contains(&n) {
            continue;
        }
        let r = catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|p| {
            Err(p
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_else(|| "panicked".into()))
        });
        match r {
            Ok(detail) => println!("criterion {n} ({name}): PASS - {detail}"),
            Err(why) => {
                failed += 1;
                println!("criterion {n} ({name}): FAIL - {why}");
            }
        }
    }
    if failed > 0 {
        ExitCode::FAILURE
    } else {
        ExitCode::SUCCESS
    }
}
