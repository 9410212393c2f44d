//! Single-node mutations of `.llpx` certificates, made on the S-expression
//! so each one changes exactly one proof node (renamings also rewrite the
//! node's subtree, where the renamed constant is used).

use lpm_core::dkparse::Span;
use lpm_core::tff::sexp::{read_one, Sexp};

pub struct Mutation {
    pub kind: &'static str,
    /// Premise indices from the root of the proof.
    pub node: Vec<usize>,
    pub text: String,
}

/// Per-certificate knowledge the generic operators cannot infer: terms that
/// are not congruent to a `neq` witness, and names that clash with an
/// eigenvariable.
pub struct Sites {
    pub witnesses: &'static [(&'static str, &'static [&'static str])],
    pub clashes: &'static [(&'static str, &'static [&'static str])],
}

// `a` is an eigenvariable; `false` stands for itself. None of the
// replacements rewrites to the original.
pub const BOOL_SITES: Sites = Sites {
    witnesses: &[
        ("a", &["true", "false", "(notb a)", "(notb true)"]),
        ("false", &["true", "a", "(notb false)", "(orb a true)"]),
    ],
    clashes: &[("a", &["true", "false"])],
};

pub const SET_SITES: Sites = Sites {
    witnesses: &[],
    clashes: &[
        ("tau", &["set"]),
        ("c1", &["empty", "minus"]),
        ("c2", &["c1", "in"]),
    ],
};

/// Number of parameters before the premises.
fn arity(tag: &str) -> usize {
    match tag {
        "bot" | "nottop" => 0,
        "ax" | "cut" | "notnot" => 1,
        "neq" => 2,
        "sym" => 3,
        "and" | "or" | "imp" | "iff" | "notand" | "notor" | "notimp" | "notiff" => 2,
        "exists" | "forall" | "notexists" | "notforall" => 3,
        "existstype" | "foralltype" | "notexiststype" | "notforalltype" => 3,
        "ext" => 3,
        "pred" | "fun" | "subst" => 4,
        _ => panic!("no arity for `{tag}`"),
    }
}

fn atom(s: &str) -> Sexp {
    Sexp::Atom(s.to_string(), Span::default())
}

fn parse(s: &str) -> Sexp {
    read_one(s).expect("mutation parameter parses")
}

fn list(xs: Vec<Sexp>) -> Sexp {
    Sexp::List(xs, Span::default())
}

fn items(s: &Sexp) -> &[Sexp] {
    s.list().expect("a list")
}

fn items_mut(s: &mut Sexp) -> &mut Vec<Sexp> {
    match s {
        Sexp::List(xs, _) => xs,
        _ => panic!("a list"),
    }
}

fn negate(s: &Sexp) -> Sexp {
    list(vec![atom("not"), s.clone()])
}

/// Indices, within the node's list, of its premises.
fn premises(node: &Sexp) -> Vec<usize> {
    let xs = items(node);
    let tag = xs[0].atom().expect("a rule tag");
    (1 + arity(tag)..xs.len())
        .filter(|&i| xs[i].head() != Some("hyps"))
        .collect()
}

fn hyps_index(node: &Sexp) -> Option<usize> {
    items(node).iter().position(|x| x.head() == Some("hyps"))
}

/// Proof nodes in pre-order: premise path and S-expression path.
fn nodes(
    node: &Sexp,
    proof_path: &mut Vec<usize>,
    sexp_path: &mut Vec<usize>,
    out: &mut Vec<(Vec<usize>, Vec<usize>)>,
) {
    out.push((proof_path.clone(), sexp_path.clone()));
    for (k, i) in premises(node).into_iter().enumerate() {
        proof_path.push(k);
        sexp_path.push(i);
        nodes(&items(node)[i], proof_path, sexp_path, out);
        sexp_path.pop();
        proof_path.pop();
    }
}

fn at<'a>(s: &'a Sexp, path: &[usize]) -> &'a Sexp {
    path.iter().fold(s, |s, &i| &items(s)[i])
}

fn at_mut<'a>(s: &'a mut Sexp, path: &[usize]) -> &'a mut Sexp {
    path.iter().fold(s, |s, &i| &mut items_mut(s)[i])
}

fn rename(s: &mut Sexp, from: &str, to: &str) {
    match s {
        Sexp::Atom(a, _) if a == from => *a = to.to_string(),
        Sexp::List(xs, _) => xs.iter_mut().for_each(|x| rename(x, from, to)),
        _ => {}
    }
}

fn swapped_tag(tag: &str) -> Option<&'static str> {
    Some(match tag {
        "bot" => "nottop",
        "nottop" => "bot",
        "notiff" => "iff",
        "iff" => "notiff",
        "and" => "notor",
        "notforall" => "exists",
        "notforalltype" => "existstype",
        _ => return None,
    })
}

/// Every mutation of every proof node of `cert`.
pub fn mutations(cert: &str, sites: Sites) -> Result<Vec<Mutation>, String> {
    let root = read_one(cert).map_err(|e| e.to_string())?;
    let proof_at = vec![4, 1];
    let mut all = Vec::new();
    nodes(
        at(&root, &proof_at),
        &mut Vec::new(),
        &mut proof_at.clone(),
        &mut all,
    );
    let mut out: Vec<Mutation> = Vec::new();
    for (node_path, sexp_path) in all {
        let mut emit = |kind: &'static str, f: &dyn Fn(&mut Sexp)| {
            let mut r = root.clone();
            f(at_mut(&mut r, &sexp_path));
            let text = r.to_string();
            if !out.iter().any(|m| m.text == text) && text != root.to_string() {
                out.push(Mutation {
                    kind,
                    node: node_path.clone(),
                    text,
                });
            }
        };
        let node = at(&root, &sexp_path).clone();
        let xs = items(&node);
        let tag = xs[0].atom().unwrap().to_string();
        let prem = premises(&node);

        if prem.len() >= 2 {
            emit("swapped premises", &|n| items_mut(n).swap(prem[0], prem[1]));
        }
        if let Some(&last) = prem.last() {
            emit("dropped premise", &|n| {
                items_mut(n).remove(last);
            });
        }
        let extra_at = hyps_index(&node).unwrap_or(xs.len());
        emit("extra premise", &|n| {
            items_mut(n).insert(extra_at, list(vec![atom("bot")]))
        });
        if let Some(t) = swapped_tag(&tag) {
            emit("wrong rule", &|n| items_mut(n)[0] = atom(t));
        }
        if tag == "ext" {
            let other = if xs[1].atom() == Some("bool_case_nf") {
                "bool_case_ex"
            } else {
                "bool_case_nf"
            };
            emit("wrong rule", &|n| items_mut(n)[1] = atom(other));
        }

        // Wrong witnesses and parameters.
        match tag.as_str() {
            "neq" => {
                let w = xs[2].to_string();
                for (orig, subs) in sites.witnesses {
                    if *orig == w {
                        for s in *subs {
                            emit("wrong witness", &|n| items_mut(n)[2] = parse(s));
                        }
                    }
                }
            }
            "notforall" | "notforalltype" | "ext" => {
                let at = if tag == "ext" { 3 } else { 2 };
                emit("wrong witness", &|n| {
                    let body = items(n)[at].clone();
                    items_mut(n)[at] = negate(&body);
                });
            }
            "ax" | "and" | "notiff" => {
                emit("wrong witness", &|n| {
                    let p = items(n)[1].clone();
                    items_mut(n)[1] = negate(&p);
                });
            }
            _ => {}
        }

        // Eigenvariables that are not fresh.
        if matches!(
            tag.as_str(),
            "notforall" | "notforalltype" | "exists" | "existstype"
        ) {
            let eigen = xs[3].atom().unwrap().to_string();
            for (name, clashes) in sites.clashes {
                if *name == eigen {
                    for c in *clashes {
                        emit("non-fresh constant", &|n| rename(n, &eigen, c));
                    }
                }
            }
        }

        if let Some(h) = hyps_index(&node) {
            emit("wrong hypothesis", &|n| {
                let f = items(&items(n)[h])[1].clone();
                items_mut(&mut items_mut(n)[h])[1] = negate(&f);
            });
        }
    }
    Ok(out)
}
