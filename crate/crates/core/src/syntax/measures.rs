//! Free variables, width, quantifier rank, modal depth, size and length.
//!
//! Variable sets are returned sorted and deduplicated.

use std::collections::BTreeSet;

use super::ast::{FoFormula, MlFormula, MtlFormula, SoFormula, TeamFormula, Term};

fn term_vars(t: &Term, out: &mut BTreeSet<String>) {
    match t {
        Term::Var(v) => {
            out.insert(v.clone());
        }
        Term::App(_, args) => args.iter().for_each(|a| term_vars(a, out)),
    }
}

pub fn terms_vars(ts: &[Term]) -> BTreeSet<String> {
    let mut out = BTreeSet::new();
    ts.iter().for_each(|t| term_vars(t, &mut out));
    out
}

fn fo_free(f: &FoFormula, bound: &mut Vec<String>, out: &mut BTreeSet<String>) {
    let add_terms = |ts: &[&Term], bound: &Vec<String>, out: &mut BTreeSet<String>| {
        for t in ts {
            let mut vs = BTreeSet::new();
            term_vars(t, &mut vs);
            out.extend(vs.into_iter().filter(|v| !bound.contains(v)));
        }
    };
    match f {
        FoFormula::True | FoFormula::False => {}
        FoFormula::Pred(_, args) => add_terms(&args.iter().collect::<Vec<_>>(), bound, out),
        FoFormula::Eq(l, r) => add_terms(&[l, r], bound, out),
        FoFormula::Not(a) => fo_free(a, bound, out),
        FoFormula::And(a, b) | FoFormula::Or(a, b) => {
            fo_free(a, bound, out);
            fo_free(b, bound, out);
        }
        FoFormula::Exists(x, a) | FoFormula::Forall(x, a) => {
            bound.push(x.clone());
            fo_free(a, bound, out);
            bound.pop();
        }
    }
}

pub fn fo_free_vars(f: &FoFormula) -> BTreeSet<String> {
    let mut out = BTreeSet::new();
    fo_free(f, &mut Vec::new(), &mut out);
    out
}

fn fo_all(f: &FoFormula, out: &mut BTreeSet<String>) {
    match f {
        FoFormula::True | FoFormula::False => {}
        FoFormula::Pred(_, args) => args.iter().for_each(|t| term_vars(t, out)),
        FoFormula::Eq(l, r) => {
            term_vars(l, out);
            term_vars(r, out);
        }
        FoFormula::Not(a) => fo_all(a, out),
        FoFormula::And(a, b) | FoFormula::Or(a, b) => {
            fo_all(a, out);
            fo_all(b, out);
        }
        FoFormula::Exists(x, a) | FoFormula::Forall(x, a) => {
            out.insert(x.clone());
            fo_all(a, out);
        }
    }
}

pub fn fo_all_vars(f: &FoFormula) -> BTreeSet<String> {
    let mut out = BTreeSet::new();
    fo_all(f, &mut out);
    out
}

pub fn fo_quantifier_rank(f: &FoFormula) -> usize {
    match f {
        FoFormula::True | FoFormula::False | FoFormula::Pred(..) | FoFormula::Eq(..) => 0,
        FoFormula::Not(a) => fo_quantifier_rank(a),
        FoFormula::And(a, b) | FoFormula::Or(a, b) => {
            fo_quantifier_rank(a).max(fo_quantifier_rank(b))
        }
        FoFormula::Exists(_, a) | FoFormula::Forall(_, a) => fo_quantifier_rank(a) + 1,
    }
}

pub fn fo_size(f: &FoFormula) -> usize {
    match f {
        FoFormula::True | FoFormula::False | FoFormula::Pred(..) | FoFormula::Eq(..) => 1,
        FoFormula::Not(a) | FoFormula::Exists(_, a) | FoFormula::Forall(_, a) => 1 + fo_size(a),
        FoFormula::And(a, b) | FoFormula::Or(a, b) => 1 + fo_size(a) + fo_size(b),
    }
}

fn term_length(t: &Term) -> usize {
    match t {
        Term::Var(_) => 1,
        Term::App(_, args) => 1 + args.iter().map(term_length).sum::<usize>(),
    }
}

/// Number of symbols, counting every variable and function occurrence.
pub fn fo_length(f: &FoFormula) -> usize {
    match f {
        FoFormula::True | FoFormula::False => 1,
        FoFormula::Pred(_, args) => 1 + args.iter().map(term_length).sum::<usize>(),
        FoFormula::Eq(l, r) => 1 + term_length(l) + term_length(r),
        FoFormula::Not(a) => 1 + fo_length(a),
        FoFormula::Exists(_, a) | FoFormula::Forall(_, a) => 2 + fo_length(a),
        FoFormula::And(a, b) | FoFormula::Or(a, b) => 1 + fo_length(a) + fo_length(b),
    }
}

/// As [`fo_length`]; bounds both [`width`] and [`quantifier_rank`].
pub fn length(f: &TeamFormula) -> usize {
    match f {
        TeamFormula::Fo(a) => fo_length(a),
        TeamFormula::Dep(d) => 1 + d.args.iter().map(term_length).sum::<usize>(),
        TeamFormula::Tilde(a) => 1 + length(a),
        TeamFormula::Exists(_, a) | TeamFormula::Forall(_, a) => 2 + length(a),
        TeamFormula::And(a, b) | TeamFormula::Or(a, b) => 1 + length(a) + length(b),
    }
}

fn team_free(f: &TeamFormula, bound: &mut Vec<String>, out: &mut BTreeSet<String>) {
    match f {
        TeamFormula::Fo(a) => {
            out.extend(fo_free_vars(a).into_iter().filter(|v| !bound.contains(v)));
        }
        TeamFormula::Dep(d) => {
            out.extend(terms_vars(&d.args).into_iter().filter(|v| !bound.contains(v)));
        }
        TeamFormula::Tilde(a) => team_free(a, bound, out),
        TeamFormula::And(a, b) | TeamFormula::Or(a, b) => {
            team_free(a, bound, out);
            team_free(b, bound, out);
        }
        TeamFormula::Exists(x, a) | TeamFormula::Forall(x, a) => {
            bound.push(x.clone());
            team_free(a, bound, out);
            bound.pop();
        }
    }
}

/// `Fr(φ)`; for a dependency atom this is `Var(t̄)`.
pub fn free_vars(f: &TeamFormula) -> BTreeSet<String> {
    let mut out = BTreeSet::new();
    team_free(f, &mut Vec::new(), &mut out);
    out
}

/// `Var(φ)`: every variable occurring free or bound.
pub fn all_vars(f: &TeamFormula) -> BTreeSet<String> {
    let mut out = BTreeSet::new();
    fn go(f: &TeamFormula, out: &mut BTreeSet<String>) {
        match f {
            TeamFormula::Fo(a) => fo_all(a, out),
            TeamFormula::Dep(d) => d.args.iter().for_each(|t| term_vars(t, out)),
            TeamFormula::Tilde(a) => go(a, out),
            TeamFormula::And(a, b) | TeamFormula::Or(a, b) => {
                go(a, out);
                go(b, out);
            }
            TeamFormula::Exists(x, a) | TeamFormula::Forall(x, a) => {
                out.insert(x.clone());
                go(a, out);
            }
        }
    }
    go(f, &mut out);
    out
}

/// `w(φ) = |Var(φ)|`.
pub fn width(f: &TeamFormula) -> usize {
    all_vars(f).len()
}

pub fn quantifier_rank(f: &TeamFormula) -> usize {
    match f {
        TeamFormula::Fo(a) => fo_quantifier_rank(a),
        TeamFormula::Dep(_) => 0,
        TeamFormula::Tilde(a) => quantifier_rank(a),
        TeamFormula::And(a, b) | TeamFormula::Or(a, b) => {
            quantifier_rank(a).max(quantifier_rank(b))
        }
        TeamFormula::Exists(_, a) | TeamFormula::Forall(_, a) => quantifier_rank(a) + 1,
    }
}

/// Number of connectives, quantifiers and atoms. Independent of how
/// first-order parts are grouped into leaves.
pub fn size(f: &TeamFormula) -> usize {
    match f {
        TeamFormula::Fo(a) => fo_size(a),
        TeamFormula::Dep(_) => 1,
        TeamFormula::Tilde(a) | TeamFormula::Exists(_, a) | TeamFormula::Forall(_, a) => {
            1 + size(a)
        }
        TeamFormula::And(a, b) | TeamFormula::Or(a, b) => 1 + size(a) + size(b),
    }
}

pub fn ml_modal_depth(f: &MlFormula) -> usize {
    match f {
        MlFormula::True | MlFormula::False | MlFormula::Prop(_) => 0,
        MlFormula::Not(a) => ml_modal_depth(a),
        MlFormula::And(a, b) | MlFormula::Or(a, b) => ml_modal_depth(a).max(ml_modal_depth(b)),
        MlFormula::Necessarily(a) | MlFormula::Possibly(a) => ml_modal_depth(a) + 1,
    }
}

pub fn modal_depth(f: &MtlFormula) -> usize {
    match f {
        MtlFormula::Ml(a) => ml_modal_depth(a),
        MtlFormula::Tilde(a) => modal_depth(a),
        MtlFormula::And(a, b) | MtlFormula::Or(a, b) => modal_depth(a).max(modal_depth(b)),
        MtlFormula::Necessarily(a) | MtlFormula::Possibly(a) => modal_depth(a) + 1,
    }
}

pub fn ml_size(f: &MlFormula) -> usize {
    match f {
        MlFormula::True | MlFormula::False | MlFormula::Prop(_) => 1,
        MlFormula::Not(a) | MlFormula::Necessarily(a) | MlFormula::Possibly(a) => 1 + ml_size(a),
        MlFormula::And(a, b) | MlFormula::Or(a, b) => 1 + ml_size(a) + ml_size(b),
    }
}

pub fn mtl_size(f: &MtlFormula) -> usize {
    match f {
        MtlFormula::Ml(a) => ml_size(a),
        MtlFormula::Tilde(a) | MtlFormula::Necessarily(a) | MtlFormula::Possibly(a) => {
            1 + mtl_size(a)
        }
        MtlFormula::And(a, b) | MtlFormula::Or(a, b) => 1 + mtl_size(a) + mtl_size(b),
    }
}

fn ml_props(f: &MlFormula, out: &mut BTreeSet<String>) {
    match f {
        MlFormula::True | MlFormula::False => {}
        MlFormula::Prop(p) => {
            out.insert(p.clone());
        }
        MlFormula::Not(a) | MlFormula::Necessarily(a) | MlFormula::Possibly(a) => ml_props(a, out),
        MlFormula::And(a, b) | MlFormula::Or(a, b) => {
            ml_props(a, out);
            ml_props(b, out);
        }
    }
}

/// `Prop(φ)`.
pub fn props(f: &MtlFormula) -> BTreeSet<String> {
    let mut out = BTreeSet::new();
    fn go(f: &MtlFormula, out: &mut BTreeSet<String>) {
        match f {
            MtlFormula::Ml(a) => ml_props(a, out),
            MtlFormula::Tilde(a) | MtlFormula::Necessarily(a) | MtlFormula::Possibly(a) => {
                go(a, out)
            }
            MtlFormula::And(a, b) | MtlFormula::Or(a, b) => {
                go(a, out);
                go(b, out);
            }
        }
    }
    go(f, &mut out);
    out
}

pub fn so_size(f: &SoFormula) -> usize {
    match f {
        SoFormula::True | SoFormula::False | SoFormula::Atom(..) | SoFormula::Eq(..) => 1,
        SoFormula::Not(a)
        | SoFormula::Elem(_, _, a)
        | SoFormula::Rel(_, _, _, _, a)
        | SoFormula::Fun(_, _, _, a) => 1 + so_size(a),
        SoFormula::And(a, b)
        | SoFormula::Or(a, b)
        | SoFormula::Implies(a, b)
        | SoFormula::Iff(a, b) => 1 + so_size(a) + so_size(b),
    }
}

/// Free element, relation and function variables of a second-order formula,
/// given the set of symbols the structure interprets. Atoms and function
/// applications whose name is neither bound nor in `interpreted` count as free.
pub fn so_free_symbols(f: &SoFormula, interpreted: &BTreeSet<String>) -> BTreeSet<String> {
    fn term(t: &Term, bound: &[String], interpreted: &BTreeSet<String>, out: &mut BTreeSet<String>) {
        match t {
            Term::Var(v) => {
                if !bound.contains(v) {
                    out.insert(v.clone());
                }
            }
            Term::App(fname, args) => {
                if !bound.contains(fname) && !interpreted.contains(fname) {
                    out.insert(fname.clone());
                }
                args.iter().for_each(|a| term(a, bound, interpreted, out));
            }
        }
    }
    fn go(
        f: &SoFormula,
        bound: &mut Vec<String>,
        interpreted: &BTreeSet<String>,
        out: &mut BTreeSet<String>,
    ) {
        match f {
            SoFormula::True | SoFormula::False => {}
            SoFormula::Atom(p, args) => {
                if !bound.contains(p) && !interpreted.contains(p) {
                    out.insert(p.clone());
                }
                args.iter().for_each(|a| term(a, bound, interpreted, out));
            }
            SoFormula::Eq(l, r) => {
                term(l, bound, interpreted, out);
                term(r, bound, interpreted, out);
            }
            SoFormula::Not(a) => go(a, bound, interpreted, out),
            SoFormula::And(a, b)
            | SoFormula::Or(a, b)
            | SoFormula::Implies(a, b)
            | SoFormula::Iff(a, b) => {
                go(a, bound, interpreted, out);
                go(b, bound, interpreted, out);
            }
            SoFormula::Elem(_, x, a) | SoFormula::Rel(_, x, _, _, a) | SoFormula::Fun(_, x, _, a) => {
                bound.push(x.clone());
                go(a, bound, interpreted, out);
                bound.pop();
            }
        }
    }
    let mut out = BTreeSet::new();
    go(f, &mut Vec::new(), interpreted, &mut out);
    out
}
