use std::collections::BTreeSet;

use thiserror::Error;

use crate::syntax::{
    all_vars, free_vars, terms_vars, DependencyError, DependencyRegistry, FoFormula, Quantifier, SoFormula, SparseBound, TeamFormula,
    Term,
};

#[derive(Clone, Debug, Error, PartialEq, Eq)]
pub enum TranslateError {
    #[error("variable `{0}` occurs twice in the tuple")]
    RepeatedVariable(String),
    #[error("free variable `{0}` is missing from the tuple")]
    MissingFreeVariable(String),
    #[error("relation name `{0}` already occurs in the formula")]
    NameClash(String),
    #[error(transparent)]
    Dependency(#[from] DependencyError),
}

/// `k` distinct names `z0, z1, …` avoiding `avoid`.
pub fn fresh_vars(k: usize, avoid: &BTreeSet<String>) -> Vec<String> {
    fresh_with("z", k, avoid)
}

/// `k` distinct relation names `S0, S1, …` avoiding `avoid`.
pub fn fresh_relation_names(k: usize, avoid: &BTreeSet<String>) -> Vec<String> {
    fresh_with("S", k, avoid)
}

fn fresh_with(prefix: &str, k: usize, avoid: &BTreeSet<String>) -> Vec<String> {
    (0..).map(|i| format!("{prefix}{i}")).filter(|n| !avoid.contains(n)).take(k).collect()
}

/// `x̄;y`: `x̄` if `y` already occurs in it, `(x̄, y)` otherwise.
fn extend(xs: &[String], y: &str) -> Vec<String> {
    let mut out = xs.to_vec();
    if !xs.iter().any(|x| x == y) {
        out.push(y.to_string());
    }
    out
}

fn rel_atom(name: &str, xs: &[String]) -> SoFormula {
    SoFormula::atom(name, xs.iter().map(Term::var).collect())
}

/// `∀x̄ ((∃y T x̄) ↔ (∃y S x̄;y))`: the `x̄∖{y}` projections of `T` and `S`
/// coincide.
pub fn restriction_formula(t_rel: &str, s_rel: &str, xs: &[String], y: &str) -> SoFormula {
    let left = SoFormula::exists(y, rel_atom(t_rel, xs));
    let right = SoFormula::exists(y, rel_atom(s_rel, &extend(xs, y)));
    SoFormula::forall_all(xs, left.iff(right))
}

fn term_symbols(t: &Term, out: &mut BTreeSet<String>) {
    if let Term::App(f, args) = t {
        out.insert(f.clone());
        for a in args {
            term_symbols(a, out);
        }
    }
}

fn fo_symbols(f: &FoFormula, out: &mut BTreeSet<String>) {
    match f {
        FoFormula::True | FoFormula::False => {}
        FoFormula::Pred(p, args) => {
            out.insert(p.clone());
            args.iter().for_each(|a| term_symbols(a, out));
        }
        FoFormula::Eq(l, r) => {
            term_symbols(l, out);
            term_symbols(r, out);
        }
        FoFormula::Not(g) | FoFormula::Exists(_, g) | FoFormula::Forall(_, g) => fo_symbols(g, out),
        FoFormula::And(g, h) | FoFormula::Or(g, h) => {
            fo_symbols(g, out);
            fo_symbols(h, out);
        }
    }
}

fn team_symbols(f: &TeamFormula, out: &mut BTreeSet<String>) {
    match f {
        TeamFormula::Fo(g) => fo_symbols(g, out),
        TeamFormula::Dep(d) => d.args.iter().for_each(|a| term_symbols(a, out)),
        TeamFormula::Tilde(g) | TeamFormula::Exists(_, g) | TeamFormula::Forall(_, g) => team_symbols(g, out),
        TeamFormula::And(g, h) | TeamFormula::Or(g, h) => {
            team_symbols(g, out);
            team_symbols(h, out);
        }
    }
}

struct Translator<'r> {
    registry: &'r DependencyRegistry,
    bound: Option<SparseBound>,
    avoid: BTreeSet<String>,
}

impl Translator<'_> {
    fn fresh(&mut self) -> String {
        let name = fresh_relation_names(1, &self.avoid).remove(0);
        self.avoid.insert(name.clone());
        name
    }

    fn quantify(&self, name: &str, arity: usize, body: SoFormula) -> SoFormula {
        SoFormula::Rel(Quantifier::Exists, name.to_string(), arity, self.bound.clone(), Box::new(body))
    }

    fn eta(&mut self, phi: &TeamFormula, xs: &[String], r: &str) -> Result<SoFormula, TranslateError> {
        if let Some(alpha) = phi.to_fo() {
            return Ok(SoFormula::forall_all(xs, rel_atom(r, xs).implies(SoFormula::from_fo(&alpha))));
        }
        Ok(match phi {
            TeamFormula::Fo(_) => unreachable!(),
            TeamFormula::Dep(d) => {
                let sig = self.registry.resolve(&d.name, d.args.len())?;
                let mut avoid: BTreeSet<String> = xs.iter().cloned().collect();
                avoid.extend(terms_vars(&d.args));
                let zs = fresh_vars(d.args.len(), &avoid);
                let s = self.fresh();
                let eqs = SoFormula::conjunction(
                    d.args.iter().zip(&zs).map(|(t, z)| SoFormula::Eq(t.clone(), Term::var(z))),
                );
                let image = SoFormula::exists_all(xs, rel_atom(r, xs).and(eqs));
                let body = SoFormula::forall_all(&zs, rel_atom(&s, &zs).iff(image))
                    .and(SoFormula::from_fo_renamed(&sig.definition, Some((crate::syntax::DEPENDENCY_PREDICATE, &s))));
                self.quantify(&s, zs.len(), body)
            }
            TeamFormula::Tilde(g) => self.eta(g, xs, r)?.not(),
            TeamFormula::And(g, h) => self.eta(g, xs, r)?.and(self.eta(h, xs, r)?),
            TeamFormula::Or(g, h) => {
                let s = self.fresh();
                let u = self.fresh();
                let cover = SoFormula::forall_all(xs, rel_atom(r, xs).iff(rel_atom(&s, xs).or(rel_atom(&u, xs))));
                let body = cover.and(self.eta(g, xs, &s)?).and(self.eta(h, xs, &u)?);
                self.quantify(&s, xs.len(), self.quantify(&u, xs.len(), body))
            }
            TeamFormula::Exists(y, g) => {
                let ys = extend(xs, y);
                let s = self.fresh();
                let body = restriction_formula(r, &s, xs, y).and(self.eta(g, &ys, &s)?);
                self.quantify(&s, ys.len(), body)
            }
            TeamFormula::Forall(y, g) => {
                let ys = extend(xs, y);
                let s = self.fresh();
                let total = SoFormula::forall_all(xs, rel_atom(r, xs).implies(SoFormula::forall(y, rel_atom(&s, &ys))));
                let body = restriction_formula(r, &s, xs, y).and(total).and(self.eta(g, &ys, &s)?);
                self.quantify(&s, ys.len(), body)
            }
        })
    }
}

fn run(
    phi: &TeamFormula,
    xs: &[String],
    r: &str,
    registry: &DependencyRegistry,
    bound: Option<SparseBound>,
) -> Result<SoFormula, TranslateError> {
    let mut seen = BTreeSet::new();
    for x in xs {
        if !seen.insert(x.clone()) {
            return Err(TranslateError::RepeatedVariable(x.clone()));
        }
    }
    if let Some(v) = free_vars(phi).into_iter().find(|v| !seen.contains(v)) {
        return Err(TranslateError::MissingFreeVariable(v));
    }
    let mut avoid = all_vars(phi);
    avoid.extend(seen);
    team_symbols(phi, &mut avoid);
    if avoid.contains(r) {
        return Err(TranslateError::NameClash(r.to_string()));
    }
    avoid.insert(r.to_string());
    Translator { registry, bound, avoid }.eta(phi, xs, r)
}

/// The second-order formula that holds of `R := x̄⟨T⟩` exactly when
/// `(A, T) ⊨ φ`.
pub fn translate_eta(
    phi: &TeamFormula,
    xs: &[String],
    r: &str,
    registry: &DependencyRegistry,
) -> Result<SoFormula, TranslateError> {
    run(phi, xs, r, registry, None)
}

/// As [`translate_eta`], with every relation quantifier bounded by `p`.
pub fn translate_zeta(
    phi: &TeamFormula,
    xs: &[String],
    r: &str,
    p: &SparseBound,
    registry: &DependencyRegistry,
) -> Result<SoFormula, TranslateError> {
    run(phi, xs, r, registry, Some(p.clone()))
}

/// A sentence `φ` as the second-order sentence `∃R (η(R) ∧ R)` with a 0-ary
/// `R`, true exactly when `(A, {∅}) ⊨ φ`.
pub fn sentence_to_so(phi: &TeamFormula, registry: &DependencyRegistry) -> Result<SoFormula, TranslateError> {
    let mut avoid = all_vars(phi);
    team_symbols(phi, &mut avoid);
    let r = fresh_with("R", 1, &avoid).remove(0);
    let eta = translate_eta(phi, &[], &r, registry)?;
    Ok(SoFormula::exists_rel(r.clone(), 0, eta.and(SoFormula::atom(r, vec![]))))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::evaluator::eval_team;
    use crate::evaluator::Budget;
    use crate::so_bridge::{eval_so, SoAssignment, SoMode};
    use crate::structures::{Relation, Structure, Team};
    use crate::syntax::{parse_team, Vocabulary};

    fn set(names: &[&str]) -> BTreeSet<String> {
        names.iter().map(|s| s.to_string()).collect()
    }

    fn xs(names: &[&str]) -> Vec<String> {
        names.iter().map(|s| s.to_string()).collect()
    }

    #[test]
    fn fresh_names() {
        assert_eq!(fresh_vars(2, &set(&["x", "y"])), xs(&["z0", "z1"]));
        assert_eq!(fresh_vars(1, &set(&["z0"])), xs(&["z1"]));
        assert!(fresh_vars(0, &set(&[])).is_empty());
    }

    #[test]
    fn first_order_case() {
        let reg = DependencyRegistry::builtin();
        let phi = parse_team("x = x", &Vocabulary::new(), &reg).unwrap();
        let eta = translate_eta(&phi, &xs(&["x"]), "R", &reg).unwrap();
        assert_eq!(eta.to_string(), "A x. (R(x) -> x = x)");
    }

    #[test]
    fn tilde_case_negates() {
        let reg = DependencyRegistry::builtin();
        let v = Vocabulary::new();
        let psi = parse_team("dep(x)", &v, &reg).unwrap();
        let phi = psi.clone().tilde();
        let a = translate_eta(&psi, &xs(&["x"]), "R", &reg).unwrap();
        let b = translate_eta(&phi, &xs(&["x"]), "R", &reg).unwrap();
        assert_eq!(b, a.not());
    }

    #[test]
    fn preconditions() {
        let reg = DependencyRegistry::builtin();
        let v = Vocabulary::new().with_predicate("R", 1).unwrap();
        let phi = parse_team("R(x)", &v, &reg).unwrap();
        assert_eq!(translate_eta(&phi, &xs(&["x", "x"]), "Q", &reg), Err(TranslateError::RepeatedVariable("x".into())));
        assert_eq!(translate_eta(&phi, &[], "Q", &reg), Err(TranslateError::MissingFreeVariable("x".into())));
        assert_eq!(translate_eta(&phi, &xs(&["x"]), "R", &reg), Err(TranslateError::NameClash("R".into())));
        let phi = parse_team("dep(x)", &Vocabulary::new(), &reg).unwrap();
        assert!(matches!(
            translate_eta(&phi, &xs(&["x"]), "Q", &DependencyRegistry::empty()),
            Err(TranslateError::Dependency(_))
        ));
    }

    #[test]
    fn agrees_with_team_semantics_on_small_cases() {
        let reg = DependencyRegistry::builtin();
        let v = Vocabulary::new().with_predicate("P", 1).unwrap();
        let a = Structure::new(2).with_relation("P", 1, [[1]]).unwrap();
        let teams = [
            Team::from_rows(&["x"], [vec![0]]).unwrap(),
            Team::from_rows(&["x"], [vec![0], vec![1]]).unwrap(),
            Team::empty(["x"]),
        ];
        for text in [
            "dep(x)",
            "P(x) | !P(x)",
            "E y. (dep(y) & P(y))",
            "A y. E z. (z = y & dep(x, z))",
            "~P(x) | dep(x)",
            "A y. ~(x = y)",
            "E y. inc(y, x)",
        ] {
            let phi = parse_team(text, &v, &reg).unwrap();
            let eta = translate_eta(&phi, &xs(&["x"]), "R", &reg).unwrap();
            for t in &teams {
                let expected = eval_team(&a, t, &phi, &Budget::default()).unwrap();
                let rel = Relation::from_tuples(2, 1, t.rows().iter().cloned()).unwrap();
                let j = SoAssignment::new().with_rel("R", rel);
                for mode in [SoMode::Pruned, SoMode::Exhaustive] {
                    assert_eq!(eval_so(&a, &j, &eta, mode).unwrap(), expected, "{text} on {t} ({mode:?})");
                }
            }
        }
    }

    #[test]
    fn sparse_zero_bound_flips() {
        let reg = DependencyRegistry::builtin();
        let phi = parse_team("E y. x = y", &Vocabulary::new(), &reg).unwrap();
        let a = Structure::new(2);
        let t = Team::from_rows(&["x"], [vec![0]]).unwrap();
        let j = SoAssignment::new().with_rel("R", Relation::from_tuples(2, 1, t.rows().iter().cloned()).unwrap());
        assert!(eval_team(&a, &t, &phi, &Budget::default()).unwrap());
        // first-order: no relation quantifier, so even p = 0 is exact
        let zeta = translate_zeta(&phi, &xs(&["x"]), "R", &SparseBound::zero(), &reg).unwrap();
        assert!(eval_so(&a, &j, &zeta, SoMode::Pruned).unwrap());
        let phi = parse_team("E y. (x = y & dep(y))", &Vocabulary::new(), &reg).unwrap();
        let eta = translate_eta(&phi, &xs(&["x"]), "R", &reg).unwrap();
        let zeta = translate_zeta(&phi, &xs(&["x"]), "R", &SparseBound::zero(), &reg).unwrap();
        assert!(eval_so(&a, &j, &eta, SoMode::Pruned).unwrap());
        assert!(!eval_so(&a, &j, &zeta, SoMode::Pruned).unwrap());
    }

    #[test]
    fn sentences() {
        let reg = DependencyRegistry::builtin();
        let v = Vocabulary::new().with_predicate("P", 1).unwrap();
        let a = Structure::new(2).with_relation("P", 1, [[1]]).unwrap();
        for (text, expected) in [("E x. P(x)", true), ("A x. P(x)", false), ("E x. (P(x) & dep(x))", true)] {
            let phi = parse_team(text, &v, &reg).unwrap();
            let so = sentence_to_so(&phi, &reg).unwrap();
            assert_eq!(eval_so(&a, &SoAssignment::new(), &so, SoMode::Pruned).unwrap(), expected, "{text}");
        }
    }
}
