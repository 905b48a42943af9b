//! Equivalence laws of FO(∼) and the normal form
//! `⩔ᵢ (αᵢ ∧ ⋀ⱼ E βᵢⱼ)` with classical `αᵢ`, `βᵢⱼ`.

mod laws;

use std::fmt;

use thiserror::Error;

use crate::syntax::{fo_all_vars, fo_size, FoFormula, TeamFormula};

pub use laws::{apply_law, Direction, Law};

#[derive(Clone, Debug, Error, PartialEq, Eq)]
pub enum DnfError {
    #[error("normal form exceeds the size budget of {0}")]
    Budget(usize),
    #[error("dependency atoms have no normal form")]
    Dependency,
}

#[derive(Clone, Debug, Error, PartialEq, Eq)]
pub enum GammaError {
    #[error("variable `{0}` is neither `x` nor `y`")]
    Variable(String),
}

/// `α ∧ E β₁ ∧ … ∧ E βₘ`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Disjunct {
    /// Holds in every row.
    pub base: FoFormula,
    /// Each holds in some row.
    pub witnesses: Vec<FoFormula>,
}

impl Disjunct {
    pub fn new(base: FoFormula, witnesses: Vec<FoFormula>) -> Self {
        Disjunct { base, witnesses }
    }

    pub fn size(&self) -> usize {
        fo_size(&self.base) + self.witnesses.iter().map(fo_size).sum::<usize>()
    }

    pub fn to_team(&self) -> TeamFormula {
        TeamFormula::conjunction(
            std::iter::once(TeamFormula::Fo(self.base.clone()))
                .chain(self.witnesses.iter().cloned().map(TeamFormula::nonempty)),
        )
    }

    fn conjoin(&self, other: &Disjunct) -> Disjunct {
        let mut witnesses = self.witnesses.clone();
        push_new(&mut witnesses, other.witnesses.iter().cloned());
        Disjunct { base: and(self.base.clone(), other.base.clone()), witnesses }
    }
}

/// A Boolean disjunction of [`Disjunct`]s; never empty.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Dnf {
    pub disjuncts: Vec<Disjunct>,
}

impl Dnf {
    pub fn size(&self) -> usize {
        self.disjuncts.iter().map(Disjunct::size).sum()
    }

    /// The formula `⩔ᵢ (αᵢ ∧ ⋀ⱼ ∼¬βᵢⱼ)`.
    pub fn reconstruct(&self) -> TeamFormula {
        TeamFormula::bool_disjunction(self.disjuncts.iter().map(Disjunct::to_team))
    }
}

impl fmt::Display for Dnf {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.reconstruct())
    }
}

fn push_new(into: &mut Vec<FoFormula>, items: impl IntoIterator<Item = FoFormula>) {
    for i in items {
        if !into.contains(&i) {
            into.push(i);
        }
    }
}

fn and(a: FoFormula, b: FoFormula) -> FoFormula {
    match (a, b) {
        (FoFormula::True, b) => b,
        (a, FoFormula::True) => a,
        (a, b) if a == b => a,
        (a, b) => a.and(b),
    }
}

fn negate(a: FoFormula) -> FoFormula {
    match a {
        FoFormula::Not(inner) => *inner,
        FoFormula::True => FoFormula::False,
        FoFormula::False => FoFormula::True,
        a => a.not(),
    }
}

struct Expander {
    budget: usize,
}

impl Expander {
    fn check(&self, d: Dnf) -> Result<Dnf, DnfError> {
        if d.size() > self.budget {
            return Err(DnfError::Budget(self.budget));
        }
        Ok(d)
    }

    fn product(&self, a: &Dnf, b: &Dnf) -> Result<Dnf, DnfError> {
        if a.disjuncts.len().saturating_mul(b.disjuncts.len()) > self.budget {
            return Err(DnfError::Budget(self.budget));
        }
        let mut out: Vec<Disjunct> = Vec::new();
        for l in &a.disjuncts {
            for r in &b.disjuncts {
                let d = l.conjoin(r);
                if !out.contains(&d) {
                    out.push(d);
                }
            }
        }
        self.check(Dnf { disjuncts: out })
    }

    fn expand(&self, f: &TeamFormula) -> Result<Dnf, DnfError> {
        match f {
            TeamFormula::Fo(a) => Ok(Dnf { disjuncts: vec![Disjunct::new(a.clone(), vec![])] }),
            TeamFormula::Dep(_) => Err(DnfError::Dependency),
            TeamFormula::Tilde(a) => {
                // ∼(α ∧ ⋀ E β) is E ¬α or some ¬β; conjoin those choices.
                let inner = self.expand(a)?;
                let mut acc = Dnf { disjuncts: vec![Disjunct::new(FoFormula::True, vec![])] };
                for d in &inner.disjuncts {
                    let mut options = vec![Disjunct::new(FoFormula::True, vec![negate(d.base.clone())])];
                    options.extend(d.witnesses.iter().map(|b| Disjunct::new(negate(b.clone()), vec![])));
                    acc = self.product(&acc, &Dnf { disjuncts: options })?;
                }
                Ok(acc)
            }
            TeamFormula::And(a, b) => self.product(&self.expand(a)?, &self.expand(b)?),
            TeamFormula::Or(a, b) => {
                let (l, r) = (self.expand(a)?, self.expand(b)?);
                if l.disjuncts.len().saturating_mul(r.disjuncts.len()) > self.budget {
                    return Err(DnfError::Budget(self.budget));
                }
                let mut out: Vec<Disjunct> = Vec::new();
                for p in &l.disjuncts {
                    for q in &r.disjuncts {
                        let d = merge_split(p, q);
                        if !out.contains(&d) {
                            out.push(d);
                        }
                    }
                }
                self.check(Dnf { disjuncts: out })
            }
            TeamFormula::Exists(x, a) => {
                let inner = self.expand(a)?;
                let disjuncts = inner
                    .disjuncts
                    .into_iter()
                    .map(|d| Disjunct {
                        base: FoFormula::exists(x.clone(), d.base.clone()),
                        witnesses: d
                            .witnesses
                            .into_iter()
                            .map(|b| FoFormula::exists(x.clone(), and(d.base.clone(), b)))
                            .collect(),
                    })
                    .collect();
                self.check(Dnf { disjuncts })
            }
            TeamFormula::Forall(x, a) => {
                let inner = self.expand(a)?;
                let disjuncts = inner
                    .disjuncts
                    .into_iter()
                    .map(|d| Disjunct {
                        base: FoFormula::forall(x.clone(), d.base),
                        witnesses: d.witnesses.into_iter().map(|b| FoFormula::exists(x.clone(), b)).collect(),
                    })
                    .collect();
                self.check(Dnf { disjuncts })
            }
        }
    }
}

// (α ∧ ⋀ E β) ∨ (γ ∧ ⋀ E δ) as a single disjunct: every row satisfies α or
// γ, and each witness is paired with the base it came from.
fn merge_split(p: &Disjunct, q: &Disjunct) -> Disjunct {
    let mut bases = Vec::new();
    push_new(&mut bases, [p.base.clone(), q.base.clone()]);
    let mut witnesses = Vec::new();
    for d in [p, q] {
        push_new(&mut witnesses, d.witnesses.iter().map(|b| and(d.base.clone(), b.clone())));
    }
    Disjunct { base: FoFormula::disjunction(bases), witnesses }
}

/// Expands a formula without dependency atoms into the normal form, failing
/// once the total size exceeds `size_budget`.
pub fn dnf_expand(f: &TeamFormula, size_budget: usize) -> Result<Dnf, DnfError> {
    if f.has_dependency_atoms() {
        return Err(DnfError::Dependency);
    }
    Expander { budget: size_budget }.expand(f)
}

/// The classical sentence `⋀ᵢ ∃x∃y (α ∧ βᵢ)`; `⊤` when there are no
/// witnesses, since the empty team satisfies such a disjunct.
pub fn build_gamma(d: &Disjunct) -> Result<FoFormula, GammaError> {
    for part in std::iter::once(&d.base).chain(&d.witnesses) {
        if let Some(v) = fo_all_vars(part).into_iter().find(|v| v != "x" && v != "y") {
            return Err(GammaError::Variable(v));
        }
    }
    let vars = ["x".to_string(), "y".to_string()];
    Ok(FoFormula::conjunction(
        d.witnesses.iter().map(|b| FoFormula::exists_all(&vars, d.base.clone().and(b.clone()))),
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::evaluator::{eval_team, Budget};
    use crate::structures::{Structure, Team};
    use crate::syntax::{parse_team, DependencyRegistry, Vocabulary};

    fn team(s: &str) -> TeamFormula {
        let v = Vocabulary::new().with_predicate("P", 1).unwrap().with_predicate("Q", 1).unwrap();
        parse_team(s, &v, &DependencyRegistry::empty()).unwrap()
    }

    fn all_teams(n: usize) -> Vec<Team> {
        (0u32..1 << n)
            .map(|mask| Team::from_rows(&["x"], (0..n).filter(|i| mask >> i & 1 == 1).map(|i| vec![i])).unwrap())
            .collect()
    }

    fn same_on_small_models(f: &TeamFormula, g: &TeamFormula) {
        for p in 0..4usize {
            let a = Structure::new(2)
                .with_relation("P", 1, (0..2).filter(|i| p >> i & 1 == 1).map(|i| [i]))
                .unwrap()
                .with_relation("Q", 1, [[1]])
                .unwrap();
            for t in all_teams(2) {
                let b = Budget::default();
                assert_eq!(eval_team(&a, &t, f, &b).unwrap(), eval_team(&a, &t, g, &b).unwrap(), "{f} vs {g} on {t:?}");
            }
        }
    }

    #[test]
    fn first_order_is_one_disjunct() {
        let d = dnf_expand(&team("P(x) | Q(x)"), 100).unwrap();
        assert_eq!(d.disjuncts, vec![Disjunct::new(team("P(x) | Q(x)").to_fo().unwrap(), vec![])]);
    }

    #[test]
    fn tilde_of_first_order() {
        let f = team("~P(x)");
        let d = dnf_expand(&f, 100).unwrap();
        assert_eq!(d.disjuncts, vec![Disjunct::new(FoFormula::True, vec![team("!P(x)").to_fo().unwrap()])]);
        same_on_small_models(&f, &d.reconstruct());
    }

    #[test]
    fn exists_with_witnesses() {
        let f = team("E y. (P(y) & NE Q(y) & NE (x = y))");
        let d = dnf_expand(&f, 100).unwrap();
        assert_eq!(d.disjuncts.len(), 1);
        assert_eq!(d.disjuncts[0].witnesses.len(), 2);
        same_on_small_models(&f, &d.reconstruct());
    }

    #[test]
    fn mixed_connectives() {
        for s in ["~(P(x) | NE Q(x))", "A y. ~(x = y) | ~P(x)", "(NE P(x) \\/ Q(x)) & ~(A y. P(y))", "~~P(x) | ~Q(x)"] {
            let f = team(s);
            same_on_small_models(&f, &dnf_expand(&f, 10_000).unwrap().reconstruct());
        }
    }

    #[test]
    fn budget_and_dependencies() {
        assert_eq!(dnf_expand(&team("~P(x) & ~Q(x) & ~(x = x)"), 3), Err(DnfError::Budget(3)));
        let v = Vocabulary::new();
        let f = parse_team("dep(x)", &v, &DependencyRegistry::builtin()).unwrap();
        assert_eq!(dnf_expand(&f, 100), Err(DnfError::Dependency));
    }

    #[test]
    fn gamma() {
        let d = Disjunct::new(team("P(x)").to_fo().unwrap(), vec![team("Q(y)").to_fo().unwrap()]);
        assert_eq!(build_gamma(&d).unwrap().to_string(), "E x. E y. (P(x) & Q(y))");
        assert_eq!(build_gamma(&Disjunct::new(FoFormula::False, vec![])).unwrap(), FoFormula::True);
        let bad = Disjunct::new(team("E z. P(z)").to_fo().unwrap(), vec![FoFormula::True]);
        assert_eq!(build_gamma(&bad), Err(GammaError::Variable("z".into())));
    }
}
