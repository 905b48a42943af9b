//! Nine equivalences of FO(∼) as one-step rewrites at the root.
//!
//! Greek metavariables stand for first-order formulas, `θ` for arbitrary
//! ones; `E β` is `∼¬β` and `θ ⩔ θ'` is `∼(∼θ ∧ ∼θ')`.

use std::fmt;
use std::str::FromStr;

use crate::syntax::{FoFormula, TeamFormula};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Law {
    /// `α ∧ ⋀ E βᵢ ≡ ⋁ (α ∧ E βᵢ)`
    SpreadBase,
    /// `⋁ (αᵢ ∧ E βᵢ) ≡ (⋁ αᵢ) ∧ ⋀ E(αᵢ ∧ βᵢ)`
    CollectBase,
    /// `(θ₁ ⩔ θ₂) ∨ θ₃ ≡ (θ₁ ∨ θ₃) ⩔ (θ₂ ∨ θ₃)`
    SplitOverChoiceLeft,
    /// `θ₁ ∨ (θ₂ ⩔ θ₃) ≡ (θ₁ ∨ θ₂) ⩔ (θ₁ ∨ θ₃)`
    SplitOverChoiceRight,
    /// `∃x (θ₁ ⩔ θ₂) ≡ ∃x θ₁ ⩔ ∃x θ₂`
    ExistsOverChoice,
    /// `∃x (θ₁ ∨ θ₂) ≡ ∃x θ₁ ∨ ∃x θ₂`
    ExistsOverSplit,
    /// `∃x (α ∧ E β) ≡ ∃x α ∧ E ∃x (α ∧ β)`
    ExistsOverWitness,
    /// `∀x (θ₁ ∧ θ₂) ≡ ∀x θ₁ ∧ ∀x θ₂`
    ForallOverAnd,
    /// `∀x ∼θ ≡ ∼∀x θ`
    ForallOverTilde,
}

impl Law {
    pub const ALL: [Law; 9] = [
        Law::SpreadBase,
        Law::CollectBase,
        Law::SplitOverChoiceLeft,
        Law::SplitOverChoiceRight,
        Law::ExistsOverChoice,
        Law::ExistsOverSplit,
        Law::ExistsOverWitness,
        Law::ForallOverAnd,
        Law::ForallOverTilde,
    ];

    /// 1-based position in [`Law::ALL`].
    pub fn number(self) -> usize {
        Law::ALL.iter().position(|l| *l == self).expect("listed") + 1
    }

    pub fn from_number(k: usize) -> Option<Law> {
        k.checked_sub(1).and_then(|i| Law::ALL.get(i).copied())
    }
}

impl fmt::Display for Law {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.number())
    }
}

impl FromStr for Law {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        s.parse::<usize>().ok().and_then(Law::from_number).ok_or_else(|| format!("no law `{s}` (expected 1-9)"))
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub enum Direction {
    /// Left-hand side to right-hand side.
    #[default]
    Forward,
    Backward,
}

fn nonempty(beta: FoFormula) -> TeamFormula {
    TeamFormula::nonempty(beta)
}

fn conjuncts(f: &TeamFormula) -> Vec<&TeamFormula> {
    match f {
        TeamFormula::And(a, b) => {
            let mut v = conjuncts(a);
            v.extend(conjuncts(b));
            v
        }
        _ => vec![f],
    }
}

fn split_items(f: &TeamFormula) -> Vec<&TeamFormula> {
    match f {
        TeamFormula::Or(a, b) => {
            let mut v = split_items(a);
            v.extend(split_items(b));
            v
        }
        _ => vec![f],
    }
}

// `α ∧ E β` as a single team-level conjunction.
fn base_with_witness(f: &TeamFormula) -> Option<(&FoFormula, &FoFormula)> {
    match f {
        TeamFormula::And(a, b) => Some((a.as_fo()?, b.as_nonempty()?)),
        _ => None,
    }
}

// `α ∧ E β₁ ∧ … ∧ E βₙ` with `n ≥ 1`.
fn base_with_witnesses(f: &TeamFormula) -> Option<(&FoFormula, Vec<&FoFormula>)> {
    let parts = conjuncts(f);
    let (first, rest) = parts.split_first()?;
    if rest.is_empty() {
        return None;
    }
    let alpha = first.as_fo()?;
    let betas = rest.iter().map(|p| p.as_nonempty()).collect::<Option<Vec<_>>>()?;
    Some((alpha, betas))
}

fn witness_items(f: &TeamFormula) -> Option<Vec<(&FoFormula, &FoFormula)>> {
    split_items(f).into_iter().map(base_with_witness).collect()
}

/// Rewrites `f` at the root with `law` in the given direction, or `None`
/// when `f` does not have the required shape.
pub fn apply_law(law: Law, f: &TeamFormula, dir: Direction) -> Option<TeamFormula> {
    use Direction::*;
    match (law, dir) {
        (Law::SpreadBase, Forward) => {
            let (alpha, betas) = base_with_witnesses(f)?;
            Some(TeamFormula::split_disjunction(
                betas.into_iter().map(|b| TeamFormula::Fo(alpha.clone()).and(nonempty(b.clone()))),
            ))
        }
        (Law::SpreadBase, Backward) => {
            let items = witness_items(f)?;
            let alpha = items[0].0;
            if items.iter().any(|(a, _)| *a != alpha) {
                return None;
            }
            Some(TeamFormula::conjunction(
                std::iter::once(TeamFormula::Fo(alpha.clone())).chain(items.iter().map(|(_, b)| nonempty((*b).clone()))),
            ))
        }
        (Law::CollectBase, Forward) => {
            let items = witness_items(f)?;
            let base = FoFormula::disjunction(items.iter().map(|(a, _)| (*a).clone()));
            Some(TeamFormula::conjunction(
                std::iter::once(TeamFormula::Fo(base))
                    .chain(items.iter().map(|(a, b)| nonempty((*a).clone().and((*b).clone())))),
            ))
        }
        (Law::CollectBase, Backward) => {
            let (base, joint) = base_with_witnesses(f)?;
            let pairs = joint
                .into_iter()
                .map(|g| match g {
                    FoFormula::And(a, b) => Some(((**a).clone(), (**b).clone())),
                    _ => None,
                })
                .collect::<Option<Vec<_>>>()?;
            if FoFormula::disjunction(pairs.iter().map(|(a, _)| a.clone())) != *base {
                return None;
            }
            Some(TeamFormula::split_disjunction(
                pairs.into_iter().map(|(a, b)| TeamFormula::Fo(a).and(nonempty(b))),
            ))
        }
        (Law::SplitOverChoiceLeft, Forward) => {
            let TeamFormula::Or(l, r) = f else { return None };
            let (t1, t2) = l.as_bool_or()?;
            Some(t1.clone().or((**r).clone()).bool_or(t2.clone().or((**r).clone())))
        }
        (Law::SplitOverChoiceLeft, Backward) => {
            let (a, b) = f.as_bool_or()?;
            let (t1, t3) = a.as_or()?;
            let (t2, t3b) = b.as_or()?;
            (t3 == t3b).then(|| t1.bool_or(t2).or(t3))
        }
        (Law::SplitOverChoiceRight, Forward) => {
            let TeamFormula::Or(l, r) = f else { return None };
            let (t2, t3) = r.as_bool_or()?;
            Some((**l).clone().or(t2.clone()).bool_or((**l).clone().or(t3.clone())))
        }
        (Law::SplitOverChoiceRight, Backward) => {
            let (a, b) = f.as_bool_or()?;
            let (t1, t2) = a.as_or()?;
            let (t1b, t3) = b.as_or()?;
            (t1 == t1b).then(|| t1.or(t2.bool_or(t3)))
        }
        (Law::ExistsOverChoice, Forward) => {
            let (x, body) = f.as_exists()?;
            let (t1, t2) = body.as_bool_or()?;
            Some(TeamFormula::exists(x.clone(), t1.clone()).bool_or(TeamFormula::exists(x, t2.clone())))
        }
        (Law::ExistsOverChoice, Backward) => {
            let (a, b) = f.as_bool_or()?;
            let (x, t1) = a.as_exists()?;
            let (y, t2) = b.as_exists()?;
            (x == y).then(|| TeamFormula::exists(x, t1.bool_or(t2)))
        }
        (Law::ExistsOverSplit, Forward) => {
            let (x, body) = f.as_exists()?;
            let (t1, t2) = body.as_or()?;
            Some(TeamFormula::exists(x.clone(), t1).or(TeamFormula::exists(x, t2)))
        }
        (Law::ExistsOverSplit, Backward) => {
            let (a, b) = f.as_or()?;
            let (x, t1) = a.as_exists()?;
            let (y, t2) = b.as_exists()?;
            (x == y).then(|| TeamFormula::exists(x, t1.or(t2)))
        }
        (Law::ExistsOverWitness, Forward) => {
            let (x, body) = f.as_exists()?;
            let (alpha, beta) = base_with_witness(&body)?;
            Some(
                TeamFormula::Fo(FoFormula::exists(x.clone(), alpha.clone()))
                    .and(nonempty(FoFormula::exists(x, alpha.clone().and(beta.clone())))),
            )
        }
        (Law::ExistsOverWitness, Backward) => {
            let (l, r) = base_with_witness(f)?;
            let FoFormula::Exists(x, alpha) = l else { return None };
            let FoFormula::Exists(y, joint) = r else { return None };
            let FoFormula::And(alpha2, beta) = joint.as_ref() else { return None };
            (x == y && alpha == alpha2).then(|| {
                TeamFormula::exists(x.clone(), TeamFormula::Fo((**alpha).clone()).and(nonempty((**beta).clone())))
            })
        }
        (Law::ForallOverAnd, Forward) => {
            let (x, body) = f.as_forall()?;
            let (t1, t2) = body.as_and()?;
            Some(TeamFormula::forall(x.clone(), t1).and(TeamFormula::forall(x, t2)))
        }
        (Law::ForallOverAnd, Backward) => {
            let (a, b) = f.as_and()?;
            let (x, t1) = a.as_forall()?;
            let (y, t2) = b.as_forall()?;
            (x == y).then(|| TeamFormula::forall(x, t1.and(t2)))
        }
        (Law::ForallOverTilde, Forward) => {
            let (x, body) = f.as_forall()?;
            let TeamFormula::Tilde(inner) = body else { return None };
            Some(TeamFormula::forall(x, *inner).tilde())
        }
        (Law::ForallOverTilde, Backward) => {
            let TeamFormula::Tilde(inner) = f else { return None };
            let (x, body) = inner.as_forall()?;
            Some(TeamFormula::forall(x, body.tilde()))
        }
    }
}
