//! Modal team logic inside first-order team logic: the standard
//! translation, first-order interpretations of Kripke structures, and the
//! reductions from propositional team logic.

use thiserror::Error;

use crate::structures::{KripkeStructure, Relation, Structure, StructureError, Team, WorldSet, MAX_WORLDS};
use crate::syntax::{modal_depth, props, FoFormula, MlFormula, MtlFormula, TeamFormula, Term};

/// Name of the accessibility relation in first-order interpretations.
pub const ACCESS: &str = "R";

#[derive(Clone, Debug, Error, PartialEq, Eq)]
pub enum BridgeError {
    #[error("formula contains modalities")]
    NotPropositional,
    #[error("structure does not interpret `{0}`")]
    Missing(String),
    #[error("`{name}` must have arity {expected}")]
    Arity { name: String, expected: usize },
    #[error("predicate `{0}` does not correspond to a proposition")]
    NotProposition(String),
    #[error("team must have exactly the variable `{0}`")]
    TeamDomain(String),
    #[error(transparent)]
    Structure(#[from] StructureError),
}

/// The two variables of the translation.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum WorldVar {
    #[default]
    X,
    Y,
}

impl WorldVar {
    pub fn name(self) -> &'static str {
        match self {
            WorldVar::X => "x",
            WorldVar::Y => "y",
        }
    }

    pub fn other(self) -> WorldVar {
        match self {
            WorldVar::X => WorldVar::Y,
            WorldVar::Y => WorldVar::X,
        }
    }
}

impl std::str::FromStr for WorldVar {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "x" => Ok(WorldVar::X),
            "y" => Ok(WorldVar::Y),
            other => Err(format!("expected `x` or `y`, found `{other}`")),
        }
    }
}

/// Predicate interpreting proposition `p`: the name with its first letter
/// upper-cased.
pub fn predicate_name(p: &str) -> String {
    let mut c = p.chars();
    match c.next() {
        Some(f) => f.to_uppercase().chain(c).collect(),
        None => String::new(),
    }
}

/// Inverse of [`predicate_name`], for names not clashing with [`ACCESS`].
pub fn proposition_name(pred: &str) -> Option<String> {
    let mut c = pred.chars();
    let f = c.next()?;
    if !f.is_uppercase() || pred == ACCESS {
        return None;
    }
    Some(f.to_lowercase().chain(c).collect())
}

fn access(v: WorldVar) -> FoFormula {
    FoFormula::pred(ACCESS, Term::vars(&[v.name(), v.other().name()]))
}

fn st_ml(f: &MlFormula, v: WorldVar) -> FoFormula {
    let w = v.other();
    match f {
        MlFormula::True => FoFormula::True,
        MlFormula::False => FoFormula::False,
        MlFormula::Prop(p) => FoFormula::pred(predicate_name(p), Term::vars(&[v.name()])),
        MlFormula::Not(a) => st_ml(a, v).not(),
        MlFormula::And(a, b) => st_ml(a, v).and(st_ml(b, v)),
        MlFormula::Or(a, b) => st_ml(a, v).or(st_ml(b, v)),
        MlFormula::Possibly(a) => FoFormula::exists(w.name(), access(v).and(st_ml(a, w))),
        MlFormula::Necessarily(a) => {
            FoFormula::forall(w.name(), access(v).not().or(access(v).and(st_ml(a, w))))
        }
    }
}

/// `st_v(φ)`. Boxes become `∀w (¬Rvw ∨ (Rvw ∧ st_w φ))`.
pub fn standard_translation(f: &MtlFormula, v: WorldVar) -> TeamFormula {
    let w = v.other();
    match f {
        MtlFormula::Ml(a) => TeamFormula::Fo(st_ml(a, v)),
        MtlFormula::Tilde(a) => standard_translation(a, v).tilde(),
        MtlFormula::And(a, b) => standard_translation(a, v).and(standard_translation(b, v)),
        MtlFormula::Or(a, b) => standard_translation(a, v).or(standard_translation(b, v)),
        MtlFormula::Possibly(a) => {
            TeamFormula::exists(w.name(), TeamFormula::Fo(access(v)).and(standard_translation(a, w)))
        }
        MtlFormula::Necessarily(a) => TeamFormula::forall(w.name(), TeamFormula::hook(access(v), standard_translation(a, w))),
    }
}

/// `A(K)`: worlds as elements, `R` as accessibility, `P` as `V(p)`.
pub fn interpret_kripke(k: &KripkeStructure) -> Structure {
    let n = k.worlds();
    let mut a = Structure::new(n);
    let edges = Relation::from_tuples(n, 2, k.edges().map(|(u, w)| vec![u, w])).expect("worlds in range");
    a.add_relation(ACCESS, edges).expect("fresh name");
    for (p, set) in k.propositions() {
        let rel = Relation::from_tuples(n, 1, set.iter().map(|w| vec![w])).expect("worlds in range");
        a.add_relation(&predicate_name(p), rel).expect("distinct propositions");
    }
    a
}

/// `T^v = { w^v | w ∈ T }`.
pub fn lift_team(t: WorldSet, v: WorldVar) -> Team {
    Team::from_rows(&[v.name()], t.iter().map(|w| vec![w])).expect("single column")
}

/// Kripke structure with team from a first-order structure interpreting
/// `R/2` and unary predicates, and a team over the single variable `v`.
pub fn reverse_interpret(b: &Structure, s: &Team, v: WorldVar) -> Result<(KripkeStructure, WorldSet), BridgeError> {
    let r = b.relation(ACCESS).ok_or_else(|| BridgeError::Missing(ACCESS.into()))?;
    if r.arity() != 2 {
        return Err(BridgeError::Arity { name: ACCESS.into(), expected: 2 });
    }
    if s.vars() != [v.name().to_string()] {
        return Err(BridgeError::TeamDomain(v.name().into()));
    }
    if b.domain_size() > MAX_WORLDS {
        return Err(StructureError::TooLarge(format!("more than {MAX_WORLDS} worlds")).into());
    }
    let mut k = KripkeStructure::new(b.domain_size())?;
    for t in r.iter() {
        k.add_edge(t[0], t[1])?;
    }
    for (name, rel) in b.relations() {
        if name == ACCESS {
            continue;
        }
        let p = proposition_name(name).ok_or_else(|| BridgeError::NotProposition(name.into()))?;
        if rel.arity() != 1 {
            return Err(BridgeError::Arity { name: name.into(), expected: 1 });
        }
        k.set_valuation(&p, rel.iter().map(|t| t[0]).collect())?;
    }
    if b.functions().next().is_some() {
        return Err(BridgeError::NotProposition("function symbols".into()));
    }
    let team = s.rows().iter().map(|row| row[0]).collect();
    Ok((k, team))
}

fn substitute(f: &MlFormula, atom: &dyn Fn(usize) -> FoFormula, index: &dyn Fn(&str) -> usize) -> FoFormula {
    match f {
        MlFormula::True => FoFormula::True,
        MlFormula::False => FoFormula::False,
        MlFormula::Prop(p) => atom(index(p)),
        MlFormula::Not(a) => substitute(a, atom, index).not(),
        MlFormula::And(a, b) => substitute(a, atom, index).and(substitute(b, atom, index)),
        MlFormula::Or(a, b) => substitute(a, atom, index).or(substitute(b, atom, index)),
        MlFormula::Possibly(_) | MlFormula::Necessarily(_) => unreachable!("checked propositional"),
    }
}

fn substitute_team(f: &MtlFormula, atom: &dyn Fn(usize) -> FoFormula, index: &dyn Fn(&str) -> usize) -> TeamFormula {
    match f {
        MtlFormula::Ml(a) => TeamFormula::Fo(substitute(a, atom, index)),
        MtlFormula::Tilde(a) => substitute_team(a, atom, index).tilde(),
        MtlFormula::And(a, b) => substitute_team(a, atom, index).and(substitute_team(b, atom, index)),
        MtlFormula::Or(a, b) => substitute_team(a, atom, index).or(substitute_team(b, atom, index)),
        MtlFormula::Possibly(_) | MtlFormula::Necessarily(_) => unreachable!("checked propositional"),
    }
}

/// Which atoms encode the propositions in [`reduce_ptl_sat_to_mc`].
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Encoding {
    /// `p_i ↦ x_i = z` under `∃z`.
    #[default]
    Equality,
    /// `p_i ↦ P(x_i)` with `P = {1}`.
    Predicate,
}

/// A model-checking instance `(A, {∅}, ψ)` over the fixed domain `{0,1}`
/// that is accepted exactly when the propositional formula `φ` is
/// satisfiable.
pub fn reduce_ptl_sat_to_mc(f: &MtlFormula, encoding: Encoding) -> Result<(Structure, Team, TeamFormula), BridgeError> {
    if modal_depth(f) > 0 {
        return Err(BridgeError::NotPropositional);
    }
    let ps: Vec<String> = props(f).into_iter().collect();
    let xs: Vec<String> = (1..=ps.len()).map(|i| format!("x{i}")).collect();
    let index = |p: &str| ps.iter().position(|q| q == p).expect("collected proposition");
    let xs_ref = &xs;
    let (a, atom): (Structure, Box<dyn Fn(usize) -> FoFormula>) = match encoding {
        Encoding::Equality => (
            Structure::new(2),
            Box::new(move |i| FoFormula::eq(Term::var(&xs_ref[i]), Term::var("z"))),
        ),
        Encoding::Predicate => (
            Structure::new(2).with_relation("P", 1, [[1]])?,
            Box::new(move |i| FoFormula::pred("P", vec![Term::var(&xs_ref[i])])),
        ),
    };
    let body = TeamFormula::Fo(FoFormula::True).or(substitute_team(f, &atom, &index));
    let spread = xs.iter().rev().fold(body, |acc, x| TeamFormula::forall(x.clone(), acc));
    let psi = match encoding {
        Encoding::Equality => TeamFormula::exists("z", spread),
        Encoding::Predicate => spread,
    };
    Ok((a, Team::unit(), psi))
}

/// `(K, T, φ) ↦ (A(K), T^x, st_x(φ))` for a propositional `φ`.
pub fn reduce_ptl_mc_to_fo_mc(
    k: &KripkeStructure,
    t: WorldSet,
    f: &MtlFormula,
) -> Result<(Structure, Team, TeamFormula), BridgeError> {
    if modal_depth(f) > 0 {
        return Err(BridgeError::NotPropositional);
    }
    Ok((interpret_kripke(k), lift_team(t, WorldVar::X), standard_translation(f, WorldVar::X)))
}
