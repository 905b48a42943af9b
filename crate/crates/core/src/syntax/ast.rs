//! Abstract syntax for the four formula languages.
//!
//! Team formulas and MTL formulas keep their classical subformulas in
//! dedicated leaves (`TeamFormula::Fo`, `MtlFormula::Ml`). The smart
//! constructors (`and`, `or`, `exists`, ...) merge classical operands into a
//! single leaf, so every formula built through them is *canonical*: each
//! maximal classical subtree sits in exactly one leaf. The parser only
//! produces canonical formulas.

use std::fmt;

/// First-order term: a variable or a function application.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Term {
    Var(String),
    App(String, Vec<Term>),
}

impl Term {
    pub fn var(name: impl Into<String>) -> Self {
        Term::Var(name.into())
    }

    pub fn app(name: impl Into<String>, args: Vec<Term>) -> Self {
        Term::App(name.into(), args)
    }

    pub fn constant(name: impl Into<String>) -> Self {
        Term::App(name.into(), Vec::new())
    }

    pub fn vars(terms: &[&str]) -> Vec<Term> {
        terms.iter().map(|v| Term::var(*v)).collect()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Quantifier {
    Exists,
    Forall,
}

impl Quantifier {
    pub fn dual(self) -> Self {
        match self {
            Quantifier::Exists => Quantifier::Forall,
            Quantifier::Forall => Quantifier::Exists,
        }
    }
}

/// Classical first-order formula (Tarski semantics).
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum FoFormula {
    True,
    False,
    Pred(String, Vec<Term>),
    Eq(Term, Term),
    Not(Box<FoFormula>),
    And(Box<FoFormula>, Box<FoFormula>),
    Or(Box<FoFormula>, Box<FoFormula>),
    Exists(String, Box<FoFormula>),
    Forall(String, Box<FoFormula>),
}

impl FoFormula {
    pub fn pred(name: impl Into<String>, args: Vec<Term>) -> Self {
        FoFormula::Pred(name.into(), args)
    }

    pub fn eq(l: Term, r: Term) -> Self {
        FoFormula::Eq(l, r)
    }

    #[allow(clippy::should_implement_trait)]
    pub fn not(self) -> Self {
        FoFormula::Not(Box::new(self))
    }

    pub fn and(self, other: FoFormula) -> Self {
        FoFormula::And(Box::new(self), Box::new(other))
    }

    pub fn or(self, other: FoFormula) -> Self {
        FoFormula::Or(Box::new(self), Box::new(other))
    }

    /// `self → other`, written as `¬self ∨ other`.
    pub fn implies(self, other: FoFormula) -> Self {
        self.not().or(other)
    }

    pub fn exists(var: impl Into<String>, body: FoFormula) -> Self {
        FoFormula::Exists(var.into(), Box::new(body))
    }

    pub fn forall(var: impl Into<String>, body: FoFormula) -> Self {
        FoFormula::Forall(var.into(), Box::new(body))
    }

    /// Left-nested conjunction; `True` for an empty iterator.
    pub fn conjunction(parts: impl IntoIterator<Item = FoFormula>) -> Self {
        parts.into_iter().reduce(FoFormula::and).unwrap_or(FoFormula::True)
    }

    /// Left-nested disjunction; `False` for an empty iterator.
    pub fn disjunction(parts: impl IntoIterator<Item = FoFormula>) -> Self {
        parts.into_iter().reduce(FoFormula::or).unwrap_or(FoFormula::False)
    }

    /// `t̄ = ū` as a conjunction of equalities.
    pub fn tuple_eq(left: &[Term], right: &[Term]) -> Self {
        FoFormula::conjunction(
            left.iter().zip(right).map(|(l, r)| FoFormula::Eq(l.clone(), r.clone())),
        )
    }

    pub fn exists_all(vars: &[String], body: FoFormula) -> Self {
        vars.iter().rev().fold(body, |acc, v| FoFormula::exists(v.clone(), acc))
    }

    pub fn forall_all(vars: &[String], body: FoFormula) -> Self {
        vars.iter().rev().fold(body, |acc, v| FoFormula::forall(v.clone(), acc))
    }
}

/// A generalized dependency atom `A_i(t̄)`; the definition is looked up by
/// name and arity in a [`DependencyRegistry`](super::DependencyRegistry).
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DepAtom {
    pub name: String,
    pub args: Vec<Term>,
}

/// Formula of FO(∼,D).
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum TeamFormula {
    Fo(FoFormula),
    Dep(DepAtom),
    Tilde(Box<TeamFormula>),
    And(Box<TeamFormula>, Box<TeamFormula>),
    Or(Box<TeamFormula>, Box<TeamFormula>),
    Exists(String, Box<TeamFormula>),
    Forall(String, Box<TeamFormula>),
}

impl From<FoFormula> for TeamFormula {
    fn from(f: FoFormula) -> Self {
        TeamFormula::Fo(f)
    }
}

impl TeamFormula {
    pub fn fo(f: FoFormula) -> Self {
        TeamFormula::Fo(f)
    }

    pub fn dep(name: impl Into<String>, args: Vec<Term>) -> Self {
        TeamFormula::Dep(DepAtom { name: name.into(), args })
    }

    /// Boolean negation `∼φ`.
    pub fn tilde(self) -> Self {
        TeamFormula::Tilde(Box::new(self))
    }

    pub fn and(self, other: TeamFormula) -> Self {
        match (self, other) {
            (TeamFormula::Fo(a), TeamFormula::Fo(b)) => TeamFormula::Fo(a.and(b)),
            (a, b) => TeamFormula::And(Box::new(a), Box::new(b)),
        }
    }

    /// Split disjunction (lax team semantics).
    pub fn or(self, other: TeamFormula) -> Self {
        match (self, other) {
            (TeamFormula::Fo(a), TeamFormula::Fo(b)) => TeamFormula::Fo(a.or(b)),
            (a, b) => TeamFormula::Or(Box::new(a), Box::new(b)),
        }
    }

    pub fn exists(var: impl Into<String>, body: TeamFormula) -> Self {
        match body {
            TeamFormula::Fo(b) => TeamFormula::Fo(FoFormula::exists(var, b)),
            b => TeamFormula::Exists(var.into(), Box::new(b)),
        }
    }

    pub fn forall(var: impl Into<String>, body: TeamFormula) -> Self {
        match body {
            TeamFormula::Fo(b) => TeamFormula::Fo(FoFormula::forall(var, b)),
            b => TeamFormula::Forall(var.into(), Box::new(b)),
        }
    }

    /// `Eβ := ∼¬β`: some assignment of the team satisfies `β`.
    pub fn nonempty(beta: FoFormula) -> Self {
        TeamFormula::Fo(beta.not()).tilde()
    }

    /// Boolean disjunction `φ ⩔ ψ := ∼(∼φ ∧ ∼ψ)`.
    pub fn bool_or(self, other: TeamFormula) -> Self {
        self.tilde().and(other.tilde()).tilde()
    }

    /// `α ↪ φ := ¬α ∨ (α ∧ φ)`.
    pub fn hook(alpha: FoFormula, phi: TeamFormula) -> Self {
        TeamFormula::Fo(alpha.clone().not()).or(TeamFormula::Fo(alpha).and(phi))
    }

    pub fn conjunction(parts: impl IntoIterator<Item = TeamFormula>) -> Self {
        parts
            .into_iter()
            .reduce(TeamFormula::and)
            .unwrap_or(TeamFormula::Fo(FoFormula::True))
    }

    pub fn split_disjunction(parts: impl IntoIterator<Item = TeamFormula>) -> Self {
        parts
            .into_iter()
            .reduce(TeamFormula::or)
            .unwrap_or(TeamFormula::Fo(FoFormula::False))
    }

    pub fn bool_disjunction(parts: impl IntoIterator<Item = TeamFormula>) -> Self {
        parts
            .into_iter()
            .reduce(TeamFormula::bool_or)
            .unwrap_or(TeamFormula::Fo(FoFormula::True).tilde())
    }

    pub fn as_fo(&self) -> Option<&FoFormula> {
        match self {
            TeamFormula::Fo(f) => Some(f),
            _ => None,
        }
    }

    /// The `β` of an `Eβ` subformula.
    pub fn as_nonempty(&self) -> Option<&FoFormula> {
        match self {
            TeamFormula::Tilde(inner) => match inner.as_ref() {
                TeamFormula::Fo(FoFormula::Not(beta)) => Some(beta),
                _ => None,
            },
            _ => None,
        }
    }

    /// Operands of `φ ⩔ ψ`.
    pub fn as_bool_or(&self) -> Option<(&TeamFormula, &TeamFormula)> {
        match self {
            TeamFormula::Tilde(inner) => match inner.as_ref() {
                TeamFormula::And(l, r) => match (l.as_ref(), r.as_ref()) {
                    (TeamFormula::Tilde(a), TeamFormula::Tilde(b)) => Some((a, b)),
                    _ => None,
                },
                _ => None,
            },
            _ => None,
        }
    }

    /// Conjunction view that also looks inside first-order leaves.
    pub fn as_and(&self) -> Option<(TeamFormula, TeamFormula)> {
        match self {
            TeamFormula::And(a, b) => Some(((**a).clone(), (**b).clone())),
            TeamFormula::Fo(FoFormula::And(a, b)) => {
                Some((TeamFormula::Fo((**a).clone()), TeamFormula::Fo((**b).clone())))
            }
            _ => None,
        }
    }

    /// Split-disjunction view that also looks inside first-order leaves.
    pub fn as_or(&self) -> Option<(TeamFormula, TeamFormula)> {
        match self {
            TeamFormula::Or(a, b) => Some(((**a).clone(), (**b).clone())),
            TeamFormula::Fo(FoFormula::Or(a, b)) => {
                Some((TeamFormula::Fo((**a).clone()), TeamFormula::Fo((**b).clone())))
            }
            _ => None,
        }
    }

    pub fn as_exists(&self) -> Option<(String, TeamFormula)> {
        match self {
            TeamFormula::Exists(x, b) => Some((x.clone(), (**b).clone())),
            TeamFormula::Fo(FoFormula::Exists(x, b)) => {
                Some((x.clone(), TeamFormula::Fo((**b).clone())))
            }
            _ => None,
        }
    }

    pub fn as_forall(&self) -> Option<(String, TeamFormula)> {
        match self {
            TeamFormula::Forall(x, b) => Some((x.clone(), (**b).clone())),
            TeamFormula::Fo(FoFormula::Forall(x, b)) => {
                Some((x.clone(), TeamFormula::Fo((**b).clone())))
            }
            _ => None,
        }
    }

    /// True when the formula contains no `∼` and no dependency atom.
    pub fn is_first_order(&self) -> bool {
        match self {
            TeamFormula::Fo(_) => true,
            TeamFormula::Dep(_) | TeamFormula::Tilde(_) => false,
            TeamFormula::And(a, b) | TeamFormula::Or(a, b) => {
                a.is_first_order() && b.is_first_order()
            }
            TeamFormula::Exists(_, b) | TeamFormula::Forall(_, b) => b.is_first_order(),
        }
    }

    /// Converts a first-order team formula into a plain FO formula.
    pub fn to_fo(&self) -> Option<FoFormula> {
        match self {
            TeamFormula::Fo(f) => Some(f.clone()),
            TeamFormula::Dep(_) | TeamFormula::Tilde(_) => None,
            TeamFormula::And(a, b) => Some(a.to_fo()?.and(b.to_fo()?)),
            TeamFormula::Or(a, b) => Some(a.to_fo()?.or(b.to_fo()?)),
            TeamFormula::Exists(x, b) => Some(FoFormula::exists(x.clone(), b.to_fo()?)),
            TeamFormula::Forall(x, b) => Some(FoFormula::forall(x.clone(), b.to_fo()?)),
        }
    }

    pub fn has_dependency_atoms(&self) -> bool {
        match self {
            TeamFormula::Fo(_) => false,
            TeamFormula::Dep(_) => true,
            TeamFormula::Tilde(a) | TeamFormula::Exists(_, a) | TeamFormula::Forall(_, a) => {
                a.has_dependency_atoms()
            }
            TeamFormula::And(a, b) | TeamFormula::Or(a, b) => {
                a.has_dependency_atoms() || b.has_dependency_atoms()
            }
        }
    }

    /// Every maximal first-order subtree sits in a single `Fo` leaf.
    pub fn is_canonical(&self) -> bool {
        match self {
            TeamFormula::Fo(_) | TeamFormula::Dep(_) => true,
            TeamFormula::Tilde(a) => a.is_canonical(),
            TeamFormula::And(a, b) | TeamFormula::Or(a, b) => {
                a.is_canonical() && b.is_canonical() && !(a.is_first_order() && b.is_first_order())
            }
            TeamFormula::Exists(_, b) | TeamFormula::Forall(_, b) => {
                b.is_canonical() && !b.is_first_order()
            }
        }
    }

    pub fn canonicalize(&self) -> TeamFormula {
        match self {
            TeamFormula::Fo(_) | TeamFormula::Dep(_) => self.clone(),
            TeamFormula::Tilde(a) => a.canonicalize().tilde(),
            TeamFormula::And(a, b) => a.canonicalize().and(b.canonicalize()),
            TeamFormula::Or(a, b) => a.canonicalize().or(b.canonicalize()),
            TeamFormula::Exists(x, b) => TeamFormula::exists(x.clone(), b.canonicalize()),
            TeamFormula::Forall(x, b) => TeamFormula::forall(x.clone(), b.canonicalize()),
        }
    }
}

/// Classical modal formula.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum MlFormula {
    True,
    False,
    Prop(String),
    Not(Box<MlFormula>),
    And(Box<MlFormula>, Box<MlFormula>),
    Or(Box<MlFormula>, Box<MlFormula>),
    Necessarily(Box<MlFormula>),
    Possibly(Box<MlFormula>),
}

impl MlFormula {
    pub fn prop(name: impl Into<String>) -> Self {
        MlFormula::Prop(name.into())
    }

    #[allow(clippy::should_implement_trait)]
    pub fn not(self) -> Self {
        MlFormula::Not(Box::new(self))
    }

    pub fn and(self, other: MlFormula) -> Self {
        MlFormula::And(Box::new(self), Box::new(other))
    }

    pub fn or(self, other: MlFormula) -> Self {
        MlFormula::Or(Box::new(self), Box::new(other))
    }

    pub fn necessarily(self) -> Self {
        MlFormula::Necessarily(Box::new(self))
    }

    pub fn possibly(self) -> Self {
        MlFormula::Possibly(Box::new(self))
    }
}

/// Formula of modal team logic.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum MtlFormula {
    Ml(MlFormula),
    Tilde(Box<MtlFormula>),
    And(Box<MtlFormula>, Box<MtlFormula>),
    Or(Box<MtlFormula>, Box<MtlFormula>),
    Necessarily(Box<MtlFormula>),
    Possibly(Box<MtlFormula>),
}

impl From<MlFormula> for MtlFormula {
    fn from(f: MlFormula) -> Self {
        MtlFormula::Ml(f)
    }
}

impl MtlFormula {
    pub fn prop(name: impl Into<String>) -> Self {
        MtlFormula::Ml(MlFormula::prop(name))
    }

    pub fn tilde(self) -> Self {
        MtlFormula::Tilde(Box::new(self))
    }

    pub fn and(self, other: MtlFormula) -> Self {
        match (self, other) {
            (MtlFormula::Ml(a), MtlFormula::Ml(b)) => MtlFormula::Ml(a.and(b)),
            (a, b) => MtlFormula::And(Box::new(a), Box::new(b)),
        }
    }

    pub fn or(self, other: MtlFormula) -> Self {
        match (self, other) {
            (MtlFormula::Ml(a), MtlFormula::Ml(b)) => MtlFormula::Ml(a.or(b)),
            (a, b) => MtlFormula::Or(Box::new(a), Box::new(b)),
        }
    }

    pub fn necessarily(self) -> Self {
        match self {
            MtlFormula::Ml(a) => MtlFormula::Ml(a.necessarily()),
            a => MtlFormula::Necessarily(Box::new(a)),
        }
    }

    pub fn possibly(self) -> Self {
        match self {
            MtlFormula::Ml(a) => MtlFormula::Ml(a.possibly()),
            a => MtlFormula::Possibly(Box::new(a)),
        }
    }

    /// `NE α := ∼¬α`.
    pub fn nonempty(alpha: MlFormula) -> Self {
        MtlFormula::Ml(alpha.not()).tilde()
    }

    pub fn bool_or(self, other: MtlFormula) -> Self {
        self.tilde().and(other.tilde()).tilde()
    }

    pub fn is_classical(&self) -> bool {
        match self {
            MtlFormula::Ml(_) => true,
            MtlFormula::Tilde(_) => false,
            MtlFormula::And(a, b) | MtlFormula::Or(a, b) => a.is_classical() && b.is_classical(),
            MtlFormula::Necessarily(a) | MtlFormula::Possibly(a) => a.is_classical(),
        }
    }

    pub fn canonicalize(&self) -> MtlFormula {
        match self {
            MtlFormula::Ml(_) => self.clone(),
            MtlFormula::Tilde(a) => a.canonicalize().tilde(),
            MtlFormula::And(a, b) => a.canonicalize().and(b.canonicalize()),
            MtlFormula::Or(a, b) => a.canonicalize().or(b.canonicalize()),
            MtlFormula::Necessarily(a) => a.canonicalize().necessarily(),
            MtlFormula::Possibly(a) => a.canonicalize().possibly(),
        }
    }
}

/// Size bound `p` of a sparse second-order quantifier, evaluated on the
/// domain size of the structure.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum SparseBound {
    /// `p(n) = c₀ + c₁·n + c₂·n² + …` (non-negative coefficients, hence monotone).
    Poly(Vec<u64>),
    /// `p(n) = team_size · n^exponent`.
    TeamScaled { team_size: u64, exponent: u32 },
}

impl SparseBound {
    /// `p(n) = n^k`.
    pub fn power(k: u32) -> Self {
        let mut coeffs = vec![0; k as usize + 1];
        coeffs[k as usize] = 1;
        SparseBound::Poly(coeffs)
    }

    pub fn zero() -> Self {
        SparseBound::Poly(vec![0])
    }

    pub fn eval(&self, n: usize) -> u64 {
        let n = n as u64;
        match self {
            SparseBound::Poly(coeffs) => coeffs.iter().rev().fold(0u64, |acc, &c| {
                acc.saturating_mul(n).saturating_add(c)
            }),
            SparseBound::TeamScaled { team_size, exponent } => {
                team_size.saturating_mul(n.saturating_pow(*exponent))
            }
        }
    }
}

impl fmt::Display for SparseBound {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SparseBound::Poly(coeffs) => {
                let parts: Vec<String> = coeffs.iter().map(|c| c.to_string()).collect();
                write!(f, "poly:{}", parts.join(","))
            }
            SparseBound::TeamScaled { team_size, exponent } => {
                write!(f, "team:{team_size},{exponent}")
            }
        }
    }
}

/// Second-order formula. Atoms name either a vocabulary predicate or a
/// relation variable; a bound or assigned relation variable shadows a
/// predicate of the same name. The same holds for function symbols in terms.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum SoFormula {
    True,
    False,
    Atom(String, Vec<Term>),
    Eq(Term, Term),
    Not(Box<SoFormula>),
    And(Box<SoFormula>, Box<SoFormula>),
    Or(Box<SoFormula>, Box<SoFormula>),
    Implies(Box<SoFormula>, Box<SoFormula>),
    Iff(Box<SoFormula>, Box<SoFormula>),
    Elem(Quantifier, String, Box<SoFormula>),
    /// Relation quantifier; `Some(p)` makes it sparse (`∃^p` / `∀^p`).
    Rel(Quantifier, String, usize, Option<SparseBound>, Box<SoFormula>),
    Fun(Quantifier, String, usize, Box<SoFormula>),
}

impl SoFormula {
    pub fn atom(name: impl Into<String>, args: Vec<Term>) -> Self {
        SoFormula::Atom(name.into(), args)
    }

    #[allow(clippy::should_implement_trait)]
    pub fn not(self) -> Self {
        SoFormula::Not(Box::new(self))
    }

    pub fn and(self, other: SoFormula) -> Self {
        SoFormula::And(Box::new(self), Box::new(other))
    }

    pub fn or(self, other: SoFormula) -> Self {
        SoFormula::Or(Box::new(self), Box::new(other))
    }

    pub fn implies(self, other: SoFormula) -> Self {
        SoFormula::Implies(Box::new(self), Box::new(other))
    }

    pub fn iff(self, other: SoFormula) -> Self {
        SoFormula::Iff(Box::new(self), Box::new(other))
    }

    pub fn exists(var: impl Into<String>, body: SoFormula) -> Self {
        SoFormula::Elem(Quantifier::Exists, var.into(), Box::new(body))
    }

    pub fn forall(var: impl Into<String>, body: SoFormula) -> Self {
        SoFormula::Elem(Quantifier::Forall, var.into(), Box::new(body))
    }

    pub fn exists_all(vars: &[String], body: SoFormula) -> Self {
        vars.iter().rev().fold(body, |acc, v| SoFormula::exists(v.clone(), acc))
    }

    pub fn forall_all(vars: &[String], body: SoFormula) -> Self {
        vars.iter().rev().fold(body, |acc, v| SoFormula::forall(v.clone(), acc))
    }

    pub fn exists_rel(name: impl Into<String>, arity: usize, body: SoFormula) -> Self {
        SoFormula::Rel(Quantifier::Exists, name.into(), arity, None, Box::new(body))
    }

    pub fn forall_rel(name: impl Into<String>, arity: usize, body: SoFormula) -> Self {
        SoFormula::Rel(Quantifier::Forall, name.into(), arity, None, Box::new(body))
    }

    pub fn conjunction(parts: impl IntoIterator<Item = SoFormula>) -> Self {
        parts.into_iter().reduce(SoFormula::and).unwrap_or(SoFormula::True)
    }

    /// Embeds a first-order formula, renaming predicate `from` to `to` if given.
    pub fn from_fo(f: &FoFormula) -> Self {
        Self::from_fo_renamed(f, None)
    }

    pub fn from_fo_renamed(f: &FoFormula, rename: Option<(&str, &str)>) -> Self {
        let go = |g: &FoFormula| Self::from_fo_renamed(g, rename);
        match f {
            FoFormula::True => SoFormula::True,
            FoFormula::False => SoFormula::False,
            FoFormula::Pred(p, args) => {
                let name = match rename {
                    Some((from, to)) if from == p => to.to_string(),
                    _ => p.clone(),
                };
                SoFormula::Atom(name, args.clone())
            }
            FoFormula::Eq(l, r) => SoFormula::Eq(l.clone(), r.clone()),
            FoFormula::Not(a) => go(a).not(),
            FoFormula::And(a, b) => go(a).and(go(b)),
            FoFormula::Or(a, b) => go(a).or(go(b)),
            FoFormula::Exists(x, a) => SoFormula::exists(x.clone(), go(a)),
            FoFormula::Forall(x, a) => SoFormula::forall(x.clone(), go(a)),
        }
    }
}

/// The four formula languages understood by the parser.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Language {
    Fo,
    Team,
    Mtl,
    So,
}

impl std::str::FromStr for Language {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "fo" => Ok(Language::Fo),
            "team" => Ok(Language::Team),
            "mtl" => Ok(Language::Mtl),
            "so" => Ok(Language::So),
            other => Err(format!("unknown language `{other}` (expected fo|team|mtl|so)")),
        }
    }
}

/// A parsed formula of any of the four languages.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Formula {
    Fo(FoFormula),
    Team(TeamFormula),
    Mtl(MtlFormula),
    So(SoFormula),
}

impl Formula {
    pub fn language(&self) -> Language {
        match self {
            Formula::Fo(_) => Language::Fo,
            Formula::Team(_) => Language::Team,
            Formula::Mtl(_) => Language::Mtl,
            Formula::So(_) => Language::So,
        }
    }
}
