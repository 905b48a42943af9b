//! Bounded satisfiability and validity search.
//!
//! Every `Sat` witness is re-checked with the team evaluator before it is
//! returned. Negative answers are always relative to a domain bound.

use std::sync::atomic::{AtomicBool, AtomicU64, Ordering};

use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::evaluator::{eval_fo, Budget, EvalError, TeamEvaluator};
use crate::normal_form::{build_gamma, dnf_expand, DnfError, GammaError};
use crate::structures::{all_tuples, Assignment, Relation, Structure, Team};
use crate::syntax::{all_vars, free_vars, width, DependencyRegistry, FoFormula, TeamFormula, Vocabulary};

#[derive(Clone, Debug, Error, PartialEq, Eq)]
pub enum SolverError {
    #[error("function symbols are not supported by the bounded search")]
    Functions,
    #[error("two-variable search needs variables among x and y, found `{0}`")]
    Variables(String),
    #[error("two-variable search does not support dependency atoms")]
    Dependency,
    #[error(transparent)]
    Dnf(#[from] DnfError),
    #[error(transparent)]
    Gamma(#[from] GammaError),
    #[error("witness failed re-verification: {0}")]
    WitnessRejected(String),
    #[error(transparent)]
    Eval(EvalError),
}

/// Result of a bounded satisfiability search.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SatResult {
    Sat { structure: Structure, team: Team },
    /// No model with at most this many elements.
    UnsatUpTo(usize),
    ResourceExhausted,
}

/// Result of a bounded validity search.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ValidResult {
    /// No counterexample with at most this many elements.
    ValidUpTo(usize),
    Counterexample { structure: Structure, team: Team },
    Unknown,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct SolverStats {
    /// Candidate structures visited.
    pub structures: u64,
    /// Model-checking calls.
    pub checks: u64,
    /// Disjuncts of the normal form (two-variable search only).
    pub disjuncts: u64,
}

#[derive(Clone, Debug)]
pub struct SolverOptions {
    /// Largest domain size searched.
    pub max_domain: usize,
    /// Limit for each model-checking call.
    pub eval_budget: Budget,
    /// Limit on the total number of model-checking calls.
    pub max_checks: u64,
    /// Limit on the size of the normal form.
    pub dnf_budget: usize,
    pub jobs: usize,
    pub registry: DependencyRegistry,
}

impl Default for SolverOptions {
    fn default() -> Self {
        SolverOptions {
            max_domain: 3,
            eval_budget: Budget::with_nodes(1 << 22),
            max_checks: 1 << 24,
            dnf_budget: 1 << 16,
            jobs: 1,
            registry: DependencyRegistry::builtin(),
        }
    }
}

impl SolverOptions {
    pub fn with_max_domain(mut self, n: usize) -> Self {
        self.max_domain = n;
        self
    }

    pub fn with_jobs(mut self, jobs: usize) -> Self {
        self.jobs = jobs.max(1);
        self
    }

    pub fn with_registry(mut self, registry: DependencyRegistry) -> Self {
        self.registry = registry;
        self
    }
}

/// All structures over the predicates of `vocab` on `n` elements, indexed
/// by a binary counter over the cells.
struct StructureSpace {
    n: usize,
    predicates: Vec<(String, usize)>,
    cells: usize,
}

impl StructureSpace {
    fn new(vocab: &Vocabulary, n: usize) -> Option<Self> {
        let predicates: Vec<(String, usize)> = vocab.predicates().map(|(p, a)| (p.to_string(), a)).collect();
        let mut cells = 0usize;
        for (_, a) in &predicates {
            cells = cells.checked_add(n.checked_pow(*a as u32)?)?;
        }
        (cells < 40).then_some(StructureSpace { n, predicates, cells })
    }

    fn count(&self) -> u64 {
        1u64 << self.cells
    }

    fn get(&self, index: u64) -> Structure {
        let mut a = Structure::new(self.n);
        let mut bit = 0;
        for (p, ar) in &self.predicates {
            let mut r = Relation::empty(self.n, *ar).expect("counted");
            for i in 0..r.universe_size() {
                r.set_index(i, index >> bit & 1 == 1);
                bit += 1;
            }
            a.add_relation(p, r).expect("distinct names");
        }
        a
    }
}

/// Teams over `vars` on `n` elements: nonempty ones by increasing bit mask,
/// then the empty team.
fn teams(vars: &[String], n: usize) -> Option<impl Iterator<Item = Team> + '_> {
    let rows: Vec<Vec<usize>> = all_tuples(n, vars.len()).collect();
    if rows.len() >= 24 {
        return None;
    }
    let m = rows.len();
    Some((1u64..1 << m).chain([0]).map(move |mask| {
        Team::from_rows(vars, (0..m).filter(|i| mask >> i & 1 == 1).map(|i| rows[i].clone())).expect("rows fit")
    }))
}

fn pool(jobs: usize) -> rayon::ThreadPool {
    rayon::ThreadPoolBuilder::new().num_threads(jobs.max(1)).build().expect("thread pool")
}

fn reject_functions(vocab: &Vocabulary) -> Result<(), SolverError> {
    if vocab.is_relational() {
        Ok(())
    } else {
        Err(SolverError::Functions)
    }
}

struct Search<'a> {
    options: &'a SolverOptions,
    checks: AtomicU64,
    structures: AtomicU64,
    exhausted: AtomicBool,
}

impl<'a> Search<'a> {
    fn new(options: &'a SolverOptions) -> Self {
        Search { options, checks: AtomicU64::new(0), structures: AtomicU64::new(0), exhausted: AtomicBool::new(false) }
    }

    fn take_check(&self) -> bool {
        if self.checks.fetch_add(1, Ordering::Relaxed) >= self.options.max_checks {
            self.exhausted.store(true, Ordering::Relaxed);
            return false;
        }
        true
    }

    fn check(&self, a: &Structure, t: &Team, f: &TeamFormula) -> Result<Option<bool>, SolverError> {
        if !self.take_check() {
            return Ok(None);
        }
        let mut ev = TeamEvaluator::new(a).with_registry(&self.options.registry).with_budget(self.options.eval_budget);
        match ev.eval(f, t) {
            Ok(v) => Ok(Some(v)),
            Err(e) if e.is_resource() => {
                self.exhausted.store(true, Ordering::Relaxed);
                Ok(None)
            }
            Err(e) => Err(SolverError::Eval(e)),
        }
    }

    fn stats(&self, disjuncts: u64) -> SolverStats {
        SolverStats {
            structures: self.structures.load(Ordering::Relaxed),
            checks: self.checks.load(Ordering::Relaxed).min(self.options.max_checks),
            disjuncts,
        }
    }
}

/// Searches all structures with `1..=max_domain` elements and all teams
/// over the free variables of `f`.
pub fn sat_bounded(
    f: &TeamFormula,
    vocab: &Vocabulary,
    options: &SolverOptions,
) -> Result<(SatResult, SolverStats), SolverError> {
    reject_functions(vocab)?;
    let vars: Vec<String> = free_vars(f).into_iter().collect();
    let search = Search::new(options);
    let pool = pool(options.jobs);
    for n in 1..=options.max_domain {
        let Some(space) = StructureSpace::new(vocab, n) else {
            return Ok((SatResult::ResourceExhausted, search.stats(0)));
        };
        if teams(&vars, n).is_none() {
            return Ok((SatResult::ResourceExhausted, search.stats(0)));
        }
        let found = pool.install(|| {
            (0..space.count()).into_par_iter().map(|i| -> Result<Option<(Structure, Team)>, SolverError> {
                if search.exhausted.load(Ordering::Relaxed) {
                    return Ok(None);
                }
                search.structures.fetch_add(1, Ordering::Relaxed);
                let a = space.get(i);
                for t in teams(&vars, n).expect("checked") {
                    match search.check(&a, &t, f)? {
                        Some(true) => return Ok(Some((a, t))),
                        Some(false) => {}
                        None => return Ok(None),
                    }
                }
                Ok(None)
            })
            .find_map_first(|r| match r {
                Ok(None) => None,
                other => Some(other),
            })
        });
        match found {
            Some(Err(e)) => return Err(e),
            Some(Ok(Some((a, t)))) => {
                verify(&a, &t, f, options, true)?;
                return Ok((SatResult::Sat { structure: a, team: t }, search.stats(0)));
            }
            _ => {}
        }
        if search.exhausted.load(Ordering::Relaxed) {
            return Ok((SatResult::ResourceExhausted, search.stats(0)));
        }
    }
    Ok((SatResult::UnsatUpTo(options.max_domain), search.stats(0)))
}

fn verify(a: &Structure, t: &Team, f: &TeamFormula, options: &SolverOptions, expected: bool) -> Result<(), SolverError> {
    let mut ev = TeamEvaluator::new(a).with_registry(&options.registry).with_budget(Budget::unlimited());
    match ev.eval(f, t) {
        Ok(v) if v == expected => Ok(()),
        Ok(_) => Err(SolverError::WitnessRejected(format!("{f} on {t:?}"))),
        Err(e) => Err(SolverError::Eval(e)),
    }
}

/// Smallest structure (by domain size, then binary counter) classically
/// satisfying the sentence `gamma`.
fn classical_model(
    gamma: &FoFormula,
    vocab: &Vocabulary,
    search: &Search<'_>,
    pool: &rayon::ThreadPool,
) -> Result<Option<Structure>, SolverError> {
    for n in 1..=search.options.max_domain {
        let Some(space) = StructureSpace::new(vocab, n) else {
            search.exhausted.store(true, Ordering::Relaxed);
            return Ok(None);
        };
        let found = pool.install(|| {
            (0..space.count())
                .into_par_iter()
                .map(|i| -> Result<Option<Structure>, SolverError> {
                    if !search.take_check() {
                        return Ok(None);
                    }
                    search.structures.fetch_add(1, Ordering::Relaxed);
                    let a = space.get(i);
                    match eval_fo(&a, &Assignment::new(), gamma) {
                        Ok(true) => Ok(Some(a)),
                        Ok(false) => Ok(None),
                        Err(e) => Err(SolverError::Eval(e)),
                    }
                })
                .find_map_first(|r| match r {
                    Ok(None) => None,
                    other => Some(other),
                })
        });
        match found {
            Some(Err(e)) => return Err(e),
            Some(Ok(model)) => return Ok(model),
            None if search.exhausted.load(Ordering::Relaxed) => return Ok(None),
            None => {}
        }
    }
    Ok(None)
}

/// Satisfiability for two-variable formulas without dependency atoms: each
/// disjunct of the normal form is satisfiable exactly when its classical
/// sentence `⋀ ∃x∃y (α ∧ βᵢ)` is, and the team is read off from one
/// witnessing assignment per `βᵢ`.
pub fn sat_fo2(
    f: &TeamFormula,
    vocab: &Vocabulary,
    options: &SolverOptions,
) -> Result<(SatResult, SolverStats), SolverError> {
    reject_functions(vocab)?;
    if f.has_dependency_atoms() {
        return Err(SolverError::Dependency);
    }
    if width(f) > 2 {
        let v = all_vars(f).into_iter().find(|v| v != "x" && v != "y").unwrap_or_default();
        return Err(SolverError::Variables(v));
    }
    if let Some(v) = all_vars(f).into_iter().find(|v| v != "x" && v != "y") {
        return Err(SolverError::Variables(v));
    }
    let dnf = dnf_expand(f, options.dnf_budget)?;
    let search = Search::new(options);
    let pool = pool(options.jobs);
    let free: Vec<String> = free_vars(f).into_iter().collect();
    let disjuncts = dnf.disjuncts.len() as u64;
    for d in &dnf.disjuncts {
        let gamma = build_gamma(d)?;
        let Some(b) = classical_model(&gamma, vocab, &search, &pool)? else {
            if search.exhausted.load(Ordering::Relaxed) {
                return Ok((SatResult::ResourceExhausted, search.stats(disjuncts)));
            }
            continue;
        };
        let mut team = Team::empty(free.iter().cloned());
        for beta in &d.witnesses {
            let joint = d.base.clone().and(beta.clone());
            let s = all_tuples(b.domain_size(), 2)
                .map(|p| Assignment::from_pairs([("x", p[0]), ("y", p[1])]))
                .find(|s| eval_fo(&b, s, &joint).unwrap_or(false))
                .ok_or_else(|| SolverError::WitnessRejected(format!("no assignment for {joint}")))?;
            let row: Vec<usize> = free.iter().map(|v| s.get(v).expect("x or y")).collect();
            team.insert_row(row).expect("row width");
        }
        verify(&b, &team, f, options, true)?;
        return Ok((SatResult::Sat { structure: b, team }, search.stats(disjuncts)));
    }
    Ok((SatResult::UnsatUpTo(options.max_domain), search.stats(disjuncts)))
}

/// Which satisfiability search [`valid_bounded`] runs on `∼φ`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Method {
    #[default]
    Generic,
    TwoVariable,
}

/// `φ` is valid exactly when `∼φ` is unsatisfiable.
pub fn valid_bounded(
    f: &TeamFormula,
    vocab: &Vocabulary,
    options: &SolverOptions,
    method: Method,
) -> Result<(ValidResult, SolverStats), SolverError> {
    let negated = f.clone().tilde();
    let (r, stats) = match method {
        Method::Generic => sat_bounded(&negated, vocab, options)?,
        Method::TwoVariable => sat_fo2(&negated, vocab, options)?,
    };
    Ok((
        match r {
            SatResult::Sat { structure, team } => {
                verify(&structure, &team, f, options, false)?;
                ValidResult::Counterexample { structure, team }
            }
            SatResult::UnsatUpTo(n) => ValidResult::ValidUpTo(n),
            SatResult::ResourceExhausted => ValidResult::Unknown,
        },
        stats,
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::parse_team;

    fn vocab(preds: &[(&str, usize)]) -> Vocabulary {
        preds.iter().fold(Vocabulary::new(), |v, (p, a)| v.with_predicate(p, *a).unwrap())
    }

    fn team(s: &str, v: &Vocabulary) -> TeamFormula {
        parse_team(s, v, &DependencyRegistry::builtin()).unwrap()
    }

    #[test]
    fn tilde_of_identity_is_unsatisfiable() {
        let v = vocab(&[]);
        let opts = SolverOptions::default().with_max_domain(2);
        let (r, _) = sat_bounded(&team("~(x = x)", &v), &v, &opts).unwrap();
        assert_eq!(r, SatResult::UnsatUpTo(2));
        let (r, _) = sat_fo2(&team("~(x = x)", &v), &v, &opts).unwrap();
        assert_eq!(r, SatResult::UnsatUpTo(2));
    }

    #[test]
    fn both_polarities_need_two_rows() {
        let v = vocab(&[("P", 1)]);
        let f = team("NE P(x) & NE (!P(x))", &v);
        let (r, _) = sat_bounded(&f, &v, &SolverOptions::default()).unwrap();
        let SatResult::Sat { structure, team: t } = r else { panic!("{r:?}") };
        assert_eq!(structure.domain_size(), 2);
        assert_eq!(t.len(), 2);
        let (r, _) = sat_fo2(&f, &v, &SolverOptions::default()).unwrap();
        assert!(matches!(r, SatResult::Sat { .. }));
    }

    #[test]
    fn top_is_satisfied_by_the_unit_team() {
        let v = vocab(&[]);
        let (r, _) = sat_bounded(&team("top", &v), &v, &SolverOptions::default()).unwrap();
        assert_eq!(r, SatResult::Sat { structure: Structure::new(1), team: Team::unit() });
    }

    #[test]
    fn validity() {
        let v = vocab(&[("P", 1)]);
        let opts = SolverOptions::default().with_max_domain(2);
        let (r, _) = valid_bounded(&team("x = x", &v), &v, &opts, Method::Generic).unwrap();
        assert_eq!(r, ValidResult::ValidUpTo(2));
        let (r, _) = valid_bounded(&team("P(x)", &v), &v, &opts, Method::Generic).unwrap();
        let ValidResult::Counterexample { structure, team: t } = r else { panic!("{r:?}") };
        assert_eq!(structure.domain_size(), 1);
        assert!(structure.relation("P").unwrap().is_empty());
        assert_eq!(t, Team::from_rows(&["x"], [[0]]).unwrap());
        let (r, _) = valid_bounded(&team("~bot", &v), &v, &opts, Method::TwoVariable).unwrap();
        assert!(matches!(r, ValidResult::Counterexample { .. }), "{r:?}");
    }

    #[test]
    fn rejections() {
        let v = vocab(&[("P", 1)]).with_function("f", 1).unwrap();
        assert_eq!(sat_bounded(&team("P(x)", &v), &v, &SolverOptions::default()), Err(SolverError::Functions));
        let v = vocab(&[("P", 1)]);
        assert!(matches!(
            sat_fo2(&team("E z. P(z)", &v), &v, &SolverOptions::default()),
            Err(SolverError::Variables(_))
        ));
        assert_eq!(sat_fo2(&team("dep(x)", &v), &v, &SolverOptions::default()), Err(SolverError::Dependency));
    }

    #[test]
    fn parallel_search_is_deterministic() {
        let v = vocab(&[("P", 1), ("R", 2)]);
        let f = team("NE R(x,y) & A y. (P(y) | ~R(x,y))", &v);
        let one = sat_bounded(&f, &v, &SolverOptions::default().with_jobs(1)).unwrap().0;
        let four = sat_bounded(&f, &v, &SolverOptions::default().with_jobs(4)).unwrap().0;
        assert_eq!(one, four);
    }
}
