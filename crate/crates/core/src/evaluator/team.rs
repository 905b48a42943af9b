use std::collections::{BTreeSet, HashMap};

use crate::structures::{Relation, Structure, Team};
use crate::syntax::{free_vars, DependencyRegistry, DepAtom, FoFormula, TeamFormula, DEPENDENCY_PREDICATE};
use crate::syntax::DependencyError;

use super::fo::{holds, Env};
use super::{Budget, EvalError, EvalOptions, Stats};

/// Team-semantics model checker for one structure.
pub struct TeamEvaluator<'a> {
    a: &'a Structure,
    registry: DependencyRegistry,
    budget: Budget,
    options: EvalOptions,
    stats: Stats,
    memo: HashMap<(usize, Team), bool>,
    free: HashMap<usize, Vec<String>>,
    definitions: HashMap<(String, usize), FoFormula>,
}

fn key(f: &TeamFormula) -> usize {
    f as *const TeamFormula as usize
}

impl<'a> TeamEvaluator<'a> {
    pub fn new(a: &'a Structure) -> Self {
        TeamEvaluator {
            a,
            registry: DependencyRegistry::builtin(),
            budget: Budget::default(),
            options: EvalOptions::default(),
            stats: Stats::default(),
            memo: HashMap::new(),
            free: HashMap::new(),
            definitions: HashMap::new(),
        }
    }

    pub fn with_registry(mut self, registry: &DependencyRegistry) -> Self {
        self.registry = registry.clone();
        self
    }

    pub fn with_budget(mut self, budget: Budget) -> Self {
        self.budget = budget;
        self
    }

    pub fn with_options(mut self, options: EvalOptions) -> Self {
        self.options = options;
        self
    }

    pub fn stats(&self) -> Stats {
        self.stats
    }

    /// `(A, T) ⊨ φ`. The team domain must contain `Fr(φ)`.
    pub fn eval(&mut self, f: &TeamFormula, t: &Team) -> Result<bool, EvalError> {
        if let Some(v) = free_vars(f).into_iter().find(|v| !t.has_var(v)) {
            return Err(EvalError::MissingVariable(v));
        }
        self.memo.clear();
        self.free.clear();
        self.node(f, t)
    }

    /// `(A, T) ⊨ α ↪ φ`, evaluated as `(A, T_α) ⊨ φ`.
    pub fn eval_hook(&mut self, alpha: &FoFormula, f: &TeamFormula, t: &Team) -> Result<bool, EvalError> {
        let hooked = TeamFormula::Fo(alpha.clone()).and(f.clone());
        if let Some(v) = free_vars(&hooked).into_iter().find(|v| !t.has_var(v)) {
            return Err(EvalError::MissingVariable(v));
        }
        let sub = self.filter(alpha, t)?;
        self.eval(f, &sub)
    }

    fn filter(&self, alpha: &FoFormula, t: &Team) -> Result<Team, EvalError> {
        let mut rows = BTreeSet::new();
        for row in t.rows() {
            if self.row_holds(alpha, t, row)? {
                rows.insert(row.clone());
            }
        }
        Ok(t.with_rows(rows))
    }

    fn row_holds(&self, alpha: &FoFormula, t: &Team, row: &[usize]) -> Result<bool, EvalError> {
        let base = |v: &str| t.column(v).map(|c| row[c]);
        holds(self.a, alpha, &mut Env::new(&base))
    }

    fn tick(&mut self) -> Result<(), EvalError> {
        self.stats.nodes += 1;
        if self.stats.nodes > self.budget.max_nodes {
            return Err(EvalError::ResourceExhausted(format!(
                "more than {} evaluation steps",
                self.budget.max_nodes
            )));
        }
        Ok(())
    }

    fn node(&mut self, f: &TeamFormula, t: &Team) -> Result<bool, EvalError> {
        self.tick()?;
        let local;
        let t = if self.options.localize {
            let vars = self.free.entry(key(f)).or_insert_with(|| free_vars(f).into_iter().collect());
            if vars.len() < t.vars().len() {
                local = t.restrict(vars)?;
                &local
            } else {
                t
            }
        } else {
            t
        };
        if self.options.memo {
            if let Some(&r) = self.memo.get(&(key(f), t.clone())) {
                self.stats.memo_hits += 1;
                return Ok(r);
            }
        }
        let r = self.clause(f, t)?;
        if self.options.memo {
            self.memo.insert((key(f), t.clone()), r);
        }
        Ok(r)
    }

    fn clause(&mut self, f: &TeamFormula, t: &Team) -> Result<bool, EvalError> {
        match f {
            TeamFormula::Fo(alpha) => {
                for row in t.rows() {
                    if !self.row_holds(alpha, t, row)? {
                        return Ok(false);
                    }
                }
                Ok(true)
            }
            TeamFormula::Dep(d) => self.dependency(d, t),
            TeamFormula::Tilde(g) => Ok(!self.node(g, t)?),
            TeamFormula::And(g, h) => Ok(self.node(g, t)? && self.node(h, t)?),
            TeamFormula::Or(g, h) => {
                if self.options.prune_splits {
                    if let Some((alpha, body)) = hook_parts(g, h) {
                        let sub = self.filter(alpha, t)?;
                        return self.node(body, &sub);
                    }
                    self.split_pruned(g, h, t)
                } else {
                    self.split_plain(g, h, t)
                }
            }
            TeamFormula::Exists(x, g) => self.exists(x, g, t),
            TeamFormula::Forall(x, g) => {
                let dup = t.duplicate(x, self.a.domain_size());
                self.node(g, &dup)
            }
        }
    }

    fn dependency(&mut self, d: &DepAtom, t: &Team) -> Result<bool, EvalError> {
        let k = d.args.len();
        let cache_key = (d.name.clone(), k);
        if !self.definitions.contains_key(&cache_key) {
            let sig = self.registry.resolve(&d.name, k).map_err(|e| match e {
                DependencyError::Unknown(n) => EvalError::UnknownDependency(n),
                DependencyError::Arity { .. } => EvalError::UnknownDependency(e.to_string()),
            })?;
            self.definitions.insert(cache_key.clone(), sig.definition);
        }
        let image = t.image(&d.args, self.a).map_err(|e| match e {
            crate::structures::StructureError::NotInDomain(v) => EvalError::MissingVariable(v),
            other => EvalError::Structure(other),
        })?;
        let mut b = Structure::new(self.a.domain_size());
        b.add_relation(DEPENDENCY_PREDICATE, Relation::from_tuples(self.a.domain_size(), k, &image)?)?;
        let base = |_: &str| None;
        holds(&b, &self.definitions[&cache_key], &mut Env::new(&base))
    }

    /// Every cover `T = S ∪ U` as a ternary assignment of rows to
    /// S-only / U-only / both, in lexicographic order.
    fn split_plain(&mut self, g: &TeamFormula, h: &TeamFormula, t: &Team) -> Result<bool, EvalError> {
        let rows: Vec<&Vec<usize>> = t.rows().iter().collect();
        let n = rows.len();
        let total = 3u64.checked_pow(n as u32).filter(|&c| c <= self.budget.max_candidates);
        let Some(total) = total else {
            return Err(EvalError::ResourceExhausted(format!("3^{n} covers of a split disjunction")));
        };
        for code in 0..total {
            self.stats.splits += 1;
            let (mut s, mut u) = (BTreeSet::new(), BTreeSet::new());
            let mut c = code;
            for row in rows.iter().rev() {
                match c % 3 {
                    0 => {
                        s.insert((*row).clone());
                    }
                    1 => {
                        u.insert((*row).clone());
                    }
                    _ => {
                        s.insert((*row).clone());
                        u.insert((*row).clone());
                    }
                }
                c /= 3;
            }
            if self.node(g, &t.with_rows(s))? && self.node(h, &t.with_rows(u))? {
                return Ok(true);
            }
        }
        Ok(false)
    }

    /// Chooses `U ⊆ T` first; only when `U` satisfies the right disjunct are
    /// the sets `S = (T∖U) ∪ V`, `V ⊆ U`, tried.
    fn split_pruned(&mut self, g: &TeamFormula, h: &TeamFormula, t: &Team) -> Result<bool, EvalError> {
        let rows: Vec<&Vec<usize>> = t.rows().iter().collect();
        let n = rows.len();
        if n >= 40 || 3u64.pow(n as u32) > self.budget.max_candidates {
            return Err(EvalError::ResourceExhausted(format!("3^{n} covers of a split disjunction")));
        }
        let pick = |mask: u64| -> BTreeSet<Vec<usize>> {
            rows.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, r)| (*r).clone()).collect()
        };
        let all = (1u64 << n) - 1;
        for u_mask in 0..=all {
            self.stats.splits += 1;
            if !self.node(h, &t.with_rows(pick(u_mask)))? {
                continue;
            }
            let rest = all & !u_mask;
            let mut v = 0u64;
            loop {
                self.stats.splits += 1;
                if self.node(g, &t.with_rows(pick(rest | v)))? {
                    return Ok(true);
                }
                if v == u_mask {
                    break;
                }
                v = (v.wrapping_sub(u_mask)) & u_mask;
            }
        }
        Ok(false)
    }

    /// Every supplementing function `f : T → P(A)∖{∅}` as a mixed-radix
    /// counter over rows, each digit a nonempty subset of the domain.
    fn exists(&mut self, x: &str, g: &TeamFormula, t: &Team) -> Result<bool, EvalError> {
        let n = self.a.domain_size();
        let rows: Vec<&Vec<usize>> = t.rows().iter().collect();
        if n == 0 {
            return Ok(rows.is_empty() && self.node(g, &t.duplicate(x, 0))?);
        }
        if n >= 63 {
            return Err(EvalError::ResourceExhausted(format!("domain of size {n}")));
        }
        let radix = (1u64 << n) - 1;
        let total = (0..rows.len()).try_fold(1u64, |acc, _| acc.checked_mul(radix));
        let total = total.filter(|&c| c <= self.budget.max_candidates).ok_or_else(|| {
            EvalError::ResourceExhausted(format!("({radix})^{} supplementing functions", rows.len()))
        })?;
        let at = t.vars().iter().position(|v| v.as_str() >= x).unwrap_or(t.vars().len());
        let present = t.vars().get(at).is_some_and(|v| v == x);
        let template = t.duplicate(x, 0);
        let mut digits = vec![1u64; rows.len()];
        for _ in 0..total {
            self.stats.supplements += 1;
            let mut out = BTreeSet::new();
            for (row, &mask) in rows.iter().zip(&digits) {
                for a in 0..n {
                    if mask >> a & 1 == 1 {
                        out.insert(crate::structures::team::extend_row(row, at, present, a));
                    }
                }
            }
            if self.node(g, &template.with_rows(out))? {
                return Ok(true);
            }
            for d in digits.iter_mut().rev() {
                if *d < radix {
                    *d += 1;
                    break;
                }
                *d = 1;
            }
        }
        Ok(false)
    }
}

/// Recognizes `¬α ∨ (α ∧ φ)`.
fn hook_parts<'f>(g: &'f TeamFormula, h: &'f TeamFormula) -> Option<(&'f FoFormula, &'f TeamFormula)> {
    let TeamFormula::Fo(FoFormula::Not(neg)) = g else {
        return None;
    };
    let TeamFormula::And(l, body) = h else {
        return None;
    };
    match l.as_ref() {
        TeamFormula::Fo(alpha) if alpha == neg.as_ref() => Some((alpha, body)),
        _ => None,
    }
}

/// `(A, T) ⊨ φ` with the built-in dependencies and default options.
pub fn eval_team(a: &Structure, t: &Team, f: &TeamFormula, budget: &Budget) -> Result<bool, EvalError> {
    TeamEvaluator::new(a).with_budget(*budget).eval(f, t)
}

/// `(A, T) ⊨ α ↪ φ`, i.e. `(A, T_α) ⊨ φ`.
pub fn eval_hook(
    a: &Structure,
    t: &Team,
    alpha: &FoFormula,
    f: &TeamFormula,
    budget: &Budget,
) -> Result<bool, EvalError> {
    TeamEvaluator::new(a).with_budget(*budget).eval_hook(alpha, f, t)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::Term;

    fn xy(rows: &[[usize; 2]]) -> Team {
        Team::from_rows(&["x", "y"], rows).unwrap()
    }

    fn dep_xy() -> TeamFormula {
        TeamFormula::dep("dep", Term::vars(&["x", "y"]))
    }

    #[test]
    fn dependence_atom() {
        let a = Structure::new(2);
        let b = Budget::default();
        assert!(!eval_team(&a, &xy(&[[0, 0], [0, 1]]), &dep_xy(), &b).unwrap());
        assert!(eval_team(&a, &xy(&[]), &dep_xy(), &b).unwrap());
        assert!(eval_team(&a, &xy(&[[0, 1], [1, 1]]), &dep_xy(), &b).unwrap());
    }

    #[test]
    fn tilde_on_empty_team() {
        let a = Structure::new(2);
        let xx = FoFormula::eq(Term::var("x"), Term::var("x"));
        let f = TeamFormula::Fo(xx).tilde();
        assert!(!eval_team(&a, &Team::empty(["x"]), &f, &Budget::default()).unwrap());
    }

    #[test]
    fn plain_split_visits_every_cover() {
        let a = Structure::new(2);
        let t = xy(&[[0, 0], [0, 1], [1, 0]]);
        let f = TeamFormula::Fo(FoFormula::False).tilde().tilde().or(dep_xy());
        let mut ev = TeamEvaluator::new(&a).with_options(EvalOptions::plain());
        assert!(!ev.eval(&f, &t).unwrap());
        assert_eq!(ev.stats().splits, 27);
    }

    #[test]
    fn missing_variable_and_budget() {
        let a = Structure::new(3);
        let t = Team::from_rows(&["x"], [[0], [1], [2]]).unwrap();
        assert_eq!(
            eval_team(&a, &t, &dep_xy(), &Budget::default()),
            Err(EvalError::MissingVariable("y".into()))
        );
        let f = TeamFormula::exists("y", dep_xy().tilde());
        let tight = Budget { max_candidates: 10, ..Budget::default() };
        assert!(eval_team(&a, &t, &f, &tight).unwrap_err().is_resource());
    }

    #[test]
    fn hook_matches_filter() {
        let a = Structure::new(2).with_relation("P", 1, [[1]]).unwrap();
        let t = xy(&[[0, 0], [0, 1], [1, 0], [1, 1]]);
        let px = FoFormula::pred("P", Term::vars(&["x"]));
        let b = Budget::default();
        assert!(!eval_team(&a, &t, &dep_xy(), &b).unwrap());
        assert!(eval_hook(&a, &t, &FoFormula::False, &dep_xy(), &b).unwrap());
        assert!(!eval_hook(&a, &t, &FoFormula::True, &dep_xy(), &b).unwrap());
        assert!(!eval_hook(&a, &t, &px, &dep_xy(), &b).unwrap());
        let hooked = TeamFormula::hook(px, dep_xy());
        let mut plain = TeamEvaluator::new(&a).with_options(EvalOptions::plain());
        assert!(!plain.eval(&hooked, &t).unwrap());
    }
}
