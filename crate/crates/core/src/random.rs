//! Seeded generators for formulas, structures, teams and Kripke structures.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::structures::{all_tuples, KripkeStructure, Relation, Structure, Team};
use crate::syntax::{FoFormula, MlFormula, MtlFormula, TeamFormula, Term};

pub type Rand = ChaCha8Rng;

pub fn rng(seed: u64) -> Rand {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Building blocks for generated first-order and team formulas.
#[derive(Clone, Debug)]
pub struct Shape {
    /// Variables used as free and bound variables.
    pub vars: Vec<String>,
    pub predicates: Vec<(String, usize)>,
    pub equality: bool,
    pub quantifiers: bool,
    /// Generate `dep` and `inc` atoms.
    pub dependencies: bool,
    /// Generate Boolean negation `∼`.
    pub tilde: bool,
}

impl Shape {
    pub fn new(vars: &[&str], predicates: &[(&str, usize)]) -> Self {
        Shape {
            vars: vars.iter().map(|v| v.to_string()).collect(),
            predicates: predicates.iter().map(|(p, a)| (p.to_string(), *a)).collect(),
            equality: true,
            quantifiers: true,
            dependencies: true,
            tilde: true,
        }
    }

    pub fn without_dependencies(mut self) -> Self {
        self.dependencies = false;
        self
    }

    pub fn without_quantifiers(mut self) -> Self {
        self.quantifiers = false;
        self
    }

    fn var(&self, rng: &mut Rand) -> String {
        self.vars.choose(rng).expect("shape has variables").clone()
    }

    fn terms(&self, rng: &mut Rand, n: usize) -> Vec<Term> {
        (0..n).map(|_| Term::var(self.var(rng))).collect()
    }
}

fn split(rng: &mut Rand, size: usize) -> (usize, usize) {
    let left = rng.gen_range(1..size - 1);
    (left, size - 1 - left)
}

/// An atom: a predicate, an equality, `⊤` or `⊥`.
pub fn fo_atom(rng: &mut Rand, shape: &Shape) -> FoFormula {
    let choices = shape.predicates.len() + usize::from(shape.equality) * 2 + 1;
    let k = rng.gen_range(0..choices);
    if k < shape.predicates.len() {
        let (p, ar) = &shape.predicates[k];
        FoFormula::pred(p.clone(), shape.terms(rng, *ar))
    } else if k < choices - 1 {
        FoFormula::eq(Term::var(shape.var(rng)), Term::var(shape.var(rng)))
    } else if rng.gen_bool(0.5) {
        FoFormula::True
    } else {
        FoFormula::False
    }
}

/// A first-order formula with exactly `size` nodes.
pub fn fo_formula(rng: &mut Rand, size: usize, shape: &Shape) -> FoFormula {
    if size <= 1 {
        return fo_atom(rng, shape);
    }
    let unary = size == 2 || rng.gen_bool(0.4);
    if unary {
        let body = fo_formula(rng, size - 1, shape);
        return match rng.gen_range(0..if shape.quantifiers { 3 } else { 1 }) {
            0 => body.not(),
            1 => FoFormula::exists(shape.var(rng), body),
            _ => FoFormula::forall(shape.var(rng), body),
        };
    }
    let (l, r) = split(rng, size);
    let (a, b) = (fo_formula(rng, l, shape), fo_formula(rng, r, shape));
    if rng.gen_bool(0.5) {
        a.and(b)
    } else {
        a.or(b)
    }
}

fn dependency_atom(rng: &mut Rand, shape: &Shape) -> TeamFormula {
    if rng.gen_bool(0.6) {
        let n = rng.gen_range(1..=2.min(shape.vars.len()) + 1);
        TeamFormula::dep("dep", shape.terms(rng, n))
    } else {
        let k = rng.gen_range(1..=2);
        TeamFormula::dep("inc", shape.terms(rng, 2 * k))
    }
}

/// A team formula with exactly `size` nodes (as counted by
/// [`crate::syntax::size`]).
pub fn team_formula(rng: &mut Rand, size: usize, shape: &Shape) -> TeamFormula {
    if size <= 1 {
        return if shape.dependencies && rng.gen_bool(0.35) {
            dependency_atom(rng, shape)
        } else {
            TeamFormula::fo(fo_atom(rng, shape))
        };
    }
    if rng.gen_bool(0.15) {
        return TeamFormula::fo(fo_formula(rng, size, shape));
    }
    let unary = size == 2 || rng.gen_bool(0.4);
    if unary {
        let mut ops = vec![0u8];
        if shape.tilde {
            ops.push(1);
        }
        if shape.quantifiers {
            ops.extend([2, 3]);
        }
        return match *ops.choose(rng).expect("nonempty") {
            0 => TeamFormula::fo(fo_formula(rng, size, shape)),
            1 => team_formula(rng, size - 1, shape).tilde(),
            2 => TeamFormula::exists(shape.var(rng), team_formula(rng, size - 1, shape)),
            _ => TeamFormula::forall(shape.var(rng), team_formula(rng, size - 1, shape)),
        };
    }
    let (l, r) = split(rng, size);
    let (a, b) = (team_formula(rng, l, shape), team_formula(rng, r, shape));
    if rng.gen_bool(0.5) {
        a.and(b)
    } else {
        a.or(b)
    }
}

/// A structure on `n` elements interpreting each predicate with density ½.
pub fn structure(rng: &mut Rand, n: usize, predicates: &[(String, usize)]) -> Structure {
    let mut a = Structure::new(n);
    for (p, ar) in predicates {
        let mut r = Relation::empty(n, *ar).expect("small relation");
        for t in all_tuples(n, *ar) {
            if rng.gen_bool(0.5) {
                r.insert(&t).expect("tuple in range");
            }
        }
        a.add_relation(p, r).expect("fresh name");
    }
    a
}

/// A team over `vars` with at most `max_rows` rows (possibly empty).
pub fn team(rng: &mut Rand, vars: &[String], n: usize, max_rows: usize) -> Team {
    let rows = rng.gen_range(0..=max_rows);
    let mut t = Team::empty(vars.iter().cloned());
    for _ in 0..rows {
        let row: Vec<usize> = t.vars().iter().map(|_| rng.gen_range(0..n)).collect();
        t.insert_row(row).expect("row of the right width");
    }
    t
}

/// A classical modal formula with exactly `size` nodes and modal depth at
/// most `depth`.
pub fn ml_formula(rng: &mut Rand, size: usize, props: &[String], depth: usize) -> MlFormula {
    if size <= 1 {
        return match rng.gen_range(0..props.len() + 1) {
            k if k < props.len() => MlFormula::prop(props[k].clone()),
            _ if rng.gen_bool(0.5) => MlFormula::True,
            _ => MlFormula::False,
        };
    }
    if size == 2 || rng.gen_bool(0.4) {
        let ops = if depth > 0 { 3 } else { 1 };
        return match rng.gen_range(0..ops) {
            0 => ml_formula(rng, size - 1, props, depth).not(),
            1 => ml_formula(rng, size - 1, props, depth - 1).possibly(),
            _ => ml_formula(rng, size - 1, props, depth - 1).necessarily(),
        };
    }
    let (l, r) = split(rng, size);
    let (a, b) = (ml_formula(rng, l, props, depth), ml_formula(rng, r, props, depth));
    if rng.gen_bool(0.5) {
        a.and(b)
    } else {
        a.or(b)
    }
}

/// A modal team formula with exactly `size` nodes and modal depth at most
/// `depth`.
pub fn mtl_formula(rng: &mut Rand, size: usize, props: &[String], depth: usize) -> MtlFormula {
    if size <= 1 || rng.gen_bool(0.15) {
        return MtlFormula::Ml(ml_formula(rng, size, props, depth));
    }
    if size == 2 || rng.gen_bool(0.4) {
        let ops = if depth > 0 { 3 } else { 1 };
        return match rng.gen_range(0..ops) {
            0 => mtl_formula(rng, size - 1, props, depth).tilde(),
            1 => mtl_formula(rng, size - 1, props, depth - 1).possibly(),
            _ => mtl_formula(rng, size - 1, props, depth - 1).necessarily(),
        };
    }
    let (l, r) = split(rng, size);
    let (a, b) = (mtl_formula(rng, l, props, depth), mtl_formula(rng, r, props, depth));
    if rng.gen_bool(0.5) {
        a.and(b)
    } else {
        a.or(b)
    }
}

/// A Kripke structure on `worlds` worlds with edge density ½ and a random
/// valuation of `props`.
pub fn kripke(rng: &mut Rand, worlds: usize, props: &[String]) -> KripkeStructure {
    let mut k = KripkeStructure::new(worlds).expect("few worlds");
    for a in 0..worlds {
        for b in 0..worlds {
            if rng.gen_bool(0.5) {
                k.add_edge(a, b).expect("worlds in range");
            }
        }
    }
    for p in props {
        let set = (0..worlds).filter(|_| rng.gen_bool(0.5)).collect();
        k.set_valuation(p, set).expect("worlds in range");
    }
    k
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::{fo_size, ml_size, modal_depth, mtl_size, size};

    #[test]
    fn sizes_are_exact() {
        let mut r = rng(7);
        let shape = Shape::new(&["x", "y"], &[("P", 1), ("R", 2)]);
        for s in 1..10 {
            assert_eq!(fo_size(&fo_formula(&mut r, s, &shape)), s);
            assert_eq!(size(&team_formula(&mut r, s, &shape)), s);
            let props = vec!["p".to_string(), "q".to_string()];
            assert_eq!(ml_size(&ml_formula(&mut r, s, &props, 2)), s);
            let m = mtl_formula(&mut r, s, &props, 2);
            assert_eq!(mtl_size(&m), s);
            assert!(modal_depth(&m) <= 2);
        }
    }

    #[test]
    fn seeds_are_reproducible() {
        let shape = Shape::new(&["x"], &[("P", 1)]);
        let a = team_formula(&mut rng(3), 6, &shape);
        let b = team_formula(&mut rng(3), 6, &shape);
        assert_eq!(a, b);
    }
}
