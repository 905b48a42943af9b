#![allow(dead_code)]

use teamlogic::evaluator::{Budget, TeamEvaluator};
use teamlogic::random::{self, Rand};
use teamlogic::structures::{all_tuples, Structure, Team};
use teamlogic::syntax::{DependencyRegistry, TeamFormula};

pub fn names(vs: &[&str]) -> Vec<String> {
    vs.iter().map(|s| s.to_string()).collect()
}

pub fn preds() -> Vec<(String, usize)> {
    vec![("P".to_string(), 1), ("R".to_string(), 2)]
}

/// Every team over `vars` on an `n`-element domain.
pub fn all_teams(vars: &[String], n: usize) -> Vec<Team> {
    let rows: Vec<Vec<usize>> = all_tuples(n, vars.len()).collect();
    assert!(rows.len() < 20, "too many teams");
    (0u32..(1 << rows.len()))
        .map(|mask| {
            let picked = rows.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, r)| r.clone());
            Team::from_rows(vars, picked).unwrap()
        })
        .collect()
}

/// Structures paired with teams on which two formulas are compared.
pub fn samples(rng: &mut Rand, vars: &[String]) -> Vec<(Structure, Vec<Team>)> {
    let mut out = Vec::new();
    out.push((random::structure(rng, 1, &preds()), all_teams(vars, 1)));
    for _ in 0..2 {
        out.push((random::structure(rng, 2, &preds()), all_teams(vars, 2)));
    }
    let teams = (0..10).map(|_| random::team(rng, vars, 3, 4)).collect();
    out.push((random::structure(rng, 3, &preds()), teams));
    out
}

pub enum Compare {
    Same,
    Differ(String),
    Skipped,
}

/// Compares `f` and `g` on every sample.
pub fn compare(f: &TeamFormula, g: &TeamFormula, samples: &[(Structure, Vec<Team>)], nodes: u64) -> Compare {
    let reg = DependencyRegistry::builtin();
    for (a, teams) in samples {
        for t in teams {
            let mut ev = TeamEvaluator::new(a).with_registry(&reg).with_budget(Budget::with_nodes(nodes));
            let l = ev.eval(f, t);
            let mut ev = TeamEvaluator::new(a).with_registry(&reg).with_budget(Budget::with_nodes(nodes));
            let r = ev.eval(g, t);
            match (l, r) {
                (Ok(l), Ok(r)) if l == r => {}
                (Ok(l), Ok(r)) => return Compare::Differ(format!("{f}  vs  {g}: {l} vs {r} on team {t} (domain {})", a.domain_size())),
                (Err(e), _) | (_, Err(e)) if e.is_resource() => return Compare::Skipped,
                (Err(e), _) | (_, Err(e)) => return Compare::Differ(format!("{f}  vs  {g}: error {e}")),
            }
        }
    }
    Compare::Same
}
