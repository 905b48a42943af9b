use std::collections::HashMap;

use crate::structures::{KripkeStructure, WorldSet};
use crate::syntax::{props, MtlFormula};

use super::fo::eval_ml;
use super::{Budget, EvalError, EvalOptions, Stats};

/// Team-semantics model checker for modal team formulas.
pub struct MtlEvaluator<'a> {
    k: &'a KripkeStructure,
    budget: Budget,
    options: EvalOptions,
    stats: Stats,
    memo: HashMap<(usize, WorldSet), bool>,
}

fn key(f: &MtlFormula) -> usize {
    f as *const MtlFormula as usize
}

impl<'a> MtlEvaluator<'a> {
    pub fn new(k: &'a KripkeStructure) -> Self {
        MtlEvaluator {
            k,
            budget: Budget::default(),
            options: EvalOptions::default(),
            stats: Stats::default(),
            memo: HashMap::new(),
        }
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

    /// `(K, T) ⊨ φ`.
    pub fn eval(&mut self, f: &MtlFormula, t: WorldSet) -> Result<bool, EvalError> {
        if let Some(p) = props(f).into_iter().find(|p| self.k.valuation(p).is_none()) {
            return Err(EvalError::UnknownSymbol(p));
        }
        if !t.is_subset(self.k.all_worlds()) {
            return Err(EvalError::ResourceExhausted("team outside the set of worlds".into()));
        }
        self.memo.clear();
        self.node(f, t)
    }

    fn node(&mut self, f: &MtlFormula, t: WorldSet) -> Result<bool, EvalError> {
        self.stats.nodes += 1;
        if self.stats.nodes > self.budget.max_nodes {
            return Err(EvalError::ResourceExhausted(format!(
                "more than {} evaluation steps",
                self.budget.max_nodes
            )));
        }
        if self.options.memo {
            if let Some(&r) = self.memo.get(&(key(f), t)) {
                self.stats.memo_hits += 1;
                return Ok(r);
            }
        }
        let r = self.clause(f, t)?;
        if self.options.memo {
            self.memo.insert((key(f), t), r);
        }
        Ok(r)
    }

    fn clause(&mut self, f: &MtlFormula, t: WorldSet) -> Result<bool, EvalError> {
        match f {
            MtlFormula::Ml(alpha) => {
                for w in t.iter() {
                    if !eval_ml(self.k, w, alpha)? {
                        return Ok(false);
                    }
                }
                Ok(true)
            }
            MtlFormula::Tilde(g) => Ok(!self.node(g, t)?),
            MtlFormula::And(g, h) => Ok(self.node(g, t)? && self.node(h, t)?),
            MtlFormula::Or(g, h) => self.split(g, h, t),
            MtlFormula::Necessarily(g) => self.node(g, self.k.image(t)),
            MtlFormula::Possibly(g) => {
                let image = self.k.image(t).len() as u32;
                if 1u64.checked_shl(image).is_none_or(|c| c > self.budget.max_candidates) {
                    return Err(EvalError::ResourceExhausted(format!(
                        "2^{image} candidate successor teams"
                    )));
                }
                let succ: Vec<WorldSet> = self
                    .k
                    .successor_teams(t, self.budget.max_successor_image)
                    .map_err(|e| EvalError::ResourceExhausted(e.to_string()))?
                    .collect();
                for s in succ {
                    self.stats.supplements += 1;
                    if self.node(g, s)? {
                        return Ok(true);
                    }
                }
                Ok(false)
            }
        }
    }

    fn split(&mut self, g: &MtlFormula, h: &MtlFormula, t: WorldSet) -> Result<bool, EvalError> {
        let worlds: Vec<usize> = t.iter().collect();
        let n = worlds.len();
        if 3u64.checked_pow(n as u32).is_none_or(|c| c > self.budget.max_candidates) {
            return Err(EvalError::ResourceExhausted(format!("3^{n} covers of a split disjunction")));
        }
        let pick = |mask: u64| -> WorldSet {
            worlds.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, &w)| w).collect()
        };
        let all = (1u64 << n) - 1;
        if !self.options.prune_splits {
            for code in 0..3u64.pow(n as u32) {
                self.stats.splits += 1;
                let (mut s, mut u, mut c) = (0u64, 0u64, code);
                for i in (0..n).rev() {
                    match c % 3 {
                        0 => s |= 1 << i,
                        1 => u |= 1 << i,
                        _ => {
                            s |= 1 << i;
                            u |= 1 << i;
                        }
                    }
                    c /= 3;
                }
                if self.node(g, pick(s))? && self.node(h, pick(u))? {
                    return Ok(true);
                }
            }
            return Ok(false);
        }
        for u_mask in 0..=all {
            self.stats.splits += 1;
            if !self.node(h, pick(u_mask))? {
                continue;
            }
            let rest = all & !u_mask;
            let mut v = 0u64;
            loop {
                self.stats.splits += 1;
                if self.node(g, pick(rest | v))? {
                    return Ok(true);
                }
                if v == u_mask {
                    break;
                }
                v = v.wrapping_sub(u_mask) & u_mask;
            }
        }
        Ok(false)
    }
}

/// `(K, T) ⊨ φ` with default options.
pub fn eval_mtl(k: &KripkeStructure, t: WorldSet, f: &MtlFormula, budget: &Budget) -> Result<bool, EvalError> {
    MtlEvaluator::new(k).with_budget(*budget).eval(f, t)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::MlFormula;

    fn k() -> KripkeStructure {
        KripkeStructure::new(2).unwrap().with_edges(&[(0, 1)]).unwrap().with_valuation("p", &[1]).unwrap()
    }

    #[test]
    fn modalities() {
        let b = Budget::default();
        let t0: WorldSet = [0].into_iter().collect();
        let p = MtlFormula::prop("p");
        assert!(eval_mtl(&k(), t0, &p.clone().possibly(), &b).unwrap());
        assert!(eval_mtl(&k(), t0, &p.clone().necessarily(), &b).unwrap());
        assert!(!eval_mtl(&k(), WorldSet::empty(), &p.clone().tilde(), &b).unwrap());
        assert!(!eval_mtl(&k(), t0, &p, &b).unwrap());
    }

    #[test]
    fn team_level_diamond_differs_from_box() {
        let k = KripkeStructure::new(3)
            .unwrap()
            .with_edges(&[(0, 1), (0, 2)])
            .unwrap()
            .with_valuation("p", &[1])
            .unwrap();
        let t0: WorldSet = [0].into_iter().collect();
        let b = Budget::default();
        let p = MtlFormula::prop("p");
        assert!(eval_mtl(&k, t0, &p.clone().possibly(), &b).unwrap());
        assert!(!eval_mtl(&k, t0, &p.clone().necessarily(), &b).unwrap());
        let both = MtlFormula::nonempty(MlFormula::prop("p")).and(MtlFormula::nonempty(MlFormula::prop("p").not()));
        assert!(eval_mtl(&k, t0, &both.clone().necessarily(), &b).unwrap());
        assert!(!eval_mtl(&k, t0, &both.possibly().tilde(), &b).unwrap());
    }

    #[test]
    fn unknown_proposition() {
        let f = MtlFormula::prop("q");
        assert_eq!(
            eval_mtl(&k(), WorldSet::empty(), &f, &Budget::default()),
            Err(EvalError::UnknownSymbol("q".into()))
        );
    }
}
