use crate::syntax::SoFormula;

/// Replaces `→` and `↔` by `¬`, `∧`, `∨`.
pub fn desugar(f: &SoFormula) -> SoFormula {
    match f {
        SoFormula::True | SoFormula::False | SoFormula::Atom(..) | SoFormula::Eq(..) => f.clone(),
        SoFormula::Not(a) => desugar(a).not(),
        SoFormula::And(a, b) => desugar(a).and(desugar(b)),
        SoFormula::Or(a, b) => desugar(a).or(desugar(b)),
        SoFormula::Implies(a, b) => desugar(a).not().or(desugar(b)),
        SoFormula::Iff(a, b) => {
            let (a, b) = (desugar(a), desugar(b));
            a.clone().not().or(b.clone()).and(a.or(b.not()))
        }
        SoFormula::Elem(q, x, a) => SoFormula::Elem(*q, x.clone(), Box::new(desugar(a))),
        SoFormula::Rel(q, x, ar, p, a) => SoFormula::Rel(*q, x.clone(), *ar, p.clone(), Box::new(desugar(a))),
        SoFormula::Fun(q, x, ar, a) => SoFormula::Fun(*q, x.clone(), *ar, Box::new(desugar(a))),
    }
}

/// Negation normal form: negations only in front of atoms and equalities.
pub fn to_nnf(f: &SoFormula) -> SoFormula {
    push(&desugar(f), false)
}

fn push(f: &SoFormula, negate: bool) -> SoFormula {
    match f {
        SoFormula::True => if negate { SoFormula::False } else { SoFormula::True },
        SoFormula::False => if negate { SoFormula::True } else { SoFormula::False },
        SoFormula::Atom(..) | SoFormula::Eq(..) => {
            if negate {
                f.clone().not()
            } else {
                f.clone()
            }
        }
        SoFormula::Not(a) => push(a, !negate),
        SoFormula::And(a, b) if negate => push(a, true).or(push(b, true)),
        SoFormula::Or(a, b) if negate => push(a, true).and(push(b, true)),
        SoFormula::And(a, b) => push(a, false).and(push(b, false)),
        SoFormula::Or(a, b) => push(a, false).or(push(b, false)),
        SoFormula::Implies(..) | SoFormula::Iff(..) => push(&desugar(f), negate),
        SoFormula::Elem(q, x, a) => {
            let q = if negate { q.dual() } else { *q };
            SoFormula::Elem(q, x.clone(), Box::new(push(a, negate)))
        }
        SoFormula::Rel(q, x, ar, p, a) => {
            let q = if negate { q.dual() } else { *q };
            SoFormula::Rel(q, x.clone(), *ar, p.clone(), Box::new(push(a, negate)))
        }
        SoFormula::Fun(q, x, ar, a) => {
            let q = if negate { q.dual() } else { *q };
            SoFormula::Fun(q, x.clone(), *ar, Box::new(push(a, negate)))
        }
    }
}

/// True when negations occur only directly above atoms and equalities and
/// no `→`/`↔` remains.
pub fn is_nnf(f: &SoFormula) -> bool {
    match f {
        SoFormula::True | SoFormula::False | SoFormula::Atom(..) | SoFormula::Eq(..) => true,
        SoFormula::Not(a) => matches!(a.as_ref(), SoFormula::Atom(..) | SoFormula::Eq(..)),
        SoFormula::And(a, b) | SoFormula::Or(a, b) => is_nnf(a) && is_nnf(b),
        SoFormula::Implies(..) | SoFormula::Iff(..) => false,
        SoFormula::Elem(_, _, a) | SoFormula::Rel(_, _, _, _, a) | SoFormula::Fun(_, _, _, a) => is_nnf(a),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::Term;

    fn at(n: &str) -> SoFormula {
        SoFormula::atom(n, vec![])
    }

    #[test]
    fn de_morgan_and_double_negation() {
        assert_eq!(to_nnf(&at("a").and(at("b")).not()), at("a").not().or(at("b").not()));
        assert_eq!(to_nnf(&at("a").not().not()), at("a"));
        let px = SoFormula::atom("P", Term::vars(&["x"]));
        assert_eq!(
            to_nnf(&SoFormula::exists("x", px.clone()).not()),
            SoFormula::forall("x", px.not())
        );
    }

    #[test]
    fn sugar_is_removed() {
        let f = at("a").iff(at("b").implies(at("c"))).not();
        let g = to_nnf(&f);
        assert!(is_nnf(&g));
        assert!(!is_nnf(&f));
    }
}
