//! Bounded satisfiability and validity, with both search pipelines.

use teamlogic::solver::{sat_bounded, sat_fo2, valid_bounded, Method, SatResult, SolverOptions, ValidResult};
use teamlogic::syntax::{parse_team, DependencyRegistry, Vocabulary};

fn main() {
    let registry = DependencyRegistry::builtin();
    let vocab = Vocabulary::new().with_predicate("P", 1).unwrap().with_predicate("R", 2).unwrap();
    let opts = SolverOptions::default().with_max_domain(3).with_jobs(2);
    for text in [
        "NE P(x) & NE (!P(x))",
        "~(x = x)",
        "A y. E x. (R(y,x) & NE (!P(x)))",
        "dep(x) & NE P(x) & NE (!P(x))",
    ] {
        let f = parse_team(text, &vocab, &registry).unwrap();
        let (r, stats) = sat_bounded(&f, &vocab, &opts).unwrap();
        let found = matches!(r, SatResult::Sat { .. });
        match r {
            SatResult::Sat { structure, team } => {
                println!("{text}: satisfiable on {} elements, team {team}", structure.domain_size())
            }
            SatResult::UnsatUpTo(n) => println!("{text}: no model up to {n} elements"),
            SatResult::ResourceExhausted => println!("{text}: gave up"),
        }
        println!("    structures={} checks={}", stats.structures, stats.checks);
        if !f.has_dependency_atoms() {
            let (r2, _) = sat_fo2(&f, &vocab, &opts).unwrap();
            if !matches!(r2, SatResult::ResourceExhausted) {
                assert_eq!(matches!(r2, SatResult::Sat { .. }), found);
                println!("    two-variable pipeline agrees");
            }
        }
    }
    for text in ["P(x) | !P(x)", "P(x) | NE (!P(x))", "NE P(x) | ~NE P(x)"] {
        let f = parse_team(text, &vocab, &registry).unwrap();
        let (r, _) = valid_bounded(&f, &vocab, &opts, Method::Generic).unwrap();
        match r {
            ValidResult::ValidUpTo(n) => println!("{text}: valid on all structures up to {n} elements"),
            ValidResult::Counterexample { team, .. } => println!("{text}: fails on team {team}"),
            ValidResult::Unknown => println!("{text}: unknown"),
        }
    }
}
