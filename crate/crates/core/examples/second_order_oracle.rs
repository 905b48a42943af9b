//! Translate a team formula into a second-order sentence about the team
//! relation and check both sides agree on every team of a small structure.

use teamlogic::evaluator::{eval_team, Budget};
use teamlogic::so_bridge::{translate_eta, translate_zeta, SoAssignment, SoEvaluator, SoMode};
use teamlogic::structures::{all_tuples, Relation, Structure, Team};
use teamlogic::syntax::{parse_team, print_so, DependencyRegistry, SparseBound, Style, Vocabulary};

fn main() {
    let registry = DependencyRegistry::builtin();
    let vocab = Vocabulary::new().with_predicate("P", 1).unwrap();
    let f = parse_team("dep(x,y) | NE P(x)", &vocab, &registry).unwrap();
    let xs = vec!["x".to_string(), "y".to_string()];
    let eta = translate_eta(&f, &xs, "T", &registry).unwrap();
    println!("formula:     dep(x,y) | NE P(x)");
    println!("translation: {}", print_so(&eta, Style::Ascii));

    let bound: SparseBound = "team:1,1".parse().unwrap();
    let zeta = translate_zeta(&f, &xs, "T", &bound, &registry).unwrap();
    println!("sparse:      {}", print_so(&zeta, Style::Ascii));

    let a = Structure::new(2).with_relation("P", 1, vec![vec![1]]).unwrap();
    let rows: Vec<Vec<usize>> = all_tuples(2, 2).collect();
    let mut agree = 0;
    for mask in 0u32..(1 << rows.len()) {
        let picked: Vec<Vec<usize>> =
            rows.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, r)| r.clone()).collect();
        let t = Team::from_rows(&xs, picked.clone()).unwrap();
        let j = SoAssignment::new().with_rel("T", Relation::from_tuples(2, 2, picked).unwrap());
        let team_side = eval_team(&a, &t, &f, &Budget::unlimited()).unwrap();
        let pruned = SoEvaluator::new(&a).with_mode(SoMode::Pruned).eval(&j, &eta).unwrap();
        let exhaustive = SoEvaluator::new(&a).with_mode(SoMode::Exhaustive).eval(&j, &eta).unwrap();
        assert_eq!(team_side, pruned);
        assert_eq!(team_side, exhaustive);
        agree += 1;
    }
    println!("agreement on all {agree} teams over a 2-element structure");
}
