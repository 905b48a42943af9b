//! Seeded random formulas and structures, and a locality check on them.

use teamlogic::evaluator::{eval_team, Budget};
use teamlogic::random::{rng, structure, team, team_formula, Shape};
use teamlogic::syntax::{free_vars, print_team, Style};

fn main() {
    let mut r = rng(7);
    let shape = Shape::new(&["x", "y", "z"], &[("P", 1), ("R", 2)]);
    let preds = vec![("P".to_string(), 1), ("R".to_string(), 2)];
    let vars: Vec<String> = ["x", "y", "z"].iter().map(|s| s.to_string()).collect();
    let mut checked = 0;
    for _ in 0..200 {
        let f = team_formula(&mut r, 6, &shape);
        let a = structure(&mut r, 2, &preds);
        let t = team(&mut r, &vars, 2, 4);
        let fv: Vec<String> = free_vars(&f).into_iter().collect();
        let b = Budget::with_nodes(1 << 20);
        let (Ok(full), Ok(small)) = (eval_team(&a, &t, &f, &b), eval_team(&a, &t.restrict(&fv).unwrap(), &f, &b)) else {
            continue;
        };
        assert_eq!(full, small);
        checked += 1;
        if checked <= 5 {
            println!("{}  on {} rows: {full}", print_team(&f, Style::Ascii), t.len());
        }
    }
    println!("locality held on {checked} random instances");
}
