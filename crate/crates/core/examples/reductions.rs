//! Propositional team logic problems as first-order model checking.

use teamlogic::evaluator::{eval_mtl, eval_team, Budget};
use teamlogic::mtl_bridge::{reduce_ptl_mc_to_fo_mc, reduce_ptl_sat_to_mc, Encoding};
use teamlogic::structures::{Document, KripkeStructure, WorldSet};
use teamlogic::syntax::{parse_mtl, print_team, Style};

fn main() {
    for text in ["p & NE q", "NE p & NE (!p)", "NE p & ~NE p", "(p | q) & ~(NE (!p))"] {
        let f = parse_mtl(text).unwrap();
        for enc in [Encoding::Equality, Encoding::Predicate] {
            let (a, t, psi) = reduce_ptl_sat_to_mc(&f, enc).unwrap();
            let v = eval_team(&a, &t, &psi, &Budget::unlimited()).unwrap();
            println!("{text:<24} {enc:?}: satisfiable = {v}");
            if enc == Encoding::Equality {
                println!("    {}", print_team(&psi, Style::Ascii));
            }
        }
    }

    let k = KripkeStructure::new(3)
        .and_then(|k| k.with_valuation("p", &[0, 1]))
        .and_then(|k| k.with_valuation("q", &[1]))
        .unwrap();
    let t: WorldSet = [0, 1].into_iter().collect();
    let f = parse_mtl("p & NE q & NE (!q)").unwrap();
    let (a, team, psi) = reduce_ptl_mc_to_fo_mc(&k, t, &f).unwrap();
    let direct = eval_mtl(&k, t, &f, &Budget::unlimited()).unwrap();
    let reduced = eval_team(&a, &team, &psi, &Budget::unlimited()).unwrap();
    println!("\nmodel checking: direct = {direct}, reduced = {reduced}");
    print!("{}", Document { structure: Some(a), teams: vec![(None, team)], kripke: None });
    println!("# formula: {}", print_team(&psi, Style::Ascii));
}
