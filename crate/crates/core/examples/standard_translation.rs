//! Modal team formulas as two-variable first-order team formulas.

use teamlogic::evaluator::{eval_mtl, eval_team, Budget};
use teamlogic::mtl_bridge::{interpret_kripke, lift_team, standard_translation, WorldVar};
use teamlogic::structures::KripkeStructure;
use teamlogic::syntax::{parse_mtl, print_team, Style};

fn main() {
    let k = KripkeStructure::new(3)
        .and_then(|k| k.with_edges(&[(0, 1), (0, 2), (1, 2)]))
        .and_then(|k| k.with_valuation("p", &[1, 2]))
        .and_then(|k| k.with_valuation("q", &[2]))
        .unwrap();
    let a = interpret_kripke(&k);
    for text in ["<>p", "[]p", "NE q", "[](p | q)", "~<>q", "<>(NE q | NE (!q))"] {
        let f = parse_mtl(text).unwrap();
        let st = standard_translation(&f, WorldVar::X);
        println!("{text:<20} => {}", print_team(&st, Style::Unicode));
        for team in [[0usize].as_slice(), &[0, 1], &[1, 2]] {
            let ws = team.iter().copied().collect();
            let modal = eval_mtl(&k, ws, &f, &Budget::unlimited()).unwrap();
            let first_order = eval_team(&a, &lift_team(ws, WorldVar::X), &st, &Budget::unlimited()).unwrap();
            assert_eq!(modal, first_order);
            println!("    worlds {team:?}: {modal}");
        }
    }
}
