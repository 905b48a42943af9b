//! Evaluate dependence, independence-free team formulas on a small structure.

use teamlogic::evaluator::{Budget, TeamEvaluator};
use teamlogic::structures::Document;
use teamlogic::syntax::{parse_team, DependencyRegistry};

const FILE: &str = "\
domain 3
rel P 1 { (0) (2) }
rel R 2 { (0,1) (1,2) (2,0) }
team T: x y { (0,1) (1,2) (2,0) }
team U: x y { (0,0) (0,1) }
";

fn main() {
    let doc = Document::parse(FILE).expect("structure file");
    let a = doc.structure.as_ref().unwrap();
    let registry = DependencyRegistry::builtin();
    let vocab = a.vocabulary();
    let formulas = [
        "dep(x,y)",
        "dep(y,x)",
        "R(x,y)",
        "NE P(x)",
        "A z. E w. (dep(z,w) & (R(z,w) | ~R(z,w)))",
        "~dep(x,y)",
        "P(x) | !P(x)",
        "(NE P(x)) | (NE (!P(x)))",
    ];
    for name in ["T", "U"] {
        let t = doc.team(Some(name)).unwrap();
        println!("team {name}: {t}");
        for text in formulas {
            let f = parse_team(text, &vocab, &registry).unwrap();
            let mut ev = TeamEvaluator::new(a).with_registry(&registry).with_budget(Budget::default());
            let v = ev.eval(&f, t).unwrap();
            let s = ev.stats();
            println!("  {text:<45} {v:<5}  nodes={} splits={}", s.nodes, s.splits);
        }
    }
}
