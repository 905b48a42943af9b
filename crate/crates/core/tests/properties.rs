//! Property tests over seeded random formulas, structures and teams.

mod common;

use proptest::prelude::*;
use rand::Rng as _;
use teamlogic::evaluator::{eval_fo, eval_mtl, eval_team, Budget};
use teamlogic::mtl_bridge::{interpret_kripke, lift_team, reverse_interpret, standard_translation, WorldVar};
use teamlogic::random::{self, rng, Shape};
use teamlogic::so_bridge::{to_nnf, translate_eta, SoAssignment, SoEvaluator};
use teamlogic::solver::{sat_bounded, SolverOptions};
use teamlogic::structures::{Document, Relation, Team, WorldSet};
use teamlogic::syntax::{
    all_vars, free_vars, length, modal_depth, parse_fo, parse_mtl, parse_so, parse_team, print_fo, print_mtl, print_so,
    print_team, quantifier_rank, size, so_size, width, DependencyRegistry, SoContext, Style, Term, Vocabulary,
};

use common::{names, preds};

fn shape() -> Shape {
    Shape::new(&["x", "y", "z"], &[("P", 1), ("R", 2)])
}

fn vocab() -> Vocabulary {
    Vocabulary::new().with_predicate("P", 1).unwrap().with_predicate("R", 2).unwrap()
}

fn props() -> Vec<String> {
    names(&["p", "q"])
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn team_formulas_round_trip(seed in any::<u64>(), n in 1usize..12) {
        let f = random::team_formula(&mut rng(seed), n, &shape());
        let reg = DependencyRegistry::builtin();
        let text = print_team(&f, Style::Ascii);
        prop_assert_eq!(parse_team(&text, &vocab(), &reg).unwrap(), f);
    }

    #[test]
    fn first_order_formulas_round_trip(seed in any::<u64>(), n in 1usize..12) {
        let f = random::fo_formula(&mut rng(seed), n, &shape());
        prop_assert_eq!(parse_fo(&print_fo(&f, Style::Ascii), &vocab()).unwrap(), f);
    }

    #[test]
    fn modal_formulas_round_trip(seed in any::<u64>(), n in 1usize..12) {
        let f = random::mtl_formula(&mut rng(seed), n, &props(), 3);
        prop_assert_eq!(parse_mtl(&print_mtl(&f, Style::Ascii)).unwrap(), f);
    }

    #[test]
    fn second_order_formulas_round_trip(seed in any::<u64>(), n in 1usize..7) {
        let mut s = shape();
        s.vars = names(&["x", "y"]);
        let f = random::team_formula(&mut rng(seed), n, &s);
        let reg = DependencyRegistry::builtin();
        let so = translate_eta(&f, &names(&["x", "y"]), "T", &reg).unwrap();
        let ctx = SoContext::default().with_relation("T", 2);
        prop_assert_eq!(parse_so(&print_so(&so, Style::Ascii), &vocab(), &ctx).unwrap(), so);
    }

    #[test]
    fn measures_are_bounded_by_size(seed in any::<u64>(), n in 1usize..15) {
        let f = random::team_formula(&mut rng(seed), n, &shape());
        prop_assert!(quantifier_rank(&f) <= size(&f));
        prop_assert!(quantifier_rank(&f) <= length(&f));
        prop_assert!(width(&f) <= length(&f));
        prop_assert!(size(&f) <= length(&f));
        prop_assert!(free_vars(&f).is_subset(&all_vars(&f)));
        let m = random::mtl_formula(&mut rng(seed), n, &props(), 4);
        prop_assert!(modal_depth(&m) <= 4);
    }

    #[test]
    fn flatness(seed in any::<u64>(), n in 1usize..8, dom in 1usize..4) {
        let mut r = rng(seed);
        let f = random::fo_formula(&mut r, n, &shape());
        let a = random::structure(&mut r, dom, &preds());
        let t = random::team(&mut r, &names(&["x", "y", "z"]), dom, 5);
        let rowwise = t.assignments().all(|s| eval_fo(&a, &s, &f).unwrap());
        let team = eval_team(&a, &t, &teamlogic::syntax::TeamFormula::Fo(f), &Budget::unlimited()).unwrap();
        prop_assert_eq!(team, rowwise);
    }

    #[test]
    fn locality(seed in any::<u64>(), n in 1usize..7, dom in 1usize..3) {
        let mut r = rng(seed);
        let f = random::team_formula(&mut r, n, &shape());
        let a = random::structure(&mut r, dom, &preds());
        let t = random::team(&mut r, &names(&["x", "y", "z", "w"]), dom, 4);
        let fv: Vec<String> = free_vars(&f).into_iter().collect();
        let b = Budget::with_nodes(1 << 20);
        let full = eval_team(&a, &t, &f, &b);
        let restricted = eval_team(&a, &t.restrict(&fv).unwrap(), &f, &b);
        if let (Ok(x), Ok(y)) = (&full, &restricted) {
            prop_assert_eq!(x, y);
        }
    }

    #[test]
    fn empty_team_and_tilde(seed in any::<u64>(), n in 1usize..7, dom in 1usize..3) {
        let mut r = rng(seed);
        let mut s = shape();
        s.tilde = false;
        let f = random::team_formula(&mut r, n, &s);
        let a = random::structure(&mut r, dom, &preds());
        let vars = names(&["x", "y", "z"]);
        let b = Budget::with_nodes(1 << 20);
        // without Boolean negation, every formula holds on the empty team
        prop_assert!(eval_team(&a, &Team::empty(vars.iter().cloned()), &f, &b).unwrap());
        let t = random::team(&mut r, &vars, dom, 4);
        if let (Ok(x), Ok(y)) = (eval_team(&a, &t, &f, &b), eval_team(&a, &t, &f.clone().tilde(), &b)) {
            prop_assert_eq!(x, !y);
        }
    }

    #[test]
    fn modality_free_formulas_ignore_edges(seed in any::<u64>(), n in 1usize..9) {
        let mut r = rng(seed);
        let f = random::mtl_formula(&mut r, n, &props(), 0);
        let k = random::kripke(&mut r, 3, &props());
        let mut bare = k.clone();
        bare.clear_edges();
        let t = WorldSet(r.gen_range(0..8));
        let b = Budget::unlimited();
        prop_assert_eq!(eval_mtl(&k, t, &f, &b).unwrap(), eval_mtl(&bare, t, &f, &b).unwrap());
    }

    #[test]
    fn interpretation_is_reversible(seed in any::<u64>(), worlds in 1usize..5) {
        let mut r = rng(seed);
        let k = random::kripke(&mut r, worlds, &props());
        let t = WorldSet(r.gen_range(0..(1u64 << worlds)));
        for v in [WorldVar::X, WorldVar::Y] {
            let (k2, t2) = reverse_interpret(&interpret_kripke(&k), &lift_team(t, v), v).unwrap();
            prop_assert_eq!(&k2, &k);
            prop_assert_eq!(t2, t);
        }
    }

    #[test]
    fn translation_uses_two_variables(seed in any::<u64>(), n in 1usize..12) {
        let f = random::mtl_formula(&mut rng(seed), n, &props(), 4);
        let st = standard_translation(&f, WorldVar::Y);
        prop_assert!(all_vars(&st).iter().all(|v| v == "x" || v == "y"));
        prop_assert!(quantifier_rank(&st) <= 2 * modal_depth(&f));
    }

    #[test]
    fn documents_round_trip(seed in any::<u64>(), dom in 1usize..4) {
        let mut r = rng(seed);
        let a = random::structure(&mut r, dom, &preds());
        let t = random::team(&mut r, &names(&["x", "y"]), dom, 5);
        let k = random::kripke(&mut r, 3, &props());
        let doc = Document {
            structure: Some(a),
            teams: vec![(Some("T".into()), t)],
            kripke: Some(teamlogic::structures::KripkeModel { structure: k, teams: vec![(None, WorldSet(5))] }),
        };
        prop_assert_eq!(Document::parse(&doc.to_string()).unwrap(), doc);
    }

    #[test]
    fn negation_normal_form_preserves_truth(seed in any::<u64>(), n in 1usize..6) {
        let mut r = rng(seed);
        let mut s = shape();
        s.vars = names(&["x"]);
        let f = random::team_formula(&mut r, n, &s);
        let reg = DependencyRegistry::builtin();
        let xs = names(&["x"]);
        let so = translate_eta(&f, &xs, "T", &reg).unwrap();
        let a = random::structure(&mut r, 2, &preds());
        let t = random::team(&mut r, &xs, 2, 2);
        let terms = vec![Term::var("x")];
        let j = SoAssignment::new().with_rel("T", Relation::from_tuples(2, 1, t.image(&terms, &a).unwrap()).unwrap());
        let b = Budget::with_nodes(1 << 22);
        let plain = SoEvaluator::new(&a).with_budget(b).eval(&j, &so);
        let nnf = SoEvaluator::new(&a).with_budget(b).eval(&j, &to_nnf(&so));
        if let (Ok(x), Ok(y)) = (plain, nnf) {
            prop_assert_eq!(x, y);
        }
    }

    #[test]
    fn alternations_bounded_by_size(seed in any::<u64>(), n in 1usize..6) {
        let mut r = rng(seed);
        let mut s = shape();
        s.vars = names(&["x"]);
        let f = random::team_formula(&mut r, n, &s);
        let xs = names(&["x"]);
        let so = translate_eta(&f, &xs, "T", &DependencyRegistry::builtin()).unwrap();
        let a = random::structure(&mut r, 2, &preds());
        let j = SoAssignment::new().with_rel("T", Relation::full(2, 1).unwrap());
        let mut ev = SoEvaluator::new(&a).with_budget(Budget::with_nodes(1 << 22));
        if ev.eval(&j, &so).is_ok() {
            prop_assert!(ev.stats().alternations as usize <= so_size(&so));
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn solver_is_deterministic_across_workers(seed in any::<u64>(), n in 1usize..6) {
        let mut s = Shape::new(&["x", "y"], &[("P", 1)]);
        s.dependencies = true;
        let f = random::team_formula(&mut rng(seed), n, &s);
        let v = Vocabulary::new().with_predicate("P", 1).unwrap();
        let one = sat_bounded(&f, &v, &SolverOptions::default().with_max_domain(2)).unwrap().0;
        let many = sat_bounded(&f, &v, &SolverOptions::default().with_max_domain(2).with_jobs(3)).unwrap().0;
        prop_assert_eq!(one, many);
    }
}

#[test]
fn restriction_collapses_rows() {
    let t = Team::from_rows(&["x", "y"], [vec![0, 0], vec![0, 1]]).unwrap();
    assert_eq!(t.restrict(&["x"]).unwrap().len(), 1);
}

#[test]
fn supplement_of_empty_team_is_empty() {
    let t = Team::empty(["y"]);
    let s = t.supplement("x", |_| [0].into_iter().collect()).unwrap();
    assert!(s.is_empty());
    assert_eq!(s.vars(), ["x", "y"]);
}
