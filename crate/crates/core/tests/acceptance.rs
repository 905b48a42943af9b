//! Acceptance run: prints one PASS/FAIL line per criterion and exits
//! nonzero if any fails.

mod common;

use std::collections::BTreeSet;
use std::time::Instant;

use rand::Rng;
use teamlogic::evaluator::{eval_hook, eval_mtl, eval_team, Budget, TeamEvaluator};
use teamlogic::mtl_bridge::{
    interpret_kripke, lift_team, reduce_ptl_mc_to_fo_mc, reduce_ptl_sat_to_mc, standard_translation, Encoding,
    WorldVar,
};
use teamlogic::normal_form::{apply_law, build_gamma, dnf_expand, Direction, Disjunct, Law};
use teamlogic::random::{self, rng, Rand, Shape};
use teamlogic::so_bridge::{restriction_formula, translate_eta, translate_zeta, SoAssignment, SoEvaluator, SoMode};
use teamlogic::solver::{sat_bounded, sat_fo2, valid_bounded, Method, SatResult, SolverOptions, ValidResult};
use teamlogic::structures::{all_tuples, KripkeStructure, Relation, Structure, Team, WorldSet};
use teamlogic::syntax::{
    all_vars, free_vars, quantifier_rank, width, DependencyRegistry, FoFormula, MlFormula, MtlFormula,
    SparseBound, TeamFormula, Term, Vocabulary,
};

use common::{all_teams, compare, names, preds, samples, Compare};

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome { pass, detail: detail.into() }
}

fn team_shape() -> Shape {
    Shape::new(&["x", "y"], &[("P", 1), ("R", 2)])
}

fn so_assignment(t: &Team, xs: &[String], n: usize) -> SoAssignment {
    let terms: Vec<Term> = xs.iter().map(Term::var).collect();
    let a = Structure::new(n);
    let tuples = t.image(&terms, &a).unwrap();
    SoAssignment::new().with_rel("T", Relation::from_tuples(n, xs.len(), tuples).unwrap())
}

// ---------------------------------------------------------------------------
// 1, 2: second-order translation

struct SoHarness {
    checked: usize,
    skipped: usize,
    exhaustive: usize,
    mismatches: Vec<String>,
}

/// Runs random instances until `target` of them complete for every bound
/// in `bounds` (`None` for the unbounded translation).
fn so_harness(seed: u64, target: usize, bound: impl Fn(&TeamFormula, &Team, &[String]) -> Option<SparseBound>) -> SoHarness {
    let reg = DependencyRegistry::builtin();
    let shape = team_shape();
    let xs = names(&["x", "y"]);
    let mut r = rng(seed);
    let mut h = SoHarness { checked: 0, skipped: 0, exhaustive: 0, mismatches: vec![] };
    let mut attempts = 0;
    while h.checked < target && attempts < target * 2 {
        attempts += 1;
        let n = r.gen_range(1..=3);
        let size = r.gen_range(1..=8);
        let phi = random::team_formula(&mut r, size, &shape);
        let a = random::structure(&mut r, n, &preds());
        let t = random::team(&mut r, &xs, n, 4);
        let so = match bound(&phi, &t, &xs) {
            None => translate_eta(&phi, &xs, "T", &reg),
            Some(p) => translate_zeta(&phi, &xs, "T", &p, &reg),
        }
        .unwrap();
        let expected = TeamEvaluator::new(&a).with_registry(&reg).with_budget(Budget::with_nodes(20_000_000)).eval(&phi, &t);
        let j = so_assignment(&t, &xs, n);
        let got = SoEvaluator::new(&a).with_mode(SoMode::Pruned).with_budget(Budget::with_nodes(20_000_000)).eval(&j, &so);
        match (expected, got) {
            (Ok(e), Ok(g)) => {
                h.checked += 1;
                if e != g {
                    h.mismatches.push(format!("{phi} on team {t} (domain {n}): team {e}, second-order {g}"));
                }
                // the unpruned evaluator as a second opinion where it is cheap
                if n <= 2 {
                    let b = Budget::with_nodes(2_000_000);
                    match SoEvaluator::new(&a).with_mode(SoMode::Exhaustive).with_budget(b).eval(&j, &so) {
                        Ok(x) if x == e => h.exhaustive += 1,
                        Ok(x) => h.mismatches.push(format!("{phi} on team {t}: exhaustive mode gives {x}")),
                        Err(err) if err.is_resource() => {}
                        Err(err) => h.mismatches.push(format!("{phi}: {err}")),
                    }
                }
            }
            (Err(e), _) if e.is_resource() => h.skipped += 1,
            (_, Err(e)) if e.is_resource() => h.skipped += 1,
            (e, g) => h.mismatches.push(format!("{phi}: unexpected error {e:?} / {g:?}")),
        }
    }
    h
}

fn report(h: &SoHarness, target: usize) -> Outcome {
    let pass = h.mismatches.is_empty() && h.checked >= target;
    let mut d = format!(
        "{} instances agree ({} also in exhaustive mode), {} mismatches, {} skipped on budget",
        h.checked,
        h.exhaustive,
        h.mismatches.len(),
        h.skipped
    );
    if let Some(m) = h.mismatches.first() {
        d.push_str(&format!("; first: {m}"));
    }
    outcome(pass, d)
}

fn criterion_1() -> Outcome {
    let h = so_harness(1, 5000, |_, _, _| None);
    report(&h, 5000)
}

fn criterion_2() -> Outcome {
    let width_bound = so_harness(2, 5000, |phi, _, xs| {
        let mut vars = all_vars(phi);
        vars.extend(xs.iter().cloned());
        Some(SparseBound::power(vars.len() as u32))
    });
    let team_bound = so_harness(3, 5000, |phi, t, _| {
        Some(SparseBound::TeamScaled { team_size: t.len() as u64, exponent: quantifier_rank(phi) as u32 })
    });
    // an undersized bound must be able to change the verdict
    let reg = DependencyRegistry::builtin();
    let phi = teamlogic::syntax::parse_team("E y. (x = y & dep(y))", &Vocabulary::new(), &reg).unwrap();
    let xs = names(&["x"]);
    let a = Structure::new(2);
    let t = Team::from_rows(&xs, [vec![0]]).unwrap();
    let j = so_assignment(&t, &xs, 2);
    let truth = eval_team(&a, &t, &phi, &Budget::unlimited()).unwrap();
    let zeta = translate_zeta(&phi, &xs, "T", &SparseBound::zero(), &reg).unwrap();
    let undersized = SoEvaluator::new(&a).eval(&j, &zeta).unwrap();
    let flipped = truth && !undersized;
    let pass = report(&width_bound, 5000).pass && report(&team_bound, 5000).pass && flipped;
    outcome(
        pass,
        format!(
            "width bound: {}; team-size bound: {}; zero bound flips `E y. (x = y & dep(y))`: {flipped}",
            report(&width_bound, 5000).detail,
            report(&team_bound, 5000).detail
        ),
    )
}

// ---------------------------------------------------------------------------
// 3: standard translation

fn all_kripke(worlds: usize, props: &[String]) -> Vec<KripkeStructure> {
    let cells = worlds * worlds;
    let mut out = Vec::new();
    for edges in 0u32..(1 << cells) {
        for val in 0u32..(1 << (worlds * props.len())) {
            let mut k = KripkeStructure::new(worlds).unwrap();
            for c in 0..cells {
                if edges >> c & 1 == 1 {
                    k.add_edge(c / worlds, c % worlds).unwrap();
                }
            }
            for (i, p) in props.iter().enumerate() {
                let set = (0..worlds).filter(|w| val >> (i * worlds + w) & 1 == 1).collect();
                k.set_valuation(p, set).unwrap();
            }
            out.push(k);
        }
    }
    out
}

fn translation_agrees(k: &KripkeStructure, t: WorldSet, f: &MtlFormula, st: &TeamFormula) -> Result<(), String> {
    let modal = eval_mtl(k, t, f, &Budget::unlimited()).map_err(|e| e.to_string())?;
    let a = interpret_kripke(k);
    let fo = eval_team(&a, &lift_team(t, WorldVar::X), st, &Budget::unlimited()).map_err(|e| e.to_string())?;
    if modal == fo {
        Ok(())
    } else {
        Err(format!("{f} on worlds {t}: modal {modal}, translated {fo}"))
    }
}

fn criterion_3() -> Outcome {
    let props = names(&["p", "q"]);
    let mut r = rng(4);
    let formulas: Vec<MtlFormula> = (0..150).map(|i| random::mtl_formula(&mut r, 1 + i % 7, &props, 2)).collect();
    let mut models = all_kripke(1, &props);
    models.extend(all_kripke(2, &props));
    let mut exhaustive = 0;
    let mut mismatches = Vec::new();
    for f in &formulas {
        let st = standard_translation(f, WorldVar::X);
        for k in &models {
            for mask in 0u64..(1 << k.worlds()) {
                exhaustive += 1;
                if let Err(m) = translation_agrees(k, WorldSet(mask), f, &st) {
                    mismatches.push(m);
                }
            }
        }
    }
    let mut sampled = 0;
    for _ in 0..1000 {
        let size = r.gen_range(1..=8);
        let f = random::mtl_formula(&mut r, size, &props, 2);
        let k = random::kripke(&mut r, 3, &props);
        let t = WorldSet(r.gen_range(0..8));
        sampled += 1;
        if let Err(m) = translation_agrees(&k, t, &f, &standard_translation(&f, WorldVar::X)) {
            mismatches.push(m);
        }
    }
    let mut d = format!(
        "{exhaustive} exhaustive cases (all models with at most 2 worlds, {} formulas) and {sampled} three-world cases, {} mismatches",
        formulas.len(),
        mismatches.len()
    );
    if let Some(m) = mismatches.first() {
        d.push_str(&format!("; first: {m}"));
    }
    outcome(mismatches.is_empty(), d)
}

// ---------------------------------------------------------------------------
// 4: laws

fn fo(r: &mut Rand) -> FoFormula {
    let shape = team_shape();
    let size = r.gen_range(1..=3);
    random::fo_formula(r, size, &shape)
}

fn theta(r: &mut Rand) -> TeamFormula {
    let shape = team_shape();
    let size = r.gen_range(1..=4);
    random::team_formula(r, size, &shape)
}

fn var(r: &mut Rand) -> String {
    if r.gen_bool(0.5) { "x" } else { "y" }.to_string()
}

fn ne(b: FoFormula) -> TeamFormula {
    TeamFormula::nonempty(b)
}

fn with_witnesses(alpha: FoFormula, betas: Vec<FoFormula>) -> TeamFormula {
    TeamFormula::conjunction(std::iter::once(TeamFormula::Fo(alpha)).chain(betas.into_iter().map(ne)))
}

/// An instance of the left-hand side (forward) or right-hand side
/// (backward) of `law`.
fn law_instance(law: Law, dir: Direction, r: &mut Rand) -> TeamFormula {
    let fwd = dir == Direction::Forward;
    match law {
        Law::SpreadBase => {
            let alpha = fo(r);
            let betas: Vec<FoFormula> = (0..r.gen_range(1..=3)).map(|_| fo(r)).collect();
            if fwd {
                with_witnesses(alpha, betas)
            } else {
                TeamFormula::split_disjunction(betas.into_iter().map(|b| TeamFormula::Fo(alpha.clone()).and(ne(b))))
            }
        }
        Law::CollectBase => {
            let pairs: Vec<(FoFormula, FoFormula)> = (0..r.gen_range(1..=3)).map(|_| (fo(r), fo(r))).collect();
            if fwd {
                TeamFormula::split_disjunction(pairs.into_iter().map(|(a, b)| TeamFormula::Fo(a).and(ne(b))))
            } else {
                let base = FoFormula::disjunction(pairs.iter().map(|(a, _)| a.clone()));
                with_witnesses(base, pairs.into_iter().map(|(a, b)| a.and(b)).collect())
            }
        }
        Law::SplitOverChoiceLeft => {
            let (t1, t2, t3) = (theta(r), theta(r), theta(r));
            if fwd {
                TeamFormula::Or(Box::new(t1.bool_or(t2)), Box::new(t3))
            } else {
                TeamFormula::Or(Box::new(t1), Box::new(t3.clone()))
                    .bool_or(TeamFormula::Or(Box::new(t2), Box::new(t3)))
            }
        }
        Law::SplitOverChoiceRight => {
            let (t1, t2, t3) = (theta(r), theta(r), theta(r));
            if fwd {
                TeamFormula::Or(Box::new(t1), Box::new(t2.bool_or(t3)))
            } else {
                TeamFormula::Or(Box::new(t1.clone()), Box::new(t2))
                    .bool_or(TeamFormula::Or(Box::new(t1), Box::new(t3)))
            }
        }
        Law::ExistsOverChoice => {
            let (x, t1, t2) = (var(r), theta(r), theta(r));
            if fwd {
                TeamFormula::Exists(x, Box::new(t1.bool_or(t2)))
            } else {
                TeamFormula::Exists(x.clone(), Box::new(t1)).bool_or(TeamFormula::Exists(x, Box::new(t2)))
            }
        }
        Law::ExistsOverSplit => {
            let (x, t1, t2) = (var(r), theta(r), theta(r));
            if fwd {
                TeamFormula::Exists(x, Box::new(TeamFormula::Or(Box::new(t1), Box::new(t2))))
            } else {
                TeamFormula::Or(
                    Box::new(TeamFormula::Exists(x.clone(), Box::new(t1))),
                    Box::new(TeamFormula::Exists(x, Box::new(t2))),
                )
            }
        }
        Law::ExistsOverWitness => {
            let (x, alpha, beta) = (var(r), fo(r), fo(r));
            if fwd {
                TeamFormula::Exists(x, Box::new(TeamFormula::Fo(alpha).and(ne(beta))))
            } else {
                TeamFormula::Fo(FoFormula::exists(x.clone(), alpha.clone())).and(ne(FoFormula::exists(x, alpha.and(beta))))
            }
        }
        Law::ForallOverAnd => {
            let (x, t1, t2) = (var(r), theta(r), theta(r));
            if fwd {
                TeamFormula::Forall(x, Box::new(TeamFormula::And(Box::new(t1), Box::new(t2))))
            } else {
                TeamFormula::And(
                    Box::new(TeamFormula::Forall(x.clone(), Box::new(t1))),
                    Box::new(TeamFormula::Forall(x, Box::new(t2))),
                )
            }
        }
        Law::ForallOverTilde => {
            let (x, t) = (var(r), theta(r));
            if fwd {
                TeamFormula::Forall(x, Box::new(t.tilde()))
            } else {
                TeamFormula::Forall(x, Box::new(t)).tilde()
            }
        }
    }
}

fn criterion_4() -> Outcome {
    let xs = names(&["x", "y"]);
    let mut r = rng(5);
    let mut lines = Vec::new();
    let mut pass = true;
    let mut counts = Vec::new();
    for law in Law::ALL {
        for dir in [Direction::Forward, Direction::Backward] {
            let (mut ok, mut skipped) = (0, 0);
            while ok < 500 && ok + skipped < 700 {
                let f = law_instance(law, dir, &mut r);
                let Some(g) = apply_law(law, &f, dir) else {
                    pass = false;
                    lines.push(format!("law {law} {dir:?}: shape of {f} not recognized"));
                    break;
                };
                let s = samples(&mut r, &xs);
                match compare(&f, &g, &s, 2_000_000) {
                    Compare::Same => ok += 1,
                    Compare::Skipped => skipped += 1,
                    Compare::Differ(m) => {
                        pass = false;
                        lines.push(format!("law {law} {dir:?}: {m}"));
                        break;
                    }
                }
            }
            if ok < 500 {
                pass = false;
            }
            counts.push(format!("{law}{}:{ok}", if dir == Direction::Forward { "f" } else { "b" }));
        }
    }
    let mut d = format!("equivalent instances per law/direction [{}]", counts.join(" "));
    if let Some(m) = lines.first() {
        d.push_str(&format!("; {m}"));
    }
    outcome(pass, d)
}

// ---------------------------------------------------------------------------
// 5: normal form

fn criterion_5() -> Outcome {
    let xs = names(&["x", "y"]);
    let shape = team_shape().without_dependencies();
    let mut r = rng(6);
    let (mut ok, mut skipped, mut failures) = (0, 0, Vec::new());
    let mut attempts = 0;
    while ok < 1000 && attempts < 1500 {
        attempts += 1;
        let size = r.gen_range(1..=7);
        let f = random::team_formula(&mut r, size, &shape);
        let d = match dnf_expand(&f, 1 << 16) {
            Ok(d) => d,
            Err(e) => {
                failures.push(format!("{f}: {e}"));
                continue;
            }
        };
        let g = d.reconstruct();
        let s = samples(&mut r, &xs);
        match compare(&f, &g, &s, 2_000_000) {
            Compare::Same => ok += 1,
            Compare::Skipped => skipped += 1,
            Compare::Differ(m) => failures.push(m),
        }
    }
    let mut d = format!("{ok} formulas equivalent to their normal form, {} failures, {skipped} skipped on budget", failures.len());
    if let Some(m) = failures.first() {
        d.push_str(&format!("; first: {m}"));
    }
    outcome(failures.is_empty() && ok >= 1000, d)
}

// ---------------------------------------------------------------------------
// 6: classical sentence of a disjunct

fn structures_up_to(max: usize, vocab: &[(String, usize)]) -> Vec<Structure> {
    let mut out = Vec::new();
    for n in 1..=max {
        let cells: Vec<(usize, Vec<usize>)> =
            vocab.iter().enumerate().flat_map(|(i, (_, ar))| all_tuples(n, *ar).map(move |t| (i, t))).collect();
        for mask in 0u64..(1 << cells.len()) {
            let mut a = Structure::new(n);
            for (i, (p, ar)) in vocab.iter().enumerate() {
                let tuples = cells.iter().enumerate().filter(|(c, (j, _))| *j == i && mask >> c & 1 == 1).map(|(_, (_, t))| t.clone());
                a.add_relation(p, Relation::from_tuples(n, *ar, tuples).unwrap()).unwrap();
            }
            out.push(a);
        }
    }
    out
}

fn criterion_6() -> Outcome {
    let mut r = rng(7);
    let shape = Shape::new(&["x", "y"], &[("P", 1), ("Q", 1)]).without_dependencies();
    let binary = team_shape().without_dependencies();
    let (mut ok, mut sat, mut failures) = (0, 0, Vec::new());
    while ok + failures.len() < 200 {
        // one in four disjuncts uses the binary predicate
        let s = if ok % 4 == 0 { &binary } else { &shape };
        let parts = |r: &mut Rand| {
            let size = r.gen_range(1..=3);
            random::fo_formula(r, size, s)
        };
        let alpha = parts(&mut r);
        let k = r.gen_range(0..=2);
        let betas = (0..k).map(|_| parts(&mut r)).collect();
        let d = Disjunct::new(alpha, betas);
        let mut vocab_preds: Vec<(String, usize)> = preds();
        vocab_preds.push(("Q".into(), 1));
        let text = d.to_team().to_string();
        vocab_preds.retain(|(p, _)| text.contains(&format!("{p}(")));
        let mut vocab = Vocabulary::new();
        for (p, ar) in &vocab_preds {
            vocab = vocab.with_predicate(p, *ar).unwrap();
        }
        let opts = SolverOptions::default().with_max_domain(3);
        let team_side = match sat_bounded(&d.to_team(), &vocab, &opts) {
            Ok((SatResult::Sat { .. }, _)) => true,
            Ok((SatResult::UnsatUpTo(_), _)) => false,
            other => {
                failures.push(format!("{}: solver gave {other:?}", d.to_team()));
                continue;
            }
        };
        let gamma = build_gamma(&d).unwrap();
        let classical = structures_up_to(3, &vocab_preds)
            .iter()
            .any(|a| teamlogic::evaluator::eval_fo(a, &Default::default(), &gamma).unwrap());
        if team_side == classical {
            ok += 1;
            sat += usize::from(team_side);
        } else {
            failures.push(format!("{}: team {team_side}, classical {classical}", d.to_team()));
        }
    }
    let mut d = format!("{ok} disjuncts agree ({sat} satisfiable), {} disagree", failures.len());
    if let Some(m) = failures.first() {
        d.push_str(&format!("; first: {m}"));
    }
    outcome(failures.is_empty() && ok >= 200, d)
}

// ---------------------------------------------------------------------------
// 7: reductions

/// Every propositional team formula over `p`, `q` with exactly `size` nodes.
fn ptl_formulas(size: usize, memo: &mut Vec<Vec<MtlFormula>>) -> Vec<MtlFormula> {
    if let Some(v) = memo.get(size) {
        return v.clone();
    }
    let mut out = Vec::new();
    if size == 1 {
        for atom in [MlFormula::prop("p"), MlFormula::prop("q"), MlFormula::True, MlFormula::False] {
            out.push(MtlFormula::Ml(atom));
        }
    } else {
        for f in ptl_formulas(size - 1, memo) {
            if let MtlFormula::Ml(m) = &f {
                out.push(MtlFormula::Ml(m.clone().not()));
            }
            out.push(MtlFormula::Tilde(Box::new(f)));
        }
        for l in 1..size - 1 {
            let rs = ptl_formulas(size - 1 - l, memo);
            for a in ptl_formulas(l, memo) {
                for b in &rs {
                    out.push(MtlFormula::And(Box::new(a.clone()), Box::new(b.clone())));
                    out.push(MtlFormula::Or(Box::new(a.clone()), Box::new(b.clone())));
                }
            }
        }
    }
    while memo.len() <= size {
        memo.push(Vec::new());
    }
    memo[size] = out.clone();
    out
}

/// Truth of a classical propositional formula at a valuation (bit 0: p,
/// bit 1: q).
fn classical(f: &MlFormula, v: usize) -> bool {
    match f {
        MlFormula::True => true,
        MlFormula::False => false,
        MlFormula::Prop(p) => v >> usize::from(p == "q") & 1 == 1,
        MlFormula::Not(a) => !classical(a, v),
        MlFormula::And(a, b) => classical(a, v) && classical(b, v),
        MlFormula::Or(a, b) => classical(a, v) || classical(b, v),
        _ => unreachable!("no modalities"),
    }
}

/// Truth of a propositional team formula on a set of valuations.
fn ptl(f: &MtlFormula, team: u8) -> bool {
    match f {
        MtlFormula::Ml(m) => (0..4).filter(|v| team >> v & 1 == 1).all(|v| classical(m, v)),
        MtlFormula::Tilde(a) => !ptl(a, team),
        MtlFormula::And(a, b) => ptl(a, team) && ptl(b, team),
        MtlFormula::Or(a, b) => (0u8..16).any(|s| {
            s & !team == 0 && ptl(a, s) && (0u8..16).any(|u| s | u == team && ptl(b, u))
        }),
        _ => unreachable!("no modalities"),
    }
}

fn criterion_7() -> Outcome {
    let mut memo = Vec::new();
    let formulas: Vec<MtlFormula> = (1..=6).flat_map(|s| ptl_formulas(s, &mut memo)).collect();
    // one world per valuation, no edges
    let k = KripkeStructure::new(4)
        .and_then(|k| k.with_valuation("p", &[1, 3]))
        .and_then(|k| k.with_valuation("q", &[2, 3]))
        .unwrap();
    let mut failures = Vec::new();
    let mut mc_cases = 0;
    for f in &formulas {
        let satisfiable = (0u8..16).any(|t| ptl(f, t));
        for enc in [Encoding::Equality, Encoding::Predicate] {
            let (a, t, psi) = reduce_ptl_sat_to_mc(f, enc).unwrap();
            let shape_ok = a.domain_size() == 2 && t == Team::unit();
            let reduced = eval_team(&a, &t, &psi, &Budget::unlimited()).unwrap();
            if reduced != satisfiable || !shape_ok {
                failures.push(format!("satisfiability of {f} ({enc:?}): direct {satisfiable}, reduced {reduced}"));
            }
        }
        for mask in 0u8..16 {
            let t = WorldSet(mask as u64);
            let (a, team, psi) = reduce_ptl_mc_to_fo_mc(&k, t, f).unwrap();
            let shape_ok = quantifier_rank(&psi) == 0 && all_vars(&psi).iter().all(|v| v == "x") && width(&psi) <= 1;
            let reduced = eval_team(&a, &team, &psi, &Budget::unlimited()).unwrap();
            mc_cases += 1;
            if reduced != ptl(f, mask) || !shape_ok {
                failures.push(format!("model checking {f} on {t}: direct {}, reduced {reduced}", ptl(f, mask)));
            }
        }
    }
    let mut d = format!(
        "{} formulas up to size 6, {} satisfiability and {mc_cases} model-checking instances, {} failures",
        formulas.len(),
        formulas.len() * 2,
        failures.len()
    );
    if let Some(m) = failures.first() {
        d.push_str(&format!("; first: {m}"));
    }
    outcome(failures.is_empty(), d)
}

// ---------------------------------------------------------------------------
// 8: propositions

fn locality(failures: &mut Vec<String>) -> usize {
    let mut r = rng(8);
    let shape = Shape::new(&["x", "y"], &[("P", 1), ("R", 2)]);
    let reg = DependencyRegistry::builtin();
    let mut count = 0;
    for (n, vars, fvars) in [(2, names(&["x", "y", "z"]), ["x", "y"]), (3, names(&["x", "y"]), ["x", "x"])] {
        let teams = all_teams(&vars, n);
        let a = random::structure(&mut r, n, &preds());
        let mut shape = shape.clone();
        shape.vars = names(&fvars).into_iter().collect::<BTreeSet<_>>().into_iter().collect();
        for _ in 0..40 {
            let size = r.gen_range(1..=5);
            let f = random::team_formula(&mut r, size, &shape);
            let fv: Vec<String> = free_vars(&f).into_iter().collect();
            for t in &teams {
                let b = Budget::with_nodes(1 << 20);
                let mut ev = TeamEvaluator::new(&a).with_registry(&reg).with_budget(b);
                let full = ev.eval(&f, t);
                let small = TeamEvaluator::new(&a).with_registry(&reg).with_budget(b).eval(&f, &t.restrict(&fv).unwrap());
                match (full, small) {
                    (Ok(x), Ok(y)) if x == y => count += 1,
                    (Err(e), _) | (_, Err(e)) if e.is_resource() => {}
                    other => failures.push(format!("locality of {f} on {t}: {other:?}")),
                }
            }
        }
    }
    count
}

/// All supplements `T^x_f` of `t` on an `n`-element domain.
fn all_supplements(t: &Team, x: &str, n: usize) -> BTreeSet<Vec<Vec<usize>>> {
    let rows: Vec<Vec<usize>> = t.rows().iter().cloned().collect();
    let choices = (1u32 << n) - 1;
    let mut out = BTreeSet::new();
    let mut pick = vec![1u32; rows.len()];
    loop {
        let s = t
            .supplement(x, |asg| {
                let row: Vec<usize> = t.vars().iter().map(|v| asg.get(v).unwrap()).collect();
                let i = rows.iter().position(|r| *r == row).unwrap();
                (0..n).filter(|a| pick[i] >> a & 1 == 1).collect()
            })
            .unwrap();
        out.insert(s.rows().iter().cloned().collect());
        let mut i = 0;
        loop {
            if i == pick.len() {
                return out;
            }
            if pick[i] < choices {
                pick[i] += 1;
                break;
            }
            pick[i] = 1;
            i += 1;
        }
    }
}

fn supplement_duality(failures: &mut Vec<String>) -> usize {
    let mut count = 0;
    // (domain of T, domain of S, largest T checked)
    let cases: [(usize, &[&str], usize); 4] = [(2, &["y"], 4), (2, &["x", "y"], 4), (3, &["y"], 3), (3, &["x", "y"], 4)];
    for (n, tvars, max_rows) in cases {
        let tvars = names(tvars);
        let svars = names(&["x", "y"]);
        let keep: Vec<String> = tvars.iter().filter(|v| *v != "x").cloned().collect();
        let ss = all_teams(&svars, n);
        for t in all_teams(&tvars, n).into_iter().filter(|t| t.len() <= max_rows) {
            let reachable = all_supplements(&t, "x", n);
            let tr = t.restrict(&keep).unwrap();
            for s in &ss {
                let by_search = reachable.contains(&s.rows().iter().cloned().collect::<Vec<_>>());
                let by_restriction = s.restrict(&keep).unwrap() == tr;
                count += 1;
                if by_search != by_restriction {
                    failures.push(format!("supplement of {t} by x vs {s}: search {by_search}, restriction {by_restriction}"));
                }
            }
        }
    }
    count
}

fn lattice(failures: &mut Vec<String>) -> usize {
    let mut count = 0;
    for n in 1..=3 {
        for xs in [names(&["x"]), names(&["x", "y"]), names(&["y", "x"])] {
            let dom: Vec<String> = xs.iter().cloned().collect::<BTreeSet<_>>().into_iter().collect();
            let a = Structure::new(n);
            let terms: Vec<Term> = xs.iter().map(Term::var).collect();
            let teams = all_teams(&dom, n);
            let images: Vec<BTreeSet<Vec<usize>>> = teams.iter().map(|t| t.image(&terms, &a).unwrap()).collect();
            let distinct: BTreeSet<_> = images.iter().collect();
            let universe: BTreeSet<Vec<usize>> = all_tuples(n, xs.len()).collect();
            if distinct.len() != teams.len() || images.iter().any(|i| !i.is_subset(&universe)) {
                failures.push(format!("image map over {xs:?} on {n} elements is not a bijection"));
            }
            for (i, s) in teams.iter().enumerate() {
                for (j, s2) in teams.iter().enumerate() {
                    count += 1;
                    if s.is_subset(s2) != images[i].is_subset(&images[j]) {
                        failures.push(format!("order not preserved between {s} and {s2}"));
                    }
                }
            }
        }
    }
    count
}

fn restriction_sentence(failures: &mut Vec<String>) -> usize {
    let mut count = 0;
    // (domain size, team variables of T, extra variable)
    for (n, xs, y) in [(3, names(&["x"]), "y"), (3, names(&["x"]), "x"), (2, names(&["x", "y"]), "z"), (2, names(&["x", "y"]), "y")] {
        let mut svars = xs.clone();
        if !svars.iter().any(|v| v == y) {
            svars.push(y.to_string());
        }
        let pi = restriction_formula("T", "S", &xs, y);
        let keep: Vec<String> = xs.iter().filter(|v| *v != y).cloned().collect();
        let a = Structure::new(n);
        for t in all_teams(&xs, n) {
            for s in all_teams(&svars, n) {
                let j = SoAssignment::new()
                    .with_rel("T", Relation::from_tuples(n, xs.len(), t.rows().iter().cloned()).unwrap())
                    .with_rel("S", Relation::from_tuples(n, svars.len(), s.rows().iter().cloned()).unwrap());
                let so = SoEvaluator::new(&a).eval(&j, &pi).unwrap();
                let direct = t.restrict(&keep).unwrap() == s.restrict(&keep).unwrap();
                count += 1;
                if so != direct {
                    failures.push(format!("restriction sentence on {t} and {s}: {so} vs {direct}"));
                }
            }
        }
    }
    count
}

fn hook(failures: &mut Vec<String>) -> usize {
    let mut r = rng(9);
    let shape = team_shape();
    let mut count = 0;
    for (n, vars) in [(2, names(&["x", "y"])), (3, names(&["x", "y"]))] {
        let teams: Vec<Team> = all_teams(&vars, n).into_iter().filter(|t| n < 3 || t.len() <= 4).collect();
        let a = random::structure(&mut r, n, &preds());
        for _ in 0..20 {
            let alpha = fo(&mut r);
            let size = r.gen_range(1..=4);
            let phi = random::team_formula(&mut r, size, &shape);
            let desugared = TeamFormula::Fo(alpha.clone().not()).or(TeamFormula::Fo(alpha.clone()).and(phi.clone()));
            for t in &teams {
                let b = Budget::with_nodes(1 << 20);
                let filtered = t.filter(|s| teamlogic::evaluator::eval_fo(&a, s, &alpha).unwrap());
                let results = (
                    eval_hook(&a, t, &alpha, &phi, &b),
                    eval_team(&a, t, &desugared, &b),
                    eval_team(&a, &filtered, &phi, &b),
                );
                match results {
                    (Ok(h), Ok(d), Ok(f)) if h == d && d == f => count += 1,
                    (Err(e), _, _) | (_, Err(e), _) | (_, _, Err(e)) if e.is_resource() => {}
                    other => failures.push(format!("{alpha} hooking {phi} on {t}: {other:?}")),
                }
            }
        }
    }
    count
}

fn criterion_8() -> Outcome {
    let mut failures = Vec::new();
    let counts = [
        ("locality", locality(&mut failures)),
        ("supplement/restriction", supplement_duality(&mut failures)),
        ("image lattice", lattice(&mut failures)),
        ("restriction sentence", restriction_sentence(&mut failures)),
        ("hook", hook(&mut failures)),
    ];
    let parts: Vec<String> = counts.iter().map(|(n, c)| format!("{n} {c}")).collect();
    let mut d = format!("checked cases: {}; {} failures", parts.join(", "), failures.len());
    if let Some(m) = failures.first() {
        d.push_str(&format!("; first: {m}"));
    }
    outcome(failures.is_empty(), d)
}

// ---------------------------------------------------------------------------
// 9: witnesses

fn criterion_9() -> Outcome {
    let mut r = rng(10);
    let shape = team_shape();
    let vocab = Vocabulary::new().with_predicate("P", 1).unwrap().with_predicate("R", 2).unwrap();
    let opts = SolverOptions::default().with_max_domain(2);
    let (mut witnesses, mut failures) = (0, Vec::new());
    let mut verify = |f: &TeamFormula, a: &Structure, t: &Team, expected: bool, what: &str| {
        witnesses += 1;
        match eval_team(a, t, f, &Budget::unlimited()) {
            Ok(v) if v == expected => {}
            other => failures.push(format!("{what} for {f} on {t}: {other:?}")),
        }
    };
    for i in 0..300 {
        let size = 1 + i % 6;
        let f = random::team_formula(&mut r, size, &shape);
        if let Ok((SatResult::Sat { structure, team }, _)) = sat_bounded(&f, &vocab, &opts) {
            verify(&f, &structure, &team, true, "sat");
        }
        if let Ok((ValidResult::Counterexample { structure, team }, _)) = valid_bounded(&f, &vocab, &opts, Method::Generic) {
            verify(&f, &structure, &team, false, "counterexample");
        }
        if !f.has_dependency_atoms() {
            if let Ok((SatResult::Sat { structure, team }, _)) = sat_fo2(&f, &vocab, &opts) {
                verify(&f, &structure, &team, true, "two-variable sat");
            }
            if let Ok((ValidResult::Counterexample { structure, team }, _)) =
                valid_bounded(&f, &vocab, &opts, Method::TwoVariable)
            {
                verify(&f, &structure, &team, false, "two-variable counterexample");
            }
        }
    }
    let mut d = format!("{witnesses} witnesses, {} failed re-verification", failures.len());
    if let Some(m) = failures.first() {
        d.push_str(&format!("; first: {m}"));
    }
    outcome(failures.is_empty() && witnesses > 0, d)
}

type Criterion = (&'static str, fn() -> Outcome);

fn main() {
    let criteria: [Criterion; 9] = [
        ("second-order translation agrees with team semantics", criterion_1),
        ("bounded second-order translation agrees under both bounds", criterion_2),
        ("standard translation agrees with modal team semantics", criterion_3),
        ("nine laws preserve meaning in both directions", criterion_4),
        ("normal form is equivalent", criterion_5),
        ("disjunct satisfiable iff its classical sentence is", criterion_6),
        ("reductions preserve verdicts and shapes", criterion_7),
        ("team propositions", criterion_8),
        ("solver witnesses re-verify", criterion_9),
    ];
    let only: Option<usize> = std::env::var("ACCEPTANCE_ONLY").ok().and_then(|s| s.parse().ok());
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        if only.is_some_and(|k| k != i + 1) {
            continue;
        }
        let start = Instant::now();
        let o = run();
        let verdict = if o.pass { "PASS" } else { "FAIL" };
        println!("criterion {}: {verdict} - {name} ({}; {:.1}s)", i + 1, o.detail, start.elapsed().as_secs_f64());
        failed += usize::from(!o.pass);
    }
    if failed > 0 {
        std::process::exit(1);
    }
}
