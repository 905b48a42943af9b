//! The `tlk` command line: argument parsing, file loading and result
//! reporting. [`run`] never exits the process; it returns the exit code.

use std::collections::BTreeSet;
use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::json;

use crate::evaluator::{Budget, MtlEvaluator, TeamEvaluator};
use crate::mtl_bridge::{reduce_ptl_mc_to_fo_mc, reduce_ptl_sat_to_mc, standard_translation, Encoding, WorldVar};
use crate::normal_form::dnf_expand;
use crate::random;
use crate::so_bridge::{fresh_relation_names, translate_eta, translate_zeta, SoAssignment, SoEvaluator, SoMode, SoValue};
use crate::solver::{sat_bounded, sat_fo2, valid_bounded, Method, SatResult, SolverOptions, SolverStats, ValidResult};
use crate::structures::{write_kripke, Document, Structure, Team};
use crate::syntax::{
    fo_size, free_vars, infer_vocabulary, modal_depth, mtl_size, parse, parse_mtl, parse_so, parse_team, print,
    print_mtl, print_so, print_team, quantifier_rank, size, so_size, width, DependencyRegistry, Formula, Language,
    MtlFormula, SoContext, SparseBound, Style, TeamFormula, Vocabulary,
};

pub const EXIT_USAGE: i32 = 64;
pub const EXIT_FILE: i32 = 66;
pub const EXIT_INTERNAL: i32 = 70;

#[derive(Parser, Debug)]
#[command(name = "tlk", version, about = "Team logic toolkit: model checking, translations, normal forms, bounded search")]
pub struct Cli {
    /// Print one JSON record instead of text.
    #[arg(long, global = true)]
    pub json: bool,
    /// Seed for every random choice.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Worker threads for the solver.
    #[arg(long, global = true, default_value_t = 1)]
    pub jobs: usize,
    /// Print formulas with logical symbols instead of ASCII.
    #[arg(long, global = true)]
    pub unicode: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Parse a formula, print it back with its measures.
    Parse(ParseArgs),
    /// Model check a team or modal team formula.
    Mc(McArgs),
    /// Model check a second-order formula.
    McSo(McSoArgs),
    #[command(subcommand)]
    Translate(TranslateCmd),
    /// Normal form `\/ (a & NE b & ...)`.
    Dnf(DnfArgs),
    /// Bounded satisfiability search.
    Sat(SatArgs),
    /// Bounded validity search.
    Valid(SatArgs),
    #[command(subcommand)]
    Reduce(ReduceCmd),
    /// Generate a random formula or structure.
    Random(RandomArgs),
}

#[derive(Args, Debug)]
pub struct FormulaArgs {
    #[arg(long, short = 'f')]
    pub formula: String,
    /// Vocabulary and dependency sidecar file.
    #[arg(long)]
    pub vocab: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct ParseArgs {
    #[command(flatten)]
    pub formula: FormulaArgs,
    #[arg(long, value_enum, default_value_t = Lang::Team)]
    pub lang: Lang,
}

#[derive(Clone, Copy, Debug, ValueEnum, PartialEq, Eq)]
pub enum Lang {
    Fo,
    Team,
    Mtl,
    So,
}

#[derive(Clone, Copy, Debug, ValueEnum, PartialEq, Eq)]
pub enum McLang {
    Team,
    Mtl,
}

#[derive(Args, Debug)]
pub struct McArgs {
    #[command(flatten)]
    pub formula: FormulaArgs,
    #[arg(long)]
    pub structure: PathBuf,
    /// Team name, or `#i` for the i-th unnamed team; optional when the file
    /// declares exactly one.
    #[arg(long)]
    pub team: Option<String>,
    #[arg(long, value_enum, default_value_t = McLang::Team)]
    pub lang: McLang,
    /// Limit on evaluation steps.
    #[arg(long)]
    pub budget: Option<u64>,
}

#[derive(Clone, Copy, Debug, ValueEnum, PartialEq, Eq)]
pub enum SoModeArg {
    Pruned,
    Exhaustive,
}

#[derive(Args, Debug)]
pub struct McSoArgs {
    #[command(flatten)]
    pub formula: FormulaArgs,
    #[arg(long)]
    pub structure: PathBuf,
    #[arg(long)]
    pub so_assignment: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = SoModeArg::Pruned)]
    pub mode: SoModeArg,
    #[arg(long)]
    pub budget: Option<u64>,
}

#[derive(Subcommand, Debug)]
pub enum TranslateCmd {
    /// Team formula to second-order formula over a team relation.
    So(TranslateSoArgs),
    /// Modal team formula to two-variable team formula.
    St(TranslateStArgs),
}

#[derive(Args, Debug)]
pub struct TranslateSoArgs {
    #[command(flatten)]
    pub formula: FormulaArgs,
    /// Comma-separated tuple of team variables; defaults to the free
    /// variables in alphabetical order.
    #[arg(long, value_delimiter = ',')]
    pub vars: Option<Vec<String>>,
    /// Bound for every relation quantifier, `poly:c0,c1,...` or `team:size,exp`.
    #[arg(long)]
    pub sparse: Option<String>,
    /// Name of the team relation.
    #[arg(long)]
    pub relation: Option<String>,
}

#[derive(Args, Debug)]
pub struct TranslateStArgs {
    #[arg(long, short = 'f')]
    pub formula: String,
    #[arg(long, default_value = "x")]
    pub var: String,
}

#[derive(Args, Debug)]
pub struct DnfArgs {
    #[command(flatten)]
    pub formula: FormulaArgs,
    /// Largest normal form size.
    #[arg(long, default_value_t = 100_000)]
    pub budget: usize,
}

#[derive(Args, Debug)]
pub struct SatArgs {
    #[command(flatten)]
    pub formula: FormulaArgs,
    #[arg(long, default_value_t = 3)]
    pub max_domain: usize,
    /// Use the normal form and classical two-variable search.
    #[arg(long)]
    pub fo2: bool,
    /// Limit on model-checking calls.
    #[arg(long)]
    pub budget: Option<u64>,
}

#[derive(Subcommand, Debug)]
pub enum ReduceCmd {
    /// Propositional satisfiability to first-order model checking.
    PtlSat(PtlSatArgs),
    /// Propositional model checking to first-order model checking.
    PtlMc(PtlMcArgs),
}

#[derive(Args, Debug)]
pub struct PtlSatArgs {
    #[arg(long, short = 'f')]
    pub formula: String,
    /// Encode propositions with a unary predicate instead of equality.
    #[arg(long)]
    pub no_equality: bool,
}

#[derive(Args, Debug)]
pub struct PtlMcArgs {
    #[arg(long, short = 'f')]
    pub formula: String,
    #[arg(long)]
    pub structure: PathBuf,
    #[arg(long)]
    pub team: Option<String>,
}

#[derive(Clone, Copy, Debug, ValueEnum, PartialEq, Eq)]
pub enum RandomKind {
    Team,
    Mtl,
    Structure,
    Kripke,
}

#[derive(Args, Debug)]
pub struct RandomArgs {
    #[arg(value_enum)]
    pub kind: RandomKind,
    /// Formula size, or number of elements.
    #[arg(long, default_value_t = 6)]
    pub size: usize,
}

/// A command failure with its exit code.
#[derive(Debug)]
pub struct Failure {
    pub code: i32,
    pub message: String,
}

fn usage(message: impl std::fmt::Display) -> Failure {
    Failure { code: EXIT_USAGE, message: message.to_string() }
}

fn file_error(path: &Path, message: impl std::fmt::Display) -> Failure {
    Failure { code: EXIT_FILE, message: format!("{}: {message}", path.display()) }
}

#[derive(Serialize, Default, Debug)]
pub struct StatsOut {
    pub nodes: u64,
    pub splits: u64,
    pub alternations: u64,
    #[serde(flatten)]
    pub extra: serde_json::Map<String, serde_json::Value>,
}

#[derive(Serialize, Debug)]
pub struct TeamOut {
    pub vars: Vec<String>,
    pub rows: Vec<Vec<usize>>,
}

#[derive(Serialize, Debug)]
pub struct Witness {
    /// The structure in the text file format.
    pub structure: String,
    pub team: TeamOut,
}

impl Witness {
    fn new(a: &Structure, t: &Team) -> Self {
        Witness {
            structure: Document { structure: Some(a.clone()), teams: vec![], kripke: None }.to_string(),
            team: TeamOut { vars: t.vars().to_vec(), rows: t.rows().iter().cloned().collect() },
        }
    }

    fn text(&self, t: &Team) -> String {
        format!("{}{t}\n", self.structure)
    }
}

/// One result record.
#[derive(Serialize, Debug)]
pub struct Report {
    pub verdict: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub output: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Witness>,
    pub stats: StatsOut,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub details: Option<serde_json::Value>,
    #[serde(skip)]
    pub text: String,
    #[serde(skip)]
    pub exit: i32,
}

impl Report {
    fn plain(verdict: &str, output: String) -> Self {
        Report {
            verdict: verdict.into(),
            text: output.clone(),
            output: Some(output),
            witness: None,
            stats: StatsOut::default(),
            details: None,
            exit: 0,
        }
    }
}

struct Ctx {
    style: Style,
    jobs: usize,
    seed: u64,
}

fn read(path: &Path) -> Result<String, Failure> {
    std::fs::read_to_string(path).map_err(|e| file_error(path, e))
}

fn load_document(path: &Path) -> Result<Document, Failure> {
    Document::parse(&read(path)?).map_err(|e| file_error(path, e))
}

/// The vocabulary for parsing `text`: the sidecar file if given, else the
/// structure's symbols, else the symbols occurring in `text`.
fn vocabulary(
    sidecar: Option<&Path>,
    structure: Option<&Structure>,
    text: &str,
    registry: &mut DependencyRegistry,
) -> Result<Vocabulary, Failure> {
    if let Some(path) = sidecar {
        return Vocabulary::parse_sidecar(&read(path)?, registry).map_err(|e| file_error(path, e));
    }
    if let Some(a) = structure {
        return Ok(a.vocabulary());
    }
    infer_vocabulary(text, registry).map_err(|e| usage(format!("formula: {e}")))
}

fn team_formula(args: &FormulaArgs, structure: Option<&Structure>) -> Result<(TeamFormula, Vocabulary, DependencyRegistry), Failure> {
    let mut registry = DependencyRegistry::builtin();
    let vocab = vocabulary(args.vocab.as_deref(), structure, &args.formula, &mut registry)?;
    let f = parse_team(&args.formula, &vocab, &registry).map_err(|e| usage(format!("formula: {e}")))?;
    Ok((f, vocab, registry))
}

fn mtl_formula(text: &str) -> Result<MtlFormula, Failure> {
    parse_mtl(text).map_err(|e| usage(format!("formula: {e}")))
}

fn budget(nodes: Option<u64>) -> Budget {
    nodes.map(Budget::with_nodes).unwrap_or_default()
}

fn verdict_report(verdict: Result<bool, bool>, stats: StatsOut) -> Report {
    let (word, exit) = match verdict {
        Ok(true) => ("true", 0),
        Ok(false) => ("false", 1),
        Err(_) => ("resource-exhausted", 2),
    };
    Report {
        verdict: word.into(),
        output: None,
        witness: None,
        stats,
        details: None,
        text: word.into(),
        exit,
    }
}

fn cmd_parse(args: &ParseArgs, ctx: &Ctx) -> Result<Report, Failure> {
    let text = &args.formula.formula;
    let mut registry = DependencyRegistry::builtin();
    let vocab = vocabulary(args.formula.vocab.as_deref(), None, text, &mut registry)?;
    let lang = match args.lang {
        Lang::Fo => Language::Fo,
        Lang::Team => Language::Team,
        Lang::Mtl => Language::Mtl,
        Lang::So => Language::So,
    };
    let f = parse(text, lang, &vocab, &registry).map_err(|e| usage(format!("formula: {e}")))?;
    let printed = print(&f, ctx.style);
    let details = match &f {
        Formula::Fo(a) => {
            let t = TeamFormula::Fo(a.clone());
            json!({"size": fo_size(a), "quantifier_rank": quantifier_rank(&t), "width": width(&t), "free_vars": free_vars(&t)})
        }
        Formula::Team(t) => {
            json!({"size": size(t), "quantifier_rank": quantifier_rank(t), "width": width(t), "free_vars": free_vars(t)})
        }
        Formula::Mtl(m) => json!({"size": mtl_size(m), "modal_depth": modal_depth(m)}),
        Formula::So(s) => json!({"size": so_size(s)}),
    };
    let mut r = Report::plain("ok", printed.clone());
    r.text = format!("{printed}\n{}", summary(&details));
    r.details = Some(details);
    Ok(r)
}

fn summary(details: &serde_json::Value) -> String {
    let mut parts = Vec::new();
    if let Some(map) = details.as_object() {
        for (k, v) in map {
            parts.push(format!("{k}: {v}"));
        }
    }
    parts.join("\n")
}

fn cmd_mc(args: &McArgs) -> Result<Report, Failure> {
    let doc = load_document(&args.structure)?;
    let b = budget(args.budget);
    match args.lang {
        McLang::Team => {
            let a = doc
                .structure
                .as_ref()
                .ok_or_else(|| file_error(&args.structure, "no `domain` declaration"))?;
            let t = doc
                .team(args.team.as_deref())
                .ok_or_else(|| usage(team_missing(args.team.as_deref())))?;
            let (f, _, registry) = team_formula(&args.formula, Some(a))?;
            let mut ev = TeamEvaluator::new(a).with_registry(&registry).with_budget(b);
            let r = ev.eval(&f, t);
            let s = ev.stats();
            let stats = StatsOut {
                nodes: s.nodes,
                splits: s.splits,
                alternations: 0,
                extra: extra(&[("supplements", s.supplements), ("memo_hits", s.memo_hits)]),
            };
            match r {
                Ok(v) => Ok(verdict_report(Ok(v), stats)),
                Err(e) if e.is_resource() => Ok(verdict_report(Err(false), stats)),
                Err(e) => Err(usage(e)),
            }
        }
        McLang::Mtl => {
            let k = doc
                .kripke
                .as_ref()
                .ok_or_else(|| file_error(&args.structure, "no `kripke` declaration"))?;
            let t = k.team(args.team.as_deref()).ok_or_else(|| usage(team_missing(args.team.as_deref())))?;
            let f = mtl_formula(&args.formula.formula)?;
            let mut ev = MtlEvaluator::new(&k.structure).with_budget(b);
            let r = ev.eval(&f, t);
            let s = ev.stats();
            let stats = StatsOut {
                nodes: s.nodes,
                splits: s.splits,
                alternations: 0,
                extra: extra(&[("successor_teams", s.supplements), ("memo_hits", s.memo_hits)]),
            };
            match r {
                Ok(v) => Ok(verdict_report(Ok(v), stats)),
                Err(e) if e.is_resource() => Ok(verdict_report(Err(false), stats)),
                Err(e) => Err(usage(e)),
            }
        }
    }
}

fn team_missing(name: Option<&str>) -> String {
    match name {
        Some(n) => format!("no team `{n}` in the structure file"),
        None => "the structure file must declare exactly one team, or pass --team".into(),
    }
}

fn extra(pairs: &[(&str, u64)]) -> serde_json::Map<String, serde_json::Value> {
    pairs.iter().map(|(k, v)| (k.to_string(), json!(v))).collect()
}

fn cmd_mc_so(args: &McSoArgs) -> Result<Report, Failure> {
    let doc = load_document(&args.structure)?;
    let a = doc
        .structure
        .as_ref()
        .ok_or_else(|| file_error(&args.structure, "no `domain` declaration"))?;
    let j = match &args.so_assignment {
        Some(path) => SoAssignment::parse(&read(path)?, a.domain_size()).map_err(|e| file_error(path, e))?,
        None => SoAssignment::new(),
    };
    let mut so_ctx = SoContext::default();
    for (name, v) in j.iter() {
        match v {
            SoValue::Rel(r) => so_ctx = so_ctx.with_relation(name, r.arity()),
            SoValue::Fun(g) => so_ctx = so_ctx.with_function(name, g.arity()),
            SoValue::Elem(_) => {}
        }
    }
    let vocab = match &args.formula.vocab {
        Some(path) => Vocabulary::parse_sidecar(&read(path)?, &mut DependencyRegistry::builtin())
            .map_err(|e| file_error(path, e))?,
        None => a.vocabulary(),
    };
    let f = parse_so(&args.formula.formula, &vocab, &so_ctx).map_err(|e| usage(format!("formula: {e}")))?;
    let mode = match args.mode {
        SoModeArg::Pruned => SoMode::Pruned,
        SoModeArg::Exhaustive => SoMode::Exhaustive,
    };
    let mut ev = SoEvaluator::new(a).with_mode(mode).with_budget(budget(args.budget));
    let r = ev.eval(&j, &f);
    let s = ev.stats();
    let stats = StatsOut {
        nodes: s.nodes,
        splits: 0,
        alternations: s.alternations,
        extra: extra(&[("candidates", s.candidates), ("memo_hits", s.memo_hits)]),
    };
    match r {
        Ok(v) => Ok(verdict_report(Ok(v), stats)),
        Err(e) if e.is_resource() => Ok(verdict_report(Err(false), stats)),
        Err(e) => Err(usage(e)),
    }
}

fn cmd_translate(cmd: &TranslateCmd, ctx: &Ctx) -> Result<Report, Failure> {
    match cmd {
        TranslateCmd::So(args) => {
            let (f, vocab, registry) = team_formula(&args.formula, None)?;
            let xs: Vec<String> = match &args.vars {
                Some(v) => v.iter().map(|s| s.trim().to_string()).filter(|s| !s.is_empty()).collect(),
                None => free_vars(&f).into_iter().collect(),
            };
            let mut taken: BTreeSet<String> = vocab.predicates().map(|(p, _)| p.to_string()).collect();
            taken.extend(vocab.functions().map(|(p, _)| p.to_string()));
            let r = match &args.relation {
                Some(r) => r.clone(),
                None if !taken.contains("T") => "T".into(),
                None => fresh_relation_names(1, &taken).remove(0),
            };
            let so = match &args.sparse {
                Some(s) => {
                    let p: SparseBound = s.parse().map_err(|e| usage(format!("--sparse: {e}")))?;
                    translate_zeta(&f, &xs, &r, &p, &registry)
                }
                None => translate_eta(&f, &xs, &r, &registry),
            }
            .map_err(usage)?;
            let mut rep = Report::plain("ok", print_so(&so, ctx.style));
            rep.details = Some(json!({"relation": r, "vars": xs}));
            Ok(rep)
        }
        TranslateCmd::St(args) => {
            let f = mtl_formula(&args.formula)?;
            let v: WorldVar = args.var.parse().map_err(|e| usage(format!("--var: {e}")))?;
            Ok(Report::plain("ok", print_team(&standard_translation(&f, v), ctx.style)))
        }
    }
}

fn cmd_dnf(args: &DnfArgs, ctx: &Ctx) -> Result<Report, Failure> {
    let (f, _, _) = team_formula(&args.formula, None)?;
    let d = dnf_expand(&f, args.budget).map_err(usage)?;
    let mut rep = Report::plain("ok", print_team(&d.reconstruct(), ctx.style));
    let disjuncts: Vec<_> = d
        .disjuncts
        .iter()
        .map(|c| {
            json!({
                "base": crate::syntax::print_fo(&c.base, ctx.style),
                "witnesses": c.witnesses.iter().map(|b| crate::syntax::print_fo(b, ctx.style)).collect::<Vec<_>>(),
            })
        })
        .collect();
    rep.details = Some(json!({"disjuncts": disjuncts, "size": d.size()}));
    Ok(rep)
}

fn solver_options(args: &SatArgs, ctx: &Ctx, registry: DependencyRegistry) -> SolverOptions {
    let mut o = SolverOptions::default().with_max_domain(args.max_domain).with_jobs(ctx.jobs).with_registry(registry);
    if let Some(b) = args.budget {
        o.max_checks = b;
    }
    o
}

fn solver_stats(s: SolverStats) -> StatsOut {
    StatsOut {
        nodes: s.checks,
        splits: 0,
        alternations: 0,
        extra: extra(&[("structures", s.structures), ("checks", s.checks), ("disjuncts", s.disjuncts)]),
    }
}

fn cmd_sat(args: &SatArgs, ctx: &Ctx) -> Result<Report, Failure> {
    let (f, vocab, registry) = team_formula(&args.formula, None)?;
    let opts = solver_options(args, ctx, registry);
    let (r, s) = if args.fo2 { sat_fo2(&f, &vocab, &opts) } else { sat_bounded(&f, &vocab, &opts) }.map_err(solver_failure)?;
    let mut rep = Report {
        verdict: String::new(),
        output: None,
        witness: None,
        stats: solver_stats(s),
        details: None,
        text: String::new(),
        exit: 0,
    };
    match r {
        SatResult::Sat { structure, team } => {
            let w = Witness::new(&structure, &team);
            rep.verdict = "Sat".into();
            rep.text = format!("Sat\n{}", w.text(&team));
            rep.witness = Some(w);
        }
        SatResult::UnsatUpTo(n) => {
            rep.verdict = format!("UnsatUpTo({n})");
            rep.text = rep.verdict.clone();
            rep.exit = 1;
        }
        SatResult::ResourceExhausted => {
            rep.verdict = "ResourceExhausted".into();
            rep.text = rep.verdict.clone();
            rep.exit = 2;
        }
    }
    Ok(rep)
}

fn cmd_valid(args: &SatArgs, ctx: &Ctx) -> Result<Report, Failure> {
    let (f, vocab, registry) = team_formula(&args.formula, None)?;
    let opts = solver_options(args, ctx, registry);
    let method = if args.fo2 { Method::TwoVariable } else { Method::Generic };
    let (r, s) = valid_bounded(&f, &vocab, &opts, method).map_err(solver_failure)?;
    let mut rep = Report {
        verdict: String::new(),
        output: None,
        witness: None,
        stats: solver_stats(s),
        details: None,
        text: String::new(),
        exit: 0,
    };
    match r {
        ValidResult::ValidUpTo(n) => {
            rep.verdict = format!("ValidUpTo({n})");
            rep.text = rep.verdict.clone();
        }
        ValidResult::Counterexample { structure, team } => {
            let w = Witness::new(&structure, &team);
            rep.verdict = "Counterexample".into();
            rep.text = format!("Counterexample\n{}", w.text(&team));
            rep.witness = Some(w);
            rep.exit = 1;
        }
        ValidResult::Unknown => {
            rep.verdict = "Unknown".into();
            rep.text = rep.verdict.clone();
            rep.exit = 2;
        }
    }
    Ok(rep)
}

fn solver_failure(e: crate::solver::SolverError) -> Failure {
    match e {
        crate::solver::SolverError::WitnessRejected(_) => Failure { code: EXIT_INTERNAL, message: e.to_string() },
        e => usage(e),
    }
}

fn reduction_report(a: Structure, t: Team, f: &TeamFormula, ctx: &Ctx) -> Report {
    let printed = print_team(f, ctx.style);
    let doc = Document { structure: Some(a), teams: vec![(None, t)], kripke: None };
    let mut rep = Report::plain("ok", printed.clone());
    rep.text = format!("{doc}# formula: {printed}");
    rep.details = Some(json!({"structure": doc.to_string(), "formula": printed}));
    rep
}

fn cmd_reduce(cmd: &ReduceCmd, ctx: &Ctx) -> Result<Report, Failure> {
    match cmd {
        ReduceCmd::PtlSat(args) => {
            let f = mtl_formula(&args.formula)?;
            let enc = if args.no_equality { Encoding::Predicate } else { Encoding::Equality };
            let (a, t, psi) = reduce_ptl_sat_to_mc(&f, enc).map_err(usage)?;
            Ok(reduction_report(a, t, &psi, ctx))
        }
        ReduceCmd::PtlMc(args) => {
            let f = mtl_formula(&args.formula)?;
            let doc = load_document(&args.structure)?;
            let k = doc
                .kripke
                .as_ref()
                .ok_or_else(|| file_error(&args.structure, "no `kripke` declaration"))?;
            let t = k.team(args.team.as_deref()).ok_or_else(|| usage(team_missing(args.team.as_deref())))?;
            let (a, team, psi) = reduce_ptl_mc_to_fo_mc(&k.structure, t, &f).map_err(usage)?;
            Ok(reduction_report(a, team, &psi, ctx))
        }
    }
}

fn cmd_random(args: &RandomArgs, ctx: &Ctx) -> Result<Report, Failure> {
    let mut rng = random::rng(ctx.seed);
    let n = args.size.max(1);
    let text = match args.kind {
        RandomKind::Team => {
            let shape = random::Shape::new(&["x", "y"], &[("P", 1), ("R", 2)]);
            print_team(&random::team_formula(&mut rng, n, &shape), ctx.style)
        }
        RandomKind::Mtl => {
            let props = vec!["p".to_string(), "q".to_string()];
            print_mtl(&random::mtl_formula(&mut rng, n, &props, 2), ctx.style)
        }
        RandomKind::Structure => {
            let preds = vec![("P".to_string(), 1), ("R".to_string(), 2)];
            let a = random::structure(&mut rng, n, &preds);
            let t = random::team(&mut rng, &["x".to_string(), "y".to_string()], n, 4);
            Document { structure: Some(a), teams: vec![(None, t)], kripke: None }.to_string()
        }
        RandomKind::Kripke => {
            if n > crate::structures::MAX_WORLDS {
                return Err(usage(format!("at most {} worlds", crate::structures::MAX_WORLDS)));
            }
            let props = vec!["p".to_string(), "q".to_string()];
            let k = random::kripke(&mut rng, n, &props);
            let t = k.all_worlds();
            write_kripke(&k, &[(None, t)])
        }
    };
    Ok(Report::plain("ok", text.trim_end().to_string()))
}

/// Runs `tlk` on `args` (including the program name), writing results to
/// `out` and diagnostics to `err`. Returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { 0 };
            let rendered = e.render().to_string();
            let _ = if code == 0 { write!(out, "{rendered}") } else { write!(err, "{rendered}") };
            return code;
        }
    };
    let ctx = Ctx { style: if cli.unicode { Style::Unicode } else { Style::Ascii }, jobs: cli.jobs.max(1), seed: cli.seed };
    let result = match &cli.command {
        Command::Parse(a) => cmd_parse(a, &ctx),
        Command::Mc(a) => cmd_mc(a),
        Command::McSo(a) => cmd_mc_so(a),
        Command::Translate(c) => cmd_translate(c, &ctx),
        Command::Dnf(a) => cmd_dnf(a, &ctx),
        Command::Sat(a) => cmd_sat(a, &ctx),
        Command::Valid(a) => cmd_valid(a, &ctx),
        Command::Reduce(c) => cmd_reduce(c, &ctx),
        Command::Random(a) => cmd_random(a, &ctx),
    };
    match result {
        Ok(rep) => {
            if cli.json {
                let _ = writeln!(out, "{}", serde_json::to_string(&rep).expect("serializable"));
            } else {
                let _ = writeln!(out, "{}", rep.text.trim_end());
            }
            rep.exit
        }
        Err(f) => {
            if cli.json {
                let _ = writeln!(out, "{}", json!({"verdict": "error", "error": f.message, "exit": f.code}));
            }
            let _ = writeln!(err, "tlk: {}", f.message);
            f.code
        }
    }
}
