//! Equivalence laws and the `\/ (a & NE b1 & ... & NE bk)` normal form.

use teamlogic::normal_form::{apply_law, build_gamma, dnf_expand, Direction, Law};
use teamlogic::syntax::{parse_team, print_fo, print_team, DependencyRegistry, Style, Vocabulary};

fn main() {
    let registry = DependencyRegistry::builtin();
    let vocab = Vocabulary::new().with_predicate("P", 1).unwrap().with_predicate("Q", 1).unwrap();
    let parse = |s: &str| parse_team(s, &vocab, &registry).unwrap();

    let samples = [
        (Law::SpreadBase, "P(x) & NE Q(x) & NE (!Q(x))"),
        (Law::ExistsOverWitness, "E x. (P(x) & NE Q(x))"),
        (Law::ForallOverTilde, "A x. ~P(x)"),
    ];
    for (law, text) in samples {
        let f = parse(text);
        let g = apply_law(law, &f, Direction::Forward).expect("law applies");
        println!("law {law}: {text}\n      => {}", print_team(&g, Style::Ascii));
    }

    let f = parse("~(P(x) | NE Q(x)) & A y. (NE P(y) | Q(y))");
    let d = dnf_expand(&f, 10_000).unwrap();
    println!("\nnormal form of {}:", print_team(&f, Style::Ascii));
    for c in &d.disjuncts {
        let wits: Vec<String> = c.witnesses.iter().map(|b| print_fo(b, Style::Ascii)).collect();
        println!("  base {}  witnesses [{}]", print_fo(&c.base, Style::Ascii), wits.join(", "));
        println!("    classical sentence: {}", print_fo(&build_gamma(c).unwrap(), Style::Ascii));
    }
}
