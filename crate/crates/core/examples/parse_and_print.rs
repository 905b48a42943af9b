//! Parse formulas in every language, print them in both styles, report
//! their measures and check the round trip.

use teamlogic::syntax::{
    free_vars, modal_depth, parse, parse_mtl, parse_team, print, print_mtl, print_team, quantifier_rank, size,
    width, DependencyRegistry, Language, Style, Vocabulary,
};

fn main() {
    let registry = DependencyRegistry::builtin();
    let vocab = Vocabulary::new().with_predicate("P", 1).unwrap().with_predicate("R", 2).unwrap();
    for text in ["A x. E y. (dep(x,y) & R(x,y))", "~(NE P(x)) | x = y", "E x. (P(x) \\/ NE R(x,x))"] {
        let f = parse_team(text, &vocab, &registry).unwrap();
        let ascii = print_team(&f, Style::Ascii);
        let unicode = print_team(&f, Style::Unicode);
        assert_eq!(parse_team(&ascii, &vocab, &registry).unwrap(), f);
        println!("{ascii}\n  {unicode}");
        println!("  size {} rank {} width {} free {:?}", size(&f), quantifier_rank(&f), width(&f), free_vars(&f));
    }
    for text in ["[](p | NE q)", "<>~p & []<>q"] {
        let f = parse_mtl(text).unwrap();
        println!("{}  depth {}", print_mtl(&f, Style::Unicode), modal_depth(&f));
    }
    let so = parse("E2 S:1. A x. (S(x) -> P(x))", Language::So, &vocab, &registry).unwrap();
    println!("{}", print(&so, Style::Unicode));
    match parse_team("E x. dep(x", &vocab, &registry) {
        Err(e) => println!("error at line {} column {}: {}", e.line, e.col, e.message),
        Ok(_) => unreachable!(),
    }
}
