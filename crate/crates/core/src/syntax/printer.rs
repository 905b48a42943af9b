//! Surface-syntax printer. The ASCII style is accepted back by the parser;
//! the Unicode style is for display only.

use std::fmt;

use super::ast::{
    DepAtom, FoFormula, Formula, MlFormula, MtlFormula, Quantifier, SoFormula, TeamFormula, Term,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum Style {
    #[default]
    Ascii,
    Unicode,
}

const IFF: u8 = 0;
const IMPLIES: u8 = 1;
const BOOL_OR: u8 = 2;
const OR: u8 = 3;
const AND: u8 = 4;
const EQUALITY: u8 = 5;
const ATOM: u8 = 6;

struct Out {
    text: String,
    prec: u8,
    /// Ends in a prefix form, which would swallow anything printed after it.
    open: bool,
}

impl Out {
    fn atom(text: String) -> Self {
        Out { text, prec: ATOM, open: false }
    }

    fn paren(self) -> String {
        format!("({})", self.text)
    }
}

struct Printer {
    style: Style,
}

impl Printer {
    fn sym(&self, ascii: &'static str, unicode: &'static str) -> &'static str {
        match self.style {
            Style::Ascii => ascii,
            Style::Unicode => unicode,
        }
    }

    fn binary(&self, prec: u8, op: &str, l: Out, r: Out, right_assoc: bool) -> Out {
        let lp = l.open || l.prec < prec || (right_assoc && l.prec == prec);
        let rp = r.prec < prec || (!right_assoc && r.prec == prec);
        let open = !rp && r.open;
        let l = if lp { l.paren() } else { l.text };
        let r = if rp { r.paren() } else { r.text };
        Out { text: format!("{l} {op} {r}"), prec, open }
    }

    fn prefix(&self, head: String, body: Out) -> Out {
        let body = if body.prec < ATOM { body.paren() } else { body.text };
        Out { text: format!("{head}{body}"), prec: ATOM, open: true }
    }

    fn quant(&self, q: Quantifier, var: &str) -> String {
        match (self.style, q) {
            (Style::Ascii, Quantifier::Exists) => format!("E {var}. "),
            (Style::Ascii, Quantifier::Forall) => format!("A {var}. "),
            (Style::Unicode, Quantifier::Exists) => format!("∃{var} "),
            (Style::Unicode, Quantifier::Forall) => format!("∀{var} "),
        }
    }

    fn nonempty(&self, beta: Out) -> Out {
        let beta = if beta.prec < ATOM || beta.open { beta.paren() } else { beta.text };
        Out::atom(format!("{}{beta}", self.sym("NE ", "E ")))
    }

    fn term(&self, t: &Term) -> String {
        match t {
            Term::Var(v) => v.clone(),
            Term::App(f, args) if args.is_empty() => f.clone(),
            Term::App(f, args) => format!("{f}({})", self.terms(args)),
        }
    }

    fn terms(&self, ts: &[Term]) -> String {
        ts.iter().map(|t| self.term(t)).collect::<Vec<_>>().join(",")
    }

    fn application(&self, name: &str, args: &[Term]) -> Out {
        if args.is_empty() {
            Out::atom(name.to_string())
        } else {
            Out::atom(format!("{name}({})", self.terms(args)))
        }
    }

    fn equality(&self, l: &Term, r: &Term) -> Out {
        Out { text: format!("{} = {}", self.term(l), self.term(r)), prec: EQUALITY, open: false }
    }

    fn constant(&self, value: bool) -> Out {
        Out::atom(if value { self.sym("top", "⊤") } else { self.sym("bot", "⊥") }.to_string())
    }

    fn fo(&self, f: &FoFormula) -> Out {
        match f {
            FoFormula::True => self.constant(true),
            FoFormula::False => self.constant(false),
            FoFormula::Pred(p, args) => self.application(p, args),
            FoFormula::Eq(l, r) => self.equality(l, r),
            FoFormula::Not(a) => self.prefix(self.sym("!", "¬").into(), self.fo(a)),
            FoFormula::And(a, b) => self.binary(AND, self.sym("&", "∧"), self.fo(a), self.fo(b), false),
            FoFormula::Or(a, b) => self.binary(OR, self.sym("|", "∨"), self.fo(a), self.fo(b), false),
            FoFormula::Exists(x, a) => self.prefix(self.quant(Quantifier::Exists, x), self.fo(a)),
            FoFormula::Forall(x, a) => self.prefix(self.quant(Quantifier::Forall, x), self.fo(a)),
        }
    }

    fn dep(&self, d: &DepAtom) -> Out {
        self.application(&d.name, &d.args)
    }

    fn team(&self, f: &TeamFormula) -> Out {
        if let Some(beta) = f.as_nonempty() {
            return self.nonempty(self.fo(beta));
        }
        if let Some((a, b)) = f.as_bool_or() {
            return self.binary(BOOL_OR, self.sym("\\/", "⩔"), self.team(a), self.team(b), false);
        }
        match f {
            TeamFormula::Fo(a) => self.fo(a),
            TeamFormula::Dep(d) => self.dep(d),
            TeamFormula::Tilde(a) => self.prefix(self.sym("~", "∼").into(), self.team(a)),
            TeamFormula::And(a, b) => {
                self.binary(AND, self.sym("&", "∧"), self.team(a), self.team(b), false)
            }
            TeamFormula::Or(a, b) => {
                self.binary(OR, self.sym("|", "∨"), self.team(a), self.team(b), false)
            }
            TeamFormula::Exists(x, a) => {
                self.prefix(self.quant(Quantifier::Exists, x), self.team(a))
            }
            TeamFormula::Forall(x, a) => {
                self.prefix(self.quant(Quantifier::Forall, x), self.team(a))
            }
        }
    }

    fn ml(&self, f: &MlFormula) -> Out {
        match f {
            MlFormula::True => self.constant(true),
            MlFormula::False => self.constant(false),
            MlFormula::Prop(p) => Out::atom(p.clone()),
            MlFormula::Not(a) => self.prefix(self.sym("!", "¬").into(), self.ml(a)),
            MlFormula::And(a, b) => self.binary(AND, self.sym("&", "∧"), self.ml(a), self.ml(b), false),
            MlFormula::Or(a, b) => self.binary(OR, self.sym("|", "∨"), self.ml(a), self.ml(b), false),
            MlFormula::Necessarily(a) => self.prefix(self.sym("[]", "◻").into(), self.ml(a)),
            MlFormula::Possibly(a) => self.prefix(self.sym("<>", "◇").into(), self.ml(a)),
        }
    }

    fn mtl(&self, f: &MtlFormula) -> Out {
        match f {
            MtlFormula::Tilde(inner) => {
                if let MtlFormula::Ml(MlFormula::Not(alpha)) = inner.as_ref() {
                    return self.nonempty(self.ml(alpha));
                }
                if let MtlFormula::And(l, r) = inner.as_ref() {
                    if let (MtlFormula::Tilde(a), MtlFormula::Tilde(b)) = (l.as_ref(), r.as_ref()) {
                        return self.binary(
                            BOOL_OR,
                            self.sym("\\/", "⩔"),
                            self.mtl(a),
                            self.mtl(b),
                            false,
                        );
                    }
                }
                self.prefix(self.sym("~", "∼").into(), self.mtl(inner))
            }
            MtlFormula::Ml(a) => self.ml(a),
            MtlFormula::And(a, b) => {
                self.binary(AND, self.sym("&", "∧"), self.mtl(a), self.mtl(b), false)
            }
            MtlFormula::Or(a, b) => self.binary(OR, self.sym("|", "∨"), self.mtl(a), self.mtl(b), false),
            MtlFormula::Necessarily(a) => self.prefix(self.sym("[]", "◻").into(), self.mtl(a)),
            MtlFormula::Possibly(a) => self.prefix(self.sym("<>", "◇").into(), self.mtl(a)),
        }
    }

    fn so(&self, f: &SoFormula) -> Out {
        match f {
            SoFormula::True => self.constant(true),
            SoFormula::False => self.constant(false),
            SoFormula::Atom(p, args) => self.application(p, args),
            SoFormula::Eq(l, r) => self.equality(l, r),
            SoFormula::Not(a) => self.prefix(self.sym("!", "¬").into(), self.so(a)),
            SoFormula::And(a, b) => self.binary(AND, self.sym("&", "∧"), self.so(a), self.so(b), false),
            SoFormula::Or(a, b) => self.binary(OR, self.sym("|", "∨"), self.so(a), self.so(b), false),
            SoFormula::Implies(a, b) => {
                self.binary(IMPLIES, self.sym("->", "→"), self.so(a), self.so(b), true)
            }
            SoFormula::Iff(a, b) => self.binary(IFF, self.sym("<->", "↔"), self.so(a), self.so(b), true),
            SoFormula::Elem(q, x, a) => self.prefix(self.quant(*q, x), self.so(a)),
            SoFormula::Rel(q, name, arity, bound, a) => {
                let head = match (self.style, bound) {
                    (Style::Ascii, None) => format!("{}2 {name}:{arity}. ", quant_letter(*q)),
                    (Style::Ascii, Some(p)) => {
                        format!("{}p[{p}] {name}:{arity}. ", quant_letter(*q))
                    }
                    (Style::Unicode, None) => format!("{}{name}/{arity} ", quant_symbol(*q)),
                    (Style::Unicode, Some(p)) => {
                        format!("{}^[{p}] {name}/{arity} ", quant_symbol(*q))
                    }
                };
                self.prefix(head, self.so(a))
            }
            SoFormula::Fun(q, name, arity, a) => {
                let head = match self.style {
                    Style::Ascii => format!("{}F {name}:{arity}. ", quant_letter(*q)),
                    Style::Unicode => format!("{}{name}/{arity} ", quant_symbol(*q)),
                };
                self.prefix(head, self.so(a))
            }
        }
    }
}

fn quant_letter(q: Quantifier) -> &'static str {
    match q {
        Quantifier::Exists => "E",
        Quantifier::Forall => "A",
    }
}

fn quant_symbol(q: Quantifier) -> &'static str {
    match q {
        Quantifier::Exists => "∃",
        Quantifier::Forall => "∀",
    }
}

pub fn print_term(t: &Term) -> String {
    Printer { style: Style::Ascii }.term(t)
}

pub fn print_fo(f: &FoFormula, style: Style) -> String {
    Printer { style }.fo(f).text
}

pub fn print_team(f: &TeamFormula, style: Style) -> String {
    Printer { style }.team(f).text
}

pub fn print_mtl(f: &MtlFormula, style: Style) -> String {
    Printer { style }.mtl(f).text
}

pub fn print_so(f: &SoFormula, style: Style) -> String {
    Printer { style }.so(f).text
}

pub fn print(f: &Formula, style: Style) -> String {
    match f {
        Formula::Fo(f) => print_fo(f, style),
        Formula::Team(f) => print_team(f, style),
        Formula::Mtl(f) => print_mtl(f, style),
        Formula::So(f) => print_so(f, style),
    }
}

macro_rules! display_ascii {
    ($ty:ty, $func:ident) => {
        impl fmt::Display for $ty {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                f.write_str(&$func(self, Style::Ascii))
            }
        }
    };
}

display_ascii!(FoFormula, print_fo);
display_ascii!(TeamFormula, print_team);
display_ascii!(MtlFormula, print_mtl);
display_ascii!(SoFormula, print_so);
display_ascii!(Formula, print);

impl fmt::Display for MlFormula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&Printer { style: Style::Ascii }.ml(self).text)
    }
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&print_term(self))
    }
}
