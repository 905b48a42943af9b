//! Recursive-descent parser for the four formula languages.
//!
//! Text is first parsed into a language-neutral raw tree, which is then
//! elaborated against a vocabulary (and dependency registry) into the
//! typed AST of the requested language.
//!
//! ```text
//! formula := '~' formula | '!' formula | quant | binop
//! quant   := ('E'|'A') ident '.' formula
//! binop   := atom { ('&'|'|'|'\/') atom }        & > | > \/, left-assoc
//! atom    := ident '(' term {',' term} ')' | term '=' term
//!          | 'NE' atom | '(' formula ')' | 'top' | 'bot' | ident
//! ```
//!
//! MTL adds `<>` and `[]`. Second-order formulas add `->`, `<->` (lowest
//! precedence, right-assoc) and the quantifiers
//! `E2 X:2.`, `A2 X:2.`, `Ep[poly:0,0,1] X:2.`, `Ap[team:4,2] X:2.`,
//! `EF f:1.`, `AF f:1.`.

use thiserror::Error;

use super::ast::{
    Formula, FoFormula, Language, MlFormula, MtlFormula, Quantifier, SoFormula, SparseBound,
    TeamFormula, Term,
};
use super::lexer::{tokenize, Pos, Tok};
use super::vocab::{DependencyError, DependencyRegistry, Vocabulary};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ErrorKind {
    Syntax,
    Arity,
    UnknownSymbol,
    UnknownDependency,
    /// A construct that exists in the grammar but not in the requested language.
    NotAllowed,
}

#[derive(Clone, Debug, Error, PartialEq, Eq)]
#[error("line {line}, column {col}: {message}")]
pub struct ParseError {
    pub line: usize,
    pub col: usize,
    pub kind: ErrorKind,
    pub message: String,
}

impl ParseError {
    pub(crate) fn new(pos: Pos, kind: ErrorKind, message: impl Into<String>) -> Self {
        ParseError { line: pos.line, col: pos.col, kind, message: message.into() }
    }
}

const KEYWORDS: &[&str] = &["E", "A", "NE", "top", "bot", "E2", "A2", "Ep", "Ap", "EF", "AF"];

pub fn is_keyword(name: &str) -> bool {
    KEYWORDS.contains(&name)
}

#[derive(Clone, Debug)]
struct RawTerm {
    name: String,
    args: Option<Vec<RawTerm>>,
    pos: Pos,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum BinOp {
    And,
    Or,
    BoolOr,
    Implies,
    Iff,
}

#[derive(Clone, Debug)]
enum Raw {
    Top,
    Bot,
    Atom(RawTerm),
    Eq(RawTerm, RawTerm, Pos),
    Not(Box<Raw>, Pos),
    Tilde(Box<Raw>, Pos),
    Ne(Box<Raw>, Pos),
    Bin(BinOp, Box<Raw>, Box<Raw>, Pos),
    Quant(Quantifier, String, Box<Raw>, Pos),
    Modal(bool, Box<Raw>, Pos),
    RelQuant(Quantifier, String, usize, Option<SparseBound>, Box<Raw>, Pos),
    FunQuant(Quantifier, String, usize, Box<Raw>, Pos),
}

struct Parser {
    toks: Vec<(Tok, Pos)>,
    at: usize,
}

impl Parser {
    fn peek(&self) -> &Tok {
        &self.toks[self.at].0
    }

    fn pos(&self) -> Pos {
        self.toks[self.at].1
    }

    fn bump(&mut self) -> (Tok, Pos) {
        let t = self.toks[self.at].clone();
        if self.at + 1 < self.toks.len() {
            self.at += 1;
        }
        t
    }

    fn unexpected(&self, wanted: &str) -> ParseError {
        ParseError::new(
            self.pos(),
            ErrorKind::Syntax,
            format!("expected {wanted}, found {}", self.peek().describe()),
        )
    }

    fn expect(&mut self, tok: Tok) -> Result<Pos, ParseError> {
        if *self.peek() == tok {
            Ok(self.bump().1)
        } else {
            Err(self.unexpected(&tok.describe()))
        }
    }

    fn ident(&mut self, what: &str) -> Result<(String, Pos), ParseError> {
        match self.peek().clone() {
            Tok::Ident(s) if !is_keyword(&s) => {
                let pos = self.bump().1;
                Ok((s, pos))
            }
            _ => Err(self.unexpected(what)),
        }
    }

    fn number(&mut self, what: &str) -> Result<u64, ParseError> {
        match *self.peek() {
            Tok::Number(n) => {
                self.bump();
                Ok(n)
            }
            _ => Err(self.unexpected(what)),
        }
    }

    fn formula(&mut self) -> Result<Raw, ParseError> {
        self.level(0)
    }

    fn level(&mut self, level: u8) -> Result<Raw, ParseError> {
        match level {
            0 | 1 => {
                let (tok, op) = if level == 0 {
                    (Tok::DoubleArrow, BinOp::Iff)
                } else {
                    (Tok::Arrow, BinOp::Implies)
                };
                let lhs = self.level(level + 1)?;
                if *self.peek() == tok {
                    let pos = self.bump().1;
                    let rhs = self.level(level)?;
                    Ok(Raw::Bin(op, Box::new(lhs), Box::new(rhs), pos))
                } else {
                    Ok(lhs)
                }
            }
            2..=4 => {
                let (tok, op) = match level {
                    2 => (Tok::BoolOr, BinOp::BoolOr),
                    3 => (Tok::Bar, BinOp::Or),
                    _ => (Tok::Amp, BinOp::And),
                };
                let mut lhs = self.level(level + 1)?;
                while *self.peek() == tok {
                    let pos = self.bump().1;
                    let rhs = self.level(level + 1)?;
                    lhs = Raw::Bin(op, Box::new(lhs), Box::new(rhs), pos);
                }
                Ok(lhs)
            }
            _ => self.unary(),
        }
    }

    fn unary(&mut self) -> Result<Raw, ParseError> {
        let pos = self.pos();
        match self.peek().clone() {
            Tok::Tilde => {
                self.bump();
                Ok(Raw::Tilde(Box::new(self.formula()?), pos))
            }
            Tok::Bang => {
                self.bump();
                Ok(Raw::Not(Box::new(self.formula()?), pos))
            }
            Tok::Diamond | Tok::BoxOp => {
                let diamond = self.bump().0 == Tok::Diamond;
                Ok(Raw::Modal(diamond, Box::new(self.formula()?), pos))
            }
            Tok::Ident(k) if k == "E" || k == "A" => {
                self.bump();
                let q = if k == "E" { Quantifier::Exists } else { Quantifier::Forall };
                let (var, _) = self.ident("a variable")?;
                self.expect(Tok::Dot)?;
                Ok(Raw::Quant(q, var, Box::new(self.formula()?), pos))
            }
            Tok::Ident(k) if matches!(k.as_str(), "E2" | "A2" | "Ep" | "Ap" | "EF" | "AF") => {
                self.bump();
                let q = if k.starts_with('E') { Quantifier::Exists } else { Quantifier::Forall };
                let bound = if k.ends_with('p') { Some(self.sparse_bound()?) } else { None };
                let (name, _) = self.ident("a second-order variable")?;
                self.expect(Tok::Colon)?;
                let arity = self.number("an arity")? as usize;
                self.expect(Tok::Dot)?;
                let body = Box::new(self.formula()?);
                if k.ends_with('F') {
                    Ok(Raw::FunQuant(q, name, arity, body, pos))
                } else {
                    Ok(Raw::RelQuant(q, name, arity, bound, body, pos))
                }
            }
            _ => self.atom(),
        }
    }

    fn sparse_bound(&mut self) -> Result<SparseBound, ParseError> {
        self.expect(Tok::LBracket)?;
        let (kind, kind_pos) = self.ident("`poly` or `team`")?;
        self.expect(Tok::Colon)?;
        let mut nums = vec![self.number("a coefficient")?];
        while *self.peek() == Tok::Comma {
            self.bump();
            nums.push(self.number("a coefficient")?);
        }
        self.expect(Tok::RBracket)?;
        match kind.as_str() {
            "poly" => Ok(SparseBound::Poly(nums)),
            "team" if nums.len() == 2 => Ok(SparseBound::TeamScaled {
                team_size: nums[0],
                exponent: u32::try_from(nums[1]).map_err(|_| {
                    ParseError::new(kind_pos, ErrorKind::Syntax, "exponent too large")
                })?,
            }),
            "team" => Err(ParseError::new(
                kind_pos,
                ErrorKind::Syntax,
                "`team` bound takes exactly two numbers: team size and exponent",
            )),
            other => Err(ParseError::new(
                kind_pos,
                ErrorKind::Syntax,
                format!("unknown bound kind `{other}` (expected poly or team)"),
            )),
        }
    }

    fn atom(&mut self) -> Result<Raw, ParseError> {
        let pos = self.pos();
        match self.peek().clone() {
            Tok::LParen => {
                self.bump();
                let inner = self.formula()?;
                self.expect(Tok::RParen)?;
                Ok(inner)
            }
            Tok::Ident(k) if k == "top" => {
                self.bump();
                Ok(Raw::Top)
            }
            Tok::Ident(k) if k == "bot" => {
                self.bump();
                Ok(Raw::Bot)
            }
            Tok::Ident(k) if k == "NE" => {
                self.bump();
                Ok(Raw::Ne(Box::new(self.atom()?), pos))
            }
            Tok::Ident(k) if !is_keyword(&k) => {
                let lhs = self.term()?;
                if *self.peek() == Tok::Equals {
                    let eq_pos = self.bump().1;
                    let rhs = self.term()?;
                    Ok(Raw::Eq(lhs, rhs, eq_pos))
                } else {
                    Ok(Raw::Atom(lhs))
                }
            }
            _ => Err(self.unexpected("a formula")),
        }
    }

    fn term(&mut self) -> Result<RawTerm, ParseError> {
        let (name, pos) = self.ident("a term")?;
        let args = if *self.peek() == Tok::LParen {
            self.bump();
            let mut args = vec![self.term()?];
            while *self.peek() == Tok::Comma {
                self.bump();
                args.push(self.term()?);
            }
            self.expect(Tok::RParen)?;
            Some(args)
        } else {
            None
        };
        Ok(RawTerm { name, args, pos })
    }
}

fn parse_raw(text: &str) -> Result<Raw, ParseError> {
    let mut p = Parser { toks: tokenize(text)?, at: 0 };
    let f = p.formula()?;
    if *p.peek() != Tok::Eof {
        return Err(p.unexpected("an operator or end of input"));
    }
    Ok(f)
}

/// Free second-order variables in scope when parsing a second-order formula.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SoContext {
    pub relations: Vec<(String, usize)>,
    pub functions: Vec<(String, usize)>,
}

impl SoContext {
    pub fn with_relation(mut self, name: &str, arity: usize) -> Self {
        self.relations.push((name.to_string(), arity));
        self
    }

    pub fn with_function(mut self, name: &str, arity: usize) -> Self {
        self.functions.push((name.to_string(), arity));
        self
    }
}

struct Elab<'a> {
    vocab: &'a Vocabulary,
    registry: &'a DependencyRegistry,
    bound: Vec<String>,
    rels: Vec<(String, usize)>,
    funs: Vec<(String, usize)>,
    language: Language,
}

fn not_allowed(pos: Pos, what: &str, lang: Language) -> ParseError {
    let lang = match lang {
        Language::Fo => "first-order",
        Language::Team => "team",
        Language::Mtl => "modal team",
        Language::So => "second-order",
    };
    ParseError::new(pos, ErrorKind::NotAllowed, format!("{what} is not available in {lang} formulas"))
}

fn arity_error(pos: Pos, kind: &str, name: &str, expected: usize, found: usize) -> ParseError {
    ParseError::new(
        pos,
        ErrorKind::Arity,
        format!("{kind} `{name}` expects {expected} argument(s), found {found}"),
    )
}

fn lookup<'v>(scope: &'v [(String, usize)], name: &str) -> Option<&'v usize> {
    scope.iter().rev().find(|(n, _)| n == name).map(|(_, a)| a)
}

impl Elab<'_> {
    fn term(&self, t: &RawTerm) -> Result<Term, ParseError> {
        let found = t.args.as_ref().map_or(0, Vec::len);
        if t.args.is_none() && self.bound.contains(&t.name) {
            return Ok(Term::Var(t.name.clone()));
        }
        let declared = lookup(&self.funs, &t.name)
            .copied()
            .or_else(|| self.vocab.function_arity(&t.name));
        match (declared, &t.args) {
            (Some(a), _) if a != found => Err(arity_error(t.pos, "function", &t.name, a, found)),
            (Some(_), args) => {
                let args = args
                    .iter()
                    .flatten()
                    .map(|a| self.term(a))
                    .collect::<Result<Vec<_>, _>>()?;
                Ok(Term::App(t.name.clone(), args))
            }
            (None, None) => Ok(Term::Var(t.name.clone())),
            (None, Some(_)) => Err(ParseError::new(
                t.pos,
                ErrorKind::UnknownSymbol,
                format!("unknown function `{}`", t.name),
            )),
        }
    }

    fn terms(&self, args: &Option<Vec<RawTerm>>) -> Result<Vec<Term>, ParseError> {
        args.iter().flatten().map(|a| self.term(a)).collect()
    }

    fn equality(&self, l: &RawTerm, r: &RawTerm, pos: Pos) -> Result<(Term, Term), ParseError> {
        if self.language != Language::So && !self.vocab.equality() {
            return Err(ParseError::new(
                pos,
                ErrorKind::UnknownSymbol,
                "equality is not part of the vocabulary",
            ));
        }
        Ok((self.term(l)?, self.term(r)?))
    }

    fn predicate(&self, a: &RawTerm) -> Result<Option<FoFormula>, ParseError> {
        let found = a.args.as_ref().map_or(0, Vec::len);
        match self.vocab.predicate_arity(&a.name) {
            Some(ar) if ar != found => Err(arity_error(a.pos, "predicate", &a.name, ar, found)),
            Some(_) => Ok(Some(FoFormula::Pred(a.name.clone(), self.terms(&a.args)?))),
            None => Ok(None),
        }
    }

    fn with_bound<T>(
        &mut self,
        var: &str,
        f: impl FnOnce(&mut Self) -> Result<T, ParseError>,
    ) -> Result<T, ParseError> {
        self.bound.push(var.to_string());
        let r = f(self);
        self.bound.pop();
        r
    }

    fn fo(&mut self, raw: &Raw) -> Result<FoFormula, ParseError> {
        let lang = self.language;
        match raw {
            Raw::Top => Ok(FoFormula::True),
            Raw::Bot => Ok(FoFormula::False),
            Raw::Atom(a) => self.predicate(a)?.ok_or_else(|| {
                ParseError::new(
                    a.pos,
                    ErrorKind::UnknownSymbol,
                    format!("unknown predicate `{}`", a.name),
                )
            }),
            Raw::Eq(l, r, pos) => {
                let (l, r) = self.equality(l, r, *pos)?;
                Ok(FoFormula::Eq(l, r))
            }
            Raw::Not(a, _) => Ok(self.fo(a)?.not()),
            Raw::Bin(BinOp::And, a, b, _) => Ok(self.fo(a)?.and(self.fo(b)?)),
            Raw::Bin(BinOp::Or, a, b, _) => Ok(self.fo(a)?.or(self.fo(b)?)),
            Raw::Quant(q, x, body, _) => {
                let body = self.with_bound(x, |e| e.fo(body))?;
                Ok(match q {
                    Quantifier::Exists => FoFormula::exists(x.clone(), body),
                    Quantifier::Forall => FoFormula::forall(x.clone(), body),
                })
            }
            Raw::Tilde(_, pos) => Err(not_allowed(*pos, "`~`", lang)),
            Raw::Ne(_, pos) => Err(not_allowed(*pos, "`NE`", lang)),
            Raw::Bin(BinOp::BoolOr, _, _, pos) => Err(not_allowed(*pos, "`\\/`", lang)),
            Raw::Bin(_, _, _, pos) => Err(not_allowed(*pos, "`->`/`<->`", lang)),
            Raw::Modal(_, _, pos) => Err(not_allowed(*pos, "a modality", lang)),
            Raw::RelQuant(.., pos) | Raw::FunQuant(.., pos) => {
                Err(not_allowed(*pos, "a second-order quantifier", lang))
            }
        }
    }

    fn team(&mut self, raw: &Raw) -> Result<TeamFormula, ParseError> {
        let lang = self.language;
        let first_order = |f: TeamFormula, pos: Pos, what: &str| {
            f.to_fo().ok_or_else(|| {
                ParseError::new(
                    pos,
                    ErrorKind::NotAllowed,
                    format!("{what} applies only to first-order formulas"),
                )
            })
        };
        match raw {
            Raw::Top => Ok(FoFormula::True.into()),
            Raw::Bot => Ok(FoFormula::False.into()),
            Raw::Atom(a) => {
                if let Some(p) = self.predicate(a)? {
                    return Ok(p.into());
                }
                let args = self.terms(&a.args)?;
                match self.registry.resolve(&a.name, args.len()) {
                    Ok(_) => Ok(TeamFormula::dep(a.name.clone(), args)),
                    Err(DependencyError::Unknown(name)) => {
                        let lower = name.starts_with(|c: char| c.is_lowercase());
                        let (kind, what) = if lower {
                            (ErrorKind::UnknownDependency, "dependency")
                        } else {
                            (ErrorKind::UnknownSymbol, "predicate")
                        };
                        Err(ParseError::new(a.pos, kind, format!("unknown {what} `{name}`")))
                    }
                    Err(e @ DependencyError::Arity { .. }) => {
                        Err(ParseError::new(a.pos, ErrorKind::Arity, e.to_string()))
                    }
                }
            }
            Raw::Eq(l, r, pos) => {
                let (l, r) = self.equality(l, r, *pos)?;
                Ok(FoFormula::Eq(l, r).into())
            }
            Raw::Not(a, pos) => {
                let inner = self.team(a)?;
                Ok(first_order(inner, *pos, "classical negation `!`")?.not().into())
            }
            Raw::Ne(a, pos) => {
                let inner = self.team(a)?;
                Ok(TeamFormula::nonempty(first_order(inner, *pos, "`NE`")?))
            }
            Raw::Tilde(a, _) => Ok(self.team(a)?.tilde()),
            Raw::Bin(BinOp::And, a, b, _) => Ok(self.team(a)?.and(self.team(b)?)),
            Raw::Bin(BinOp::Or, a, b, _) => Ok(self.team(a)?.or(self.team(b)?)),
            Raw::Bin(BinOp::BoolOr, a, b, _) => Ok(self.team(a)?.bool_or(self.team(b)?)),
            Raw::Bin(_, _, _, pos) => Err(not_allowed(*pos, "`->`/`<->`", lang)),
            Raw::Quant(q, x, body, _) => {
                let body = self.with_bound(x, |e| e.team(body))?;
                Ok(match q {
                    Quantifier::Exists => TeamFormula::exists(x.clone(), body),
                    Quantifier::Forall => TeamFormula::forall(x.clone(), body),
                })
            }
            Raw::Modal(_, _, pos) => Err(not_allowed(*pos, "a modality", lang)),
            Raw::RelQuant(.., pos) | Raw::FunQuant(.., pos) => {
                Err(not_allowed(*pos, "a second-order quantifier", lang))
            }
        }
    }

    fn mtl(&mut self, raw: &Raw) -> Result<MtlFormula, ParseError> {
        let lang = self.language;
        let classical = |f: MtlFormula, pos: Pos, what: &str| match f {
            MtlFormula::Ml(m) => Ok(m),
            _ => Err(ParseError::new(
                pos,
                ErrorKind::NotAllowed,
                format!("{what} applies only to classical modal formulas"),
            )),
        };
        match raw {
            Raw::Top => Ok(MlFormula::True.into()),
            Raw::Bot => Ok(MlFormula::False.into()),
            Raw::Atom(a) => {
                if a.args.is_some() {
                    return Err(ParseError::new(
                        a.pos,
                        ErrorKind::Syntax,
                        format!("proposition `{}` takes no arguments", a.name),
                    ));
                }
                if !a.name.starts_with(|c: char| c.is_ascii_lowercase()) || a.name == "r" {
                    return Err(ParseError::new(
                        a.pos,
                        ErrorKind::UnknownSymbol,
                        format!(
                            "`{}` is not a proposition (propositions start with a lowercase letter; `r` is reserved)",
                            a.name
                        ),
                    ));
                }
                Ok(MtlFormula::prop(a.name.clone()))
            }
            Raw::Not(a, pos) => {
                let inner = self.mtl(a)?;
                Ok(classical(inner, *pos, "classical negation `!`")?.not().into())
            }
            Raw::Ne(a, pos) => {
                let inner = self.mtl(a)?;
                Ok(MtlFormula::nonempty(classical(inner, *pos, "`NE`")?))
            }
            Raw::Tilde(a, _) => Ok(self.mtl(a)?.tilde()),
            Raw::Bin(BinOp::And, a, b, _) => Ok(self.mtl(a)?.and(self.mtl(b)?)),
            Raw::Bin(BinOp::Or, a, b, _) => Ok(self.mtl(a)?.or(self.mtl(b)?)),
            Raw::Bin(BinOp::BoolOr, a, b, _) => Ok(self.mtl(a)?.bool_or(self.mtl(b)?)),
            Raw::Bin(_, _, _, pos) => Err(not_allowed(*pos, "`->`/`<->`", lang)),
            Raw::Modal(true, a, _) => Ok(self.mtl(a)?.possibly()),
            Raw::Modal(false, a, _) => Ok(self.mtl(a)?.necessarily()),
            Raw::Eq(_, _, pos) => Err(not_allowed(*pos, "equality", lang)),
            Raw::Quant(.., pos) => Err(not_allowed(*pos, "a quantifier", lang)),
            Raw::RelQuant(.., pos) | Raw::FunQuant(.., pos) => {
                Err(not_allowed(*pos, "a second-order quantifier", lang))
            }
        }
    }

    fn so(&mut self, raw: &Raw) -> Result<SoFormula, ParseError> {
        let lang = self.language;
        match raw {
            Raw::Top => Ok(SoFormula::True),
            Raw::Bot => Ok(SoFormula::False),
            Raw::Atom(a) => {
                let found = a.args.as_ref().map_or(0, Vec::len);
                let declared = lookup(&self.rels, &a.name)
                    .copied()
                    .or_else(|| self.vocab.predicate_arity(&a.name));
                match declared {
                    Some(ar) if ar != found => {
                        Err(arity_error(a.pos, "relation", &a.name, ar, found))
                    }
                    Some(_) => Ok(SoFormula::Atom(a.name.clone(), self.terms(&a.args)?)),
                    None => Err(ParseError::new(
                        a.pos,
                        ErrorKind::UnknownSymbol,
                        format!("unknown relation `{}`", a.name),
                    )),
                }
            }
            Raw::Eq(l, r, pos) => {
                let (l, r) = self.equality(l, r, *pos)?;
                Ok(SoFormula::Eq(l, r))
            }
            Raw::Not(a, _) => Ok(self.so(a)?.not()),
            Raw::Bin(op, a, b, pos) => {
                let (a, b) = (self.so(a)?, self.so(b)?);
                match op {
                    BinOp::And => Ok(a.and(b)),
                    BinOp::Or => Ok(a.or(b)),
                    BinOp::Implies => Ok(a.implies(b)),
                    BinOp::Iff => Ok(a.iff(b)),
                    BinOp::BoolOr => Err(not_allowed(*pos, "`\\/`", lang)),
                }
            }
            Raw::Quant(q, x, body, _) => {
                let body = self.with_bound(x, |e| e.so(body))?;
                Ok(SoFormula::Elem(*q, x.clone(), Box::new(body)))
            }
            Raw::RelQuant(q, name, arity, bound, body, _) => {
                self.rels.push((name.clone(), *arity));
                let body = self.so(body);
                self.rels.pop();
                Ok(SoFormula::Rel(*q, name.clone(), *arity, bound.clone(), Box::new(body?)))
            }
            Raw::FunQuant(q, name, arity, body, _) => {
                self.funs.push((name.clone(), *arity));
                let body = self.so(body);
                self.funs.pop();
                Ok(SoFormula::Fun(*q, name.clone(), *arity, Box::new(body?)))
            }
            Raw::Tilde(_, pos) => Err(not_allowed(*pos, "`~`", lang)),
            Raw::Ne(_, pos) => Err(not_allowed(*pos, "`NE`", lang)),
            Raw::Modal(_, _, pos) => Err(not_allowed(*pos, "a modality", lang)),
        }
    }
}

fn elab<'a>(
    vocab: &'a Vocabulary,
    registry: &'a DependencyRegistry,
    language: Language,
) -> Elab<'a> {
    Elab { vocab, registry, bound: Vec::new(), rels: Vec::new(), funs: Vec::new(), language }
}

pub fn parse_fo(text: &str, vocab: &Vocabulary) -> Result<FoFormula, ParseError> {
    let raw = parse_raw(text)?;
    let registry = DependencyRegistry::empty();
    elab(vocab, &registry, Language::Fo).fo(&raw)
}

pub fn parse_team(
    text: &str,
    vocab: &Vocabulary,
    registry: &DependencyRegistry,
) -> Result<TeamFormula, ParseError> {
    let raw = parse_raw(text)?;
    elab(vocab, registry, Language::Team).team(&raw)
}

/// Parses a modal team formula. Propositions are identifiers starting with a
/// lowercase letter other than `r`.
pub fn parse_mtl(text: &str) -> Result<MtlFormula, ParseError> {
    let raw = parse_raw(text)?;
    let vocab = Vocabulary::new();
    let registry = DependencyRegistry::empty();
    elab(&vocab, &registry, Language::Mtl).mtl(&raw)
}

pub fn parse_so(text: &str, vocab: &Vocabulary, ctx: &SoContext) -> Result<SoFormula, ParseError> {
    let raw = parse_raw(text)?;
    let registry = DependencyRegistry::empty();
    let mut e = elab(vocab, &registry, Language::So);
    e.rels = ctx.relations.clone();
    e.funs = ctx.functions.clone();
    e.so(&raw)
}

/// Parses `text` in the given language. Second-order formulas are parsed
/// without free second-order variables; use [`parse_so`] to declare some.
pub fn parse(
    text: &str,
    language: Language,
    vocab: &Vocabulary,
    registry: &DependencyRegistry,
) -> Result<Formula, ParseError> {
    Ok(match language {
        Language::Fo => Formula::Fo(parse_fo(text, vocab)?),
        Language::Team => Formula::Team(parse_team(text, vocab, registry)?),
        Language::Mtl => Formula::Mtl(parse_mtl(text)?),
        Language::So => Formula::So(parse_so(text, vocab, &SoContext::default())?),
    })
}

/// Predicates and functions used in `text`, with the arities of their
/// first occurrence. Names of dependencies in `registry` and bound
/// second-order variables are skipped.
pub fn infer_vocabulary(text: &str, registry: &DependencyRegistry) -> Result<Vocabulary, ParseError> {
    fn term(t: &RawTerm, vocab: &mut Vocabulary, bound: &mut Vec<String>) -> Result<(), ParseError> {
        if let Some(args) = &t.args {
            if !bound.contains(&t.name) {
                note(&t.name, args.len(), t.pos, vocab, false)?;
            }
            for a in args {
                term(a, vocab, bound)?;
            }
        }
        Ok(())
    }
    fn note(name: &str, arity: usize, pos: Pos, vocab: &mut Vocabulary, predicate: bool) -> Result<(), ParseError> {
        let known = if predicate { vocab.predicate_arity(name) } else { vocab.function_arity(name) };
        match known {
            Some(a) if a == arity => Ok(()),
            Some(a) => Err(ParseError::new(pos, ErrorKind::Arity, format!("`{name}` used with arities {a} and {arity}"))),
            None => {
                let r = if predicate { vocab.add_predicate(name, arity) } else { vocab.add_function(name, arity) };
                r.map_err(|e| ParseError::new(pos, ErrorKind::Arity, e.to_string()))
            }
        }
    }
    fn go(
        raw: &Raw,
        registry: &DependencyRegistry,
        vocab: &mut Vocabulary,
        bound: &mut Vec<String>,
    ) -> Result<(), ParseError> {
        match raw {
            Raw::Top | Raw::Bot => Ok(()),
            Raw::Atom(a) => {
                let args = a.args.as_deref().unwrap_or(&[]);
                if !registry.contains(&a.name) && !bound.contains(&a.name) {
                    note(&a.name, args.len(), a.pos, vocab, true)?;
                }
                args.iter().try_for_each(|t| term(t, vocab, bound))
            }
            Raw::Eq(l, r, _) => {
                term(l, vocab, bound)?;
                term(r, vocab, bound)
            }
            Raw::Not(a, _) | Raw::Tilde(a, _) | Raw::Ne(a, _) | Raw::Quant(_, _, a, _) | Raw::Modal(_, a, _) => {
                go(a, registry, vocab, bound)
            }
            Raw::Bin(_, a, b, _) => {
                go(a, registry, vocab, bound)?;
                go(b, registry, vocab, bound)
            }
            Raw::RelQuant(_, name, _, _, body, _) | Raw::FunQuant(_, name, _, body, _) => {
                bound.push(name.clone());
                let r = go(body, registry, vocab, bound);
                bound.pop();
                r
            }
        }
    }
    let raw = parse_raw(text)?;
    let mut vocab = Vocabulary::new();
    go(&raw, registry, &mut vocab, &mut Vec::new())?;
    Ok(vocab)
}

impl std::str::FromStr for SparseBound {
    type Err = ParseError;

    /// `poly:c0,c1,...` or `team:size,exponent`.
    fn from_str(s: &str) -> Result<Self, ParseError> {
        let mut p = Parser { toks: tokenize(&format!("[{s}]"))?, at: 0 };
        let b = p.sparse_bound()?;
        if *p.peek() != Tok::Eof {
            return Err(p.unexpected("end of input"));
        }
        Ok(b)
    }
}


#[cfg(test)]
mod inference_tests {
    use super::*;

    #[test]
    fn infers_symbols() {
        let v = infer_vocabulary("E x. (R(x, f(y)) & dep(x) & P)", &DependencyRegistry::builtin()).unwrap();
        assert_eq!(v.predicate_arity("R"), Some(2));
        assert_eq!(v.predicate_arity("P"), Some(0));
        assert_eq!(v.function_arity("f"), Some(1));
        assert!(!v.contains("dep"));
        assert!(infer_vocabulary("R(x) & R(x,y)", &DependencyRegistry::builtin()).is_err());
        let v = infer_vocabulary("E2 X:1. X(x) & Q(x)", &DependencyRegistry::empty()).unwrap();
        assert!(!v.contains("X"));
    }

    #[test]
    fn sparse_bound_strings() {
        assert_eq!("poly:0,1".parse::<SparseBound>().unwrap(), SparseBound::Poly(vec![0, 1]));
        assert_eq!(
            "team:3,2".parse::<SparseBound>().unwrap(),
            SparseBound::TeamScaled { team_size: 3, exponent: 2 }
        );
        assert!("cubic".parse::<SparseBound>().is_err());
    }
}
