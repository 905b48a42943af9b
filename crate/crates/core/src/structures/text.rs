//! Plain-text format for structures, teams and Kripke structures.
//!
//! ```text
//! domain 2
//! rel R { (0,1) (1,1) }
//! rel E 2 { }
//! fun f { (0)->1 (1)->0 }
//! team x y { (0,1) (1,0) }
//! team T: x { (0) }
//! kripke 3 { edges (0,1) (0,2) ; val p { 1 2 } ; team { 0 } ; team S: { 1 2 } }
//! ```
//!
//! `#` starts a comment. Unnamed teams are addressed as `#0`, `#1`, … in
//! order of appearance.

use std::collections::BTreeSet;
use std::fmt::{self, Write as _};

use thiserror::Error;

use super::kripke::{KripkeStructure, WorldSet};
use super::structure::{all_tuples, Function, Relation, Structure, StructureError};
use super::team::Team;

#[derive(Clone, Debug, Error, PartialEq, Eq)]
#[error("line {line}: {message}")]
pub struct TextError {
    pub line: usize,
    pub message: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) enum Tok {
    Word(String),
    Num(usize),
    Sym(char),
    Arrow,
    Eof,
}

pub(crate) struct Cursor {
    toks: Vec<(Tok, usize)>,
    at: usize,
}

impl Cursor {
    pub(crate) fn new(text: &str) -> Result<Self, TextError> {
        let mut toks = Vec::new();
        for (idx, raw) in text.lines().enumerate() {
            let line = idx + 1;
            let content = raw.split('#').next().unwrap_or("");
            let chars: Vec<char> = content.chars().collect();
            let mut i = 0;
            while i < chars.len() {
                let c = chars[i];
                if c.is_whitespace() {
                    i += 1;
                } else if c.is_ascii_digit() {
                    let start = i;
                    while i < chars.len() && chars[i].is_ascii_digit() {
                        i += 1;
                    }
                    let s: String = chars[start..i].iter().collect();
                    let n = s.parse().map_err(|_| TextError { line, message: format!("bad number `{s}`") })?;
                    toks.push((Tok::Num(n), line));
                } else if c.is_alphabetic() || c == '_' {
                    let start = i;
                    while i < chars.len() && (chars[i].is_alphanumeric() || chars[i] == '_' || chars[i] == '\'') {
                        i += 1;
                    }
                    toks.push((Tok::Word(chars[start..i].iter().collect()), line));
                } else if c == '-' && chars.get(i + 1) == Some(&'>') {
                    toks.push((Tok::Arrow, line));
                    i += 2;
                } else if "{}(),;:".contains(c) {
                    toks.push((Tok::Sym(c), line));
                    i += 1;
                } else {
                    return Err(TextError { line, message: format!("unexpected character `{c}`") });
                }
            }
        }
        let last = text.lines().count().max(1);
        toks.push((Tok::Eof, last));
        Ok(Cursor { toks, at: 0 })
    }

    pub(crate) fn peek(&self) -> &Tok {
        &self.toks[self.at].0
    }

    pub(crate) fn peek2(&self) -> &Tok {
        &self.toks[(self.at + 1).min(self.toks.len() - 1)].0
    }

    pub(crate) fn line(&self) -> usize {
        self.toks[self.at].1
    }

    pub(crate) fn bump(&mut self) -> Tok {
        let t = self.toks[self.at].0.clone();
        if self.at + 1 < self.toks.len() {
            self.at += 1;
        }
        t
    }

    pub(crate) fn error(&self, message: impl Into<String>) -> TextError {
        TextError { line: self.line(), message: message.into() }
    }

    pub(crate) fn lift<T>(&self, r: Result<T, StructureError>) -> Result<T, TextError> {
        r.map_err(|e| self.error(e.to_string()))
    }

    fn found(&self) -> String {
        match self.peek() {
            Tok::Word(w) => format!("`{w}`"),
            Tok::Num(n) => format!("`{n}`"),
            Tok::Sym(c) => format!("`{c}`"),
            Tok::Arrow => "`->`".into(),
            Tok::Eof => "end of input".into(),
        }
    }

    pub(crate) fn at_eof(&self) -> bool {
        *self.peek() == Tok::Eof
    }

    pub(crate) fn eat(&mut self, c: char) -> bool {
        if *self.peek() == Tok::Sym(c) {
            self.bump();
            true
        } else {
            false
        }
    }

    pub(crate) fn expect(&mut self, c: char) -> Result<(), TextError> {
        if self.eat(c) {
            Ok(())
        } else {
            Err(self.error(format!("expected `{c}`, found {}", self.found())))
        }
    }

    pub(crate) fn word(&mut self) -> Result<String, TextError> {
        match self.peek().clone() {
            Tok::Word(w) => {
                self.bump();
                Ok(w)
            }
            _ => Err(self.error(format!("expected a name, found {}", self.found()))),
        }
    }

    pub(crate) fn num(&mut self) -> Result<usize, TextError> {
        match *self.peek() {
            Tok::Num(n) => {
                self.bump();
                Ok(n)
            }
            _ => Err(self.error(format!("expected a number, found {}", self.found()))),
        }
    }

    pub(crate) fn opt_num(&mut self) -> Option<usize> {
        match *self.peek() {
            Tok::Num(n) => {
                self.bump();
                Some(n)
            }
            _ => None,
        }
    }

    /// `( a, b, … )`.
    pub(crate) fn tuple(&mut self) -> Result<Vec<usize>, TextError> {
        self.expect('(')?;
        let mut t = Vec::new();
        if self.eat(')') {
            return Ok(t);
        }
        loop {
            t.push(self.num()?);
            if self.eat(')') {
                return Ok(t);
            }
            self.expect(',')?;
        }
    }

    /// `{ tuple* }` with optional commas between tuples.
    pub(crate) fn tuple_set(&mut self) -> Result<Vec<Vec<usize>>, TextError> {
        self.expect('{')?;
        let mut out = Vec::new();
        while !self.eat('}') {
            out.push(self.tuple()?);
            self.eat(',');
        }
        Ok(out)
    }

    /// `{ n* }`.
    pub(crate) fn number_set(&mut self) -> Result<Vec<usize>, TextError> {
        self.expect('{')?;
        let mut out = Vec::new();
        while !self.eat('}') {
            out.push(self.num()?);
            self.eat(',');
        }
        Ok(out)
    }

    /// `rel`-style body: optional arity, then a tuple set.
    pub(crate) fn relation(&mut self, domain: usize) -> Result<Relation, TextError> {
        let declared = self.opt_num();
        let tuples = self.tuple_set()?;
        let arity = match (declared, tuples.first()) {
            (Some(a), _) => a,
            (None, Some(t)) => t.len(),
            (None, None) => return Err(self.error("empty relation needs an explicit arity")),
        };
        self.lift(Relation::from_tuples(domain, arity, &tuples))
    }

    /// `fun`-style body: optional arity, then `{ (args)->value … }`, total.
    pub(crate) fn function(&mut self, domain: usize, name: &str) -> Result<Function, TextError> {
        let declared = self.opt_num();
        self.expect('{')?;
        let mut entries = Vec::new();
        while !self.eat('}') {
            let args = self.tuple()?;
            if *self.peek() != Tok::Arrow {
                return Err(self.error(format!("expected `->`, found {}", self.found())));
            }
            self.bump();
            entries.push((args, self.num()?));
            self.eat(',');
        }
        let arity = declared
            .or_else(|| entries.first().map(|e| e.0.len()))
            .ok_or_else(|| self.error(format!("function `{name}` has no entries")))?;
        let mut f = self.lift(Function::constant_map(domain, arity, 0))?;
        let mut seen = BTreeSet::new();
        for (args, value) in entries {
            if args.len() != arity {
                return Err(self.error(format!("function `{name}` has mixed arities")));
            }
            self.lift(f.set(&args, value))?;
            seen.insert(args);
        }
        if seen.len() != all_tuples(domain, arity).count() {
            return Err(self.error(format!("function `{name}` is not total")));
        }
        Ok(f)
    }
}

/// A Kripke structure together with its declared world teams.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KripkeModel {
    pub structure: KripkeStructure,
    pub teams: Vec<(Option<String>, WorldSet)>,
}

impl KripkeModel {
    pub fn team(&self, name: Option<&str>) -> Option<WorldSet> {
        lookup(&self.teams, name).copied()
    }
}

/// Contents of a structure file.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Document {
    pub structure: Option<Structure>,
    pub teams: Vec<(Option<String>, Team)>,
    pub kripke: Option<KripkeModel>,
}

fn lookup<'a, T>(items: &'a [(Option<String>, T)], name: Option<&str>) -> Option<&'a T> {
    match name {
        None if items.len() == 1 => Some(&items[0].1),
        None => None,
        Some(n) => {
            if let Some(idx) = n.strip_prefix('#').and_then(|i| i.parse::<usize>().ok()) {
                return items.iter().filter(|(k, _)| k.is_none()).nth(idx).map(|(_, t)| t);
            }
            items.iter().find(|(k, _)| k.as_deref() == Some(n)).map(|(_, t)| t)
        }
    }
}

impl Document {
    /// Looks up a team by name, by `#index` among unnamed teams, or, with no
    /// name, the only team of the file.
    pub fn team(&self, name: Option<&str>) -> Option<&Team> {
        lookup(&self.teams, name)
    }

    pub fn parse(text: &str) -> Result<Document, TextError> {
        let mut c = Cursor::new(text)?;
        let mut doc = Document::default();
        while !c.at_eof() {
            let keyword = c.word()?;
            match keyword.as_str() {
                "domain" => {
                    if doc.structure.is_some() {
                        return Err(c.error("duplicate `domain` declaration"));
                    }
                    let n = c.num()?;
                    if n == 0 {
                        return Err(c.error("the domain must be nonempty"));
                    }
                    doc.structure = Some(Structure::new(n));
                }
                "rel" | "fun" => {
                    let name = c.word()?;
                    let a = doc
                        .structure
                        .as_mut()
                        .ok_or_else(|| c.error("`domain` must come before relations and functions"))?;
                    let n = a.domain_size();
                    if a.relation(&name).is_some() || a.function(&name).is_some() {
                        return Err(c.error(format!("`{name}` is declared twice")));
                    }
                    if keyword == "rel" {
                        let r = c.relation(n)?;
                        c.lift(a.add_relation(&name, r))?;
                    } else {
                        let f = c.function(n, &name)?;
                        c.lift(a.add_function(&name, f))?;
                    }
                }
                "team" => {
                    let name = team_name(&mut c)?;
                    let mut vars = Vec::new();
                    while let Tok::Word(_) = c.peek() {
                        vars.push(c.word()?);
                    }
                    let rows = c.tuple_set()?;
                    let team = c.lift(Team::from_rows(&vars, &rows))?;
                    if let Some(a) = &doc.structure {
                        if team.max_element().is_some_and(|m| m >= a.domain_size()) {
                            return Err(c.error("team value outside the domain"));
                        }
                    }
                    push_named(&mut doc.teams, name, team, &c)?;
                }
                "kripke" => {
                    if doc.kripke.is_some() {
                        return Err(c.error("duplicate `kripke` block"));
                    }
                    doc.kripke = Some(kripke_block(&mut c)?);
                }
                other => return Err(c.error(format!("unknown declaration `{other}`"))),
            }
        }
        Ok(doc)
    }
}

fn team_name(c: &mut Cursor) -> Result<Option<String>, TextError> {
    if matches!(c.peek(), Tok::Word(_)) && *c.peek2() == Tok::Sym(':') {
        let n = c.word()?;
        c.expect(':')?;
        Ok(Some(n))
    } else {
        Ok(None)
    }
}

fn push_named<T>(
    items: &mut Vec<(Option<String>, T)>,
    name: Option<String>,
    value: T,
    c: &Cursor,
) -> Result<(), TextError> {
    if let Some(n) = &name {
        if items.iter().any(|(k, _)| k.as_ref() == Some(n)) {
            return Err(c.error(format!("team `{n}` is declared twice")));
        }
    }
    items.push((name, value));
    Ok(())
}

fn kripke_block(c: &mut Cursor) -> Result<KripkeModel, TextError> {
    let m = c.num()?;
    let mut k = c.lift(KripkeStructure::new(m))?;
    let mut teams = Vec::new();
    c.expect('{')?;
    loop {
        if c.eat('}') {
            break;
        }
        let section = c.word()?;
        match section.as_str() {
            "edges" => {
                while *c.peek() == Tok::Sym('(') {
                    let t = c.tuple()?;
                    let [a, b] = t[..] else {
                        return Err(c.error("edges are pairs"));
                    };
                    c.lift(k.add_edge(a, b))?;
                    c.eat(',');
                }
            }
            "val" => {
                let p = c.word()?;
                let ws = c.number_set()?;
                if k.valuation(&p).is_some() {
                    return Err(c.error(format!("proposition `{p}` is valued twice")));
                }
                if let Some(&w) = ws.iter().find(|&&w| w >= m) {
                    return Err(c.error(format!("world {w} outside 0..{m}")));
                }
                c.lift(k.set_valuation(&p, ws.into_iter().collect()))?;
            }
            "team" => {
                let name = team_name(c)?;
                let ws = c.number_set()?;
                if let Some(&w) = ws.iter().find(|&&w| w >= m) {
                    return Err(c.error(format!("world {w} outside 0..{m}")));
                }
                push_named(&mut teams, name, ws.into_iter().collect(), c)?;
            }
            other => return Err(c.error(format!("unknown kripke section `{other}`"))),
        }
        if !c.eat(';') {
            c.expect('}')?;
            break;
        }
    }
    Ok(KripkeModel { structure: k, teams })
}

fn write_tuple(out: &mut String, t: &[usize]) {
    let parts: Vec<String> = t.iter().map(usize::to_string).collect();
    let _ = write!(out, "({})", parts.join(","));
}

/// Serializes a structure in the text format.
pub fn write_structure(a: &Structure) -> String {
    let mut out = format!("domain {}\n", a.domain_size());
    for (name, r) in a.relations() {
        let _ = write!(out, "rel {name} {} {{", r.arity());
        for t in r.iter() {
            out.push(' ');
            write_tuple(&mut out, &t);
        }
        out.push_str(" }\n");
    }
    for (name, f) in a.functions() {
        let _ = write!(out, "fun {name} {} {{", f.arity());
        for (t, v) in all_tuples(a.domain_size(), f.arity()).zip(f.table()) {
            out.push(' ');
            write_tuple(&mut out, &t);
            let _ = write!(out, "->{v}");
        }
        out.push_str(" }\n");
    }
    out
}

pub fn write_kripke(k: &KripkeStructure, teams: &[(Option<String>, WorldSet)]) -> String {
    let mut out = format!("kripke {} {{ edges", k.worlds());
    for (a, b) in k.edges() {
        let _ = write!(out, " ({a},{b})");
    }
    for (p, ws) in k.propositions() {
        let _ = write!(out, " ; val {p} {ws}");
    }
    for (name, ws) in teams {
        match name {
            Some(n) => {
                let _ = write!(out, " ; team {n}: {ws}");
            }
            None => {
                let _ = write!(out, " ; team {ws}");
            }
        }
    }
    out.push_str(" }\n");
    out
}

impl fmt::Display for Document {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(a) = &self.structure {
            f.write_str(&write_structure(a))?;
        }
        for (name, t) in &self.teams {
            let body = t.to_string();
            match name {
                Some(n) => writeln!(f, "team {n}:{}", &body["team".len()..])?,
                None => writeln!(f, "{body}")?,
            }
        }
        if let Some(k) = &self.kripke {
            f.write_str(&write_kripke(&k.structure, &k.teams))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const SAMPLE: &str = "domain 2\nrel R { (0,1) (1,1) }\nrel E 2 { }\nfun f { (0)->1 (1)->0 }\nteam x y { (0,1) (1,0) }\nteam T: x { (0) }\nkripke 3 { edges (0,1) (0,2) ; val p { 1 2 } ; team { 0 } }\n";

    #[test]
    fn parses_every_declaration() {
        let doc = Document::parse(SAMPLE).unwrap();
        let a = doc.structure.as_ref().unwrap();
        assert!(a.relation("R").unwrap().contains(&[1, 1]));
        assert_eq!(a.relation("E").unwrap().arity(), 2);
        assert_eq!(a.function("f").unwrap().apply(&[0]), 1);
        assert_eq!(doc.team(Some("#0")).unwrap().len(), 2);
        assert_eq!(doc.team(Some("T")).unwrap().len(), 1);
        assert!(doc.team(None).is_none());
        let k = doc.kripke.as_ref().unwrap();
        assert!(k.structure.has_edge(0, 2));
        assert_eq!(k.team(None), Some([0].into_iter().collect()));
    }

    #[test]
    fn round_trips_through_display() {
        let doc = Document::parse(SAMPLE).unwrap();
        assert_eq!(Document::parse(&doc.to_string()).unwrap(), doc);
    }

    #[test]
    fn reports_errors_with_lines() {
        let err = Document::parse("domain 2\nrel R { (0,2) }").unwrap_err();
        assert_eq!(err.line, 2);
        assert!(Document::parse("domain 2\nfun f { (0)->1 }").is_err());
        assert!(Document::parse("rel R { (0) }").is_err());
        assert!(Document::parse("domain 2\nteam x { (5) }").is_err());
    }

    #[test]
    fn unit_team_syntax() {
        let doc = Document::parse("domain 1\nteam { () }\nteam E: { }").unwrap();
        assert_eq!(doc.team(Some("#0")), Some(&Team::unit()));
        assert!(doc.team(Some("E")).unwrap().is_empty());
    }
}
