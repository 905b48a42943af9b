use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use crate::syntax::Term;

use super::structure::{Structure, StructureError};

/// A variable assignment with an explicit finite domain.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Assignment(BTreeMap<String, usize>);

impl Assignment {
    pub fn new() -> Self {
        Assignment(BTreeMap::new())
    }

    pub fn from_pairs<S: Into<String>>(pairs: impl IntoIterator<Item = (S, usize)>) -> Self {
        Assignment(pairs.into_iter().map(|(k, v)| (k.into(), v)).collect())
    }

    pub fn get(&self, var: &str) -> Option<usize> {
        self.0.get(var).copied()
    }

    pub fn set(&mut self, var: &str, value: usize) {
        self.0.insert(var.to_string(), value);
    }

    /// `s^x_a`.
    pub fn with(&self, var: &str, value: usize) -> Self {
        let mut s = self.clone();
        s.set(var, value);
        s
    }

    pub fn domain(&self) -> impl Iterator<Item = &str> {
        self.0.keys().map(String::as_str)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&str, usize)> {
        self.0.iter().map(|(k, v)| (k.as_str(), *v))
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

impl fmt::Display for Assignment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.iter().map(|(k, v)| format!("{k}:{v}")).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// A set of assignments over a common domain of variables.
///
/// Variables are kept sorted; each row lists the values in that order.
/// The team with no rows and the team `{∅}` (no variables, one empty row)
/// are different values.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Team {
    vars: Vec<String>,
    rows: BTreeSet<Vec<usize>>,
}

impl Team {
    /// The team with no rows over the given variables.
    pub fn empty<S: Into<String>>(vars: impl IntoIterator<Item = S>) -> Self {
        let set: BTreeSet<String> = vars.into_iter().map(Into::into).collect();
        Team { vars: set.into_iter().collect(), rows: BTreeSet::new() }
    }

    /// `{∅}`.
    pub fn unit() -> Self {
        Team { vars: Vec::new(), rows: [Vec::new()].into() }
    }

    /// Builds a team from rows given in the order of `vars`.
    pub fn from_rows<S, R>(vars: &[S], rows: impl IntoIterator<Item = R>) -> Result<Self, StructureError>
    where
        S: AsRef<str>,
        R: AsRef<[usize]>,
    {
        let names: Vec<String> = vars.iter().map(|v| v.as_ref().to_string()).collect();
        let mut sorted: Vec<(String, usize)> =
            names.iter().cloned().enumerate().map(|(i, v)| (v, i)).collect();
        sorted.sort();
        if sorted.windows(2).any(|w| w[0].0 == w[1].0) {
            let dup = sorted.windows(2).find(|w| w[0].0 == w[1].0).unwrap()[0].0.clone();
            return Err(StructureError::Duplicate(dup));
        }
        let mut team = Team { vars: sorted.iter().map(|p| p.0.clone()).collect(), rows: BTreeSet::new() };
        for row in rows {
            let row = row.as_ref();
            if row.len() != names.len() {
                return Err(StructureError::Arity {
                    name: "team row".into(),
                    expected: names.len(),
                    found: row.len(),
                });
            }
            team.rows.insert(sorted.iter().map(|&(_, i)| row[i]).collect());
        }
        Ok(team)
    }

    /// Builds a team over `vars` from assignments defined on (at least) `vars`.
    pub fn from_assignments<S: Into<String>>(
        vars: impl IntoIterator<Item = S>,
        rows: impl IntoIterator<Item = Assignment>,
    ) -> Result<Self, StructureError> {
        let mut team = Team::empty(vars);
        for s in rows {
            let row = team
                .vars
                .iter()
                .map(|v| s.get(v).ok_or_else(|| StructureError::NotInDomain(v.clone())))
                .collect::<Result<Vec<_>, _>>()?;
            team.rows.insert(row);
        }
        Ok(team)
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn rows(&self) -> &BTreeSet<Vec<usize>> {
        &self.rows
    }

    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn column(&self, var: &str) -> Option<usize> {
        self.vars.binary_search_by(|v| v.as_str().cmp(var)).ok()
    }

    pub fn has_var(&self, var: &str) -> bool {
        self.column(var).is_some()
    }

    /// Inserts a row given in the team's (sorted) variable order.
    pub fn insert_row(&mut self, row: Vec<usize>) -> Result<(), StructureError> {
        if row.len() != self.vars.len() {
            return Err(StructureError::Arity {
                name: "team row".into(),
                expected: self.vars.len(),
                found: row.len(),
            });
        }
        self.rows.insert(row);
        Ok(())
    }

    pub fn assignment(&self, row: &[usize]) -> Assignment {
        Assignment(self.vars.iter().cloned().zip(row.iter().copied()).collect())
    }

    pub fn assignments(&self) -> impl Iterator<Item = Assignment> + '_ {
        self.rows.iter().map(|r| self.assignment(r))
    }

    /// Largest element occurring in the team, if any.
    pub fn max_element(&self) -> Option<usize> {
        self.rows.iter().flatten().copied().max()
    }

    /// A team over the same variables holding the given rows.
    pub fn with_rows(&self, rows: BTreeSet<Vec<usize>>) -> Team {
        Team { vars: self.vars.clone(), rows }
    }

    /// `T↾X`; collapsed rows are merged.
    pub fn restrict<S: AsRef<str>>(&self, keep: &[S]) -> Result<Team, StructureError> {
        let mut cols: Vec<(String, usize)> = Vec::new();
        for v in keep {
            let v = v.as_ref();
            let c = self.column(v).ok_or_else(|| StructureError::NotInDomain(v.to_string()))?;
            if !cols.iter().any(|(name, _)| name == v) {
                cols.push((v.to_string(), c));
            }
        }
        cols.sort();
        let rows = self.rows.iter().map(|r| cols.iter().map(|&(_, c)| r[c]).collect()).collect();
        Ok(Team { vars: cols.into_iter().map(|p| p.0).collect(), rows })
    }

    /// `t̄⟨T⟩ = { t̄⟨s⟩ | s ∈ T }`.
    pub fn image(&self, terms: &[Term], a: &Structure) -> Result<BTreeSet<Vec<usize>>, StructureError> {
        let mut out = BTreeSet::new();
        for row in &self.rows {
            let lookup = |v: &str| self.column(v).map(|c| row[c]);
            let tuple = terms
                .iter()
                .map(|t| {
                    a.eval_term_with(t, &lookup).map_err(|e| match e {
                        StructureError::UnboundVariable(v) => StructureError::NotInDomain(v),
                        other => other,
                    })
                })
                .collect::<Result<Vec<_>, _>>()?;
            out.insert(tuple);
        }
        Ok(out)
    }

    /// Position `var` would take in the sorted variable list, and whether it
    /// is already there.
    fn slot(&self, var: &str) -> (usize, bool) {
        match self.vars.binary_search_by(|v| v.as_str().cmp(var)) {
            Ok(i) => (i, true),
            Err(i) => (i, false),
        }
    }

    /// `T^x_f = { s^x_a | s ∈ T, a ∈ f(s) }`.
    pub fn supplement(
        &self,
        var: &str,
        mut f: impl FnMut(&Assignment) -> BTreeSet<usize>,
    ) -> Result<Team, StructureError> {
        let (at, present) = self.slot(var);
        let mut vars = self.vars.clone();
        if !present {
            vars.insert(at, var.to_string());
        }
        let mut rows = BTreeSet::new();
        for row in &self.rows {
            let choice = f(&self.assignment(row));
            if choice.is_empty() {
                return Err(StructureError::EmptyChoice);
            }
            for a in choice {
                rows.insert(extend_row(row, at, present, a));
            }
        }
        Ok(Team { vars, rows })
    }

    /// `T^x_A`: every row extended by every element.
    pub fn duplicate(&self, var: &str, domain_size: usize) -> Team {
        let (at, present) = self.slot(var);
        let mut vars = self.vars.clone();
        if !present {
            vars.insert(at, var.to_string());
        }
        let rows = self
            .rows
            .iter()
            .flat_map(|row| (0..domain_size).map(move |a| extend_row(row, at, present, a)))
            .collect();
        Team { vars, rows }
    }

    /// Rows satisfying `pred`.
    pub fn filter(&self, mut pred: impl FnMut(&Assignment) -> bool) -> Team {
        let rows = self.rows.iter().filter(|r| pred(&self.assignment(r))).cloned().collect();
        Team { vars: self.vars.clone(), rows }
    }

    pub fn is_subset(&self, other: &Team) -> bool {
        self.vars == other.vars && self.rows.is_subset(&other.rows)
    }
}

pub(crate) fn extend_row(row: &[usize], at: usize, present: bool, value: usize) -> Vec<usize> {
    let mut r = row.to_vec();
    if present {
        r[at] = value;
    } else {
        r.insert(at, value);
    }
    r
}

impl fmt::Display for Team {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "team")?;
        for v in &self.vars {
            write!(f, " {v}")?;
        }
        write!(f, " {{")?;
        for row in &self.rows {
            let parts: Vec<String> = row.iter().map(usize::to_string).collect();
            write!(f, " ({})", parts.join(","))?;
        }
        write!(f, " }}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn xy_team() -> Team {
        Team::from_rows(&["x", "y"], [[0, 0], [0, 1]]).unwrap()
    }

    #[test]
    fn restriction_merges_rows() {
        let t = xy_team().restrict(&["x"]).unwrap();
        assert_eq!(t.len(), 1);
        assert_eq!(t, Team::from_rows(&["x"], [[0]]).unwrap());
        assert!(xy_team().restrict(&["z"]).is_err());
    }

    #[test]
    fn image_projects() {
        let a = Structure::new(2);
        let img = xy_team().image(&Term::vars(&["x", "y"]), &a).unwrap();
        assert_eq!(img, [vec![0, 0], vec![0, 1]].into());
        let swapped = xy_team().image(&Term::vars(&["y", "x"]), &a).unwrap();
        assert_eq!(swapped, [vec![0, 0], vec![1, 0]].into());
    }

    #[test]
    fn columns_follow_sorted_variables() {
        let t = Team::from_rows(&["y", "x"], [[1, 0]]).unwrap();
        assert_eq!(t.vars(), ["x", "y"]);
        assert_eq!(t.rows().iter().next().unwrap(), &vec![0, 1]);
        assert!(Team::from_rows(&["x", "x"], [[0, 0]]).is_err());
    }

    #[test]
    fn duplication_and_supplement() {
        assert_eq!(Team::unit().duplicate("x", 2), Team::from_rows(&["x"], [[0], [1]]).unwrap());
        let t = Team::from_rows(&["x"], [[0]]).unwrap();
        let s = t.supplement("x", |_| [1].into()).unwrap();
        assert_eq!(s, Team::from_rows(&["x"], [[1]]).unwrap());
        let e = Team::empty(["x"]);
        let s = e.supplement("y", |_| [0].into()).unwrap();
        assert!(s.is_empty());
        assert_eq!(s.vars(), ["x", "y"]);
        assert_eq!(t.supplement("y", |_| BTreeSet::new()), Err(StructureError::EmptyChoice));
    }

    #[test]
    fn unit_and_empty_differ() {
        assert_ne!(Team::unit(), Team::empty(Vec::<String>::new()));
        assert_eq!(Team::unit().len(), 1);
    }
}
