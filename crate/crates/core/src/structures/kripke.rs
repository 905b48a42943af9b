use std::collections::BTreeMap;
use std::fmt;

use super::structure::StructureError;

/// Maximum number of worlds of a [`KripkeStructure`].
pub const MAX_WORLDS: usize = 64;

/// A set of worlds as a bitmask.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct WorldSet(pub u64);

impl WorldSet {
    pub fn empty() -> Self {
        WorldSet(0)
    }

    pub fn contains(self, w: usize) -> bool {
        w < MAX_WORLDS && self.0 >> w & 1 == 1
    }

    pub fn insert(&mut self, w: usize) {
        self.0 |= 1 << w;
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn is_subset(self, other: WorldSet) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn union(self, other: WorldSet) -> WorldSet {
        WorldSet(self.0 | other.0)
    }

    pub fn intersection(self, other: WorldSet) -> WorldSet {
        WorldSet(self.0 & other.0)
    }

    pub fn difference(self, other: WorldSet) -> WorldSet {
        WorldSet(self.0 & !other.0)
    }

    pub fn iter(self) -> impl Iterator<Item = usize> {
        (0..MAX_WORLDS).filter(move |&w| self.contains(w))
    }
}

impl FromIterator<usize> for WorldSet {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        let mut s = WorldSet::empty();
        for w in iter {
            s.insert(w);
        }
        s
    }
}

impl fmt::Display for WorldSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.iter().map(|w| w.to_string()).collect();
        write!(f, "{{ {} }}", parts.join(" "))
    }
}

/// `K = (W, R, V)` with `W = {0, …, m−1}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct KripkeStructure {
    worlds: usize,
    succ: Vec<u64>,
    valuation: BTreeMap<String, WorldSet>,
}

impl KripkeStructure {
    pub fn new(worlds: usize) -> Result<Self, StructureError> {
        if worlds > MAX_WORLDS {
            return Err(StructureError::TooLarge(format!(
                "{worlds} worlds exceed the limit of {MAX_WORLDS}"
            )));
        }
        Ok(KripkeStructure { worlds, succ: vec![0; worlds], valuation: BTreeMap::new() })
    }

    pub fn worlds(&self) -> usize {
        self.worlds
    }

    pub fn all_worlds(&self) -> WorldSet {
        WorldSet(if self.worlds == 64 { u64::MAX } else { (1u64 << self.worlds) - 1 })
    }

    fn check(&self, w: usize) -> Result<(), StructureError> {
        if w >= self.worlds {
            Err(StructureError::OutOfRange { element: w, domain: self.worlds })
        } else {
            Ok(())
        }
    }

    pub fn add_edge(&mut self, from: usize, to: usize) -> Result<(), StructureError> {
        self.check(from)?;
        self.check(to)?;
        self.succ[from] |= 1 << to;
        Ok(())
    }

    pub fn with_edges(mut self, edges: &[(usize, usize)]) -> Result<Self, StructureError> {
        for &(a, b) in edges {
            self.add_edge(a, b)?;
        }
        Ok(self)
    }

    pub fn has_edge(&self, from: usize, to: usize) -> bool {
        from < self.worlds && self.succ[from] >> to & 1 == 1
    }

    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.worlds).flat_map(move |a| self.successors(a).iter().map(move |b| (a, b)))
    }

    pub fn clear_edges(&mut self) {
        self.succ.iter_mut().for_each(|s| *s = 0);
    }

    pub fn successors(&self, w: usize) -> WorldSet {
        WorldSet(self.succ[w])
    }

    pub fn set_valuation(&mut self, prop: &str, worlds: WorldSet) -> Result<(), StructureError> {
        if !worlds.is_subset(self.all_worlds()) {
            return Err(StructureError::OutOfRange {
                element: worlds.difference(self.all_worlds()).iter().next().unwrap_or(0),
                domain: self.worlds,
            });
        }
        self.valuation.insert(prop.to_string(), worlds);
        Ok(())
    }

    pub fn with_valuation(mut self, prop: &str, worlds: &[usize]) -> Result<Self, StructureError> {
        self.set_valuation(prop, worlds.iter().copied().collect())?;
        Ok(self)
    }

    pub fn valuation(&self, prop: &str) -> Option<WorldSet> {
        self.valuation.get(prop).copied()
    }

    pub fn propositions(&self) -> impl Iterator<Item = (&str, WorldSet)> {
        self.valuation.iter().map(|(k, v)| (k.as_str(), *v))
    }

    /// `RT`.
    pub fn image(&self, t: WorldSet) -> WorldSet {
        WorldSet(t.iter().fold(0, |acc, w| acc | self.succ[w]))
    }

    /// `R⁻¹S`.
    pub fn preimage(&self, s: WorldSet) -> WorldSet {
        (0..self.worlds).filter(|&w| self.succ[w] & s.0 != 0).collect()
    }

    /// Successor teams of `t`: every `S ⊆ RT` with `T ⊆ R⁻¹S`, enumerated by a
    /// binary counter over the worlds of `RT` in ascending order. Fails if
    /// `|RT|` exceeds `max_image`.
    pub fn successor_teams(
        &self,
        t: WorldSet,
        max_image: usize,
    ) -> Result<impl Iterator<Item = WorldSet> + '_, StructureError> {
        let image: Vec<usize> = self.image(t).iter().collect();
        if image.len() > max_image.min(63) {
            return Err(StructureError::TooLarge(format!(
                "successor image of {} worlds exceeds the budget of {max_image}",
                image.len()
            )));
        }
        let count = 1u64 << image.len();
        Ok((0..count).filter_map(move |bits| {
            let s: WorldSet =
                image.iter().enumerate().filter(|(i, _)| bits >> i & 1 == 1).map(|(_, &w)| w).collect();
            t.is_subset(self.preimage(s)).then_some(s)
        }))
    }
}
