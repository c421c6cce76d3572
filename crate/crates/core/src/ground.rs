//! Finite topological spaces, set families over them, and the cover predicates
//! the games are built from.
//!
//! Ground items are `0..size` with `size <= 16`, so every subset is one `u16`.
//! Orderings are always by the integer encoding of a subset, which makes every
//! enumeration in this module deterministic.

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

/// Hard cap on the number of ground items.
pub const MAX_UNIVERSE: usize = 16;
/// Hard cap on the number of open sets of a [`GroundSpace`].
pub const MAX_OPENS: usize = 4096;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GroundError {
    #[error("universe of {0} items exceeds the cap of {MAX_UNIVERSE}")]
    CapExceeded(usize),
    #[error("topology has more than {MAX_OPENS} open sets")]
    TopologyTooLarge,
    #[error("item {item} is outside a universe of {size} items")]
    ItemOutOfRange { item: usize, size: usize },
    #[error("{0} is not an open set")]
    NotOpen(Subset),
    #[error("family of opens is not closed under union and intersection")]
    NotATopology,
}

/// A subset of the ground items `0..16`, stored as a bit mask.
#[derive(Clone, Copy, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Subset(u16);

impl Subset {
    pub const EMPTY: Subset = Subset(0);

    pub fn from_bits(bits: u16) -> Self {
        Subset(bits)
    }

    pub fn bits(self) -> u16 {
        self.0
    }

    /// The full set `{0, .., size-1}`.
    pub fn full(size: usize) -> Self {
        debug_assert!(size <= MAX_UNIVERSE);
        if size >= 16 {
            Subset(u16::MAX)
        } else {
            Subset((1u16 << size) - 1)
        }
    }

    pub fn singleton(item: usize) -> Self {
        Subset(1 << item)
    }

    pub fn from_items<I: IntoIterator<Item = usize>>(items: I) -> Self {
        Subset(items.into_iter().fold(0, |acc, i| acc | (1 << i)))
    }

    pub fn contains(self, item: usize) -> bool {
        item < 16 && self.0 & (1 << item) != 0
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_subset_of(self, other: Subset) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn union(self, other: Subset) -> Subset {
        Subset(self.0 | other.0)
    }

    pub fn intersection(self, other: Subset) -> Subset {
        Subset(self.0 & other.0)
    }

    pub fn difference(self, other: Subset) -> Subset {
        Subset(self.0 & !other.0)
    }

    pub fn meets(self, other: Subset) -> bool {
        self.0 & other.0 != 0
    }

    pub fn items(self) -> impl Iterator<Item = usize> {
        let bits = self.0;
        (0..16).filter(move |i| bits & (1 << i) != 0)
    }

    /// Largest item plus one, i.e. the smallest universe this subset fits in.
    pub fn span(self) -> usize {
        16 - self.0.leading_zeros() as usize
    }
}

impl fmt::Debug for Subset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for Subset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (k, i) in self.items().enumerate() {
            if k > 0 {
                f.write_str(",")?;
            }
            write!(f, "{i}")?;
        }
        f.write_str("}")
    }
}

impl Serialize for Subset {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_seq(self.items())
    }
}

impl<'de> Deserialize<'de> for Subset {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let items = Vec::<usize>::deserialize(d)?;
        if let Some(&bad) = items.iter().find(|&&i| i >= MAX_UNIVERSE) {
            return Err(serde::de::Error::custom(format!(
                "item {bad} outside the {MAX_UNIVERSE}-item cap"
            )));
        }
        Ok(Subset::from_items(items))
    }
}

fn check_items(size: usize, sets: &[Subset]) -> Result<(), GroundError> {
    let full = Subset::full(size);
    match sets.iter().find(|s| !s.is_subset_of(full)) {
        Some(s) => Err(GroundError::ItemOutOfRange {
            item: s.span() - 1,
            size,
        }),
        None => Ok(()),
    }
}

/// A finite topological space: `size` items and the sorted list of its open sets.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroundSpace {
    size: usize,
    opens: Vec<Subset>,
}

impl GroundSpace {
    /// The topology generated by `subbasis`: closure of the subbasis together
    /// with the empty set and the universe under finite unions and intersections.
    pub fn build_topology(size: usize, subbasis: &[Subset]) -> Result<Self, GroundError> {
        if size > MAX_UNIVERSE {
            return Err(GroundError::CapExceeded(size));
        }
        check_items(size, subbasis)?;
        let full = Subset::full(size);

        // Intersection closure first gives a base; unions of a base that is
        // closed under intersection are closed under intersection as well.
        let mut base: BTreeSet<Subset> = BTreeSet::new();
        base.insert(full);
        for &s in subbasis {
            let fresh: Vec<Subset> = base.iter().map(|b| b.intersection(s)).collect();
            base.insert(s);
            base.extend(fresh);
            if base.len() > MAX_OPENS {
                return Err(GroundError::TopologyTooLarge);
            }
        }

        let mut opens: BTreeSet<Subset> = BTreeSet::new();
        opens.insert(Subset::EMPTY);
        for &b in &base {
            let fresh: Vec<Subset> = opens.iter().map(|o| o.union(b)).collect();
            opens.extend(fresh);
            if opens.len() > MAX_OPENS {
                return Err(GroundError::TopologyTooLarge);
            }
        }
        Ok(GroundSpace {
            size,
            opens: opens.into_iter().collect(),
        })
    }

    /// Accepts an explicit list of opens, checking the topology axioms.
    pub fn from_opens(size: usize, opens: &[Subset]) -> Result<Self, GroundError> {
        if size > MAX_UNIVERSE {
            return Err(GroundError::CapExceeded(size));
        }
        check_items(size, opens)?;
        let set: BTreeSet<Subset> = opens.iter().copied().collect();
        if set.len() > MAX_OPENS {
            return Err(GroundError::TopologyTooLarge);
        }
        if !set.contains(&Subset::EMPTY) || !set.contains(&Subset::full(size)) {
            return Err(GroundError::NotATopology);
        }
        for &a in &set {
            for &b in &set {
                if !set.contains(&a.union(b)) || !set.contains(&a.intersection(b)) {
                    return Err(GroundError::NotATopology);
                }
            }
        }
        Ok(GroundSpace {
            size,
            opens: set.into_iter().collect(),
        })
    }

    pub fn discrete(size: usize) -> Result<Self, GroundError> {
        let singletons: Vec<Subset> = (0..size).map(Subset::singleton).collect();
        Self::build_topology(size, &singletons)
    }

    pub fn indiscrete(size: usize) -> Result<Self, GroundError> {
        Self::build_topology(size, &[])
    }

    /// Every topology on `size <= 4` labelled items, in a fixed order.
    pub fn enumerate_topologies(size: usize) -> Result<Vec<Self>, GroundError> {
        if size > 4 {
            return Err(GroundError::CapExceeded(size));
        }
        let full = Subset::full(size);
        // Candidate opens besides the empty set and the universe.
        let middle: Vec<Subset> = (1..full.bits())
            .map(Subset::from_bits)
            .collect();
        let mut out = Vec::new();
        for mask in 0u32..(1u32 << middle.len()) {
            let mut opens = vec![Subset::EMPTY];
            opens.extend(
                middle
                    .iter()
                    .enumerate()
                    .filter(|(k, _)| mask & (1 << k) != 0)
                    .map(|(_, &s)| s),
            );
            if size > 0 {
                opens.push(full);
            }
            let set: BTreeSet<Subset> = opens.iter().copied().collect();
            let closed = set.iter().all(|&a| {
                set.iter()
                    .all(|&b| set.contains(&a.union(b)) && set.contains(&a.intersection(b)))
            });
            if closed {
                out.push(GroundSpace {
                    size,
                    opens: set.into_iter().collect(),
                });
            }
        }
        Ok(out)
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn universe(&self) -> Subset {
        Subset::full(self.size)
    }

    /// Open sets in ascending encoding order.
    pub fn opens(&self) -> &[Subset] {
        &self.opens
    }

    pub fn open_index(&self, s: Subset) -> Option<usize> {
        self.opens.binary_search(&s).ok()
    }

    pub fn is_open(&self, s: Subset) -> bool {
        self.open_index(s).is_some()
    }

    pub fn is_closed(&self, s: Subset) -> bool {
        self.is_open(self.universe().difference(s))
    }

    /// Smallest closed superset of `s`.
    pub fn closure(&self, s: Subset) -> Subset {
        let interior_of_complement = self
            .opens
            .iter()
            .filter(|o| !o.meets(s))
            .fold(Subset::EMPTY, |acc, &o| acc.union(o));
        self.universe().difference(interior_of_complement)
    }

    /// Whether every singleton is closed. On a finite space this is the same
    /// as being discrete.
    pub fn points_closed(&self) -> bool {
        (0..self.size).all(|i| self.is_closed(Subset::singleton(i)))
    }

    /// Opens containing `a`, the universe excluded, ascending.
    pub fn proper_neighborhoods(&self, a: Subset) -> Vec<Subset> {
        let full = self.universe();
        self.opens
            .iter()
            .copied()
            .filter(|&o| o != full && a.is_subset_of(o))
            .collect()
    }
}

/// Structural flags of a family, computed on demand so they are never stale.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct FamilyFlags {
    pub ideal_base: bool,
    pub covers_universe: bool,
    pub all_open: bool,
    pub all_closed: bool,
}

/// An ordered list of distinct subsets of a universe of `universe` items.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "RawFamily", into = "RawFamily")]
pub struct SetFamily {
    universe: usize,
    members: Vec<Subset>,
}

#[derive(Serialize, Deserialize)]
struct RawFamily {
    universe: usize,
    members: Vec<Subset>,
}

impl TryFrom<RawFamily> for SetFamily {
    type Error = GroundError;
    fn try_from(raw: RawFamily) -> Result<Self, Self::Error> {
        SetFamily::new(raw.universe, raw.members)
    }
}

impl From<SetFamily> for RawFamily {
    fn from(f: SetFamily) -> Self {
        RawFamily {
            universe: f.universe,
            members: f.members,
        }
    }
}

impl SetFamily {
    /// Builds a family, dropping repeated members (first occurrence wins).
    pub fn new<I: IntoIterator<Item = Subset>>(universe: usize, members: I) -> Result<Self, GroundError> {
        if universe > MAX_UNIVERSE {
            return Err(GroundError::CapExceeded(universe));
        }
        let mut seen = BTreeSet::new();
        let members: Vec<Subset> = members.into_iter().filter(|s| seen.insert(*s)).collect();
        check_items(universe, &members)?;
        Ok(SetFamily { universe, members })
    }

    pub fn empty(universe: usize) -> Self {
        SetFamily {
            universe,
            members: Vec::new(),
        }
    }

    pub fn singletons(universe: usize) -> Self {
        SetFamily {
            universe,
            members: (0..universe).map(Subset::singleton).collect(),
        }
    }

    /// All nonempty subsets, ascending. The literal reading of "the nonempty
    /// subsets of X".
    pub fn nonempty_subsets(universe: usize) -> Self {
        SetFamily {
            universe,
            members: (1..=Subset::full(universe).bits() as u32)
                .map(|b| Subset::from_bits(b as u16))
                .collect(),
        }
    }

    /// All nonempty open sets. The reading used by the discretely selective
    /// property.
    pub fn nonempty_opens(space: &GroundSpace) -> Self {
        SetFamily {
            universe: space.size(),
            members: space.opens().iter().copied().filter(|s| !s.is_empty()).collect(),
        }
    }

    /// Sets whose closure contains `x`.
    pub fn blades(space: &GroundSpace, x: usize) -> Self {
        SetFamily {
            universe: space.size(),
            members: (0..=Subset::full(space.size()).bits() as u32)
                .map(|b| Subset::from_bits(b as u16))
                .filter(|&s| space.closure(s).contains(x))
                .collect(),
        }
    }

    pub fn universe(&self) -> usize {
        self.universe
    }

    pub fn members(&self) -> &[Subset] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, s: Subset) -> bool {
        self.members.contains(&s)
    }

    /// Appends `s` unless already present. Returns whether it was added.
    pub fn push(&mut self, s: Subset) -> Result<bool, GroundError> {
        check_items(self.universe, &[s])?;
        if self.contains(s) {
            return Ok(false);
        }
        self.members.push(s);
        Ok(true)
    }

    pub fn remove(&mut self, s: Subset) -> bool {
        let before = self.members.len();
        self.members.retain(|&m| m != s);
        before != self.members.len()
    }

    /// For every two members some member contains their union.
    pub fn is_ideal_base(&self) -> bool {
        self.members.iter().all(|&a| {
            self.members
                .iter()
                .all(|&b| self.members.iter().any(|&c| a.union(b).is_subset_of(c)))
        })
    }

    /// For every two members some member is contained in their intersection.
    pub fn is_filter_base(&self) -> bool {
        self.members.iter().all(|&a| {
            self.members
                .iter()
                .all(|&b| self.members.iter().any(|&c| c.is_subset_of(a.intersection(b))))
        })
    }

    pub fn covers_universe(&self) -> bool {
        self.union_all() == Subset::full(self.universe)
    }

    pub fn union_all(&self) -> Subset {
        self.members.iter().fold(Subset::EMPTY, |acc, &s| acc.union(s))
    }

    pub fn flags(&self, space: &GroundSpace) -> FamilyFlags {
        FamilyFlags {
            ideal_base: self.is_ideal_base(),
            covers_universe: self.covers_universe(),
            all_open: self.members.iter().all(|&s| space.is_open(s)),
            all_closed: self.members.iter().all(|&s| space.is_closed(s)),
        }
    }

    /// Least-encoding member containing `s`, if any.
    pub fn least_superset(&self, s: Subset) -> Option<Subset> {
        self.members
            .iter()
            .copied()
            .filter(|&m| s.is_subset_of(m))
            .min()
    }
}

/// Each member replaced by its closure; repeats merged.
pub fn closure_family(space: &GroundSpace, fam: &SetFamily) -> SetFamily {
    let mut seen = BTreeSet::new();
    SetFamily {
        universe: fam.universe,
        members: fam
            .members
            .iter()
            .map(|&s| space.closure(s))
            .filter(|s| seen.insert(*s))
            .collect(),
    }
}

/// Finite stand-ins for the O, Λ and Γ cover classes of a listed sequence of opens.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoverVerdict {
    pub is_o: bool,
    /// Largest `m` such that every member of the family lies in at least `m`
    /// distinct listed sets. Zero when the list is not a cover or the family is empty.
    pub lambda_m: usize,
    /// Smallest `w` such that every run of `w` consecutive listed sets has a
    /// superset of every member. `None` when no such `w` exists.
    pub gamma_window: Option<usize>,
}

/// Shared by [`classify_cover`] and the game targets. `groups` are consecutive
/// blocks of the list (one set per block for plain lists).
pub(crate) fn assess_cover<G: AsRef<[Subset]>>(universe: Subset, fam: &[Subset], groups: &[G]) -> CoverVerdict {
    let excludes_universe = groups
        .iter()
        .all(|g| g.as_ref().iter().all(|&u| u != universe));
    let is_o = excludes_universe
        && fam
            .iter()
            .all(|&a| groups.iter().any(|g| g.as_ref().iter().any(|&u| a.is_subset_of(u))));
    if !is_o {
        return CoverVerdict {
            is_o,
            lambda_m: 0,
            gamma_window: None,
        };
    }

    let lambda_m = if fam.is_empty() {
        0
    } else {
        let distinct: BTreeSet<Subset> = groups.iter().flat_map(|g| g.as_ref().iter().copied()).collect();
        fam.iter()
            .map(|&a| distinct.iter().filter(|&&u| a.is_subset_of(u)).count())
            .min()
            .unwrap_or(0)
    };

    let gamma_window = if fam.is_empty() {
        Some(0)
    } else {
        let n = groups.len();
        (1..=n).find(|&w| {
            (0..=n - w).all(|start| {
                let window = &groups[start..start + w];
                fam.iter().all(|&a| {
                    window
                        .iter()
                        .any(|g| g.as_ref().iter().any(|&u| a.is_subset_of(u)))
                })
            })
        })
    };

    CoverVerdict {
        is_o,
        lambda_m,
        gamma_window,
    }
}

/// Classifies `listed` against `fam`. Every listed set must be open.
pub fn classify_cover(space: &GroundSpace, fam: &SetFamily, listed: &[Subset]) -> Result<CoverVerdict, GroundError> {
    if let Some(&bad) = listed.iter().find(|&&u| !space.is_open(u)) {
        return Err(GroundError::NotOpen(bad));
    }
    let groups: Vec<[Subset; 1]> = listed.iter().map(|&u| [u]).collect();
    Ok(assess_cover(space.universe(), fam.members(), &groups))
}

/// Every member of `fam_a` sits inside some member of `fam_b`.
///
/// This is the direction under which a `fam_b`-cover is automatically a
/// `fam_a`-cover.
pub fn refines(fam_a: &SetFamily, fam_b: &SetFamily) -> bool {
    fam_a
        .members()
        .iter()
        .all(|&a| fam_b.members().iter().any(|&b| a.is_subset_of(b)))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MinCovers {
    /// Each cover as an ascending list of opens; covers in lexicographic order.
    pub covers: Vec<Vec<Subset>>,
    pub truncated: bool,
}

/// Inclusion-minimal families of opens that are O(X, fam)-covers, in
/// lexicographic order of their sorted encodings, at most `max_count` of them.
pub fn min_covers(space: &GroundSpace, fam: &SetFamily, max_count: usize) -> MinCovers {
    let max_count = max_count.max(1);
    // One hyperedge per member: the proper opens containing it.
    let edges: Vec<Vec<Subset>> = fam
        .members()
        .iter()
        .map(|&a| space.proper_neighborhoods(a))
        .collect();
    if edges.iter().any(|e| e.is_empty()) {
        return MinCovers {
            covers: Vec::new(),
            truncated: false,
        };
    }
    let candidates: Vec<Subset> = edges
        .iter()
        .flatten()
        .copied()
        .collect::<BTreeSet<_>>()
        .into_iter()
        .collect();
    // hits[c] = bitset of edges the candidate c hits.
    let hits: Vec<Vec<bool>> = candidates
        .iter()
        .map(|&c| edges.iter().map(|e| e.contains(&c)).collect())
        .collect();

    struct Search<'a> {
        hits: &'a [Vec<bool>],
        candidates: &'a [Subset],
        n_edges: usize,
        max_count: usize,
        out: Vec<Vec<Subset>>,
        truncated: bool,
    }

    impl Search<'_> {
        fn hit_count(&self, chosen: &[usize], e: usize) -> usize {
            chosen.iter().filter(|&&c| self.hits[c][e]).count()
        }

        fn all_needed(&self, chosen: &[usize]) -> bool {
            chosen.iter().all(|&c| {
                (0..self.n_edges).any(|e| self.hits[c][e] && self.hit_count(chosen, e) == 1)
            })
        }

        fn run(&mut self, next: usize, chosen: &mut Vec<usize>) {
            if self.truncated {
                return;
            }
            let uncovered: Vec<usize> = (0..self.n_edges)
                .filter(|&e| self.hit_count(chosen, e) == 0)
                .collect();
            if uncovered.is_empty() {
                if self.out.len() == self.max_count {
                    self.truncated = true;
                } else {
                    self.out.push(chosen.iter().map(|&c| self.candidates[c]).collect());
                }
                return;
            }
            // Every uncovered edge must still be hittable by a later candidate.
            let hittable = uncovered
                .iter()
                .all(|&e| (next..self.candidates.len()).any(|c| self.hits[c][e]));
            if !hittable || next == self.candidates.len() {
                return;
            }
            // Include first: yields covers in lexicographic order.
            if uncovered.iter().any(|&e| self.hits[next][e]) {
                chosen.push(next);
                if self.all_needed(chosen) {
                    self.run(next + 1, chosen);
                }
                chosen.pop();
            }
            self.run(next + 1, chosen);
        }
    }

    let mut search = Search {
        hits: &hits,
        candidates: &candidates,
        n_edges: edges.len(),
        max_count,
        out: Vec::new(),
        truncated: false,
    };
    search.run(0, &mut Vec::new());
    MinCovers {
        covers: search.out,
        truncated: search.truncated,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(items: &[usize]) -> Subset {
        Subset::from_items(items.iter().copied())
    }

    fn fam(n: usize, sets: &[&[usize]]) -> SetFamily {
        SetFamily::new(n, sets.iter().map(|x| s(x))).unwrap()
    }

    #[test]
    fn topology_from_chain_subbasis() {
        let sp = GroundSpace::build_topology(3, &[s(&[0]), s(&[0, 1])]).unwrap();
        assert_eq!(sp.opens(), &[s(&[]), s(&[0]), s(&[0, 1]), s(&[0, 1, 2])]);
    }

    #[test]
    fn indiscrete_and_discrete() {
        let ind = GroundSpace::build_topology(2, &[]).unwrap();
        assert_eq!(ind.opens(), &[s(&[]), s(&[0, 1])]);
        let disc = GroundSpace::build_topology(2, &[s(&[0]), s(&[1])]).unwrap();
        assert_eq!(disc.opens().len(), 4);
        assert!(disc.points_closed());
        assert!(!ind.points_closed());
    }

    #[test]
    fn topology_errors() {
        assert_eq!(GroundSpace::build_topology(17, &[]), Err(GroundError::CapExceeded(17)));
        // 13 singletons generate 2^13 = 8192 opens.
        let singles: Vec<Subset> = (0..13).map(Subset::singleton).collect();
        assert_eq!(
            GroundSpace::build_topology(13, &singles),
            Err(GroundError::TopologyTooLarge)
        );
        assert!(matches!(
            GroundSpace::build_topology(2, &[s(&[3])]),
            Err(GroundError::ItemOutOfRange { .. })
        ));
    }

    #[test]
    fn generated_topology_is_least() {
        // Removing any open that is neither in the subbasis nor forced
        // (empty set, universe) must break closure.
        let sub = [s(&[0, 1]), s(&[1, 2]), s(&[3])];
        let sp = GroundSpace::build_topology(4, &sub).unwrap();
        for &o in sp.opens() {
            if sub.contains(&o) || o == Subset::EMPTY || o == sp.universe() {
                continue;
            }
            let rest: Vec<Subset> = sp.opens().iter().copied().filter(|&x| x != o).collect();
            assert_eq!(GroundSpace::from_opens(4, &rest), Err(GroundError::NotATopology), "{o}");
        }
    }

    #[test]
    fn closures() {
        let disc = GroundSpace::discrete(3).unwrap();
        let f = fam(3, &[&[0], &[1, 2]]);
        assert_eq!(closure_family(&disc, &f), f);

        let sp = GroundSpace::build_topology(3, &[s(&[0]), s(&[0, 1])]).unwrap();
        assert_eq!(closure_family(&sp, &fam(3, &[&[0]])).members(), &[s(&[0, 1, 2])]);
        assert_eq!(closure_family(&sp, &fam(3, &[&[1]])).members(), &[s(&[1, 2])]);
        // Both {0} and {0,2} close to the universe: merged.
        assert_eq!(closure_family(&sp, &fam(3, &[&[0], &[0, 2]])).len(), 1);
    }

    #[test]
    fn classify_examples() {
        let disc = GroundSpace::discrete(3).unwrap();
        let single = SetFamily::singletons(3);
        let v = classify_cover(&disc, &single, &[s(&[0, 1]), s(&[1, 2])]).unwrap();
        assert_eq!(
            v,
            CoverVerdict {
                is_o: true,
                lambda_m: 1,
                gamma_window: Some(2)
            }
        );
        let v = classify_cover(&disc, &single, &[s(&[0, 1]), s(&[0, 1, 2])]).unwrap();
        assert!(!v.is_o);
        assert_eq!(v.lambda_m, 0);
        assert_eq!(v.gamma_window, None);

        let v = classify_cover(&disc, &SetFamily::empty(3), &[]).unwrap();
        assert_eq!(
            v,
            CoverVerdict {
                is_o: true,
                lambda_m: 0,
                gamma_window: Some(0)
            }
        );

        let sp = GroundSpace::build_topology(3, &[s(&[0])]).unwrap();
        assert_eq!(
            classify_cover(&sp, &single, &[s(&[1])]),
            Err(GroundError::NotOpen(s(&[1])))
        );
    }

    #[test]
    fn refines_examples() {
        let singles = SetFamily::singletons(3);
        let pairs = fam(3, &[&[0, 1], &[0, 2], &[1, 2]]);
        assert!(refines(&singles, &pairs));
        assert!(!refines(&fam(3, &[&[0, 1]]), &fam(3, &[&[0]])));
        assert!(refines(&pairs, &pairs));
    }

    #[test]
    fn min_cover_examples() {
        let disc = GroundSpace::discrete(2).unwrap();
        let r = min_covers(&disc, &SetFamily::singletons(2), 10);
        assert_eq!(r.covers, vec![vec![s(&[0]), s(&[1])]]);
        assert!(!r.truncated);

        // Ideal base covering the universe has no O-covers.
        let ib = fam(2, &[&[0], &[1], &[0, 1]]);
        assert!(ib.is_ideal_base() && ib.covers_universe());
        assert!(min_covers(&disc, &ib, 10).covers.is_empty());

        let r = min_covers(&disc, &SetFamily::empty(2), 10);
        assert_eq!(r.covers, vec![Vec::<Subset>::new()]);
    }

    #[test]
    fn min_covers_are_minimal_sorted_and_truncate() {
        let disc = GroundSpace::discrete(4).unwrap();
        let f = SetFamily::singletons(4);
        let all = min_covers(&disc, &f, usize::MAX);
        assert!(!all.truncated);
        let mut sorted = all.covers.clone();
        sorted.sort();
        assert_eq!(sorted, all.covers);
        for c in &all.covers {
            assert!(classify_cover(&disc, &f, c).unwrap().is_o);
            for skip in 0..c.len() {
                let fewer: Vec<Subset> = c.iter().enumerate().filter(|(k, _)| *k != skip).map(|(_, &u)| u).collect();
                assert!(!classify_cover(&disc, &f, &fewer).unwrap().is_o);
            }
        }
        let head = min_covers(&disc, &f, 3);
        assert!(head.truncated);
        assert_eq!(head.covers, all.covers[..3].to_vec());
    }

    #[test]
    fn family_flags_and_mutation() {
        let sp = GroundSpace::build_topology(3, &[s(&[0])]).unwrap();
        let mut f = fam(3, &[&[0], &[0, 1, 2]]);
        let flags = f.flags(&sp);
        assert!(flags.ideal_base && flags.covers_universe && flags.all_open);
        assert!(!flags.all_closed);
        f.push(s(&[1])).unwrap();
        assert!(!f.flags(&sp).all_open);
        f.remove(s(&[0, 1, 2]));
        assert!(!f.is_ideal_base());
        assert!(!f.covers_universe());
    }

    #[test]
    fn two_readings_of_nonempty_sets() {
        let sp = GroundSpace::build_topology(3, &[s(&[0])]).unwrap();
        assert_eq!(SetFamily::nonempty_subsets(3).len(), 7);
        assert_eq!(SetFamily::nonempty_opens(&sp).members(), &[s(&[0]), s(&[0, 1, 2])]);
    }

    #[test]
    fn topology_counts() {
        let counts: Vec<usize> = (0..=4)
            .map(|n| GroundSpace::enumerate_topologies(n).unwrap().len())
            .collect();
        // Number of labelled topologies on n points.
        assert_eq!(counts, vec![1, 1, 4, 29, 355]);
    }

    #[test]
    fn blades_in_discrete_space_are_sets_containing_the_point() {
        let disc = GroundSpace::discrete(3).unwrap();
        let b = SetFamily::blades(&disc, 1);
        assert!(b.members().iter().all(|m| m.contains(1)));
        assert_eq!(b.len(), 4);
    }
}
