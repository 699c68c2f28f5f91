//! Bipartite preference systems: the HA, HAT and SMI variants.
//!
//! Vertices are dense integer ids in declaration order; user labels are kept
//! alongside. Edges are derived from the preference lists and stored sorted by
//! `(left, right)`, so an edge id is stable for a given instance.

use alloc::string::{String, ToString};
use alloc::vec::Vec;
use alloc::{format, vec};
use core::fmt;

use thiserror::Error;

use crate::matching::Graph;

/// Rank assigned to "no partner"; worse than every real rank.
pub const UNMATCHED_RANK: u32 = u32::MAX;

#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Vertex(u32);

impl Vertex {
    pub const fn new(index: usize) -> Self {
        Vertex(index as u32)
    }

    pub const fn index(self) -> usize {
        self.0 as usize
    }
}

impl fmt::Debug for Vertex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "v{}", self.0)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Side {
    Left,
    Right,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Variant {
    /// House allocation, strict one-sided preferences.
    Ha,
    /// House allocation with ties.
    Hat,
    /// Stable marriage with incomplete lists, strict two-sided preferences.
    Smi,
}

impl Variant {
    pub fn as_str(self) -> &'static str {
        match self {
            Variant::Ha => "ha",
            Variant::Hat => "hat",
            Variant::Smi => "smi",
        }
    }

    /// Only HAT allows ties.
    pub fn is_strict(self) -> bool {
        !matches!(self, Variant::Hat)
    }

    /// HA and HAT are one-sided and use last resorts.
    pub fn is_house_allocation(self) -> bool {
        matches!(self, Variant::Ha | Variant::Hat)
    }
}

impl fmt::Display for Variant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl core::str::FromStr for Variant {
    type Err = InstanceError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "ha" => Ok(Variant::Ha),
            "hat" => Ok(Variant::Hat),
            "smi" => Ok(Variant::Smi),
            other => Err(InstanceError::UnknownVariant(other.to_string())),
        }
    }
}

#[derive(Clone, Debug, Error, PartialEq, Eq)]
pub enum InstanceError {
    #[error("unknown problem variant `{0}`")]
    UnknownVariant(String),
    #[error("invalid vertex name `{0}`")]
    BadName(String),
    #[error("vertex `{0}` declared twice")]
    DuplicateVertex(String),
    #[error("unknown vertex `{0}`")]
    UnknownVertex(String),
    #[error("`{owner}` may not hold a preference list in this variant")]
    PrefOwnerNotAllowed { owner: String },
    #[error("preference list for `{0}` given twice")]
    DuplicatePrefList(String),
    #[error("`{owner}` lists `{entry}`, which is on the same side")]
    SameSideEntry { owner: String, entry: String },
    #[error("`{owner}` lists `{entry}` more than once")]
    DuplicatePrefEntry { owner: String, entry: String },
    #[error("`{owner}` has an empty tie group")]
    EmptyGroup { owner: String },
    #[error("`{owner}` uses ties, which this variant does not allow")]
    TiesNotAllowed { owner: String },
    #[error("vertex `{0}` is isolated")]
    IsolatedVertex(String),
    #[error("`{from}` lists `{to}` but `{to}` does not list `{from}`")]
    AsymmetricNeighborhood { from: String, to: String },
    #[error("last resorts only exist for house allocation instances")]
    WrongVariant,
    #[error("instance already carries last resorts")]
    AlreadyAugmented,
    #[error("instance has no last resorts; augment it first")]
    NotAugmented,
}

/// Tie groups of one preference holder, most preferred first.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PrefList {
    groups: Vec<Vec<Vertex>>,
}

impl PrefList {
    pub fn new(groups: Vec<Vec<Vertex>>) -> Self {
        PrefList { groups }
    }

    pub fn groups(&self) -> &[Vec<Vertex>] {
        &self.groups
    }

    pub fn rank_of(&self, v: Vertex) -> Option<u32> {
        self.groups
            .iter()
            .position(|g| g.contains(&v))
            .map(|r| r as u32)
    }

    pub fn iter(&self) -> impl Iterator<Item = Vertex> + '_ {
        self.groups.iter().flatten().copied()
    }

    pub fn has_ties(&self) -> bool {
        self.groups.iter().any(|g| g.len() > 1)
    }

    pub fn top(&self) -> &[Vertex] {
        self.groups.first().map(Vec::as_slice).unwrap_or(&[])
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Instance {
    variant: Variant,
    names: Vec<String>,
    synthetic: Vec<bool>,
    left: Vec<Vertex>,
    right: Vec<Vertex>,
    prefs: Vec<Option<PrefList>>,
    graph: Graph,
    left_rank: Vec<u32>,
    right_rank: Vec<Option<u32>>,
    last_resort: Vec<Option<Vertex>>,
}

impl Instance {
    pub fn variant(&self) -> Variant {
        self.variant
    }

    pub fn vertex_count(&self) -> usize {
        self.names.len()
    }

    pub fn vertices(&self) -> impl Iterator<Item = Vertex> {
        (0..self.names.len()).map(Vertex::new)
    }

    pub fn left(&self) -> &[Vertex] {
        &self.left
    }

    pub fn right(&self) -> &[Vertex] {
        &self.right
    }

    pub fn name(&self, v: Vertex) -> &str {
        &self.names[v.index()]
    }

    pub fn vertex_by_name(&self, name: &str) -> Option<Vertex> {
        self.names.iter().position(|n| n == name).map(Vertex::new)
    }

    pub fn side(&self, v: Vertex) -> Side {
        self.graph.side(v)
    }

    pub fn is_synthetic(&self, v: Vertex) -> bool {
        self.synthetic[v.index()]
    }

    pub fn is_augmented(&self) -> bool {
        self.synthetic.iter().any(|&s| s)
    }

    pub fn prefs(&self, v: Vertex) -> Option<&PrefList> {
        self.prefs[v.index()].as_ref()
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn edge_count(&self) -> usize {
        self.graph.edge_count()
    }

    pub fn edges(&self) -> &[(Vertex, Vertex)] {
        self.graph.edges()
    }

    pub fn edge_id(&self, left: Vertex, right: Vertex) -> Option<usize> {
        self.graph.edge_id(left, right)
    }

    /// The last resort house `l(a)` of applicant `a`, once augmented.
    pub fn last_resort(&self, a: Vertex) -> Option<Vertex> {
        self.last_resort[a.index()]
    }

    /// Rank of `other` in `owner`'s preferences (0 = most preferred tie group).
    ///
    /// Right vertices of HA/HAT instances have no preferences and get `None`.
    pub fn rank(&self, owner: Vertex, other: Vertex) -> Option<u32> {
        match self.side(owner) {
            Side::Left => self.edge_id(owner, other).map(|e| self.left_rank[e]),
            Side::Right => self.edge_id(other, owner).and_then(|e| self.right_rank[e]),
        }
    }

    /// Rank of edge `e` for its left endpoint.
    pub fn left_rank(&self, e: usize) -> u32 {
        self.left_rank[e]
    }

    /// Rank of edge `e` for its right endpoint (SMI only).
    pub fn right_rank(&self, e: usize) -> Option<u32> {
        self.right_rank[e]
    }

    /// Rank of a possibly absent partner; absence ranks last.
    pub fn partner_rank(&self, owner: Vertex, partner: Option<Vertex>) -> u32 {
        partner
            .and_then(|p| self.rank(owner, p))
            .unwrap_or(UNMATCHED_RANK)
    }

    /// All vertices that vote, in id order.
    pub fn voter_list(&self) -> Vec<Vertex> {
        match self.variant {
            Variant::Ha | Variant::Hat => self.left.clone(),
            Variant::Smi => self.vertices().collect(),
        }
    }

    /// Adds one synthetic, degree-one last resort house per applicant, ranked
    /// strictly below everything the applicant lists.
    pub fn add_last_resorts(&self) -> Result<Instance, InstanceError> {
        if !self.variant.is_house_allocation() {
            return Err(InstanceError::WrongVariant);
        }
        if self.is_augmented() {
            return Err(InstanceError::AlreadyAugmented);
        }
        let mut names = self.names.clone();
        let mut sides: Vec<Side> = self.vertices().map(|v| self.side(v)).collect();
        let mut synthetic = self.synthetic.clone();
        let mut prefs = self.prefs.clone();
        let mut right = self.right.clone();
        let mut last_resort = self.last_resort.clone();
        for &a in &self.left {
            let l = Vertex::new(names.len());
            names.push(format!("l({})", self.name(a)));
            sides.push(Side::Right);
            synthetic.push(true);
            prefs.push(None);
            last_resort.push(None);
            right.push(l);
            last_resort[a.index()] = Some(l);
            if let Some(p) = prefs[a.index()].as_mut() {
                p.groups.push(vec![l]);
            }
        }
        Ok(assemble(
            self.variant,
            names,
            sides,
            synthetic,
            self.left.clone(),
            right,
            prefs,
            last_resort,
        ))
    }

    /// Drops last resorts again; the inverse of [`Instance::add_last_resorts`].
    pub fn without_last_resorts(&self) -> Instance {
        if !self.is_augmented() {
            return self.clone();
        }
        self.rebuild(|_, _| true)
            .expect("removing last resorts keeps a valid instance")
    }

    /// The original instance (last resorts dropped) without the edge
    /// `(left, right)`; fails when that isolates a vertex.
    pub fn without_edge(&self, left: Vertex, right: Vertex) -> Result<Instance, InstanceError> {
        self.rebuild(|owner, x| (owner, x) != (left, right) && (owner, x) != (right, left))
    }

    /// Re-validates the non-synthetic part, keeping list entries for which
    /// `keep(owner, entry)` holds.
    fn rebuild(&self, mut keep: impl FnMut(Vertex, Vertex) -> bool) -> Result<Instance, InstanceError> {
        let kept: Vec<Vertex> = self.vertices().filter(|&v| !self.is_synthetic(v)).collect();
        let mut builder = InstanceBuilder::new(self.variant);
        for &v in &kept {
            match self.side(v) {
                Side::Left => builder.left(self.name(v)),
                Side::Right => builder.right(self.name(v)),
            };
        }
        for &v in &kept {
            if let Some(p) = self.prefs(v) {
                let groups: Vec<Vec<String>> = p
                    .groups()
                    .iter()
                    .map(|g| {
                        g.iter()
                            .filter(|&&x| !self.is_synthetic(x) && keep(v, x))
                            .map(|&x| self.name(x).to_string())
                            .collect::<Vec<_>>()
                    })
                    .filter(|g| !g.is_empty())
                    .collect();
                builder.pref(self.name(v), groups);
            }
        }
        builder.build()
    }

    /// Requires an HA/HAT instance carrying last resorts.
    pub fn require_augmented(&self) -> Result<(), InstanceError> {
        if !self.variant.is_house_allocation() {
            return Err(InstanceError::WrongVariant);
        }
        if !self.is_augmented() {
            return Err(InstanceError::NotAugmented);
        }
        Ok(())
    }

    /// Returns an augmented copy for HA/HAT, or a clone for SMI and
    /// already-augmented inputs.
    pub fn normalized(&self) -> Instance {
        if self.variant.is_house_allocation() && !self.is_augmented() {
            self.add_last_resorts().expect("checked variant and augmentation")
        } else {
            self.clone()
        }
    }
}

#[allow(clippy::too_many_arguments)]
fn assemble(
    variant: Variant,
    names: Vec<String>,
    sides: Vec<Side>,
    synthetic: Vec<bool>,
    left: Vec<Vertex>,
    right: Vec<Vertex>,
    prefs: Vec<Option<PrefList>>,
    last_resort: Vec<Option<Vertex>>,
) -> Instance {
    let mut edges = Vec::new();
    for &a in &left {
        if let Some(p) = &prefs[a.index()] {
            edges.extend(p.iter().map(|h| (a, h)));
        }
    }
    edges.sort_unstable();
    let left_rank = edges
        .iter()
        .map(|&(a, h)| {
            prefs[a.index()]
                .as_ref()
                .and_then(|p| p.rank_of(h))
                .expect("edge comes from a's list")
        })
        .collect();
    let right_rank = edges
        .iter()
        .map(|&(a, h)| prefs[h.index()].as_ref().and_then(|p| p.rank_of(a)))
        .collect();
    let graph = Graph::new(sides, edges);
    Instance {
        variant,
        names,
        synthetic,
        left,
        right,
        prefs,
        graph,
        left_rank,
        right_rank,
        last_resort,
    }
}

fn valid_name(name: &str) -> bool {
    !name.is_empty()
        && !name
            .chars()
            .any(|c| c.is_whitespace() || matches!(c, '>' | '(' | ')' | ';' | ':' | '#' | ','))
}

/// Collects vertices and preference lists, then validates them into an
/// [`Instance`] (without last resorts).
#[derive(Clone, Debug)]
pub struct InstanceBuilder {
    variant: Variant,
    names: Vec<String>,
    sides: Vec<Side>,
    prefs: Vec<(String, Vec<Vec<String>>)>,
}

impl InstanceBuilder {
    pub fn new(variant: Variant) -> Self {
        InstanceBuilder {
            variant,
            names: Vec::new(),
            sides: Vec::new(),
            prefs: Vec::new(),
        }
    }

    pub fn left(&mut self, name: impl Into<String>) -> &mut Self {
        self.names.push(name.into());
        self.sides.push(Side::Left);
        self
    }

    pub fn right(&mut self, name: impl Into<String>) -> &mut Self {
        self.names.push(name.into());
        self.sides.push(Side::Right);
        self
    }

    pub fn pref<S: Into<String>>(&mut self, owner: impl Into<String>, groups: Vec<Vec<S>>) -> &mut Self {
        let groups = groups
            .into_iter()
            .map(|g| g.into_iter().map(Into::into).collect())
            .collect();
        self.prefs.push((owner.into(), groups));
        self
    }

    pub fn build(&self) -> Result<Instance, InstanceError> {
        let n = self.names.len();
        for (i, name) in self.names.iter().enumerate() {
            if !valid_name(name) {
                return Err(InstanceError::BadName(name.clone()));
            }
            if self.names[..i].contains(name) {
                return Err(InstanceError::DuplicateVertex(name.clone()));
            }
        }
        let lookup = |name: &str| -> Result<Vertex, InstanceError> {
            self.names
                .iter()
                .position(|n| n == name)
                .map(Vertex::new)
                .ok_or_else(|| InstanceError::UnknownVertex(name.to_string()))
        };

        let mut prefs: Vec<Option<PrefList>> = vec![None; n];
        for (owner_name, groups) in &self.prefs {
            let owner = lookup(owner_name)?;
            let owner_side = self.sides[owner.index()];
            if self.variant.is_house_allocation() && owner_side == Side::Right {
                return Err(InstanceError::PrefOwnerNotAllowed {
                    owner: owner_name.clone(),
                });
            }
            if prefs[owner.index()].is_some() {
                return Err(InstanceError::DuplicatePrefList(owner_name.clone()));
            }
            let mut seen = vec![false; n];
            let mut out = Vec::with_capacity(groups.len());
            for group in groups {
                if group.is_empty() {
                    return Err(InstanceError::EmptyGroup {
                        owner: owner_name.clone(),
                    });
                }
                if group.len() > 1 && self.variant.is_strict() {
                    return Err(InstanceError::TiesNotAllowed {
                        owner: owner_name.clone(),
                    });
                }
                let mut g = Vec::with_capacity(group.len());
                for entry in group {
                    let v = lookup(entry)?;
                    if self.sides[v.index()] == owner_side {
                        return Err(InstanceError::SameSideEntry {
                            owner: owner_name.clone(),
                            entry: entry.clone(),
                        });
                    }
                    if core::mem::replace(&mut seen[v.index()], true) {
                        return Err(InstanceError::DuplicatePrefEntry {
                            owner: owner_name.clone(),
                            entry: entry.clone(),
                        });
                    }
                    g.push(v);
                }
                out.push(g);
            }
            prefs[owner.index()] = Some(PrefList::new(out));
        }

        let mut degree = vec![0usize; n];
        for (i, p) in prefs.iter().enumerate() {
            if self.sides[i] == Side::Left {
                if let Some(p) = p {
                    for v in p.iter() {
                        degree[i] += 1;
                        degree[v.index()] += 1;
                    }
                }
            }
        }

        if self.variant == Variant::Smi {
            // Every listed partner must list back, which also makes the
            // right-side lists cover exactly the neighborhood.
            for (i, p) in prefs.iter().enumerate() {
                let Some(p) = p else { continue };
                for v in p.iter() {
                    let back = prefs[v.index()]
                        .as_ref()
                        .is_some_and(|q| q.rank_of(Vertex::new(i)).is_some());
                    if !back {
                        return Err(InstanceError::AsymmetricNeighborhood {
                            from: self.names[i].clone(),
                            to: self.names[v.index()].clone(),
                        });
                    }
                }
            }
        }

        if let Some(i) = degree.iter().position(|&d| d == 0) {
            return Err(InstanceError::IsolatedVertex(self.names[i].clone()));
        }

        let left: Vec<Vertex> = (0..n)
            .filter(|&i| self.sides[i] == Side::Left)
            .map(Vertex::new)
            .collect();
        let right: Vec<Vertex> = (0..n)
            .filter(|&i| self.sides[i] == Side::Right)
            .map(Vertex::new)
            .collect();
        Ok(assemble(
            self.variant,
            self.names.clone(),
            self.sides.clone(),
            vec![false; n],
            left,
            right,
            prefs,
            vec![None; n],
        ))
    }
}

/// Canonical fixtures used throughout the tests and documentation.
pub mod fixtures {
    use super::*;

    /// HA: two applicants who both rank `h1` above `h2`.
    pub fn i1() -> Instance {
        let mut b = InstanceBuilder::new(Variant::Ha);
        b.left("a1").left("a2").right("h1").right("h2");
        b.pref("a1", vec![vec!["h1"], vec!["h2"]]);
        b.pref("a2", vec![vec!["h1"], vec!["h2"]]);
        b.build().expect("fixture I1 is valid")
    }

    /// HA: three applicants who all rank `h1 > h2 > h3`; no popular matching.
    pub fn i2() -> Instance {
        let mut b = InstanceBuilder::new(Variant::Ha);
        b.left("a1").left("a2").left("a3");
        b.right("h1").right("h2").right("h3");
        for a in ["a1", "a2", "a3"] {
            b.pref(a, vec![vec!["h1"], vec!["h2"], vec!["h3"]]);
        }
        b.build().expect("fixture I2 is valid")
    }

    /// HAT: `a1` is indifferent between `h1` and `h2`; `a2` ranks `h1 > h2`.
    pub fn i3() -> Instance {
        let mut b = InstanceBuilder::new(Variant::Hat);
        b.left("a1").left("a2").right("h1").right("h2");
        b.pref("a1", vec![vec!["h1", "h2"]]);
        b.pref("a2", vec![vec!["h1"], vec!["h2"]]);
        b.build().expect("fixture I3 is valid")
    }

    /// SMI: complete 2x2, everybody ranks index 1 before index 2.
    pub fn i4() -> Instance {
        let mut b = InstanceBuilder::new(Variant::Smi);
        b.left("u1").left("u2").right("v1").right("v2");
        b.pref("u1", vec![vec!["v1"], vec!["v2"]]);
        b.pref("u2", vec![vec!["v1"], vec!["v2"]]);
        b.pref("v1", vec![vec!["u1"], vec!["u2"]]);
        b.pref("v2", vec![vec!["u1"], vec!["u2"]]);
        b.build().expect("fixture I4 is valid")
    }
}
