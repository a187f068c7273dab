//! The bare representation `B(G)` and its star topology.
//!
//! Points of `B(G)` are addressed by position: vertex `i` is point `i`, edge
//! `j` is point `|V| + j`. This is also the order of [`BarePoint`]'s derived
//! `Ord`, so sorted point lists and position order agree.
//!
//! The topology is Alexandroff: the smallest open set around a vertex is its
//! open star, around an edge the edge alone. A set is open iff it contains
//! the star of each of its vertices.

use std::collections::HashSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{Edge, Graph, VertexId};

/// A point of `B(G)`: a vertex or an edge, never confused with each other.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub enum BarePoint {
    #[serde(rename = "v")]
    Vertex(VertexId),
    #[serde(rename = "e")]
    Edge(Edge),
}

impl BarePoint {
    pub fn is_vertex(&self) -> bool {
        matches!(self, BarePoint::Vertex(_))
    }

    pub fn vertex(id: &str) -> Result<Self> {
        Ok(BarePoint::Vertex(VertexId::new(id)?))
    }

    pub fn edge(u: &str, v: &str) -> Result<Self> {
        Ok(BarePoint::Edge(Edge::parse(u, v)?))
    }
}

impl fmt::Display for BarePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BarePoint::Vertex(v) => write!(f, "{v}"),
            BarePoint::Edge(e) => {
                let (a, b) = e.endpoints();
                write!(f, "{a}{b}")
            }
        }
    }
}

impl Graph {
    /// `|V| + |E|`.
    pub fn point_count(&self) -> usize {
        self.vertex_count() + self.edge_count()
    }

    pub fn is_vertex_point(&self, p: usize) -> bool {
        p < self.vertex_count()
    }

    pub fn point(&self, p: usize) -> BarePoint {
        let n = self.vertex_count();
        if p < n {
            BarePoint::Vertex(self.vertices()[p].clone())
        } else {
            BarePoint::Edge(self.edges()[p - n].clone())
        }
    }

    pub fn point_index(&self, p: &BarePoint) -> Option<usize> {
        match p {
            BarePoint::Vertex(v) => self.vertex_index(v),
            BarePoint::Edge(e) => self.edge_index(e).map(|i| i + self.vertex_count()),
        }
    }

    pub(crate) fn require_point(&self, p: &BarePoint) -> Result<usize> {
        self.point_index(p)
            .ok_or_else(|| Error::UnknownPoint(p.to_string()))
    }

    /// Point position of the edge at edge position `e`.
    pub fn edge_point(&self, e: usize) -> usize {
        self.vertex_count() + e
    }

    /// Whether point `p` lies in the open star of vertex position `v`.
    pub fn in_star(&self, v: usize, p: usize) -> bool {
        if p == v {
            return true;
        }
        let n = self.vertex_count();
        if p < n {
            return false;
        }
        let (a, b) = self.edge_ends(p - n);
        a == v || b == v
    }

    /// Whether point `q` lies in the minimal open neighbourhood of point `p`.
    pub fn in_minimal_neighborhood(&self, p: usize, q: usize) -> bool {
        if self.is_vertex_point(p) {
            self.in_star(p, q)
        } else {
            p == q
        }
    }
}

/// Points of the star at vertex position `v` as a bit mask (needs < 64 points).
pub(crate) fn star_mask(g: &Graph, v: usize) -> u64 {
    g.incident_edges(v)
        .iter()
        .fold(1u64 << v, |m, &e| m | 1u64 << g.edge_point(e))
}

pub(crate) fn full_mask(g: &Graph) -> u64 {
    let p = g.point_count();
    if p == 64 {
        u64::MAX
    } else {
        (1u64 << p) - 1
    }
}

/// Hard ceiling for bit-mask based enumeration.
pub const MASK_POINT_LIMIT: usize = 63;

/// A subset of `B(G)` tied to its ambient graph.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "PointSetDoc", into = "PointSetDoc")]
pub struct PointSet {
    ambient: Graph,
    members: Vec<bool>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct PointSetDoc {
    graph: Graph,
    points: Vec<BarePoint>,
}

impl TryFrom<PointSetDoc> for PointSet {
    type Error = Error;

    fn try_from(doc: PointSetDoc) -> Result<Self> {
        PointSet::from_points(&doc.graph, doc.points)
    }
}

impl From<PointSet> for PointSetDoc {
    fn from(set: PointSet) -> Self {
        PointSetDoc {
            points: set.points().collect(),
            graph: set.ambient,
        }
    }
}

impl fmt::Debug for PointSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.points().map(|p| p.to_string())).finish()
    }
}

impl PointSet {
    pub fn empty(g: &Graph) -> Self {
        PointSet {
            ambient: g.clone(),
            members: vec![false; g.point_count()],
        }
    }

    pub fn from_points(g: &Graph, points: impl IntoIterator<Item = BarePoint>) -> Result<Self> {
        let mut set = PointSet::empty(g);
        for p in points {
            let i = g.require_point(&p)?;
            set.members[i] = true;
        }
        Ok(set)
    }

    pub fn from_positions(g: &Graph, positions: impl IntoIterator<Item = usize>) -> Self {
        let mut set = PointSet::empty(g);
        for p in positions {
            set.members[p] = true;
        }
        set
    }

    pub(crate) fn from_mask(g: &Graph, mask: u64) -> Self {
        PointSet::from_positions(g, (0..g.point_count()).filter(|&p| mask >> p & 1 == 1))
    }

    pub fn ambient(&self) -> &Graph {
        &self.ambient
    }

    pub fn contains_position(&self, p: usize) -> bool {
        self.members[p]
    }

    pub fn contains(&self, p: &BarePoint) -> bool {
        self.ambient
            .point_index(p)
            .is_some_and(|i| self.members[i])
    }

    pub fn len(&self) -> usize {
        self.members.iter().filter(|&&m| m).count()
    }

    pub fn is_empty(&self) -> bool {
        !self.members.contains(&true)
    }

    pub fn positions(&self) -> impl Iterator<Item = usize> + '_ {
        self.members
            .iter()
            .enumerate()
            .filter(|(_, &m)| m)
            .map(|(i, _)| i)
    }

    pub fn points(&self) -> impl Iterator<Item = BarePoint> + '_ {
        self.positions().map(|p| self.ambient.point(p))
    }

    pub fn complement(&self) -> PointSet {
        PointSet {
            ambient: self.ambient.clone(),
            members: self.members.iter().map(|m| !m).collect(),
        }
    }

    pub fn is_subset(&self, other: &PointSet) -> bool {
        self.members.len() == other.members.len()
            && self.members.iter().zip(&other.members).all(|(a, b)| !a || *b)
    }

    pub fn intersection(&self, other: &PointSet) -> PointSet {
        PointSet {
            ambient: self.ambient.clone(),
            members: self.members.iter().zip(&other.members).map(|(a, b)| *a && *b).collect(),
        }
    }

    pub fn union(&self, other: &PointSet) -> PointSet {
        PointSet {
            ambient: self.ambient.clone(),
            members: self.members.iter().zip(&other.members).map(|(a, b)| *a || *b).collect(),
        }
    }
}

fn check_ambient(g: &Graph, a: &PointSet) -> Result<()> {
    if &a.ambient == g {
        Ok(())
    } else {
        Err(Error::AmbientMismatch)
    }
}

/// All of `B(G)`.
pub fn bare_points(g: &Graph) -> PointSet {
    PointSet::from_positions(g, 0..g.point_count())
}

/// `S(v)`: the vertex together with its incident edges.
pub fn open_star(g: &Graph, v: &VertexId) -> Result<PointSet> {
    let i = g.require_vertex(v)?;
    Ok(star_positions(g, i))
}

fn star_positions(g: &Graph, v: usize) -> PointSet {
    PointSet::from_positions(
        g,
        std::iter::once(v).chain(g.incident_edges(v).iter().map(|&e| g.edge_point(e))),
    )
}

/// The smallest open set containing `p`.
pub fn minimal_neighborhood(g: &Graph, p: &BarePoint) -> Result<PointSet> {
    let i = g.require_point(p)?;
    if g.is_vertex_point(i) {
        Ok(star_positions(g, i))
    } else {
        Ok(PointSet::from_positions(g, [i]))
    }
}

pub(crate) fn positions_open(g: &Graph, contains: impl Fn(usize) -> bool) -> bool {
    (0..g.vertex_count()).all(|v| {
        !contains(v)
            || g.incident_edges(v)
                .iter()
                .all(|&e| contains(g.edge_point(e)))
    })
}

/// A set is open iff it contains the star of each of its vertices.
pub fn is_open(g: &Graph, a: &PointSet) -> Result<bool> {
    check_ambient(g, a)?;
    Ok(positions_open(g, |p| a.members[p]))
}

pub fn is_closed(g: &Graph, a: &PointSet) -> Result<bool> {
    is_open(g, &a.complement())
}

/// The subgraph `H` with `B(H) = a`, when `a` is closed.
pub fn closed_subgraph_witness(g: &Graph, a: &PointSet) -> Result<Option<Graph>> {
    if !is_closed(g, a)? {
        return Ok(None);
    }
    let keep: Vec<bool> = a.members[..g.vertex_count()].to_vec();
    let vertices = g
        .vertices()
        .iter()
        .zip(&keep)
        .filter(|(_, &k)| k)
        .map(|(v, _)| v.clone())
        .collect();
    let edges = g
        .edges()
        .iter()
        .enumerate()
        .filter(|(e, _)| a.members[g.edge_point(*e)])
        .map(|(_, e)| e.clone())
        .collect();
    Graph::from_parts(vertices, edges).map(Some)
}

/// Adds the endpoints of every edge in `a`.
pub fn closure(g: &Graph, a: &PointSet) -> Result<PointSet> {
    check_ambient(g, a)?;
    let mut out = a.clone();
    for e in 0..g.edge_count() {
        if a.members[g.edge_point(e)] {
            let (x, y) = g.edge_ends(e);
            out.members[x] = true;
            out.members[y] = true;
        }
    }
    Ok(out)
}

/// Keeps the edges of `a` and the vertices of `a` whose star lies in `a`.
pub fn interior(g: &Graph, a: &PointSet) -> Result<PointSet> {
    check_ambient(g, a)?;
    let mut out = a.clone();
    for v in 0..g.vertex_count() {
        if a.members[v]
            && !g
                .incident_edges(v)
                .iter()
                .all(|&e| a.members[g.edge_point(e)])
        {
            out.members[v] = false;
        }
    }
    Ok(out)
}

/// Open sets as bit masks, generated from the sub-basis of open stars:
/// first all finite intersections, then all unions. Sorted ascending.
pub(crate) fn generate_open_masks(g: &Graph) -> Vec<u64> {
    assert!(g.point_count() <= MASK_POINT_LIMIT);
    let full = full_mask(g);
    // The empty intersection is the whole space.
    let mut basis: Vec<u64> = vec![full];
    let mut seen: HashSet<u64> = HashSet::from([full]);
    for v in 0..g.vertex_count() {
        let s = star_mask(g, v);
        if seen.insert(s) {
            basis.push(s);
        }
    }
    let mut frontier = 0;
    while frontier < basis.len() {
        let end = basis.len();
        for i in frontier..end {
            for j in 0..end {
                let m = basis[i] & basis[j];
                if seen.insert(m) {
                    basis.push(m);
                }
            }
        }
        frontier = end;
    }
    let mut opens: HashSet<u64> = HashSet::from([0u64]);
    for &b in &basis {
        let grown: Vec<u64> = opens.iter().map(|&o| o | b).collect();
        opens.extend(grown);
    }
    let mut out: Vec<u64> = opens.into_iter().collect();
    out.sort_unstable();
    out
}

/// Every open set of the star topology, exactly once, in a deterministic
/// order. Refuses graphs with more than `cap` points.
pub fn enumerate_open_sets(g: &Graph, cap: usize) -> Result<Vec<PointSet>> {
    check_point_cap(g, cap)?;
    Ok(generate_open_masks(g)
        .into_iter()
        .map(|m| PointSet::from_mask(g, m))
        .collect())
}

pub(crate) fn check_point_cap(g: &Graph, cap: usize) -> Result<()> {
    let size = g.point_count();
    let cap = cap.min(MASK_POINT_LIMIT);
    if size > cap {
        return Err(Error::TooLarge {
            what: "bare representation",
            size: size as u128,
            cap: cap as u128,
        });
    }
    Ok(())
}

/// `B(G)` is connected iff `G` is.
pub fn is_topologically_connected(g: &Graph) -> Result<bool> {
    if g.is_empty() {
        return Err(Error::EmptyGraph);
    }
    Ok(g.is_connected())
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SeparationReport {
    pub t0: bool,
    pub hausdorff: bool,
    /// A vertex and an incident edge that no pair of disjoint open sets
    /// separates.
    pub witness: Option<(BarePoint, BarePoint)>,
}

/// Checks T0 and Hausdorff by searching all point pairs, using minimal
/// neighbourhoods (the topology is Alexandroff).
pub fn separation_report(g: &Graph) -> SeparationReport {
    let n = g.point_count();
    let mut t0 = true;
    let mut hausdorff = true;
    for p in 0..n {
        for q in p + 1..n {
            // Some open set holds exactly one of p, q.
            if g.in_minimal_neighborhood(p, q) && g.in_minimal_neighborhood(q, p) {
                t0 = false;
            }
            // Disjoint open sets around p and q exist iff the minimal ones
            // are disjoint.
            if (0..n).any(|r| g.in_minimal_neighborhood(p, r) && g.in_minimal_neighborhood(q, r)) {
                hausdorff = false;
            }
        }
    }
    let witness = (0..g.vertex_count()).find_map(|v| {
        g.incident_edges(v)
            .first()
            .map(|&e| (g.point(v), g.point(g.edge_point(e))))
    });
    SeparationReport {
        t0,
        hausdorff,
        witness: if hausdorff { None } else { witness },
    }
}
