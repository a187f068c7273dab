//! Finite simple graphs and the purely graph-theoretic operations used by the
//! rest of the crate.
//!
//! Vertices are kept in a sorted vector and edges in a sorted vector of
//! canonical pairs, so a vertex (or edge) can be addressed by its position.
//! Positions follow the lexicographic order of identifiers, which is the
//! order every deterministic choice in the crate is made in.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Opaque vertex identifier: a nonempty string without whitespace.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(try_from = "String", into = "String")]
pub struct VertexId(String);

impl VertexId {
    pub fn new(id: impl Into<String>) -> Result<Self> {
        let id = id.into();
        if id.is_empty() || id.chars().any(char::is_whitespace) {
            return Err(Error::InvalidId(id));
        }
        Ok(VertexId(id))
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }
}

impl TryFrom<String> for VertexId {
    type Error = Error;

    fn try_from(id: String) -> Result<Self> {
        VertexId::new(id)
    }
}

impl From<VertexId> for String {
    fn from(id: VertexId) -> String {
        id.0
    }
}

impl FromStr for VertexId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        VertexId::new(s)
    }
}

impl fmt::Display for VertexId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

/// An unordered pair of distinct vertices, stored with the smaller
/// identifier first.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(try_from = "[VertexId; 2]", into = "[VertexId; 2]")]
pub struct Edge {
    lo: VertexId,
    hi: VertexId,
}

impl Edge {
    pub fn new(u: VertexId, v: VertexId) -> Result<Self> {
        match u.cmp(&v) {
            std::cmp::Ordering::Less => Ok(Edge { lo: u, hi: v }),
            std::cmp::Ordering::Greater => Ok(Edge { lo: v, hi: u }),
            std::cmp::Ordering::Equal => Err(Error::LoopEdge(u.0)),
        }
    }

    /// Convenience constructor from two identifier strings.
    pub fn parse(u: &str, v: &str) -> Result<Self> {
        Edge::new(VertexId::new(u)?, VertexId::new(v)?)
    }

    pub fn endpoints(&self) -> (&VertexId, &VertexId) {
        (&self.lo, &self.hi)
    }

    pub fn contains(&self, v: &VertexId) -> bool {
        &self.lo == v || &self.hi == v
    }

    /// The endpoint opposite to `v`, if `v` is an endpoint.
    pub fn other(&self, v: &VertexId) -> Option<&VertexId> {
        if &self.lo == v {
            Some(&self.hi)
        } else if &self.hi == v {
            Some(&self.lo)
        } else {
            None
        }
    }
}

impl TryFrom<[VertexId; 2]> for Edge {
    type Error = Error;

    fn try_from([u, v]: [VertexId; 2]) -> Result<Self> {
        Edge::new(u, v)
    }
}

impl From<Edge> for [VertexId; 2] {
    fn from(e: Edge) -> Self {
        [e.lo, e.hi]
    }
}

impl fmt::Display for Edge {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.lo, self.hi)
    }
}

/// Vertex functions between graphs, keyed by domain vertex.
pub type VertexMap = BTreeMap<VertexId, VertexId>;

/// A finite simple graph.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "GraphDoc", into = "GraphDoc")]
pub struct Graph {
    vertices: Vec<VertexId>,
    edges: Vec<Edge>,
    // Vertex positions of each edge's endpoints, (lo, hi).
    ends: Vec<(usize, usize)>,
    // Edge positions incident to each vertex, ascending.
    incident: Vec<Vec<usize>>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct GraphDoc {
    vertices: Vec<VertexId>,
    edges: Vec<[VertexId; 2]>,
}

impl TryFrom<GraphDoc> for Graph {
    type Error = Error;

    fn try_from(doc: GraphDoc) -> Result<Self> {
        let edges = doc
            .edges
            .into_iter()
            .map(Edge::try_from)
            .collect::<Result<Vec<_>>>()?;
        Graph::from_parts(doc.vertices, edges)
    }
}

impl From<Graph> for GraphDoc {
    fn from(g: Graph) -> Self {
        GraphDoc {
            vertices: g.vertices,
            edges: g.edges.into_iter().map(Into::into).collect(),
        }
    }
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Graph {{ V = {{")?;
        for (i, v) in self.vertices.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{v}")?;
        }
        write!(f, "}}, E = {{")?;
        for (i, e) in self.edges.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{}-{}", e.lo, e.hi)?;
        }
        write!(f, "}} }}")
    }
}

impl Graph {
    /// Builds a validated graph from identifier strings.
    ///
    /// Edges are canonicalized and duplicates collapsed. Fails with
    /// `DuplicateVertex`, `LoopEdge` or `UnknownEndpoint`.
    pub fn new<S: AsRef<str>>(vertex_ids: &[S], edge_pairs: &[(S, S)]) -> Result<Self> {
        let vertices = vertex_ids
            .iter()
            .map(|s| VertexId::new(s.as_ref()))
            .collect::<Result<Vec<_>>>()?;
        let edges = edge_pairs
            .iter()
            .map(|(u, v)| Edge::parse(u.as_ref(), v.as_ref()))
            .collect::<Result<Vec<_>>>()?;
        Graph::from_parts(vertices, edges)
    }

    pub fn from_parts(vertices: Vec<VertexId>, edges: Vec<Edge>) -> Result<Self> {
        let mut seen = BTreeSet::new();
        for v in &vertices {
            if !seen.insert(v) {
                return Err(Error::DuplicateVertex(v.to_string()));
            }
        }
        for e in &edges {
            for end in [&e.lo, &e.hi] {
                if !seen.contains(end) {
                    return Err(Error::UnknownEndpoint(end.to_string()));
                }
            }
        }
        let mut vertices = vertices;
        vertices.sort();
        let mut edges = edges;
        edges.sort();
        edges.dedup();
        Ok(Graph::from_sorted(vertices, edges))
    }

    // Both inputs sorted, deduplicated and consistent.
    fn from_sorted(vertices: Vec<VertexId>, edges: Vec<Edge>) -> Self {
        let pos = |v: &VertexId| vertices.binary_search(v).expect("endpoint is a vertex");
        let ends: Vec<(usize, usize)> = edges.iter().map(|e| (pos(&e.lo), pos(&e.hi))).collect();
        let mut incident = vec![Vec::new(); vertices.len()];
        for (i, &(a, b)) in ends.iter().enumerate() {
            incident[a].push(i);
            incident[b].push(i);
        }
        Graph {
            vertices,
            edges,
            ends,
            incident,
        }
    }

    /// The graph with no vertices.
    pub fn empty() -> Self {
        Graph::from_sorted(Vec::new(), Vec::new())
    }

    pub fn vertices(&self) -> &[VertexId] {
        &self.vertices
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn has_vertex(&self, v: &VertexId) -> bool {
        self.vertex_index(v).is_some()
    }

    pub fn has_edge(&self, e: &Edge) -> bool {
        self.edge_index(e).is_some()
    }

    pub fn vertex_index(&self, v: &VertexId) -> Option<usize> {
        self.vertices.binary_search(v).ok()
    }

    pub fn edge_index(&self, e: &Edge) -> Option<usize> {
        self.edges.binary_search(e).ok()
    }

    pub(crate) fn require_vertex(&self, v: &VertexId) -> Result<usize> {
        self.vertex_index(v)
            .ok_or_else(|| Error::UnknownVertex(v.to_string()))
    }

    /// Endpoint positions of the edge at position `e`.
    pub fn edge_ends(&self, e: usize) -> (usize, usize) {
        self.ends[e]
    }

    /// Edge positions incident to the vertex at position `v`.
    pub fn incident_edges(&self, v: usize) -> &[usize] {
        &self.incident[v]
    }

    /// Position of the edge joining vertex positions `a` and `b`.
    pub fn edge_between(&self, a: usize, b: usize) -> Option<usize> {
        let key = if a < b { (a, b) } else { (b, a) };
        self.ends.binary_search(&key).ok()
    }

    pub fn neighbors(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        self.incident[v].iter().map(move |&e| {
            let (a, b) = self.ends[e];
            if a == v {
                b
            } else {
                a
            }
        })
    }

    pub fn degree(&self, v: &VertexId) -> Result<usize> {
        Ok(self.incident[self.require_vertex(v)?].len())
    }

    pub fn isolated_vertices(&self) -> BTreeSet<VertexId> {
        self.vertices
            .iter()
            .zip(&self.incident)
            .filter(|(_, inc)| inc.is_empty())
            .map(|(v, _)| v.clone())
            .collect()
    }

    /// The subgraph induced by `subset`.
    pub fn induced_subgraph(&self, subset: &BTreeSet<VertexId>) -> Result<Graph> {
        let mut keep = vec![false; self.vertex_count()];
        for v in subset {
            keep[self.require_vertex(v)?] = true;
        }
        Ok(self.induced_by_mask(&keep))
    }

    pub(crate) fn induced_by_mask(&self, keep: &[bool]) -> Graph {
        let vertices = self
            .vertices
            .iter()
            .zip(keep)
            .filter(|(_, &k)| k)
            .map(|(v, _)| v.clone())
            .collect();
        let edges = self
            .edges
            .iter()
            .zip(&self.ends)
            .filter(|(_, &(a, b))| keep[a] && keep[b])
            .map(|(e, _)| e.clone())
            .collect();
        Graph::from_sorted(vertices, edges)
    }

    /// True iff `self` is a subgraph of `other`.
    pub fn is_subgraph_of(&self, other: &Graph) -> bool {
        self.vertices.iter().all(|v| other.has_vertex(v))
            && self.edges.iter().all(|e| other.has_edge(e))
    }

    pub fn disjoint_union(&self, other: &Graph) -> Result<Graph> {
        if let Some(v) = self.vertices.iter().find(|v| other.has_vertex(v)) {
            return Err(Error::NotDisjoint(v.to_string()));
        }
        let vertices = self.vertices.iter().chain(&other.vertices).cloned().collect();
        let edges = self.edges.iter().chain(&other.edges).cloned().collect();
        Graph::from_parts(vertices, edges)
    }

    /// Replaces the edge `e = uv` by the path `u w v`.
    pub fn subdivide_edge(&self, e: &Edge, w: VertexId) -> Result<Graph> {
        if !self.has_edge(e) {
            return Err(Error::UnknownEdge(e.to_string()));
        }
        if self.has_vertex(&w) {
            return Err(Error::DuplicateVertex(w.to_string()));
        }
        let mut vertices = self.vertices.clone();
        vertices.push(w.clone());
        let mut edges: Vec<Edge> = self.edges.iter().filter(|&x| x != e).cloned().collect();
        edges.push(Edge::new(e.lo.clone(), w.clone())?);
        edges.push(Edge::new(w, e.hi.clone())?);
        Graph::from_parts(vertices, edges)
    }

    /// Component label per vertex position; labels are numbered in order of
    /// each component's smallest vertex.
    pub fn component_labels(&self) -> (Vec<usize>, usize) {
        let n = self.vertex_count();
        let mut label = vec![usize::MAX; n];
        let mut count = 0;
        let mut stack = Vec::new();
        for start in 0..n {
            if label[start] != usize::MAX {
                continue;
            }
            label[start] = count;
            stack.push(start);
            while let Some(v) = stack.pop() {
                for u in self.neighbors(v) {
                    if label[u] == usize::MAX {
                        label[u] = count;
                        stack.push(u);
                    }
                }
            }
            count += 1;
        }
        (label, count)
    }

    /// Maximal connected subgraphs, ordered by smallest vertex.
    pub fn components(&self) -> Vec<Graph> {
        let (label, count) = self.component_labels();
        (0..count)
            .map(|c| {
                let keep: Vec<bool> = label.iter().map(|&l| l == c).collect();
                self.induced_by_mask(&keep)
            })
            .collect()
    }

    pub fn is_connected(&self) -> bool {
        self.component_labels().1 == 1
    }

    /// Vertex positions of `fv` images, checking totality.
    pub(crate) fn vertex_images(&self, codomain: &Graph, fv: &VertexMap) -> Result<Vec<usize>> {
        if let Some(extra) = fv.keys().find(|v| !self.has_vertex(v)) {
            return Err(Error::UnknownVertex(extra.to_string()));
        }
        self.vertices
            .iter()
            .map(|v| {
                let image = fv
                    .get(v)
                    .ok_or_else(|| Error::PartialMap(format!("no image for {v}")))?;
                codomain.require_vertex(image)
            })
            .collect()
    }

    /// Every edge `uv` has `f(u) f(v)` as an edge of `codomain`.
    pub fn is_homomorphism(&self, codomain: &Graph, fv: &VertexMap) -> Result<bool> {
        let images = self.vertex_images(codomain, fv)?;
        Ok(is_homomorphism_positions(self, codomain, &images))
    }

    /// Every edge `uv` has `f(u) = f(v)` or `f(u) f(v)` an edge of `codomain`.
    pub fn is_weak_homomorphism(&self, codomain: &Graph, fv: &VertexMap) -> Result<bool> {
        let images = self.vertex_images(codomain, fv)?;
        Ok(is_weak_homomorphism_positions(self, codomain, &images))
    }

    /// Index-based vertex map back to identifiers.
    pub(crate) fn vertex_map_from_positions(&self, codomain: &Graph, images: &[usize]) -> VertexMap {
        self.vertices
            .iter()
            .zip(images)
            .map(|(v, &w)| (v.clone(), codomain.vertices[w].clone()))
            .collect()
    }
}

pub(crate) fn is_homomorphism_positions(g: &Graph, h: &Graph, images: &[usize]) -> bool {
    g.ends
        .iter()
        .all(|&(a, b)| h.edge_between(images[a], images[b]).is_some() && images[a] != images[b])
}

pub(crate) fn is_weak_homomorphism_positions(g: &Graph, h: &Graph, images: &[usize]) -> bool {
    g.ends.iter().all(|&(a, b)| {
        let (x, y) = (images[a], images[b]);
        x == y || h.edge_between(x, y).is_some()
    })
}

/// Standard graph families with vertices `v1..vn`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NamedGraph {
    Path,
    Cycle,
    Complete,
    Edgeless,
    Petersen,
}

impl FromStr for NamedGraph {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "path" => Ok(NamedGraph::Path),
            "cycle" => Ok(NamedGraph::Cycle),
            "complete" => Ok(NamedGraph::Complete),
            "edgeless" => Ok(NamedGraph::Edgeless),
            "petersen" => Ok(NamedGraph::Petersen),
            other => Err(Error::BadParameter(format!("unknown graph family {other}"))),
        }
    }
}

fn vid(i: usize) -> String {
    format!("v{i}")
}

/// Builds a member of a standard family. `n` is ignored for Petersen.
pub fn named_graph(kind: NamedGraph, n: usize) -> Result<Graph> {
    if kind != NamedGraph::Petersen && n == 0 {
        return Err(Error::BadParameter("n must be positive".into()));
    }
    let (n, pairs): (usize, Vec<(usize, usize)>) = match kind {
        NamedGraph::Path => (n, (1..n).map(|i| (i, i + 1)).collect()),
        NamedGraph::Cycle => {
            if n < 3 {
                return Err(Error::BadParameter(format!("a simple cycle needs n >= 3, got {n}")));
            }
            (n, (1..=n).map(|i| (i, i % n + 1)).collect())
        }
        NamedGraph::Complete => (
            n,
            (1..=n)
                .flat_map(|i| (i + 1..=n).map(move |j| (i, j)))
                .collect(),
        ),
        NamedGraph::Edgeless => (n, Vec::new()),
        NamedGraph::Petersen => {
            let mut pairs = Vec::with_capacity(15);
            for i in 1..=5 {
                pairs.push((i, i % 5 + 1));
                pairs.push((i, i + 5));
                pairs.push((i + 5, (i + 1) % 5 + 6));
            }
            (10, pairs)
        }
    };
    let vertices: Vec<String> = (1..=n).map(vid).collect();
    let edges: Vec<(String, String)> = pairs.into_iter().map(|(a, b)| (vid(a), vid(b))).collect();
    Graph::new(&vertices, &edges)
}
