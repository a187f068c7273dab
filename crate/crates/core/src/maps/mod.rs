//! Total maps `B(G) -> B(H)`: continuity, classification and construction.

mod construct;
mod vertexify;

pub use construct::{
    contraction_script, contraction_vertex_name, induced_from_hom, induced_from_weak_hom,
    subdivision_collapse, vertex_identification, Identification,
};
pub(crate) use construct::induced_images;
pub use vertexify::vertexify;

use std::collections::HashSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{Graph, VertexMap};
use crate::topology::BarePoint;

/// A total function from the points of `domain` to the points of `codomain`.
///
/// `images[p]` is the codomain point position of domain point `p`.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "PointMapDoc", into = "PointMapDoc")]
pub struct PointMap {
    domain: Graph,
    codomain: Graph,
    images: Vec<usize>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct ImageDoc {
    from: BarePoint,
    to: BarePoint,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct PointMapDoc {
    domain: Graph,
    codomain: Graph,
    images: Vec<ImageDoc>,
}

impl TryFrom<PointMapDoc> for PointMap {
    type Error = Error;

    fn try_from(doc: PointMapDoc) -> Result<Self> {
        PointMap::from_pairs(
            doc.domain,
            doc.codomain,
            doc.images.into_iter().map(|i| (i.from, i.to)),
        )
    }
}

impl From<PointMap> for PointMapDoc {
    fn from(f: PointMap) -> Self {
        let images = (0..f.domain.point_count())
            .map(|p| ImageDoc {
                from: f.domain.point(p),
                to: f.codomain.point(f.images[p]),
            })
            .collect();
        PointMapDoc {
            domain: f.domain,
            codomain: f.codomain,
            images,
        }
    }
}

impl fmt::Debug for PointMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut m = f.debug_map();
        for (p, &q) in self.images.iter().enumerate() {
            m.entry(&self.domain.point(p).to_string(), &self.codomain.point(q).to_string());
        }
        m.finish()
    }
}

impl PointMap {
    /// Builds a map from image positions, checking length and range.
    pub fn from_positions(domain: Graph, codomain: Graph, images: Vec<usize>) -> Result<Self> {
        if images.len() != domain.point_count() {
            return Err(Error::PartialMap(format!(
                "{} images for {} points",
                images.len(),
                domain.point_count()
            )));
        }
        if let Some(&bad) = images.iter().find(|&&q| q >= codomain.point_count()) {
            return Err(Error::UnknownPoint(format!("position {bad}")));
        }
        Ok(PointMap {
            domain,
            codomain,
            images,
        })
    }

    pub(crate) fn from_positions_unchecked(domain: Graph, codomain: Graph, images: Vec<usize>) -> Self {
        debug_assert_eq!(images.len(), domain.point_count());
        PointMap {
            domain,
            codomain,
            images,
        }
    }

    /// Builds a map from `(from, to)` pairs; every domain point must appear
    /// exactly once.
    pub fn from_pairs(
        domain: Graph,
        codomain: Graph,
        pairs: impl IntoIterator<Item = (BarePoint, BarePoint)>,
    ) -> Result<Self> {
        let mut images = vec![usize::MAX; domain.point_count()];
        for (from, to) in pairs {
            let p = domain.require_point(&from)?;
            let q = codomain.require_point(&to)?;
            if images[p] != usize::MAX {
                return Err(Error::PartialMap(format!("point {from} listed twice")));
            }
            images[p] = q;
        }
        if let Some(p) = images.iter().position(|&q| q == usize::MAX) {
            return Err(Error::PartialMap(format!("no image for {}", domain.point(p))));
        }
        Ok(PointMap {
            domain,
            codomain,
            images,
        })
    }

    pub fn identity(g: &Graph) -> Self {
        PointMap {
            domain: g.clone(),
            codomain: g.clone(),
            images: (0..g.point_count()).collect(),
        }
    }

    pub fn domain(&self) -> &Graph {
        &self.domain
    }

    pub fn codomain(&self) -> &Graph {
        &self.codomain
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    pub fn image_of(&self, p: &BarePoint) -> Result<BarePoint> {
        let i = self.domain.require_point(p)?;
        Ok(self.codomain.point(self.images[i]))
    }

    /// The restriction to vertices, when every vertex lands on a vertex.
    pub fn vertex_restriction(&self) -> Option<VertexMap> {
        if !self.is_vertex_map() {
            return None;
        }
        let n = self.domain.vertex_count();
        Some(
            self.domain
                .vertex_map_from_positions(&self.codomain, &self.images[..n]),
        )
    }

    pub fn is_vertex_map(&self) -> bool {
        let n = self.domain.vertex_count();
        self.images[..n].iter().all(|&q| self.codomain.is_vertex_point(q))
    }

    pub fn is_edge_map(&self) -> bool {
        let n = self.domain.vertex_count();
        self.images[n..].iter().all(|&q| !self.codomain.is_vertex_point(q))
    }

    pub fn is_injective(&self) -> bool {
        let mut seen = HashSet::with_capacity(self.images.len());
        self.images.iter().all(|q| seen.insert(*q))
    }

    pub fn is_surjective(&self) -> bool {
        let mut hit = vec![false; self.codomain.point_count()];
        for &q in &self.images {
            hit[q] = true;
        }
        !hit.contains(&false)
    }

    /// Continuity via the sub-basis of open stars: the preimage of every
    /// `S_H(w)` must be open.
    pub fn is_continuous(&self) -> bool {
        is_continuous_positions(&self.domain, &self.codomain, &self.images)
    }

    /// Edges `xy` with `f(x) = f(y)` a vertex but `f(xy)` an edge at it.
    pub fn folded_edges(&self) -> Vec<usize> {
        folded_edges_positions(&self.domain, &self.codomain, &self.images)
    }

    /// A continuous vertex and edge map sending each edge `xy` to the edge
    /// `f(x) f(y)`; equivalently the map induced by a homomorphism.
    pub fn is_incidence_map(&self) -> bool {
        is_incidence_positions(&self.domain, &self.codomain, &self.images)
    }

    /// The inverse of a bijection.
    pub fn inverse(&self) -> Option<PointMap> {
        if self.domain.point_count() != self.codomain.point_count() || !self.is_injective() {
            return None;
        }
        let mut inv = vec![0; self.images.len()];
        for (p, &q) in self.images.iter().enumerate() {
            inv[q] = p;
        }
        Some(PointMap::from_positions_unchecked(
            self.codomain.clone(),
            self.domain.clone(),
            inv,
        ))
    }
}

pub(crate) fn is_continuous_positions(dom: &Graph, cod: &Graph, images: &[usize]) -> bool {
    (0..cod.vertex_count()).all(|w| {
        (0..dom.vertex_count()).all(|x| {
            !cod.in_star(w, images[x])
                || dom
                    .incident_edges(x)
                    .iter()
                    .all(|&e| cod.in_star(w, images[dom.edge_point(e)]))
        })
    })
}

pub(crate) fn folded_edges_positions(dom: &Graph, cod: &Graph, images: &[usize]) -> Vec<usize> {
    (0..dom.edge_count())
        .filter(|&e| {
            let (a, b) = dom.edge_ends(e);
            images[a] == images[b]
                && cod.is_vertex_point(images[a])
                && !cod.is_vertex_point(images[dom.edge_point(e)])
        })
        .collect()
}

pub(crate) fn is_incidence_positions(dom: &Graph, cod: &Graph, images: &[usize]) -> bool {
    let n = dom.vertex_count();
    images[..n].iter().all(|&q| cod.is_vertex_point(q))
        && (0..dom.edge_count()).all(|e| {
            let (a, b) = dom.edge_ends(e);
            cod.edge_between(images[a], images[b])
                .is_some_and(|ce| images[n + e] == cod.edge_point(ce) && images[a] != images[b])
        })
}

/// `g ∘ f`.
pub fn compose(f: &PointMap, g: &PointMap) -> Result<PointMap> {
    if f.codomain != g.domain {
        return Err(Error::DomainMismatch);
    }
    Ok(PointMap::from_positions_unchecked(
        f.domain.clone(),
        g.codomain.clone(),
        f.images.iter().map(|&q| g.images[q]).collect(),
    ))
}

pub fn is_continuous(f: &PointMap) -> bool {
    f.is_continuous()
}

/// An incident vertex/edge pair whose images break the incidence rule.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct IncidenceViolation {
    pub vertex: BarePoint,
    pub edge: BarePoint,
    pub vertex_image: BarePoint,
    pub edge_image: BarePoint,
}

/// For every incident `(v, e)`: `f(v) = f(e)`, or `f(v)` is a vertex and
/// `f(e)` an edge at it. Empty exactly when `f` is continuous.
pub fn check_incidence_preservation(f: &PointMap) -> Vec<IncidenceViolation> {
    let (dom, cod) = (&f.domain, &f.codomain);
    let mut out = Vec::new();
    for x in 0..dom.vertex_count() {
        let fx = f.images[x];
        for &e in dom.incident_edges(x) {
            let ep = dom.edge_point(e);
            let fe = f.images[ep];
            let ok = fx == fe || (cod.is_vertex_point(fx) && cod.in_star(fx, fe));
            if !ok {
                out.push(IncidenceViolation {
                    vertex: dom.point(x),
                    edge: dom.point(ep),
                    vertex_image: cod.point(fx),
                    edge_image: cod.point(fe),
                });
            }
        }
    }
    out
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ViolationKind {
    /// The incident pair in `points` breaks continuity.
    Incidence,
    VertexToEdge,
    EdgeToVertex,
    /// An edge whose endpoints share a vertex image but which lands on an
    /// edge; rules out incidence and contraction maps.
    FoldedEdge,
    /// Vertices with a common image that do not induce a connected subgraph.
    DisconnectedFiber,
    /// A codomain point missed by the map.
    Unhit,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Violation {
    pub kind: ViolationKind,
    pub points: Vec<BarePoint>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MapClassification {
    pub continuous: bool,
    pub vertex_map: bool,
    pub edge_map: bool,
    pub incidence_map: bool,
    pub injective: bool,
    pub surjective: bool,
    pub contraction_like: bool,
    pub violations: Vec<Violation>,
}

/// Computes every flag at once. `contraction_like` means: a continuous,
/// surjective vertex map without folded edges whose vertex fibers induce
/// connected subgraphs, i.e. a composite of edge contractions up to the
/// names of merged vertices.
pub fn classify(f: &PointMap) -> MapClassification {
    let (dom, cod) = (&f.domain, &f.codomain);
    let n = dom.vertex_count();
    let mut violations: Vec<Violation> = check_incidence_preservation(f)
        .into_iter()
        .map(|v| Violation {
            kind: ViolationKind::Incidence,
            points: vec![v.vertex, v.edge],
        })
        .collect();
    for x in 0..n {
        if !cod.is_vertex_point(f.images[x]) {
            violations.push(Violation {
                kind: ViolationKind::VertexToEdge,
                points: vec![dom.point(x)],
            });
        }
    }
    for e in 0..dom.edge_count() {
        let p = dom.edge_point(e);
        if cod.is_vertex_point(f.images[p]) {
            violations.push(Violation {
                kind: ViolationKind::EdgeToVertex,
                points: vec![dom.point(p)],
            });
        }
    }
    let folded = f.folded_edges();
    for &e in &folded {
        violations.push(Violation {
            kind: ViolationKind::FoldedEdge,
            points: vec![dom.point(dom.edge_point(e))],
        });
    }

    let continuous = f.is_continuous();
    let vertex_map = f.is_vertex_map();
    let surjective = f.is_surjective();
    let mut hit = vec![false; cod.point_count()];
    for &q in &f.images {
        hit[q] = true;
    }
    for (q, _) in hit.iter().enumerate().filter(|(_, h)| !**h) {
        violations.push(Violation {
            kind: ViolationKind::Unhit,
            points: vec![cod.point(q)],
        });
    }

    let mut fibers_connected = true;
    if vertex_map {
        for w in 0..cod.vertex_count() {
            let keep: Vec<bool> = (0..n).map(|x| f.images[x] == w).collect();
            let fiber = dom.induced_by_mask(&keep);
            if fiber.vertex_count() > 1 && !fiber.is_connected() {
                fibers_connected = false;
                violations.push(Violation {
                    kind: ViolationKind::DisconnectedFiber,
                    points: vec![cod.point(w)],
                });
            }
        }
    }

    MapClassification {
        continuous,
        vertex_map,
        edge_map: f.is_edge_map(),
        incidence_map: f.is_incidence_map(),
        injective: f.is_injective(),
        surjective,
        contraction_like: continuous && vertex_map && surjective && folded.is_empty() && fibers_connected,
        violations,
    }
}
