//! Factorizations of continuous vertex maps into contractions and
//! incidence maps, fiber structure, and the injective and bijective cases.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{Edge, Graph, VertexId, VertexMap};
use crate::maps::{classify, compose, contraction_vertex_name, vertex_identification, PointMap};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FiberReport {
    pub target_vertex: VertexId,
    pub pieces: Vec<Graph>,
    pub independent_sets: Vec<BTreeSet<VertexId>>,
}

fn require_continuous_vertex_map(f: &PointMap) -> Result<()> {
    if !f.is_vertex_map() {
        return Err(Error::NotVertexMap);
    }
    if !f.is_continuous() {
        return Err(Error::NotContinuous);
    }
    Ok(())
}

fn reject_folds(f: &PointMap) -> Result<()> {
    match f.folded_edges().first() {
        Some(&e) => Err(Error::FoldedEdge(f.domain().edges()[e].to_string())),
        None => Ok(()),
    }
}

/// The vertices over `w`, split into connected pieces and, by greedy
/// colouring of each piece, into independent sets.
pub fn fiber_structure(f: &PointMap, w: &VertexId) -> Result<FiberReport> {
    require_continuous_vertex_map(f)?;
    let dom = f.domain();
    let wi = f.codomain().require_vertex(w)?;
    let keep: Vec<bool> = (0..dom.vertex_count()).map(|x| f.images()[x] == wi).collect();
    let pieces = dom.induced_by_mask(&keep).components();

    let mut classes: Vec<BTreeSet<VertexId>> = Vec::new();
    for piece in &pieces {
        let mut colour = vec![usize::MAX; piece.vertex_count()];
        for x in 0..piece.vertex_count() {
            let used: BTreeSet<usize> = piece.neighbors(x).map(|y| colour[y]).collect();
            let c = (0..).find(|c| !used.contains(c)).expect("unbounded range");
            colour[x] = c;
            if classes.len() <= c {
                classes.push(BTreeSet::new());
            }
            classes[c].insert(piece.vertices()[x].clone());
        }
    }
    Ok(FiberReport {
        target_vertex: w.clone(),
        pieces,
        independent_sets: classes,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FactorOrder {
    ContractionThenIncidence,
    IncidenceThenContraction,
}

/// `f = second ∘ first` through the graph `middle`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Factorization {
    pub middle: Graph,
    pub first: PointMap,
    pub second: PointMap,
    pub order: FactorOrder,
}

impl Factorization {
    pub fn composite(&self) -> Result<PointMap> {
        compose(&self.first, &self.second)
    }

    /// Checks the composite and the classes of both factors.
    pub fn verify(&self, f: &PointMap) -> bool {
        let (contraction, incidence) = match self.order {
            FactorOrder::ContractionThenIncidence => (&self.first, &self.second),
            FactorOrder::IncidenceThenContraction => (&self.second, &self.first),
        };
        self.composite().is_ok_and(|c| &c == f)
            && classify(contraction).contraction_like
            && incidence.is_incidence_map()
    }
}

/// Which collapsed edge `factor_contraction_first_with` contracts first.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ContractionOrder {
    Lexicographic,
    ReverseLexicographic,
}

pub fn factor_contraction_first(f: &PointMap) -> Result<Factorization> {
    factor_contraction_first_with(f, ContractionOrder::Lexicographic)
}

/// Contracts edges whose endpoints share an image until none remain, then
/// reads off the incidence map on the quotient.
pub fn factor_contraction_first_with(f: &PointMap, order: ContractionOrder) -> Result<Factorization> {
    require_continuous_vertex_map(f)?;
    let dom = f.domain();
    let cod = f.codomain();
    if !dom.is_connected() {
        return Err(Error::Disconnected);
    }
    reject_folds(f)?;

    let mut label: BTreeMap<VertexId, usize> = dom
        .vertices()
        .iter()
        .zip(f.images())
        .map(|(v, &q)| (v.clone(), q))
        .collect();
    let mut middle = dom.clone();
    let mut first = PointMap::identity(dom);
    loop {
        let collapsed = |e: &&Edge| {
            let (u, v) = e.endpoints();
            label[u] == label[v]
        };
        let next = match order {
            ContractionOrder::Lexicographic => middle.edges().iter().find(collapsed),
            ContractionOrder::ReverseLexicographic => middle.edges().iter().rev().find(collapsed),
        };
        let Some(e) = next.cloned() else { break };
        let (u, v) = e.endpoints();
        let mut name = contraction_vertex_name(u, v)?;
        while middle.has_vertex(&name) {
            name = VertexId::new(format!("{name}'"))?;
        }
        let step = vertex_identification(&middle, u, v, &name)?;
        let q = label[u];
        label.remove(u);
        label.remove(v);
        label.insert(name, q);
        first = compose(&first, &step.map)?;
        middle = step.quotient;
    }

    let mut images: Vec<usize> = middle.vertices().iter().map(|v| label[v]).collect();
    for e in 0..middle.edge_count() {
        let (a, b) = middle.edge_ends(e);
        let ce = cod
            .edge_between(images[a], images[b])
            .ok_or_else(|| Error::ConstructionFailed(format!("no edge under {}", middle.edges()[e])))?;
        images.push(cod.edge_point(ce));
    }
    let second = PointMap::from_positions_unchecked(middle.clone(), cod.clone(), images);
    let fact = Factorization {
        middle,
        first,
        second,
        order: FactorOrder::ContractionThenIncidence,
    };
    if !fact.verify(f) {
        return Err(Error::ConstructionFailed("contraction-first factors do not recompose".into()));
    }
    Ok(fact)
}

/// Embeds the domain into a graph where every fiber is connected and every
/// codomain vertex and edge has a preimage, then contracts the fibers.
///
/// The middle graph adds a fresh vertex for each codomain vertex with an
/// empty fiber, chains the pieces of each fiber through their smallest
/// vertices in increasing order, and adds one edge between fiber minima for
/// each codomain edge without a preimage edge.
pub fn factor_incidence_first(f: &PointMap) -> Result<Factorization> {
    require_continuous_vertex_map(f)?;
    reject_folds(f)?;
    let dom = f.domain();
    let cod = f.codomain();
    let n = dom.vertex_count();

    let mut vertices: Vec<VertexId> = dom.vertices().to_vec();
    let mut fiber_of: BTreeMap<VertexId, usize> = dom
        .vertices()
        .iter()
        .zip(f.images())
        .map(|(v, &q)| (v.clone(), q))
        .collect();
    let mut rep: Vec<Option<VertexId>> = vec![None; cod.vertex_count()];
    let mut edges: Vec<Edge> = dom.edges().to_vec();

    for (w, slot) in rep.iter_mut().enumerate() {
        let keep: Vec<bool> = (0..n).map(|x| f.images()[x] == w).collect();
        let pieces = dom.induced_by_mask(&keep).components();
        if pieces.is_empty() {
            let mut name = cod.vertices()[w].clone();
            while fiber_of.contains_key(&name) {
                name = VertexId::new(format!("{name}'"))?;
            }
            vertices.push(name.clone());
            fiber_of.insert(name.clone(), w);
            *slot = Some(name);
            continue;
        }
        let minima: Vec<&VertexId> = pieces.iter().map(|p| &p.vertices()[0]).collect();
        for pair in minima.windows(2) {
            edges.push(Edge::new(pair[0].clone(), pair[1].clone())?);
        }
        *slot = Some(minima[0].clone());
    }
    let mut covered = vec![false; cod.edge_count()];
    for e in 0..dom.edge_count() {
        let q = f.images()[dom.edge_point(e)];
        if !cod.is_vertex_point(q) {
            covered[q - cod.vertex_count()] = true;
        }
    }
    for (ce, _) in covered.iter().enumerate().filter(|(_, c)| !**c) {
        let (a, b) = cod.edge_ends(ce);
        let (ra, rb) = (rep[a].clone().expect("filled"), rep[b].clone().expect("filled"));
        edges.push(Edge::new(ra, rb)?);
    }
    let middle = Graph::from_parts(vertices, edges)?;

    let mut first_images: Vec<usize> = dom
        .vertices()
        .iter()
        .map(|v| middle.vertex_index(v).expect("domain vertex kept"))
        .collect();
    for e in dom.edges() {
        first_images.push(middle.edge_point(middle.edge_index(e).expect("domain edge kept")));
    }
    let first = PointMap::from_positions_unchecked(dom.clone(), middle.clone(), first_images);

    let mut second_images: Vec<usize> = middle.vertices().iter().map(|v| fiber_of[v]).collect();
    for e in 0..middle.edge_count() {
        let (a, b) = middle.edge_ends(e);
        let (x, y) = (second_images[a], second_images[b]);
        second_images.push(if x == y {
            x
        } else {
            let ce = cod
                .edge_between(x, y)
                .ok_or_else(|| Error::ConstructionFailed(format!("no edge under {}", middle.edges()[e])))?;
            cod.edge_point(ce)
        });
    }
    let second = PointMap::from_positions_unchecked(middle.clone(), cod.clone(), second_images);
    let fact = Factorization {
        middle,
        first,
        second,
        order: FactorOrder::IncidenceThenContraction,
    };
    if !fact.verify(f) {
        return Err(Error::ConstructionFailed("incidence-first factors do not recompose".into()));
    }
    Ok(fact)
}

/// A script for `contraction_script` that realises a contraction-like map:
/// a spanning tree of each fiber, contracted outward from the fiber's
/// smallest vertex.
pub fn contraction_script_of(h: &PointMap) -> Result<Vec<Edge>> {
    if !classify(h).contraction_like {
        return Err(Error::BadParameter("map is not a contraction".into()));
    }
    let dom = h.domain();
    let mut script = Vec::new();
    for w in 0..h.codomain().vertex_count() {
        let keep: Vec<bool> = (0..dom.vertex_count()).map(|x| h.images()[x] == w).collect();
        let fiber = dom.induced_by_mask(&keep);
        let Some(root) = fiber.vertices().first() else { continue };
        let mut current = root.clone();
        let mut seen = vec![false; fiber.vertex_count()];
        seen[0] = true;
        let mut queue = std::collections::VecDeque::from([0]);
        while let Some(x) = queue.pop_front() {
            for y in fiber.neighbors(x) {
                if !seen[y] {
                    seen[y] = true;
                    queue.push_back(y);
                    let e = Edge::new(current.clone(), fiber.vertices()[y].clone())?;
                    let (a, b) = e.endpoints();
                    current = contraction_vertex_name(a, b)?;
                    script.push(e);
                }
            }
        }
    }
    Ok(script)
}

/// The vertex restriction of an injective continuous map, which is an
/// injective homomorphism when the domain has no isolated vertex.
pub fn restrict_injective_to_hom(f: &PointMap) -> Result<VertexMap> {
    if !f.is_injective() {
        return Err(Error::NotInjective);
    }
    if !f.is_continuous() {
        return Err(Error::NotContinuous);
    }
    if let Some(v) = f.domain().isolated_vertices().into_iter().next() {
        return Err(Error::IsolatedVertexPresent(v.to_string()));
    }
    let fv = f
        .vertex_restriction()
        .ok_or_else(|| Error::ConstructionFailed("a vertex lands on an edge".into()))?;
    if !f.domain().is_homomorphism(f.codomain(), &fv)? {
        return Err(Error::ConstructionFailed("restriction is not a homomorphism".into()));
    }
    Ok(fv)
}

/// The vertex restriction of a homeomorphism, checked to be a graph
/// isomorphism.
pub fn homeomorphism_to_isomorphism(f: &PointMap) -> Result<VertexMap> {
    let inv = f.inverse().ok_or(Error::NotBijective)?;
    if !f.is_continuous() {
        return Err(Error::NotContinuous);
    }
    if !inv.is_continuous() {
        return Err(Error::InverseNotContinuous);
    }
    let failed = || Error::ConstructionFailed("restriction is not an isomorphism".into());
    let fv = f.vertex_restriction().ok_or_else(failed)?;
    let gv = inv.vertex_restriction().ok_or_else(failed)?;
    if !f.domain().is_homomorphism(f.codomain(), &fv)? || !f.codomain().is_homomorphism(f.domain(), &gv)? {
        return Err(failed());
    }
    Ok(fv)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{named_graph, NamedGraph};
    use crate::maps::{contraction_script, induced_from_hom, induced_from_weak_hom};
    use crate::topology::BarePoint;

    fn v(s: &str) -> VertexId {
        VertexId::new(s).unwrap()
    }

    fn vmap(pairs: &[(&str, &str)]) -> VertexMap {
        pairs.iter().map(|(a, b)| (v(a), v(b))).collect()
    }

    fn pt(s: &str) -> BarePoint {
        match s.split_once('-') {
            Some((a, b)) => BarePoint::edge(a, b).unwrap(),
            None => BarePoint::vertex(s).unwrap(),
        }
    }

    fn p3() -> Graph {
        Graph::new(&["a", "b", "c"], &[("a", "b"), ("b", "c")]).unwrap()
    }

    fn xy() -> Graph {
        Graph::new(&["x", "y"], &[("x", "y")]).unwrap()
    }

    fn k1() -> Graph {
        Graph::new(&["w"], &[] as &[(&str, &str)]).unwrap()
    }

    #[test]
    fn fibers() {
        let c4 = named_graph(NamedGraph::Cycle, 4).unwrap();
        let all: VertexMap = c4.vertices().iter().map(|x| (x.clone(), v("w"))).collect();
        let f = induced_from_weak_hom(&c4, &k1(), &all).unwrap();
        let r = fiber_structure(&f, &v("w")).unwrap();
        assert_eq!(r.pieces, vec![c4]);
        assert_eq!(r.independent_sets.len(), 2);

        let f = induced_from_hom(&p3(), &xy(), &vmap(&[("a", "x"), ("b", "y"), ("c", "x")])).unwrap();
        let r = fiber_structure(&f, &v("x")).unwrap();
        assert_eq!(r.pieces.len(), 2);
        assert_eq!(r.independent_sets, vec![BTreeSet::from([v("a"), v("c")])]);

        let f = induced_from_hom(&p3(), &named_graph(NamedGraph::Complete, 3).unwrap(), &vmap(&[("a", "v1"), ("b", "v2"), ("c", "v1")])).unwrap();
        let r = fiber_structure(&f, &v("v3")).unwrap();
        assert!(r.pieces.is_empty() && r.independent_sets.is_empty());
    }

    #[test]
    fn contraction_first_examples() {
        let k2 = Graph::new(&["u", "v"], &[("u", "v")]).unwrap();
        let f = induced_from_weak_hom(&k2, &k1(), &vmap(&[("u", "w"), ("v", "w")])).unwrap();
        let fact = factor_contraction_first(&f).unwrap();
        assert_eq!(fact.middle.vertex_count(), 1);
        assert_eq!(fact.second.images(), &[0]);

        let h = induced_from_hom(&p3(), &xy(), &vmap(&[("a", "x"), ("b", "y"), ("c", "x")])).unwrap();
        let fact = factor_contraction_first(&h).unwrap();
        assert_eq!(fact.middle, p3());
        assert_eq!(fact.first, PointMap::identity(&p3()));
        assert_eq!(fact.second, h);

        let p4 = Graph::new(&["a", "b", "c", "d"], &[("a", "b"), ("b", "c"), ("c", "d")]).unwrap();
        let f = induced_from_weak_hom(&p4, &xy(), &vmap(&[("a", "x"), ("b", "x"), ("c", "y"), ("d", "y")])).unwrap();
        let fact = factor_contraction_first(&f).unwrap();
        assert_eq!(fact.middle, Graph::new(&["a+b", "c+d"], &[("a+b", "c+d")]).unwrap());
        assert!(homeomorphism_to_isomorphism(&fact.second).is_ok());
        let rev = factor_contraction_first_with(&f, ContractionOrder::ReverseLexicographic).unwrap();
        assert!(rev.verify(&f));
    }

    #[test]
    fn contraction_first_errors() {
        let two = Graph::new(&["a", "b"], &[] as &[(&str, &str)]).unwrap();
        let f = induced_from_weak_hom(&two, &k1(), &vmap(&[("a", "w"), ("b", "w")])).unwrap();
        assert_eq!(factor_contraction_first(&f), Err(Error::Disconnected));
        let k2 = Graph::new(&["u", "v"], &[("u", "v")]).unwrap();
        let fold = PointMap::from_pairs(
            k2.clone(),
            xy(),
            [(pt("u"), pt("x")), (pt("v"), pt("x")), (pt("u-v"), pt("x-y"))],
        )
        .unwrap();
        assert!(matches!(factor_contraction_first(&fold), Err(Error::FoldedEdge(_))));
        assert!(matches!(factor_incidence_first(&fold), Err(Error::FoldedEdge(_))));
        let to_edge = PointMap::from_pairs(
            k2,
            xy(),
            [(pt("u"), pt("x-y")), (pt("v"), pt("x-y")), (pt("u-v"), pt("x-y"))],
        )
        .unwrap();
        assert_eq!(factor_contraction_first(&to_edge), Err(Error::NotVertexMap));
    }

    #[test]
    fn incidence_first_examples() {
        let all = vmap(&[("a", "w"), ("b", "w"), ("c", "w")]);
        let f = induced_from_weak_hom(&p3(), &k1(), &all).unwrap();
        let fact = factor_incidence_first(&f).unwrap();
        assert_eq!(fact.middle, p3());
        assert_eq!(fact.first, PointMap::identity(&p3()));
        assert_eq!(fact.second, f);

        let id = PointMap::identity(&p3());
        let fact = factor_incidence_first(&id).unwrap();
        assert_eq!((fact.first.clone(), fact.second.clone()), (id.clone(), id));

        let f = induced_from_weak_hom(&p3(), &xy(), &vmap(&[("a", "x"), ("b", "x"), ("c", "y")])).unwrap();
        let fact = factor_incidence_first(&f).unwrap();
        assert_eq!(fact.middle, p3());
        assert!(fact.verify(&f));
        let script = contraction_script_of(&fact.second).unwrap();
        assert_eq!(script, vec![Edge::parse("a", "b").unwrap()]);
        let replay = contraction_script(&fact.middle, &script).unwrap();
        assert_eq!(replay.quotient.vertex_count(), 2);
    }

    #[test]
    fn incidence_first_adds_missing_fibers_and_edges() {
        // Two non-adjacent vertices onto x, nothing onto y or z.
        let two = Graph::new(&["a", "b"], &[] as &[(&str, &str)]).unwrap();
        let k3 = Graph::new(&["x", "y", "z"], &[("x", "y"), ("y", "z"), ("x", "z")]).unwrap();
        let f = induced_from_hom(&two, &k3, &vmap(&[("a", "x"), ("b", "x")])).unwrap();
        let fact = factor_incidence_first(&f).unwrap();
        assert_eq!(
            fact.middle,
            Graph::new(&["a", "b", "y", "z"], &[("a", "b"), ("a", "y"), ("a", "z"), ("y", "z")]).unwrap()
        );
        assert!(fact.verify(&f));
    }

    #[test]
    fn injective_restriction() {
        let k2 = Graph::new(&["u", "v"], &[("u", "v")]).unwrap();
        let id = PointMap::identity(&k2);
        assert_eq!(restrict_injective_to_hom(&id).unwrap(), vmap(&[("u", "u"), ("v", "v")]));
        let k3 = Graph::new(&["a", "b", "c"], &[("a", "b"), ("b", "c"), ("a", "c")]).unwrap();
        let emb = induced_from_hom(&k2, &k3, &vmap(&[("u", "a"), ("v", "b")])).unwrap();
        assert_eq!(restrict_injective_to_hom(&emb).unwrap(), vmap(&[("u", "a"), ("v", "b")]));
        let constant = induced_from_weak_hom(&k2, &k1(), &vmap(&[("u", "w"), ("v", "w")])).unwrap();
        assert_eq!(restrict_injective_to_hom(&constant), Err(Error::NotInjective));
        let lone = PointMap::identity(&k1());
        assert!(matches!(restrict_injective_to_hom(&lone), Err(Error::IsolatedVertexPresent(_))));
    }

    #[test]
    fn homeomorphisms() {
        let pete = named_graph(NamedGraph::Petersen, 0).unwrap();
        let id = homeomorphism_to_isomorphism(&PointMap::identity(&pete)).unwrap();
        assert!(id.iter().all(|(a, b)| a == b));

        let c5 = named_graph(NamedGraph::Cycle, 5).unwrap();
        let rot: VertexMap = (1..=5).map(|i| (v(&format!("v{i}")), v(&format!("v{}", i % 5 + 1)))).collect();
        let f = induced_from_hom(&c5, &c5, &rot).unwrap();
        assert_eq!(homeomorphism_to_isomorphism(&f).unwrap(), rot);

        let k2 = Graph::new(&["u", "v"], &[("u", "v")]).unwrap();
        let swap = PointMap::from_pairs(
            k2.clone(),
            k2,
            [(pt("u"), pt("u-v")), (pt("u-v"), pt("u")), (pt("v"), pt("v"))],
        )
        .unwrap();
        assert!(matches!(
            homeomorphism_to_isomorphism(&swap),
            Err(Error::NotContinuous | Error::InverseNotContinuous)
        ));
        let constant = induced_from_weak_hom(&p3(), &k1(), &vmap(&[("a", "w"), ("b", "w"), ("c", "w")])).unwrap();
        assert_eq!(homeomorphism_to_isomorphism(&constant), Err(Error::NotBijective));
    }
}
