use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use super::PointMap;
use crate::error::{Error, Result};
use crate::graph::{Edge, Graph, VertexId, VertexMap};

/// Map induced by a homomorphism: `v -> f(v)`, `uv -> f(u) f(v)`.
pub fn induced_from_hom(g: &Graph, h: &Graph, fv: &VertexMap) -> Result<PointMap> {
    if !g.is_homomorphism(h, fv)? {
        return Err(Error::NotHomomorphism);
    }
    induce(g, h, fv)
}

/// Map induced by a weak homomorphism: collapsed edges go to the common
/// vertex image, the rest to the edge between the images.
pub fn induced_from_weak_hom(g: &Graph, h: &Graph, fv: &VertexMap) -> Result<PointMap> {
    if !g.is_weak_homomorphism(h, fv)? {
        return Err(Error::NotWeakHomomorphism);
    }
    induce(g, h, fv)
}

fn induce(g: &Graph, h: &Graph, fv: &VertexMap) -> Result<PointMap> {
    let vimg = g.vertex_images(h, fv)?;
    Ok(PointMap::from_positions_unchecked(
        g.clone(),
        h.clone(),
        induced_images(g, h, &vimg),
    ))
}

/// Point images of the map induced by a weak homomorphism given by vertex
/// positions. Callers guarantee the weak homomorphism property.
pub(crate) fn induced_images(g: &Graph, h: &Graph, vimg: &[usize]) -> Vec<usize> {
    let mut images = vimg.to_vec();
    for e in 0..g.edge_count() {
        let (a, b) = g.edge_ends(e);
        let (x, y) = (vimg[a], vimg[b]);
        images.push(if x == y {
            x
        } else {
            h.edge_point(h.edge_between(x, y).expect("weak homomorphism"))
        });
    }
    images
}

/// A quotient graph with its quotient map.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Identification {
    pub quotient: Graph,
    pub map: PointMap,
}

/// Name given to the merged vertex when contracting `uv` without an
/// explicit name.
pub fn contraction_vertex_name(u: &VertexId, v: &VertexId) -> Result<VertexId> {
    VertexId::new(format!("{u}+{v}"))
}

/// Merges `u` and `v` into `w`, redirecting incident edges; parallel edges
/// merge and the edge `uv`, if present, collapses onto `w`.
pub fn vertex_identification(g: &Graph, u: &VertexId, v: &VertexId, w: &VertexId) -> Result<Identification> {
    if u == v {
        return Err(Error::SameVertex);
    }
    let ui = g.require_vertex(u)?;
    let vi = g.require_vertex(v)?;
    if w != u && w != v && g.has_vertex(w) {
        return Err(Error::NameClash(w.to_string()));
    }
    identify_positions(g, ui, vi, w.clone())
}

fn identify_positions(g: &Graph, ui: usize, vi: usize, w: VertexId) -> Result<Identification> {
    let rename = |i: usize| -> VertexId {
        if i == ui || i == vi {
            w.clone()
        } else {
            g.vertices()[i].clone()
        }
    };
    let mut vertices: Vec<VertexId> = (0..g.vertex_count())
        .filter(|&i| i != ui && i != vi)
        .map(rename)
        .collect();
    vertices.push(w.clone());
    let mut edge_targets: Vec<Option<Edge>> = Vec::with_capacity(g.edge_count());
    for e in 0..g.edge_count() {
        let (a, b) = g.edge_ends(e);
        let (x, y) = (rename(a), rename(b));
        edge_targets.push(if x == y { None } else { Some(Edge::new(x, y)?) });
    }
    let edges: Vec<Edge> = edge_targets.iter().flatten().cloned().collect();
    let quotient = Graph::from_parts(vertices, edges)?;

    let wi = quotient.vertex_index(&w).expect("merged vertex present");
    let mut images: Vec<usize> = (0..g.vertex_count())
        .map(|i| {
            if i == ui || i == vi {
                wi
            } else {
                quotient.vertex_index(&g.vertices()[i]).expect("kept vertex")
            }
        })
        .collect();
    for target in &edge_targets {
        images.push(match target {
            None => wi,
            Some(e) => quotient.edge_point(quotient.edge_index(e).expect("kept edge")),
        });
    }
    Ok(Identification {
        map: PointMap::from_positions_unchecked(g.clone(), quotient.clone(), images),
        quotient,
    })
}

/// Contracts the listed edges in order, each named in the graph current at
/// its step. The merged vertex of `uv` is called `u+v`.
pub fn contraction_script(g: &Graph, edges: &[Edge]) -> Result<Identification> {
    let mut current = Identification {
        quotient: g.clone(),
        map: PointMap::identity(g),
    };
    for e in edges {
        if !current.quotient.has_edge(e) {
            return Err(Error::StaleEdge(e.to_string()));
        }
        let (u, v) = e.endpoints();
        let w = contraction_vertex_name(u, v)?;
        let step = vertex_identification(&current.quotient, u, v, &w)?;
        current = Identification {
            map: super::compose(&current.map, &step.map)?,
            quotient: step.quotient,
        };
    }
    Ok(current)
}

/// Collapses a subdivision back onto the original graph: every inserted
/// vertex and every edge touching one goes to the edge of `h` it subdivides;
/// all other points map to themselves.
pub fn subdivision_collapse(gsub: &Graph, h: &Graph, inserted: &BTreeMap<VertexId, Edge>) -> Result<PointMap> {
    let bad = |msg: String| Error::NotASubdivision(msg);
    for (w, e) in inserted {
        if !gsub.has_vertex(w) {
            return Err(bad(format!("inserted vertex {w} is missing")));
        }
        if h.has_vertex(w) {
            return Err(bad(format!("inserted vertex {w} already belongs to the original graph")));
        }
        if !h.has_edge(e) {
            return Err(bad(format!("{e} is not an edge of the original graph")));
        }
        if gsub.degree(w)? != 2 {
            return Err(bad(format!("inserted vertex {w} does not have degree 2")));
        }
    }
    for v in gsub.vertices() {
        if !inserted.contains_key(v) && !h.has_vertex(v) {
            return Err(bad(format!("vertex {v} is neither original nor inserted")));
        }
    }
    for v in h.vertices() {
        if !gsub.has_vertex(v) {
            return Err(bad(format!("original vertex {v} is missing")));
        }
    }

    let mut chains: BTreeMap<&Edge, BTreeSet<&VertexId>> = BTreeMap::new();
    for (w, e) in inserted {
        chains.entry(e).or_default().insert(w);
    }
    // Each subdivided edge u-v must become a path u ... v through its
    // inserted vertices; the remaining edges must match h exactly.
    let mut claimed = vec![false; gsub.edge_count()];
    for (e, ws) in &chains {
        if gsub.has_edge(e) {
            return Err(bad(format!("subdivided edge {e} is still present")));
        }
        let (u, v) = e.endpoints();
        let mut seen: BTreeSet<&VertexId> = BTreeSet::from([u]);
        let mut stack = vec![u];
        let mut touched = 0;
        for (i, se) in gsub.edges().iter().enumerate() {
            let (a, b) = se.endpoints();
            if ws.contains(a) || ws.contains(b) {
                let allowed = |x: &VertexId| ws.contains(x) || x == u || x == v;
                if !allowed(a) || !allowed(b) {
                    return Err(bad(format!("edge {se} leaves the chain subdividing {e}")));
                }
                claimed[i] = true;
                touched += 1;
            }
        }
        if touched != ws.len() + 1 {
            return Err(bad(format!("vertices inserted on {e} do not form a path")));
        }
        while let Some(x) = stack.pop() {
            if x != u && !ws.contains(x) {
                continue;
            }
            for se in gsub.edges() {
                if let Some(y) = se.other(x) {
                    if (ws.contains(y) || y == v || y == u) && (ws.contains(x) || ws.contains(y)) && seen.insert(y) {
                        stack.push(y);
                    }
                }
            }
        }
        if !seen.contains(v) || ws.iter().any(|w| !seen.contains(w)) {
            return Err(bad(format!("vertices inserted on {e} do not join its endpoints")));
        }
    }
    for (i, se) in gsub.edges().iter().enumerate() {
        if !claimed[i] && (!h.has_edge(se) || chains.contains_key(se)) {
            return Err(bad(format!("edge {se} does not come from the original graph")));
        }
    }
    for he in h.edges() {
        if !chains.contains_key(he) && !gsub.has_edge(he) {
            return Err(bad(format!("edge {he} is missing")));
        }
    }

    let edge_pos = |e: &Edge| h.edge_point(h.edge_index(e).expect("checked edge"));
    let mut images = Vec::with_capacity(gsub.point_count());
    for v in gsub.vertices() {
        images.push(match inserted.get(v) {
            Some(e) => edge_pos(e),
            None => h.vertex_index(v).expect("checked vertex"),
        });
    }
    for se in gsub.edges() {
        let (a, b) = se.endpoints();
        images.push(match inserted.get(a).or_else(|| inserted.get(b)) {
            Some(e) => edge_pos(e),
            None => edge_pos(se),
        });
    }
    Ok(PointMap::from_positions_unchecked(gsub.clone(), h.clone(), images))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{named_graph, NamedGraph};
    use crate::maps::{classify, compose};
    use crate::topology::{open_star, BarePoint, PointSet};

    fn v(s: &str) -> VertexId {
        VertexId::new(s).unwrap()
    }

    fn pt(s: &str) -> BarePoint {
        match s.split_once('-') {
            Some((a, b)) => BarePoint::edge(a, b).unwrap(),
            None => BarePoint::vertex(s).unwrap(),
        }
    }

    fn vmap(pairs: &[(&str, &str)]) -> VertexMap {
        pairs.iter().map(|(a, b)| (v(a), v(b))).collect()
    }

    fn p3() -> Graph {
        Graph::new(&["a", "b", "c"], &[("a", "b"), ("b", "c")]).unwrap()
    }

    fn xy() -> Graph {
        Graph::new(&["x", "y"], &[("x", "y")]).unwrap()
    }

    #[test]
    fn homomorphism_induced() {
        let k2 = Graph::new(&["u", "v"], &[("u", "v")]).unwrap();
        let id = induced_from_hom(&k2, &k2, &vmap(&[("u", "u"), ("v", "v")])).unwrap();
        assert_eq!(id, PointMap::identity(&k2));

        let f = induced_from_hom(&p3(), &xy(), &vmap(&[("a", "x"), ("b", "y"), ("c", "x")])).unwrap();
        assert_eq!(f.image_of(&pt("a-b")).unwrap(), pt("x-y"));
        assert_eq!(f.image_of(&pt("b-c")).unwrap(), pt("x-y"));
        assert!(classify(&f).incidence_map);

        let c5 = named_graph(NamedGraph::Cycle, 5).unwrap();
        let rot: VertexMap = (1..=5).map(|i| (v(&format!("v{i}")), v(&format!("v{}", i % 5 + 1)))).collect();
        let r = induced_from_hom(&c5, &c5, &rot).unwrap();
        let c = classify(&r);
        assert!(c.injective && c.surjective && c.incidence_map);

        let k1 = Graph::new(&["w"], &[] as &[(&str, &str)]).unwrap();
        assert_eq!(
            induced_from_hom(&k2, &k1, &vmap(&[("u", "w"), ("v", "w")])),
            Err(Error::NotHomomorphism)
        );
    }

    #[test]
    fn preimage_of_star_contains_star() {
        let f = induced_from_hom(&p3(), &xy(), &vmap(&[("a", "x"), ("b", "y"), ("c", "x")])).unwrap();
        for x in p3().vertices() {
            let fx = match f.image_of(&BarePoint::Vertex(x.clone())).unwrap() {
                BarePoint::Vertex(w) => w,
                _ => unreachable!(),
            };
            let star_h = open_star(&xy(), &fx).unwrap();
            let pre = PointSet::from_positions(
                &p3(),
                (0..p3().point_count()).filter(|&p| star_h.contains_position(f.images()[p])),
            );
            assert!(open_star(&p3(), x).unwrap().is_subset(&pre));
        }
    }

    #[test]
    fn weak_homomorphism_induced() {
        let k2 = Graph::new(&["u", "v"], &[("u", "v")]).unwrap();
        let k1 = Graph::new(&["w"], &[] as &[(&str, &str)]).unwrap();
        let f = induced_from_weak_hom(&k2, &k1, &vmap(&[("u", "w"), ("v", "w")])).unwrap();
        assert!(f.images().iter().all(|&q| q == 0));
        assert!(f.is_continuous());

        let f = induced_from_weak_hom(&p3(), &xy(), &vmap(&[("a", "x"), ("b", "x"), ("c", "y")])).unwrap();
        assert_eq!(f.image_of(&pt("a-b")).unwrap(), pt("x"));
        assert_eq!(f.image_of(&pt("b-c")).unwrap(), pt("x-y"));
        assert!(f.is_continuous());

        let strong = vmap(&[("a", "x"), ("b", "y"), ("c", "x")]);
        assert_eq!(
            induced_from_weak_hom(&p3(), &xy(), &strong).unwrap(),
            induced_from_hom(&p3(), &xy(), &strong).unwrap()
        );
        let bare = Graph::new(&["x", "y"], &[] as &[(&str, &str)]).unwrap();
        assert_eq!(
            induced_from_weak_hom(&p3(), &bare, &vmap(&[("a", "x"), ("b", "x"), ("c", "y")])),
            Err(Error::NotWeakHomomorphism)
        );
    }

    #[test]
    fn figure_identification() {
        // Path a-b-v-c with u hanging off b.
        let g = Graph::new(&["a", "b", "c", "u", "v"], &[("a", "b"), ("b", "v"), ("v", "c"), ("b", "u")]).unwrap();
        let id = vertex_identification(&g, &v("u"), &v("v"), &v("w")).unwrap();
        let path = Graph::new(&["a", "b", "c", "w"], &[("a", "b"), ("b", "w"), ("w", "c")]).unwrap();
        assert_eq!(id.quotient, path);
        assert_eq!(id.map.image_of(&pt("b-u")).unwrap(), pt("b-w"));
        assert_eq!(id.map.image_of(&pt("b-v")).unwrap(), pt("b-w"));
        assert_eq!(id.map.image_of(&pt("c-v")).unwrap(), pt("c-w"));
        let c = classify(&id.map);
        assert!(c.continuous && c.surjective);
    }

    #[test]
    fn identification_preimages_of_stars() {
        let g = Graph::new(&["a", "b", "c", "u", "v"], &[("a", "b"), ("b", "v"), ("v", "c"), ("b", "u")]).unwrap();
        let id = vertex_identification(&g, &v("u"), &v("v"), &v("w")).unwrap();
        let preimage = |s: &PointSet| {
            PointSet::from_positions(&g, (0..g.point_count()).filter(|&p| s.contains_position(id.map.images()[p])))
        };
        let sw = preimage(&open_star(&id.quotient, &v("w")).unwrap());
        assert_eq!(sw, open_star(&g, &v("u")).unwrap().union(&open_star(&g, &v("v")).unwrap()));
        for x in ["a", "b", "c"] {
            assert_eq!(preimage(&open_star(&id.quotient, &v(x)).unwrap()), open_star(&g, &v(x)).unwrap());
        }
    }

    #[test]
    fn identification_cases() {
        let k2 = Graph::new(&["u", "v"], &[("u", "v")]).unwrap();
        let id = vertex_identification(&k2, &v("u"), &v("v"), &v("w")).unwrap();
        assert_eq!(id.quotient, Graph::new(&["w"], &[] as &[(&str, &str)]).unwrap());
        assert!(id.map.images().iter().all(|&q| q == 0));

        let id = vertex_identification(&p3(), &v("a"), &v("c"), &v("w")).unwrap();
        assert_eq!(id.quotient, Graph::new(&["b", "w"], &[("b", "w")]).unwrap());
        assert_eq!(id.map.image_of(&pt("a-b")).unwrap(), pt("b-w"));
        assert_eq!(id.map.image_of(&pt("b-c")).unwrap(), pt("b-w"));
        assert!(classify(&id.map).incidence_map);

        assert_eq!(vertex_identification(&p3(), &v("a"), &v("a"), &v("w")), Err(Error::SameVertex));
        assert!(matches!(vertex_identification(&p3(), &v("a"), &v("z"), &v("w")), Err(Error::UnknownVertex(_))));
        assert_eq!(
            vertex_identification(&p3(), &v("a"), &v("c"), &v("b")),
            Err(Error::NameClash("b".into()))
        );
        // Reusing one of the merged names is allowed.
        assert!(vertex_identification(&p3(), &v("a"), &v("c"), &v("a")).is_ok());
    }

    #[test]
    fn scripts() {
        let id = contraction_script(&p3(), &[]).unwrap();
        assert_eq!(id.map, PointMap::identity(&p3()));

        let script = [Edge::parse("a", "b").unwrap(), Edge::parse("a+b", "c").unwrap()];
        let id = contraction_script(&p3(), &script).unwrap();
        assert_eq!(id.quotient.vertex_count(), 1);
        assert_eq!(id.quotient.edge_count(), 0);
        assert!(classify(&id.map).contraction_like);

        let c3 = named_graph(NamedGraph::Cycle, 3).unwrap();
        let id = contraction_script(&c3, &[Edge::parse("v1", "v2").unwrap()]).unwrap();
        assert_eq!((id.quotient.vertex_count(), id.quotient.edge_count()), (2, 1));
        assert!(classify(&id.map).contraction_like);

        let stale = [Edge::parse("a", "b").unwrap(), Edge::parse("a", "b").unwrap()];
        assert!(matches!(contraction_script(&p3(), &stale), Err(Error::StaleEdge(_))));
    }

    #[test]
    fn two_contractions_compose_to_constant() {
        let first = vertex_identification(&p3(), &v("a"), &v("b"), &v("w")).unwrap();
        let second = vertex_identification(&first.quotient, &v("w"), &v("c"), &v("z")).unwrap();
        let both = compose(&first.map, &second.map).unwrap();
        assert!(both.images().iter().all(|&q| q == 0));
        assert!(classify(&both).continuous);
    }

    #[test]
    fn subdivide_then_contract_recovers_graph() {
        let c4 = named_graph(NamedGraph::Cycle, 4).unwrap();
        let e = Edge::parse("v1", "v2").unwrap();
        let sub = c4.subdivide_edge(&e, v("s")).unwrap();
        let back = contraction_script(&sub, &[Edge::parse("s", "v2").unwrap()]).unwrap();
        assert_eq!(back.quotient.vertex_count(), 4);
        assert_eq!(back.quotient.edge_count(), 4);
        assert!(back.quotient.vertices().iter().all(|x| back.quotient.degree(x) == Ok(2)));
    }

    #[test]
    fn subdivision_maps() {
        let k2 = Graph::new(&["a", "b"], &[("a", "b")]).unwrap();
        let sub = Graph::new(&["a", "b", "w"], &[("a", "w"), ("w", "b")]).unwrap();
        let ab = Edge::parse("a", "b").unwrap();
        let inserted = BTreeMap::from([(v("w"), ab.clone())]);
        let f = subdivision_collapse(&sub, &k2, &inserted).unwrap();
        for p in ["w", "a-w", "b-w"] {
            assert_eq!(f.image_of(&pt(p)).unwrap(), pt("a-b"));
        }
        assert_eq!(f.image_of(&pt("a")).unwrap(), pt("a"));
        let c = classify(&f);
        assert!(c.continuous && c.surjective && !c.vertex_map);

        let id = subdivision_collapse(&k2, &k2, &BTreeMap::new()).unwrap();
        assert_eq!(id, PointMap::identity(&k2));

        let c3 = named_graph(NamedGraph::Cycle, 3).unwrap();
        let c4 = c3.subdivide_edge(&Edge::parse("v1", "v2").unwrap(), v("w")).unwrap();
        let inserted = BTreeMap::from([(v("w"), Edge::parse("v1", "v2").unwrap())]);
        let f = subdivision_collapse(&c4, &c3, &inserted).unwrap();
        assert!(f.is_continuous() && f.is_surjective());

        // Two vertices on one edge.
        let long = Graph::new(&["a", "b", "p", "q"], &[("a", "p"), ("p", "q"), ("q", "b")]).unwrap();
        let inserted = BTreeMap::from([(v("p"), ab.clone()), (v("q"), ab.clone())]);
        let f = subdivision_collapse(&long, &k2, &inserted).unwrap();
        assert!(f.is_continuous() && f.is_surjective());

        // Wrong claims.
        let inserted = BTreeMap::from([(v("w"), ab.clone())]);
        assert!(matches!(subdivision_collapse(&p3(), &k2, &inserted), Err(Error::NotASubdivision(_))));
        let tri = Graph::new(&["a", "b", "w"], &[("a", "w"), ("w", "b"), ("a", "b")]).unwrap();
        assert!(matches!(subdivision_collapse(&tri, &k2, &inserted), Err(Error::NotASubdivision(_))));
        let wrong_side = Graph::new(&["a", "b", "p", "q"], &[("a", "p"), ("p", "q"), ("q", "a")]).unwrap();
        let inserted = BTreeMap::from([(v("p"), ab.clone()), (v("q"), ab)]);
        assert!(matches!(subdivision_collapse(&wrong_side, &k2, &inserted), Err(Error::NotASubdivision(_))));
    }
}
