//! Colourings as incidence maps onto `B(K_n)`, the surjectivity criterion,
//! θ(G) and the shortest covering closed walk.

use std::collections::VecDeque;

use serde::{Deserialize, Serialize};

use crate::caps::Caps;
use crate::error::{Error, Result};
use crate::graph::{named_graph, Graph, NamedGraph, VertexId};
use crate::maps::{classify, induced_images, PointMap};

fn complete(n: usize) -> Result<Graph> {
    if n < 1 {
        return Err(Error::BadParameter("n must be at least 1".into()));
    }
    named_graph(NamedGraph::Complete, n)
}

/// Vertex positions of `v1..vn` in `K_n`, indexed by colour.
fn colour_positions(kn: &Graph) -> Vec<usize> {
    (1..=kn.vertex_count())
        .map(|c| kn.vertex_index(&VertexId::new(format!("v{c}")).expect("valid id")).expect("colour vertex"))
        .collect()
}

fn colouring_map(g: &Graph, kn: &Graph, colours: &[usize]) -> PointMap {
    let pos = colour_positions(kn);
    let vimg: Vec<usize> = colours.iter().map(|&c| pos[c]).collect();
    PointMap::from_positions_unchecked(g.clone(), kn.clone(), induced_images(g, kn, &vimg))
}

/// Proper colourings with colours `0..n`, in lexicographic order, passed to
/// `visit` until it returns `false`. With `covering`, only colourings using
/// every colour.
fn proper_colourings(g: &Graph, n: usize, covering: bool, mut visit: impl FnMut(&[usize]) -> bool) {
    fn go(
        g: &Graph,
        n: usize,
        covering: bool,
        x: usize,
        colours: &mut Vec<usize>,
        uses: &mut Vec<usize>,
        visit: &mut dyn FnMut(&[usize]) -> bool,
    ) -> bool {
        let nv = g.vertex_count();
        if covering {
            let unused = uses.iter().filter(|&&u| u == 0).count();
            if unused > nv - x {
                return true;
            }
        }
        if x == nv {
            return visit(colours);
        }
        for c in 0..n {
            if g.neighbors(x).any(|y| y < x && colours[y] == c) {
                continue;
            }
            colours.push(c);
            uses[c] += 1;
            let more = go(g, n, covering, x + 1, colours, uses, visit);
            uses[c] -= 1;
            colours.pop();
            if !more {
                return false;
            }
        }
        true
    }
    go(g, n, covering, 0, &mut Vec::new(), &mut vec![0; n], &mut visit);
}

/// The first incidence map `B(g) -> B(K_n)` whose vertex image is all of
/// `V(K_n)`, under lexicographic search; `None` if `g` has no proper
/// colouring using exactly `n` colours.
pub fn find_incidence_coloring(g: &Graph, n: usize) -> Result<Option<PointMap>> {
    let kn = complete(n)?;
    let mut found = None;
    proper_colourings(g, n, true, |c| {
        found = Some(c.to_vec());
        false
    });
    Ok(found.map(|c| colouring_map(g, &kn, &c)))
}

pub fn chromatic_number(g: &Graph) -> Result<usize> {
    Ok(chromatic_witness(g)?.0)
}

/// χ(g) with the first colouring found at that value.
pub fn chromatic_witness(g: &Graph) -> Result<(usize, PointMap)> {
    if g.is_empty() {
        return Err(Error::EmptyGraph);
    }
    for n in 1..=g.vertex_count() {
        if let Some(f) = find_incidence_coloring(g, n)? {
            return Ok((n, f));
        }
    }
    unreachable!("a graph on n vertices is n-colourable")
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SurjectivityReport {
    pub holds: bool,
    pub counterexample: Option<PointMap>,
}

/// Whether every incidence map `B(g) -> B(K_n)` is surjective.
pub fn surjectivity_criterion(g: &Graph, n: usize, caps: &Caps) -> Result<SurjectivityReport> {
    let kn = complete(n)?;
    let size = (n as u128).saturating_pow(g.vertex_count() as u32);
    if size > caps.maps as u128 {
        return Err(Error::TooLarge {
            what: "colour assignments",
            size,
            cap: caps.maps as u128,
        });
    }
    let mut any = false;
    let mut counterexample = None;
    proper_colourings(g, n, false, |c| {
        any = true;
        let f = colouring_map(g, &kn, c);
        if f.is_surjective() {
            true
        } else {
            counterexample = Some(f);
            false
        }
    });
    if !any {
        return Err(Error::NotColorable(n));
    }
    Ok(SurjectivityReport {
        holds: counterexample.is_none(),
        counterexample,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ThetaReport {
    /// Largest `n` with a continuous surjection `B(g) -> B(K_n)`.
    pub value: usize,
    pub witness: PointMap,
    /// The same maximum over vertex maps only.
    pub vertex_map_value: usize,
    /// False when the search over all point maps was skipped or cut short,
    /// in which case `value` is `vertex_map_value`.
    pub exhaustive: bool,
}

/// Largest number of blocks in a partition of the vertices with an edge
/// between every two blocks, with the first such partition found (blocks
/// numbered by first occurrence).
fn complete_partition(g: &Graph) -> (usize, Vec<usize>) {
    let nv = g.vertex_count();
    let mut best = (0, Vec::new());
    let mut blocks = vec![0usize; nv];
    // Restricted growth strings: blocks[i] <= 1 + max(blocks[..i]).
    fn go(g: &Graph, i: usize, k: usize, blocks: &mut Vec<usize>, best: &mut (usize, Vec<usize>)) {
        let nv = g.vertex_count();
        if k + (nv - i) <= best.0 {
            return;
        }
        if i == nv {
            let mut linked = vec![false; k * k];
            for e in 0..g.edge_count() {
                let (a, b) = g.edge_ends(e);
                let (x, y) = (blocks[a], blocks[b]);
                linked[x * k + y] = true;
                linked[y * k + x] = true;
            }
            if (0..k).all(|x| (x + 1..k).all(|y| linked[x * k + y])) {
                *best = (k, blocks.clone());
            }
            return;
        }
        for b in (0..=k).rev() {
            blocks[i] = b;
            go(g, i + 1, k.max(b + 1), blocks, best);
        }
    }
    go(g, 0, 0, &mut blocks, &mut best);
    best
}

/// Searches point maps `B(g) -> B(K_n)` that are continuous and surjective.
/// `Ok(None)` means none exist; `Err(())` means the node budget ran out.
fn surjective_point_map(g: &Graph, kn: &Graph, budget: &mut u64) -> std::result::Result<Option<Vec<usize>>, ()> {
    let mut images = vec![usize::MAX; g.point_count()];
    let mut hits = vec![0usize; kn.point_count()];
    fn allowed(kn: &Graph, vertex_image: usize, q: usize) -> bool {
        vertex_image == q || (kn.is_vertex_point(vertex_image) && kn.in_star(vertex_image, q))
    }
    fn go(
        g: &Graph,
        kn: &Graph,
        p: usize,
        images: &mut Vec<usize>,
        hits: &mut Vec<usize>,
        budget: &mut u64,
    ) -> std::result::Result<bool, ()> {
        if *budget == 0 {
            return Err(());
        }
        *budget -= 1;
        let (np, nv, kp) = (g.point_count(), g.vertex_count(), kn.point_count());
        let missing = hits.iter().filter(|&&h| h == 0).count();
        if missing > np - p {
            return Ok(false);
        }
        if p == np {
            return Ok(true);
        }
        for q in 0..kp {
            if p >= nv {
                let (a, b) = g.edge_ends(p - nv);
                if !allowed(kn, images[a], q) || !allowed(kn, images[b], q) {
                    continue;
                }
            }
            images[p] = q;
            hits[q] += 1;
            let done = go(g, kn, p + 1, images, hits, budget)?;
            if done {
                return Ok(true);
            }
            hits[q] -= 1;
        }
        images[p] = usize::MAX;
        Ok(false)
    }
    if go(g, kn, 0, &mut images, &mut hits, budget)? {
        Ok(Some(images))
    } else {
        Ok(None)
    }
}

/// θ(g): the largest `n` admitting a continuous surjection onto `B(K_n)`.
///
/// The vertex-map maximum comes from an exact complete-partition search.
/// All point maps are then searched for larger `n` while `|B(g)|` is within
/// the point cap and the search stays within the map budget.
pub fn theta(g: &Graph, caps: &Caps) -> Result<ThetaReport> {
    if g.is_empty() {
        return Err(Error::EmptyGraph);
    }
    if g.vertex_count() > caps.partition_vertices {
        return Err(Error::TooLarge {
            what: "vertex set for the partition search",
            size: g.vertex_count() as u128,
            cap: caps.partition_vertices as u128,
        });
    }
    let (k, blocks) = complete_partition(g);
    let kk = complete(k)?;
    let mut report = ThetaReport {
        value: k,
        witness: colouring_map(g, &kk, &blocks),
        vertex_map_value: k,
        exhaustive: false,
    };
    if g.point_count() > caps.points {
        return Ok(report);
    }
    let mut n = k + 1;
    while n + n * (n - 1) / 2 <= g.point_count() {
        n += 1;
    }
    let mut budget = caps.maps;
    for n in (k + 1..n).rev() {
        let kn = complete(n)?;
        match surjective_point_map(g, &kn, &mut budget) {
            Err(()) => return Ok(report),
            Ok(None) => {}
            Ok(Some(images)) => {
                report.value = n;
                report.witness = PointMap::from_positions_unchecked(g.clone(), kn, images);
                report.exhaustive = true;
                return Ok(report);
            }
        }
    }
    report.exhaustive = true;
    Ok(report)
}

struct WalkSearch {
    start: usize,
    full: u32,
    parent: Vec<u32>,
    end: Option<usize>,
}

fn walk_search(g: &Graph, caps: &Caps) -> Result<WalkSearch> {
    if g.edge_count() == 0 {
        return Err(Error::NoEdges);
    }
    if !g.isolated_vertices().is_empty() || !g.is_connected() {
        return Err(Error::Disconnected);
    }
    let m = g.edge_count();
    if m > caps.walk_edges || m > 31 {
        return Err(Error::TooLarge {
            what: "edge set for the walk search",
            size: m as u128,
            cap: caps.walk_edges.min(31) as u128,
        });
    }
    let nv = g.vertex_count();
    let full: u32 = (1u32 << m) - 1;
    let states = nv << m;
    let state = |v: usize, mask: u32| (mask as usize) * nv + v;
    let start = 0;
    let mut parent = vec![u32::MAX; states];
    parent[state(start, 0)] = state(start, 0) as u32;
    let mut queue = VecDeque::from([(start, 0u32)]);
    let mut end = None;
    while let Some((v, mask)) = queue.pop_front() {
        if v == start && mask == full {
            end = Some(state(v, mask));
            break;
        }
        for &e in g.incident_edges(v) {
            let (a, b) = g.edge_ends(e);
            let w = if a == v { b } else { a };
            let next = mask | (1 << e);
            let s = state(w, next);
            if parent[s] == u32::MAX {
                parent[s] = state(v, mask) as u32;
                queue.push_back((w, next));
            }
        }
    }
    Ok(WalkSearch { start, full, parent, end })
}

/// Length of the shortest closed walk traversing every edge.
pub fn min_covering_closed_walk(g: &Graph, caps: &Caps) -> Result<usize> {
    Ok(covering_closed_walk(g, caps)?.len() - 1)
}

/// A shortest closed walk traversing every edge, listed with its start
/// repeated at the end.
pub fn covering_closed_walk(g: &Graph, caps: &Caps) -> Result<Vec<VertexId>> {
    let search = walk_search(g, caps)?;
    let nv = g.vertex_count();
    let mut s = search.end.expect("a connected graph has a covering walk");
    debug_assert_eq!(s, (search.full as usize) * nv + search.start);
    let mut walk = vec![g.vertices()[s % nv].clone()];
    while search.parent[s] as usize != s {
        s = search.parent[s] as usize;
        walk.push(g.vertices()[s % nv].clone());
    }
    walk.reverse();
    Ok(walk)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct InvariantReport {
    pub chi: usize,
    pub theta: usize,
    pub witness_coloring: PointMap,
    pub witness_theta: PointMap,
    pub min_walk_length: Option<usize>,
}

pub fn invariant_report(g: &Graph, caps: &Caps) -> Result<InvariantReport> {
    let (chi, witness_coloring) = chromatic_witness(g)?;
    let t = theta(g, caps)?;
    let min_walk_length = match min_covering_closed_walk(g, caps) {
        Ok(m) => Some(m),
        Err(Error::NoEdges | Error::Disconnected) => None,
        Err(e) => return Err(e),
    };
    debug_assert!(classify(&witness_coloring).incidence_map);
    Ok(InvariantReport {
        chi,
        theta: t.value,
        witness_coloring,
        witness_theta: t.witness,
        min_walk_length,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn caps() -> Caps {
        Caps::default()
    }

    fn graph(vs: &[&str], es: &[(&str, &str)]) -> Graph {
        Graph::new(vs, es).unwrap()
    }

    fn k(n: usize) -> Graph {
        named_graph(NamedGraph::Complete, n).unwrap()
    }

    fn c(n: usize) -> Graph {
        named_graph(NamedGraph::Cycle, n).unwrap()
    }

    #[test]
    fn colourings() {
        let f = find_incidence_coloring(&k(2), 2).unwrap().unwrap();
        assert!(classify(&f).incidence_map && f.is_surjective());
        assert_eq!(find_incidence_coloring(&c(5), 2).unwrap(), None);
        let pete = named_graph(NamedGraph::Petersen, 0).unwrap();
        let f = find_incidence_coloring(&pete, 3).unwrap().unwrap();
        assert!(f.is_incidence_map());
        assert_eq!(find_incidence_coloring(&k(2), 0), Err(Error::BadParameter("n must be at least 1".into())));
        // Every colour must be used.
        assert_eq!(find_incidence_coloring(&k(2), 3).unwrap(), None);
    }

    #[test]
    fn chromatic_numbers() {
        assert_eq!(chromatic_number(&k(4)), Ok(4));
        assert_eq!(chromatic_number(&c(5)), Ok(3));
        assert_eq!(chromatic_number(&named_graph(NamedGraph::Petersen, 0).unwrap()), Ok(3));
        assert_eq!(chromatic_number(&named_graph(NamedGraph::Edgeless, 3).unwrap()), Ok(1));
        assert_eq!(chromatic_number(&Graph::empty()), Err(Error::EmptyGraph));
    }

    #[test]
    fn surjectivity() {
        assert!(surjectivity_criterion(&c(5), 3, &caps()).unwrap().holds);
        assert!(surjectivity_criterion(&k(3), 3, &caps()).unwrap().holds);
        let r = surjectivity_criterion(&k(2), 3, &caps()).unwrap();
        assert!(!r.holds);
        let ce = r.counterexample.unwrap();
        assert!(ce.is_incidence_map() && !ce.is_surjective());
        assert_eq!(surjectivity_criterion(&k(3), 2, &caps()), Err(Error::NotColorable(2)));
    }

    #[test]
    fn theta_values() {
        let t = theta(&k(2), &caps()).unwrap();
        assert_eq!((t.value, t.vertex_map_value), (2, 2));
        assert!(t.exhaustive);
        let t = theta(&c(4), &caps()).unwrap();
        assert_eq!((t.value, t.vertex_map_value), (3, 3));
        let cl = classify(&t.witness);
        assert!(cl.continuous && cl.surjective);
        assert_eq!(theta(&Graph::empty(), &caps()), Err(Error::EmptyGraph));
        let t = theta(&named_graph(NamedGraph::Edgeless, 2).unwrap(), &caps()).unwrap();
        assert_eq!(t.value, 1);
    }

    #[test]
    fn walks() {
        assert_eq!(min_covering_closed_walk(&c(5), &caps()), Ok(5));
        let p3 = graph(&["a", "b", "c"], &[("a", "b"), ("b", "c")]);
        assert_eq!(min_covering_closed_walk(&p3, &caps()), Ok(4));
        let star = graph(&["c", "x", "y", "z"], &[("c", "x"), ("c", "y"), ("c", "z")]);
        assert_eq!(min_covering_closed_walk(&star, &caps()), Ok(6));
        let walk = covering_closed_walk(&star, &caps()).unwrap();
        assert_eq!(walk.first(), walk.last());
        assert_eq!(min_covering_closed_walk(&k(1), &caps()), Err(Error::NoEdges));
        let two = graph(&["a", "b", "c", "d"], &[("a", "b"), ("c", "d")]);
        assert_eq!(min_covering_closed_walk(&two, &caps()), Err(Error::Disconnected));
        let hanging = graph(&["a", "b", "c"], &[("a", "b")]);
        assert_eq!(min_covering_closed_walk(&hanging, &caps()), Err(Error::Disconnected));
    }

    #[test]
    fn report() {
        let r = invariant_report(&c(4), &caps()).unwrap();
        assert_eq!((r.chi, r.theta, r.min_walk_length), (2, 3, Some(4)));
    }
}
