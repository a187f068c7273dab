//! Brute-force oracles: definitional continuity, exhaustive map census,
//! topological connectedness, isomorphism and small-graph enumeration.

use std::collections::HashSet;

use serde::{Deserialize, Serialize};

use crate::caps::Caps;
use crate::error::{Error, Result};
use crate::graph::{is_homomorphism_positions, is_weak_homomorphism_positions, Edge, Graph, VertexId};
use crate::maps::{
    check_incidence_preservation, folded_edges_positions, is_continuous_positions, is_incidence_positions, PointMap,
};
use crate::topology::{check_point_cap, generate_open_masks, full_mask};

/// Continuity straight from the definition: the preimage of every open set
/// of the codomain is open in the domain.
pub struct ContinuityOracle {
    domain_open: Vec<bool>,
    codomain_opens: Vec<u64>,
}

impl ContinuityOracle {
    pub fn new(domain: &Graph, codomain: &Graph, caps: &Caps) -> Result<Self> {
        check_point_cap(domain, caps.points)?;
        check_point_cap(codomain, caps.points)?;
        let mut domain_open = vec![false; 1usize << domain.point_count()];
        for m in generate_open_masks(domain) {
            domain_open[m as usize] = true;
        }
        Ok(ContinuityOracle {
            domain_open,
            codomain_opens: generate_open_masks(codomain),
        })
    }

    /// `images[p]` is the codomain position of domain point `p`.
    pub fn check(&self, images: &[usize]) -> bool {
        self.codomain_opens.iter().all(|&u| {
            let pre = images
                .iter()
                .enumerate()
                .filter(|(_, &q)| u >> q & 1 == 1)
                .fold(0usize, |acc, (p, _)| acc | 1 << p);
            self.domain_open[pre]
        })
    }
}

pub fn oracle_is_continuous(f: &PointMap, caps: &Caps) -> Result<bool> {
    Ok(ContinuityOracle::new(f.domain(), f.codomain(), caps)?.check(f.images()))
}

fn count_maps(g: &Graph, h: &Graph, caps: &Caps) -> Result<u64> {
    let size = (h.point_count() as u128).saturating_pow(g.point_count() as u32);
    if size > caps.maps as u128 {
        return Err(Error::TooLarge {
            what: "point map enumeration",
            size,
            cap: caps.maps as u128,
        });
    }
    Ok(size as u64)
}

/// Calls `visit` on every total map `B(g) -> B(h)` as an image table, in
/// lexicographic order of image tuples.
pub fn for_each_point_map(g: &Graph, h: &Graph, caps: &Caps, mut visit: impl FnMut(&[usize])) -> Result<u64> {
    let total = count_maps(g, h, caps)?;
    let np = g.point_count();
    let base = h.point_count();
    if total == 0 {
        return Ok(0);
    }
    let mut images = vec![0usize; np];
    loop {
        visit(&images);
        let mut i = np;
        loop {
            if i == 0 {
                return Ok(total);
            }
            i -= 1;
            images[i] += 1;
            if images[i] < base {
                break;
            }
            images[i] = 0;
        }
    }
}

/// Every continuous map `B(g) -> B(h)`, by the sub-basis test.
pub fn continuous_maps(g: &Graph, h: &Graph, caps: &Caps) -> Result<Vec<PointMap>> {
    let mut out = Vec::new();
    for_each_point_map(g, h, caps, |images| {
        if is_continuous_positions(g, h, images) {
            out.push(PointMap::from_positions_unchecked(g.clone(), h.clone(), images.to_vec()));
        }
    })?;
    Ok(out)
}

/// Vertex functions `V(g) -> V(h)` as position tables, in lexicographic
/// order.
fn for_each_vertex_function(g: &Graph, h: &Graph, mut visit: impl FnMut(&[usize])) {
    let n = g.vertex_count();
    let base = h.vertex_count();
    if base == 0 && n > 0 {
        return;
    }
    let mut images = vec![0usize; n];
    loop {
        visit(&images);
        let mut i = n;
        loop {
            if i == 0 {
                return;
            }
            i -= 1;
            images[i] += 1;
            if images[i] < base {
                break;
            }
            images[i] = 0;
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum MismatchKind {
    /// The sub-basis and definitional continuity tests disagree.
    ContinuityCheckers,
    /// The incidence-rule test disagrees with the sub-basis test.
    IncidenceRule,
    /// A continuous vertex map whose restriction is not a weak homomorphism.
    VertexMapNotWeakHom,
    /// An incidence map whose restriction is not a homomorphism.
    IncidenceMapNotHom,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Mismatch {
    pub kind: MismatchKind,
    pub map: PointMap,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CensusReport {
    pub domain_graph: Graph,
    pub codomain_graph: Graph,
    pub total_maps: u64,
    pub continuous: u64,
    /// Distinct vertex functions realised by continuous vertex maps.
    pub continuous_vertex_maps: u64,
    /// Continuous vertex maps counted as point maps.
    pub continuous_vertex_point_maps: u64,
    /// Continuous vertex maps with a folded edge.
    pub folded_maps: u64,
    /// Weak homomorphisms, counted over vertex functions.
    pub weak_homs: u64,
    pub incidence_maps: u64,
    /// Homomorphisms, counted over vertex functions.
    pub homs: u64,
    pub mismatches: Vec<Mismatch>,
}

/// Enumerates every map `B(g) -> B(h)`, tests each with both continuity
/// checkers and tallies the classes.
pub fn census(g: &Graph, h: &Graph, caps: &Caps) -> Result<CensusReport> {
    count_maps(g, h, caps)?;
    let oracle = ContinuityOracle::new(g, h, caps)?;
    let nv = g.vertex_count();
    let mut report = CensusReport {
        domain_graph: g.clone(),
        codomain_graph: h.clone(),
        total_maps: 0,
        continuous: 0,
        continuous_vertex_maps: 0,
        continuous_vertex_point_maps: 0,
        folded_maps: 0,
        weak_homs: 0,
        incidence_maps: 0,
        homs: 0,
        mismatches: Vec::new(),
    };
    let mut vertex_functions: HashSet<Vec<usize>> = HashSet::new();
    let mismatch = |kind, images: &[usize], out: &mut Vec<Mismatch>| {
        out.push(Mismatch {
            kind,
            map: PointMap::from_positions_unchecked(g.clone(), h.clone(), images.to_vec()),
        })
    };
    let mut mismatches = Vec::new();
    report.total_maps = for_each_point_map(g, h, caps, |images| {
        let sub = is_continuous_positions(g, h, images);
        if sub != oracle.check(images) {
            mismatch(MismatchKind::ContinuityCheckers, images, &mut mismatches);
        }
        if !sub {
            return;
        }
        report.continuous += 1;
        if !images[..nv].iter().all(|&q| h.is_vertex_point(q)) {
            return;
        }
        report.continuous_vertex_point_maps += 1;
        vertex_functions.insert(images[..nv].to_vec());
        if !folded_edges_positions(g, h, images).is_empty() {
            report.folded_maps += 1;
        }
        if !is_weak_homomorphism_positions(g, h, &images[..nv]) {
            mismatch(MismatchKind::VertexMapNotWeakHom, images, &mut mismatches);
        }
        if is_incidence_positions(g, h, images) {
            report.incidence_maps += 1;
            if !is_homomorphism_positions(g, h, &images[..nv]) {
                mismatch(MismatchKind::IncidenceMapNotHom, images, &mut mismatches);
            }
        }
    })?;
    report.continuous_vertex_maps = vertex_functions.len() as u64;

    for_each_vertex_function(g, h, |images| {
        if is_weak_homomorphism_positions(g, h, images) {
            report.weak_homs += 1;
        }
        if is_homomorphism_positions(g, h, images) {
            report.homs += 1;
        }
    });
    report.mismatches = mismatches;
    Ok(report)
}

/// Agreement of `check_incidence_preservation` with the sub-basis test on
/// every map `B(g) -> B(h)`; returns the disagreeing maps.
pub fn incidence_rule_disagreements(g: &Graph, h: &Graph, caps: &Caps) -> Result<Vec<Mismatch>> {
    let mut out = Vec::new();
    for_each_point_map(g, h, caps, |images| {
        let f = PointMap::from_positions_unchecked(g.clone(), h.clone(), images.to_vec());
        if check_incidence_preservation(&f).is_empty() != is_continuous_positions(g, h, images) {
            out.push(Mismatch {
                kind: MismatchKind::IncidenceRule,
                map: f,
            });
        }
    })?;
    Ok(out)
}

/// True iff no two disjoint nonempty open sets cover `B(g)`.
pub fn connectedness_oracle(g: &Graph, caps: &Caps) -> Result<bool> {
    if g.is_empty() {
        return Err(Error::EmptyGraph);
    }
    check_point_cap(g, caps.points)?;
    let full = full_mask(g);
    let opens = generate_open_masks(g);
    let open: HashSet<u64> = opens.iter().copied().collect();
    Ok(!opens
        .iter()
        .any(|&u| u != 0 && u != full && open.contains(&(full & !u))))
}

fn adjacency(g: &Graph) -> Vec<Vec<bool>> {
    let n = g.vertex_count();
    let mut adj = vec![vec![false; n]; n];
    for e in 0..g.edge_count() {
        let (a, b) = g.edge_ends(e);
        adj[a][b] = true;
        adj[b][a] = true;
    }
    adj
}

/// Searches all vertex bijections for one preserving adjacency both ways.
pub fn are_isomorphic(g: &Graph, h: &Graph) -> bool {
    let n = g.vertex_count();
    if n != h.vertex_count() || g.edge_count() != h.edge_count() {
        return false;
    }
    let (ga, ha) = (adjacency(g), adjacency(h));
    fn go(x: usize, perm: &mut Vec<usize>, used: &mut [bool], ga: &[Vec<bool>], ha: &[Vec<bool>]) -> bool {
        if x == ga.len() {
            return true;
        }
        for y in 0..ga.len() {
            if used[y] || (0..x).any(|z| ga[x][z] != ha[y][perm[z]]) {
                continue;
            }
            used[y] = true;
            perm.push(y);
            if go(x + 1, perm, used, ga, ha) {
                return true;
            }
            perm.pop();
            used[y] = false;
        }
        false
    }
    go(0, &mut Vec::new(), &mut vec![false; n], &ga, &ha)
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for i in 0..n {
            let mut q = p.clone();
            q.insert(i, n - 1);
            out.push(q);
        }
    }
    out
}

/// One representative of every isomorphism class of graphs on `n`
/// vertices `v1..vn`, each the minimal edge mask of its class.
pub fn graphs_up_to_iso(n: usize) -> Result<Vec<Graph>> {
    if n > 6 {
        return Err(Error::BadParameter(format!("isomorphism classes are enumerated up to 6 vertices, got {n}")));
    }
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect();
    let index = |a: usize, b: usize| {
        let (a, b) = if a < b { (a, b) } else { (b, a) };
        pairs.iter().position(|&p| p == (a, b)).expect("pair")
    };
    let relabel: Vec<Vec<usize>> = permutations(n)
        .iter()
        .map(|p| pairs.iter().map(|&(a, b)| index(p[a], p[b])).collect())
        .collect();
    let ids: Vec<VertexId> = (1..=n)
        .map(|i| VertexId::new(format!("v{i}")).expect("valid id"))
        .collect();
    let mut out = Vec::new();
    for mask in 0u32..1 << pairs.len() {
        let canonical = relabel.iter().all(|map| {
            let image = map
                .iter()
                .enumerate()
                .filter(|(i, _)| mask >> i & 1 == 1)
                .fold(0u32, |acc, (_, &j)| acc | 1 << j);
            image >= mask
        });
        if canonical {
            let edges = pairs
                .iter()
                .enumerate()
                .filter(|(i, _)| mask >> i & 1 == 1)
                .map(|(_, &(a, b))| Edge::new(ids[a].clone(), ids[b].clone()))
                .collect::<Result<Vec<_>>>()?;
            out.push(Graph::from_parts(ids.clone(), edges)?);
        }
    }
    Ok(out)
}
