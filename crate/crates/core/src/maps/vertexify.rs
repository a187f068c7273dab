use super::{is_continuous_positions, PointMap};
use crate::error::{Error, Result};

/// Turns a continuous map into a continuous vertex map.
///
/// Vertices sent to an edge `e = x_e y_e` (with `x_e < y_e`) are grouped
/// into connected pieces. A piece moves to `y_e` when some neighbour already
/// lands on `y_e`, otherwise to `x_e`. An edge of a moved star goes to the
/// new vertex image when its other end lands there too, and stays on `e`
/// otherwise. Every other point keeps its image.
pub fn vertexify(f: &PointMap) -> Result<PointMap> {
    let (dom, cod) = (f.domain(), f.codomain());
    if !f.is_continuous() {
        return Err(Error::NotContinuous);
    }
    let n = dom.vertex_count();
    let old = f.images();
    let mut images = old.to_vec();
    let on_edge = |x: usize| !cod.is_vertex_point(old[x]);

    let mut done = vec![false; n];
    for start in 0..n {
        if done[start] || !on_edge(start) {
            continue;
        }
        let target = old[start];
        let (xe, ye) = cod.edge_ends(target - cod.vertex_count());
        let mut piece = vec![start];
        done[start] = true;
        let mut sees_y = false;
        let mut i = 0;
        while i < piece.len() {
            let x = piece[i];
            i += 1;
            for y in dom.neighbors(x) {
                if old[y] == target {
                    if !done[y] {
                        done[y] = true;
                        piece.push(y);
                    }
                } else if old[y] == ye {
                    sees_y = true;
                }
            }
        }
        let c = if sees_y { ye } else { xe };
        for &x in &piece {
            images[x] = c;
        }
    }
    for x in 0..n {
        if !on_edge(x) {
            continue;
        }
        for &e in dom.incident_edges(x) {
            let (a, b) = dom.edge_ends(e);
            let other = if a == x { b } else { a };
            images[dom.edge_point(e)] = if images[other] == images[x] {
                images[x]
            } else {
                old[x]
            };
        }
    }
    if !is_continuous_positions(dom, cod, &images) {
        return Err(Error::ConstructionFailed("vertexified map is not continuous".into()));
    }
    Ok(PointMap::from_positions_unchecked(dom.clone(), cod.clone(), images))
}
