//! JSON readers for every document the toolkit accepts.

use serde::de::DeserializeOwned;

use crate::error::{Error, Result};
use crate::factor::Factorization;
use crate::graph::{Edge, Graph, VertexMap};
use crate::maps::PointMap;
use crate::topology::PointSet;

fn parse<T: DeserializeOwned>(bytes: &[u8]) -> Result<T> {
    serde_json::from_slice(bytes).map_err(Error::from)
}

/// `{"vertices": [...], "edges": [[u, v], ...]}`
pub fn parse_graph(bytes: &[u8]) -> Result<Graph> {
    parse(bytes)
}

/// `{"graph": <graph>, "points": [<point>, ...]}`
pub fn parse_point_set(bytes: &[u8]) -> Result<PointSet> {
    parse(bytes)
}

/// `{"domain": <graph>, "codomain": <graph>, "images": [{"from", "to"}, ...]}`
pub fn parse_point_map(bytes: &[u8]) -> Result<PointMap> {
    parse(bytes)
}

/// `{"middle", "first", "second", "order"}`, with the three graphs checked to
/// line up.
pub fn parse_factorization(bytes: &[u8]) -> Result<Factorization> {
    let f: Factorization = parse(bytes)?;
    if f.first.codomain() != &f.middle || f.second.domain() != &f.middle {
        return Err(Error::Parse("factors do not pass through the middle graph".into()));
    }
    Ok(f)
}

/// A vertex assignment `{"u": "x", ...}`.
pub fn parse_assignment(bytes: &[u8]) -> Result<VertexMap> {
    parse(bytes)
}

/// `[[u, v], ...]`
pub fn parse_edge_list(bytes: &[u8]) -> Result<Vec<Edge>> {
    parse(bytes)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn documents() {
        let g = parse_graph(br#"{"vertices":["a","b"],"edges":[["a","b"]]}"#).unwrap();
        assert_eq!(g.edge_count(), 1);
        assert!(matches!(parse_graph(br#"{"vertices":["a"],"edges":[["a","b"]]}"#), Err(Error::Parse(_))));
        assert!(matches!(parse_graph(b"not json"), Err(Error::Parse(_))));
        let s = parse_point_set(br#"{"graph":{"vertices":["a","b"],"edges":[["a","b"]]},"points":[{"e":["a","b"]}]}"#).unwrap();
        assert_eq!(s.len(), 1);
        let a = parse_assignment(br#"{"a":"x","b":"y"}"#).unwrap();
        assert_eq!(a.len(), 2);
        assert!(parse_assignment(br#"{"a":"x y"}"#).is_err());
        let es = parse_edge_list(br#"[["a","b"],["b","c"]]"#).unwrap();
        assert_eq!(es.len(), 2);
        assert!(parse_edge_list(br#"[["a","a"]]"#).is_err());
    }

    #[test]
    fn factorization_documents() {
        use crate::factor::factor_contraction_first;
        let k2 = Graph::new(&["u", "v"], &[("u", "v")]).unwrap();
        let k1 = Graph::new(&["w"], &[] as &[(&str, &str)]).unwrap();
        let f = PointMap::from_positions(k2, k1, vec![0, 0, 0]).unwrap();
        let fact = factor_contraction_first(&f).unwrap();
        let text = serde_json::to_vec(&fact).unwrap();
        assert_eq!(parse_factorization(&text).unwrap(), fact);
        let mut value: serde_json::Value = serde_json::from_slice(&text).unwrap();
        value["middle"] = serde_json::json!({"vertices": ["q"], "edges": []});
        let text = serde_json::to_vec(&value).unwrap();
        assert!(matches!(parse_factorization(&text), Err(Error::Parse(_))));
    }
}
