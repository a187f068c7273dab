#![no_main]
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    if let Ok(edges) = bareo::io::parse_edge_list(data) {
        let mut vertices: Vec<bareo::VertexId> = edges
            .iter()
            .flat_map(|e| {
                let (a, b) = e.endpoints();
                [a.clone(), b.clone()]
            })
            .collect();
        vertices.sort();
        vertices.dedup();
        if let Ok(g) = bareo::Graph::from_parts(vertices, edges.clone()) {
            let _ = bareo::maps::contraction_script(&g, &edges);
        }
    }
});
