#![no_main]
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    if let Ok(g) = bareo::io::parse_graph(data) {
        let text = serde_json::to_vec(&g).unwrap();
        assert_eq!(bareo::io::parse_graph(&text).unwrap(), g);
        let _ = g.components();
        let _ = bareo::topology::separation_report(&g);
    }
});
