#![no_main]
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    if let Ok(f) = bareo::io::parse_point_map(data) {
        let c = bareo::maps::classify(&f);
        assert_eq!(c.continuous, bareo::maps::check_incidence_preservation(&f).is_empty());
        if c.continuous {
            let t = bareo::maps::vertexify(&f).unwrap();
            assert!(t.is_vertex_map() && t.is_continuous());
        }
        let text = serde_json::to_vec(&f).unwrap();
        assert_eq!(bareo::io::parse_point_map(&text).unwrap(), f);
    }
});
