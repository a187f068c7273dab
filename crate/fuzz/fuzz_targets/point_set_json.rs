#![no_main]
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    if let Ok(s) = bareo::io::parse_point_set(data) {
        let g = s.ambient().clone();
        let c = bareo::topology::closure(&g, &s).unwrap();
        assert!(s.is_subset(&c));
        let i = bareo::topology::interior(&g, &s).unwrap();
        assert!(i.is_subset(&s));
        let text = serde_json::to_vec(&s).unwrap();
        assert_eq!(bareo::io::parse_point_set(&text).unwrap(), s);
    }
});
