#![no_main]
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    if let Ok(fact) = bareo::io::parse_factorization(data) {
        let composite = fact.composite().unwrap();
        let _ = fact.verify(&composite);
    }
});
