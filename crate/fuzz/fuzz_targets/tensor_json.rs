#![no_main]

use libfuzzer_sys::fuzz_target;

use cc_core::IntersectionTensor;

fuzz_target!(|data: &[u8]| {
    if let Ok(t) = serde_json::from_slice::<IntersectionTensor>(data) {
        let r = t.rank() as u32;
        for i in 0..r {
            let _ = t.k(i);
            assert_eq!(t.pairing(t.pairing(i)), i);
        }
        let json = serde_json::to_string(&t).expect("serialize");
        assert_eq!(serde_json::from_str::<IntersectionTensor>(&json).expect("roundtrip"), t);
    }
});
