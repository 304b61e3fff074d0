#![no_main]

use libfuzzer_sys::fuzz_target;

use cc_certify::Certificate;

fuzz_target!(|data: &[u8]| {
    if let Ok(cert) = serde_json::from_slice::<Certificate>(data) {
        let json = serde_json::to_string(&cert).expect("serialize");
        let again: Certificate = serde_json::from_str(&json).expect("roundtrip");
        assert_eq!(cert, again);
        let _ = cert.verdict.bound();
    }
});
