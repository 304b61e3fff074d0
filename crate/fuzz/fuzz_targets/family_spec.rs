#![no_main]

use libfuzzer_sys::fuzz_target;

use cc_families::parse_family_spec;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    if let Ok(spec) = parse_family_spec(text) {
        let again = parse_family_spec(&spec.to_string()).expect("roundtrip");
        assert_eq!(spec, again);
        if let Ok(cfg) = spec.build(40) {
            assert!(cfg.n() <= 40);
        }
    }
});
