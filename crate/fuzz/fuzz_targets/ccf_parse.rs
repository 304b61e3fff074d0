#![no_main]

use libfuzzer_sys::fuzz_target;

use cc_core::ccf;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    if let Ok(cfg) = ccf::parse_with_cap(text, 64) {
        let written = ccf::write(&cfg);
        let again = ccf::parse(&written).expect("roundtrip");
        assert_eq!(cfg, again);
        assert_eq!(written, ccf::write(&again));
    }
});
