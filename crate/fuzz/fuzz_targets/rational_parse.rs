#![no_main]

use libfuzzer_sys::fuzz_target;

use cc_core::rational::{format, parse};

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    if let Some(r) = parse(text) {
        assert_eq!(parse(&format(&r)), Some(r));
    }
});
