#![no_main]

use libfuzzer_sys::fuzz_target;

use cc_core::{intersection_tensor, validate_configuration_with_cap};

fuzz_target!(|data: &[u8]| {
    let Some((&n, rest)) = data.split_first() else { return };
    let n = (n % 12) as usize + 1;
    if rest.len() < n * n {
        return;
    }
    let matrix: Vec<Vec<u32>> = rest[..n * n].chunks(n).map(|r| r.iter().map(|&c| (c % 8) as u32).collect()).collect();
    if let Ok(cfg) = validate_configuration_with_cap(&matrix, 64) {
        assert_eq!(cfg.matrix(), matrix);
        for c in 0..cfg.rank() as u32 {
            assert_eq!(cfg.pairing(cfg.pairing(c)), c);
        }
        if let Ok(t) = intersection_tensor(&cfg) {
            assert_eq!(t.rank(), cfg.rank());
            let json = serde_json::to_string(&t).unwrap();
            assert_eq!(serde_json::from_str::<cc_core::IntersectionTensor>(&json).unwrap(), t);
        }
    }
});
