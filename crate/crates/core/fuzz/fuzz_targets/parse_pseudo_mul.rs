#![no_main]

use libfuzzer_sys::fuzz_target;
use maxitive::cli::parse_pseudo_mul;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    if let Ok(op) = parse_pseudo_mul(text) {
        let _ = op.build();
        assert_eq!(parse_pseudo_mul(&op.to_json().to_string()).as_ref(), Ok(&op));
    }
});
