#![no_main]

use libfuzzer_sys::fuzz_target;
use maxitive::cli::parse_spec;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    if let Ok(doc) = parse_spec(text) {
        assert_eq!(parse_spec(&doc.render()).as_ref(), Ok(&doc));
    }
});
