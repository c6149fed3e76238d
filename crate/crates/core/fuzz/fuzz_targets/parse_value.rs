#![no_main]

use libfuzzer_sys::fuzz_target;
use maxitive::ExtNonneg;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    if let Ok(x) = text.parse::<ExtNonneg>() {
        assert_eq!(x.to_string().parse::<ExtNonneg>(), Ok(x));
    }
});
