#![no_main]

use kwflow::virasoro::fixture::parse_fixture;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    if let Ok(s) = std::str::from_utf8(data) {
        if let Ok(f) = parse_fixture(s) {
            assert!(f.poly.max_weight() <= f.weight_bound);
        }
    }
});
