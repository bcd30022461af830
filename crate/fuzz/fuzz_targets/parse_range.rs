#![no_main]

use kwflow::registry::IndexRange;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    if let Ok(s) = std::str::from_utf8(data) {
        if let Ok(r) = s.parse::<IndexRange>() {
            assert!(r.lo <= r.hi);
            assert_eq!(format!("{}..{}", r.lo, r.hi).parse::<IndexRange>(), Ok(r));
        }
    }
});
