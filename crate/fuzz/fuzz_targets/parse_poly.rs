#![no_main]

use libfuzzer_sys::fuzz_target;
use mfsing::ring::{MonomialOrder, Ring};

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    let ring = Ring::new(32003, &["x", "y", "z"], MonomialOrder::Grevlex).unwrap();
    if let Ok(f) = ring.parse(text) {
        // printing and reparsing is the identity
        assert_eq!(ring.parse(&f.to_string()).unwrap(), f);
    }
});
