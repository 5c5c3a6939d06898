#![no_main]

use libfuzzer_sys::fuzz_target;
use mfsing::cli::bundle::{parse_bundle, LoadOptions};

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    let opts = LoadOptions::default();
    if let Ok(b) = parse_bundle(text, &opts) {
        let again = parse_bundle(&b.to_string(), &opts).expect("canonical output reparses");
        assert_eq!(again.to_string(), b.to_string());
    }
});
