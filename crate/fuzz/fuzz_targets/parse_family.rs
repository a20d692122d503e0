#![no_main]
use flagvec::io::{family_to_json, parse_family};
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &str| {
    if let Ok(f) = parse_family(data) {
        assert_eq!(parse_family(&family_to_json(&f).to_string()).unwrap(), f);
    }
});
