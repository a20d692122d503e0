#![no_main]
use flagvec::rational::{format_rational, parse_rational};
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &str| {
    if let Ok(x) = parse_rational(data) {
        let text = format_rational(&x);
        assert_eq!(parse_rational(&text).unwrap(), x);
        if data.contains('/') {
            assert_eq!(text, data);
        }
    }
});
