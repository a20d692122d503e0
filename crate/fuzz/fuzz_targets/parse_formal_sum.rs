#![no_main]
use flagvec::io::{formal_sum_to_json, parse_formal_sum, parse_graph_or_sum};
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &str| {
    if let Ok(s) = parse_formal_sum(data) {
        let text = formal_sum_to_json(&s).to_string();
        assert_eq!(parse_formal_sum(&text).unwrap(), s);
        assert_eq!(parse_graph_or_sum(&text).unwrap(), s);
    }
    let _ = parse_graph_or_sum(data);
});
