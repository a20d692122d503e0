#![no_main]
use flagvec::io::{hypergraph_to_json, parse_hypergraph};
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &str| {
    if let Ok(g) = parse_hypergraph(data) {
        let again = parse_hypergraph(&hypergraph_to_json(&g).to_string()).unwrap();
        assert_eq!(g, again);
    }
});
