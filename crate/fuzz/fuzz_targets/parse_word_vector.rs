#![no_main]
use flagvec::io::{parse_word_vector, word_vector_to_json};
use flagvec::WordVector;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &str| {
    if let Ok(v) = parse_word_vector(data) {
        assert_eq!(parse_word_vector(&word_vector_to_json(&v).to_string()).unwrap(), v);
    }
    if let Some(w) = WordVector::parse_word(data) {
        assert_eq!(WordVector::format_word(&w), data);
    }
});
