#![no_main]

use libfuzzer_sys::fuzz_target;
use std::sync::OnceLock;
use stringy::cli::words::{parse_element_pair, parse_element_word};
use stringy::group::{FiniteGroup, Permutation};

fn fixture() -> &'static (std::sync::Arc<FiniteGroup>, Vec<String>) {
    static FIXTURE: OnceLock<(std::sync::Arc<FiniteGroup>, Vec<String>)> = OnceLock::new();
    FIXTURE.get_or_init(|| {
        let a = Permutation::from_cycles(4, &[vec![0, 1, 2, 3]]).unwrap();
        let b = Permutation::from_cycles(4, &[vec![0, 2]]).unwrap();
        let group = FiniteGroup::from_permutations(vec![a, b], 1000).unwrap();
        let labels = vec!["r".to_string(), "s".to_string()];
        (group, labels)
    })
}

fuzz_target!(|data: &[u8]| {
    if let Ok(text) = std::str::from_utf8(data) {
        let (group, labels) = fixture();
        if let Ok(idx) = parse_element_word(text, group, labels) {
            assert!((idx as usize) < group.order());
        }
        let _ = parse_element_pair(text, group, labels);
    }
});
