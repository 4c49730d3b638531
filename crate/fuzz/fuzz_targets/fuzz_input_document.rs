#![no_main]

use libfuzzer_sys::fuzz_target;
use stringy::cli::input::{build, InputDocument};

// Small cap: fuzzing should exercise the parser and validators, not spend
// its budget closing large groups.
const FUZZ_CAP: usize = 64;

fuzz_target!(|data: &[u8]| {
    if let Ok(doc) = serde_json::from_slice::<InputDocument>(data) {
        let _ = build(&doc, FUZZ_CAP);
    }
});
