#![no_main]

use libfuzzer_sys::fuzz_target;
use stringy::cli::expr::parse_cyclotomic_expr;

fuzz_target!(|data: &[u8]| {
    if let Ok(text) = std::str::from_utf8(data) {
        if let Ok(value) = parse_cyclotomic_expr(text) {
            // Whatever parses must print back to something that reparses to
            // the same canonical value.
            let printed = value.to_string();
            let reparsed = parse_cyclotomic_expr(&printed).expect("printed form parses");
            assert_eq!(reparsed, value);
        }
    }
});
