#![no_main]

use libfuzzer_sys::fuzz_target;
use sp4_monodromy::Expr;

fuzz_target!(|data: &[u8]| {
    if let Ok(s) = std::str::from_utf8(data) {
        if let Ok(e) = s.parse::<Expr>() {
            let again: Expr = e.to_string().parse().expect("display output parses");
            assert_eq!(again, e);
        }
    }
});
