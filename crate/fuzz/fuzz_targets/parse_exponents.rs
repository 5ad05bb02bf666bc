#![no_main]

use libfuzzer_sys::fuzz_target;
use sp4_monodromy::{from_exponents, ExponentVector};

fuzz_target!(|data: &[u8]| {
    if let Ok(s) = std::str::from_utf8(data) {
        if let Ok(e) = s.parse::<ExponentVector>() {
            let again = ExponentVector::parse(&e.to_strings()).expect("printed entries parse");
            assert_eq!(again, e);
            if e.len() <= 16 {
                let _ = from_exponents(&e);
            }
        }
    }
});
