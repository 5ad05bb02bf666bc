#![no_main]

use libfuzzer_sys::fuzz_target;
use sp4_monodromy::IntPolynomial;

fuzz_target!(|data: &[u8]| {
    if let Ok(s) = std::str::from_utf8(data) {
        if let Ok(p) = s.parse::<IntPolynomial>() {
            let again: IntPolynomial = p.to_string().parse().expect("display output parses");
            assert_eq!(again, p);
        }
    }
});
