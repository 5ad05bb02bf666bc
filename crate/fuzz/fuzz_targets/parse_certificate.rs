#![no_main]

use libfuzzer_sys::fuzz_target;
use sp4_monodromy::certificate::{parse_certificates, Certificate};

// Verification itself is not run: it is exact arithmetic on whatever
// exponents the input names.
fuzz_target!(|data: &[u8]| {
    if let Ok(s) = std::str::from_utf8(data) {
        if let Ok(c) = Certificate::from_json(s) {
            let _ = c.validate();
            let _ = c.symplectic_basis();
            let _ = c.printed_gram();
            let _ = c.parsed_definitions();
        }
        let _ = parse_certificates(s);
    }
});
