#![no_main]

use libfuzzer_sys::fuzz_target;
use sp4_monodromy::GroupWord;

fuzz_target!(|data: &[u8]| {
    if let Ok(s) = std::str::from_utf8(data) {
        if let Ok(w) = s.parse::<GroupWord>() {
            let again: GroupWord = w.to_string().parse().expect("display output parses");
            assert_eq!(again, w);
            assert!(w.concat(&w.inverse()).map_or(true, |e| e.is_empty()));
        }
    }
});
