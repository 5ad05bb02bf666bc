#![no_main]

use libfuzzer_sys::fuzz_target;
use sp4_monodromy::tables::{dataset_to_json, parse_dataset};

fuzz_target!(|data: &[u8]| {
    if let Ok(s) = std::str::from_utf8(data) {
        if let Ok(rows) = parse_dataset(s) {
            let again = parse_dataset(&dataset_to_json(&rows)).expect("exported rows parse");
            assert_eq!(again, rows);
        }
    }
});
