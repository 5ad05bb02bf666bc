#![no_main]

use libfuzzer_sys::fuzz_target;
use sp4_monodromy::exact::parse_rational;
use sp4_monodromy::roots::RootLabel;
use sp4_monodromy::tables::RowRef;

fuzz_target!(|data: &[u8]| {
    if let Ok(s) = std::str::from_utf8(data) {
        if let Ok(r) = s.parse::<RowRef>() {
            assert_eq!(r.to_string().parse::<RowRef>().ok(), Some(r));
        }
        let _ = s.parse::<RootLabel>();
        let _ = parse_rational(s);
    }
});
