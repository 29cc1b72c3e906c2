#![no_main]

use libfuzzer_sys::fuzz_target;
use xxz_ladder::io::{csv_string, parse_csv, render_heatmap};
use xxz_ladder::scan::LegMode;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    if let Ok(records) = parse_csv(text) {
        let written = csv_string(&records);
        let again = parse_csv(&written).unwrap();
        assert_eq!(csv_string(&again), written);
        let _ = render_heatmap(&records, "ggm", LegMode::AntiferroLegs);
    }
});
