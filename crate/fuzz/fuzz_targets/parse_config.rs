#![no_main]

use libfuzzer_sys::fuzz_target;
use xxz_ladder::io::{parse_config_str, render_config};

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    if let Ok(config) = parse_config_str(text, "fuzz") {
        // anything accepted must survive a render and reparse unchanged
        let again = parse_config_str(&render_config(&config), "rendered").unwrap();
        assert_eq!(render_config(&again), render_config(&config));
    }
});
