#![no_main]

use libfuzzer_sys::fuzz_target;
use xxz_ladder::io::{decode_entry, encode_entry, CacheKey};

fuzz_target!(|data: &[u8]| {
    if let Ok((key, entry)) = decode_entry(data) {
        // a valid entry is canonical: re-encoding reproduces the input
        assert_eq!(encode_entry(&CacheKey::from_raw(key), &entry), data);
    }
});
