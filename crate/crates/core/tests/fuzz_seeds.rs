//! Runs the fuzz target bodies over the checked-in corpus seeds and over
//! seeded random mutations of them, so the decoders get some adversarial
//! input on stable toolchains too.

use std::fs;
use std::path::PathBuf;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use xxz_ladder::io::{
    csv_string, decode_entry, encode_entry, parse_config_str, parse_csv, render_config, render_heatmap,
    CacheKey,
};
use xxz_ladder::scan::LegMode;

fn seeds(target: &str) -> Vec<Vec<u8>> {
    let dir = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../fuzz/corpus").join(target);
    let mut files: Vec<PathBuf> = fs::read_dir(&dir)
        .unwrap_or_else(|e| panic!("{}: {e}", dir.display()))
        .map(|e| e.unwrap().path())
        .collect();
    files.sort();
    assert!(!files.is_empty(), "no seeds in {}", dir.display());
    files.into_iter().map(|p| fs::read(p).unwrap()).collect()
}

fn mutate(data: &[u8], rng: &mut ChaCha8Rng) -> Vec<u8> {
    let mut out = data.to_vec();
    for _ in 0..rng.random_range(1..4) {
        match rng.random_range(0..4) {
            0 if !out.is_empty() => {
                let i = rng.random_range(0..out.len());
                out[i] ^= 1 << rng.random_range(0..8);
            }
            1 if !out.is_empty() => {
                let i = rng.random_range(0..out.len());
                out.truncate(i);
            }
            2 => {
                let i = rng.random_range(0..=out.len());
                out.insert(i, rng.random());
            }
            _ if !out.is_empty() => {
                let i = rng.random_range(0..out.len());
                let j = rng.random_range(0..out.len());
                out.swap(i, j);
            }
            _ => {}
        }
    }
    out
}

fn exercise(target: &str, body: fn(&[u8])) {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for seed in seeds(target) {
        body(&seed);
        for _ in 0..300 {
            body(&mutate(&seed, &mut rng));
        }
    }
}

fn config_body(data: &[u8]) {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    if let Ok(config) = parse_config_str(text, "fuzz") {
        let again = parse_config_str(&render_config(&config), "rendered").unwrap();
        assert_eq!(render_config(&again), render_config(&config));
    }
}

fn csv_body(data: &[u8]) {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    if let Ok(records) = parse_csv(text) {
        let written = csv_string(&records);
        let again = parse_csv(&written).unwrap();
        assert_eq!(csv_string(&again), written);
        let _ = render_heatmap(&records, "ggm", LegMode::AntiferroLegs);
    }
}

fn cache_body(data: &[u8]) {
    if let Ok((key, entry)) = decode_entry(data) {
        assert_eq!(encode_entry(&CacheKey::from_raw(key), &entry), data);
    }
}

#[test]
fn config_seeds() {
    exercise("parse_config", config_body);
    // every seed except the ones named bad_* must parse
    let dir = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../fuzz/corpus/parse_config");
    for e in fs::read_dir(dir).unwrap() {
        let path = e.unwrap().path();
        let name = path.file_name().unwrap().to_str().unwrap().to_string();
        let parsed = parse_config_str(&fs::read_to_string(&path).unwrap(), &name);
        assert_eq!(parsed.is_ok(), !name.starts_with("bad_"), "{name}: {parsed:?}");
    }
}

#[test]
fn csv_seeds() {
    exercise("csv_read", csv_body);
}

#[test]
fn cache_seeds() {
    exercise("cache_decode", cache_body);
    assert!(seeds("cache_decode").iter().any(|s| decode_entry(s).is_ok()));
}
