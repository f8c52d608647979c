//! Replays the checked-in fuzz corpus through the parsers.

use std::fs;
use std::path::PathBuf;

use plfun::polygon::parse_q64;
use plfun::serial::*;

fn seeds(target: &str) -> Vec<String> {
    let dir = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("fuzz/corpus").join(target);
    let mut out: Vec<String> = fs::read_dir(&dir)
        .unwrap_or_else(|e| panic!("{}: {e}", dir.display()))
        .map(|e| fs::read(e.unwrap().path()).unwrap())
        .filter_map(|b| String::from_utf8(b).ok())
        .collect();
    out.sort();
    assert!(!out.is_empty(), "no seeds for {target}");
    out
}

#[test]
fn padic_seeds() {
    let mut ok = 0;
    for s in seeds("padic") {
        if let Ok(x) = parse_padic(&s) {
            assert_eq!(parse_padic(&serde_json::to_string(&x).unwrap()).unwrap(), x);
            ok += 1;
        }
    }
    assert!(ok >= 3);
}

#[test]
fn q64_seeds() {
    for s in seeds("q64") {
        parse_q64(&s).unwrap();
    }
}

#[test]
fn series_seeds() {
    for s in seeds("series") {
        let g = parse_series(&s).unwrap();
        assert_eq!(parse_series(&series_to_json(&g)).unwrap(), g);
    }
}

#[test]
fn measure_seeds() {
    for s in seeds("measure") {
        let mu = parse_measure(&s).unwrap();
        assert!(parse_measure(&measure_to_json(&mu)).unwrap().values_equal(&mu));
    }
}

#[test]
fn family_seeds() {
    for s in seeds("family") {
        parse_family(&s).unwrap();
    }
}

#[test]
fn eigen_table_seeds() {
    for s in seeds("eigen_table") {
        let t = parse_eigen_table(&s).unwrap();
        assert_eq!(parse_eigen_table(&eigen_table_to_json(&t)).unwrap(), t);
    }
}

#[test]
fn provider_seeds() {
    let mut ok = 0;
    for s in seeds("provider") {
        if let Ok(f) = parse_provider(&s) {
            assert_eq!(parse_provider(&provider_to_json(&f)).unwrap(), f);
            ok += 1;
        }
    }
    assert_eq!(ok, 2);
}

#[test]
fn char_descriptor_seeds() {
    for s in seeds("char_descriptor") {
        if let Ok(d) = CharDescriptor::parse(&s) {
            for p in [3, 5, 7] {
                let _ = d.to_character(p, 8);
            }
        }
    }
}
