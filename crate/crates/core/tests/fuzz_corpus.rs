//! Replays the checked-in fuzz seeds through the fuzz target bodies.

use std::fs;
use std::path::PathBuf;

use repshift_core::laurent::{format_poly, parse_matrix, parse_poly};
use repshift_core::zgroup::parse_presentation;

fn seeds(target: &str) -> Vec<(String, String)> {
    let dir: PathBuf = [env!("CARGO_MANIFEST_DIR"), "..", "..", "fuzz", "corpus", target].iter().collect();
    let mut out: Vec<(String, String)> = fs::read_dir(&dir)
        .unwrap_or_else(|e| panic!("{}: {e}", dir.display()))
        .map(|e| {
            let path = e.unwrap().path();
            let name = path.file_name().unwrap().to_string_lossy().into_owned();
            (name, fs::read_to_string(&path).unwrap())
        })
        .collect();
    out.sort();
    assert!(!out.is_empty(), "no seeds for {target}");
    out
}

#[test]
fn presentation_seeds() {
    let mut parsed = 0;
    for (name, text) in seeds("parse_presentation") {
        if let Ok(p) = parse_presentation(&text) {
            assert_eq!(parse_presentation(&p.to_string()).unwrap(), p, "{name}");
            parsed += 1;
        }
    }
    assert!(parsed >= 5);
}

#[test]
fn poly_seeds() {
    for (name, text) in seeds("parse_poly") {
        if let Ok((p, var)) = parse_poly(&text) {
            let printed = format_poly(&p, var.unwrap_or('t'));
            assert_eq!(parse_poly(&printed).unwrap().0, p, "{name}");
        }
    }
}

#[test]
fn matrix_seeds() {
    for (name, text) in seeds("parse_matrix") {
        if let Ok((m, _)) = parse_matrix(&text) {
            if m.is_square() && m.rows() <= 4 {
                assert_eq!(m.det().unwrap(), m.det_cofactor().unwrap(), "{name}");
            }
        }
    }
}
