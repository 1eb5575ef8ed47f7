use std::path::{Path, PathBuf};

use cubulate::io::{
    parse_complex, parse_manifold, parse_wallspace, serialize_complex, serialize_manifold, serialize_wallspace,
};
use cubulate::manifold::validate;
use cubulate::wallspace::{dual_cube_complex, max_crossing_family};

fn files(dir: &str, ext: &str) -> Vec<PathBuf> {
    let root = Path::new(env!("CARGO_MANIFEST_DIR")).join("catalog").join(dir);
    let mut out: Vec<PathBuf> = std::fs::read_dir(root)
        .unwrap()
        .map(|e| e.unwrap().path())
        .filter(|p| p.extension().is_some_and(|x| x == ext))
        .collect();
    out.sort();
    assert!(!out.is_empty(), "no {ext} files in {dir}");
    out
}

fn text(p: &Path) -> String {
    std::fs::read_to_string(p).unwrap()
}

#[test]
fn manifolds_parse_validate_and_round_trip() {
    for p in files("manifolds", "m3") {
        let m = parse_manifold(&text(&p)).unwrap_or_else(|e| panic!("{}: {e}", p.display()));
        assert!(validate(&m).is_valid(), "{}", p.display());
        let again = parse_manifold(&serialize_manifold(&m)).unwrap();
        assert_eq!(again, m, "{}", p.display());
    }
}

#[test]
fn negative_manifolds_fail_with_documented_code() {
    for p in files("negative", "m3") {
        let t = text(&p);
        let expected = t
            .lines()
            .next()
            .and_then(|l| l.strip_prefix("# expect: "))
            .unwrap_or_else(|| panic!("{}: missing expect header", p.display()));
        let err = parse_manifold(&t).expect_err(&p.display().to_string());
        assert_eq!(err.code(), expected.trim(), "{}: {err}", p.display());
    }
}

#[test]
fn complexes_round_trip() {
    for p in files("complexes", "cc") {
        let c = parse_complex(&text(&p)).unwrap_or_else(|e| panic!("{}: {e}", p.display()));
        let s = serialize_complex(&c);
        let again = parse_complex(&s).unwrap();
        assert_eq!(serialize_complex(&again), s);
        assert_eq!(again.cubes().len(), c.cubes().len());
    }
}

#[test]
fn wallspaces_round_trip_and_dualize() {
    let dims = [("cube.ws", 3), ("path.ws", 1), ("square.ws", 2), ("tripod.ws", 1)];
    for (name, dim) in dims {
        let p = Path::new(env!("CARGO_MANIFEST_DIR")).join("catalog/wallspaces").join(name);
        let ws = parse_wallspace(&text(&p)).unwrap();
        assert_eq!(parse_wallspace(&serialize_wallspace(&ws)).unwrap(), ws);
        let dual = dual_cube_complex(&ws).unwrap();
        assert_eq!(dual.complex.dimension(), dim, "{name}");
        assert_eq!(max_crossing_family(&ws).0, dim, "{name}");
    }
    assert_eq!(files("wallspaces", "ws").len(), dims.len());
}
