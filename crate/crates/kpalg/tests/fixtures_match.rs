//! The shipped fixture files and the programmatic fixtures must describe
//! the same structures: same D-matrices, same eta, same scalar curvature.

use std::path::PathBuf;

use kpalg::config::load_config;
use kpalg::{fixtures, Budget, KPCtx};

fn from_file(name: &str) -> KPCtx {
    let path = PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("fixtures")
        .join(name);
    load_config(&path)
        .unwrap()
        .build(&Budget::default())
        .unwrap()
        .verified_kp()
        .unwrap()
}

fn same_structure(a: &KPCtx, b: &KPCtx) {
    let ring = a.ring();
    assert_eq!(a.dim(), b.dim());
    assert_eq!(ring.gens(), b.ring().gens());
    assert!(ring.elems_equal(a.eta(), b.eta()), "eta differs");
    for i in 0..a.dim() {
        for j in 0..a.dim() {
            assert!(
                ring.elems_equal(a.d_matrix().entry(i, j), b.d_matrix().entry(i, j)),
                "D[{i}][{j}] differs"
            );
            assert!(
                ring.elems_equal(a.table().entry(i, j), b.table().entry(i, j)),
                "P[{i}][{j}] differs"
            );
        }
    }
}

#[test]
fn sphere_file_matches_library() {
    same_structure(&from_file("sphere.kpcfg"), &fixtures::sphere().unwrap());
    same_structure(&from_file("sphere.json"), &fixtures::sphere().unwrap());
}

#[test]
fn ellipsoid_files_match_library() {
    for (a, b, c) in [(1, 2, 3), (2, 1, 1), (1, 1, 5), (3, 2, 7)] {
        same_structure(
            &from_file(&format!("ellipsoid_{a}_{b}_{c}.kpcfg")),
            &fixtures::ellipsoid(a, b, c).unwrap(),
        );
    }
}

#[test]
fn plane_and_family_files_match_library() {
    same_structure(
        &from_file("plane.kpcfg"),
        &fixtures::symplectic_plane().unwrap(),
    );
    same_structure(
        &from_file("two_generator_lambda_x.kpcfg"),
        &fixtures::two_generator_family().unwrap(),
    );
}

#[test]
fn construct_file_matches_library() {
    same_structure(
        &from_file("su2_construct.kpcfg"),
        &fixtures::su2_constructed().unwrap().0,
    );
}
