//! Bundled complexes: S¹, S², the 3-disk, the 7-vertex torus, the 6-vertex
//! projective plane and a wedge of two circles.

use crate::error::Result;
use crate::scomplex::SimplicialComplex;

pub const CIRCLE: &str = include_str!("../data/circle.json");
pub const SPHERE: &str = include_str!("../data/sphere.json");
pub const DISK: &str = include_str!("../data/disk.json");
pub const TORUS: &str = include_str!("../data/torus.json");
pub const PROJECTIVE_PLANE: &str = include_str!("../data/rp2.json");
pub const WEDGE: &str = include_str!("../data/wedge.json");

/// `(file stem, document)` for every bundled complex.
pub const ALL: [(&str, &str); 6] = [
    ("circle", CIRCLE),
    ("sphere", SPHERE),
    ("disk", DISK),
    ("torus", TORUS),
    ("rp2", PROJECTIVE_PLANE),
    ("wedge", WEDGE),
];

pub fn load(stem: &str) -> Option<Result<SimplicialComplex>> {
    ALL.iter()
        .find(|(s, _)| *s == stem)
        .map(|(_, doc)| SimplicialComplex::load(doc))
}

pub fn all() -> Vec<(&'static str, SimplicialComplex)> {
    ALL.iter()
        .map(|(s, doc)| (*s, SimplicialComplex::load(doc).expect("bundled complex")))
        .collect()
}
