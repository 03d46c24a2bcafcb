//! Bundled input files, addressed as `fixtures:<name>` on the command line.

use crate::error::{Error, Result};
use crate::formats::{parse_input, Input, Kind};

pub const PREFIX: &str = "fixtures:";

#[derive(Clone, Copy, Debug)]
pub struct Fixture {
    pub name: &'static str,
    pub kind: Kind,
    pub description: &'static str,
    pub source: &'static str,
}

macro_rules! fixture {
    ($name:literal, $kind:ident, $desc:literal) => {
        Fixture {
            name: $name,
            kind: Kind::$kind,
            description: $desc,
            source: include_str!(concat!("../fixtures/", $name, ".json")),
        }
    };
}

pub const FIXTURES: &[Fixture] = &[
    fixture!(
        "two-facets",
        Simplicial,
        "facets {1,3,4} and {1,2} on vertices 1..4 (9 simplices)"
    ),
    fixture!("torus7", Simplicial, "7-vertex torus"),
    fixture!("rp2", Simplicial, "6-vertex real projective plane"),
    fixture!(
        "boundary-tetrahedron",
        Simplicial,
        "boundary of the 3-simplex (2-sphere)"
    ),
    fixture!(
        "boundary-4simplex",
        Simplicial,
        "boundary of the 4-simplex (3-sphere)"
    ),
    fixture!(
        "s3",
        PinModel,
        "S^0 model, reducible in degree 0 (the 3-sphere)"
    ),
    fixture!(
        "poincare",
        PinModel,
        "S^2 model, reducible in degree 2 (Poincare sphere)"
    ),
    fixture!(
        "poincare-reversed",
        PinModel,
        "S^-2 model, reducible in degree -2 (reversed Poincare sphere)"
    ),
    fixture!("s3-s1", SOneModel, "S^1 model with the U-tower in degree 0"),
    fixture!(
        "poincare-s1",
        SOneModel,
        "S^1 model with the U-tower in degree 2"
    ),
    fixture!(
        "sigma237-s1",
        SOneModel,
        "U-tower in degree 0 plus one finite class in degree -1"
    ),
    fixture!("s3-u", UComplex, "F[U] in degree 0 with iota = id"),
    fixture!(
        "sigma237",
        UComplex,
        "+1-surgery on the figure-eight knot, Sigma(2,3,7), with iota"
    ),
    fixture!("unknot", Seifert, "empty Seifert matrix"),
    fixture!("trefoil", Seifert, "left-handed trefoil"),
    fixture!("figure-eight", Seifert, "figure-eight knot"),
];

/// Names that are reserved for data this crate cannot produce, with the reason.
pub const PLACEHOLDERS: &[(&str, &str)] = &[
    (
        "sigma2311",
        "no chain model for Sigma(2,3,11) is bundled; beta = 0 needs external Floer data",
    ),
    (
        "sigma2311-sum",
        "no chain model for Sigma(2,3,11) # Sigma(2,3,11) is bundled; beta = 2 needs external Floer data and connected sums are not modelled",
    ),
];

pub fn find(name: &str) -> Result<&'static Fixture> {
    if let Some((_, why)) = PLACEHOLDERS.iter().find(|(n, _)| *n == name) {
        return Err(Error::model(format!(
            "fixture {name} is a placeholder: {why}"
        )));
    }
    FIXTURES
        .iter()
        .find(|f| f.name == name)
        .ok_or_else(|| Error::input(format!("unknown fixture {name:?}")))
}

pub fn load(name: &str) -> Result<Input> {
    parse_input(find(name)?.source)
}
