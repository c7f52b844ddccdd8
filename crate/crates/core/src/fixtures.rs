//! Named example drawings shipped with the crate.

use crate::graph_model::{from_json_str, GeometricGraph};

const CORPUS: [(&str, &str); 6] = [
    ("triangle", include_str!("../../../fixtures/triangle.json")),
    ("x", include_str!("../../../fixtures/x.json")),
    ("k4", include_str!("../../../fixtures/k4.json")),
    ("wedge", include_str!("../../../fixtures/wedge.json")),
    ("ladder", include_str!("../../../fixtures/ladder.json")),
    ("pentagram", include_str!("../../../fixtures/pentagram.json")),
];

/// Names in corpus order.
pub fn names() -> Vec<&'static str> {
    CORPUS.iter().map(|(n, _)| *n).collect()
}

pub fn fixture(name: &str) -> Option<GeometricGraph> {
    CORPUS
        .iter()
        .find(|(n, _)| *n == name)
        .map(|(_, text)| from_json_str(text).expect("shipped fixture parses"))
}

/// Every fixture with its name.
pub fn corpus() -> Vec<(&'static str, GeometricGraph)> {
    CORPUS.iter().map(|(n, _)| (*n, fixture(n).expect("listed"))).collect()
}
