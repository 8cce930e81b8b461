//! Spec files shipped with the binary.

macro_rules! table {
    ($dir:literal: $($name:literal),* $(,)?) => {
        &[$(($name, include_str!(concat!("../presets/", $dir, "/", $name, ".json")))),*]
    };
}

pub const CONES: &[(&str, &str)] = table!("cones": "half-line", "quarter-plane", "simplicial-r3", "4-gonal");

pub const SYMBOLS: &[(&str, &str)] = table!(
    "symbols": "blaschke",
    "rational-w2",
    "rational-w1",
    "rational-w0",
    "rational-w-1",
    "rational-w-2",
    "gaussian-singular",
    "gaussian-small",
    "separable-singular",
    "gaussian-2d-small",
);

pub const EXPERIMENTS: &[(&str, &str)] = table!(
    "experiments": "rational-w2",
    "rational-w1",
    "rational-w0",
    "rational-w-1",
    "rational-w-2",
    "gaussian-singular",
    "gaussian-small",
    "separable-singular",
    "gaussian-2d-small",
    "translated-quarter-plane",
    "translated-4-gonal",
    "rotated-quarter-plane",
);

pub fn lookup(table: &[(&str, &'static str)], name: &str) -> Option<&'static str> {
    table.iter().find(|(n, _)| *n == name).map(|(_, text)| *text)
}
