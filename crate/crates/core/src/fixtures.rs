//! Bundled example inputs.

use crate::error::Result;
use crate::presentation::{parse_document, InputDocument};

/// `(name, source text)` for every bundled fixture, sorted by name.
pub const FIXTURES: &[(&str, &str)] = &[
    ("a3.form", include_str!("../fixtures/a3.form")),
    ("a_tilde_2.form", include_str!("../fixtures/a_tilde_2.form")),
    ("b01.quiver", include_str!("../fixtures/b01.quiver")),
    ("b10.quiver", include_str!("../fixtures/b10.quiver")),
    ("b11.quiver", include_str!("../fixtures/b11.quiver")),
    ("commutative_eleven.quiver", include_str!("../fixtures/commutative_eleven.quiver")),
    ("exceptional_pair.quiver", include_str!("../fixtures/exceptional_pair.quiver")),
    ("kronecker2.form", include_str!("../fixtures/kronecker2.form")),
    ("kronecker3.form", include_str!("../fixtures/kronecker3.form")),
    ("locally_maximal.quiver", include_str!("../fixtures/locally_maximal.quiver")),
    ("maximal_twelve.form", include_str!("../fixtures/maximal_twelve.form")),
    ("pairing_two.form", include_str!("../fixtures/pairing_two.form")),
    ("q_m.quiver", include_str!("../fixtures/q_m.quiver")),
    ("single_exceptional.quiver", include_str!("../fixtures/single_exceptional.quiver")),
    ("two_exceptional_chain.form", include_str!("../fixtures/two_exceptional_chain.form")),
    ("two_exceptional_crown.form", include_str!("../fixtures/two_exceptional_crown.form")),
    ("two_maximal.form", include_str!("../fixtures/two_maximal.form")),
];

pub fn source(name: &str) -> Option<&'static str> {
    FIXTURES.iter().find(|(n, _)| *n == name).map(|(_, s)| *s)
}

/// Parses a bundled fixture by file name.
///
/// # Panics
/// If no fixture has that name.
pub fn load(name: &str) -> Result<InputDocument> {
    parse_document(source(name).unwrap_or_else(|| panic!("no fixture named {name}")))
}
