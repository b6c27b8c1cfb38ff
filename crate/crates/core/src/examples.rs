//! Small named arroids used throughout the documentation and tests.

use crate::arroid::{Arroid, Element, Point};

fn build(elements: &[(&str, u64)], points: &[&[&str]]) -> Arroid {
    Arroid::from_incidence(
        2,
        elements.iter().map(|&(id, d)| Element::new(id, d)).collect(),
        points.iter().map(|p| Point::new(p)).collect(),
    )
    .expect("built-in example is a valid arroid")
}

/// Three lines in general position.
pub fn three_lines() -> Arroid {
    build(
        &[("1", 1), ("2", 1), ("3", 1)],
        &[&["1", "2"], &["1", "3"], &["2", "3"]],
    )
}

/// Four lines in general position.
pub fn fourlines() -> Arroid {
    build(
        &[("1", 1), ("2", 1), ("3", 1), ("4", 1)],
        &[
            &["1", "2"],
            &["1", "3"],
            &["1", "4"],
            &["2", "3"],
            &["2", "4"],
            &["3", "4"],
        ],
    )
}

/// Three generic lines and a generic conic.
pub fn generic_lines_conic() -> Arroid {
    build(
        &[("1", 1), ("2", 1), ("3", 1), ("4", 2)],
        &[
            &["1", "2"],
            &["1", "3"],
            &["2", "3"],
            &["1", "4"],
            &["1", "4"],
            &["2", "4"],
            &["2", "4"],
            &["3", "4"],
            &["3", "4"],
        ],
    )
}

/// Three lines and a conic through their three intersection points.
pub fn lines_and_conic() -> Arroid {
    build(
        &[("1", 1), ("2", 1), ("3", 1), ("4", 2)],
        &[&["1", "2", "4"], &["1", "3", "4"], &["2", "3", "4"]],
    )
}

/// Three lines and a conic; lines 1 and 2 meet on the conic, line 3 meets
/// the conic at two points lying on no other line.
pub fn concurrent_chords() -> Arroid {
    build(
        &[("1", 1), ("2", 1), ("3", 1), ("C", 2)],
        &[
            &["1", "2", "C"],
            &["1", "C"],
            &["2", "C"],
            &["3", "C"],
            &["3", "C"],
            &["1", "3"],
            &["2", "3"],
        ],
    )
}
