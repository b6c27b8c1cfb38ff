//! Named arrangements: explicit realizations of the standard examples, the
//! four-point family, and incidence reconstructions of two configurations.

use std::collections::BTreeMap;

use super::{CurveArrangement, IntersectionRecord, PlaneCurve};
use crate::arroid::Element;
use crate::exactlin::rat;

fn line(id: &str, c: [i64; 3]) -> PlaneCurve {
    PlaneCurve::line(id, c).expect("fixed line")
}

fn conic(id: &str, c: [i64; 6]) -> PlaneCurve {
    PlaneCurve::conic(id, c.map(|x| rat(x, 1))).expect("fixed conic")
}

fn explicit(curves: Vec<PlaneCurve>) -> CurveArrangement {
    CurveArrangement::explicit(curves).expect("fixed arrangement")
}

/// `x, y, z, x - y + z`.
pub fn fourlines_explicit() -> CurveArrangement {
    explicit(vec![
        line("1", [1, 0, 0]),
        line("2", [0, 1, 0]),
        line("3", [0, 0, 1]),
        line("4", [1, -1, 1]),
    ])
}

/// The coordinate lines and `xy + xz + yz`, which passes through their
/// three intersection points.
pub fn lines_and_conic_explicit() -> CurveArrangement {
    explicit(vec![
        line("1", [1, 0, 0]),
        line("2", [0, 1, 0]),
        line("3", [0, 0, 1]),
        conic("4", [0, 0, 0, 1, 1, 1]),
    ])
}

/// The coordinate lines and `2(x² + y² + z²) - 5(xy + xz + yz)`, meeting
/// each line in two rational points away from the others.
pub fn generic_lines_conic_explicit() -> CurveArrangement {
    explicit(vec![
        line("1", [1, 0, 0]),
        line("2", [0, 1, 0]),
        line("3", [0, 0, 1]),
        conic("4", [2, 2, 2, -5, -5, -5]),
    ])
}

/// The circle `x² + y² = z²`, two lines meeting on it, and a third line
/// cutting it at two points on no other line.
pub fn concurrent_chords_explicit() -> CurveArrangement {
    explicit(vec![
        line("1", [0, 1, 0]),
        line("2", [1, 1, -1]),
        line("3", [5, 0, -3]),
        conic("C", [1, 1, -1, 0, 0, 0]),
    ])
}

/// Three lines, a circle through two of their intersection points, and a
/// line tangent to the circle at `(3 : 4 : 5)`.
pub fn tangent_line_conic() -> CurveArrangement {
    explicit(vec![
        line("1", [1, 0, 0]),
        line("2", [0, 1, 0]),
        line("3", [1, 1, -1]),
        conic("C", [1, 1, -1, 0, 0, 0]),
        line("T", [3, 4, -5]),
    ])
}

const FAMILY_LINES: [(&str, [usize; 2]); 6] = [
    ("L12", [1, 2]),
    ("L13", [1, 3]),
    ("L14", [1, 4]),
    ("L23", [2, 3]),
    ("L24", [2, 4]),
    ("L34", [3, 4]),
];

/// Six lines through four points in general position and `k` conics
/// through the same four points, as incidence data.
pub fn inf_family(k: usize) -> CurveArrangement {
    let mut elements: Vec<Element> = FAMILY_LINES.iter().map(|(id, _)| Element::new(*id, 1)).collect();
    let conics: Vec<String> = (1..=k).map(|j| format!("C{j}")).collect();
    elements.extend(conics.iter().map(|c| Element::new(c.clone(), 2)));
    let mut records = Vec::new();
    for base in 1..=4 {
        let mut members: Vec<&str> = FAMILY_LINES
            .iter()
            .filter(|(_, ends)| ends.contains(&base))
            .map(|(id, _)| *id)
            .collect();
        members.extend(conics.iter().map(String::as_str));
        records.push(IntersectionRecord::transverse(&members));
    }
    for pair in [["L12", "L34"], ["L13", "L24"], ["L14", "L23"]] {
        records.push(IntersectionRecord::transverse(&pair));
    }
    CurveArrangement::from_incidence(elements, records, true).expect("family is well formed")
}

/// The same family realized with base points `(1:0:0), (0:1:0), (0:0:1),
/// (1:1:1)` and conics `yz + j·xz - (1 + j)·xy`.
pub fn inf_family_explicit(k: usize) -> CurveArrangement {
    let mut curves = vec![
        line("L12", [0, 0, 1]),
        line("L13", [0, 1, 0]),
        line("L14", [0, 1, -1]),
        line("L23", [1, 0, 0]),
        line("L24", [1, 0, -1]),
        line("L34", [1, -1, 0]),
    ];
    for j in 1..=k as i64 {
        curves.push(conic(&format!("C{j}"), [0, 0, 0, -1 - j, j, 1]));
    }
    explicit(curves)
}

/// Adds a transverse double point for every intersection the given records
/// do not account for, so that every pair meets `d_a·d_b` times.
pub fn complete_generic(elements: &[Element], special: Vec<IntersectionRecord>) -> Vec<IntersectionRecord> {
    let pos: BTreeMap<&str, usize> = elements.iter().enumerate().map(|(i, e)| (e.id.as_str(), i)).collect();
    let mut records: Vec<IntersectionRecord> = special
        .into_iter()
        .map(|mut r| {
            r.members.sort_by_key(|m| pos.get(m.as_str()).copied().unwrap_or(usize::MAX));
            r
        })
        .collect();
    let mut extra = Vec::new();
    for (i, a) in elements.iter().enumerate() {
        for b in &elements[i + 1..] {
            let used: u64 = records
                .iter()
                .filter(|r| r.contains(&a.id) && r.contains(&b.id))
                .map(|r| r.mult(&a.id, &b.id))
                .sum();
            for _ in used..a.degree * b.degree {
                extra.push(IntersectionRecord::transverse(&[&a.id, &b.id]));
            }
        }
    }
    records.extend(extra);
    records
}

fn reconstruct(elements: &[(&str, u64)], special: &[&[&str]]) -> CurveArrangement {
    let elements: Vec<Element> = elements.iter().map(|&(id, d)| Element::new(id, d)).collect();
    let special = special.iter().map(|m| IntersectionRecord::transverse(m)).collect();
    let records = complete_generic(&elements, special);
    CurveArrangement::from_incidence(elements, records, false).expect("reconstruction is well formed")
}

/// A line `f` whose points lie on three maximal clusters: the conics
/// `c, d, e` meeting pairwise on `f`, the conic `k` with the lines `h, i`
/// through its two points on `f`, and the line `g` alone. All other
/// intersections are generic.
pub fn three_cluster_line() -> CurveArrangement {
    reconstruct(
        &[
            ("f", 1),
            ("g", 1),
            ("h", 1),
            ("i", 1),
            ("c", 2),
            ("d", 2),
            ("e", 2),
            ("k", 2),
        ],
        &[
            &["f", "c", "e"],
            &["f", "c", "d"],
            &["f", "d", "e"],
            &["f", "g"],
            &["f", "h", "k"],
            &["f", "i", "k"],
        ],
    )
}

/// A conic `C` meeting conics `C1` and `C2` in four points each. All six
/// lines joining the points of `C ∩ C1` are present, four of the lines
/// joining points of `C ∩ C2` are present, and the line `L` joins a point
/// of each. All other intersections are generic.
pub fn supply_system_conic() -> CurveArrangement {
    reconstruct(
        &[
            ("C", 2),
            ("C1", 2),
            ("C2", 2),
            ("V1", 1),
            ("V2", 1),
            ("A1", 1),
            ("A2", 1),
            ("A3", 1),
            ("A4", 1),
            ("V3", 1),
            ("V4", 1),
            ("B1", 1),
            ("B2", 1),
            ("L", 1),
        ],
        &[
            &["C", "C1", "V1", "A1", "A3"],
            &["C", "C1", "V1", "A2", "A4"],
            &["C", "C1", "V2", "A1", "A4", "L"],
            &["C", "C1", "V2", "A2", "A3"],
            &["C", "C2", "V3", "B2"],
            &["C", "C2", "V3", "B1"],
            &["C", "C2", "V4", "B2"],
            &["C", "C2", "V4", "B1", "L"],
        ],
    )
}
