//! Built-in test arrangements.
//!
//! Coordinates use `[a, b, c]` for the line `a·x + b·y + c·z = 0`.

use crate::arrangement::{Arrangement, ArrangementInput, IntersectionLattice};

/// Two triple points on a common line, nine double points.
pub const FALK_A: [[i64; 3]; 6] = [[0, 0, 1], [1, 0, 0], [1, 0, -1], [0, 1, 0], [0, 1, -1], [1, -1, -2]];

/// Two triple points not on a common line, nine double points.
pub const FALK_A_PRIME: [[i64; 3]; 6] = [[0, 0, 1], [1, 0, 0], [0, 1, 0], [1, 1, -1], [1, -1, 0], [1, 1, -2]];

/// Planar slice of the A3 reflection arrangement: x, y, z, x−y, x−z, y−z.
pub const BRAID: [[i64; 3]; 6] = [[1, 0, 0], [0, 1, 0], [0, 0, 1], [1, -1, 0], [1, 0, -1], [0, 1, -1]];

/// Planar slice of the B3 reflection arrangement.
pub const B3: [[i64; 3]; 9] = [
    [1, 0, 0],
    [0, 1, 0],
    [0, 0, 1],
    [1, -1, 0],
    [1, 1, 0],
    [1, 0, -1],
    [1, 0, 1],
    [0, 1, -1],
    [0, 1, 1],
];

/// Twelve lines carrying a reduced (3,4)-multinet that is not a net.
/// Classes: {z, x, y−2z, y+2z}, {x+z, x−3z, x−y+z, x+y+z},
/// {x−z, x+3z, x−y−z, x+y−z}.
pub const TWELVE_LINE_MULTINET: [[i64; 3]; 12] = [
    [0, 0, 1],
    [1, 0, 0],
    [0, 1, -2],
    [0, 1, 2],
    [1, 0, 1],
    [1, 0, -3],
    [1, -1, 1],
    [1, 1, 1],
    [1, 0, -1],
    [1, 0, 3],
    [1, -1, -1],
    [1, 1, -1],
];

pub const PENCIL3: [[i64; 3]; 3] = [[1, 0, 0], [0, 1, 0], [1, 1, 0]];

pub const GENERIC3: [[i64; 3]; 3] = [[1, 0, 0], [0, 1, 0], [0, 0, 1]];

pub const GENERIC4: [[i64; 3]; 4] = [[1, 0, 0], [0, 1, 0], [0, 0, 1], [1, 1, 1]];

/// The Hessian configuration as incidence data: the 12 lines of the affine
/// plane over F_3 in 4 parallel classes (line index = 3·class + offset),
/// meeting in the 9 affine points (multiplicity 4). Pairs of parallel lines
/// give the 12 double points.
pub fn hessian_incidence() -> Vec<Vec<usize>> {
    // Directions (1,0), (0,1), (1,1), (1,2); the line of direction (dx,dy)
    // through (x,y) has offset dy·x − dx·y mod 3.
    let dirs = [(1i64, 0i64), (0, 1), (1, 1), (1, 2)];
    let mut flats = Vec::new();
    for x in 0..3i64 {
        for y in 0..3i64 {
            let lines: Vec<usize> = dirs
                .iter()
                .enumerate()
                .map(|(c, &(dx, dy))| 3 * c + (dy * x - dx * y).rem_euclid(3) as usize)
                .collect();
            flats.push(lines);
        }
    }
    flats
}

pub fn realized(label: &str, coeffs: &[[i64; 3]]) -> Arrangement {
    Arrangement::from_coeffs(label, coeffs).expect("fixture coordinates are valid")
}

pub fn falk_a() -> Arrangement {
    realized("falk_A", &FALK_A)
}

pub fn falk_a_prime() -> Arrangement {
    realized("falk_A_prime", &FALK_A_PRIME)
}

pub fn braid() -> Arrangement {
    realized("braid", &BRAID)
}

pub fn b3() -> Arrangement {
    realized("b3", &B3)
}

pub fn twelve_line_multinet() -> Arrangement {
    realized("twelve_line_multinet", &TWELVE_LINE_MULTINET)
}

pub fn pencil3() -> Arrangement {
    realized("pencil3", &PENCIL3)
}

pub fn generic3() -> Arrangement {
    realized("generic3", &GENERIC3)
}

pub fn generic4() -> Arrangement {
    realized("generic4", &GENERIC4)
}

pub fn hessian() -> IntersectionLattice {
    IntersectionLattice::from_incidence(12, &hessian_incidence()).expect("Hessian incidence is consistent")
}

/// Every fixture by name, in registry order.
pub fn all() -> Vec<ArrangementInput> {
    vec![
        ArrangementInput::Realized(falk_a()),
        ArrangementInput::Realized(falk_a_prime()),
        ArrangementInput::Realized(braid()),
        ArrangementInput::Realized(b3()),
        ArrangementInput::Realized(twelve_line_multinet()),
        ArrangementInput::Realized(pencil3()),
        ArrangementInput::Realized(generic3()),
        ArrangementInput::Realized(generic4()),
        ArrangementInput::Incidence {
            label: "hessian".into(),
            lattice: hessian(),
        },
    ]
}

pub fn by_name(name: &str) -> Option<ArrangementInput> {
    all().into_iter().find(|f| f.label() == name)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arrangement::{build_lattice, collinear_triples_report};
    use std::collections::BTreeMap;

    #[test]
    fn falk_pair_lattices() {
        for (arr, common) in [(falk_a(), true), (falk_a_prime(), false)] {
            let lat = build_lattice(&arr).unwrap();
            assert_eq!(lat.census(), &BTreeMap::from([(2, 9), (3, 2)]), "{}", arr.label());
            assert_eq!(collinear_triples_report(&lat).common_line_exists, common, "{}", arr.label());
        }
    }

    #[test]
    fn reflection_arrangement_censuses() {
        let braid = build_lattice(&braid()).unwrap();
        assert_eq!(braid.census(), &BTreeMap::from([(2, 3), (3, 4)]));
        let b3 = build_lattice(&b3()).unwrap();
        assert_eq!(b3.census(), &BTreeMap::from([(2, 6), (3, 4), (4, 3)]));
    }

    #[test]
    fn hessian_census() {
        assert_eq!(hessian().census(), &BTreeMap::from([(2, 12), (4, 9)]));
    }

    #[test]
    fn twelve_lines_have_sextuple_point() {
        let lat = build_lattice(&twelve_line_multinet()).unwrap();
        assert_eq!(lat.max_multiplicity(), 6);
        let pairs: usize = lat.census().iter().map(|(q, c)| c * q * (q - 1) / 2).sum();
        assert_eq!(pairs, 66);
    }
}
