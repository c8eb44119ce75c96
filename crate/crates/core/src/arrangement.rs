//! Projective line arrangements in CP² with integer coefficients, their
//! rank-2 intersection lattice, and the multiplicity census.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Largest accepted coefficient magnitude. Keeps every cross and dot
/// product of lines and points inside `i128`.
pub const MAX_COEFF: i64 = i32::MAX as i64;

/// A projective line `a·x + b·y + c·z = 0`, stored in canonical form:
/// primitive integer vector whose first nonzero entry is positive.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct ProjLine {
    coeffs: [i64; 3],
}

impl ProjLine {
    pub fn new(coeffs: [i64; 3]) -> Result<Self> {
        if coeffs == [0, 0, 0] {
            return Err(Error::Validation("line coefficients (0,0,0) do not define a line".into()));
        }
        if coeffs.iter().any(|c| c.abs() > MAX_COEFF) {
            return Err(Error::Validation(format!(
                "line coefficient out of range (|c| <= {MAX_COEFF}): {coeffs:?}"
            )));
        }
        Ok(ProjLine {
            coeffs: normalize3(coeffs.map(i128::from)).map(|c| c as i64),
        })
    }

    pub fn coeffs(&self) -> [i64; 3] {
        self.coeffs
    }

    pub fn normalized(&self) -> ProjLine {
        ProjLine::new(self.coeffs).expect("already valid")
    }

    pub fn contains(&self, p: &[i128; 3]) -> bool {
        self.coeffs.iter().zip(p).map(|(&a, &b)| a as i128 * b).sum::<i128>() == 0
    }

    /// Intersection point of two distinct lines, normalized.
    pub fn meet(&self, other: &ProjLine) -> Option<[i128; 3]> {
        let [a1, b1, c1] = self.coeffs.map(i128::from);
        let [a2, b2, c2] = other.coeffs.map(i128::from);
        let p = [b1 * c2 - c1 * b2, c1 * a2 - a1 * c2, a1 * b2 - b1 * a2];
        (p != [0, 0, 0]).then(|| normalize3(p))
    }
}

/// Divide by the content and make the first nonzero entry positive.
pub fn normalize3(v: [i128; 3]) -> [i128; 3] {
    let g = v.iter().fold(0i128, |g, &x| num_integer::gcd(g, x));
    if g == 0 {
        return v;
    }
    let sign = if v.iter().find(|&&x| x != 0).copied().unwrap_or(1) < 0 { -1 } else { 1 };
    v.map(|x| sign * x / g)
}

/// An ordered list of distinct projective lines with a label.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Arrangement {
    label: String,
    lines: Vec<ProjLine>,
    essential: bool,
}

impl Arrangement {
    pub fn new(label: impl Into<String>, lines: Vec<ProjLine>) -> Result<Self> {
        if lines.is_empty() {
            return Err(Error::Validation("an arrangement needs at least one line".into()));
        }
        let mut seen: BTreeMap<ProjLine, usize> = BTreeMap::new();
        for (i, l) in lines.iter().enumerate() {
            if let Some(j) = seen.insert(*l, i) {
                return Err(Error::Validation(format!(
                    "lines {j} and {i} coincide after normalization ({:?})",
                    l.coeffs()
                )));
            }
        }
        let essential = is_essential(&lines);
        Ok(Arrangement {
            label: label.into(),
            lines,
            essential,
        })
    }

    pub fn from_coeffs(label: impl Into<String>, coeffs: &[[i64; 3]]) -> Result<Self> {
        let lines = coeffs.iter().map(|&c| ProjLine::new(c)).collect::<Result<Vec<_>>>()?;
        Arrangement::new(label, lines)
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn lines(&self) -> &[ProjLine] {
        &self.lines
    }

    pub fn len(&self) -> usize {
        self.lines.len()
    }

    pub fn is_empty(&self) -> bool {
        self.lines.is_empty()
    }

    /// The lines do not all pass through one point (rank 3 in C³).
    pub fn is_essential(&self) -> bool {
        self.essential
    }
}

fn is_essential(lines: &[ProjLine]) -> bool {
    // All lines are concurrent iff they all pass through the first meet point.
    match (lines.first(), lines.get(1)) {
        (Some(a), Some(b)) => a.meet(b).is_some_and(|p| lines.iter().any(|l| !l.contains(&p))),
        _ => false,
    }
}

/// A rank-2 flat: a point of CP² where at least two lines meet.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Flat2 {
    /// Normalized coordinates; absent for lattices given by incidence only.
    #[serde(skip_serializing_if = "Option::is_none", serialize_with = "ser_point")]
    pub point: Option<[i128; 3]>,
    pub lines: Vec<usize>,
}

fn ser_point<S: serde::Serializer>(p: &Option<[i128; 3]>, s: S) -> std::result::Result<S::Ok, S::Error> {
    match p {
        Some(p) => p.map(|x| x as i64).serialize(s),
        None => s.serialize_none(),
    }
}

impl Flat2 {
    pub fn multiplicity(&self) -> usize {
        self.lines.len()
    }

    pub fn contains(&self, line: usize) -> bool {
        self.lines.binary_search(&line).is_ok()
    }
}

/// The rank ≤ 2 part of the intersection lattice.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntersectionLattice {
    n: usize,
    flats: Vec<Flat2>,
    census: BTreeMap<usize, usize>,
    /// Flat index of every unordered pair, row-major n×n (diagonal unused).
    pair_flat: Vec<usize>,
}

impl IntersectionLattice {
    fn assemble(n: usize, flats: Vec<Flat2>) -> Result<Self> {
        let mut pair_flat = vec![usize::MAX; n * n];
        for (fi, f) in flats.iter().enumerate() {
            if f.lines.len() < 2 {
                return Err(Error::Validation(format!("flat {fi} has fewer than two lines")));
            }
            for (a, &i) in f.lines.iter().enumerate() {
                if i >= n {
                    return Err(Error::Validation(format!("flat {fi} names line {i} but n = {n}")));
                }
                for &j in &f.lines[a + 1..] {
                    if pair_flat[i * n + j] != usize::MAX {
                        return Err(Error::Validation(format!(
                            "lines {i} and {j} meet in two different flats ({} and {fi})",
                            pair_flat[i * n + j]
                        )));
                    }
                    pair_flat[i * n + j] = fi;
                    pair_flat[j * n + i] = fi;
                }
            }
        }
        let mut census = BTreeMap::new();
        for f in &flats {
            *census.entry(f.multiplicity()).or_insert(0) += 1;
        }
        Ok(IntersectionLattice {
            n,
            flats,
            census,
            pair_flat,
        })
    }

    /// Lattice from abstract incidence data: the listed flats (each a set of
    /// at least two line indices), completed by double points for every pair
    /// not covered.
    pub fn from_incidence(n: usize, flats: &[Vec<usize>]) -> Result<Self> {
        if n == 0 {
            return Err(Error::Validation("an arrangement needs at least one line".into()));
        }
        let mut all: Vec<Flat2> = Vec::new();
        let mut covered = vec![false; n * n];
        for (fi, f) in flats.iter().enumerate() {
            let set: BTreeSet<usize> = f.iter().copied().collect();
            if set.len() != f.len() {
                return Err(Error::Validation(format!("flat {fi} repeats a line")));
            }
            let lines: Vec<usize> = set.into_iter().collect();
            for (a, &i) in lines.iter().enumerate() {
                for &j in &lines[a + 1..] {
                    if i < n && j < n {
                        if covered[i * n + j] {
                            return Err(Error::Validation(format!(
                                "lines {i} and {j} lie in two listed flats"
                            )));
                        }
                        covered[i * n + j] = true;
                    }
                }
            }
            all.push(Flat2 { point: None, lines });
        }
        for i in 0..n {
            for j in i + 1..n {
                if !covered[i * n + j] {
                    all.push(Flat2 {
                        point: None,
                        lines: vec![i, j],
                    });
                }
            }
        }
        all.sort_by(|a, b| a.lines.cmp(&b.lines));
        IntersectionLattice::assemble(n, all)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn flats(&self) -> &[Flat2] {
        &self.flats
    }

    pub fn census(&self) -> &BTreeMap<usize, usize> {
        &self.census
    }

    /// Index of the flat containing lines `i != j`.
    pub fn flat_of_pair(&self, i: usize, j: usize) -> usize {
        debug_assert!(i != j);
        self.pair_flat[i * self.n + j]
    }

    /// Flats (indices) containing the given line.
    pub fn flats_on_line(&self, line: usize) -> Vec<usize> {
        (0..self.flats.len()).filter(|&f| self.flats[f].contains(line)).collect()
    }

    pub fn max_multiplicity(&self) -> usize {
        self.census.keys().next_back().copied().unwrap_or(0)
    }

    /// Sub-lattice of the lines in `subset` (re-indexed in the given order).
    pub fn restrict(&self, subset: &[usize]) -> Result<IntersectionLattice> {
        let pos: BTreeMap<usize, usize> = subset.iter().enumerate().map(|(k, &i)| (i, k)).collect();
        if pos.len() != subset.len() || subset.iter().any(|&i| i >= self.n) {
            return Err(Error::Argument("sub-arrangement indices must be distinct and in range".into()));
        }
        let mut flats: Vec<Flat2> = self
            .flats
            .iter()
            .filter_map(|f| {
                let mut lines: Vec<usize> = f.lines.iter().filter_map(|l| pos.get(l).copied()).collect();
                lines.sort_unstable();
                (lines.len() >= 2).then_some(Flat2 { point: f.point, lines })
            })
            .collect();
        flats.sort_by(|a, b| match (&a.point, &b.point) {
            (Some(p), Some(q)) => p.cmp(q),
            _ => a.lines.cmp(&b.lines),
        });
        IntersectionLattice::assemble(subset.len(), flats)
    }
}

/// All maximal rank-2 flats, sorted lexicographically by normalized point.
pub fn build_lattice(arr: &Arrangement) -> Result<IntersectionLattice> {
    let lines = arr.lines();
    let mut points: BTreeMap<[i128; 3], BTreeSet<usize>> = BTreeMap::new();
    for i in 0..lines.len() {
        for j in i + 1..lines.len() {
            let p = lines[i].meet(&lines[j]).ok_or_else(|| {
                Error::Validation(format!("lines {i} and {j} coincide after normalization"))
            })?;
            let entry = points.entry(p).or_default();
            entry.insert(i);
            entry.insert(j);
        }
    }
    let flats = points
        .into_iter()
        .map(|(p, set)| {
            debug_assert!(set.iter().all(|&l| lines[l].contains(&p)));
            Flat2 {
                point: Some(p),
                lines: set.into_iter().collect(),
            }
        })
        .collect();
    IntersectionLattice::assemble(lines.len(), flats)
}

/// Multiplicity conditions that gate the monodromy formulas.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MultiplicityReport {
    pub r: usize,
    /// Some flat has multiplicity q ≥ 3 with r | q. If false, e_r vanishes.
    pub divisible_flat_exists: bool,
    /// No flat has multiplicity 3r' with r' > 1.
    pub no_flats_of_multiplicity_3r: bool,
    /// Every flat has multiplicity 2 or 3.
    pub only_double_and_triple: bool,
}

pub fn multiplicity_predicates(lat: &IntersectionLattice, r: usize) -> Result<MultiplicityReport> {
    if r < 2 {
        return Err(Error::Argument(format!("r must be at least 2, got {r}")));
    }
    let mults: Vec<usize> = lat.census().keys().copied().collect();
    Ok(MultiplicityReport {
        r,
        divisible_flat_exists: mults.iter().any(|&q| q >= 3 && q % r == 0),
        no_flats_of_multiplicity_3r: !mults.iter().any(|&q| q > 3 && q % 3 == 0),
        only_double_and_triple: mults.iter().all(|&q| q == 2 || q == 3),
    })
}

/// For every line, the flats of multiplicity ≥ 3 it passes through.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CollinearReport {
    pub per_line: Vec<Vec<usize>>,
    /// Some single line contains every flat of multiplicity ≥ 3 (vacuously
    /// true when there are none).
    pub common_line_exists: bool,
}

pub fn collinear_triples_report(lat: &IntersectionLattice) -> CollinearReport {
    let high: Vec<usize> = (0..lat.flats().len())
        .filter(|&f| lat.flats()[f].multiplicity() >= 3)
        .collect();
    let per_line: Vec<Vec<usize>> = (0..lat.n())
        .map(|l| high.iter().copied().filter(|&f| lat.flats()[f].contains(l)).collect())
        .collect();
    let common_line_exists = high.is_empty() || per_line.iter().any(|fs| fs.len() == high.len());
    CollinearReport {
        per_line,
        common_line_exists,
    }
}

// ---------------------------------------------------------------------------
// Input formats

/// Either a realized arrangement or abstract incidence data.
#[derive(Debug, Clone)]
pub enum ArrangementInput {
    Realized(Arrangement),
    Incidence {
        label: String,
        lattice: IntersectionLattice,
    },
}

impl ArrangementInput {
    pub fn label(&self) -> &str {
        match self {
            ArrangementInput::Realized(a) => a.label(),
            ArrangementInput::Incidence { label, .. } => label,
        }
    }

    pub fn lattice(&self) -> Result<IntersectionLattice> {
        match self {
            ArrangementInput::Realized(a) => build_lattice(a),
            ArrangementInput::Incidence { lattice, .. } => Ok(lattice.clone()),
        }
    }

    pub fn realized(&self) -> Option<&Arrangement> {
        match self {
            ArrangementInput::Realized(a) => Some(a),
            ArrangementInput::Incidence { .. } => None,
        }
    }
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawInput {
    label: Option<String>,
    lines: Option<Vec<Vec<i64>>>,
    incidence: Option<RawIncidence>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawIncidence {
    n: usize,
    flats: Vec<Vec<usize>>,
}

/// Parse either a JSON document or whitespace-separated integer triples
/// (one line of the arrangement per text line, `#` starts a comment).
pub fn parse_arrangement(text: &str, default_label: &str) -> Result<ArrangementInput> {
    if text.trim_start().starts_with('{') {
        parse_json(text, default_label)
    } else {
        parse_triples(text, default_label).map(ArrangementInput::Realized)
    }
}

fn parse_json(text: &str, default_label: &str) -> Result<ArrangementInput> {
    let raw: RawInput = serde_json::from_str(text).map_err(|e| Error::Parse {
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    })?;
    let label = raw.label.unwrap_or_else(|| default_label.to_string());
    match (raw.lines, raw.incidence) {
        (Some(lines), None) => {
            let coeffs = lines
                .iter()
                .enumerate()
                .map(|(i, l)| {
                    <[i64; 3]>::try_from(l.as_slice()).map_err(|_| {
                        Error::Validation(format!("line {i} must have exactly 3 coefficients, got {}", l.len()))
                    })
                })
                .collect::<Result<Vec<_>>>()?;
            Arrangement::from_coeffs(label, &coeffs).map(ArrangementInput::Realized)
        }
        (None, Some(inc)) => Ok(ArrangementInput::Incidence {
            label,
            lattice: IntersectionLattice::from_incidence(inc.n, &inc.flats)?,
        }),
        _ => Err(Error::Validation(
            "JSON input needs exactly one of \"lines\" or \"incidence\"".into(),
        )),
    }
}

fn parse_triples(text: &str, label: &str) -> Result<Arrangement> {
    let mut coeffs = Vec::new();
    for (lineno, raw) in text.lines().enumerate() {
        let content = raw.split('#').next().unwrap_or("");
        let mut row = Vec::new();
        let mut col = 0;
        for piece in content.split_inclusive(char::is_whitespace) {
            let tok = piece.trim();
            if !tok.is_empty() {
                let start = col + piece.find(tok).unwrap_or(0);
                let v: i64 = tok.parse().map_err(|_| Error::Parse {
                    line: lineno + 1,
                    column: start + 1,
                    message: format!("expected an integer, found {tok:?}"),
                })?;
                row.push(v);
            }
            col += piece.len();
        }
        match row.len() {
            0 => {}
            3 => coeffs.push([row[0], row[1], row[2]]),
            k => {
                return Err(Error::Parse {
                    line: lineno + 1,
                    column: 1,
                    message: format!("expected 3 integers, found {k}"),
                })
            }
        }
    }
    Arrangement::from_coeffs(label, &coeffs)
}

/// Canonical JSON for a realized arrangement.
pub fn to_json(arr: &Arrangement) -> String {
    let lines: Vec<String> = arr
        .lines()
        .iter()
        .map(|l| {
            let [a, b, c] = l.coeffs();
            format!("[{a}, {b}, {c}]")
        })
        .collect();
    format!(
        "{{\"label\": {}, \"lines\": [{}]}}\n",
        serde_json::to_string(arr.label()).expect("string serializes"),
        lines.join(", ")
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    fn arr(c: &[[i64; 3]]) -> Arrangement {
        Arrangement::from_coeffs("t", c).unwrap()
    }

    #[test]
    fn normalization_is_canonical() {
        assert_eq!(ProjLine::new([-2, 4, 0]).unwrap().coeffs(), [1, -2, 0]);
        assert_eq!(ProjLine::new([0, 0, -7]).unwrap().coeffs(), [0, 0, 1]);
        assert!(ProjLine::new([0, 0, 0]).is_err());
    }

    #[test]
    fn duplicate_lines_are_named() {
        let err = Arrangement::from_coeffs("d", &[[1, 0, 0], [0, 1, 0], [-3, 0, 0]]).unwrap_err();
        assert_eq!(err, Error::Validation("lines 0 and 2 coincide after normalization ([1, 0, 0])".into()));
    }

    #[test]
    fn single_line_has_no_flats() {
        let lat = build_lattice(&arr(&[[1, 0, 0]])).unwrap();
        assert!(lat.flats().is_empty());
        assert!(lat.census().is_empty());
    }

    #[test]
    fn generic_four_lines() {
        let lat = build_lattice(&arr(&[[1, 0, 0], [0, 1, 0], [0, 0, 1], [1, 1, 1]])).unwrap();
        assert_eq!(lat.census(), &BTreeMap::from([(2, 6)]));
        let p = multiplicity_predicates(&lat, 3).unwrap();
        assert!(!p.divisible_flat_exists);
    }

    #[test]
    fn pencil_is_not_essential() {
        let a = arr(&[[1, 0, 0], [0, 1, 0], [1, 1, 0]]);
        assert!(!a.is_essential());
        let lat = build_lattice(&a).unwrap();
        assert_eq!(lat.census(), &BTreeMap::from([(3, 1)]));
        assert!(collinear_triples_report(&lat).common_line_exists);
        assert!(arr(&[[1, 0, 0], [0, 1, 0], [0, 0, 1]]).is_essential());
    }

    #[test]
    fn predicates_reject_small_r() {
        let lat = build_lattice(&arr(&[[1, 0, 0], [0, 1, 0]])).unwrap();
        assert!(matches!(multiplicity_predicates(&lat, 1), Err(Error::Argument(_))));
    }

    #[test]
    fn parse_triples_with_comments() {
        let text = "# a pencil\n1 0 0\n0 1 0  # y\n\n1 1 0\n";
        let a = parse_arrangement(text, "p").unwrap();
        assert_eq!(a.realized().unwrap().len(), 3);
    }

    #[test]
    fn parse_reports_positions() {
        let err = parse_arrangement("1 0 0\n0 1.5 0\n", "x").unwrap_err();
        assert_eq!(
            err,
            Error::Parse {
                line: 2,
                column: 3,
                message: "expected an integer, found \"1.5\"".into()
            }
        );
        let err = parse_arrangement("{\"lines\": [[1, 0, 0], [0, 1.5, 0]]}", "x").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 1, .. }), "{err:?}");
    }

    #[test]
    fn parse_json_forms() {
        let a = parse_arrangement("{\"label\": \"g\", \"lines\": [[1,0,0],[0,1,0],[0,0,1]]}", "x").unwrap();
        assert_eq!(a.label(), "g");
        let inc = parse_arrangement("{\"incidence\": {\"n\": 4, \"flats\": [[0,1,2]]}}", "inc").unwrap();
        let lat = inc.lattice().unwrap();
        assert_eq!(lat.census(), &BTreeMap::from([(2, 3), (3, 1)]));
        assert!(inc.realized().is_none());
    }

    #[test]
    fn incidence_rejects_double_coverage() {
        assert!(IntersectionLattice::from_incidence(4, &[vec![0, 1, 2], vec![1, 2, 3]]).is_err());
    }

    #[test]
    fn restriction_keeps_local_structure() {
        let lat = build_lattice(&arr(&[[0, 0, 1], [1, 0, 0], [1, 0, -1], [0, 1, 0], [0, 1, -1], [1, -1, -2]])).unwrap();
        let sub = lat.restrict(&[0, 1, 2]).unwrap();
        assert_eq!(sub.census(), &BTreeMap::from([(3, 1)]));
    }
}
