//! Multinets: verification of the four axioms, nets and Latin squares,
//! exhaustive search, pointed multinets and the pencil subspaces P_N.

use std::collections::BTreeSet;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use serde::Serialize;

use crate::arrangement::IntersectionLattice;
use crate::error::{Error, Result};
use crate::osalgebra::{AomotoClass, FieldSpec};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BaseFlat {
    /// Index into the lattice's flats.
    pub flat: usize,
    pub n_x: u32,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Multinet {
    /// Sorted blocks, ordered by smallest member.
    pub classes: Vec<Vec<usize>>,
    /// m_H for every line of the arrangement.
    pub mult: Vec<u32>,
    pub base_locus: Vec<BaseFlat>,
    /// d, the common class weight.
    pub weight: u32,
}

impl Multinet {
    /// Candidate with base locus, n_X and weight read off the partition:
    /// the base locus is the set of flats meeting at least two classes,
    /// n_X and d are taken from the first class meeting the flat.
    pub fn from_partition(lat: &IntersectionLattice, classes: Vec<Vec<usize>>, mult: Vec<u32>) -> Result<Self> {
        let classes = canonical_classes(classes);
        let owner = check_partition(lat.n(), &classes, &mult)?;
        let mut base_locus = Vec::new();
        for (x, f) in lat.flats().iter().enumerate() {
            let present: BTreeSet<usize> = f.lines.iter().map(|&l| owner[l]).collect();
            if present.len() >= 2 {
                let first = *present.iter().next().unwrap();
                let n_x = f.lines.iter().filter(|&&l| owner[l] == first).map(|&l| mult[l]).sum();
                base_locus.push(BaseFlat { flat: x, n_x });
            }
        }
        let weight = classes[0].iter().map(|&l| mult[l]).sum();
        Ok(Multinet {
            classes,
            mult,
            base_locus,
            weight,
        })
    }

    pub fn k(&self) -> usize {
        self.classes.len()
    }

    pub fn weight(&self) -> u32 {
        self.weight
    }

    pub fn is_reduced(&self) -> bool {
        self.mult.iter().all(|&m| m == 1)
    }

    pub fn class_of(&self, line: usize) -> Option<usize> {
        self.classes.iter().position(|c| c.contains(&line))
    }

    fn owners(&self) -> Vec<usize> {
        let mut owner = vec![usize::MAX; self.mult.len()];
        for (c, block) in self.classes.iter().enumerate() {
            for &l in block {
                owner[l] = c;
            }
        }
        owner
    }
}

fn canonical_classes(mut classes: Vec<Vec<usize>>) -> Vec<Vec<usize>> {
    for c in classes.iter_mut() {
        c.sort_unstable();
    }
    classes.sort_by_key(|c| c.first().copied().unwrap_or(usize::MAX));
    classes
}

/// Class index of every line; structural errors for anything that is not a
/// partition into at least three blocks with positive multiplicities.
fn check_partition(n: usize, classes: &[Vec<usize>], mult: &[u32]) -> Result<Vec<usize>> {
    if classes.len() < 3 {
        return Err(Error::Validation(format!(
            "a multinet needs at least 3 classes, got {}",
            classes.len()
        )));
    }
    if mult.len() != n {
        return Err(Error::Validation(format!("{} multiplicities for {n} lines", mult.len())));
    }
    if let Some(h) = mult.iter().position(|&m| m == 0) {
        return Err(Error::Validation(format!("line {h} has multiplicity 0")));
    }
    let mut owner = vec![usize::MAX; n];
    for (c, block) in classes.iter().enumerate() {
        if block.is_empty() {
            return Err(Error::Validation(format!("class {c} is empty")));
        }
        for &l in block {
            if l >= n {
                return Err(Error::Validation(format!("class {c} names line {l} but n = {n}")));
            }
            if owner[l] != usize::MAX {
                return Err(Error::Validation(format!("line {l} lies in classes {} and {c}", owner[l])));
            }
            owner[l] = c;
        }
    }
    if let Some(l) = owner.iter().position(|&o| o == usize::MAX) {
        return Err(Error::Validation(format!("line {l} is in no class")));
    }
    Ok(owner)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "axiom", rename_all = "snake_case")]
pub enum Violation {
    /// Class weights differ.
    Weight { class: usize, weight: u32, expected: u32 },
    /// Two lines from different classes meet off the base locus.
    BaseLocus { lines: (usize, usize), flat: usize },
    /// A base-locus flat has unequal per-class incidence.
    Incidence { flat: usize, per_class: Vec<u32>, expected: u32 },
    /// The lines of a class, base points removed, are disconnected.
    Connectivity { class: usize, components: Vec<Vec<usize>> },
    /// Multiplicities share a common factor.
    Gcd { gcd: u32 },
}

impl Violation {
    pub fn axiom(&self) -> &'static str {
        match self {
            Violation::Weight { .. } => "(1) equal class weights",
            Violation::BaseLocus { .. } => "(2) cross-class intersections in the base locus",
            Violation::Incidence { .. } => "(3) constant n_X",
            Violation::Connectivity { .. } => "(4) class connectivity",
            Violation::Gcd { .. } => "gcd of multiplicities is 1",
        }
    }
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "axiom {} fails: ", self.axiom())?;
        match self {
            Violation::Weight { class, weight, expected } => {
                write!(f, "class {class} has weight {weight}, class 0 has {expected}")
            }
            Violation::BaseLocus { lines, flat } => {
                write!(f, "lines {} and {} meet at flat {flat}, which is not in the base locus", lines.0, lines.1)
            }
            Violation::Incidence { flat, per_class, expected } => {
                write!(f, "flat {flat} has class incidences {per_class:?}, expected {expected}")
            }
            Violation::Connectivity { class, components } => {
                write!(f, "class {class} splits into {components:?}")
            }
            Violation::Gcd { gcd } => write!(f, "all multiplicities are divisible by {gcd}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MultinetVerdict {
    pub valid: bool,
    /// First violated axiom, with a witness.
    pub violation: Option<Violation>,
}

pub fn verify_multinet(lat: &IntersectionLattice, cand: &Multinet) -> Result<MultinetVerdict> {
    let owner = check_partition(lat.n(), &cand.classes, &cand.mult)?;
    for b in &cand.base_locus {
        if b.flat >= lat.flats().len() {
            return Err(Error::Validation(format!("base locus names flat {} which does not exist", b.flat)));
        }
    }
    let fail = |v| Ok(MultinetVerdict { valid: false, violation: Some(v) });

    for (c, block) in cand.classes.iter().enumerate() {
        let w: u32 = block.iter().map(|&l| cand.mult[l]).sum();
        if w != cand.weight {
            return fail(Violation::Weight {
                class: c,
                weight: w,
                expected: cand.weight,
            });
        }
    }

    let base: BTreeSet<usize> = cand.base_locus.iter().map(|b| b.flat).collect();
    let n = lat.n();
    for i in 0..n {
        for j in i + 1..n {
            if owner[i] != owner[j] && !base.contains(&lat.flat_of_pair(i, j)) {
                return fail(Violation::BaseLocus {
                    lines: (i, j),
                    flat: lat.flat_of_pair(i, j),
                });
            }
        }
    }

    for b in &cand.base_locus {
        let mut per_class = vec![0u32; cand.k()];
        for &l in &lat.flats()[b.flat].lines {
            per_class[owner[l]] += cand.mult[l];
        }
        if per_class.iter().any(|&s| s != b.n_x) {
            return fail(Violation::Incidence {
                flat: b.flat,
                per_class,
                expected: b.n_x,
            });
        }
    }

    for (c, block) in cand.classes.iter().enumerate() {
        let comps = class_components(lat, block, &base);
        if comps.len() > 1 {
            return fail(Violation::Connectivity { class: c, components: comps });
        }
    }

    let g = cand.mult.iter().fold(0u32, |g, &m| g.gcd(&m));
    if g != 1 {
        return fail(Violation::Gcd { gcd: g });
    }
    Ok(MultinetVerdict {
        valid: true,
        violation: None,
    })
}

/// Connected components of the class's lines, joined where two of them
/// meet at a flat outside the base locus.
fn class_components(lat: &IntersectionLattice, block: &[usize], base: &BTreeSet<usize>) -> Vec<Vec<usize>> {
    let mut comp: Vec<usize> = (0..block.len()).collect();
    fn find(comp: &mut [usize], mut a: usize) -> usize {
        while comp[a] != a {
            comp[a] = comp[comp[a]];
            a = comp[a];
        }
        a
    }
    for a in 0..block.len() {
        for b in a + 1..block.len() {
            if !base.contains(&lat.flat_of_pair(block[a], block[b])) {
                let (ra, rb) = (find(&mut comp, a), find(&mut comp, b));
                comp[ra.max(rb)] = ra.min(rb);
            }
        }
    }
    let mut groups: std::collections::BTreeMap<usize, Vec<usize>> = Default::default();
    for a in 0..block.len() {
        let r = find(&mut comp, a);
        groups.entry(r).or_default().push(block[a]);
    }
    groups.into_values().collect()
}

/// Reduced, and every base-locus flat carries exactly one line per class.
pub fn is_net(cand: &Multinet, lat: &IntersectionLattice) -> bool {
    if !cand.is_reduced() {
        return false;
    }
    let owner = cand.owners();
    cand.base_locus.iter().all(|b| {
        let mut seen = vec![0usize; cand.k()];
        for &l in &lat.flats()[b.flat].lines {
            seen[owner[l]] += 1;
        }
        seen.iter().all(|&s| s == 1)
    })
}

/// Pereira–Yuzvinsky: with more than one base point, k ∈ {3, 4}, and k = 3
/// when the multinet is not reduced.
pub fn pereira_yuzvinsky_check(m: &Multinet) -> Result<()> {
    if m.base_locus.len() > 1 && (!(3..=4).contains(&m.k()) || (!m.is_reduced() && m.k() != 3)) {
        return Err(Error::Consistency(format!(
            "verified multinet with k = {}, |base locus| = {}, reduced = {} violates k ∈ {{3,4}}",
            m.k(),
            m.base_locus.len(),
            m.is_reduced()
        )));
    }
    Ok(())
}

/// The d×d Latin square of a 3-net: rows are the lines of class 0, columns
/// those of class 1, and entry (p, q) is the position within class 2 of the
/// line through the point where p and q meet.
pub fn latin_square(net: &Multinet, lat: &IntersectionLattice) -> Result<Vec<Vec<usize>>> {
    if net.k() != 3 || !is_net(net, lat) {
        return Err(Error::Argument("Latin squares are defined for 3-nets only".into()));
    }
    let third = &net.classes[2];
    net.classes[0]
        .iter()
        .map(|&p| {
            net.classes[1]
                .iter()
                .map(|&q| {
                    let flat = &lat.flats()[lat.flat_of_pair(p, q)];
                    third
                        .iter()
                        .position(|l| flat.contains(*l))
                        .ok_or_else(|| Error::Consistency(format!("no class-2 line through lines {p} and {q}")))
                })
                .collect()
        })
        .collect()
}

pub fn is_latin_square(sq: &[Vec<usize>]) -> bool {
    let d = sq.len();
    let perm = |vals: Vec<usize>| {
        let mut seen = vec![false; d];
        vals.into_iter().all(|v| v < d && !std::mem::replace(&mut seen[v], true))
    };
    sq.iter().all(|row| row.len() == d && perm(row.clone())) && (0..d).all(|c| perm(sq.iter().map(|row| row[c]).collect()))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SearchOptions {
    /// Upper bound for every m_H.
    pub max_weight: u32,
    /// Largest arrangement the exhaustive search accepts.
    pub max_lines: usize,
    /// Refuse rather than truncate beyond this many results.
    pub max_results: usize,
    pub reduced_only: bool,
}

impl Default for SearchOptions {
    fn default() -> Self {
        SearchOptions {
            max_weight: 3,
            max_lines: 15,
            max_results: 10_000,
            reduced_only: false,
        }
    }
}

fn check_size(lat: &IntersectionLattice, opts: &SearchOptions) -> Result<()> {
    if lat.n() > opts.max_lines {
        return Err(Error::Budget(format!(
            "exhaustive multinet search is limited to {} lines, arrangement has {}",
            opts.max_lines,
            lat.n()
        )));
    }
    Ok(())
}

/// Backtracking over class assignments with first-appearance symmetry
/// breaking, so each partition is produced once up to class relabeling.
struct PartitionSearch<'a> {
    lat: &'a IntersectionLattice,
    k: usize,
    net: bool,
    /// Flats through each line.
    flats_of: Vec<Vec<usize>>,
    assign: Vec<usize>,
    out: Vec<Vec<usize>>,
}

impl PartitionSearch<'_> {
    fn run(&mut self, i: usize, used: usize) {
        let n = self.lat.n();
        if i == n {
            if used == self.k {
                self.out.push(self.assign.clone());
            }
            return;
        }
        // not enough lines left to open the remaining classes
        if self.k - used > n - i {
            return;
        }
        for c in 0..(used + 1).min(self.k) {
            self.assign[i] = c;
            if self.consistent(i) {
                self.run(i + 1, used.max(c + 1));
            }
        }
    }

    /// Local conditions on the flats through line i, given lines 0..=i.
    fn consistent(&self, i: usize) -> bool {
        for &x in &self.flats_of[i] {
            let lines = &self.lat.flats()[x].lines;
            let mut count = vec![0usize; self.k];
            let mut unassigned = 0;
            for &l in lines {
                if l <= i {
                    count[self.assign[l]] += 1;
                } else {
                    unassigned += 1;
                }
            }
            let present = count.iter().filter(|&&c| c > 0).count();
            if present < 2 {
                continue;
            }
            // a base point meets every class
            if present + unassigned < self.k {
                return false;
            }
            if self.net && (lines.len() != self.k || count.iter().any(|&c| c > 1)) {
                return false;
            }
        }
        true
    }
}

fn partitions(lat: &IntersectionLattice, k: usize, net: bool) -> Vec<Vec<Vec<usize>>> {
    let n = lat.n();
    let mut search = PartitionSearch {
        lat,
        k,
        net,
        flats_of: (0..n).map(|l| lat.flats_on_line(l)).collect(),
        assign: vec![0; n],
        out: Vec::new(),
    };
    if n > 0 {
        search.run(0, 0);
    }
    search
        .out
        .into_iter()
        .map(|a| {
            let mut classes = vec![Vec::new(); k];
            for (l, &c) in a.iter().enumerate() {
                classes[c].push(l);
            }
            classes
        })
        .collect()
}

/// All 3-nets, up to permutation of the classes.
pub fn enumerate_3nets(lat: &IntersectionLattice, opts: &SearchOptions) -> Result<Vec<Multinet>> {
    check_size(lat, opts)?;
    let mut out = Vec::new();
    for classes in partitions(lat, 3, true) {
        let m = Multinet::from_partition(lat, classes, vec![1; lat.n()])?;
        let verdict = verify_multinet(lat, &m)?;
        if !verdict.valid || !is_net(&m, lat) {
            return Err(Error::Consistency(format!(
                "net search produced a partition that fails verification: {:?}",
                verdict.violation
            )));
        }
        out.push(m);
        if out.len() > opts.max_results {
            return Err(Error::Budget(format!("more than {} 3-nets", opts.max_results)));
        }
    }
    Ok(out)
}

/// All k-multinets with every m_H ≤ `opts.max_weight`, up to permutation of
/// the classes.
pub fn search_multinets(lat: &IntersectionLattice, k: usize, opts: &SearchOptions) -> Result<Vec<Multinet>> {
    if k < 3 {
        return Err(Error::Argument(format!("multinets have k ≥ 3 classes, asked for {k}")));
    }
    check_size(lat, opts)?;
    let n = lat.n();
    let max_w = if opts.reduced_only { 1 } else { opts.max_weight.max(1) };
    let mut out = Vec::new();
    for classes in partitions(lat, k, false) {
        let probe = Multinet::from_partition(lat, classes.clone(), vec![1; n])?;
        let base: BTreeSet<usize> = probe.base_locus.iter().map(|b| b.flat).collect();
        if probe.classes.iter().any(|c| class_components(lat, c, &base).len() > 1) {
            continue;
        }
        let mut owner = vec![0usize; n];
        for (c, block) in probe.classes.iter().enumerate() {
            for &l in block {
                owner[l] = c;
            }
        }
        let mut solver = WeightSearch::new(lat, &owner, k, &base, max_w);
        solver.run(0);
        for mult in solver.found {
            if mult.iter().fold(0u32, |g, &m| g.gcd(&m)) != 1 {
                continue;
            }
            let m = Multinet::from_partition(lat, probe.classes.clone(), mult)?;
            let verdict = verify_multinet(lat, &m)?;
            if !verdict.valid {
                return Err(Error::Consistency(format!(
                    "multinet search produced a candidate that fails verification: {:?}",
                    verdict.violation
                )));
            }
            pereira_yuzvinsky_check(&m)?;
            out.push(m);
            if out.len() > opts.max_results {
                return Err(Error::Budget(format!("more than {} multinets", opts.max_results)));
            }
        }
    }
    Ok(out)
}

/// Multiplicity assignments 1..=W satisfying axioms (1) and (3) for a fixed
/// partition.
struct WeightSearch<'a> {
    owner: &'a [usize],
    k: usize,
    max_w: u32,
    /// Base flats (line lists) indexed by their largest line.
    closing: Vec<Vec<&'a [usize]>>,
    /// Last line of each class.
    class_end: Vec<usize>,
    mult: Vec<u32>,
    found: Vec<Vec<u32>>,
}

impl<'a> WeightSearch<'a> {
    fn new(lat: &'a IntersectionLattice, owner: &'a [usize], k: usize, base: &BTreeSet<usize>, max_w: u32) -> Self {
        let n = owner.len();
        let mut closing = vec![Vec::new(); n];
        for &x in base {
            let lines = lat.flats()[x].lines.as_slice();
            closing[*lines.last().unwrap()].push(lines);
        }
        let mut class_end = vec![0; k];
        for (l, &c) in owner.iter().enumerate() {
            class_end[c] = l;
        }
        WeightSearch {
            owner,
            k,
            max_w,
            closing,
            class_end,
            mult: vec![0; n],
            found: Vec::new(),
        }
    }

    fn run(&mut self, i: usize) {
        if i == self.mult.len() {
            self.found.push(self.mult.clone());
            return;
        }
        for m in 1..=self.max_w {
            self.mult[i] = m;
            if self.ok_after(i) {
                self.run(i + 1);
            }
        }
        self.mult[i] = 0;
    }

    fn ok_after(&self, i: usize) -> bool {
        for lines in &self.closing[i] {
            let mut per = vec![0u32; self.k];
            for &l in lines.iter() {
                per[self.owner[l]] += self.mult[l];
            }
            if per.iter().any(|&s| s != per[0]) {
                return false;
            }
        }
        let c = self.owner[i];
        if self.class_end[c] == i {
            let weight = |c: usize| -> u32 { (0..=i).filter(|&l| self.owner[l] == c).map(|l| self.mult[l]).sum() };
            let w = weight(c);
            for other in 0..self.k {
                if other != c && self.class_end[other] < i && weight(other) != w {
                    return false;
                }
            }
        }
        true
    }
}

/// Multinets with a distinguished line H (k ∈ {3, 4}):
/// pairs (N, H) with m_H > 1 and m_H | n_X for every base flat X on H.
pub fn find_pointed_multinets(lat: &IntersectionLattice, opts: &SearchOptions) -> Result<Vec<(Multinet, usize)>> {
    let mut out = Vec::new();
    for k in 3..=4 {
        for m in search_multinets(lat, k, opts)? {
            for h in pointed_lines(&m, lat) {
                out.push((m.clone(), h));
            }
        }
    }
    Ok(out)
}

pub fn pointed_lines(m: &Multinet, lat: &IntersectionLattice) -> Vec<usize> {
    (0..m.mult.len())
        .filter(|&h| {
            m.mult[h] > 1
                && m.base_locus
                    .iter()
                    .filter(|b| lat.flats()[b.flat].contains(h))
                    .all(|b| b.n_x % m.mult[h] == 0)
        })
        .collect()
}

/// P_N ⊂ A¹: spanned by u_α − u_1 with u_α = Σ_{H ∈ class α} m_H e_H.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PencilSubspace {
    pub k: usize,
    pub basis: Vec<Vec<i64>>,
}

pub fn pencil_subspace(cand: &Multinet) -> PencilSubspace {
    let n = cand.mult.len();
    let u: Vec<Vec<i64>> = cand
        .classes
        .iter()
        .map(|block| {
            let mut v = vec![0i64; n];
            for &l in block {
                v[l] = cand.mult[l] as i64;
            }
            v
        })
        .collect();
    let basis = u[1..]
        .iter()
        .map(|ua| ua.iter().zip(&u[0]).map(|(a, b)| a - b).collect())
        .collect();
    PencilSubspace { k: cand.k(), basis }
}

impl PencilSubspace {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// The subspace of a sub-arrangement, pushed into the ambient A¹ by
    /// zero-padding: `subset[i]` is the ambient index of local line i.
    pub fn embed(&self, subset: &[usize], n: usize) -> PencilSubspace {
        let basis = self
            .basis
            .iter()
            .map(|v| {
                let mut w = vec![0i64; n];
                for (i, &x) in v.iter().enumerate() {
                    w[subset[i]] = x;
                }
                w
            })
            .collect();
        PencilSubspace { k: self.k, basis }
    }

    /// Σ c_j · basis_j as an Aomoto class.
    pub fn combination(&self, field: FieldSpec, coeffs: &[i64]) -> AomotoClass {
        let n = self.basis.first().map_or(0, Vec::len);
        let mut v = vec![BigInt::from(0); n];
        for (b, &c) in self.basis.iter().zip(coeffs) {
            for (x, &y) in v.iter_mut().zip(b) {
                *x += BigInt::from(c) * y;
            }
        }
        AomotoClass::new(field, v)
    }
}
